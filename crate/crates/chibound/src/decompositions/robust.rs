//! Robustness sweeps and the robust/orderable partition.

use itertools::Itertools;
use serde::Serialize;

use crate::decompositions::{OrderableWitness, RobustTriple};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::patterns::is_lambda_spread;
use crate::solvers::{chi_all_subsets, chromatic_number};
use crate::vset::VertexSet;

/// Default vertex cap for the exhaustive robustness sweep.
pub const DEFAULT_ROBUST_BOUND: usize = 15;

#[derive(Debug, Clone, Serialize)]
pub struct RobustVerdict {
    pub robust: bool,
    /// Violating set when not robust: nonempty, chi <= h, every vertex with
    /// fewer than k out-neighbours or fewer than k in-neighbours outside.
    pub violating: Option<Vec<usize>>,
}

/// Exhaustive (h,k)-robustness check. Subsets are scanned in size-then-lex
/// order with a memoized chromatic table; the first violation is returned.
pub fn is_robust(g: &Digraph, h: usize, k: usize, max_n: usize) -> Result<RobustVerdict> {
    let n = g.vertex_count();
    if n > max_n {
        return Err(Error::BudgetExceeded(format!(
            "robustness sweep on {n} vertices (cap {max_n})"
        )));
    }
    if n == 0 || k == 0 {
        return Ok(RobustVerdict { robust: true, violating: None });
    }
    let chi = chi_all_subsets(g)?;
    for size in 1..=n {
        for combo in (0..n).combinations(size) {
            let mask: u32 = combo.iter().map(|&v| 1 << v).sum();
            if chi[mask as usize] as usize > h {
                continue;
            }
            let z = VertexSet::from_iter(n, combo.iter().copied());
            let escapes = |v: usize| {
                g.out_neighbors(v).len() - g.out_neighbors(v).intersection_len(&z) >= k
                    && g.in_neighbors(v).len() - g.in_neighbors(v).intersection_len(&z) >= k
            };
            if !combo.iter().any(|&v| escapes(v)) {
                return Ok(RobustVerdict { robust: false, violating: Some(combo) });
            }
        }
    }
    Ok(RobustVerdict { robust: true, violating: None })
}

/// Partitions the vertex set into an (h,k)-out-orderable part P, an
/// (h,k)-in-orderable part Q, and an (h,k)-robust remainder R, by repeatedly
/// peeling a violating set: its out-deficient vertices become the next part
/// of P's ordering, the rest the next part of Q's. All three invariants are
/// re-verified before returning.
pub fn robust_decomposition(g: &Digraph, h: usize, k: usize, max_n: usize) -> Result<RobustTriple> {
    let n = g.vertex_count();
    let mut ground = g.vertex_set();
    let mut x_parts: Vec<Vec<usize>> = Vec::new();
    let mut y_parts: Vec<Vec<usize>> = Vec::new();
    loop {
        let sub = g.induced(&ground);
        let verdict = is_robust(&sub.digraph, h, k, max_n)?;
        let Some(z_local) = verdict.violating else { break };
        let z: Vec<usize> = z_local.iter().map(|&v| sub.old_ids[v]).collect();
        let zset = VertexSet::from_iter(n, z.iter().copied());
        let mut outside = ground.clone();
        outside.subtract(&zset);
        let (x1, y1): (Vec<usize>, Vec<usize>) = z
            .iter()
            .partition(|&&v| g.out_neighbors(v).intersection_len(&outside) < k);
        if !x1.is_empty() {
            x_parts.push(x1);
        }
        if !y1.is_empty() {
            y_parts.push(y1);
        }
        ground.subtract(&zset);
    }
    let p = attach_colorings(g, x_parts, h, k, true)?;
    let q = attach_colorings(g, y_parts, h, k, false)?;
    p.validate(g).map_err(relabel_verification)?;
    q.validate(g).map_err(relabel_verification)?;
    let r = ground.to_vec();
    let final_check = is_robust(&g.induced(&ground).digraph, h, k, max_n)?;
    if !final_check.robust {
        return Err(Error::VerificationFailed("remainder is not robust".into()));
    }
    Ok(RobustTriple { p, q, r, h, k, verified: true })
}

fn relabel_verification(e: Error) -> Error {
    Error::VerificationFailed(e.to_string())
}

fn attach_colorings(
    g: &Digraph,
    parts: Vec<Vec<usize>>,
    h: usize,
    k: usize,
    out: bool,
) -> Result<OrderableWitness> {
    let mut colorings = Vec::with_capacity(parts.len());
    for part in &parts {
        let sub = g.induced_from_slice(part)?;
        let (count, coloring) = chromatic_number(&sub.digraph)?;
        if count > h {
            return Err(Error::VerificationFailed(format!(
                "orderable part needs {count} colours, h = {h}"
            )));
        }
        colorings.push(coloring.colors);
    }
    Ok(OrderableWitness { parts, h, k, out, colorings })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct UserobustVerdict {
    pub hypothesis: bool,
    pub conclusion: bool,
    pub implication: bool,
}

/// Evaluates one instance of the internally-dense-set theorem: if G is
/// lambda-spread and every vertex of X has at least 2λ²+λ out- and
/// in-neighbours within X, then G is not (|X|τ, |X|+2λ²+λ)-robust.
pub fn check_userobust_instance(
    g: &Digraph,
    x: &[usize],
    lambda: usize,
    tau: usize,
    max_n: usize,
) -> Result<UserobustVerdict> {
    if lambda == 0 {
        return Err(Error::Precondition("spread check needs lambda >= 1".into()));
    }
    let n = g.vertex_count();
    let big = 2 * lambda * lambda + lambda;
    let xset = VertexSet::from_iter(n, x.iter().copied());
    let dense = !x.is_empty()
        && x.iter().all(|&v| {
            g.out_neighbors(v).intersection_len(&xset) >= big
                && g.in_neighbors(v).intersection_len(&xset) >= big
        });
    let hypothesis = dense && is_lambda_spread(g, lambda).verdict;
    let conclusion = if x.is_empty() {
        false
    } else {
        !is_robust(g, x.len() * tau, x.len() + big, max_n)?.robust
    };
    Ok(UserobustVerdict { hypothesis, conclusion, implication: !hypothesis || conclusion })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclic_tournament, random_oriented, random_tournament};
    use crate::solvers::chromatic_number_in;

    fn directed_triangle() -> Digraph {
        Digraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn null_digraph_is_robust() {
        let v = is_robust(&Digraph::new(0), 3, 3, 15).unwrap();
        assert!(v.robust);
    }

    #[test]
    fn isolated_vertices_are_not_robust() {
        let v = is_robust(&Digraph::new(3), 1, 1, 15).unwrap();
        assert!(!v.robust);
        assert_eq!(v.violating.unwrap(), vec![0]);
    }

    #[test]
    fn directed_triangle_is_one_one_robust() {
        let v = is_robust(&directed_triangle(), 1, 1, 15).unwrap();
        assert!(v.robust);
    }

    #[test]
    fn robustness_cap_is_enforced() {
        assert!(matches!(
            is_robust(&Digraph::new(16), 1, 1, 15),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn small_chromatic_graphs_have_empty_remainder() {
        // Z = V violates: nobody has neighbours outside.
        let g = Digraph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let t = robust_decomposition(&g, 3, 1, 15).unwrap();
        assert!(t.r.is_empty());
        assert!(t.verified);
    }

    #[test]
    fn robust_graph_becomes_remainder() {
        let t = robust_decomposition(&directed_triangle(), 1, 1, 15).unwrap();
        assert!(t.p.parts.is_empty());
        assert!(t.q.parts.is_empty());
        assert_eq!(t.r, vec![0, 1, 2]);
    }

    #[test]
    fn random_triples_verify_independently() {
        for seed in 0..25u64 {
            let g = random_oriented(10, 0.5, seed).unwrap();
            let t = robust_decomposition(&g, 2, 2, 15).unwrap();
            assert!(t.verified, "seed {seed}");
            // Partition of the ground set.
            let mut all: Vec<usize> = t.p.ground_set();
            all.extend(t.q.ground_set());
            all.extend(t.r.iter().copied());
            all.sort_unstable();
            assert_eq!(all, (0..10).collect::<Vec<_>>(), "seed {seed}");
            // Re-verify every claim with independent oracles.
            t.p.validate(&g).unwrap();
            t.q.validate(&g).unwrap();
            assert!(t.p.out && !t.q.out);
            let rset = VertexSet::from_iter(10, t.r.iter().copied());
            assert!(is_robust(&g.induced(&rset).digraph, 2, 2, 15).unwrap().robust);
            for part in &t.p.parts {
                let pset = VertexSet::from_iter(10, part.iter().copied());
                assert!(chromatic_number_in(&g, &pset).unwrap() <= 2);
            }
        }
    }

    #[test]
    fn userobust_on_cyclic_tournament() {
        let g = cyclic_tournament(3);
        let x: Vec<usize> = (0..7).collect();
        let v = check_userobust_instance(&g, &x, 1, 1, 15).unwrap();
        assert!(v.hypothesis);
        assert!(v.conclusion);
        assert!(v.implication);
    }

    #[test]
    fn userobust_empty_set_fails_hypothesis() {
        let g = cyclic_tournament(2);
        let v = check_userobust_instance(&g, &[], 1, 1, 15).unwrap();
        assert!(!v.hypothesis);
        assert!(v.implication);
    }

    #[test]
    fn userobust_implication_holds_on_random_instances() {
        for seed in 0..30u64 {
            let g = random_tournament(12, seed);
            let x: Vec<usize> = (0..12).collect();
            let v = check_userobust_instance(&g, &x, 1, 2, 15).unwrap();
            assert!(v.implication, "seed {seed}");
        }
        for seed in 0..30u64 {
            let g = random_oriented(12, 0.8, seed).unwrap();
            let x: Vec<usize> = (0..12).collect();
            let v = check_userobust_instance(&g, &x, 1, 1, 15).unwrap();
            assert!(v.implication, "seed {seed}");
        }
    }
}
