//! Exact chromatic number via branch and bound on k-colourability with a
//! DSATUR vertex order and a clique seed, plus an O(3^n) all-subsets sweep
//! for the desk-scale oracles.

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::solvers::clique::clique_number;
use crate::vset::VertexSet;

/// Default branch-and-bound node budget. Deliberately generous; the
/// instances this crate targets are desk scale.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// A proper colouring of the underlying graph with colours `0..color_count`,
/// all of them used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub color_count: usize,
}

impl Coloring {
    /// Renumbers colours to `0..k` in order of first appearance.
    pub fn normalized(colors: Vec<usize>) -> Coloring {
        let mut map: Vec<Option<usize>> = Vec::new();
        let mut out = Vec::with_capacity(colors.len());
        for c in colors {
            if c >= map.len() {
                map.resize(c + 1, None);
            }
            let next = map.iter().flatten().count();
            let idx = *map[c].get_or_insert(next);
            out.push(idx);
        }
        let count = out.iter().max().map_or(0, |&m| m + 1);
        Coloring { colors: out, color_count: count }
    }

    pub fn is_proper(&self, g: &Digraph) -> bool {
        if self.colors.len() != g.vertex_count() {
            return false;
        }
        let mut used = vec![false; self.color_count];
        for &c in &self.colors {
            if c >= self.color_count {
                return false;
            }
            used[c] = true;
        }
        if !used.iter().all(|&u| u) {
            return false;
        }
        g.edges().iter().all(|&(u, v)| self.colors[u] != self.colors[v])
    }
}

/// Greedy colouring in degeneracy order; internal upper bound only.
pub fn greedy_coloring(g: &Digraph) -> Coloring {
    let n = g.vertex_count();
    // Smallest-last order: repeatedly remove a minimum-degree vertex.
    let mut removed = vec![false; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.und_degree(v)).collect();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .unwrap();
        removed[v] = true;
        order.push(v);
        for u in g.und_neighbors(v).iter() {
            if !removed[u] {
                degree[u] -= 1;
            }
        }
    }
    let mut colors = vec![usize::MAX; n];
    for &v in order.iter().rev() {
        let mut taken = 0u128;
        for u in g.und_neighbors(v).iter() {
            if colors[u] != usize::MAX && colors[u] < 128 {
                taken |= 1 << colors[u];
            }
        }
        colors[v] = (!taken).trailing_zeros() as usize;
    }
    Coloring::normalized(colors)
}

struct KColorSearch<'a> {
    g: &'a Digraph,
    k: usize,
    colors: Vec<usize>,
    nodes: u64,
    budget: u64,
}

const UNCOLORED: usize = usize::MAX;

impl KColorSearch<'_> {
    fn saturation(&self, v: usize) -> (usize, u64) {
        let mut mask = 0u64;
        for u in self.g.und_neighbors(v).iter() {
            if self.colors[u] != UNCOLORED {
                mask |= 1 << self.colors[u];
            }
        }
        (mask.count_ones() as usize, mask)
    }

    fn solve(&mut self, assigned: usize, max_used: usize) -> Result<bool> {
        let n = self.g.vertex_count();
        if assigned == n {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded("k-colourability search".into()));
        }
        // DSATUR: highest saturation, tie on degree, then id.
        let mut pick = None;
        let mut pick_key = (0usize, 0usize);
        let mut pick_mask = 0u64;
        for v in 0..n {
            if self.colors[v] != UNCOLORED {
                continue;
            }
            let (sat, mask) = self.saturation(v);
            let key = (sat, self.g.und_degree(v));
            if pick.is_none() || key > pick_key || (key == pick_key && v < pick.unwrap()) {
                pick = Some(v);
                pick_key = key;
                pick_mask = mask;
            }
        }
        let v = pick.unwrap();
        let limit = self.k.min(max_used + 1);
        for c in 0..limit {
            if pick_mask >> c & 1 == 1 {
                continue;
            }
            self.colors[v] = c;
            if self.solve(assigned + 1, max_used.max(c + 1))? {
                return Ok(true);
            }
            self.colors[v] = UNCOLORED;
        }
        Ok(false)
    }
}

/// Exact k-colourability of the underlying graph. Returns a colouring when
/// one exists. Seeds with a maximum clique for symmetry breaking.
pub fn k_colorable(g: &Digraph, k: usize, budget: u64) -> Result<Option<Vec<usize>>> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    if k == 0 {
        return Ok(None);
    }
    if k > 64 {
        return Err(Error::Precondition("colour count above 64 unsupported".into()));
    }
    let (omega, witness) = clique_number(g);
    if omega > k {
        return Ok(None);
    }
    let mut search = KColorSearch { g, k, colors: vec![UNCOLORED; n], nodes: 0, budget };
    for (c, &v) in witness.vertices.iter().enumerate() {
        search.colors[v] = c;
    }
    if search.solve(witness.vertices.len(), omega)? {
        Ok(Some(search.colors))
    } else {
        Ok(None)
    }
}

/// Exact chromatic number with a witnessing proper colouring.
pub fn chromatic_number(g: &Digraph) -> Result<(usize, Coloring)> {
    chromatic_number_budgeted(g, DEFAULT_NODE_BUDGET)
}

pub fn chromatic_number_budgeted(g: &Digraph, budget: u64) -> Result<(usize, Coloring)> {
    if g.vertex_count() == 0 {
        return Ok((0, Coloring { colors: Vec::new(), color_count: 0 }));
    }
    let lower = clique_number(g).0;
    let upper = greedy_coloring(g);
    if upper.color_count == lower {
        return Ok((lower, upper));
    }
    for k in lower..upper.color_count {
        if let Some(colors) = k_colorable(g, k, budget)? {
            let coloring = Coloring::normalized(colors);
            debug_assert!(coloring.is_proper(g));
            return Ok((coloring.color_count, coloring));
        }
    }
    Ok((upper.color_count, upper))
}

/// Exact chromatic number of the underlying graph induced on `sub`.
pub fn chromatic_number_in(g: &Digraph, sub: &VertexSet) -> Result<usize> {
    let induced = g.induced(sub);
    Ok(chromatic_number(&induced.digraph)?.0)
}

/// Chromatic number of every vertex subset, indexed by bitmask. O(3^n);
/// refuses instances above 16 vertices.
pub fn chi_all_subsets(g: &Digraph) -> Result<Vec<u8>> {
    let n = g.vertex_count();
    if n > 16 {
        return Err(Error::BudgetExceeded(format!(
            "all-subsets chromatic sweep on {n} vertices"
        )));
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.und_neighbors(v).iter().fold(0u32, |m, u| m | 1 << u))
        .collect();
    let size = 1usize << n;
    let mut independent = vec![false; size];
    independent[0] = true;
    for mask in 1..size as u32 {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        independent[mask as usize] = independent[rest as usize] && (adj[v] & rest) == 0;
    }
    let mut chi = vec![0u8; size];
    for mask in 1..size as u32 {
        let vbit = mask & mask.wrapping_neg();
        let mut best = u8::MAX;
        // Submasks of `mask` containing its lowest vertex.
        let mut sub = mask;
        while sub != 0 {
            if sub & vbit != 0 && independent[sub as usize] {
                best = best.min(1 + chi[(mask & !sub) as usize]);
            }
            sub = (sub - 1) & mask;
        }
        chi[mask as usize] = best;
    }
    Ok(chi)
}

/// Largest chromatic number among subsets whose clique number is below
/// `kappa`. This is the instance-level surrogate for the smaller-clique
/// colour bound used by the layer inequality report.
pub fn tau_hat(g: &Digraph, kappa: usize) -> Result<usize> {
    let chi = chi_all_subsets(g)?;
    let omega_tbl = crate::solvers::clique::omega_all_subsets(g);
    Ok(chi
        .iter()
        .zip(&omega_tbl)
        .filter(|&(_, &w)| (w as usize) < kappa)
        .map(|(&c, _)| c as usize)
        .max()
        .unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn directed_five_cycle() -> Digraph {
        Digraph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    /// Independent brute-force oracle: try every assignment.
    fn brute_chromatic(g: &Digraph) -> usize {
        let n = g.vertex_count();
        if n == 0 {
            return 0;
        }
        for k in 1..=n {
            let mut assignment = vec![0usize; n];
            loop {
                if g.edges().iter().all(|&(u, v)| assignment[u] != assignment[v]) {
                    return k;
                }
                let mut i = 0;
                while i < n {
                    assignment[i] += 1;
                    if assignment[i] < k {
                        break;
                    }
                    assignment[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
        n
    }

    #[test]
    fn odd_cycle_needs_three() {
        let g = directed_five_cycle();
        let (chi, coloring) = chromatic_number(&g).unwrap();
        assert_eq!(chi, 3);
        assert!(coloring.is_proper(&g));
    }

    #[test]
    fn null_digraph_needs_zero() {
        assert_eq!(chromatic_number(&Digraph::new(0)).unwrap().0, 0);
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        // Deterministic sweep over all graphs on 4 vertices and a sample of
        // graphs on 5 and 6.
        for n in [4usize, 5] {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let step = if n == 4 { 1 } else { 7 };
            for mask in (0..1u32 << pairs.len()).step_by(step) {
                let mut g = Digraph::new(n);
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        g.add_edge(u, v).unwrap();
                    }
                }
                let (chi, coloring) = chromatic_number(&g).unwrap();
                assert!(coloring.is_proper(&g));
                assert_eq!(chi, brute_chromatic(&g), "mask {mask} n {n}");
            }
        }
    }

    #[test]
    fn sweep_agrees_with_solver() {
        let g = directed_five_cycle();
        let chi = chi_all_subsets(&g).unwrap();
        assert_eq!(chi[(1 << 5) - 1] as usize, 3);
        assert_eq!(chi[0], 0);
        assert_eq!(chi[0b00011] as usize, 2); // one edge
        assert_eq!(chi[0b00101] as usize, 1); // nonadjacent pair
    }

    #[test]
    fn chi_at_least_omega_and_reversal_invariant() {
        let g = Digraph::from_edges(
            7,
            [(0, 1), (1, 2), (0, 2), (2, 3), (4, 3), (4, 5), (6, 5), (6, 0)],
        )
        .unwrap();
        let (chi, _) = chromatic_number(&g).unwrap();
        assert!(chi >= clique_number(&g).0);
        assert_eq!(chi, chromatic_number(&g.reverse()).unwrap().0);
    }

    #[test]
    fn budget_error_surfaces() {
        // A graph needing real search with a one-node budget.
        let g = directed_five_cycle();
        let res = k_colorable(&g, 3, 0);
        assert!(matches!(res, Err(Error::BudgetExceeded(_))));
    }
}
