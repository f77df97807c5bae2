//! Maximum clique over the underlying graph: bitset branch and bound with
//! a greedy colouring bound, plus small-subset enumeration helpers.

use serde::Serialize;

use crate::digraph::Digraph;
use crate::vset::VertexSet;

/// A set of pairwise underlying-adjacent vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueWitness {
    pub vertices: Vec<usize>,
}

impl CliqueWitness {
    pub fn validate(&self, g: &Digraph) -> bool {
        self.vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| self.vertices[i + 1..].iter().all(|&v| g.adjacent(u, v)))
    }
}

/// Exact clique number of the underlying graph, with a witness.
pub fn clique_number(g: &Digraph) -> (usize, CliqueWitness) {
    clique_number_in(g, &g.vertex_set())
}

/// Exact clique number of the underlying graph induced on `sub`.
pub fn clique_number_in(g: &Digraph, sub: &VertexSet) -> (usize, CliqueWitness) {
    let mut best = Vec::new();
    let mut current = Vec::new();
    expand(g, sub.clone(), &mut current, &mut best);
    best.sort_unstable();
    (best.len(), CliqueWitness { vertices: best })
}

fn expand(g: &Digraph, cand: VertexSet, current: &mut Vec<usize>, best: &mut Vec<usize>) {
    let members: Vec<usize> = cand.iter().collect();
    if current.len() + members.len() <= best.len() {
        return;
    }
    // Greedy colouring bound: vertices in colour class c can contribute at
    // most c+1 to any clique inside `cand`.
    let mut color = vec![0usize; members.len()];
    let mut classes: Vec<VertexSet> = Vec::new();
    for (i, &v) in members.iter().enumerate() {
        let c = classes
            .iter()
            .position(|cl| !cl.intersects(g.und_neighbors(v)))
            .unwrap_or_else(|| {
                classes.push(VertexSet::new(g.vertex_count()));
                classes.len() - 1
            });
        classes[c].insert(v);
        color[i] = c;
    }
    let mut order: Vec<usize> = (0..members.len()).collect();
    order.sort_by_key(|&i| (color[i], members[i]));

    let mut cand = cand;
    for &i in order.iter().rev() {
        if current.len() + color[i] < best.len() {
            return;
        }
        let v = members[i];
        current.push(v);
        let next = cand.intersection(g.und_neighbors(v));
        if current.len() > best.len() {
            *best = current.clone();
        }
        if !next.is_empty() {
            expand(g, next, current, best);
        }
        current.pop();
        cand.remove(v);
    }
}

/// All cliques of exactly `size` inside `sub`, each sorted ascending, in
/// lexicographic order.
pub fn cliques_of_size(g: &Digraph, sub: &VertexSet, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if size == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut current = Vec::new();
    enumerate(g, sub, size, 0, &mut current, &mut out);
    out
}

fn enumerate(
    g: &Digraph,
    allowed: &VertexSet,
    size: usize,
    from: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == size {
        out.push(current.clone());
        return;
    }
    for v in allowed.iter() {
        if v < from {
            continue;
        }
        let mut next = allowed.intersection(g.und_neighbors(v));
        current.push(v);
        if current.len() == size {
            out.push(current.clone());
        } else {
            next.remove(v);
            enumerate(g, &next, size, v + 1, current, out);
        }
        current.pop();
    }
}

/// Clique number of every vertex subset, indexed by bitmask. Only sensible
/// at desk scale (`n <= 20` or so).
pub fn omega_all_subsets(g: &Digraph) -> Vec<u8> {
    let n = g.vertex_count();
    assert!(n <= 20, "subset sweep limited to 20 vertices");
    let adj: Vec<u32> = (0..n)
        .map(|v| g.und_neighbors(v).iter().fold(0u32, |m, u| m | 1 << u))
        .collect();
    let mut omega = vec![0u8; 1 << n];
    for mask in 1u32..(1 << n) {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let with_v = 1 + omega[(mask & adj[v]) as usize];
        omega[mask as usize] = with_v.max(omega[rest as usize]);
    }
    omega
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Digraph;

    fn orientation_of_k4() -> Digraph {
        Digraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn k4_has_clique_number_four() {
        let (w, wit) = clique_number(&orientation_of_k4());
        assert_eq!(w, 4);
        assert!(wit.validate(&orientation_of_k4()));
    }

    #[test]
    fn directed_five_cycle_has_clique_number_two() {
        let g = Digraph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(clique_number(&g).0, 2);
    }

    #[test]
    fn clique_number_of_null() {
        assert_eq!(clique_number(&Digraph::new(0)).0, 0);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let g = orientation_of_k4();
        let pairs = cliques_of_size(&g, &g.vertex_set(), 2);
        assert_eq!(pairs.len(), 6);
        assert_eq!(pairs[0], vec![0, 1]);
        let triples = cliques_of_size(&g, &g.vertex_set(), 3);
        assert_eq!(triples.len(), 4);
    }

    #[test]
    fn omega_sweep_agrees_with_branch_and_bound() {
        let g = Digraph::from_edges(
            6,
            [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)],
        )
        .unwrap();
        let table = omega_all_subsets(&g);
        for mask in 0u32..(1 << 6) {
            let sub = VertexSet::from_iter(6, (0..6).filter(|&v| mask >> v & 1 == 1));
            assert_eq!(table[mask as usize] as usize, clique_number_in(&g, &sub).0);
        }
    }
}
