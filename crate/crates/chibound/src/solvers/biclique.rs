//! Exact searches over the bipartite non-adjacency structure between two
//! vertex sets: nonadjacent set pairs and the Ramsey-style dichotomy search.

use itertools::Itertools;

use crate::digraph::Digraph;

/// Searches for `A' ⊆ A`, `B' ⊆ B` with `|A'| = |B'| = lambda` and no
/// underlying edge between them. Exact; returns the lexicographically
/// smallest `(A', B')` when one exists.
pub fn nonadjacent_biclique(
    g: &Digraph,
    a: &[usize],
    b: &[usize],
    lambda: usize,
) -> Option<(Vec<usize>, Vec<usize>)> {
    assert!(lambda >= 1, "lambda must be positive");
    debug_assert!(a.iter().all(|v| !b.contains(v)), "A and B must be disjoint");
    if a.len() < lambda || b.len() < lambda {
        return None;
    }
    let mut a_sorted = a.to_vec();
    a_sorted.sort_unstable();
    let mut b_sorted = b.to_vec();
    b_sorted.sort_unstable();
    for a_sub in a_sorted.iter().copied().combinations(lambda) {
        let candidates: Vec<usize> = b_sorted
            .iter()
            .copied()
            .filter(|&bv| a_sub.iter().all(|&av| !g.adjacent(av, bv)))
            .collect();
        if candidates.len() >= lambda {
            return Some((a_sub, candidates[..lambda].to_vec()));
        }
    }
    None
}

/// Outcome of [`bigramsey_search`]. The searcher reports `Neither` when the
/// instance is below the (unknown) Ramsey threshold; it is a searcher, not
/// the theorem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BigramseyOutcome {
    /// Nonadjacent sets of size lambda drawn from the two unions.
    NonadjacentPair(Vec<usize>, Vec<usize>),
    /// Index sets `I`, `J` of size k whose unions are fully
    /// underlying-adjacent.
    CompleteIndices(Vec<usize>, Vec<usize>),
    Neither,
}

/// Exhausts both alternatives of the bipartite Ramsey dichotomy over the
/// given set families, in lexicographic order.
pub fn bigramsey_search(
    g: &Digraph,
    a_sets: &[Vec<usize>],
    b_sets: &[Vec<usize>],
    k: usize,
    lambda: usize,
) -> BigramseyOutcome {
    let a_union: Vec<usize> = a_sets.iter().flatten().copied().sorted_unstable().collect();
    let b_union: Vec<usize> = b_sets.iter().flatten().copied().sorted_unstable().collect();
    if let Some((a, b)) = nonadjacent_biclique(g, &a_union, &b_union, lambda) {
        return BigramseyOutcome::NonadjacentPair(a, b);
    }
    let n = a_sets.len().min(b_sets.len());
    if k <= n {
        for i_set in (0..a_sets.len()).combinations(k) {
            let a_part: Vec<usize> = i_set.iter().flat_map(|&i| a_sets[i].iter().copied()).collect();
            for j_set in (0..b_sets.len()).combinations(k) {
                let complete = j_set.iter().all(|&j| {
                    b_sets[j]
                        .iter()
                        .all(|&bv| a_part.iter().all(|&av| g.adjacent(av, bv)))
                });
                if complete {
                    return BigramseyOutcome::CompleteIndices(i_set, j_set);
                }
            }
        }
    }
    BigramseyOutcome::Neither
}
