//! Perfection of the underlying graph by exhaustive induced-subgraph sweep.

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::solvers::clique::omega_all_subsets;
use crate::solvers::color::chi_all_subsets;

/// Default cap on the 2^n sweep.
pub const DEFAULT_PERFECT_BOUND: usize = 10;

#[derive(Debug, Clone, Serialize)]
pub struct PerfectVerdict {
    pub perfect: bool,
    /// An induced vertex set with chromatic number above clique number,
    /// when imperfect.
    pub witness: Option<Vec<usize>>,
}

/// True iff chi equals omega on every induced subgraph of the underlying
/// graph. Exhaustive over all 2^n subsets with memoized tables.
pub fn is_perfect_underlying(g: &Digraph, max_n: usize) -> Result<PerfectVerdict> {
    let n = g.vertex_count();
    if n > max_n {
        return Err(Error::BudgetExceeded(format!(
            "perfection sweep on {n} vertices (cap {max_n})"
        )));
    }
    let chi = chi_all_subsets(g)?;
    let omega = omega_all_subsets(g);
    for mask in 1u32..(1 << n) {
        if chi[mask as usize] > omega[mask as usize] {
            let witness = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            return Ok(PerfectVerdict { perfect: false, witness: Some(witness) });
        }
    }
    Ok(PerfectVerdict { perfect: true, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn underlying_p4_is_perfect() {
        let g = Digraph::from_edges(4, [(0, 1), (2, 1), (3, 2)]).unwrap();
        assert!(is_perfect_underlying(&g, 10).unwrap().perfect);
    }

    #[test]
    fn underlying_c5_is_imperfect() {
        let g = Digraph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let v = is_perfect_underlying(&g, 10).unwrap();
        assert!(!v.perfect);
        assert_eq!(v.witness.unwrap(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn transitive_tournament_is_perfect() {
        let mut g = Digraph::new(4);
        for u in 0..4 {
            for v in u + 1..4 {
                g.add_edge(u, v).unwrap();
            }
        }
        assert!(is_perfect_underlying(&g, 10).unwrap().perfect);
    }

    #[test]
    fn size_cap_is_enforced() {
        let g = Digraph::new(11);
        assert!(matches!(
            is_perfect_underlying(&g, 10),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
