//! Exact exponential-time solvers used as ground-truth oracles.
//!
//! Everything here is exact and deterministic: the decomposition
//! certificates elsewhere in the crate are re-verified against these
//! routines, so none of them may approximate.

mod biclique;
mod clique;
mod color;
mod perfect;

pub use biclique::{bigramsey_search, nonadjacent_biclique, BigramseyOutcome};
pub use clique::{
    clique_number, clique_number_in, cliques_of_size, omega_all_subsets, CliqueWitness,
};
pub use color::{
    chi_all_subsets, chromatic_number, chromatic_number_budgeted, chromatic_number_in,
    greedy_coloring, k_colorable, tau_hat, Coloring, DEFAULT_NODE_BUDGET,
};
pub use perfect::{is_perfect_underlying, PerfectVerdict, DEFAULT_PERFECT_BOUND};
