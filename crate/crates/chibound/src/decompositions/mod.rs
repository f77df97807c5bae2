//! Certified partition theorems: robustness, source/sink-free partitions,
//! acyclic partitions, and the colouring pipelines composed from them.
//!
//! Every operation re-checks its own output with the exact oracles from the
//! solvers module before handing it back; a transcription bug surfaces as
//! `Error::VerificationFailed`, never as a silently wrong certificate.

mod pipeline;
mod robust;
mod source_sink;

pub use pipeline::{color_acyclic_spread, color_spread, TraceEntry, TracedColoring};
pub use robust::{
    check_userobust_instance, is_robust, robust_decomposition, RobustVerdict, UserobustVerdict,
    DEFAULT_ROBUST_BOUND,
};
pub use source_sink::{
    acyclic_partition, disjoint_clique_family, source_sink_partition, CliqueFamily, RichFailure,
    SourceSinkOutcome,
};

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::solvers::DEFAULT_NODE_BUDGET;
use crate::vset::VertexSet;

/// Parameter bundle for the decomposition pipeline. The Ramsey-existential
/// constants of the underlying theorems are unknown, so they are supplied by
/// the caller; too-small values surface as failure witnesses, never as wrong
/// answers.
#[derive(Debug, Clone, Serialize)]
pub struct ParamPack {
    /// Clique bound.
    pub kappa: usize,
    /// Spread parameter.
    pub lambda: usize,
    /// Colour bound assumed for smaller-clique digraphs.
    pub tau: usize,
    /// Derived: 2*lambda^2 + lambda.
    pub big_lambda: usize,
    /// Chromatic bound of orderable parts.
    pub h: usize,
    /// Out-degree knob of orderable parts.
    pub k: usize,
    /// Clique size knob.
    pub m: usize,
    /// Disjoint-clique count knob.
    pub n: usize,
    /// Robustness knob of the main pipeline.
    pub k1: usize,
    /// Search-node budget for the exact solvers.
    pub node_budget: u64,
    /// Vertex cap for robustness sweeps.
    pub robust_bound: usize,
}

impl ParamPack {
    pub fn new(kappa: usize, lambda: usize, tau: usize) -> Result<ParamPack> {
        if kappa < 2 {
            return Err(Error::Precondition(format!("kappa must be at least 2, got {kappa}")));
        }
        if tau < 1 {
            return Err(Error::Precondition("tau must be positive".into()));
        }
        let big_lambda = 2 * lambda * lambda + lambda;
        Ok(ParamPack {
            kappa,
            lambda,
            tau,
            big_lambda,
            h: 2,
            k: 2,
            m: 2,
            n: 3,
            k1: 8.max(5 * big_lambda),
            node_budget: DEFAULT_NODE_BUDGET,
            robust_bound: DEFAULT_ROBUST_BOUND,
        })
    }
}

/// Per-part guarantee carried by a [`PartitionCertificate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "bound")]
pub enum PartProperty {
    /// No clique of the given size within the part has a source.
    SourceFree(usize),
    /// No clique of the given size within the part has a sink.
    SinkFree(usize),
    /// The part induces an acyclic subdigraph.
    Acyclic,
    /// The part has chromatic number at most the bound.
    ChromaticBound(usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct CertifiedPart {
    pub vertices: Vec<usize>,
    pub property: PartProperty,
    pub verified: bool,
}

/// Parameters echoed into a certificate; absent knobs stay null.
#[derive(Debug, Clone, Default, Serialize)]
pub struct CertParams {
    pub h: Option<usize>,
    pub k: Option<usize>,
    pub m: Option<usize>,
    pub n: Option<usize>,
}

/// A verified partition of a ground set into parts with stated properties.
/// Field order is stable for golden-file serialization.
#[derive(Debug, Clone, Serialize)]
pub struct PartitionCertificate {
    pub theorem_tag: String,
    pub ground_set: Vec<usize>,
    pub parts: Vec<CertifiedPart>,
    pub params: CertParams,
    pub trace: Vec<String>,
    pub verified: bool,
}

impl PartitionCertificate {
    /// Parts are pairwise disjoint and cover the ground set exactly.
    pub fn is_partition(&self) -> bool {
        let mut all: Vec<usize> = self.parts.iter().flat_map(|p| p.vertices.iter().copied()).collect();
        all.sort_unstable();
        let mut ground = self.ground_set.clone();
        ground.sort_unstable();
        all.windows(2).all(|w| w[0] < w[1]) && all == ground
    }
}

/// Ordered parts witnessing that a digraph is (h,k)-out-orderable (or
/// in-orderable when `out` is false): each part has a proper colouring with
/// at most h colours, and each vertex has at most k-1 out-neighbours
/// (in-neighbours) in later parts.
#[derive(Debug, Clone, Serialize)]
pub struct OrderableWitness {
    pub parts: Vec<Vec<usize>>,
    pub h: usize,
    pub k: usize,
    pub out: bool,
    /// colorings[i][j] is the colour of parts[i][j].
    pub colorings: Vec<Vec<usize>>,
}

impl OrderableWitness {
    pub fn empty(h: usize, k: usize, out: bool) -> OrderableWitness {
        OrderableWitness { parts: Vec::new(), h, k, out, colorings: Vec::new() }
    }

    /// Sorted union of the parts.
    pub fn ground_set(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.parts.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    pub fn validate(&self, g: &Digraph) -> Result<()> {
        let n = g.vertex_count();
        let fail = |msg: String| Err(Error::Precondition(format!("invalid witness: {msg}")));
        if self.parts.len() != self.colorings.len() {
            return fail("part/colouring count mismatch".into());
        }
        let mut seen = VertexSet::new(n);
        for (part, coloring) in self.parts.iter().zip(&self.colorings) {
            if part.is_empty() {
                return fail("empty part".into());
            }
            if part.len() != coloring.len() {
                return fail("colouring length mismatch".into());
            }
            for &v in part {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, count: n });
                }
                if seen.contains(v) {
                    return fail(format!("vertex {v} in two parts"));
                }
                seen.insert(v);
            }
            let used = coloring.iter().max().map_or(0, |&c| c + 1);
            if used > self.h {
                return fail(format!("part needs {used} colours, h = {}", self.h));
            }
            for (i, &u) in part.iter().enumerate() {
                for (jj, &v) in part.iter().enumerate().skip(i + 1) {
                    if g.adjacent(u, v) && coloring[i] == coloring[jj] {
                        return fail(format!("improper colouring at {u}, {v}"));
                    }
                }
            }
        }
        // Each vertex of X_i has at most k-1 forward neighbours in
        // X_{i+1} ∪ ... ∪ X_n.
        let mut later = VertexSet::new(n);
        for part in self.parts.iter().rev() {
            for &v in part {
                let nbrs = if self.out { g.out_neighbors(v) } else { g.in_neighbors(v) };
                let forward = nbrs.intersection_len(&later);
                if forward + 1 > self.k {
                    return fail(format!(
                        "vertex {v} has {forward} forward neighbours, k = {}",
                        self.k
                    ));
                }
            }
            for &v in part {
                later.insert(v);
            }
        }
        Ok(())
    }
}

/// Partition into an out-orderable part, an in-orderable part, and a robust
/// remainder.
#[derive(Debug, Clone, Serialize)]
pub struct RobustTriple {
    pub p: OrderableWitness,
    pub q: OrderableWitness,
    pub r: Vec<usize>,
    pub h: usize,
    pub k: usize,
    pub verified: bool,
}
