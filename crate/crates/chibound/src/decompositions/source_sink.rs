//! Source/sink-free partitions via the auxiliary hitting-set digraph, and
//! the acyclic partition of an orderable digraph.

use serde::Serialize;

use crate::decompositions::{
    CertParams, CertifiedPart, OrderableWitness, PartProperty, PartitionCertificate,
};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::solvers::{cliques_of_size, greedy_coloring};
use crate::vset::VertexSet;

/// Greedy-maximal family of pairwise disjoint m-cliques within `s`.
#[derive(Debug, Clone, Serialize)]
pub struct CliqueFamily {
    pub cliques: Vec<Vec<usize>>,
    pub reached_target: bool,
}

/// Picks disjoint m-cliques greedily in lexicographic order until none fits;
/// the result is maximal (non-extendable) but not necessarily maximum.
pub fn disjoint_clique_family(
    g: &Digraph,
    s: &VertexSet,
    m: usize,
    target: usize,
) -> CliqueFamily {
    if m == 0 {
        return CliqueFamily { cliques: Vec::new(), reached_target: target == 0 };
    }
    let mut used = VertexSet::new(g.vertex_count());
    let mut family = Vec::new();
    for clique in cliques_of_size(g, s, m) {
        if clique.iter().all(|&v| !used.contains(v)) {
            for &v in &clique {
                used.insert(v);
            }
            family.push(clique);
        }
    }
    let reached_target = family.len() >= target;
    CliqueFamily { cliques: family, reached_target }
}

/// First (lexicographic) family of `count` pairwise disjoint cliques from
/// the lex-sorted list, or None. Exact, unlike the greedy family.
fn disjoint_packing(
    cliques: &[Vec<usize>],
    count: usize,
    capacity: usize,
) -> Option<Vec<Vec<usize>>> {
    fn rec(
        cliques: &[Vec<usize>],
        count: usize,
        start: usize,
        used: &mut VertexSet,
        picked: &mut Vec<usize>,
    ) -> bool {
        if picked.len() == count {
            return true;
        }
        for i in start..cliques.len() {
            if cliques.len() - i < count - picked.len() {
                return false;
            }
            if cliques[i].iter().any(|&v| used.contains(v)) {
                continue;
            }
            for &v in &cliques[i] {
                used.insert(v);
            }
            picked.push(i);
            if rec(cliques, count, i + 1, used, picked) {
                return true;
            }
            picked.pop();
            for &v in &cliques[i] {
                used.remove(v);
            }
        }
        false
    }
    let mut used = VertexSet::new(capacity);
    let mut picked = Vec::new();
    if rec(cliques, count, 0, &mut used, &mut picked) {
        Some(picked.into_iter().map(|i| cliques[i].clone()).collect())
    } else {
        None
    }
}

/// A vertex with n disjoint m-cliques on both sides; evidence that the
/// supplied n was too small (or that the vertex is rich).
#[derive(Debug, Clone, Serialize)]
pub struct RichFailure {
    pub v: usize,
    pub out_cliques: Vec<Vec<usize>>,
    pub in_cliques: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "lowercase", tag = "outcome")]
pub enum SourceSinkOutcome {
    Partition(PartitionCertificate),
    Failure(RichFailure),
}

/// Partitions the vertex set into at most 4nm parts, each with no
/// (m+1)-clique having a source, or none having a sink. Vertices with n
/// disjoint m-cliques among both out- and in-neighbours abort the
/// construction with a failure witness instead.
pub fn source_sink_partition(
    g: &Digraph,
    k: usize,
    m: usize,
    n: usize,
) -> Result<SourceSinkOutcome> {
    if k < 1 || m < 1 || n < 1 {
        return Err(Error::Precondition("k, m, n must be positive".into()));
    }
    let nv = g.vertex_count();
    let mut in_p = Vec::with_capacity(nv);
    let mut in_q = Vec::with_capacity(nv);
    for v in 0..nv {
        let outs = cliques_of_size(g, g.out_neighbors(v), m);
        let ins = cliques_of_size(g, g.in_neighbors(v), m);
        let out_pack = disjoint_packing(&outs, n, nv);
        let in_pack = disjoint_packing(&ins, n, nv);
        match (&out_pack, &in_pack) {
            (Some(oc), Some(ic)) => {
                return Ok(SourceSinkOutcome::Failure(RichFailure {
                    v,
                    out_cliques: oc.clone(),
                    in_cliques: ic.clone(),
                }));
            }
            _ => {
                in_p.push(out_pack.is_none());
                in_q.push(in_pack.is_none());
            }
        }
    }
    // Overlap goes to the out side; the in side keeps the rest.
    let p: Vec<usize> = (0..nv).filter(|&v| in_p[v]).collect();
    let q: Vec<usize> = (0..nv).filter(|&v| in_q[v] && !in_p[v]).collect();
    let mut parts = Vec::new();
    let mut trace = Vec::new();
    for (side, out_side) in [(&p, true), (&q, false)] {
        if side.is_empty() {
            continue;
        }
        let classes = hitting_set_classes(g, side, m, n, out_side)?;
        trace.push(format!(
            "{} side: {} vertices in {} classes",
            if out_side { "out" } else { "in" },
            side.len(),
            classes.len()
        ));
        let clique_size = m + 1;
        for class in classes {
            verify_no_extremal_clique(g, &class, clique_size, out_side)?;
            let property = if out_side {
                PartProperty::SourceFree(clique_size)
            } else {
                PartProperty::SinkFree(clique_size)
            };
            parts.push(CertifiedPart { vertices: class, property, verified: true });
        }
    }
    if parts.len() > 4 * n * m {
        return Err(Error::VerificationFailed(format!(
            "{} parts exceed the 4nm bound {}",
            parts.len(),
            4 * n * m
        )));
    }
    let cert = PartitionCertificate {
        theorem_tag: "source-sink-partition".into(),
        ground_set: (0..nv).collect(),
        parts,
        params: CertParams { h: None, k: Some(k), m: Some(m), n: Some(n) },
        trace,
        verified: true,
    };
    if !cert.is_partition() {
        return Err(Error::VerificationFailed("parts do not partition the ground set".into()));
    }
    Ok(SourceSinkOutcome::Partition(cert))
}

/// Colour classes of the auxiliary digraph H: edges from each side vertex to
/// the (in-side) members of its greedy-maximal clique family's union. Stable
/// classes meet no full m-clique on the relevant side, so no (m+1)-clique
/// within a class has a source (resp. sink).
fn hitting_set_classes(
    g: &Digraph,
    side: &[usize],
    m: usize,
    n: usize,
    out_side: bool,
) -> Result<Vec<Vec<usize>>> {
    let nv = g.vertex_count();
    let side_set = VertexSet::from_iter(nv, side.iter().copied());
    let local = |v: usize| side.binary_search(&v).unwrap();
    let mut h_graph = Digraph::new(side.len());
    for &v in side {
        let nbrs = if out_side { g.out_neighbors(v) } else { g.in_neighbors(v) };
        let family = disjoint_clique_family(g, nbrs, m, n);
        debug_assert!(family.cliques.len() < n);
        for &w in family.cliques.iter().flatten() {
            if side_set.contains(w) && !h_graph.has_edge(local(w), local(v)) {
                h_graph.add_edge(local(v), local(w))?;
            }
        }
    }
    let coloring = greedy_coloring(&h_graph);
    if coloring.color_count > 2 * n * m {
        return Err(Error::VerificationFailed(format!(
            "auxiliary colouring used {} colours, bound {}",
            coloring.color_count,
            2 * n * m
        )));
    }
    let mut classes = vec![Vec::new(); coloring.color_count];
    for (i, &c) in coloring.colors.iter().enumerate() {
        classes[c].push(side[i]);
    }
    Ok(classes)
}

fn verify_no_extremal_clique(
    g: &Digraph,
    class: &[usize],
    clique_size: usize,
    source: bool,
) -> Result<()> {
    let set = VertexSet::from_iter(g.vertex_count(), class.iter().copied());
    for clique in cliques_of_size(g, &set, clique_size) {
        let extremal = clique.iter().any(|&v| {
            clique
                .iter()
                .filter(|&&w| w != v)
                .all(|&w| if source { g.has_edge(v, w) } else { g.has_edge(w, v) })
        });
        if extremal {
            return Err(Error::VerificationFailed(format!(
                "class clique {:?} has a {}",
                clique,
                if source { "source" } else { "sink" }
            )));
        }
    }
    Ok(())
}

/// Partitions the witness's ground set into at most h*k acyclic sets: the
/// forward graph J restricted to each colour class is (k-1)-degenerate in
/// descending part order, and J-stable sets induce acyclic subdigraphs.
pub fn acyclic_partition(g: &Digraph, witness: &OrderableWitness) -> Result<PartitionCertificate> {
    witness.validate(g)?;
    let nv = g.vertex_count();
    let mut part_index = vec![usize::MAX; nv];
    let mut class_index = vec![usize::MAX; nv];
    for (i, (part, coloring)) in witness.parts.iter().zip(&witness.colorings).enumerate() {
        for (&v, &c) in part.iter().zip(coloring) {
            part_index[v] = i;
            class_index[v] = c;
        }
    }
    // Forward adjacency: a G-edge whose tail's part is no later than its
    // head's (the roles swap for an in-orderable witness).
    let j_adjacent = |u: usize, v: usize| {
        let fwd = |a: usize, b: usize| {
            if witness.out {
                g.has_edge(a, b) && part_index[a] <= part_index[b]
            } else {
                g.has_edge(a, b) && part_index[b] <= part_index[a]
            }
        };
        fwd(u, v) || fwd(v, u)
    };
    let mut sets: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for j in 0..witness.h {
        let mut members: Vec<usize> = witness
            .parts
            .iter()
            .flatten()
            .copied()
            .filter(|&v| class_index[v] == j)
            .collect();
        // Descending part order: each vertex's already-coloured J-neighbours
        // are its at most k-1 forward neighbours in later parts.
        members.sort_unstable_by_key(|&v| (std::cmp::Reverse(part_index[v]), v));
        let mut sub_color = vec![usize::MAX; nv];
        for (idx, &v) in members.iter().enumerate() {
            let taken: Vec<usize> = members[..idx]
                .iter()
                .filter(|&&u| j_adjacent(u, v))
                .map(|&u| sub_color[u])
                .collect();
            let c = (0..).find(|c| !taken.contains(c)).unwrap();
            if c >= witness.k {
                return Err(Error::VerificationFailed(format!(
                    "class {j} is not ({}-1)-degenerate at vertex {v}",
                    witness.k
                )));
            }
            sub_color[v] = c;
        }
        for c in 0..witness.k {
            let mut set: Vec<usize> = members.iter().copied().filter(|&v| sub_color[v] == c).collect();
            if !set.is_empty() {
                set.sort_unstable();
                sets.push((j, c, set));
            }
        }
    }
    sets.sort();
    let mut parts = Vec::new();
    for (_, _, set) in sets {
        let sub = g.induced_from_slice(&set)?;
        if !sub.digraph.is_acyclic() {
            return Err(Error::VerificationFailed(format!("part {set:?} is not acyclic")));
        }
        parts.push(CertifiedPart { vertices: set, property: PartProperty::Acyclic, verified: true });
    }
    if parts.len() > witness.h * witness.k {
        return Err(Error::VerificationFailed("more than h*k acyclic parts".into()));
    }
    let cert = PartitionCertificate {
        theorem_tag: "acyclic-partition".into(),
        ground_set: witness.ground_set(),
        parts,
        params: CertParams { h: Some(witness.h), k: Some(witness.k), m: None, n: None },
        trace: Vec::new(),
        verified: true,
    };
    if !cert.is_partition() {
        return Err(Error::VerificationFailed("parts do not partition the ground set".into()));
    }
    Ok(cert)
}
