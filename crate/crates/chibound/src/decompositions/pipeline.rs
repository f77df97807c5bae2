//! Colouring pipelines composed from the partition theorems. Properness is
//! verified unconditionally; colour counts mirror the constructions rather
//! than the closed-form bounds.

use serde::Serialize;

use crate::decompositions::{
    acyclic_partition, robust_decomposition, source_sink_partition, ParamPack, SourceSinkOutcome,
};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::patterns::is_lambda_spread;
use crate::solvers::{chromatic_number_budgeted, clique_number, Coloring};

/// One step of a colouring pipeline run.
#[derive(Debug, Clone, Serialize)]
pub struct TraceEntry {
    pub step: String,
    pub vertices: Vec<usize>,
    pub colors: usize,
    pub fallback: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TracedColoring {
    pub coloring: Coloring,
    pub trace: Vec<TraceEntry>,
}

struct Palette {
    colors: Vec<usize>,
    next: usize,
}

impl Palette {
    fn new(n: usize) -> Palette {
        Palette { colors: vec![usize::MAX; n], next: 0 }
    }

    fn assign_block(&mut self, verts: &[usize], local: &[usize], count: usize) {
        for (&v, &c) in verts.iter().zip(local) {
            self.colors[v] = self.next + c;
        }
        self.next += count;
    }

    fn finish(self, g: &Digraph) -> Result<Coloring> {
        if self.colors.contains(&usize::MAX) {
            return Err(Error::VerificationFailed("pipeline left a vertex uncoloured".into()));
        }
        let coloring = Coloring::normalized(self.colors);
        if !coloring.is_proper(g) {
            return Err(Error::VerificationFailed("pipeline produced an improper colouring".into()));
        }
        Ok(coloring)
    }
}

/// Recursive clique-bound peeling for acyclic digraphs: every full-size
/// clique of an acyclic digraph has both a source and a sink, so each part
/// of a source/sink-free partition strictly drops the clique number.
pub fn color_acyclic_spread(g: &Digraph, params: &ParamPack) -> Result<TracedColoring> {
    if !g.is_acyclic() {
        return Err(Error::Precondition("digraph is not acyclic".into()));
    }
    let (omega, _) = clique_number(g);
    if omega > params.kappa {
        return Err(Error::Precondition(format!(
            "clique number {omega} exceeds kappa {}",
            params.kappa
        )));
    }
    let mut palette = Palette::new(g.vertex_count());
    let mut trace = Vec::new();
    let verts: Vec<usize> = g.vertices().collect();
    if !verts.is_empty() {
        acyclic_rec(g, &verts, params.kappa, params, &mut palette, &mut trace)?;
    }
    let coloring = palette.finish(g)?;
    Ok(TracedColoring { coloring, trace })
}

fn acyclic_rec(
    g: &Digraph,
    verts: &[usize],
    kappa: usize,
    params: &ParamPack,
    palette: &mut Palette,
    trace: &mut Vec<TraceEntry>,
) -> Result<()> {
    let sub = g.induced_from_slice(verts)?;
    let (omega, _) = clique_number(&sub.digraph);
    if omega <= 1 {
        let zeros = vec![0; verts.len()];
        palette.assign_block(verts, &zeros, 1);
        trace.push(TraceEntry { step: "base".into(), vertices: verts.to_vec(), colors: 1, fallback: false });
        return Ok(());
    }
    match source_sink_partition(&sub.digraph, 1, kappa - 1, params.n)? {
        SourceSinkOutcome::Partition(cert) => {
            trace.push(TraceEntry {
                step: format!("source-sink-partition(m={}, {} parts)", kappa - 1, cert.parts.len()),
                vertices: verts.to_vec(),
                colors: 0,
                fallback: false,
            });
            for part in &cert.parts {
                let glob: Vec<usize> = part.vertices.iter().map(|&v| sub.old_ids[v]).collect();
                let (w, _) = clique_number(&g.induced_from_slice(&glob)?.digraph);
                if w >= kappa {
                    return Err(Error::VerificationFailed(
                        "clique number did not drop in an acyclic part".into(),
                    ));
                }
                acyclic_rec(g, &glob, kappa - 1, params, palette, trace)?;
            }
        }
        SourceSinkOutcome::Failure(_) => {
            let (count, coloring) = chromatic_number_budgeted(&sub.digraph, params.node_budget)?;
            palette.assign_block(verts, &coloring.colors, count);
            trace.push(TraceEntry {
                step: "exact-fallback".into(),
                vertices: verts.to_vec(),
                colors: count,
                fallback: true,
            });
        }
    }
    Ok(())
}

/// Full pipeline for spread digraphs: split off out-/in-orderable parts
/// around a robust core, refine them into acyclic sets coloured by the
/// acyclic pipeline, and peel the core with half-clique source/sink-free
/// partitions (exact fallback where the supplied parameters run out).
pub fn color_spread(g: &Digraph, params: &ParamPack) -> Result<TracedColoring> {
    if params.lambda == 0 {
        return Err(Error::Precondition("pipeline needs lambda >= 1".into()));
    }
    let spread = is_lambda_spread(g, params.lambda);
    if !spread.verdict {
        return Err(Error::Precondition(format!(
            "digraph is not {}-spread (witness at vertex {})",
            params.lambda,
            spread.witness.map_or(0, |w| w.0)
        )));
    }
    let (omega, _) = clique_number(g);
    if omega > params.kappa {
        return Err(Error::Precondition(format!(
            "clique number {omega} exceeds kappa {}",
            params.kappa
        )));
    }
    let h1 = 4 * params.big_lambda * params.tau;
    let k1 = params.k1;
    let triple = robust_decomposition(g, h1, k1, params.robust_bound)?;
    let mut palette = Palette::new(g.vertex_count());
    let mut trace = vec![TraceEntry {
        step: format!(
            "robust-partition(h={h1}, k={k1}): |P|={}, |Q|={}, |R|={}",
            triple.p.ground_set().len(),
            triple.q.ground_set().len(),
            triple.r.len()
        ),
        vertices: g.vertices().collect(),
        colors: 0,
        fallback: false,
    }];
    for side in [&triple.p, &triple.q] {
        if side.parts.is_empty() {
            continue;
        }
        let cert = acyclic_partition(g, side)?;
        trace.push(TraceEntry {
            step: format!("acyclic-partition({} sets)", cert.parts.len()),
            vertices: cert.ground_set.clone(),
            colors: 0,
            fallback: false,
        });
        for part in &cert.parts {
            let sub = g.induced_from_slice(&part.vertices)?;
            let inner = color_acyclic_spread(&sub.digraph, params)?;
            palette.assign_block(&part.vertices, &inner.coloring.colors, inner.coloring.color_count);
            for mut entry in inner.trace {
                entry.vertices = entry.vertices.iter().map(|&v| sub.old_ids[v]).collect();
                trace.push(entry);
            }
        }
    }
    if triple.r.is_empty() {
        trace.push(TraceEntry { step: "core: R empty".into(), vertices: Vec::new(), colors: 0, fallback: false });
    } else {
        core_rec(g, &triple.r, params.kappa, params, &mut palette, &mut trace)?;
    }
    let coloring = palette.finish(g)?;
    Ok(TracedColoring { coloring, trace })
}

fn core_rec(
    g: &Digraph,
    verts: &[usize],
    kappa: usize,
    params: &ParamPack,
    palette: &mut Palette,
    trace: &mut Vec<TraceEntry>,
) -> Result<()> {
    let sub = g.induced_from_slice(verts)?;
    let (omega, _) = clique_number(&sub.digraph);
    if omega <= 1 {
        let zeros = vec![0; verts.len()];
        palette.assign_block(verts, &zeros, 1);
        trace.push(TraceEntry { step: "core base".into(), vertices: verts.to_vec(), colors: 1, fallback: false });
        return Ok(());
    }
    let m = kappa.div_ceil(2);
    match source_sink_partition(&sub.digraph, 1, m, params.n)? {
        SourceSinkOutcome::Partition(cert) => {
            trace.push(TraceEntry {
                step: format!("core source-sink-partition(m={m}, {} parts)", cert.parts.len()),
                vertices: verts.to_vec(),
                colors: 0,
                fallback: false,
            });
            for part in &cert.parts {
                let glob: Vec<usize> = part.vertices.iter().map(|&v| sub.old_ids[v]).collect();
                let inner = g.induced_from_slice(&glob)?;
                let (w, _) = clique_number(&inner.digraph);
                if w < kappa {
                    core_rec(g, &glob, w.max(2), params, palette, trace)?;
                } else {
                    let (count, coloring) =
                        chromatic_number_budgeted(&inner.digraph, params.node_budget)?;
                    palette.assign_block(&glob, &coloring.colors, count);
                    trace.push(TraceEntry {
                        step: "core exact-fallback".into(),
                        vertices: glob,
                        colors: count,
                        fallback: true,
                    });
                }
            }
        }
        SourceSinkOutcome::Failure(_) => {
            let (count, coloring) = chromatic_number_budgeted(&sub.digraph, params.node_budget)?;
            palette.assign_block(verts, &coloring.colors, count);
            trace.push(TraceEntry {
                step: "core exact-fallback".into(),
                vertices: verts.to_vec(),
                colors: count,
                fallback: true,
            });
        }
    }
    Ok(())
}
