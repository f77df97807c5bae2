//! Holes of the underlying graph: enumeration, orientation classes, the
//! disoriented-hole extraction of the forbidden path, and the per-layer
//! chromatic inequality report.

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::patterns::{flh_pattern, Occurrence};
use crate::solvers::{chromatic_number, clique_number, tau_hat};
use crate::vset::VertexSet;

/// Orientation class of a hole.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HoleClass {
    /// Every vertex has out-degree one within the cycle.
    Directed,
    /// Every vertex has out-degree two or zero within the cycle (forces
    /// even length).
    Alternating,
    /// Neither of the above.
    Disoriented,
}

/// An induced cycle of the underlying graph with its orientation class.
/// The vertex list is in canonical cyclic order: least vertex first, then
/// the smaller of its two neighbours.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HoleRecord {
    pub cycle: Vec<usize>,
    pub class: HoleClass,
}

/// Classifies `cycle` after checking that it really is an induced cycle of
/// the underlying graph (length >= 4, consecutive pairs adjacent, all other
/// pairs non-adjacent).
pub fn classify_hole(g: &Digraph, cycle: &[usize]) -> Result<HoleClass> {
    let len = cycle.len();
    if len < 4 {
        return Err(Error::Precondition(format!("hole needs length >= 4, got {len}")));
    }
    let mut seen = VertexSet::new(g.vertex_count());
    for &v in cycle {
        if v >= g.vertex_count() {
            return Err(Error::VertexOutOfRange { vertex: v, count: g.vertex_count() });
        }
        if seen.contains(v) {
            return Err(Error::Precondition(format!("repeated vertex {v} in cycle")));
        }
        seen.insert(v);
    }
    for i in 0..len {
        for jj in i + 1..len {
            let consecutive = jj == i + 1 || (i == 0 && jj == len - 1);
            if g.adjacent(cycle[i], cycle[jj]) != consecutive {
                return Err(Error::Precondition(format!(
                    "vertices {} and {} violate the induced-cycle condition",
                    cycle[i], cycle[jj]
                )));
            }
        }
    }
    Ok(classify_unchecked(g, cycle))
}

fn classify_unchecked(g: &Digraph, cycle: &[usize]) -> HoleClass {
    let len = cycle.len();
    let mut all_one = true;
    let mut all_even = true;
    for i in 0..len {
        let prev = cycle[(i + len - 1) % len];
        let next = cycle[(i + 1) % len];
        let out = g.has_edge(cycle[i], prev) as usize + g.has_edge(cycle[i], next) as usize;
        if out != 1 {
            all_one = false;
        }
        if out == 1 {
            all_even = false;
        }
    }
    if all_one {
        HoleClass::Directed
    } else if all_even {
        HoleClass::Alternating
    } else {
        HoleClass::Disoriented
    }
}

/// Exhaustively enumerates the holes of the underlying graph with length in
/// `min_len..=max_len`, one canonical record per induced cycle. `budget`
/// caps the number of search nodes.
pub fn enumerate_holes(
    g: &Digraph,
    min_len: usize,
    max_len: usize,
    budget: u64,
) -> Result<Vec<HoleRecord>> {
    if min_len < 4 {
        return Err(Error::Precondition("hole enumeration needs min_len >= 4".into()));
    }
    if min_len > max_len {
        return Err(Error::Precondition("min_len above max_len".into()));
    }
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut nodes: u64 = 0;
    // Canonical form: the start s is the least vertex of the cycle, and the
    // second vertex is smaller than the closing vertex, killing both
    // rotations and the reflection.
    for s in 0..n {
        let mut path = vec![s];
        let mut on_path = VertexSet::new(n);
        on_path.insert(s);
        extend(g, s, &mut path, &mut on_path, min_len, max_len, &mut nodes, budget, &mut out)?;
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Digraph,
    s: usize,
    path: &mut Vec<usize>,
    on_path: &mut VertexSet,
    min_len: usize,
    max_len: usize,
    nodes: &mut u64,
    budget: u64,
    out: &mut Vec<HoleRecord>,
) -> Result<()> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::BudgetExceeded("hole enumeration".into()));
    }
    let last = *path.last().unwrap();
    for u in g.und_neighbors(last).iter() {
        if u <= s || on_path.contains(u) {
            continue;
        }
        // An induced extension may touch no path vertex except `last`; a
        // vertex adjacent to s (and nothing else earlier) closes a cycle.
        let mut chord = false;
        let mut closes = false;
        for (idx, &w) in path.iter().enumerate() {
            if w == last || !g.adjacent(u, w) {
                continue;
            }
            if idx == 0 {
                closes = true;
            } else {
                chord = true;
                break;
            }
        }
        if chord {
            continue;
        }
        if closes {
            let len = path.len() + 1;
            if len >= min_len && len <= max_len && path[1] < u {
                let mut cycle = path.clone();
                cycle.push(u);
                let class = classify_unchecked(g, &cycle);
                debug_assert_eq!(class, classify_hole(g, &cycle).unwrap());
                if class == HoleClass::Alternating {
                    debug_assert_eq!(len % 2, 0);
                }
                out.push(HoleRecord { cycle, class });
            }
            continue;
        }
        if path.len() + 1 >= max_len {
            continue;
        }
        path.push(u);
        on_path.insert(u);
        extend(g, s, path, on_path, min_len, max_len, nodes, budget, out)?;
        on_path.remove(u);
        path.pop();
    }
    Ok(())
}

/// Extracts an induced copy of the forbidden path from a disoriented hole
/// of length at least five, following the maximal-directed-path recipe:
/// grow the lexicographically least directed two-edge path of the cycle to
/// a maximal directed path and read the window at its blocked end.
pub fn extract_flh_from_hole(g: &Digraph, hole: &HoleRecord) -> Result<Occurrence> {
    if hole.class != HoleClass::Disoriented {
        return Err(Error::Precondition(format!(
            "hole is {:?}, not disoriented",
            hole.class
        )));
    }
    let len = hole.cycle.len();
    if len < 5 {
        return Err(Error::Precondition(format!("hole length {len} below five")));
    }
    // Walk the cycle in both rotational directions and find every directed
    // 2-path (x, y, z); keep the lexicographically least.
    let at = |i: isize| -> usize {
        hole.cycle[((i % len as isize) + len as isize) as usize % len]
    };
    let mut best: Option<(usize, usize, usize, isize, isize)> = None; // (x,y,z,pos,dir)
    for dir in [1isize, -1] {
        for i in 0..len as isize {
            let (x, y, z) = (at(i), at(i + dir), at(i + 2 * dir));
            if g.has_edge(x, y) && g.has_edge(y, z) {
                let key = (x, y, z);
                if best.is_none()
                    || key < (best.unwrap().0, best.unwrap().1, best.unwrap().2)
                {
                    best = Some((x, y, z, i, dir));
                }
            }
        }
    }
    let (_, _, _, pos, dir) = best.ok_or_else(|| {
        Error::VerificationFailed("disoriented hole without a directed 2-path".into())
    })?;
    // Grow forward from the 2-path end until the next cycle edge points
    // backwards. The hole is not directed, so this terminates.
    let mut end = pos + 2 * dir;
    let mut steps = 2usize;
    while steps < len && g.has_edge(at(end), at(end + dir)) {
        end += dir;
        steps += 1;
    }
    debug_assert!(steps < len, "directed hole slipped through classification");
    // Window (w, x, y, z) = last two path vertices, the end, and its
    // blocked successor: w->x, x->y, z->y.
    let (w, x, y, z) = (at(end - 2 * dir), at(end - dir), at(end), at(end + dir));
    let occ = Occurrence { pattern: flh_pattern(), host_vertices: vec![z, y, x, w] };
    if !occ.validate(g) {
        return Err(Error::VerificationFailed(
            "extracted window is not an induced forbidden path".into(),
        ));
    }
    Ok(occ)
}

/// Per-layer chromatic report from a root vertex.
#[derive(Debug, Clone, Serialize)]
pub struct LayerChromaticProfile {
    pub root: usize,
    pub kappa: usize,
    /// Exact chromatic number of each distance layer.
    pub layer_chi: Vec<usize>,
    /// Largest chromatic number among induced subdigraphs with clique
    /// number below kappa (instance-level surrogate for the class bound).
    pub tau_hat: usize,
    /// For each r >= 1, whether chi(layer r) <= 3 * tau_hat * chi(layer r-1).
    pub inequality_holds: Vec<bool>,
}

/// Computes exact per-layer chromatic numbers and checks the layer
/// inequality with the instance-level colour bound.
pub fn layer_chromatic_profile(g: &Digraph, z: usize, kappa: usize) -> Result<LayerChromaticProfile> {
    let (omega, _) = clique_number(g);
    if omega > kappa {
        return Err(Error::Precondition(format!(
            "clique number {omega} exceeds kappa {kappa}"
        )));
    }
    let layers = g.distance_layers(z)?;
    let tau = tau_hat(g, kappa)?;
    let mut layer_chi = Vec::with_capacity(layers.layers.len());
    for layer in &layers.layers {
        let sub = g.induced_from_slice(layer)?;
        layer_chi.push(chromatic_number(&sub.digraph)?.0);
    }
    let inequality_holds = (1..layer_chi.len())
        .map(|r| layer_chi[r] <= 3 * tau * layer_chi[r - 1])
        .collect();
    Ok(LayerChromaticProfile { root: z, kappa, layer_chi, tau_hat: tau, inequality_holds })
}
