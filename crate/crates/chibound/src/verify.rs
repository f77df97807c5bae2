//! Named verification suites: each re-derives a structural claim over an
//! exhaustive or seeded instance family and reports every counterexample
//! with a reproducible input description.

use std::time::Instant;

use itertools::Itertools;
use serde::Serialize;

use crate::constructions::{
    cyclic_tournament, random_acyclic_oriented, random_oriented, random_tournament,
    recognize_cyclic, shift_digraph, CyclicOutcome, SeedStream,
};
use crate::decompositions::{
    acyclic_partition, check_userobust_instance, is_robust, robust_decomposition, source_sink_partition,
    ParamPack, PartProperty, SourceSinkOutcome,
};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::exec;
use crate::holes::{enumerate_holes, extract_flh_from_hole, layer_chromatic_profile, HoleClass};
use crate::patterns::{find_flh, is_lambda_spread, parse_pattern, find_induced};
use crate::solvers::{chromatic_number, clique_number, cliques_of_size, is_perfect_underlying};
use crate::vset::VertexSet;

pub const SUITES: &[&str] = &[
    "flh-extraction",
    "chvatal",
    "shift-family",
    "cyclic-recognizer",
    "outnbrs",
    "outorderable",
    "robustpartition",
    "userobust",
    "layer-inequality",
    "pipeline",
];

/// Scale knobs shared by all suites.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Vertex count for seeded random instances.
    pub n: usize,
    /// Number of seeded random instances.
    pub samples: usize,
    /// Base seed; instance i uses seed + i.
    pub seed: u64,
    /// Largest vertex count swept exhaustively (up to isomorphism).
    pub exhaustive_n: usize,
    /// Edge probability of seeded random instances.
    pub p: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { n: 9, samples: 100, seed: 1, exhaustive_n: 6, p: 0.5 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FailureEntry {
    pub input: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub instances_run: usize,
    pub failures: Vec<FailureEntry>,
    pub runtime_seconds: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs one named suite. Failure lists are sorted by input description so
/// parallel execution cannot reorder the report.
pub fn run_suite(suite: &str, config: &SuiteConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let (instances_run, mut failures) = match suite {
        "flh-extraction" => suite_flh_extraction(config)?,
        "chvatal" => suite_chvatal(config)?,
        "shift-family" => suite_shift_family()?,
        "cyclic-recognizer" => suite_cyclic_recognizer()?,
        "outnbrs" => suite_outnbrs(config)?,
        "outorderable" => suite_outorderable(config)?,
        "robustpartition" => suite_robustpartition(config)?,
        "userobust" => suite_userobust(config)?,
        "layer-inequality" => suite_layer_inequality(config)?,
        "pipeline" => suite_pipeline(config)?,
        other => {
            return Err(Error::Precondition(format!(
                "unknown suite {other}; choose one of {}",
                SUITES.join(", ")
            )))
        }
    };
    failures.sort_by(|a, b| a.input.cmp(&b.input));
    Ok(VerificationReport {
        suite: suite.to_string(),
        instances_run,
        failures,
        runtime_seconds: start.elapsed().as_secs_f64(),
    })
}

// ---- exhaustive enumeration helpers ----

fn pair_table(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for j in 1..n {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    pairs
}

/// Lexicographically minimal adjacency masks: one representative per
/// isomorphism class of simple graphs on n vertices.
pub fn canonical_underlying_masks(n: usize) -> Vec<u32> {
    let pairs = pair_table(n);
    let np = pairs.len();
    let mut pidx = vec![vec![0usize; n]; n];
    for (b, &(i, j)) in pairs.iter().enumerate() {
        pidx[i][j] = b;
        pidx[j][i] = b;
    }
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut out = Vec::new();
    'mask: for mask in 0..(1u32 << np) {
        for p in &perms[1..] {
            // Compare the relabelled mask with the original from the most
            // significant pair downwards; abort at the first difference.
            for pos in (0..np).rev() {
                let (i, j) = pairs[pos];
                let original = mask >> pos & 1;
                let relabelled = mask >> pidx[p[i]][p[j]] & 1;
                if relabelled != original {
                    if relabelled < original {
                        continue 'mask;
                    }
                    break;
                }
            }
        }
        out.push(mask);
    }
    out
}

/// All orientations of the underlying graph encoded by `mask`.
fn orientations_of(n: usize, mask: u32, f: &mut dyn FnMut(&Digraph) -> Option<FailureEntry>) -> (usize, Vec<FailureEntry>) {
    let pairs = pair_table(n);
    let present: Vec<(usize, usize)> = pairs
        .iter()
        .enumerate()
        .filter(|&(b, _)| mask >> b & 1 == 1)
        .map(|(_, &pq)| pq)
        .collect();
    let m = present.len();
    let mut failures = Vec::new();
    for bits in 0..(1u32 << m) {
        let edges = present
            .iter()
            .enumerate()
            .map(|(b, &(i, j))| if bits >> b & 1 == 1 { (i, j) } else { (j, i) });
        let g = Digraph::from_edges(n, edges).unwrap();
        if let Some(fail) = f(&g) {
            failures.push(fail);
        }
    }
    (1usize << m, failures)
}

fn describe(g: &Digraph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|&(u, v)| format!("{u}>{v}")).collect();
    format!("n={} [{}]", g.vertex_count(), edges.join(","))
}

// ---- individual suites ----

/// Every disoriented hole of length >= 5 yields a validated occurrence of
/// the forbidden path via the maximal-directed-path window.
fn check_flh_extraction(g: &Digraph) -> Option<FailureEntry> {
    let holes = enumerate_holes(g, 5, g.vertex_count(), 1 << 24).ok()?;
    for hole in holes.iter().filter(|h| h.class == HoleClass::Disoriented) {
        let ok = match extract_flh_from_hole(g, hole) {
            Ok(occ) => occ.validate(g) && find_flh(g).is_some(),
            Err(_) => false,
        };
        if !ok {
            return Some(FailureEntry {
                input: format!("{} hole={:?}", describe(g), hole.cycle),
                expected: "validated forbidden-path occurrence".into(),
                got: "extraction failed or did not validate".into(),
            });
        }
    }
    None
}

fn suite_flh_extraction(config: &SuiteConfig) -> Result<(usize, Vec<FailureEntry>)> {
    let mut instances = 0usize;
    let mut failures = Vec::new();
    for n in 5..=config.exhaustive_n {
        let masks = canonical_underlying_masks(n);
        let per_mask = exec::map_indices(masks.len(), |i| {
            orientations_of(n, masks[i], &mut check_flh_extraction)
        });
        for (count, fails) in per_mask {
            instances += count;
            failures.extend(fails);
        }
    }
    let per_sample = exec::map_indices(config.samples, |i| {
        let seed = config.seed + i as u64;
        let g = random_oriented(config.n, config.p, seed).unwrap();
        check_flh_extraction(&g).map(|mut f| {
            f.input = format!("seed={seed} {}", f.input);
            f
        })
    });
    instances += config.samples;
    failures.extend(per_sample.into_iter().flatten());
    Ok((instances, failures))
}

/// Acyclic digraphs without the forbidden path are perfect; chi equals
/// omega and every induced subgraph agrees.
fn suite_chvatal(config: &SuiteConfig) -> Result<(usize, Vec<FailureEntry>)> {
    let n = config.n.min(9);
    let results = exec::map_indices(config.samples, |i| -> Result<Option<FailureEntry>> {
        let seed = config.seed + i as u64;
        let g = random_acyclic_oriented(n, config.p, seed)?;
        if find_flh(&g).is_some() {
            return Ok(None);
        }
        let verdict = is_perfect_underlying(&g, 10)?;
        let (chi, _) = chromatic_number(&g)?;
        let (omega, _) = clique_number(&g);
        if verdict.perfect && chi == omega {
            Ok(None)
        } else {
            Ok(Some(FailureEntry {
                input: format!("seed={seed} {}", describe(&g)),
                expected: "perfect with chi = omega".into(),
                got: format!("perfect={} chi={chi} omega={omega}", verdict.perfect),
            }))
        }
    });
    let mut failures = Vec::new();
    for r in results {
        if let Some(f) = r? {
            failures.push(f);
        }
    }
    Ok((config.samples, failures))
}

/// The shift digraphs: triangle-free, no induced forward-backward-forward
/// path, chromatic number exactly ceil(log2 n).
fn suite_shift_family() -> Result<(usize, Vec<FailureEntry>)> {
    let mut failures = Vec::new();
    let pattern = parse_pattern("p4:frf")?;
    for n in 3..=8usize {
        let g = shift_digraph(n)?;
        let (omega, _) = clique_number(&g);
        let (chi, _) = chromatic_number(&g)?;
        let expected_chi = usize::BITS as usize - (n - 1).leading_zeros() as usize;
        let frf = find_induced(&g, &pattern, 1);
        if omega != 2 || chi != expected_chi || !frf.is_empty() {
            failures.push(FailureEntry {
                input: format!("shift({n})"),
                expected: format!("omega=2 chi={expected_chi} no frf path"),
                got: format!("omega={omega} chi={chi} frf={}", frf.len()),
            });
        }
    }
    Ok((6, failures))
}

fn labeled_regular_tournaments(m: usize) -> Vec<Digraph> {
    let n = 2 * m + 1;
    let pairs = pair_table(n);
    let np = pairs.len();
    let mut out = Vec::new();
    for bits in 0..(1u32 << np) {
        let mut outdeg = vec![0usize; n];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if bits >> b & 1 == 1 {
                outdeg[i] += 1;
            } else {
                outdeg[j] += 1;
            }
        }
        if outdeg.iter().all(|&d| d == m) {
            let edges = pairs
                .iter()
                .enumerate()
                .map(|(b, &(i, j))| if bits >> b & 1 == 1 { (i, j) } else { (j, i) });
            out.push(Digraph::from_edges(n, edges).unwrap());
        }
    }
    out
}

fn isomorphic_tournaments(a: &Digraph, b: &Digraph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() {
        return false;
    }
    (0..n)
        .permutations(n)
        .any(|p| a.edges().iter().all(|&(u, v)| b.has_edge(p[u], p[v])))
}

/// On every 3-regular tournament and probe vertex, the recogniser returns a
/// validated ordering exactly when the tournament is cyclic, and a validated
/// alternating 4-cycle otherwise.
fn suite_cyclic_recognizer() -> Result<(usize, Vec<FailureEntry>)> {
    let tournaments = labeled_regular_tournaments(3);
    let reference = cyclic_tournament(3);
    let results = exec::map_indices(tournaments.len(), |ti| {
        let t = &tournaments[ti];
        let cyclic = isomorphic_tournaments(&reference, t);
        let mut fails = Vec::new();
        for v in 0..7 {
            let outcome = match recognize_cyclic(t, v) {
                Ok(o) => o,
                Err(e) => {
                    fails.push(FailureEntry {
                        input: format!("{} v={v}", describe(t)),
                        expected: "an outcome".into(),
                        got: e.to_string(),
                    });
                    continue;
                }
            };
            let (ok, got) = match outcome {
                CyclicOutcome::Ordering(o) => (o.validate(t) && cyclic, "ordering".to_string()),
                CyclicOutcome::AlternatingFourCycle([p, q, r, s]) => {
                    let witness_ok = t.has_edge(v, p)
                        && t.has_edge(v, r)
                        && t.has_edge(q, v)
                        && t.has_edge(s, v)
                        && t.has_edge(p, q)
                        && t.has_edge(q, r)
                        && t.has_edge(r, s)
                        && t.has_edge(s, p);
                    (witness_ok && !cyclic, "four-cycle".to_string())
                }
            };
            if !ok {
                fails.push(FailureEntry {
                    input: format!("{} v={v}", describe(t)),
                    expected: format!("validated {} outcome", if cyclic { "ordering" } else { "four-cycle" }),
                    got,
                });
            }
        }
        (7usize, fails)
    });
    let mut instances = 0;
    let mut failures = Vec::new();
    for (count, fails) in results {
        instances += count;
        failures.extend(fails);
    }
    Ok((instances, failures))
}

fn reverify_partition_certificate(
    g: &Digraph,
    cert: &crate::decompositions::PartitionCertificate,
    max_parts: usize,
) -> std::result::Result<(), String> {
    if !cert.is_partition() {
        return Err("parts do not partition the ground set".into());
    }
    if cert.parts.len() > max_parts {
        return Err(format!("{} parts exceed the bound {max_parts}", cert.parts.len()));
    }
    for part in &cert.parts {
        let set = VertexSet::from_iter(g.vertex_count(), part.vertices.iter().copied());
        match part.property {
            PartProperty::SourceFree(size) | PartProperty::SinkFree(size) => {
                let want_source = matches!(part.property, PartProperty::SourceFree(_));
                for clique in cliques_of_size(g, &set, size) {
                    let extremal = clique.iter().any(|&v| {
                        clique.iter().filter(|&&w| w != v).all(|&w| {
                            if want_source { g.has_edge(v, w) } else { g.has_edge(w, v) }
                        })
                    });
                    if extremal {
                        return Err(format!("clique {clique:?} violates {:?}", part.property));
                    }
                }
            }
            PartProperty::Acyclic => {
                if !g.induced(&set).digraph.is_acyclic() {
                    return Err(format!("part {:?} is not acyclic", part.vertices));
                }
            }
            PartProperty::ChromaticBound(h) => {
                let (chi, _) = chromatic_number(&g.induced(&set).digraph).map_err(|e| e.to_string())?;
                if chi > h {
                    return Err(format!("part has chi {chi} > {h}"));
                }
            }
        }
    }
    Ok(())
}

/// Source/sink-free partitions re-verify and respect the 4nm part bound on
/// a seeded family and a small parameter grid.
fn suite_outnbrs(config: &SuiteConfig) -> Result<(usize, Vec<FailureEntry>)> {
    let grid: Vec<(usize, usize, usize)> = [1, 2]
        .into_iter()
        .cartesian_product([1, 2])
        .cartesian_product([1, 2, 3])
        .map(|((k, m), n)| (k, m, n))
        .collect();
    let n = config.n.min(10);
    let results = exec::map_indices(config.samples, |i| -> Result<Vec<FailureEntry>> {
        let seed = config.seed + i as u64;
        let g = random_oriented(n, config.p, seed)?;
        let mut fails = Vec::new();
        for &(k, m, nn) in &grid {
            match source_sink_partition(&g, k, m, nn)? {
                SourceSinkOutcome::Partition(cert) => {
                    if let Err(msg) = reverify_partition_certificate(&g, &cert, 4 * nn * m) {
                        fails.push(FailureEntry {
                            input: format!("seed={seed} k={k} m={m} n={nn}"),
                            expected: "re-verified certificate".into(),
                            got: msg,
                        });
                    }
                }
                SourceSinkOutcome::Failure(w) => {
                    if w.out_cliques.len() != nn || w.in_cliques.len() != nn {
                        fails.push(FailureEntry {
                            input: format!("seed={seed} k={k} m={m} n={nn}"),
                            expected: format!("{nn} cliques on each side"),
                            got: format!("{}/{}", w.out_cliques.len(), w.in_cliques.len()),
                        });
                    }
                }
            }
        }
        Ok(fails)
    });
    let mut failures = Vec::new();
    for r in results {
        failures.extend(r?);
    }
    Ok((config.samples * grid.len(), failures))
}

/// Acyclic partitions derived from orderable witnesses re-verify and stay
/// within h*k parts.
fn suite_outorderable(config: &SuiteConfig) -> Result<(usize, Vec<FailureEntry>)> {
    let n = config.n.min(10);
    let results = exec::map_indices(config.samples, |i| -> Result<Vec<FailureEntry>> {
        let seed = config.seed + i as u64;
        let g = random_oriented(n, config.p, seed)?;
        let mut fails = Vec::new();
        for (h, k) in [(1usize, 1usize), (1, 2), (2, 1), (2, 2)] {
            let triple = robust_decomposition(&g, h, k, 15)?;
            for side in [&triple.p, &triple.q] {
                if side.parts.is_empty() {
                    continue;
                }
                let cert = acyclic_partition(&g, side)?;
                if let Err(msg) = reverify_partition_certificate(&g, &cert, h * k) {
                    fails.push(FailureEntry {
                        input: format!("seed={seed} h={h} k={k}"),
                        expected: "re-verified acyclic partition".into(),
                        got: msg,
                    });
                }
            }
        }
        Ok(fails)
    });
    let mut failures = Vec::new();
    for r in results {
        failures.extend(r?);
    }
    Ok((config.samples * 4, failures))
}

/// Robust triples re-verify: witnesses validate, the remainder passes the
/// exhaustive robustness sweep.
fn suite_robustpartition(config: &SuiteConfig) -> Result<(usize, Vec<FailureEntry>)> {
    let n = config.n.min(12);
    let results = exec::map_indices(config.samples, |i| -> Result<Vec<FailureEntry>> {
        let seed = config.seed + i as u64;
        let g = random_oriented(n, config.p, seed)?;
        let mut fails = Vec::new();
        for (h, k) in [(1usize, 1usize), (2, 1), (1, 2), (2, 2)] {
            let triple = robust_decomposition(&g, h, k, 15)?;
            let mut all = triple.p.ground_set();
            all.extend(triple.q.ground_set());
            all.extend(triple.r.iter().copied());
            all.sort_unstable();
            let covers = all == (0..n).collect::<Vec<_>>();
            let rset = VertexSet::from_iter(n, triple.r.iter().copied());
            let r_ok = is_robust(&g.induced(&rset).digraph, h, k, 15)?.robust;
            let p_ok = triple.p.validate(&g).is_ok();
            let q_ok = triple.q.validate(&g).is_ok();
            if !(covers && r_ok && p_ok && q_ok && triple.verified) {
                fails.push(FailureEntry {
                    input: format!("seed={seed} h={h} k={k}"),
                    expected: "verified robust triple".into(),
                    got: format!("covers={covers} r={r_ok} p={p_ok} q={q_ok}"),
                });
            }
        }
        Ok(fails)
    });
    let mut failures = Vec::new();
    for r in results {
        failures.extend(r?);
    }
    Ok((config.samples * 4, failures))
}

/// Wherever the internal-density hypothesis holds, the robustness
/// conclusion holds too.
fn suite_userobust(config: &SuiteConfig) -> Result<(usize, Vec<FailureEntry>)> {
    let n = config.n.min(12);
    let results = exec::map_indices(config.samples, |i| -> Result<Vec<FailureEntry>> {
        let seed = config.seed + i as u64;
        let mut fails = Vec::new();
        for tau in [1usize, 2] {
            for dense in [false, true] {
                let p = if dense { 0.9 } else { config.p };
                let g = random_oriented(n, p, seed)?;
                let mut stream = SeedStream::new(seed ^ 0x5eed);
                let size = 1 + stream.next_below(n as u64) as usize;
                let x: Vec<usize> = stream.permutation(n)[..size].to_vec();
                let v = check_userobust_instance(&g, &x, 1, tau, 15)?;
                if !v.implication {
                    fails.push(FailureEntry {
                        input: format!("seed={seed} tau={tau} p={p} x={x:?}"),
                        expected: "hypothesis implies conclusion".into(),
                        got: "hypothesis held, conclusion failed".into(),
                    });
                }
            }
        }
        Ok(fails)
    });
    let mut failures = Vec::new();
    for r in results {
        failures.extend(r?);
    }
    Ok((config.samples * 4, failures))
}

/// On triangle-free digraphs with no disoriented long hole, each distance
/// layer's chromatic number is bounded by 3 tau-hat times the previous one.
fn suite_layer_inequality(config: &SuiteConfig) -> Result<(usize, Vec<FailureEntry>)> {
    let n = config.n.min(9);
    let results = exec::map_indices(config.samples, |i| -> Result<(usize, Vec<FailureEntry>)> {
        let seed = config.seed + i as u64;
        // Sparse probabilities: the triangle-free filter discards almost
        // everything at the default density.
        let p = [0.15, 0.25, 0.35][i % 3];
        let g = random_oriented(n, p, seed)?;
        let (omega, _) = clique_number(&g);
        if omega > 2 {
            return Ok((0, Vec::new()));
        }
        let holes = enumerate_holes(&g, 5, n, 1 << 24)?;
        if holes.iter().any(|h| h.class == HoleClass::Disoriented) {
            return Ok((0, Vec::new()));
        }
        let mut fails = Vec::new();
        for z in 0..n {
            let profile = layer_chromatic_profile(&g, z, 2)?;
            if !profile.inequality_holds.iter().all(|&b| b) {
                fails.push(FailureEntry {
                    input: format!("seed={seed} root={z}"),
                    expected: "layer inequality at every radius".into(),
                    got: format!("chi per layer {:?}, tau-hat {}", profile.layer_chi, profile.tau_hat),
                });
            }
        }
        Ok((1, fails))
    });
    let mut instances = 0;
    let mut failures = Vec::new();
    for r in results {
        let (count, fails) = r?;
        instances += count;
        failures.extend(fails);
    }
    Ok((instances, failures))
}

/// The full pipeline produces verified proper colourings with sane traces
/// on seeded 1-spread instances.
fn suite_pipeline(config: &SuiteConfig) -> Result<(usize, Vec<FailureEntry>)> {
    let n = config.n.min(10);
    let results = exec::map_indices(config.samples, |i| -> Result<(usize, Vec<FailureEntry>)> {
        let seed = config.seed + i as u64;
        let g = if i % 2 == 0 { random_tournament(n, seed) } else { random_oriented(n, 0.7, seed)? };
        if !is_lambda_spread(&g, 1).verdict {
            return Ok((0, Vec::new()));
        }
        let (omega, _) = clique_number(&g);
        let params = ParamPack::new(omega.max(2), 1, 1)?;
        let tc = crate::decompositions::color_spread(&g, &params)?;
        let (chi, _) = chromatic_number(&g)?;
        let trace_ok = !tc.trace.is_empty()
            && tc.trace.iter().all(|e| e.vertices.iter().all(|&v| v < n));
        if tc.coloring.is_proper(&g) && tc.coloring.color_count >= chi && trace_ok {
            Ok((1, Vec::new()))
        } else {
            Ok((
                1,
                vec![FailureEntry {
                    input: format!("seed={seed} {}", describe(&g)),
                    expected: format!("proper colouring with at least {chi} colours"),
                    got: format!(
                        "proper={} colours={} trace_ok={trace_ok}",
                        tc.coloring.is_proper(&g),
                        tc.coloring.color_count
                    ),
                }],
            ))
        }
    });
    let mut instances = 0;
    let mut failures = Vec::new();
    for r in results {
        let (count, fails) = r?;
        instances += count;
        failures.extend(fails);
    }
    Ok((instances, failures))
}
