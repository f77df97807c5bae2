//! Generators for the named digraph families and the regular-tournament
//! cyclicity recognizer.

use serde::Serialize;

use crate::digraph::{Acyclicity, Digraph};
use crate::error::{Error, Result};

/// The oriented shift graph: one vertex per 2-subset of `{1..n}` in colex
/// order, with an edge `{i,j} -> {j,k}` whenever `i < j < k`. Vertex
/// numbering is fixed so downstream results are byte-reproducible.
pub fn shift_digraph(n: usize) -> Result<Digraph> {
    if n < 2 {
        return Err(Error::Precondition("shift digraph needs n >= 2".into()));
    }
    // Colex order: {1,2},{1,3},{2,3},{1,4},...
    let mut pairs = Vec::new();
    for j in 2..=n {
        for i in 1..j {
            pairs.push((i, j));
        }
    }
    let index = |i: usize, j: usize| -> usize {
        // position of {i,j} with i<j in colex order
        (j - 1) * (j - 2) / 2 + i - 1
    };
    let mut g = Digraph::with_name(pairs.len(), format!("shift({n})"));
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                g.add_edge(index(i, j), index(j, k)).unwrap();
            }
        }
    }
    Ok(g)
}

/// The cyclic tournament on `2m+1` vertices: in the natural order,
/// `v_i -> v_j` (for i < j) exactly when `j - i <= m`. Regular with all
/// out-degrees m.
pub fn cyclic_tournament(m: usize) -> Digraph {
    let n = 2 * m + 1;
    let mut g = Digraph::with_name(n, format!("cyclic({m})"));
    for i in 0..n {
        for j in i + 1..n {
            if j - i <= m {
                g.add_edge(i, j).unwrap();
            } else {
                g.add_edge(j, i).unwrap();
            }
        }
    }
    g
}

/// An ordering witnessing cyclicity of a regular tournament.
#[derive(Debug, Clone, Serialize)]
pub struct TournamentOrdering {
    pub order: Vec<usize>,
    pub m: usize,
}

impl TournamentOrdering {
    /// The cyclicity predicate: for positions i < j, the edge goes forward
    /// exactly when `j - i <= m`.
    pub fn validate(&self, h: &Digraph) -> bool {
        let n = self.order.len();
        if n != h.vertex_count() || n != 2 * self.m + 1 {
            return false;
        }
        for i in 0..n {
            for j in i + 1..n {
                let forward = j - i <= self.m;
                if h.has_edge(self.order[i], self.order[j]) != forward {
                    return false;
                }
            }
        }
        true
    }
}

/// Outcome of [`recognize_cyclic`].
#[derive(Debug, Clone)]
pub enum CyclicOutcome {
    Ordering(TournamentOrdering),
    /// A directed 4-cycle `p -> q -> r -> s -> p` with `p, r` out-neighbours
    /// and `q, s` in-neighbours of the probe vertex.
    AlternatingFourCycle([usize; 4]),
}

fn regular_tournament_degree(h: &Digraph) -> Result<usize> {
    let n = h.vertex_count();
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::Precondition("regular tournament needs an odd vertex count".into()));
    }
    let m = (n - 1) / 2;
    for u in 0..n {
        if h.und_degree(u) != n - 1 {
            return Err(Error::Precondition(format!("vertex {u} misses an opponent")));
        }
        if h.out_degree(u) != m {
            return Err(Error::Precondition(format!(
                "vertex {u} has out-degree {} in a claimed {m}-regular tournament",
                h.out_degree(u)
            )));
        }
    }
    Ok(m)
}

/// Either builds and validates a cyclicity ordering of the regular
/// tournament `h`, or exhibits the directed 4-cycle alternating around `v`
/// that obstructs it. The constructed ordering is validated before return;
/// a validation failure is reported as an error rather than returned.
pub fn recognize_cyclic(h: &Digraph, v: usize) -> Result<CyclicOutcome> {
    let m = regular_tournament_degree(h)?;
    if v >= h.vertex_count() {
        return Err(Error::VertexOutOfRange { vertex: v, count: h.vertex_count() });
    }
    let outs: Vec<usize> = h.out_neighbors(v).to_vec();
    let ins: Vec<usize> = h.in_neighbors(v).to_vec();
    // Lexicographically least alternating 4-cycle, if any.
    for &p in &outs {
        for &q in &ins {
            if !h.has_edge(p, q) {
                continue;
            }
            for &r in &outs {
                if r == p || !h.has_edge(q, r) {
                    continue;
                }
                for &s in &ins {
                    if s != q && h.has_edge(r, s) && h.has_edge(s, p) {
                        return Ok(CyclicOutcome::AlternatingFourCycle([p, q, r, s]));
                    }
                }
            }
        }
    }
    // No obstruction: order V \ {v} topologically by the bipartite
    // subdigraph between the out- and in-neighbourhoods, then interleave.
    let mut j = Digraph::new(h.vertex_count());
    for &(t, hd) in h.edges() {
        let cross = (h.has_edge(v, t) && h.has_edge(hd, v)) || (h.has_edge(v, hd) && h.has_edge(t, v));
        if cross {
            j.add_edge(t, hd).unwrap();
        }
    }
    let topo = match j.acyclicity() {
        Acyclicity::Order(o) => o,
        Acyclicity::Cycle(_) => {
            return Err(Error::VerificationFailed(
                "bipartite subdigraph cyclic despite no alternating 4-cycle".into(),
            ))
        }
    };
    let seq: Vec<usize> = topo.into_iter().filter(|&u| u != v).collect();
    // With seq = v_1..v_2m, the cyclic order is
    // (v_2m, v_2m-2, ..., v_2, v, v_2m-1, ..., v_1).
    let mut order = Vec::with_capacity(2 * m + 1);
    for i in (1..=m).rev() {
        order.push(seq[2 * i - 1]);
    }
    order.push(v);
    for i in (1..=m).rev() {
        order.push(seq[2 * i - 2]);
    }
    let ordering = TournamentOrdering { order, m };
    if !ordering.validate(h) {
        return Err(Error::VerificationFailed(
            "constructed ordering fails the cyclicity predicate".into(),
        ));
    }
    Ok(CyclicOutcome::Ordering(ordering))
}

/// Counter-based bit source: seed plus pair index map to bits directly, so
/// edge decisions are order-independent and identical across platforms.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn pair_bits(seed: u64, pair_index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(pair_index.wrapping_add(1)))
}

/// Seeded random oriented graph: each unordered pair gets an underlying
/// edge with probability `p`, then a uniform orientation.
pub fn random_oriented(n: usize, p: f64, seed: u64) -> Result<Digraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Precondition(format!("edge probability {p} outside [0, 1]")));
    }
    let mut g = Digraph::with_name(n, format!("random(n={n},p={p},seed={seed})"));
    let mut pair_index = 0u64;
    for u in 0..n {
        for v in u + 1..n {
            let bits = pair_bits(seed, pair_index);
            pair_index += 1;
            let draw = (bits >> 11) as f64 / (1u64 << 53) as f64;
            if draw < p {
                if bits & 1 == 0 {
                    g.add_edge(u, v).unwrap();
                } else {
                    g.add_edge(v, u).unwrap();
                }
            }
        }
    }
    Ok(g)
}

/// Seeded random tournament: every pair adjacent, uniform orientation.
pub fn random_tournament(n: usize, seed: u64) -> Digraph {
    let mut g = Digraph::with_name(n, format!("tournament(n={n},seed={seed})"));
    let mut pair_index = 0u64;
    for u in 0..n {
        for v in u + 1..n {
            let bits = pair_bits(seed, pair_index);
            pair_index += 1;
            if bits & 1 == 0 {
                g.add_edge(u, v).unwrap();
            } else {
                g.add_edge(v, u).unwrap();
            }
        }
    }
    g
}

/// Deterministic stream of u64s for the seeded test suites.
#[derive(Debug, Clone)]
pub struct SeedStream {
    seed: u64,
    counter: u64,
}

impl SeedStream {
    pub fn new(seed: u64) -> Self {
        SeedStream { seed, counter: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter += 1;
        splitmix64(self.seed ^ splitmix64(self.counter))
    }

    /// Uniform value in `0..bound` (bound > 0).
    pub fn next_below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Seeded Fisher-Yates permutation of `0..n`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.next_below(i as u64 + 1) as usize;
            perm.swap(i, j);
        }
        perm
    }
}

/// A random acyclic orientation: underlying edges drawn with probability
/// `p`, all oriented along a seeded random vertex order.
pub fn random_acyclic_oriented(n: usize, p: f64, seed: u64) -> Result<Digraph> {
    let base = random_oriented(n, p, seed)?;
    let mut stream = SeedStream::new(seed ^ 0xACC1_1C0D);
    let perm = stream.permutation(n);
    let mut rank = vec![0usize; n];
    for (pos, &v) in perm.iter().enumerate() {
        rank[v] = pos;
    }
    let mut g = Digraph::with_name(n, format!("random-acyclic(n={n},p={p},seed={seed})"));
    for &(u, v) in base.edges() {
        if rank[u] < rank[v] {
            g.add_edge(u, v).unwrap();
        } else {
            g.add_edge(v, u).unwrap();
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{chromatic_number, clique_number};

    #[test]
    fn shift_three_is_a_single_edge() {
        let g = shift_digraph(3).unwrap();
        assert_eq!(g.vertex_count(), 3);
        // {1,2} -> {2,3}: colex positions 0 and 2.
        assert_eq!(g.edges(), &[(0, 2)]);
    }

    #[test]
    fn shift_five_is_triangle_free() {
        let g = shift_digraph(5).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(clique_number(&g).0, 2);
    }

    #[test]
    fn shift_chromatic_matches_log_formula() {
        for n in 3..=7 {
            let g = shift_digraph(n).unwrap();
            let expected = (n as f64).log2().ceil() as usize;
            assert_eq!(chromatic_number(&g).unwrap().0, expected, "n={n}");
        }
    }

    #[test]
    fn cyclic_tournament_shapes() {
        assert_eq!(cyclic_tournament(0).vertex_count(), 1);
        let triangle = cyclic_tournament(1);
        assert_eq!(triangle.edges(), &[(0, 1), (2, 0), (1, 2)]);
        let t3 = cyclic_tournament(3);
        assert_eq!(t3.vertex_count(), 7);
        for v in t3.vertices() {
            assert_eq!(t3.out_degree(v), 3);
        }
    }

    #[test]
    fn cyclic_tournaments_recognized_at_every_vertex() {
        for m in [1usize, 2, 3] {
            let h = cyclic_tournament(m);
            for v in h.vertices() {
                match recognize_cyclic(&h, v).unwrap() {
                    CyclicOutcome::Ordering(o) => assert!(o.validate(&h)),
                    CyclicOutcome::AlternatingFourCycle(c) => {
                        panic!("unexpected 4-cycle {c:?} at v={v}, m={m}")
                    }
                }
            }
        }
    }

    #[test]
    fn non_regular_tournament_is_rejected() {
        let mut g = Digraph::new(3);
        g.add_edge(0, 1).unwrap();
        g.add_edge(0, 2).unwrap();
        g.add_edge(1, 2).unwrap();
        assert!(recognize_cyclic(&g, 0).is_err());
    }

    #[test]
    fn generators_are_deterministic() {
        let a = random_oriented(10, 0.5, 1).unwrap();
        let b = random_oriented(10, 0.5, 1).unwrap();
        assert_eq!(a.edges(), b.edges());
        let t = random_tournament(9, 7);
        assert_eq!(t.edges(), random_tournament(9, 7).edges());
        assert_eq!(t.edge_count(), 9 * 8 / 2);
    }

    #[test]
    fn random_edge_probability_extremes() {
        assert_eq!(random_oriented(6, 0.0, 3).unwrap().edge_count(), 0);
        let full = random_oriented(4, 1.0, 3).unwrap();
        assert_eq!(full.edge_count(), 6);
        assert!(random_oriented(4, 1.5, 3).is_err());
    }

    #[test]
    fn acyclic_generator_is_acyclic() {
        for seed in 0..20 {
            let g = random_acyclic_oriented(8, 0.6, seed).unwrap();
            assert!(g.is_acyclic(), "seed {seed}");
        }
    }
}
