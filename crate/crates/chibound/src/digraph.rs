//! Simple oriented graphs: no loops, no parallel edges, no digons.
//!
//! A [`Digraph`] is immutable once built; every operation in the crate is a
//! pure function over shared references, so values can be moved or shared
//! between threads freely.

use std::collections::BinaryHeap;
use std::cmp::Reverse;

use crate::error::{Error, Result};
use crate::vset::VertexSet;

/// An oriented graph on dense 0-indexed vertex ids.
///
/// Underlying-graph adjacency is materialized as symmetric bit rows, which
/// is the workhorse of the clique and matching searches elsewhere in the
/// crate.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    out: Vec<VertexSet>,
    inn: Vec<VertexSet>,
    und: Vec<VertexSet>,
    name: Option<String>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            n,
            edges: Vec::new(),
            out: vec![VertexSet::new(n); n],
            inn: vec![VertexSet::new(n); n],
            und: vec![VertexSet::new(n); n],
            name: None,
        }
    }

    pub fn with_name(n: usize, name: impl Into<String>) -> Self {
        let mut g = Self::new(n);
        g.name = Some(name.into());
        g
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds the edge `tail -> head`, rejecting loops, digons and duplicates.
    pub fn add_edge(&mut self, tail: usize, head: usize) -> Result<()> {
        if tail >= self.n {
            return Err(Error::VertexOutOfRange { vertex: tail, count: self.n });
        }
        if head >= self.n {
            return Err(Error::VertexOutOfRange { vertex: head, count: self.n });
        }
        if tail == head {
            return Err(Error::InvalidEdge { tail, head, msg: "loop".into() });
        }
        if self.out[head].contains(tail) {
            return Err(Error::InvalidEdge {
                tail,
                head,
                msg: format!("digon with existing edge ({head}, {tail})"),
            });
        }
        if self.out[tail].contains(head) {
            return Err(Error::InvalidEdge { tail, head, msg: "duplicate edge".into() });
        }
        self.edges.push((tail, head));
        self.out[tail].insert(head);
        self.inn[head].insert(tail);
        self.und[tail].insert(head);
        self.und[head].insert(tail);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in insertion order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = Some(name.into());
    }

    pub fn has_edge(&self, tail: usize, head: usize) -> bool {
        tail < self.n && self.out[tail].contains(head)
    }

    /// Adjacency in the underlying graph.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u < self.n && self.und[u].contains(v)
    }

    pub fn out_neighbors(&self, v: usize) -> &VertexSet {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &VertexSet {
        &self.inn[v]
    }

    pub fn und_neighbors(&self, v: usize) -> &VertexSet {
        &self.und[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    pub fn und_degree(&self, v: usize) -> usize {
        self.und[v].len()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// The digraph with every edge reversed. Involutive, and leaves the
    /// underlying graph untouched.
    pub fn reverse(&self) -> Digraph {
        let mut g = Digraph::new(self.n);
        g.name = self.name.clone();
        for &(u, v) in &self.edges {
            g.edges.push((v, u));
            g.out[v].insert(u);
            g.inn[u].insert(v);
            g.und[u].insert(v);
            g.und[v].insert(u);
        }
        g
    }

    /// Induced subdigraph on `sub` (ascending old ids), plus the relabelling:
    /// new id `i` corresponds to old id `old_ids[i]`.
    pub fn induced(&self, sub: &VertexSet) -> InducedSubdigraph {
        let old_ids: Vec<usize> = sub.iter().collect();
        let mut new_of_old = vec![usize::MAX; self.n];
        for (new, &old) in old_ids.iter().enumerate() {
            new_of_old[old] = new;
        }
        let mut g = Digraph::new(old_ids.len());
        for &(u, v) in &self.edges {
            if sub.contains(u) && sub.contains(v) {
                g.add_edge(new_of_old[u], new_of_old[v])
                    .expect("induced edges inherit host invariants");
            }
        }
        InducedSubdigraph { digraph: g, old_ids }
    }

    pub fn induced_from_slice(&self, sub: &[usize]) -> Result<InducedSubdigraph> {
        let mut s = VertexSet::new(self.n);
        for &v in sub {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, count: self.n });
            }
            s.insert(v);
        }
        Ok(self.induced(&s))
    }

    /// Breadth-first layers of the underlying graph from `root`.
    pub fn distance_layers(&self, root: usize) -> Result<LayerDecomposition> {
        if root >= self.n {
            return Err(Error::VertexOutOfRange { vertex: root, count: self.n });
        }
        let mut dist = vec![usize::MAX; self.n];
        dist[root] = 0;
        let mut layers = vec![vec![root]];
        loop {
            let mut next = Vec::new();
            for &v in layers.last().unwrap() {
                for u in self.und[v].iter() {
                    if dist[u] == usize::MAX {
                        dist[u] = layers.len();
                        next.push(u);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            layers.push(next);
        }
        let unreachable: Vec<usize> =
            (0..self.n).filter(|&v| dist[v] == usize::MAX).collect();
        Ok(LayerDecomposition { root, layers, unreachable })
    }

    /// Either a topological order (lexicographically least) or a directed
    /// cycle witness of length at least three.
    pub fn acyclicity(&self) -> Acyclicity {
        let mut indeg: Vec<usize> = (0..self.n).map(|v| self.inn[v].len()).collect();
        let mut heap: BinaryHeap<Reverse<usize>> = (0..self.n)
            .filter(|&v| indeg[v] == 0)
            .map(Reverse)
            .collect();
        let mut order = Vec::with_capacity(self.n);
        let mut placed = vec![false; self.n];
        while let Some(Reverse(v)) = heap.pop() {
            placed[v] = true;
            order.push(v);
            for u in self.out[v].iter() {
                indeg[u] -= 1;
                if indeg[u] == 0 {
                    heap.push(Reverse(u));
                }
            }
        }
        if order.len() == self.n {
            return Acyclicity::Order(order);
        }
        // Some vertex lies on a directed cycle, but unplaced vertices merely
        // downstream of one do not. Peel unplaced vertices with no unplaced
        // out-neighbour; every survivor keeps a surviving out-neighbour.
        let mut alive = placed.iter().map(|&p| !p).collect::<Vec<_>>();
        let mut outdeg: Vec<usize> = (0..self.n)
            .map(|v| self.out[v].iter().filter(|&u| !placed[u]).count())
            .collect();
        let mut stack: Vec<usize> =
            (0..self.n).filter(|&v| alive[v] && outdeg[v] == 0).collect();
        while let Some(v) = stack.pop() {
            alive[v] = false;
            for u in self.inn[v].iter() {
                if alive[u] {
                    outdeg[u] -= 1;
                    if outdeg[u] == 0 {
                        stack.push(u);
                    }
                }
            }
        }
        // Walk forward along smallest surviving out-neighbours until a
        // vertex repeats.
        let start = (0..self.n).find(|&v| alive[v]).unwrap();
        let mut seen_at = vec![usize::MAX; self.n];
        let mut path = Vec::new();
        let mut v = start;
        loop {
            if seen_at[v] != usize::MAX {
                let cycle = path[seen_at[v]..].to_vec();
                debug_assert!(cycle.len() >= 3);
                return Acyclicity::Cycle(cycle);
            }
            seen_at[v] = path.len();
            path.push(v);
            v = self.out[v]
                .iter()
                .find(|&u| alive[u])
                .expect("surviving vertex keeps a surviving out-neighbour");
        }
    }

    pub fn is_acyclic(&self) -> bool {
        matches!(self.acyclicity(), Acyclicity::Order(_))
    }

    /// Parses the line-oriented edge-list format (see crate docs):
    /// `#` comments, a `n <count>` header, then `e <tail> <head>` lines.
    pub fn parse(text: &str) -> Result<Digraph> {
        let mut g: Option<Digraph> = None;
        let mut name: Option<String> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(n) = rest.trim().strip_prefix("name:") {
                    name = Some(n.trim().to_string());
                }
                continue;
            }
            let mut fields = line.split_whitespace();
            match fields.next() {
                Some("n") => {
                    if g.is_some() {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: "duplicate header".into(),
                        });
                    }
                    let count: usize = fields
                        .next()
                        .ok_or_else(|| Error::Parse {
                            line: line_no,
                            msg: "header missing vertex count".into(),
                        })?
                        .parse()
                        .map_err(|_| Error::Parse {
                            line: line_no,
                            msg: "vertex count is not a nonnegative integer".into(),
                        })?;
                    g = Some(Digraph::new(count));
                }
                Some("e") => {
                    let g = g.as_mut().ok_or_else(|| Error::Parse {
                        line: line_no,
                        msg: "edge before header".into(),
                    })?;
                    let mut field = |what: &str| -> Result<usize> {
                        fields
                            .next()
                            .ok_or_else(|| Error::Parse {
                                line: line_no,
                                msg: format!("edge missing {what}"),
                            })?
                            .parse()
                            .map_err(|_| Error::Parse {
                                line: line_no,
                                msg: format!("{what} is not a vertex id"),
                            })
                    };
                    let tail = field("tail")?;
                    let head = field("head")?;
                    g.add_edge(tail, head).map_err(|e| Error::Parse {
                        line: line_no,
                        msg: e.to_string(),
                    })?;
                }
                Some(tok) => {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("unknown record '{tok}'"),
                    })
                }
                None => unreachable!(),
            }
        }
        let mut g = g.ok_or_else(|| Error::Parse { line: 0, msg: "missing header".into() })?;
        g.name = name;
        Ok(g)
    }

    /// Serializes to the edge-list format; `parse` of the output reproduces
    /// vertex count, edge order, and name exactly.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        if let Some(name) = &self.name {
            s.push_str(&format!("# name: {name}\n"));
        }
        s.push_str(&format!("n {}\n", self.n));
        for &(u, v) in &self.edges {
            s.push_str(&format!("e {u} {v}\n"));
        }
        s
    }

    /// DOT export with directed edges and the graph name as label.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph {\n");
        if let Some(name) = &self.name {
            s.push_str(&format!("  label=\"{name}\";\n"));
        }
        for v in 0..self.n {
            s.push_str(&format!("  {v};\n"));
        }
        for &(u, v) in &self.edges {
            s.push_str(&format!("  {u} -> {v};\n"));
        }
        s.push_str("}\n");
        s
    }
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digraph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// An induced subdigraph together with its relabelling back to the host.
pub struct InducedSubdigraph {
    pub digraph: Digraph,
    /// `old_ids[new]` is the host id of subgraph vertex `new`.
    pub old_ids: Vec<usize>,
}

impl InducedSubdigraph {
    pub fn old_to_new(&self, old: usize) -> Option<usize> {
        self.old_ids.binary_search(&old).ok()
    }
}

/// Result of `Digraph::acyclicity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Acyclicity {
    Order(Vec<usize>),
    Cycle(Vec<usize>),
}

/// Breadth-first distance layers of the underlying graph.
#[derive(Debug, Clone)]
pub struct LayerDecomposition {
    pub root: usize,
    /// `layers[r]` is exactly the set of vertices at underlying distance `r`.
    pub layers: Vec<Vec<usize>>,
    pub unreachable: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn directed_triangle() -> Digraph {
        Digraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    pub fn transitive_triangle() -> Digraph {
        Digraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn parse_directed_triangle() {
        let g = Digraph::parse("n 3\ne 0 1\ne 1 2\ne 2 0").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (2, 0)]);
    }

    #[test]
    fn parse_single_vertex() {
        let g = Digraph::parse("n 1").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parse_rejects_digon() {
        let err = Digraph::parse("n 2\ne 0 1\ne 1 0").unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 3);
                assert!(msg.contains("digon"), "{msg}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_loop_and_out_of_range() {
        assert!(Digraph::parse("n 2\ne 1 1").is_err());
        assert!(Digraph::parse("n 2\ne 0 5").is_err());
        assert!(Digraph::parse("e 0 1\nn 2").is_err());
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = Digraph::parse("n 3\n# fine\ne 0 zork").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn round_trip_is_byte_stable() {
        let text = "# name: demo\nn 4\ne 0 1\ne 2 1\ne 3 2\n";
        let g = Digraph::parse(text).unwrap();
        assert_eq!(g.to_edge_list(), text);
        let g2 = Digraph::parse(&g.to_edge_list()).unwrap();
        assert_eq!(g2.to_edge_list(), text);
    }

    #[test]
    fn induced_on_triangle() {
        let g = directed_triangle();
        let sub = g.induced(&VertexSet::from_iter(3, [0, 1]));
        assert_eq!(sub.digraph.vertex_count(), 2);
        assert_eq!(sub.digraph.edges(), &[(0, 1)]);
        assert_eq!(sub.old_ids, vec![0, 1]);
    }

    #[test]
    fn induced_on_empty_set() {
        let g = directed_triangle();
        let sub = g.induced(&VertexSet::new(3));
        assert_eq!(sub.digraph.vertex_count(), 0);
        assert_eq!(sub.digraph.edge_count(), 0);
    }

    #[test]
    fn reverse_involutive() {
        let g = transitive_triangle();
        let r = g.reverse();
        assert_eq!(r.edges(), &[(1, 0), (2, 1), (2, 0)]);
        assert_eq!(r.reverse().edges(), g.edges());
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(g.adjacent(u, v), r.adjacent(u, v));
            }
        }
    }

    #[test]
    fn layers_of_star() {
        // z = 0 with three leaves.
        let g = Digraph::from_edges(4, [(0, 1), (0, 2), (3, 0)]).unwrap();
        let l = g.distance_layers(0).unwrap();
        assert_eq!(l.layers, vec![vec![0], vec![1, 2, 3]]);
        assert!(l.unreachable.is_empty());
    }

    #[test]
    fn layers_of_directed_five_cycle() {
        let g = Digraph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        for z in 0..5 {
            let l = g.distance_layers(z).unwrap();
            let sizes: Vec<usize> = l.layers.iter().map(|x| x.len()).collect();
            assert_eq!(sizes, vec![1, 2, 2]);
        }
    }

    #[test]
    fn layers_report_unreachable() {
        let mut g = Digraph::from_edges(4, [(0, 1), (1, 2), (2, 0)]).unwrap();
        g.set_name("triangle-plus-isolate");
        let l = g.distance_layers(0).unwrap();
        assert_eq!(l.unreachable, vec![3]);
    }

    #[test]
    fn acyclicity_of_transitive_triangle() {
        assert_eq!(
            transitive_triangle().acyclicity(),
            Acyclicity::Order(vec![0, 1, 2])
        );
    }

    #[test]
    fn acyclicity_of_directed_triangle() {
        match directed_triangle().acyclicity() {
            Acyclicity::Cycle(c) => {
                assert_eq!(c.len(), 3);
                let g = directed_triangle();
                for i in 0..c.len() {
                    assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
                }
            }
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn cycle_witness_skips_vertices_downstream_of_the_cycle() {
        // Vertex 3 stays unplaced after Kahn but has no unplaced
        // out-neighbour; the witness walk must not enter it.
        let g = Digraph::from_edges(
            5,
            [(0, 1), (2, 0), (4, 0), (2, 1), (1, 3), (1, 4), (4, 3)],
        )
        .unwrap();
        match g.acyclicity() {
            Acyclicity::Cycle(c) => {
                assert!(c.len() >= 3);
                for i in 0..c.len() {
                    assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
                }
            }
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn acyclicity_of_null() {
        assert_eq!(Digraph::new(0).acyclicity(), Acyclicity::Order(vec![]));
    }

    #[test]
    fn dot_export() {
        let mut g = transitive_triangle();
        g.set_name("tt");
        let dot = g.to_dot();
        assert!(dot.contains("digraph {"));
        assert!(dot.contains("label=\"tt\""));
        assert!(dot.contains("0 -> 1;"));
    }
}
