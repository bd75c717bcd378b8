//! Graph representation, witnesses, edge-list I/O, generators, and the
//! brute-force oracles that every faster routine is checked against.

pub mod bits;
mod generate;
mod io;
mod oracle;
pub mod rng;

pub use generate::{Generated, GraphSpec, Kind, Probability, DEFAULT_MAX_VERTICES};
pub use io::{load_graph, write_graph};
pub use oracle::{naive_detect, oracle_detect};

use std::fmt;

/// Undirected simple graph stored as one adjacency bitset row per vertex.
///
/// Rows are `words()` 64-bit words long; bit `v` of row `u` is set iff
/// `{u, v}` is an edge. The representation is symmetric and irreflexive.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.edge_count())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = bits::words_for(n);
        Self {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`.
    pub fn cycle(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n);
        }
        g
    }

    /// Builds a graph from an edge list; panics on self-loops or ids `>= n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Words per adjacency row.
    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    /// Adjacency row of `v` as a bitset.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        bits::test(self.row(u), v)
    }

    /// Inserts `{u, v}`; panics on a self-loop or out-of-range id.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop on vertex {u}");
        assert!(u < self.n && v < self.n, "edge ({u}, {v}) out of range");
        let w = self.words;
        bits::set(&mut self.bits[u * w..(u + 1) * w], v);
        bits::set(&mut self.bits[v * w..(v + 1) * w], u);
    }

    /// Removes `{u, v}` if present.
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "edge ({u}, {v}) out of range");
        let w = self.words;
        bits::clear(&mut self.bits[u * w..(u + 1) * w], v);
        bits::clear(&mut self.bits[v * w..(v + 1) * w], u);
    }

    /// Sets `{u, v}` present or absent.
    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        if present {
            self.add_edge(u, v);
        } else {
            self.remove_edge(u, v);
        }
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        bits::count(self.row(v))
    }

    /// Neighbors of `v` in ascending order.
    #[inline]
    pub fn neighbors(&self, v: usize) -> bits::Ones<'_> {
        bits::ones(self.row(v))
    }

    /// Number of common neighbors of `u` and `v`.
    #[inline]
    pub fn codegree(&self, u: usize, v: usize) -> usize {
        bits::and_count(self.row(u), self.row(v))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.neighbors(u).filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut h = Graph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    h.add_edge(i, j);
                }
            }
        }
        h
    }

    /// Whether `vertices` are pairwise adjacent.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..]
                .iter()
                .all(|&v| u != v && self.has_edge(u, v))
        })
    }

    /// First pair `(u, v)` with `u < v` (in the order of `vertices`, which is
    /// assumed ascending) that is not adjacent, if any.
    pub fn first_non_adjacent_pair(&self, vertices: &[usize]) -> Option<(usize, usize)> {
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                if !self.has_edge(u, v) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// Whether the representation is symmetric and irreflexive.
    pub fn check_invariants(&self) -> bool {
        (0..self.n).all(|u| {
            !self.has_edge(u, u) && self.neighbors(u).all(|v| v < self.n && self.has_edge(v, u))
        }) && self.bits.len() == self.n * self.words
            && (0..self.n).all(|u| {
                // Padding bits past n must stay clear.
                self.n.is_multiple_of(64) || self.row(u)[self.words - 1] >> (self.n % 64) == 0
            })
    }
}

/// Four vertices `(a, b, c, d)` claimed to form an induced 4-cycle
/// `a - b - c - d - a` with chords `ac` and `bd` absent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct C4Witness {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl C4Witness {
    pub fn new(a: usize, b: usize, c: usize, d: usize) -> Self {
        Self { a, b, c, d }
    }

    pub fn as_array(&self) -> [usize; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Rotation/reflection of the same cycle with `a` the minimum id and `b < d`.
    pub fn canonical(&self) -> Self {
        let v = self.as_array();
        let i = (0..4).min_by_key(|&i| v[i]).unwrap();
        let (next, prev) = (v[(i + 1) % 4], v[(i + 3) % 4]);
        let opposite = v[(i + 2) % 4];
        let (b, d) = if next < prev { (next, prev) } else { (prev, next) };
        Self::new(v[i], b, opposite, d)
    }

    /// Maps every id through `map` (used to lift witnesses out of subgraphs).
    pub fn map(&self, map: &[usize]) -> Self {
        Self::new(map[self.a], map[self.b], map[self.c], map[self.d])
    }
}

impl fmt::Display for C4Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.a, self.b, self.c, self.d)
    }
}

/// True iff the witness ids are distinct, in range, and induce the cycle
/// `a - b - c - d - a` with no chords.
pub fn verify_witness(g: &Graph, w: &C4Witness) -> bool {
    let v = w.as_array();
    if v.iter().any(|&x| x >= g.n()) {
        return false;
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if v[i] == v[j] {
                return false;
            }
        }
    }
    g.has_edge(w.a, w.b)
        && g.has_edge(w.b, w.c)
        && g.has_edge(w.c, w.d)
        && g.has_edge(w.d, w.a)
        && !g.has_edge(w.a, w.c)
        && !g.has_edge(w.b, w.d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_and_complete_witnesses() {
        let c4 = Graph::cycle(4);
        let k4 = Graph::complete(4);
        assert!(verify_witness(&c4, &C4Witness::new(0, 1, 2, 3)));
        assert!(!verify_witness(&k4, &C4Witness::new(0, 1, 2, 3)));
        assert!(!verify_witness(&c4, &C4Witness::new(0, 2, 1, 3)));
        assert!(!verify_witness(&c4, &C4Witness::new(0, 1, 2, 7)));
        assert!(!verify_witness(&c4, &C4Witness::new(0, 1, 0, 3)));
    }

    #[test]
    fn canonical_form_is_rotation_invariant() {
        let g = Graph::from_edges(6, &[(5, 2), (2, 4), (4, 1), (1, 5)]);
        let w = C4Witness::new(5, 2, 4, 1);
        assert!(verify_witness(&g, &w));
        let c = w.canonical();
        assert_eq!(c, C4Witness::new(1, 4, 2, 5));
        assert!(verify_witness(&g, &c));
        for r in [
            C4Witness::new(2, 4, 1, 5),
            C4Witness::new(4, 1, 5, 2),
            C4Witness::new(1, 4, 2, 5),
            C4Witness::new(1, 5, 2, 4),
        ] {
            assert_eq!(r.canonical(), c);
        }
    }

    #[test]
    fn edits_keep_invariants() {
        let mut g = Graph::new(130);
        g.add_edge(0, 129);
        g.add_edge(64, 65);
        g.add_edge(64, 65);
        assert_eq!(g.edge_count(), 2);
        assert!(g.check_invariants());
        g.remove_edge(0, 129);
        assert_eq!(g.edges(), vec![(64, 65)]);
        assert!(g.check_invariants());
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = Graph::cycle(6);
        let h = g.induced(&[1, 2, 3, 5]);
        assert_eq!(h.edges(), vec![(0, 1), (1, 2)]);
        assert!(g.is_clique(&[1, 2]));
        assert!(!g.is_clique(&[1, 2, 3]));
        assert_eq!(g.first_non_adjacent_pair(&[1, 2, 3]), Some((1, 3)));
    }
}
