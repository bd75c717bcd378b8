//! Cluster pairs: detect an induced 4-cycle with two vertices in each of two
//! cliques, or produce a concise ordering of the pair.
//!
//! An ordering of `(X, Y)` is a pair of integer labelings `f` on `X` and `g`
//! on `Y` with `x ~ y` iff `f(x) <= g(y)`. It is concise when equal labels are
//! the only way two vertices can share a neighborhood in the other cluster.
//! The construction sets `g(y) = deg_X(y)` and `f(x)` to the smallest `g`
//! among the neighbors of `x` (or `|X| + 1` without neighbors), then checks
//! the edge law on every pair; the first violation yields a witness.

use crate::error::{contract, Error, Result};
use crate::graph_core::{C4Witness, Graph};
use std::borrow::Cow;
use std::collections::HashMap;

/// Vertex set of a clique extracted by the decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub id: usize,
    pub level: usize,
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
}

impl Cluster {
    pub fn new(id: usize, level: usize, mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        Self { id, level, vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Labels for an ordered cluster pair `(X, Y)`; `f[i]` labels
/// `X.vertices[i]` and `g[j]` labels `Y.vertices[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConciseOrdering {
    pub x: usize,
    pub y: usize,
    pub f: Vec<i64>,
    pub g: Vec<i64>,
    /// Sorted distinct values of `f`.
    pub f_image: Vec<i64>,
    /// Sorted distinct values of `g`.
    pub g_image: Vec<i64>,
}

/// Result of [`detect_pair`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairOutcome {
    Found(C4Witness),
    Ordered(ConciseOrdering),
}

pub(crate) fn image(values: &[i64]) -> Vec<i64> {
    let mut v = values.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Decides whether `G[A ∪ B]` has an induced 4-cycle with two vertices in
/// each cluster; otherwise returns the concise ordering of `(A, B)`.
///
/// Fails with a contract error if the clusters overlap or are not cliques.
pub fn detect_pair(g: &Graph, a: &Cluster, b: &Cluster) -> Result<PairOutcome> {
    for c in [a, b] {
        if !g.is_clique(&c.vertices) || c.vertices.iter().any(|&v| v >= g.n()) {
            return contract(format!("cluster {} is not a clique of the graph", c.id));
        }
    }
    if a.vertices.iter().any(|v| b.vertices.binary_search(v).is_ok()) {
        return contract(format!("clusters {} and {} overlap", a.id, b.id));
    }
    Ok(detect_pair_unchecked(g, a, b))
}

/// [`detect_pair`] without the clique and disjointness checks, for clusters
/// already verified by the decomposition.
pub fn detect_pair_unchecked(g: &Graph, a: &Cluster, b: &Cluster) -> PairOutcome {
    let (fa, gb) = labels(g, &a.vertices, &b.vertices);
    for (i, &x) in a.vertices.iter().enumerate() {
        for (j, &y) in b.vertices.iter().enumerate() {
            if g.has_edge(x, y) || fa[i] > gb[j] {
                continue;
            }
            // Non-edge with f(x) <= g(y): the neighbor of x realizing f(x)
            // has a smaller A-neighborhood than y that still contains x.
            let tilde_b = b
                .vertices
                .iter()
                .zip(&gb)
                .find(|&(&v, &gv)| gv == fa[i] && g.has_edge(x, v))
                .map(|(&v, _)| v)
                .expect("f(x) is realized by a neighbor");
            let tilde_a = a
                .vertices
                .iter()
                .copied()
                .find(|&u| g.has_edge(u, y) && !g.has_edge(u, tilde_b))
                .expect("deg_A(y) >= deg_A(tilde_b) forces a private neighbor");
            return PairOutcome::Found(C4Witness::new(x, tilde_b, y, tilde_a).canonical());
        }
    }
    PairOutcome::Ordered(ConciseOrdering {
        x: a.id,
        y: b.id,
        f_image: image(&fa),
        g_image: image(&gb),
        f: fa,
        g: gb,
    })
}

/// The labels `(f, g)` of the construction, without verification.
fn labels(g: &Graph, a: &[usize], b: &[usize]) -> (Vec<i64>, Vec<i64>) {
    let gb: Vec<i64> = b
        .iter()
        .map(|&y| a.iter().filter(|&&x| g.has_edge(x, y)).count() as i64)
        .collect();
    let fa: Vec<i64> = a
        .iter()
        .map(|&x| {
            b.iter()
                .zip(&gb)
                .filter(|&(&y, _)| g.has_edge(x, y))
                .map(|(_, &v)| v)
                .min()
                .unwrap_or(a.len() as i64 + 1)
        })
        .collect();
    (fa, gb)
}

/// An ordering viewed with `f` on the first-named cluster.
#[derive(Clone, Debug)]
pub struct OrientedOrdering<'a> {
    pub f: Cow<'a, [i64]>,
    pub g: Cow<'a, [i64]>,
}

impl OrientedOrdering<'_> {
    pub fn f_image(&self) -> Vec<i64> {
        image(&self.f)
    }

    pub fn g_image(&self) -> Vec<i64> {
        image(&self.g)
    }

    /// Edge law: `X.vertices[i] ~ Y.vertices[j]` iff this holds.
    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.f[i] <= self.g[j]
    }
}

/// Orderings for every pair of clusters in a decomposition.
///
/// Pairs where both clusters have at least two vertices are stored once,
/// keyed by `(min id, max id)` with `f` on the smaller id. Pairs involving a
/// singleton are synthesized on request: two singletons get `(0, 0)` for an
/// edge and `(1, 0)` for a non-edge, and a singleton against a larger
/// cluster gets the construction's labels, which are always valid there.
#[derive(Clone, Debug, Default)]
pub struct OrderingTable {
    clusters: Vec<Vec<usize>>,
    stored: HashMap<(usize, usize), ConciseOrdering>,
}

impl OrderingTable {
    /// Empty table over the given clusters (indexed by cluster id).
    pub fn new(clusters: &[Cluster]) -> Self {
        Self {
            clusters: clusters.iter().map(|c| c.vertices.clone()).collect(),
            stored: HashMap::new(),
        }
    }

    /// Stores an ordering produced by [`detect_pair`].
    pub fn insert(&mut self, ord: ConciseOrdering) {
        if ord.x < ord.y {
            self.stored.insert((ord.x, ord.y), ord);
        } else {
            let flipped = ConciseOrdering {
                x: ord.y,
                y: ord.x,
                f: ord.g.iter().map(|v| -v).collect(),
                g: ord.f.iter().map(|v| -v).collect(),
                f_image: ord.g_image.iter().rev().map(|v| -v).collect(),
                g_image: ord.f_image.iter().rev().map(|v| -v).collect(),
            };
            self.stored.insert((flipped.x, flipped.y), flipped);
        }
    }

    /// Number of materialized orderings.
    pub fn stored_len(&self) -> usize {
        self.stored.len()
    }

    /// The ordering of `(x, y)` oriented so that `f` labels cluster `x`.
    pub fn ordering_for(&self, g: &Graph, x: usize, y: usize) -> Result<OrientedOrdering<'_>> {
        let (Some(vx), Some(vy)) = (self.clusters.get(x), self.clusters.get(y)) else {
            return Err(Error::UnknownPair(x, y));
        };
        if x == y {
            return Err(Error::UnknownPair(x, y));
        }
        if vx.len() == 1 && vy.len() == 1 {
            let f = if g.has_edge(vx[0], vy[0]) { 0 } else { 1 };
            return Ok(OrientedOrdering { f: Cow::Owned(vec![f]), g: Cow::Owned(vec![0]) });
        }
        if vx.len() == 1 || vy.len() == 1 {
            let (f, gl) = labels(g, vx, vy);
            return Ok(OrientedOrdering { f: Cow::Owned(f), g: Cow::Owned(gl) });
        }
        let key = (x.min(y), x.max(y));
        let ord = self.stored.get(&key).ok_or(Error::UnknownPair(x, y))?;
        Ok(if x < y {
            OrientedOrdering { f: Cow::Borrowed(&ord.f), g: Cow::Borrowed(&ord.g) }
        } else {
            OrientedOrdering {
                f: Cow::Owned(ord.g.iter().map(|v| -v).collect()),
                g: Cow::Owned(ord.f.iter().map(|v| -v).collect()),
            }
        })
    }
}

/// Result of [`build_table`].
#[derive(Clone, Debug)]
pub enum TableOutcome {
    Found(C4Witness),
    Table(OrderingTable),
}

/// Runs [`detect_pair`] on every unordered pair of clusters with at least two
/// vertices each, in ascending id order, stopping at the first witness.
/// Cluster ids must equal their positions in `clusters`.
pub fn build_table(g: &Graph, clusters: &[Cluster]) -> Result<TableOutcome> {
    for (i, c) in clusters.iter().enumerate() {
        if c.id != i {
            return contract(format!("cluster at position {i} has id {}", c.id));
        }
    }
    let mut table = OrderingTable::new(clusters);
    let big: Vec<&Cluster> = clusters.iter().filter(|c| c.len() >= 2).collect();
    for (i, x) in big.iter().enumerate() {
        for y in &big[i + 1..] {
            match detect_pair(g, x, y)? {
                PairOutcome::Found(w) => return Ok(TableOutcome::Found(w)),
                PairOutcome::Ordered(o) => table.insert(o),
            }
        }
    }
    Ok(TableOutcome::Table(table))
}

/// [`build_table`] over clusters already verified as disjoint cliques.
pub fn build_table_unchecked(g: &Graph, clusters: &[Cluster]) -> TableOutcome {
    let mut table = OrderingTable::new(clusters);
    let big: Vec<&Cluster> = clusters.iter().filter(|c| c.len() >= 2).collect();
    for (i, x) in big.iter().enumerate() {
        for y in &big[i + 1..] {
            match detect_pair_unchecked(g, x, y) {
                PairOutcome::Found(w) => return TableOutcome::Found(w),
                PairOutcome::Ordered(o) => table.insert(o),
            }
        }
    }
    TableOutcome::Table(table)
}

/// Checks the edge law for every pair of `X × Y`.
pub fn edge_law_holds(g: &Graph, x: &[usize], y: &[usize], ord: &OrientedOrdering<'_>) -> bool {
    x.iter().enumerate().all(|(i, &u)| {
        y.iter()
            .enumerate()
            .all(|(j, &v)| g.has_edge(u, v) == ord.adjacent(i, j))
    })
}

/// Checks conciseness: vertices with different labels have different
/// neighborhoods in the other cluster.
pub fn is_concise(g: &Graph, x: &[usize], y: &[usize], ord: &OrientedOrdering<'_>) -> bool {
    let nbhd = |u: usize, other: &[usize]| -> Vec<bool> { other.iter().map(|&v| g.has_edge(u, v)).collect() };
    let side = |verts: &[usize], labels: &[i64], other: &[usize]| {
        let mut by_label: HashMap<Vec<bool>, i64> = HashMap::new();
        verts.iter().zip(labels).all(|(&u, &l)| *by_label.entry(nbhd(u, other)).or_insert(l) == l)
    };
    side(x, &ord.f, y) && side(y, &ord.g, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::{oracle_detect, verify_witness, GraphSpec};

    fn two_cliques(a: usize, b: usize, cross: &[(usize, usize)]) -> (Graph, Cluster, Cluster) {
        let mut g = Graph::new(a + b);
        for i in 0..a {
            for j in i + 1..a {
                g.add_edge(i, j);
            }
        }
        for i in 0..b {
            for j in i + 1..b {
                g.add_edge(a + i, a + j);
            }
        }
        for &(i, j) in cross {
            g.add_edge(i, a + j);
        }
        (g, Cluster::new(0, 0, (0..a).collect()), Cluster::new(1, 0, (a..a + b).collect()))
    }

    #[test]
    fn crossing_matching_is_found() {
        let (g, a, b) = two_cliques(2, 2, &[(0, 0), (1, 1)]);
        match detect_pair(&g, &a, &b).unwrap() {
            PairOutcome::Found(w) => {
                assert!(verify_witness(&g, &w));
                assert_eq!(w, C4Witness::new(0, 1, 3, 2).canonical());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn complete_join_is_ordered() {
        let cross: Vec<_> = (0..3).flat_map(|i| (0..4).map(move |j| (i, j))).collect();
        let (g, a, b) = two_cliques(3, 4, &cross);
        let PairOutcome::Ordered(o) = detect_pair(&g, &a, &b).unwrap() else { panic!() };
        assert!(o.f.iter().all(|&f| o.g.iter().all(|&gv| f <= gv)));
    }

    #[test]
    fn nested_example_labels() {
        // N_A(b1) = {a1}, N_A(b2) = {a1, a2}, |A| = 3.
        let (g, a, b) = two_cliques(3, 2, &[(0, 0), (0, 1), (1, 1)]);
        let PairOutcome::Ordered(o) = detect_pair(&g, &a, &b).unwrap() else { panic!() };
        assert_eq!(o.g, vec![1, 2]);
        assert_eq!(o.f, vec![1, 2, 4]);
        assert_eq!(o.f_image, vec![1, 2, 4]);
        let view = OrientedOrdering { f: Cow::Borrowed(&o.f), g: Cow::Borrowed(&o.g) };
        assert!(edge_law_holds(&g, &a.vertices, &b.vertices, &view));
        assert!(is_concise(&g, &a.vertices, &b.vertices, &view));
    }

    #[test]
    fn contract_errors() {
        let g = Graph::cycle(4);
        let a = Cluster::new(0, 0, vec![0, 2]);
        let b = Cluster::new(1, 0, vec![1]);
        assert!(matches!(detect_pair(&g, &a, &b), Err(Error::Contract(_))));
        let a = Cluster::new(0, 0, vec![0, 1]);
        let b = Cluster::new(1, 0, vec![1, 2]);
        assert!(matches!(detect_pair(&g, &a, &b), Err(Error::Contract(_))));
    }

    #[test]
    fn random_pairs_match_oracle() {
        for seed in 0..300u64 {
            let plant = seed % 3 == 0;
            let spec: GraphSpec = format!("nested-pair:a={},b={},seed={seed},plant={}", 2 + seed % 5, 2 + seed % 7, u8::from(plant))
                .parse()
                .unwrap();
            let mut g = spec.generate().unwrap().graph;
            // Random extra flips across the pair make some instances positive.
            let a_len = 2 + seed as usize % 5;
            if seed % 5 == 1 {
                let (x, y) = (seed as usize % a_len, a_len + (seed as usize / 3) % (g.n() - a_len));
                let present = g.has_edge(x, y);
                g.set_edge(x, y, !present);
            }
            let a = Cluster::new(0, 0, (0..a_len).collect());
            let b = Cluster::new(1, 0, (a_len..g.n()).collect());
            let expect = oracle_detect(&g).is_some();
            match detect_pair(&g, &a, &b).unwrap() {
                PairOutcome::Found(w) => {
                    assert!(expect);
                    assert!(verify_witness(&g, &w));
                }
                PairOutcome::Ordered(o) => {
                    assert!(!expect, "seed {seed}");
                    let view = OrientedOrdering { f: Cow::Borrowed(&o.f), g: Cow::Borrowed(&o.g) };
                    assert!(edge_law_holds(&g, &a.vertices, &b.vertices, &view));
                    assert!(is_concise(&g, &a.vertices, &b.vertices, &view));
                    assert!(o.f.iter().chain(&o.g).all(|&v| (0..=a_len as i64 + 1).contains(&v)));
                }
            }
        }
    }

    #[test]
    fn table_orients_and_synthesizes() {
        // Clusters: {0,1}, {2,3}, {4}, {5}; edges make every pair ordered.
        let mut g = Graph::from_edges(6, &[(0, 1), (2, 3), (0, 2), (0, 3), (1, 3), (4, 0), (4, 5), (5, 2)]);
        g.add_edge(1, 2);
        g.remove_edge(1, 2);
        let clusters = vec![
            Cluster::new(0, 1, vec![0, 1]),
            Cluster::new(1, 1, vec![2, 3]),
            Cluster::new(2, 2, vec![4]),
            Cluster::new(3, 2, vec![5]),
        ];
        let mut t = OrderingTable::new(&clusters);
        let PairOutcome::Ordered(o) = detect_pair(&g, &clusters[1], &clusters[0]).unwrap() else { panic!() };
        t.insert(o);
        for (x, y) in [(0, 1), (1, 0), (0, 2), (2, 0), (2, 3), (3, 2), (1, 3)] {
            let ord = t.ordering_for(&g, x, y).unwrap();
            assert!(edge_law_holds(&g, &clusters[x].vertices, &clusters[y].vertices, &ord), "{x} {y}");
            assert!(is_concise(&g, &clusters[x].vertices, &clusters[y].vertices, &ord));
        }
        let edge = t.ordering_for(&g, 2, 3).unwrap();
        assert_eq!((edge.f[0], edge.g[0]), (0, 0));
        g.remove_edge(4, 5);
        let non = t.ordering_for(&g, 2, 3).unwrap();
        assert_eq!((non.f[0], non.g[0]), (1, 0));
        assert!(matches!(t.ordering_for(&g, 0, 0), Err(Error::UnknownPair(0, 0))));
        assert!(matches!(t.ordering_for(&g, 0, 9), Err(Error::UnknownPair(0, 9))));
    }
}
