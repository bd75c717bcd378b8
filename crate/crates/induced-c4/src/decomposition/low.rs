//! Large-cluster decomposition and the low-level decomposition with its
//! table of common neighborhoods inside the remainder.

use super::extract::{extract_clique, Extraction};
use super::DecompConfig;
use crate::graph_core::{bits, C4Witness, Graph};
use crate::orderings::{detect_pair_unchecked, Cluster, PairOutcome};
use std::collections::BinaryHeap;

/// Splits a clique larger than `hi * delta` into `ceil(len / (hi * delta))`
/// contiguous pieces of near-equal size; smaller cliques pass through.
pub fn split_clique(mut clique: Vec<usize>, delta: f64, hi: f64) -> Vec<Vec<usize>> {
    clique.sort_unstable();
    let cap = hi * delta;
    if clique.len() as f64 <= cap {
        return vec![clique];
    }
    let k = (clique.len() as f64 / cap).ceil() as usize;
    let (base, extra) = (clique.len() / k, clique.len() % k);
    let mut out = Vec::with_capacity(k);
    let mut start = 0;
    for i in 0..k {
        let len = base + usize::from(i < extra);
        out.push(clique[start..start + len].to_vec());
        start += len;
    }
    out
}

/// Result of [`decompose_large`].
#[derive(Clone, Debug)]
pub enum LargeOutcome {
    Found(C4Witness),
    Split {
        /// Disjoint verified cliques, each split to at most `hi * delta`.
        cliques: Vec<Vec<usize>>,
        /// Sorted vertices outside every clique.
        remainder: Vec<usize>,
        /// Edge count of `G[remainder]`.
        remainder_edges: usize,
    },
}

/// Extracts cliques while `G[R]` has at least `c_sparse * n^{3/2} * delta^{1/2}`
/// edges.
pub fn decompose_large(g: &Graph, delta: f64, cfg: &DecompConfig) -> LargeOutcome {
    let n = g.n();
    let bound = cfg.c_sparse * (n as f64).powf(1.5) * delta.sqrt();
    let mut mask = bits::from_ids(n, 0..n);
    let mut cliques = Vec::new();
    loop {
        let r: Vec<usize> = bits::ones(&mask).collect();
        let edges = r.iter().map(|&v| bits::and_count(g.row(v), &mask)).sum::<usize>() / 2;
        if (edges as f64) < bound || r.is_empty() {
            return LargeOutcome::Split { cliques, remainder: r, remainder_edges: edges };
        }
        match extract_clique(g, &r, cfg) {
            Extraction::Found(w) => return LargeOutcome::Found(w),
            Extraction::Clique(x) => {
                for &v in &x {
                    bits::clear(&mut mask, v);
                }
                cliques.extend(split_clique(x, delta, cfg.hi));
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Slot {
    x: u32,
    y: u32,
    start: usize,
    len: u32,
    live: u32,
}

/// Common neighborhoods `N_R(x, y)` for non-edges, kept current while
/// vertices leave `R`.
///
/// Each stored pair owns a contiguous run of `entries` holding the members of
/// `R` at the time the pair was computed; members that have since left `R`
/// are filtered on read, and `live` counts the ones still present. Removing
/// `z` decrements `live` of every stored pair inside `N(z) x N(z)`, which are
/// exactly the pairs whose runs contain `z`.
#[derive(Clone, Debug)]
pub struct NeighborhoodTable {
    n: usize,
    slot_of: Vec<u32>,
    slots: Vec<Slot>,
    entries: Vec<u32>,
    in_r: Vec<u64>,
}

#[inline]
fn tri(x: usize, y: usize) -> usize {
    let (a, b) = if x < y { (x, y) } else { (y, x) };
    b * (b - 1) / 2 + a
}

impl NeighborhoodTable {
    fn new(n: usize, r: &[usize]) -> Self {
        Self {
            n,
            slot_of: vec![0; n * n.saturating_sub(1) / 2],
            slots: Vec::new(),
            entries: Vec::new(),
            in_r: bits::from_ids(n, r.iter().copied()),
        }
    }

    /// Whether `v` is still in the remainder.
    pub fn in_remainder(&self, v: usize) -> bool {
        bits::test(&self.in_r, v)
    }

    /// Sorted vertices still in the remainder.
    pub fn remainder(&self) -> Vec<usize> {
        bits::ones(&self.in_r).collect()
    }

    fn slot(&self, x: usize, y: usize) -> Option<usize> {
        if x == y || x >= self.n || y >= self.n {
            return None;
        }
        match self.slot_of[tri(x, y)] {
            0 => None,
            s => Some(s as usize - 1),
        }
    }

    /// Number of stored pairs.
    pub fn stored_pairs(&self) -> usize {
        self.slots.len()
    }

    /// `|N_R(x, y)|` for the current remainder (0 for pairs never stored).
    pub fn live_len(&self, x: usize, y: usize) -> usize {
        self.slot(x, y).map_or(0, |s| self.slots[s].live as usize)
    }

    /// `N_R(x, y)` for the current remainder, ascending.
    pub fn common(&self, x: usize, y: usize) -> Vec<usize> {
        self.slot(x, y).map_or_else(Vec::new, |s| self.slot_members(s))
    }

    fn slot_members(&self, s: usize) -> Vec<usize> {
        let sl = self.slots[s];
        self.entries[sl.start..sl.start + sl.len as usize]
            .iter()
            .map(|&z| z as usize)
            .filter(|&z| self.in_remainder(z))
            .collect()
    }

    /// Largest live size over all stored pairs.
    pub fn max_live(&self) -> usize {
        self.slots.iter().map(|s| s.live as usize).max().unwrap_or(0)
    }

    /// Every stored pair `(x, y)` with `x < y`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.slots.iter().map(|s| (s.x as usize, s.y as usize))
    }

    fn reserve(&mut self, x: usize, y: usize, len: u32) -> usize {
        let start = self.entries.len();
        self.entries.resize(start + len as usize, 0);
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        self.slots.push(Slot { x: a as u32, y: b as u32, start, len, live: len });
        self.slot_of[tri(x, y)] = self.slots.len() as u32;
        start
    }

    fn remove(&mut self, g: &Graph, z: usize) {
        bits::clear(&mut self.in_r, z);
        let nbrs: Vec<usize> = g.neighbors(z).collect();
        for (i, &u) in nbrs.iter().enumerate() {
            let row = g.row(u);
            for &v in &nbrs[i + 1..] {
                if !bits::test(row, v) {
                    if let Some(s) = self.slot(u, v) {
                        self.slots[s].live -= 1;
                    }
                }
            }
        }
    }

    /// Tests `N_R(x, y)` for being a clique; removes it from `R` if so.
    fn extract(&mut self, g: &Graph, x: usize, y: usize, z: Vec<usize>) -> Result<Vec<usize>, C4Witness> {
        if let Some((u, v)) = g.first_non_adjacent_pair(&z) {
            return Err(C4Witness::new(x, u, y, v).canonical());
        }
        for &v in &z {
            self.remove(g, v);
        }
        Ok(z)
    }

    pub(crate) fn into_parts(self) -> TableParts {
        TableParts {
            slot_of: self.slot_of,
            pairs: self.slots.iter().map(|s| (s.x, s.y)).collect(),
            runs: self.slots.iter().map(|s| (s.start, s.len)).collect(),
            entries: self.entries,
        }
    }

    /// Removes every stored common neighborhood with more than `threshold`
    /// live members, in storage order, returning the extracted cliques.
    pub(crate) fn extract_above(&mut self, g: &Graph, threshold: f64) -> Result<Vec<Vec<usize>>, C4Witness> {
        let mut out = Vec::new();
        for s in 0..self.slots.len() {
            if self.slots[s].live as f64 > threshold {
                let (x, y) = (self.slots[s].x as usize, self.slots[s].y as usize);
                let z = self.slot_members(s);
                out.push(self.extract(g, x, y, z)?);
            }
        }
        Ok(out)
    }
}

/// Raw storage handed over to the layered decomposition.
pub(crate) struct TableParts {
    pub slot_of: Vec<u32>,
    pub pairs: Vec<(u32, u32)>,
    pub runs: Vec<(usize, u32)>,
    pub entries: Vec<u32>,
}

/// Output of [`decompose_low`].
#[derive(Clone, Debug)]
pub struct LowDecomposition {
    /// Verified cliques: those of the large-cluster step first, then the ones
    /// extracted from large common neighborhoods, all split to the band.
    pub cliques: Vec<Vec<usize>>,
    /// Edge count of the remainder left by the large-cluster step.
    pub large_remainder_edges: usize,
    /// Table over the final remainder.
    pub table: NeighborhoodTable,
}

/// Result of [`decompose_low`].
#[derive(Clone, Debug)]
pub enum LowOutcome {
    Found(C4Witness),
    Decomposed(LowDecomposition),
}

/// Low-level decomposition with threshold `delta`: afterwards every non-edge
/// has fewer than `delta` common neighbors in the remainder.
///
/// Common neighborhoods of pairs with an endpoint in the initial remainder
/// are computed row by row from 2-paths `x - z - y` with `z` in `R`; any pair
/// reaching `delta` is extracted at once and the row recomputed. Pairs across
/// two large clusters `X, Y` use the ordering of `(X, Y)` to enumerate only
/// induced 2-paths.
pub fn decompose_low(g: &Graph, delta: f64, cfg: &DecompConfig) -> LowOutcome {
    let n = g.n();
    let (large, remainder, large_remainder_edges) = match decompose_large(g, delta, cfg) {
        LargeOutcome::Found(w) => return LowOutcome::Found(w),
        LargeOutcome::Split { cliques, remainder, remainder_edges } => (cliques, remainder, remainder_edges),
    };
    let r_init = bits::from_ids(n, remainder.iter().copied());
    let mut table = NeighborhoodTable::new(n, &remainder);
    let mut extracted: Vec<Vec<usize>> = Vec::new();
    let words = g.words();

    let mut counts = vec![0u32; n];
    let mut offset = vec![0usize; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut elig = vec![0u64; words];
    let mut mids = vec![0u64; words];
    for &x in &remainder {
        // Partners y: non-neighbors other than x, outside the initial
        // remainder or after x inside it.
        for w in 0..words {
            elig[w] = !g.row(x)[w] & !(r_init[w] & low_mask(w, x));
        }
        bits::clear(&mut elig, x);
        if !n.is_multiple_of(64) {
            elig[words - 1] &= (1u64 << (n % 64)) - 1;
        }
        loop {
            bits::and_into(&mut mids, g.row(x), &table.in_r);
            for z in bits::ones(&mids) {
                for_each_and(g.row(z), &elig, |y| {
                    if counts[y] == 0 {
                        touched.push(y);
                    }
                    counts[y] += 1;
                });
            }
            touched.sort_unstable();
            let heavy = touched.iter().copied().find(|&y| counts[y] as f64 >= delta);
            if let Some(y) = heavy {
                for &t in &touched {
                    counts[t] = 0;
                }
                touched.clear();
                let z = table.common_fresh(g, x, y);
                match table.extract(g, x, y, z) {
                    Ok(z) => extracted.push(z),
                    Err(w) => return LowOutcome::Found(w),
                }
                continue;
            }
            for &y in &touched {
                offset[y] = table.reserve(x, y, counts[y]);
                counts[y] = 0;
            }
            for z in bits::ones(&mids) {
                for_each_and(g.row(z), &elig, |y| {
                    table.entries[offset[y]] = z as u32;
                    offset[y] += 1;
                });
            }
            touched.clear();
            break;
        }
    }

    // Pairs across two large clusters.
    let xs: Vec<Cluster> = large.iter().enumerate().map(|(i, c)| Cluster::new(i, 0, c.clone())).collect();
    let mut by_g: Vec<Vec<(i64, u32)>> = vec![Vec::new(); n];
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let (cx, cy) = (&xs[i], &xs[j]);
            let ord = match detect_pair_unchecked(g, cx, cy) {
                PairOutcome::Found(w) => return LowOutcome::Found(w),
                PairOutcome::Ordered(o) => o,
            };
            let r_now: Vec<usize> = bits::ones(&table.in_r).collect();
            for &z in &r_now {
                let list = &mut by_g[z];
                list.clear();
                list.extend(
                    cy.vertices
                        .iter()
                        .enumerate()
                        .filter(|&(_, &y)| g.has_edge(z, y))
                        .map(|(b, _)| (ord.g[b], b as u32)),
                );
                list.sort_unstable();
            }
            let w = cy.len();
            let mut cnt = vec![0u32; cx.len() * w];
            let walk = |table: &NeighborhoodTable, a: usize, x: usize, f: &mut dyn FnMut(usize, usize)| {
                for z in g.neighbors(x).filter(|&z| table.in_remainder(z)) {
                    for &(gv, b) in by_g[z].iter().take_while(|&&(gv, _)| gv < ord.f[a]) {
                        let _ = gv;
                        f(b as usize, z);
                    }
                }
            };
            for (a, &x) in cx.vertices.iter().enumerate() {
                walk(&table, a, x, &mut |b, _| cnt[a * w + b] += 1);
            }
            let mut start = vec![usize::MAX; cx.len() * w];
            let mut heap = BinaryHeap::new();
            for (k, &c) in cnt.iter().enumerate() {
                if c > 0 {
                    let (x, y) = (cx.vertices[k / w], cy.vertices[k % w]);
                    start[k] = table.reserve(x, y, c);
                    heap.push((c, table.slots.len() - 1));
                }
            }
            for (a, &x) in cx.vertices.iter().enumerate() {
                let mut fills: Vec<(usize, usize)> = Vec::new();
                walk(&table, a, x, &mut |b, z| fills.push((a * w + b, z)));
                for (k, z) in fills {
                    table.entries[start[k]] = z as u32;
                    start[k] += 1;
                }
            }
            while let Some((live, s)) = heap.pop() {
                let cur = table.slots[s].live;
                if cur != live {
                    if cur > 0 {
                        heap.push((cur, s));
                    }
                    continue;
                }
                if (live as f64) < delta {
                    break;
                }
                let (x, y) = (table.slots[s].x as usize, table.slots[s].y as usize);
                let z = table.slot_members(s);
                match table.extract(g, x, y, z) {
                    Ok(z) => extracted.push(z),
                    Err(w) => return LowOutcome::Found(w),
                }
            }
        }
    }

    let mut cliques = large;
    for z in extracted {
        cliques.extend(split_clique(z, delta, cfg.hi));
    }
    LowOutcome::Decomposed(LowDecomposition { cliques, large_remainder_edges, table })
}

impl NeighborhoodTable {
    /// `N_R(x, y)` straight from the bitsets.
    fn common_fresh(&self, g: &Graph, x: usize, y: usize) -> Vec<usize> {
        let mut m = vec![0u64; g.words()];
        bits::and_into(&mut m, g.row(x), g.row(y));
        bits::ones(&m).filter(|&z| self.in_remainder(z)).collect()
    }
}

/// Bits of word `w` whose vertex id is at most `x`.
#[inline]
fn low_mask(w: usize, x: usize) -> u64 {
    let base = w * 64;
    if x >= base + 63 {
        u64::MAX
    } else if x < base {
        0
    } else {
        (2u64 << (x - base)).wrapping_sub(1)
    }
}

#[inline]
fn for_each_and(a: &[u64], b: &[u64], mut f: impl FnMut(usize)) {
    for (w, (&p, &q)) in a.iter().zip(b).enumerate() {
        let mut m = p & q;
        while m != 0 {
            f(w * 64 + m.trailing_zeros() as usize);
            m &= m - 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::{oracle_detect, verify_witness, GraphSpec};

    fn gen(s: &str) -> Graph {
        s.parse::<GraphSpec>().unwrap().generate().unwrap().graph
    }

    /// The table must equal `N(x) ∩ N(y) ∩ R` for every non-edge.
    fn assert_table_exact(g: &Graph, low: &LowDecomposition) {
        let r = low.table.remainder();
        for x in 0..g.n() {
            for y in x + 1..g.n() {
                if g.has_edge(x, y) {
                    continue;
                }
                let expect: Vec<usize> = r.iter().copied().filter(|&z| g.has_edge(x, z) && g.has_edge(y, z)).collect();
                assert_eq!(low.table.common(x, y), expect, "({x}, {y})");
                assert_eq!(low.table.live_len(x, y), expect.len());
            }
        }
    }

    #[test]
    fn splitting_respects_the_band() {
        assert_eq!(split_clique(vec![3, 1, 2], 2.0, 2.0), vec![vec![1, 2, 3]]);
        for len in 1..60 {
            let pieces = split_clique((0..len).collect(), 4.0, 2.0);
            assert_eq!(pieces.iter().map(Vec::len).sum::<usize>(), len);
            assert!(pieces.iter().all(|p| p.len() <= 8));
            if len > 8 {
                assert!(pieces.iter().all(|p| p.len() >= 4), "{len}");
            }
        }
    }

    #[test]
    fn edgeless_graph_is_already_sparse() {
        let g = Graph::new(30);
        let LargeOutcome::Split { cliques, remainder, remainder_edges } = decompose_large(&g, 3.0, &DecompConfig::default()) else {
            panic!()
        };
        assert!(cliques.is_empty());
        assert_eq!(remainder.len(), 30);
        assert_eq!(remainder_edges, 0);
    }

    #[test]
    fn disjoint_cliques_leave_a_sparse_remainder() {
        // 8 disjoint K_32 with delta = 32: 3968 edges, already below
        // 4 * 256^{3/2} * 32^{1/2}.
        let mut g = Graph::new(256);
        for c in 0..8 {
            for i in 0..32 {
                for j in i + 1..32 {
                    g.add_edge(c * 32 + i, c * 32 + j);
                }
            }
        }
        let cfg = DecompConfig::default();
        let delta = 32.0;
        let LargeOutcome::Split { cliques, remainder, remainder_edges } = decompose_large(&g, delta, &cfg) else {
            panic!()
        };
        assert!((remainder_edges as f64) < cfg.c_sparse * 256f64.powf(1.5) * delta.sqrt());
        assert!(cliques.is_empty());
        assert_eq!(remainder.len(), 256);
    }

    #[test]
    fn dense_input_yields_cliques_in_the_band() {
        // With c_sparse > 1 every extracted clique has at least
        // c_sparse^2 / 4 * delta vertices.
        let g = Graph::complete(200);
        let cfg = DecompConfig { c_sparse: 1.2, ..DecompConfig::default() };
        let delta = 200.0 / 8.0;
        let LargeOutcome::Split { cliques, remainder_edges, .. } = decompose_large(&g, delta, &cfg) else {
            panic!()
        };
        assert!(!cliques.is_empty());
        assert!((remainder_edges as f64) < cfg.c_sparse * 200f64.powf(1.5) * delta.sqrt());
        for c in &cliques {
            assert!(g.is_clique(c));
            let s = c.len() as f64;
            assert!(cfg.lo * delta < s && s <= cfg.hi * delta, "{s}");
        }
    }

    #[test]
    fn complete_graph_becomes_one_band_of_cliques() {
        let g = Graph::complete(64);
        let cfg = DecompConfig::default();
        let LowOutcome::Decomposed(low) = decompose_low(&g, 64.0, &cfg) else { panic!() };
        assert!(low.table.stored_pairs() == 0);
        let total: usize = low.cliques.iter().map(Vec::len).sum::<usize>() + low.table.remainder().len();
        assert_eq!(total, 64);
        assert!(low.cliques.iter().all(|c| g.is_clique(c)));
    }

    #[test]
    fn planted_non_clique_neighborhood_is_found() {
        // x = 0 and y = 1 share 12 common neighbors containing a non-edge.
        let mut g = Graph::new(40);
        for z in 2..14 {
            g.add_edge(0, z);
            g.add_edge(1, z);
        }
        for a in 2..14 {
            for b in a + 1..14 {
                if (a, b) != (2, 3) {
                    g.add_edge(a, b);
                }
            }
        }
        match decompose_low(&g, 6.0, &DecompConfig::default()) {
            LowOutcome::Found(w) => assert!(verify_witness(&g, &w)),
            LowOutcome::Decomposed(_) => panic!("missed the planted cycle"),
        }
    }

    #[test]
    fn sparse_random_graphs_keep_an_exact_table() {
        for seed in 0..20 {
            let g = gen(&format!("gnp:n=70,p=0.08,seed={seed}"));
            match decompose_low(&g, 4.0, &DecompConfig::default()) {
                LowOutcome::Found(w) => assert!(verify_witness(&g, &w)),
                LowOutcome::Decomposed(low) => {
                    assert!(low.table.max_live() < 4);
                    assert_table_exact(&g, &low);
                }
            }
        }
    }

    #[test]
    fn blowups_exercise_the_cross_cluster_pass() {
        let cfg = DecompConfig { c_sparse: 0.05, ..DecompConfig::default() };
        let mut crossed = 0;
        for (q, w) in [(3, 6), (5, 4), (5, 6), (7, 3)] {
            let g = gen(&format!("polarity-blowup:q={q},w={w}"));
            let delta = (w as f64) / 2.0;
            match decompose_low(&g, delta, &cfg) {
                LowOutcome::Found(wit) => panic!("C4-free graph reported {wit}"),
                LowOutcome::Decomposed(low) => {
                    assert!((low.table.max_live() as f64) < delta);
                    assert!(low.cliques.iter().all(|c| g.is_clique(c)));
                    assert_table_exact(&g, &low);
                    crossed += usize::from(low.cliques.len() >= 2);
                }
            }
        }
        assert!(crossed > 0);
        let _ = oracle_detect;
    }

    #[test]
    fn found_is_always_sound() {
        for seed in 0..40 {
            let g = gen(&format!("clique-blowup:n=12,p=0.4,w=5,seed={seed}"));
            let cfg = DecompConfig { c_sparse: 0.1, ..DecompConfig::default() };
            match decompose_low(&g, 3.0, &cfg) {
                LowOutcome::Found(w) => {
                    assert!(verify_witness(&g, &w));
                    assert!(oracle_detect(&g).is_some());
                }
                LowOutcome::Decomposed(low) => {
                    assert!(low.cliques.iter().all(|c| g.is_clique(c)));
                    assert_table_exact(&g, &low);
                }
            }
        }
    }
}
