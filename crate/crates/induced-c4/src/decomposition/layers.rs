//! Layered decomposition: level `L` from the low-level decomposition, levels
//! `L+1 .. H-1` from large common neighborhoods, level `H` from singletons.

use super::low::{decompose_low, split_clique, LowOutcome, TableParts};
use super::{level_bounds, level_scale, DecompConfig};
use crate::error::{contract, Result};
use crate::graph_core::{bits, C4Witness, Graph};
use crate::orderings::Cluster;
use std::fmt::Write as _;

/// Result of [`decompose_layers`].
#[derive(Clone, Debug)]
pub enum Decomposition {
    Found(C4Witness),
    Layers(LayeredDecomposition),
}

/// Levels of verified cliques plus the tables `N_ℓ(x, y)` for `ℓ > L`.
///
/// Clusters are numbered by position and sorted by level. Each stored
/// non-edge owns a run of common neighbors at levels above `L`, sorted by
/// cluster id and then vertex id, so the members at one level form a
/// contiguous sub-run.
#[derive(Clone, Debug)]
pub struct LayeredDecomposition {
    n: usize,
    low: usize,
    high: usize,
    delta: f64,
    remainder_edges: usize,
    clusters: Vec<Cluster>,
    level_start: Vec<usize>,
    cluster_of: Vec<u32>,
    level_of: Vec<u8>,
    slot_of: Vec<u32>,
    pairs: Vec<(u32, u32)>,
    runs: Vec<(usize, u32)>,
    entries: Vec<u32>,
}

#[inline]
fn tri(x: usize, y: usize) -> usize {
    let (a, b) = if x < y { (x, y) } else { (y, x) };
    b * (b - 1) / 2 + a
}

/// Runs the layered decomposition with `L = ⌊H / 2⌋` and `H = ⌊log2 n⌋`.
pub fn decompose_layers(g: &Graph, cfg: &DecompConfig) -> Decomposition {
    let n = g.n();
    let (low, high) = level_bounds(n);
    let delta = level_scale(n, low);
    if n == 0 {
        return Decomposition::Layers(LayeredDecomposition::assemble(n, low, high, delta, 0, Vec::new(), empty_parts()));
    }
    let lowd = match decompose_low(g, delta, cfg) {
        LowOutcome::Found(w) => return Decomposition::Found(w),
        LowOutcome::Decomposed(d) => d,
    };
    let mut table = lowd.table;
    let mut levels: Vec<(usize, Vec<usize>)> = lowd.cliques.into_iter().map(|c| (low, c)).collect();
    for level in low + 1..high {
        let scale = level_scale(n, level);
        match table.extract_above(g, scale) {
            Err(w) => return Decomposition::Found(w),
            Ok(found) => {
                for c in found {
                    levels.extend(split_clique(c, scale, cfg.hi).into_iter().map(|p| (level, p)));
                }
            }
        }
    }
    levels.extend(table.remainder().into_iter().map(|v| (high, vec![v])));
    Decomposition::Layers(LayeredDecomposition::assemble(
        n,
        low,
        high,
        delta,
        lowd.large_remainder_edges,
        levels,
        table.into_parts(),
    ))
}

fn empty_parts() -> TableParts {
    TableParts { slot_of: Vec::new(), pairs: Vec::new(), runs: Vec::new(), entries: Vec::new() }
}

impl LayeredDecomposition {
    fn assemble(
        n: usize,
        low: usize,
        high: usize,
        delta: f64,
        remainder_edges: usize,
        mut levels: Vec<(usize, Vec<usize>)>,
        parts: TableParts,
    ) -> Self {
        levels.sort_by_key(|(l, _)| *l);
        let mut level_start = vec![0usize; high - low + 2];
        let mut cluster_of = vec![u32::MAX; n];
        let mut level_of = vec![u8::MAX; n];
        let clusters: Vec<Cluster> = levels
            .into_iter()
            .enumerate()
            .map(|(id, (level, verts))| {
                level_start[level - low + 1] += 1;
                for &v in &verts {
                    cluster_of[v] = id as u32;
                    level_of[v] = level as u8;
                }
                Cluster::new(id, level, verts)
            })
            .collect();
        for i in 1..level_start.len() {
            level_start[i] += level_start[i - 1];
        }
        let mut entries = Vec::new();
        let mut runs = Vec::with_capacity(parts.runs.len());
        let mut buf: Vec<u32> = Vec::new();
        for &(start, len) in &parts.runs {
            buf.clear();
            buf.extend(
                parts.entries[start..start + len as usize]
                    .iter()
                    .copied()
                    .filter(|&z| level_of[z as usize] as usize > low),
            );
            buf.sort_unstable_by_key(|&z| (cluster_of[z as usize], z));
            runs.push((entries.len(), buf.len() as u32));
            entries.extend_from_slice(&buf);
        }
        Self {
            n,
            low,
            high,
            delta,
            remainder_edges,
            clusters,
            level_start,
            cluster_of,
            level_of,
            slot_of: parts.slot_of,
            pairs: parts.pairs,
            runs,
            entries,
        }
    }

    /// Builds a decomposition from explicit `(level, vertices)` clusters,
    /// computing every table entry from the bitsets. The clusters must
    /// partition the vertex set, and levels must lie in `[L, H]` for the
    /// graph's size; clique and band conditions are not checked here.
    pub fn from_levels(g: &Graph, levels: Vec<(usize, Vec<usize>)>) -> Result<Self> {
        let n = g.n();
        let (low, high) = level_bounds(n);
        let mut seen = vec![false; n];
        for (level, verts) in &levels {
            if *level < low || *level > high {
                return contract(format!("level {level} outside [{low}, {high}]"));
            }
            for &v in verts {
                if v >= n || std::mem::replace(&mut seen[v], true) {
                    return contract(format!("vertex {v} is out of range or repeated"));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return contract(format!("vertex {v} is not covered"));
        }
        let mut parts = empty_parts();
        if n >= 2 {
            parts.slot_of = vec![0; n * (n - 1) / 2];
        }
        let mut above = vec![0u64; g.words()];
        for (level, verts) in &levels {
            if *level > low {
                for &v in verts {
                    bits::set(&mut above, v);
                }
            }
        }
        let mut common = vec![0u64; g.words()];
        for x in 0..n {
            for y in x + 1..n {
                if g.has_edge(x, y) {
                    continue;
                }
                bits::and_into(&mut common, g.row(x), g.row(y));
                let zs: Vec<u32> = bits::ones(&common)
                    .filter(|&z| bits::test(&above, z))
                    .map(|z| z as u32)
                    .collect();
                if zs.is_empty() {
                    continue;
                }
                parts.runs.push((parts.entries.len(), zs.len() as u32));
                parts.entries.extend(zs);
                parts.pairs.push((x as u32, y as u32));
                parts.slot_of[tri(x, y)] = parts.pairs.len() as u32;
            }
        }
        Ok(Self::assemble(n, low, high, level_scale(n, low), 0, levels, parts))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Lowest level `L`.
    pub fn low(&self) -> usize {
        self.low
    }

    /// Highest level `H`.
    pub fn high(&self) -> usize {
        self.high
    }

    /// Threshold `n / 2^L` used by the low-level decomposition.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Edge count of the remainder left by the large-cluster step.
    pub fn remainder_edges(&self) -> usize {
        self.remainder_edges
    }

    /// All clusters, ordered by level; `clusters()[i].id == i`.
    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    /// Clusters of one level (empty outside `[L, H]`).
    pub fn clusters_at(&self, level: usize) -> &[Cluster] {
        if level < self.low || level > self.high {
            return &[];
        }
        let i = level - self.low;
        &self.clusters[self.level_start[i]..self.level_start[i + 1]]
    }

    /// Id of the cluster containing `v`.
    pub fn cluster_of(&self, v: usize) -> usize {
        self.cluster_of[v] as usize
    }

    /// Level of the cluster containing `v`.
    pub fn level_of(&self, v: usize) -> usize {
        self.level_of[v] as usize
    }

    fn run(&self, x: usize, y: usize) -> &[u32] {
        if x == y || x >= self.n || y >= self.n {
            return &[];
        }
        match self.slot_of[tri(x, y)] {
            0 => &[],
            s => {
                let (start, len) = self.runs[s as usize - 1];
                &self.entries[start..start + len as usize]
            }
        }
    }

    fn level_slice<'a>(&self, run: &'a [u32], level: usize) -> &'a [u32] {
        let a = run.partition_point(|&z| (self.level_of[z as usize] as usize) < level);
        let b = run.partition_point(|&z| (self.level_of[z as usize] as usize) <= level);
        &run[a..b]
    }

    /// `N_ℓ(x, y)` for a non-edge and `ℓ > L`, sorted by cluster then id;
    /// empty for edges, for `ℓ <= L`, and when nothing is stored.
    pub fn common(&self, x: usize, y: usize, level: usize) -> &[u32] {
        if level <= self.low {
            return &[];
        }
        self.level_slice(self.run(x, y), level)
    }

    /// Every stored non-edge `(x, y)` with `x < y` and its common neighbors
    /// at all levels above `L`.
    pub fn stored(&self) -> impl Iterator<Item = (usize, usize, &[u32])> + '_ {
        self.pairs.iter().zip(&self.runs).map(|(&(x, y), &(start, len))| {
            (x as usize, y as usize, &self.entries[start..start + len as usize])
        })
    }

    /// Number of stored non-edges.
    pub fn stored_len(&self) -> usize {
        self.pairs.len()
    }

    /// The `i`-th stored non-edge, as yielded by [`stored`](Self::stored).
    pub fn stored_pair(&self, i: usize) -> (usize, usize, &[u32]) {
        let (x, y) = self.pairs[i];
        let (start, len) = self.runs[i];
        (x as usize, y as usize, &self.entries[start..start + len as usize])
    }

    /// Splits a run returned by [`stored`](Self::stored) at one level.
    pub fn at_level<'a>(&self, run: &'a [u32], level: usize) -> &'a [u32] {
        self.level_slice(run, level)
    }

    /// Splits a run returned by [`stored`](Self::stored) at one cluster.
    pub fn in_cluster<'a>(&self, run: &'a [u32], cluster: usize) -> &'a [u32] {
        let a = run.partition_point(|&z| (self.cluster_of[z as usize] as usize) < cluster);
        let b = run.partition_point(|&z| (self.cluster_of[z as usize] as usize) <= cluster);
        &run[a..b]
    }

    /// Lists every violated invariant: partition, clique, size band, sparsity
    /// of the remainder, and the bound on common neighborhoods.
    pub fn check_invariants(&self, g: &Graph, cfg: &DecompConfig) -> Vec<String> {
        let mut out = Vec::new();
        let mut owner = vec![usize::MAX; self.n];
        for (i, c) in self.clusters.iter().enumerate() {
            if c.id != i {
                out.push(format!("cluster at {i} has id {}", c.id));
            }
            if c.level < self.low || c.level > self.high {
                out.push(format!("cluster {i} has level {} outside [{}, {}]", c.level, self.low, self.high));
                continue;
            }
            for &v in &c.vertices {
                if owner[v] != usize::MAX {
                    out.push(format!("vertex {v} is in clusters {} and {i}", owner[v]));
                }
                owner[v] = i;
            }
            if !g.is_clique(&c.vertices) {
                out.push(format!("cluster {i} is not a clique"));
            }
            let scale = level_scale(self.n, c.level);
            let s = c.len() as f64;
            if !(cfg.lo * scale < s && s <= cfg.hi * scale) {
                out.push(format!("cluster {i} at level {} has size {} outside the band", c.level, c.len()));
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            out.push(format!("vertex {v} is not in any cluster"));
        }
        let bound = cfg.c_sparse * (self.n as f64).powf(1.5) * self.delta.sqrt();
        if self.remainder_edges as f64 > bound {
            out.push(format!("remainder has {} edges, bound {bound}", self.remainder_edges));
        }
        for (x, y, run) in self.stored() {
            for level in self.low + 1..=self.high {
                let k = self.level_slice(run, level).len() as f64;
                if k > cfg.c_nbr * level_scale(self.n, level) {
                    out.push(format!("N_{level}({x}, {y}) has {k} members"));
                }
            }
        }
        out
    }

    /// Lists every table entry that differs from the common neighborhood
    /// computed from the bitsets.
    pub fn check_table_exact(&self, g: &Graph) -> Vec<String> {
        let mut out = Vec::new();
        let mut masks = vec![vec![0u64; g.words()]; self.high - self.low + 1];
        for v in 0..self.n {
            bits::set(&mut masks[self.level_of(v) - self.low], v);
        }
        let mut common = vec![0u64; g.words()];
        for x in 0..self.n {
            for y in x + 1..self.n {
                if g.has_edge(x, y) {
                    if !self.run(x, y).is_empty() {
                        out.push(format!("edge ({x}, {y}) has a table entry"));
                    }
                    continue;
                }
                bits::and_into(&mut common, g.row(x), g.row(y));
                for level in self.low + 1..=self.high {
                    let mut expect: Vec<u32> = bits::ones(&common)
                        .filter(|&z| bits::test(&masks[level - self.low], z))
                        .map(|z| z as u32)
                        .collect();
                    let mut got = self.common(x, y, level).to_vec();
                    expect.sort_unstable();
                    got.sort_unstable();
                    if got != expect {
                        out.push(format!("N_{level}({x}, {y}) = {got:?}, expected {expect:?}"));
                    }
                }
            }
        }
        out
    }

    /// Text report: a header line, then one line per level.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "decomposition n={} L={} H={} delta={} remainder_edges={} stored_pairs={}",
            self.n,
            self.low,
            self.high,
            self.delta,
            self.remainder_edges,
            self.pairs.len()
        );
        for level in self.low..=self.high {
            let cs = self.clusters_at(level);
            let sizes = cs.iter().map(Cluster::len);
            let max_common = if level > self.low {
                self.stored().map(|(_, _, r)| self.level_slice(r, level).len()).max().unwrap_or(0).to_string()
            } else {
                "-".to_string()
            };
            let _ = writeln!(
                s,
                "level={level} clusters={} vertices={} min_size={} max_size={} max_common={max_common}",
                cs.len(),
                sizes.clone().sum::<usize>(),
                sizes.clone().min().unwrap_or(0),
                sizes.max().unwrap_or(0),
            );
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::{oracle_detect, verify_witness, GraphSpec};

    fn gen(s: &str) -> Graph {
        s.parse::<GraphSpec>().unwrap().generate().unwrap().graph
    }

    fn layers(g: &Graph, cfg: &DecompConfig) -> Option<LayeredDecomposition> {
        match decompose_layers(g, cfg) {
            Decomposition::Found(w) => {
                assert!(verify_witness(g, &w));
                None
            }
            Decomposition::Layers(d) => Some(d),
        }
    }

    fn assert_valid(g: &Graph, d: &LayeredDecomposition, cfg: &DecompConfig) {
        assert_eq!(d.check_invariants(g, cfg), Vec::<String>::new());
        assert_eq!(d.check_table_exact(g), Vec::<String>::new());
    }

    #[test]
    fn edgeless_graph_is_all_top_level_singletons() {
        let g = Graph::new(100);
        let d = layers(&g, &DecompConfig::default()).unwrap();
        assert_eq!((d.low(), d.high()), (3, 6));
        assert_eq!(d.clusters_at(6).len(), 100);
        assert!(d.clusters().iter().all(|c| c.len() == 1 && c.level == 6));
        assert_eq!(d.stored().count(), 0);
        assert_valid(&g, &d, &DecompConfig::default());
    }

    #[test]
    fn complete_graph_without_non_edges_stays_in_singletons() {
        // K_128 has 8128 edges, below 4 * 128^{3/2} * 16^{1/2}, and no
        // non-edge to expose a common neighborhood.
        let g = Graph::complete(128);
        let cfg = DecompConfig::default();
        let d = layers(&g, &cfg).unwrap();
        assert_valid(&g, &d, &cfg);
        assert_eq!(d.clusters_at(d.high()).len(), 128);
    }

    #[test]
    fn lower_sparsity_constant_extracts_band_cliques_from_a_complete_graph() {
        let g = Graph::complete(128);
        let cfg = DecompConfig { c_sparse: 1.2, ..DecompConfig::default() };
        let d = layers(&g, &cfg).unwrap();
        assert_valid(&g, &d, &cfg);
        assert!(!d.clusters_at(d.low()).is_empty(), "{}", d.dump());
    }

    #[test]
    fn blowups_of_c4_free_graphs_decompose() {
        for (q, w) in [(5, 8), (7, 6), (3, 24)] {
            let g = gen(&format!("polarity-blowup:q={q},w={w}"));
            assert!(oracle_detect(&g).is_none());
            let cfg = DecompConfig::default();
            let d = layers(&g, &cfg).expect("C4-free graph reported a witness");
            assert_valid(&g, &d, &cfg);
        }
    }

    #[test]
    fn random_dense_graph_finds_a_cycle() {
        let g = gen("gnp:n=256,p=0.5,seed=3");
        assert!(layers(&g, &DecompConfig::default()).is_none());
        assert!(oracle_detect(&g).is_some());
    }

    #[test]
    fn random_graphs_are_sound_or_valid() {
        let cfg = DecompConfig::default();
        let mut valid = 0;
        for (i, p) in ["0.02", "0.05", "0.1", "0.5"].iter().cycle().take(24).enumerate() {
            let g = gen(&format!("gnp:n=96,p={p},seed={i}"));
            match layers(&g, &cfg) {
                None => assert!(oracle_detect(&g).is_some()),
                Some(d) => {
                    assert_valid(&g, &d, &cfg);
                    valid += 1;
                }
            }
        }
        assert!(valid > 0);
    }

    #[test]
    fn middle_levels_receive_clusters() {
        // Ten disjoint K_12, each fully joined to its own non-adjacent pair
        // (a, b). N(a, b) is the clique: below delta = 17.5 but above
        // n / 2^4 = 8.75, so every clique lands in level 4.
        let mut g = Graph::new(140);
        for c in 0..10 {
            let base = c * 14;
            for i in 0..12 {
                for j in i + 1..12 {
                    g.add_edge(base + i, base + j);
                }
                g.add_edge(base + 12, base + i);
                g.add_edge(base + 13, base + i);
            }
        }
        assert!(oracle_detect(&g).is_none());
        let cfg = DecompConfig::default();
        let d = layers(&g, &cfg).unwrap();
        assert_valid(&g, &d, &cfg);
        assert_eq!((d.low(), d.high()), (3, 7));
        assert_eq!(d.clusters_at(4).len(), 10, "{}", d.dump());
        assert_eq!(d.clusters_at(7).len(), 20);
    }

    #[test]
    fn explicit_levels_match_the_bitsets() {
        let g = gen("gnp:n=40,p=0.3,seed=9");
        let levels: Vec<(usize, Vec<usize>)> = (0..40).map(|v| (5, vec![v])).collect();
        let d = LayeredDecomposition::from_levels(&g, levels).unwrap();
        assert!(d.check_table_exact(&g).is_empty());
        assert!(LayeredDecomposition::from_levels(&g, vec![(5, vec![0])]).is_err());
    }

    #[test]
    fn dump_lists_every_level() {
        let g = gen("polarity-blowup:q=5,w=4");
        let d = layers(&g, &DecompConfig::default()).unwrap();
        let text = d.dump();
        assert!(text.starts_with("decomposition n=124 L=3 H=6"));
        assert_eq!(text.lines().count(), 1 + d.high() - d.low() + 1);
    }
}
