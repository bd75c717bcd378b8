//! The 2-, 3- and 4-clustered phases over a layered decomposition.

use super::types::{Case3, Case4, LevelType3, LevelType4};
use crate::decomposition::LayeredDecomposition;
use crate::error::{contract, Result};
use crate::graph_core::{bits, Graph};
use crate::orderings::{build_table_unchecked, Cluster, OrderingTable, TableOutcome};
use crate::quadruples::{codegrees, detect_quadruple_screened};
use crate::triples::detect_two_in;
use std::collections::{BTreeSet, HashMap};

/// Largest number of keys materialized per chunk of the path-collection
/// join.
const JOIN_BUDGET: usize = 1 << 22;

/// Largest vertex count the packed join keys can address.
pub const MAX_JOIN_VERTICES: usize = 1 << 21;

/// Orders every pair of clusters, or returns a witness with two vertices in
/// each of two clusters.
pub fn detect_2_clustered(g: &Graph, d: &LayeredDecomposition) -> TableOutcome {
    build_table_unchecked(g, d.clusters())
}

/// Stored non-edges grouped by the levels of their endpoints.
struct Context<'a> {
    g: &'a Graph,
    d: &'a LayeredDecomposition,
    table: &'a OrderingTable,
    buckets: HashMap<(usize, usize), Vec<u32>>,
}

impl<'a> Context<'a> {
    fn new(g: &'a Graph, d: &'a LayeredDecomposition, table: &'a OrderingTable) -> Self {
        let mut buckets: HashMap<(usize, usize), Vec<u32>> = HashMap::new();
        for i in 0..d.stored_len() {
            let (x, y, run) = d.stored_pair(i);
            if !run.is_empty() {
                buckets.entry((d.level_of(x), d.level_of(y))).or_default().push(i as u32);
            }
        }
        Self { g, d, table, buckets }
    }

    /// Calls `f(a, b, slot)` for every stored non-edge with `a` at level
    /// `la` and `b` at level `lb`, stopping at the first `true`. When the
    /// levels are equal each pair is visited once per orientation if
    /// `both`, and once otherwise.
    fn oriented_slots(&self, la: usize, lb: usize, both: bool, mut f: impl FnMut(usize, usize, u32) -> bool) -> bool {
        let mut visit = |key: (usize, usize), flip: bool| {
            self.buckets.get(&key).is_some_and(|slots| {
                slots.iter().any(|&i| {
                    let (x, y, _) = self.d.stored_pair(i as usize);
                    if flip {
                        f(y, x, i)
                    } else {
                        f(x, y, i)
                    }
                })
            })
        };
        if la == lb {
            visit((la, la), false) || (both && visit((la, la), true))
        } else {
            visit((la, lb), false) || visit((lb, la), true)
        }
    }

    /// [`Self::oriented_slots`] with the common-neighborhood run in place of
    /// the slot.
    fn oriented(&self, la: usize, lb: usize, both: bool, mut f: impl FnMut(usize, usize, &'a [u32]) -> bool) -> bool {
        let d = self.d;
        self.oriented_slots(la, lb, both, |a, b, i| f(a, b, d.stored_pair(i as usize).2))
    }

    fn cluster(&self, v: usize) -> &'a Cluster {
        &self.d.clusters()[self.d.cluster_of(v)]
    }
}

/// Whether some induced 4-cycle touches exactly three clusters, assuming
/// none touches two.
pub fn detect_3_clustered(g: &Graph, d: &LayeredDecomposition, table: &OrderingTable) -> Result<bool> {
    if d.n() > MAX_JOIN_VERTICES {
        return contract(format!("{} vertices exceed the join key range", d.n()));
    }
    let cx = Context::new(g, d, table);
    for t in LevelType3::all(d.low(), d.high()) {
        if !d.clusters_at(t.0[0]).iter().any(|c| c.len() >= 2) {
            continue;
        }
        let hit = match t.case(d.n(), d.low()) {
            None => return contract(format!("3-type {t} matches no case at n = {}", d.n())),
            Some(Case3::PathCollections) => path_collections(&cx, t.0),
            Some(Case3::CommonNeighbors) => common_neighbors3(&cx, t.0),
            Some(Case3::ClusterTriples) => cluster_triples(&cx, t.0)?,
        };
        if hit {
            return Ok(true);
        }
    }
    Ok(false)
}

#[inline]
fn key(v3: usize, v2: usize, x: usize) -> u64 {
    ((v3 as u64) << 42) | ((v2 as u64) << 21) | x as u64
}

/// Cycles `(ṽ1, v1, v2, v3)` with `v2, v3` above level `L`: collects, for
/// every pair `(v2, v3)`, the clusters holding a `v1` with `v1 - v2 - v3`
/// an induced 2-path and those holding a `ṽ1` with `v2 - v3 - ṽ1` an
/// induced 2-path, and reports a cluster in both collections.
///
/// The first collection is materialized as sorted keys, in chunks of
/// clusters of `v3` holding about [`JOIN_BUDGET`] keys; the second is
/// probed against it. Non-edges are grouped by (cluster, endpoint) so that
/// twins in a cluster contribute each key once.
fn path_collections(cx: &Context<'_>, t: [usize; 3]) -> bool {
    path_collections_within(cx, t, JOIN_BUDGET)
}

fn path_collections_within(cx: &Context<'_>, [t1, t2, t3]: [usize; 3], budget: usize) -> bool {
    let d = cx.d;
    let big = |v: usize| cx.cluster(v).len() >= 2;
    const MASK: u64 = (1 << 21) - 1;
    // Non-edges (v1, v3), sorted by (cluster of v3, v3, cluster of v1).
    let mut ys_src: Vec<(u64, u32)> = Vec::new();
    cx.oriented_slots(t1, t3, true, |v1, v3, i| {
        if big(v1) && !d.at_level(d.stored_pair(i as usize).2, t2).is_empty() {
            let k = ((d.cluster_of(v3) as u64) << 42) | ((v3 as u64) << 21) | d.cluster_of(v1) as u64;
            ys_src.push((k, i));
        }
        false
    });
    if ys_src.is_empty() {
        return false;
    }
    // Non-edges (v2, ṽ1), sorted by (cluster of ṽ1, v2).
    let mut zs_src: Vec<(u64, u32)> = Vec::new();
    cx.oriented_slots(t2, t1, true, |v2, tv1, i| {
        if big(tv1) && !d.at_level(d.stored_pair(i as usize).2, t3).is_empty() {
            zs_src.push((((d.cluster_of(tv1) as u64) << 21) | v2 as u64, i));
        }
        false
    });
    if zs_src.is_empty() {
        return false;
    }
    ys_src.sort_unstable();
    zs_src.sort_unstable();
    let mut mark = vec![u64::MAX; d.n()];
    let mut stamp = 0u64;
    let mut ys: Vec<u64> = Vec::new();
    let mut start = 0;
    while start < ys_src.len() {
        ys.clear();
        let c_lo = (ys_src[start].0 >> 42) as usize;
        let mut end = start;
        while end < ys_src.len() {
            let (k, i) = ys_src[end];
            if ys.len() >= budget && (k >> 42) as usize != (ys_src[end - 1].0 >> 42) as usize {
                break;
            }
            if end == start || k != ys_src[end - 1].0 {
                stamp += 1;
            }
            let (v3, x) = ((k >> 21 & MASK) as usize, (k & MASK) as usize);
            for &v2 in d.at_level(d.stored_pair(i as usize).2, t2) {
                if mark[v2 as usize] != stamp {
                    mark[v2 as usize] = stamp;
                    ys.push(key(v3, v2 as usize, x));
                }
            }
            end += 1;
        }
        let c_hi = (ys_src[end - 1].0 >> 42) as usize + 1;
        ys.sort_unstable();
        for (k, &(group, i)) in zs_src.iter().enumerate() {
            if k == 0 || group != zs_src[k - 1].0 {
                stamp += 1;
            }
            let (x, v2) = ((group >> 21) as usize, (group & MASK) as usize);
            let at = d.at_level(d.stored_pair(i as usize).2, t3);
            let a = at.partition_point(|&z| d.cluster_of(z as usize) < c_lo);
            let b = at.partition_point(|&z| d.cluster_of(z as usize) < c_hi);
            for &v3 in &at[a..b] {
                if mark[v3 as usize] != stamp {
                    mark[v3 as usize] = stamp;
                    if ys.binary_search(&key(v3 as usize, v2, x)).is_ok() {
                        return true;
                    }
                }
            }
        }
        start = end;
    }
    false
}

/// Cycles `(ṽ1, v1, v2, v3)` with `ṽ1, v1, v3` above level `L`: for each
/// non-edge `(ṽ1, v2)`, pairs `v1` in `N_{t1}(ṽ1, v2)` inside the cluster of
/// `ṽ1` with `v3` in `N_{t3}(ṽ1, v2)`.
fn common_neighbors3(cx: &Context<'_>, [t1, t2, t3]: [usize; 3]) -> bool {
    let d = cx.d;
    cx.oriented(t1, t2, true, |tv1, _v2, run| {
        let ones = d.in_cluster(d.at_level(run, t1), d.cluster_of(tv1));
        let threes = d.at_level(run, t3);
        ones.iter().any(|&v1| {
            threes
                .iter()
                .any(|&v3| v1 != v3 && !cx.g.has_edge(v1 as usize, v3 as usize))
        })
    })
}

/// Cycles with two vertices in `X1` and one in each of `X2`, `X3`, tested on
/// every cluster triple of the type.
fn cluster_triples(cx: &Context<'_>, [t1, t2, t3]: [usize; 3]) -> Result<bool> {
    let d = cx.d;
    for x1 in d.clusters_at(t1).iter().filter(|c| c.len() >= 2) {
        for x2 in d.clusters_at(t2).iter().filter(|c| c.id != x1.id) {
            for x3 in d.clusters_at(t3) {
                if x3.id == x1.id || x3.id == x2.id || (t2 == t3 && x3.id < x2.id) {
                    continue;
                }
                if detect_two_in(cx.g, cx.table, x1, x2, x3)? {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Whether some induced 4-cycle touches four clusters, assuming none
/// touches two or three.
pub fn detect_4_clustered(g: &Graph, d: &LayeredDecomposition, table: &OrderingTable) -> Result<bool> {
    if d.clusters().len() < 4 {
        return Ok(false);
    }
    let cx = Context::new(g, d, table);
    let mut quadruple_sets: BTreeSet<[usize; 4]> = BTreeSet::new();
    for t in LevelType4::all(d.low(), d.high()) {
        let [t1, t2, t3, t4] = t.0;
        let hit = match t.case(d.n()) {
            None => return contract(format!("4-type {t} matches no case at n = {}", d.n())),
            Some(Case4::ClusterQuadruples) => {
                let mut levels = t.0;
                levels.sort_unstable();
                quadruple_sets.insert(levels) && cluster_quadruples(&cx, levels)?
            }
            Some(Case4::OppositeHigh13 | Case4::OppositeMid13) => opposite_pairs(&cx, [t2, t4], [t1, t3]),
            Some(Case4::OppositeHigh24 | Case4::OppositeMid24) => opposite_pairs(&cx, [t1, t3], [t2, t4]),
            Some(Case4::Codegree1) => degree_codegree(&cx, t1, [t2, t4], t3)?,
            Some(Case4::Codegree2) => degree_codegree(&cx, t2, [t1, t3], t4)?,
        };
        if hit {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Every set of four distinct clusters whose levels form the sorted
/// multiset `levels`, tested with the one-vertex-per-cluster search. Sets
/// are first screened by which cluster pairs have an edge and which have a
/// non-edge: some cyclic order must have edges between consecutive clusters
/// and a non-edge between opposite ones.
fn cluster_quadruples(cx: &Context<'_>, levels: [usize; 4]) -> Result<bool> {
    let mut groups: Vec<(usize, usize)> = Vec::new();
    for &l in &levels {
        match groups.last_mut() {
            Some((gl, k)) if *gl == l => *k += 1,
            _ => groups.push((l, 1)),
        }
    }
    let pools: Vec<&Cluster> = groups.iter().flat_map(|&(l, _)| cx.d.clusters_at(l)).collect();
    let kinds = PairKinds::new(cx.g, &pools);
    let mut chosen: Vec<&Cluster> = Vec::with_capacity(4);
    choose(cx, &kinds, &groups, 0, 0, &mut chosen)
}

/// For clusters `pools`, whether each pair has an edge and whether it has a
/// non-edge between them.
struct PairKinds {
    local: HashMap<usize, usize>,
    k: usize,
    edge: Vec<bool>,
    non_edge: Vec<bool>,
}

impl PairKinds {
    fn new(g: &Graph, pools: &[&Cluster]) -> Self {
        let k = pools.len();
        let masks: Vec<Vec<u64>> =
            pools.iter().map(|c| bits::from_ids(g.n(), c.vertices.iter().copied())).collect();
        let mut edge = vec![false; k * k];
        let mut non_edge = vec![false; k * k];
        for i in 0..k {
            for j in i + 1..k {
                let e: usize = pools[i].vertices.iter().map(|&v| bits::and_count(g.row(v), &masks[j])).sum();
                let (has, lacks) = (e > 0, e < pools[i].len() * pools[j].len());
                edge[i * k + j] = has;
                edge[j * k + i] = has;
                non_edge[i * k + j] = lacks;
                non_edge[j * k + i] = lacks;
            }
        }
        let local = pools.iter().enumerate().map(|(i, c)| (c.id, i)).collect();
        Self { local, k, edge, non_edge }
    }

    fn may_form_cycle(&self, cl: [&Cluster; 4]) -> bool {
        let ix = cl.map(|c| self.local[&c.id]);
        let e = |a: usize, b: usize| self.edge[ix[a] * self.k + ix[b]];
        let ne = |a: usize, b: usize| self.non_edge[ix[a] * self.k + ix[b]];
        [[0, 1, 2, 3], [0, 2, 1, 3], [0, 1, 3, 2]].iter().any(|&[a, b, c, d]| {
            e(a, b) && e(b, c) && e(c, d) && e(d, a) && ne(a, c) && ne(b, d)
        })
    }
}

fn choose<'a>(
    cx: &Context<'a>,
    kinds: &PairKinds,
    groups: &[(usize, usize)],
    gi: usize,
    from: usize,
    chosen: &mut Vec<&'a Cluster>,
) -> Result<bool> {
    if gi == groups.len() {
        let cl = [chosen[0], chosen[1], chosen[2], chosen[3]];
        return if kinds.may_form_cycle(cl) { detect_quadruple_screened(cx.g, cx.table, cl) } else { Ok(false) };
    }
    let (level, k) = groups[gi];
    let pool = cx.d.clusters_at(level);
    let taken = chosen.len() - groups[..gi].iter().map(|g| g.1).sum::<usize>();
    if taken == k {
        return choose(cx, kinds, groups, gi + 1, 0, chosen);
    }
    for i in from..pool.len() {
        chosen.push(&pool[i]);
        let hit = choose(cx, kinds, groups, gi, i + 1, chosen)?;
        chosen.pop();
        if hit {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Cycles `(a, u, b, v)` with `u, v` opposite: for each non-edge `(u, v)`
/// at levels `ends`, pairs `a` in `N_{mids[0]}(u, v)` with `b` in
/// `N_{mids[1]}(u, v)` and tests `a`, `b` for a non-edge.
fn opposite_pairs(cx: &Context<'_>, ends: [usize; 2], mids: [usize; 2]) -> bool {
    let d = cx.d;
    cx.oriented(ends[0], ends[1], false, |_, _, run| {
        let (xs, ys) = (d.at_level(run, mids[0]), d.at_level(run, mids[1]));
        if xs.is_empty() || ys.is_empty() {
            return false;
        }
        xs.iter()
            .any(|&a| ys.iter().any(|&b| a != b && !cx.g.has_edge(a as usize, b as usize)))
    })
}

/// Cycles `(w, u, m, v)` with `w` in a cluster `W` at level `tw`: for each
/// non-edge `(u, v)` at levels `ends` and `m` in `N_{tm}(u, v)`, compares
/// `deg_W(m)` with `codeg_W(u, v)`; valid when no induced 4-cycle touches
/// two or three clusters.
fn degree_codegree(cx: &Context<'_>, tw: usize, ends: [usize; 2], tm: usize) -> Result<bool> {
    let d = cx.d;
    let g = cx.g;
    // Non-edges with a middle candidate, grouped by their cluster pair.
    let mut groups: HashMap<(usize, usize), Vec<(usize, usize, &[u32])>> = HashMap::new();
    cx.oriented(ends[0], ends[1], false, |u, v, run| {
        let mids = d.at_level(run, tm);
        if !mids.is_empty() {
            groups.entry((d.cluster_of(u), d.cluster_of(v))).or_default().push((u, v, mids));
        }
        false
    });
    if groups.is_empty() {
        return Ok(false);
    }
    let mut order: Vec<(usize, usize)> = groups.keys().copied().collect();
    order.sort_unstable();
    let mut deg = vec![u32::MAX; g.n()];
    let mut touched: Vec<usize> = Vec::new();
    for w in d.clusters_at(tw) {
        let mask = bits::from_ids(g.n(), w.vertices.iter().copied());
        for &v in &touched {
            deg[v] = u32::MAX;
        }
        touched.clear();
        for &(cu, cv) in &order {
            if cu == w.id || cv == w.id {
                continue;
            }
            let (xu, xv) = (&d.clusters()[cu], &d.clusters()[cv]);
            let block = codegrees(&cx.table.ordering_for(g, w.id, cu)?, &cx.table.ordering_for(g, w.id, cv)?);
            for &(u, v, mids) in &groups[&(cu, cv)] {
                let iu = xu.vertices.binary_search(&u).expect("u lies in its cluster");
                let iv = xv.vertices.binary_search(&v).expect("v lies in its cluster");
                let c = block[iu][iv];
                if c == 0 {
                    continue;
                }
                for &m in mids {
                    let m = m as usize;
                    if d.cluster_of(m) == w.id {
                        continue;
                    }
                    if deg[m] == u32::MAX {
                        deg[m] = bits::and_count(g.row(m), &mask) as u32;
                        touched.push(m);
                    }
                    if (deg[m] as usize) < c {
                        return Ok(true);
                    }
                }
            }
        }
    }
    Ok(false)
}
