//! Cluster quadruples: correlated neighborhoods, 4-cycles with one vertex in
//! each of four pairwise ordered cliques, and cluster co-degrees.
//!
//! For a side cluster `W` and an ordered pair `(X, Z)` with labels
//! `f_XZ`/`g_XZ`, a vertex `w` gets the vector
//! `(xi_pre, xi_high, zeta_low, zeta_suff)`:
//!
//! * `xi_high` is the largest `f_XZ` over `N_X(w)` and `zeta_low` the smallest
//!   `g_XZ` over `N_Z(w)`;
//! * when `xi_high > zeta_low`, every `x` with `f_XZ(x) <= xi_pre` is a
//!   neighbor of `w` and the remaining neighbors all have `f_XZ = xi_high`
//!   (and dually for `Z` with `zeta_suff` and `zeta_low`), provided the
//!   three triples around `W` carry no induced 4-cycle.
//!
//! When `xi_high <= zeta_low` no neighbor in `X` is non-adjacent to a
//! neighbor in `Z`, so `w` cannot lie on a cycle through `X` and `Z`, and the
//! vector is `(BOTTOM, xi_high, zeta_low, TOP)`.

use crate::error::{contract, Result};
use crate::graph_core::Graph;
use crate::orderings::{Cluster, OrderingTable, OrientedOrdering};
use crate::range_query::{AxisRange, Direction, ExtendedInt, Point, RangeBox, RangePointSet};
use crate::triples::{detect_triple, ext, ext_image};

/// Correlated-neighborhood description of one side vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NeighborhoodVector {
    pub xi_pre: ExtendedInt,
    pub xi_high: ExtendedInt,
    pub zeta_low: ExtendedInt,
    pub zeta_suff: ExtendedInt,
}

impl NeighborhoodVector {
    /// Whether the two-part structure applies (`xi_high > zeta_low`).
    pub fn is_split(&self) -> bool {
        self.xi_high > self.zeta_low
    }
}

/// Vectors for every vertex of `W` relative to `(X, Z)`, indexed like
/// `W.vertices`; `None` where `w` has no neighbor in `X` or none in `Z`.
///
/// The triple `(W, X, Z)` must be free of induced 4-cycles. Violations of the
/// resulting structure are detected and reported as contract errors.
pub fn correlated_vectors(
    g: &Graph,
    table: &OrderingTable,
    w: &Cluster,
    x: &Cluster,
    z: &Cluster,
) -> Result<Vec<Option<NeighborhoodVector>>> {
    let wx = table.ordering_for(g, w.id, x.id)?;
    let wz = table.ordering_for(g, w.id, z.id)?;
    let xz = table.ordering_for(g, x.id, z.id)?;
    vectors(&wx, &wz, &xz)
}

fn largest_below(image: &[ExtendedInt], bound: ExtendedInt, inclusive: bool) -> ExtendedInt {
    let k = image.partition_point(|&v| v < bound || (inclusive && v == bound));
    if k == 0 { ExtendedInt::BOTTOM } else { image[k - 1] }
}

fn smallest_above(image: &[ExtendedInt], bound: ExtendedInt, inclusive: bool) -> ExtendedInt {
    let k = image.partition_point(|&v| v < bound || (!inclusive && v == bound));
    image.get(k).copied().unwrap_or(ExtendedInt::TOP)
}

pub(crate) fn vectors(
    wx: &OrientedOrdering<'_>,
    wz: &OrientedOrdering<'_>,
    xz: &OrientedOrdering<'_>,
) -> Result<Vec<Option<NeighborhoodVector>>> {
    let xs = RangePointSet::from_points(
        2,
        (0..xz.f.len()).map(|i| Point::new(&[ext(xz.f[i]), ext(wx.g[i])], i)).collect(),
    );
    let zs = RangePointSet::from_points(
        2,
        (0..xz.g.len()).map(|j| Point::new(&[ext(xz.g[j]), ext(wz.g[j])], j)).collect(),
    );
    let f_img = ext_image(&xz.f);
    let g_img = ext_image(&xz.g);
    let mut out = Vec::with_capacity(wx.f.len());
    for k in 0..wx.f.len() {
        let x_adj = AxisRange::at_least(ext(wx.f[k]));
        let z_adj = AxisRange::at_least(ext(wz.f[k]));
        let nx = RangeBox::UNIVERSE.with(1, x_adj);
        let nz = RangeBox::UNIVERSE.with(1, z_adj);
        let hi = xs.extremal_on_image(&nx, 0, Direction::Max, &f_img);
        let lo = zs.extremal_on_image(&nz, 0, Direction::Min, &g_img);
        let (Some((xi_high, _)), Some((zeta_low, _))) = (hi, lo) else {
            out.push(None);
            continue;
        };
        if xi_high <= zeta_low {
            out.push(Some(NeighborhoodVector {
                xi_pre: ExtendedInt::BOTTOM,
                xi_high,
                zeta_low,
                zeta_suff: ExtendedInt::TOP,
            }));
            continue;
        }
        // xi_med: the smallest f-label above zeta_low. If w touches it, all of
        // X below xi_high and all of Z above zeta_low are neighbors; if not,
        // the neighborhoods jump straight from zeta_low to xi_high.
        let xi_med = smallest_above(&f_img, zeta_low, false);
        let touches = xs.count(&nx.with(0, AxisRange::exactly(xi_med))) > 0;
        let (xi_pre, zeta_suff) = if touches {
            (largest_below(&f_img, xi_high, false), smallest_above(&g_img, zeta_low, false))
        } else {
            (largest_below(&f_img, zeta_low, true), smallest_above(&g_img, xi_high, true))
        };
        let v = NeighborhoodVector { xi_pre, xi_high, zeta_low, zeta_suff };
        check_structure(&xs, &zs, nx, nz, &v)?;
        out.push(Some(v));
    }
    Ok(out)
}

/// Confirms the prefix/extreme-layer split with four range counts.
fn check_structure(
    xs: &RangePointSet,
    zs: &RangePointSet,
    nx: RangeBox,
    nz: RangeBox,
    v: &NeighborhoodVector,
) -> Result<()> {
    let prefix = RangeBox::UNIVERSE.with(0, AxisRange::at_most(v.xi_pre));
    let gap_x = AxisRange::new(v.xi_pre, false, v.xi_high, false);
    let suffix = RangeBox::UNIVERSE.with(0, AxisRange::at_least(v.zeta_suff));
    let gap_z = AxisRange::new(v.zeta_low, false, v.zeta_suff, false);
    let ok = xs.count(&prefix) == xs.count(&prefix.with(1, nx.axes[1]))
        && xs.count(&nx.with(0, gap_x)) == 0
        && zs.count(&suffix) == zs.count(&suffix.with(1, nz.axes[1]))
        && zs.count(&nz.with(0, gap_z)) == 0;
    if ok {
        Ok(())
    } else {
        contract(format!(
            "correlated-neighborhood structure fails for vector {v:?}; the triple is not free of induced 4-cycles"
        ))
    }
}

/// Oriented orderings for every ordered pair of the four roles.
struct Roles<'a> {
    ord: [[Option<OrientedOrdering<'a>>; 4]; 4],
    len: [usize; 4],
}

impl<'a> Roles<'a> {
    fn new(g: &Graph, table: &'a OrderingTable, cl: [&Cluster; 4]) -> Result<Self> {
        let mut ord: [[Option<OrientedOrdering<'a>>; 4]; 4] = Default::default();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    ord[i][j] = Some(table.ordering_for(g, cl[i].id, cl[j].id)?);
                }
            }
        }
        Ok(Self { ord, len: cl.map(|c| c.len()) })
    }

    #[inline]
    fn o(&self, i: usize, j: usize) -> &OrientedOrdering<'a> {
        self.ord[i][j].as_ref().unwrap()
    }
}

/// Cycles `a - b - c - d` with `b` in the extreme layer of `N_B(a)` relative
/// to the frame `(B, D)`. Indices name the roles inside `r`.
fn extreme_layer(r: &Roles<'_>, [ia, ib, ic, id]: [usize; 4]) -> Result<bool> {
    let vec_a = vectors(r.o(ia, ib), r.o(ia, id), r.o(ib, id))?;
    let (ab, ac, ad) = (r.o(ia, ib), r.o(ia, ic), r.o(ia, id));
    let (bc, bd, cd) = (r.o(ib, ic), r.o(ib, id), r.o(ic, id));
    let bs = RangePointSet::from_points(
        3,
        (0..r.len[ib]).map(|j| Point::new(&[ext(ab.g[j]), ext(bd.f[j]), ext(bc.f[j])], j)).collect(),
    );
    let ds = RangePointSet::from_points(
        3,
        (0..r.len[id]).map(|j| Point::new(&[ext(ad.g[j]), ext(bd.g[j]), ext(cd.g[j])], j)).collect(),
    );
    let cs = RangePointSet::from_points(
        3,
        (0..r.len[ic]).map(|j| Point::new(&[ext(ac.g[j]), ext(bc.g[j]), ext(cd.f[j])], j)).collect(),
    );
    let bc_img = ext_image(&bc.f);
    let cd_img = ext_image(&cd.g);
    for (k, v) in vec_a.iter().enumerate() {
        let Some(v) = v.filter(|v| v.is_split()) else { continue };
        // beta: smallest f_BC over the extreme layer of N_B(a).
        let layer = RangeBox::UNIVERSE
            .with(0, AxisRange::at_least(ext(ab.f[k])))
            .with(1, AxisRange::exactly(v.xi_high));
        let Some((beta, _)) = bs.extremal_on_image(&layer, 2, Direction::Min, &bc_img) else { continue };
        // delta: largest g_CD over neighbors of a in D that miss the layer.
        let safe = RangeBox::UNIVERSE
            .with(0, AxisRange::at_least(ext(ad.f[k])))
            .with(1, AxisRange::less_than(v.xi_high));
        let Some((delta, _)) = ds.extremal_on_image(&safe, 2, Direction::Max, &cd_img) else { continue };
        let query = RangeBox::UNIVERSE
            .with(0, AxisRange::less_than(ext(ac.f[k])))
            .with(1, AxisRange::at_least(beta))
            .with(2, AxisRange::at_most(delta));
        if cs.count(&query) > 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Cycles `a - b - c - d` with `b` in the full prefix and `d` in the full
/// suffix of both side vertices.
fn prefix_suffix(r: &Roles<'_>, [ia, ib, ic, id]: [usize; 4]) -> Result<bool> {
    let vec_a = vectors(r.o(ia, ib), r.o(ia, id), r.o(ib, id))?;
    let vec_c = vectors(r.o(ic, ib), r.o(ic, id), r.o(ib, id))?;
    let ac = r.o(ia, ic);
    let usable = |v: &Option<NeighborhoodVector>| {
        v.filter(|v| v.is_split() && v.xi_pre.is_finite() && v.zeta_suff.is_finite() && v.xi_pre > v.zeta_suff)
    };
    let cs = RangePointSet::from_points(
        3,
        vec_c
            .iter()
            .enumerate()
            .filter_map(|(j, v)| usable(v).map(|v| Point::new(&[ext(ac.g[j]), v.xi_pre, v.zeta_suff], j)))
            .collect(),
    );
    if cs.is_empty() {
        return Ok(false);
    }
    for (k, v) in vec_a.iter().enumerate() {
        let Some(v) = usable(v) else { continue };
        let query = RangeBox::UNIVERSE
            .with(0, AxisRange::less_than(ext(ac.f[k])))
            .with(1, AxisRange::greater_than(v.zeta_suff))
            .with(2, AxisRange::less_than(v.xi_pre));
        if cs.count(&query) > 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Searches cycles `p0 - p1 - p2 - p3` (roles indices into `r`) in every
/// extreme-layer variant and the prefix/suffix case.
fn cycle_assignment(r: &Roles<'_>, [a, b, c, d]: [usize; 4]) -> Result<bool> {
    for roles in [[a, b, c, d], [a, d, c, b], [c, b, a, d], [c, d, a, b]] {
        if extreme_layer(r, roles)? {
            return Ok(true);
        }
    }
    prefix_suffix(r, [a, b, c, d])
}

/// Whether `G[A ∪ B ∪ C ∪ D]` contains an induced 4-cycle, for four
/// pairwise ordered, disjoint clusters.
pub fn detect_quadruple(
    g: &Graph,
    table: &OrderingTable,
    a: &Cluster,
    b: &Cluster,
    c: &Cluster,
    d: &Cluster,
) -> Result<bool> {
    let cl = [a, b, c, d];
    for [i, j, k] in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
        if detect_triple(g, table, cl[i], cl[j], cl[k])? {
            return Ok(true);
        }
    }
    detect_quadruple_screened(g, table, cl)
}

/// The one-vertex-per-cluster search of [`detect_quadruple`], assuming every
/// sub-triple is already known to be free of induced 4-cycles.
pub(crate) fn detect_quadruple_screened(g: &Graph, table: &OrderingTable, cl: [&Cluster; 4]) -> Result<bool> {
    if cl.iter().any(|c| c.is_empty()) {
        return Ok(false);
    }
    let r = Roles::new(g, table, cl)?;
    // The three ways to split {A, B, C, D} into two opposite pairs.
    for assignment in [[0, 1, 2, 3], [0, 2, 1, 3], [0, 1, 3, 2]] {
        if cycle_assignment(&r, assignment)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `codeg_W(x, z)` for every `(x, z)` in `X × Z`, as a row-major
/// `|X| × |Z|` matrix, via 2-D dominance counts over `(f_WX(w), f_WZ(w))`.
pub fn cluster_codegrees(
    g: &Graph,
    table: &OrderingTable,
    w: &Cluster,
    x: &Cluster,
    z: &Cluster,
) -> Result<Vec<Vec<usize>>> {
    let wx = table.ordering_for(g, w.id, x.id)?;
    let wz = table.ordering_for(g, w.id, z.id)?;
    Ok(codegrees(&wx, &wz))
}

pub(crate) fn codegrees(wx: &OrientedOrdering<'_>, wz: &OrientedOrdering<'_>) -> Vec<Vec<usize>> {
    let s = RangePointSet::from_points(
        2,
        (0..wx.f.len()).map(|k| Point::new(&[ext(wx.f[k]), ext(wz.f[k])], k)).collect(),
    );
    wx.g.iter()
        .map(|&gx| {
            let row = RangeBox::UNIVERSE.with(0, AxisRange::at_most(ext(gx)));
            wz.g.iter()
                .map(|&gz| s.count(&row.with(1, AxisRange::at_most(ext(gz)))))
                .collect()
        })
        .collect()
}

/// For an induced 2-path `u - v - w` outside `X`, with no induced 4-cycle
/// using two vertices of `X`: some `x` in `X` closes an induced 4-cycle
/// `x - u - v - w` iff `deg_X(v) < codeg_X(u, w)`.
#[inline]
pub fn degree_vs_codegree_witnessable(deg_x_v: usize, codeg_x_uw: usize) -> bool {
    deg_x_v < codeg_x_uw
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::ordered_clusters;
    use crate::graph_core::{oracle_detect, verify_witness, C4Witness};
    use crate::orderings::{build_table, TableOutcome};

    fn table(g: &Graph, clusters: &[Cluster]) -> Option<OrderingTable> {
        match build_table(g, clusters).unwrap() {
            TableOutcome::Table(t) => Some(t),
            TableOutcome::Found(_) => None,
        }
    }

    fn union_has_c4(g: &Graph, cl: &[&Cluster]) -> bool {
        let verts: Vec<usize> = cl.iter().flat_map(|c| c.vertices.iter().copied()).collect();
        oracle_detect(&g.induced(&verts)).is_some()
    }

    #[test]
    fn vectors_reproduce_neighborhoods() {
        let mut split = 0;
        for seed in 0..400 {
            let sizes = [1 + seed as usize % 4, 2 + seed as usize % 5, 1 + (seed as usize / 4) % 5];
            let (g, cl) = ordered_clusters(&sizes, 5, 0, seed);
            if oracle_detect(&g).is_some() {
                continue;
            }
            let t = table(&g, &cl).unwrap();
            let (w, x, z) = (&cl[0], &cl[1], &cl[2]);
            let vs = correlated_vectors(&g, &t, w, x, z).unwrap();
            let xz = t.ordering_for(&g, x.id, z.id).unwrap();
            let f_img = ext_image(&xz.f);
            let g_img = ext_image(&xz.g);
            for (k, &wv) in w.vertices.iter().enumerate() {
                let nx: Vec<usize> = (0..x.len()).filter(|&i| g.has_edge(wv, x.vertices[i])).collect();
                let nz: Vec<usize> = (0..z.len()).filter(|&j| g.has_edge(wv, z.vertices[j])).collect();
                let Some(v) = vs[k] else {
                    assert!(nx.is_empty() || nz.is_empty());
                    continue;
                };
                assert_eq!(v.xi_high, ext(nx.iter().map(|&i| xz.f[i]).max().unwrap()));
                assert_eq!(v.zeta_low, ext(nz.iter().map(|&j| xz.g[j]).min().unwrap()));
                if !v.is_split() {
                    assert_eq!((v.xi_pre, v.zeta_suff), (ExtendedInt::BOTTOM, ExtendedInt::TOP));
                    continue;
                }
                split += 1;
                assert!(v.xi_pre == ExtendedInt::BOTTOM || f_img.contains(&v.xi_pre));
                assert!(v.zeta_suff == ExtendedInt::TOP || g_img.contains(&v.zeta_suff));
                let rebuilt_x: Vec<usize> = (0..x.len())
                    .filter(|&i| ext(xz.f[i]) <= v.xi_pre || (nx.contains(&i) && ext(xz.f[i]) == v.xi_high))
                    .collect();
                let rebuilt_z: Vec<usize> = (0..z.len())
                    .filter(|&j| ext(xz.g[j]) >= v.zeta_suff || (nz.contains(&j) && ext(xz.g[j]) == v.zeta_low))
                    .collect();
                assert_eq!(rebuilt_x, nx, "seed {seed}");
                assert_eq!(rebuilt_z, nz, "seed {seed}");
            }
        }
        assert!(split > 100, "{split}");
    }

    #[test]
    fn complete_join_gives_full_prefix_and_suffix() {
        let g = Graph::complete(7);
        let cl = vec![
            Cluster::new(0, 0, vec![0, 1]),
            Cluster::new(1, 0, vec![2, 3, 4]),
            Cluster::new(2, 0, vec![5, 6]),
        ];
        let t = table(&g, &cl).unwrap();
        let vs = correlated_vectors(&g, &t, &cl[0], &cl[1], &cl[2]).unwrap();
        for v in vs.into_iter().flatten() {
            assert!(!v.is_split());
            assert_eq!((v.xi_pre, v.zeta_suff), (ExtendedInt::BOTTOM, ExtendedInt::TOP));
        }
    }

    #[test]
    fn broken_triple_raises_contract_error() {
        // Triples that do contain an induced 4-cycle can break the structure;
        // at least one such triple in the corpus must be reported.
        let mut found_error = false;
        for seed in 0..300 {
            let (g, cl) = ordered_clusters(&[1, 3, 3], 4, 2, seed);
            let Some(t) = table(&g, &cl) else { continue };
            if !crate::triples::detect_triple(&g, &t, &cl[0], &cl[1], &cl[2]).unwrap() {
                continue;
            }
            if correlated_vectors(&g, &t, &cl[0], &cl[1], &cl[2]).is_err() {
                found_error = true;
            }
        }
        assert!(found_error);
    }

    #[test]
    fn four_singletons_forming_a_cycle() {
        let g = Graph::cycle(4);
        let cl: Vec<Cluster> = (0..4).map(|i| Cluster::new(i, 0, vec![i])).collect();
        let t = table(&g, &cl).unwrap();
        assert!(detect_quadruple(&g, &t, &cl[0], &cl[1], &cl[2], &cl[3]).unwrap());
        assert!(detect_quadruple(&g, &t, &cl[0], &cl[2], &cl[1], &cl[3]).unwrap());
    }

    #[test]
    fn blown_up_cycle_is_found_with_triples_clean() {
        let spec: crate::graph_core::GraphSpec = "clique-blowup:n=4,p=1,w=3".parse().unwrap();
        let mut g = spec.generate().unwrap().graph;
        // Turn the blown-up K4 into a blown-up C4: drop joins 0-2 and 1-3.
        for (x, y) in [(0, 2), (1, 3)] {
            for i in 0..3 {
                for j in 0..3 {
                    g.remove_edge(x * 3 + i, y * 3 + j);
                }
            }
        }
        let cl: Vec<Cluster> = (0..4).map(|i| Cluster::new(i, 0, (3 * i..3 * i + 3).collect())).collect();
        let t = table(&g, &cl).unwrap();
        for [i, j, k] in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
            assert!(!detect_triple(&g, &t, &cl[i], &cl[j], &cl[k]).unwrap());
        }
        assert!(detect_quadruple(&g, &t, &cl[0], &cl[1], &cl[2], &cl[3]).unwrap());
        assert!(verify_witness(&g, &C4Witness::new(0, 3, 6, 9)));
    }

    #[test]
    fn random_quadruples_match_oracle() {
        let mut positives = 0;
        let mut layer_hits = 0;
        let mut checked = 0;
        for seed in 0..20_000u64 {
            if checked == 600 {
                break;
            }
            let sizes = [1 + seed as usize % 3, 1 + (seed as usize / 3) % 3, 1 + (seed as usize / 9) % 3, 1 + (seed as usize / 27) % 3];
            let (g, cl) = ordered_clusters(&sizes, 3, (seed % 3) as usize, seed);
            let Some(t) = table(&g, &cl) else { continue };
            let refs: Vec<&Cluster> = cl.iter().collect();
            let screened = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
                .iter()
                .all(|&[i, j, k]| !union_has_c4(&g, &[refs[i], refs[j], refs[k]]));
            if !screened {
                continue;
            }
            checked += 1;
            let expect = union_has_c4(&g, &refs);
            positives += usize::from(expect);
            let perms = [[0, 1, 2, 3], [1, 2, 3, 0], [2, 3, 0, 1], [3, 0, 1, 2], [3, 2, 1, 0], [0, 3, 2, 1], [1, 0, 3, 2], [2, 1, 0, 3]];
            for p in perms {
                let got = detect_quadruple(&g, &t, &cl[p[0]], &cl[p[1]], &cl[p[2]], &cl[p[3]]).unwrap();
                assert_eq!(got, expect, "seed {seed} perm {p:?}");
            }
            // Each search path on its own must be sound.
            let r = Roles::new(&g, &t, [&cl[0], &cl[1], &cl[2], &cl[3]]).unwrap();
            for [a, b, c, d] in [[0, 1, 2, 3], [0, 2, 1, 3], [0, 1, 3, 2]] {
                for roles in [[a, b, c, d], [a, d, c, b], [c, b, a, d], [c, d, a, b]] {
                    let hit = extreme_layer(&r, roles).unwrap();
                    assert!(!hit || expect, "seed {seed}");
                    layer_hits += usize::from(hit);
                }
                let hit = prefix_suffix(&r, [a, b, c, d]).unwrap();
                assert!(!hit || expect, "seed {seed}");
            }
        }
        assert_eq!(checked, 600);
        assert!(positives > 30, "{positives}");
        assert!(layer_hits > 0);
    }

    #[test]
    fn interleaved_prefix_and_suffix() {
        // a = 0 and c = 1 see all of B = {2, 3, 4} and D = {5, 6, 7}. The B-D
        // labels interleave as f = 1, 3, 5 and g = 0, 2, 4, so both side
        // vertices get xi_pre = 3 > zeta_suff = 2.
        let mut g = Graph::new(8);
        for (x, y) in [(2, 3), (2, 4), (3, 4), (5, 6), (5, 7), (6, 7)] {
            g.add_edge(x, y);
        }
        for s in [0, 1] {
            for v in 2..8 {
                g.add_edge(s, v);
            }
        }
        let (f, gl) = ([1, 3, 5], [0, 2, 4]);
        for i in 0..3 {
            for j in 0..3 {
                if f[i] <= gl[j] {
                    g.add_edge(2 + i, 5 + j);
                }
            }
        }
        let cl = vec![
            Cluster::new(0, 0, vec![0]),
            Cluster::new(1, 0, vec![2, 3, 4]),
            Cluster::new(2, 0, vec![1]),
            Cluster::new(3, 0, vec![5, 6, 7]),
        ];
        let t = table(&g, &cl).unwrap();
        let v = correlated_vectors(&g, &t, &cl[0], &cl[1], &cl[3]).unwrap()[0].unwrap();
        assert!(v.xi_pre > v.zeta_suff, "{v:?}");
        let r = Roles::new(&g, &t, [&cl[0], &cl[1], &cl[2], &cl[3]]).unwrap();
        assert!(prefix_suffix(&r, [0, 1, 2, 3]).unwrap());
        assert!(detect_quadruple(&g, &t, &cl[0], &cl[1], &cl[2], &cl[3]).unwrap());
        assert!(oracle_detect(&g).is_some());
    }

    #[test]
    fn codegrees_match_popcounts() {
        for seed in 0..200 {
            let sizes = [1 + seed as usize % 6, 1 + (seed as usize / 6) % 4, 1 + (seed as usize / 24) % 5];
            let (g, cl) = ordered_clusters(&sizes, 5, 0, seed);
            let t = table(&g, &cl).unwrap();
            let m = cluster_codegrees(&g, &t, &cl[0], &cl[1], &cl[2]).unwrap();
            for (i, &x) in cl[1].vertices.iter().enumerate() {
                for (j, &z) in cl[2].vertices.iter().enumerate() {
                    let expect = cl[0].vertices.iter().filter(|&&w| g.has_edge(w, x) && g.has_edge(w, z)).count();
                    assert_eq!(m[i][j], expect);
                }
            }
        }
    }

    #[test]
    fn degree_codegree_criterion() {
        assert!(degree_vs_codegree_witnessable(0, 1));
        assert!(!degree_vs_codegree_witnessable(2, 2));
        // X = {0, 1, 2}; 2-path u=3 - v=4 - w=5 outside X.
        for seed in 0..300 {
            let (mut g, _) = ordered_clusters(&[3, 1, 1, 1], 3, 0, seed);
            let (u, v, w) = (3, 4, 5);
            g.add_edge(u, v);
            g.add_edge(v, w);
            g.remove_edge(u, w);
            // Precondition: no induced C4 with two vertices of X.
            let two_in_x = (0..3).any(|a| {
                (a + 1..3).any(|b| {
                    [u, v, w].iter().any(|&p| {
                        [u, v, w].iter().any(|&q| p != q && verify_witness(&g, &C4Witness::new(a, p, q, b)))
                    })
                })
            });
            if two_in_x {
                continue;
            }
            let deg = (0..3).filter(|&x| g.has_edge(x, v)).count();
            let codeg = (0..3).filter(|&x| g.has_edge(x, u) && g.has_edge(x, w)).count();
            let direct = (0..3).any(|x| verify_witness(&g, &C4Witness::new(x, u, v, w)));
            assert_eq!(degree_vs_codegree_witnessable(deg, codeg), direct, "seed {seed}");
        }
    }
}
