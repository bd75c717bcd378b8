//! Cluster triples: induced 4-cycles spread over three pairwise ordered
//! cliques.
//!
//! A 4-cycle with two vertices in `A` and one each in `B` and `C` exists iff
//! some edge `(b, c)` has incomparable neighborhoods `N_A(b)` and `N_A(c)`.
//! With `N_A(v) = {a : f_AV(a) <= g_AV(v)}`, incomparability reduces to
//! `h_low(b) <= g_AC(c) < h_high(b)` where
//!
//! ```text
//! h_low(b)  = min { f_AC(a) : a not adjacent to b }   (TOP if none)
//! h_high(b) = max { f_AC(a) : a adjacent to b }       (BOTTOM if none)
//! ```
//!
//! Both thresholds come from binary searches over a 2-D range structure on
//! the points `(f_AB(a), f_AC(a))`; the existence of a suitable `c` is then a
//! single 2-D query over the points `(g_AC(c), g_BC(c))`.

use crate::error::Result;
use crate::graph_core::Graph;
use crate::orderings::{Cluster, OrderingTable, OrientedOrdering};
use crate::range_query::{AxisRange, Direction, ExtendedInt, Point, RangeBox, RangePointSet};

pub(crate) fn ext(v: i64) -> ExtendedInt {
    ExtendedInt::finite(v)
}

pub(crate) fn ext_image(values: &[i64]) -> Vec<ExtendedInt> {
    let mut v: Vec<ExtendedInt> = values.iter().map(|&x| ext(x)).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Incomparability thresholds for every vertex of the middle cluster `B`
/// against the doubled cluster `A`, indexed like `B.vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichThresholds {
    pub h_low: Vec<ExtendedInt>,
    pub h_high: Vec<ExtendedInt>,
}

/// Computes [`SandwichThresholds`] from the orderings of `(A, B)` and `(A, C)`.
pub fn sandwich_thresholds(ab: &OrientedOrdering<'_>, ac: &OrientedOrdering<'_>) -> SandwichThresholds {
    let points: Vec<Point> = (0..ab.f.len())
        .map(|i| Point::new(&[ext(ab.f[i]), ext(ac.f[i])], i))
        .collect();
    let s = RangePointSet::from_points(2, points);
    let cands = ext_image(&ac.f);
    let mut h_low = Vec::with_capacity(ab.g.len());
    let mut h_high = Vec::with_capacity(ab.g.len());
    for &gb in ab.g.iter() {
        let non_nbrs = RangeBox::UNIVERSE.with(0, AxisRange::greater_than(ext(gb)));
        let nbrs = RangeBox::UNIVERSE.with(0, AxisRange::at_most(ext(gb)));
        h_low.push(
            s.extremal_on_image(&non_nbrs, 1, Direction::Min, &cands)
                .map_or(ExtendedInt::TOP, |(v, _)| v),
        );
        h_high.push(
            s.extremal_on_image(&nbrs, 1, Direction::Max, &cands)
                .map_or(ExtendedInt::BOTTOM, |(v, _)| v),
        );
    }
    SandwichThresholds { h_low, h_high }
}

/// Whether `N_A(b)` and `N_A(c)` are incomparable, given the thresholds of
/// `b` and the label `g_AC(c)`.
#[inline]
pub fn neighborhoods_incomparable(h_low: ExtendedInt, h_high: ExtendedInt, g_ac_c: ExtendedInt) -> bool {
    h_low <= g_ac_c && g_ac_c < h_high
}

/// Whether `G[A ∪ B ∪ C]` has an induced 4-cycle with exactly two vertices in
/// `A` and one in each of `B` and `C`.
pub fn detect_two_in(g: &Graph, table: &OrderingTable, a: &Cluster, b: &Cluster, c: &Cluster) -> Result<bool> {
    if a.len() < 2 || b.is_empty() || c.is_empty() {
        return Ok(false);
    }
    let ab = table.ordering_for(g, a.id, b.id)?;
    let ac = table.ordering_for(g, a.id, c.id)?;
    let bc = table.ordering_for(g, b.id, c.id)?;
    Ok(two_in(&ab, &ac, &bc))
}

/// [`detect_two_in`] on explicit orderings of `(A, B)`, `(A, C)`, `(B, C)`.
pub fn two_in(ab: &OrientedOrdering<'_>, ac: &OrientedOrdering<'_>, bc: &OrientedOrdering<'_>) -> bool {
    let th = sandwich_thresholds(ab, ac);
    let points: Vec<Point> = (0..ac.g.len())
        .map(|j| Point::new(&[ext(ac.g[j]), ext(bc.g[j])], j))
        .collect();
    let s = RangePointSet::from_points(2, points);
    (0..ab.g.len()).any(|i| {
        let (lo, hi) = (th.h_low[i], th.h_high[i]);
        if lo >= hi {
            return false;
        }
        let bx = RangeBox::UNIVERSE
            .with(0, AxisRange::new(lo, true, hi, false))
            .with(1, AxisRange::at_least(ext(bc.f[i])));
        s.count(&bx) > 0
    })
}

/// Whether `G[A ∪ B ∪ C]` contains an induced 4-cycle, for three pairwise
/// ordered, disjoint clusters. Runs the two-in-A, two-in-B and two-in-C
/// passes; cycles with two vertices in each of two clusters are excluded by
/// the pairwise orderings, and three vertices in one clique would give a chord.
pub fn detect_triple(g: &Graph, table: &OrderingTable, a: &Cluster, b: &Cluster, c: &Cluster) -> Result<bool> {
    Ok(detect_two_in(g, table, a, b, c)? || detect_two_in(g, table, b, a, c)? || detect_two_in(g, table, c, a, b)?)
}
