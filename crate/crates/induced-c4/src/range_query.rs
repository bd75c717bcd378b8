//! Static orthogonal range counting with witness retrieval in 1 to 4
//! dimensions.
//!
//! The structure is a layered range tree. A node on axis `k` stores its
//! points sorted by coordinate `k`, splits them in half into two children on
//! the same axis, and owns an associated tree over the same points on axis
//! `k + 1`. Nodes on the last axis keep the sorted coordinates plus a
//! segment tree of payload minima, so a 1-D query is two binary searches
//! and one range-minimum lookup. Subsets of at most [`LEAF_SIZE`] points are
//! scanned directly. A query decomposes its first-axis interval into
//! `O(log s)` canonical nodes and recurses into their associated trees,
//! giving `O(log^d s)` query time and `O(s log^(d-1) s)` space.
//!
//! Coordinates are [`ExtendedInt`]s: the sentinels `BOTTOM` and `TOP` are
//! `i64::MIN` and `i64::MAX`, and finite values must lie strictly between
//! them. Open bounds are turned into closed integer bounds before querying,
//! which is exact because every coordinate is an integer.

use crate::error::{Error, Result};
use std::fmt;

/// Subsets at most this large are answered by a linear scan.
pub const LEAF_SIZE: usize = 12;

/// Largest supported dimension.
pub const MAX_DIM: usize = 4;

/// Integer extended with `BOTTOM` below and `TOP` above every finite value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtendedInt(i64);

impl ExtendedInt {
    pub const BOTTOM: Self = Self(i64::MIN);
    pub const TOP: Self = Self(i64::MAX);

    /// Finite value; panics on the two reserved extremes.
    #[inline]
    pub fn finite(v: i64) -> Self {
        assert!(v != i64::MIN && v != i64::MAX, "{v} is reserved for a sentinel");
        Self(v)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self != Self::BOTTOM && self != Self::TOP
    }

    /// The finite value, if any.
    #[inline]
    pub fn value(self) -> Option<i64> {
        self.is_finite().then_some(self.0)
    }

    /// Raw encoding (sentinels included).
    #[inline]
    pub fn raw(self) -> i64 {
        self.0
    }
}

impl From<i64> for ExtendedInt {
    fn from(v: i64) -> Self {
        Self::finite(v)
    }
}

impl fmt::Debug for ExtendedInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::BOTTOM => f.write_str("BOTTOM"),
            Self::TOP => f.write_str("TOP"),
            Self(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Display for ExtendedInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Interval on one axis with independent open/closed ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxisRange {
    pub lo: ExtendedInt,
    pub lo_closed: bool,
    pub hi: ExtendedInt,
    pub hi_closed: bool,
}

impl AxisRange {
    /// Every value including the sentinels.
    pub const ALL: Self = Self {
        lo: ExtendedInt::BOTTOM,
        lo_closed: true,
        hi: ExtendedInt::TOP,
        hi_closed: true,
    };

    pub fn new(lo: ExtendedInt, lo_closed: bool, hi: ExtendedInt, hi_closed: bool) -> Self {
        Self { lo, lo_closed, hi, hi_closed }
    }

    /// `[v, TOP]`
    pub fn at_least(v: impl Into<ExtendedInt>) -> Self {
        Self { lo: v.into(), ..Self::ALL }
    }

    /// `(v, TOP]`
    pub fn greater_than(v: impl Into<ExtendedInt>) -> Self {
        Self { lo: v.into(), lo_closed: false, ..Self::ALL }
    }

    /// `[BOTTOM, v]`
    pub fn at_most(v: impl Into<ExtendedInt>) -> Self {
        Self { hi: v.into(), ..Self::ALL }
    }

    /// `[BOTTOM, v)`
    pub fn less_than(v: impl Into<ExtendedInt>) -> Self {
        Self { hi: v.into(), hi_closed: false, ..Self::ALL }
    }

    /// `[v, v]`
    pub fn exactly(v: impl Into<ExtendedInt>) -> Self {
        let v = v.into();
        Self::new(v, true, v, true)
    }

    /// Intersection of two ranges.
    pub fn intersect(self, other: Self) -> Self {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            std::cmp::Ordering::Less => (other.lo, other.lo_closed),
            std::cmp::Ordering::Greater => (self.lo, self.lo_closed),
            std::cmp::Ordering::Equal => (self.lo, self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            std::cmp::Ordering::Less => (self.hi, self.hi_closed),
            std::cmp::Ordering::Greater => (other.hi, other.hi_closed),
            std::cmp::Ordering::Equal => (self.hi, self.hi_closed && other.hi_closed),
        };
        Self { lo, lo_closed, hi, hi_closed }
    }

    /// Closed integer interval `[a, b]` equivalent to this range; `None` if empty.
    #[inline]
    fn closed(self) -> Option<(i64, i64)> {
        let a = if self.lo_closed { Some(self.lo.0) } else { self.lo.0.checked_add(1) };
        let b = if self.hi_closed { Some(self.hi.0) } else { self.hi.0.checked_sub(1) };
        match (a, b) {
            (Some(a), Some(b)) if a <= b => Some((a, b)),
            _ => None,
        }
    }

    pub fn contains(self, v: ExtendedInt) -> bool {
        self.closed().is_some_and(|(a, b)| a <= v.0 && v.0 <= b)
    }
}

/// Axis-parallel box: one [`AxisRange`] per axis (axes past the structure's
/// dimension are ignored).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RangeBox {
    pub axes: [AxisRange; MAX_DIM],
}

impl RangeBox {
    /// Box containing everything.
    pub const UNIVERSE: Self = Self { axes: [AxisRange::ALL; MAX_DIM] };

    /// Universe box with `axis` restricted to `range`.
    pub fn with(mut self, axis: usize, range: AxisRange) -> Self {
        self.axes[axis] = self.axes[axis].intersect(range);
        self
    }

    pub fn contains(&self, d: usize, coords: &[ExtendedInt]) -> bool {
        (0..d).all(|k| self.axes[k].contains(coords[k]))
    }
}

/// Point with up to four coordinates and a vertex-id payload.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Point {
    pub coords: [ExtendedInt; MAX_DIM],
    pub payload: usize,
}

impl Point {
    /// Point from the first `coords.len()` coordinates; the rest are BOTTOM.
    pub fn new(coords: &[ExtendedInt], payload: usize) -> Self {
        let mut c = [ExtendedInt::BOTTOM; MAX_DIM];
        c[..coords.len()].copy_from_slice(coords);
        Self { coords: c, payload }
    }
}

/// Search direction for [`RangePointSet::extremal_on_image`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Min,
    Max,
}

/// Static range-counting structure over a fixed point set.
#[derive(Clone, Debug)]
pub struct RangePointSet {
    d: usize,
    len: usize,
    root: Option<Node>,
}

#[derive(Clone, Debug)]
struct Node {
    axis: usize,
    /// Coordinates on `axis`, ascending.
    keys: Vec<i64>,
    kind: NodeKind,
}

#[derive(Clone, Debug)]
enum NodeKind {
    Scan(Vec<Point>),
    /// Last axis: segment tree of payload minima over `keys` order.
    Last(Vec<usize>),
    Inner {
        left: Box<Node>,
        right: Box<Node>,
        assoc: Box<Node>,
    },
}

#[derive(Clone, Copy)]
struct Hit {
    count: usize,
    min_payload: usize,
}

impl Hit {
    const NONE: Self = Self { count: 0, min_payload: usize::MAX };

    #[inline]
    fn merge(&mut self, other: Hit) {
        self.count += other.count;
        self.min_payload = self.min_payload.min(other.min_payload);
    }
}

fn build_node(mut pts: Vec<Point>, axis: usize, d: usize) -> Node {
    pts.sort_unstable_by_key(|p| (p.coords[axis], p.payload));
    let keys: Vec<i64> = pts.iter().map(|p| p.coords[axis].0).collect();
    if pts.len() <= LEAF_SIZE {
        return Node { axis, keys, kind: NodeKind::Scan(pts) };
    }
    if axis + 1 == d {
        let len = pts.len();
        let mut seg = vec![usize::MAX; 2 * len];
        for (i, p) in pts.iter().enumerate() {
            seg[len + i] = p.payload;
        }
        for i in (1..len).rev() {
            seg[i] = seg[2 * i].min(seg[2 * i + 1]);
        }
        return Node { axis, keys, kind: NodeKind::Last(seg) };
    }
    let assoc = Box::new(build_node(pts.clone(), axis + 1, d));
    let right_pts = pts.split_off(pts.len() / 2);
    let left = Box::new(build_node(pts, axis, d));
    let right = Box::new(build_node(right_pts, axis, d));
    Node { axis, keys, kind: NodeKind::Inner { left, right, assoc } }
}

impl Node {
    fn query(&self, bounds: &[(i64, i64); MAX_DIM], d: usize) -> Hit {
        let (a, b) = bounds[self.axis];
        let (first, last) = (self.keys[0], *self.keys.last().unwrap());
        if last < a || first > b {
            return Hit::NONE;
        }
        match &self.kind {
            NodeKind::Scan(pts) => {
                let mut hit = Hit::NONE;
                for p in pts {
                    if (self.axis..d).all(|k| {
                        let (lo, hi) = bounds[k];
                        lo <= p.coords[k].0 && p.coords[k].0 <= hi
                    }) {
                        hit.merge(Hit { count: 1, min_payload: p.payload });
                    }
                }
                hit
            }
            NodeKind::Last(seg) => {
                let lo = self.keys.partition_point(|&k| k < a);
                let hi = self.keys.partition_point(|&k| k <= b);
                if lo >= hi {
                    return Hit::NONE;
                }
                Hit { count: hi - lo, min_payload: seg_min(seg, lo, hi) }
            }
            NodeKind::Inner { left, right, assoc } => {
                if a <= first && last <= b {
                    return assoc.query(bounds, d);
                }
                let mut hit = left.query(bounds, d);
                hit.merge(right.query(bounds, d));
                hit
            }
        }
    }
}

/// Minimum over leaves `lo..hi` of an iterative segment tree.
fn seg_min(seg: &[usize], lo: usize, hi: usize) -> usize {
    let n = seg.len() / 2;
    let (mut l, mut r) = (lo + n, hi + n);
    let mut best = usize::MAX;
    while l < r {
        if l & 1 == 1 {
            best = best.min(seg[l]);
            l += 1;
        }
        if r & 1 == 1 {
            r -= 1;
            best = best.min(seg[r]);
        }
        l >>= 1;
        r >>= 1;
    }
    best
}

impl RangePointSet {
    /// Builds from explicit coordinate vectors, checking each has length `d`.
    pub fn build(d: usize, points: &[(Vec<ExtendedInt>, usize)]) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&d) {
            return Err(Error::Dimension { expected: d, got: d });
        }
        let mut pts = Vec::with_capacity(points.len());
        for (coords, payload) in points {
            if coords.len() != d {
                return Err(Error::Dimension { expected: d, got: coords.len() });
            }
            pts.push(Point::new(coords, *payload));
        }
        Ok(Self::from_points(d, pts))
    }

    /// Builds from fixed-width points; coordinates past `d` are ignored.
    pub fn from_points(d: usize, points: Vec<Point>) -> Self {
        assert!((1..=MAX_DIM).contains(&d), "dimension {d} unsupported");
        let len = points.len();
        let root = (len > 0).then(|| build_node(points, 0, d));
        Self { d, len, root }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn hit(&self, bx: &RangeBox) -> Hit {
        let Some(root) = &self.root else { return Hit::NONE };
        let mut bounds = [(0i64, 0i64); MAX_DIM];
        for k in 0..self.d {
            match bx.axes[k].closed() {
                Some(ab) => bounds[k] = ab,
                None => return Hit::NONE,
            }
        }
        root.query(&bounds, self.d)
    }

    /// Number of points in the box and the smallest payload among them.
    pub fn count_and_witness(&self, bx: &RangeBox) -> (usize, Option<usize>) {
        let hit = self.hit(bx);
        (hit.count, (hit.count > 0).then_some(hit.min_payload))
    }

    /// Number of points in the box.
    pub fn count(&self, bx: &RangeBox) -> usize {
        self.hit(bx).count
    }

    /// Smallest (`Min`) or largest (`Max`) candidate value `v` such that a
    /// point inside `bx` has coordinate exactly `v` on `target`, together
    /// with the smallest payload among such points.
    ///
    /// Binary search over `candidates` (ascending) with one count query per
    /// step. When every qualifying target coordinate is a candidate, as in
    /// all callers, this takes `O(log |candidates|)` queries.
    pub fn extremal_on_image(
        &self,
        bx: &RangeBox,
        target: usize,
        dir: Direction,
        candidates: &[ExtendedInt],
    ) -> Option<(ExtendedInt, usize)> {
        assert!(target < self.d, "target axis {target} outside dimension {}", self.d);
        let mut window = *bx;
        loop {
            let range = window.axes[target];
            // Candidates inside the current target window.
            let lo = candidates.partition_point(|&c| c < range.lo || (c == range.lo && !range.lo_closed));
            let hi = candidates.partition_point(|&c| c < range.hi || (c == range.hi && range.hi_closed));
            if lo >= hi {
                return None;
            }
            let cands = &candidates[lo..hi];
            // Find the extreme index whose half-line still holds a point.
            let probe = |i: usize| {
                let half = match dir {
                    Direction::Max => AxisRange::at_least(cands[i]),
                    Direction::Min => AxisRange::at_most(cands[i]),
                };
                self.count(&window.with(target, half)) > 0
            };
            let idx = match dir {
                Direction::Max => {
                    if !probe(0) {
                        return None;
                    }
                    // probe is true on a prefix; find its last index.
                    let (mut good, mut bad) = (0usize, cands.len());
                    while bad - good > 1 {
                        let mid = (good + bad) / 2;
                        if probe(mid) { good = mid } else { bad = mid }
                    }
                    good
                }
                Direction::Min => {
                    let last = cands.len() - 1;
                    if !probe(last) {
                        return None;
                    }
                    // probe is true on a suffix; find its first index.
                    let (mut bad, mut good) = (None::<usize>, last);
                    loop {
                        let lo_i = bad.map_or(0, |b| b + 1);
                        if lo_i >= good {
                            break;
                        }
                        let mid = (lo_i + good) / 2;
                        if probe(mid) { good = mid } else { bad = Some(mid) }
                    }
                    good
                }
            };
            let v = cands[idx];
            let (count, payload) = self.count_and_witness(&window.with(target, AxisRange::exactly(v)));
            if count > 0 {
                return Some((v, payload.unwrap()));
            }
            // Qualifying points lie strictly beyond v but off the candidate
            // list; continue on the other side of v.
            window = match dir {
                Direction::Max => window.with(target, AxisRange::less_than(v)),
                Direction::Min => window.with(target, AxisRange::greater_than(v)),
            };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(v: i64) -> ExtendedInt {
        ExtendedInt::finite(v)
    }

    fn naive(points: &[Point], d: usize, bx: &RangeBox) -> (usize, Option<usize>) {
        let inside: Vec<usize> = points
            .iter()
            .filter(|p| bx.contains(d, &p.coords))
            .map(|p| p.payload)
            .collect();
        (inside.len(), inside.iter().copied().min())
    }

    #[test]
    fn empty_and_small_examples() {
        let s = RangePointSet::build(2, &[]).unwrap();
        assert_eq!(s.count_and_witness(&RangeBox::UNIVERSE), (0, None));
        let s = RangePointSet::build(2, &[(vec![e(1), e(1)], 0), (vec![e(2), e(3)], 1)]).unwrap();
        let bx = RangeBox::UNIVERSE
            .with(0, AxisRange::new(e(1), true, e(2), true))
            .with(1, AxisRange::new(e(1), true, e(2), true));
        assert_eq!(s.count_and_witness(&bx), (1, Some(0)));
        let open = RangeBox::UNIVERSE
            .with(0, AxisRange::new(ExtendedInt::BOTTOM, false, ExtendedInt::TOP, true))
            .with(1, AxisRange::new(ExtendedInt::BOTTOM, false, ExtendedInt::TOP, true));
        assert_eq!(s.count(&open), 2);
        let five = RangeBox::UNIVERSE.with(0, AxisRange::exactly(e(5)));
        assert_eq!(s.count(&five), 0);
    }

    #[test]
    fn dimension_errors() {
        assert!(RangePointSet::build(2, &[(vec![e(1)], 0)]).is_err());
        assert!(RangePointSet::build(5, &[]).is_err());
        assert!(RangePointSet::build(0, &[]).is_err());
    }

    #[test]
    fn sentinel_coordinates_respect_open_bounds() {
        let s = RangePointSet::build(
            1,
            &[(vec![ExtendedInt::BOTTOM], 3), (vec![e(0)], 4), (vec![ExtendedInt::TOP], 5)],
        )
        .unwrap();
        let open = RangeBox::UNIVERSE.with(
            0,
            AxisRange::new(ExtendedInt::BOTTOM, false, ExtendedInt::TOP, false),
        );
        assert_eq!(s.count_and_witness(&open), (1, Some(4)));
        assert_eq!(s.count(&RangeBox::UNIVERSE), 3);
        assert_eq!(
            s.count_and_witness(&RangeBox::UNIVERSE.with(0, AxisRange::greater_than(e(0)))),
            (1, Some(5))
        );
    }

    #[test]
    fn extremal_examples() {
        let s = RangePointSet::build(2, &[(vec![e(3), e(7)], 9)]).unwrap();
        let bx = RangeBox::UNIVERSE.with(0, AxisRange::at_least(e(1)));
        let cands = [e(5), e(7), e(9)];
        assert_eq!(s.extremal_on_image(&bx, 1, Direction::Min, &cands), Some((e(7), 9)));
        assert_eq!(s.extremal_on_image(&bx, 1, Direction::Max, &cands), Some((e(7), 9)));
        let empty = RangePointSet::build(2, &[]).unwrap();
        assert_eq!(empty.extremal_on_image(&bx, 1, Direction::Min, &cands), None);
        // Off-image coordinate is skipped rather than misreported.
        let s = RangePointSet::build(1, &[(vec![e(4)], 1), (vec![e(8)], 2)]).unwrap();
        assert_eq!(
            s.extremal_on_image(&RangeBox::UNIVERSE, 0, Direction::Max, &[e(2), e(4), e(6)]),
            Some((e(4), 1))
        );
        assert_eq!(
            s.extremal_on_image(&RangeBox::UNIVERSE, 0, Direction::Min, &[e(6), e(8)]),
            Some((e(8), 2))
        );
    }

    fn arb_point(d: usize) -> impl Strategy<Value = Point> {
        (proptest::collection::vec(-6i64..6, d), 0usize..1000).prop_map(move |(c, p)| {
            let coords: Vec<ExtendedInt> = c
                .into_iter()
                .map(|v| match v {
                    -6 => ExtendedInt::BOTTOM,
                    5 => ExtendedInt::TOP,
                    v => e(v),
                })
                .collect();
            Point::new(&coords, p)
        })
    }

    fn arb_range() -> impl Strategy<Value = AxisRange> {
        (-7i64..7, any::<bool>(), -7i64..7, any::<bool>()).prop_map(|(a, ac, b, bc)| {
            let ext = |v: i64| match v {
                -7 => ExtendedInt::BOTTOM,
                6 => ExtendedInt::TOP,
                v => e(v),
            };
            AxisRange::new(ext(a), ac, ext(b), bc)
        })
    }

    proptest! {
        #[test]
        fn matches_naive_scan(
            d in 1usize..=4,
            seed_pts in proptest::collection::vec(arb_point(4), 0..90),
            ranges in proptest::collection::vec(arb_range(), 4),
        ) {
            let s = RangePointSet::from_points(d, seed_pts.clone());
            let mut bx = RangeBox::UNIVERSE;
            for (k, r) in ranges.iter().enumerate() {
                bx = bx.with(k, *r);
            }
            prop_assert_eq!(s.count_and_witness(&bx), naive(&seed_pts, d, &bx));
        }

        #[test]
        fn enlarging_never_decreases(
            pts in proptest::collection::vec(arb_point(3), 0..60),
            r in arb_range(),
        ) {
            let s = RangePointSet::from_points(3, pts);
            let small = RangeBox::UNIVERSE.with(1, r);
            prop_assert!(s.count(&small) <= s.count(&RangeBox::UNIVERSE));
        }

        #[test]
        fn extremal_matches_naive(
            pts in proptest::collection::vec(arb_point(2), 0..60),
            r in arb_range(),
            max in any::<bool>(),
        ) {
            let s = RangePointSet::from_points(2, pts.clone());
            let bx = RangeBox::UNIVERSE.with(0, r);
            let cands: Vec<ExtendedInt> = (-5..5).map(e).collect();
            let dir = if max { Direction::Max } else { Direction::Min };
            let mut best: Option<(ExtendedInt, usize)> = None;
            for p in &pts {
                let v = p.coords[1];
                if !bx.contains(2, &p.coords) || !cands.contains(&v) {
                    continue;
                }
                best = match best {
                    None => Some((v, p.payload)),
                    Some((bv, bp)) if bv == v => Some((v, bp.min(p.payload))),
                    Some((bv, _)) if (v > bv) == max => Some((v, p.payload)),
                    keep => keep,
                };
            }
            prop_assert_eq!(s.extremal_on_image(&bx, 1, dir, &cands), best);
        }
    }
}
