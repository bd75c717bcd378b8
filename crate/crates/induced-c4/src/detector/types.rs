//! Level types of 3- and 4-clustered cycles and the case each one is
//! dispatched to.
//!
//! Every threshold compares a level sum against a real multiple of
//! `log2 n`; the comparisons are made exact by raising both sides to powers
//! of two, e.g. `6 (t1 + t3) > 11 log2 n` becomes `2^{6 (t1 + t3)} > n^11`.
//! A type meeting several conditions goes to the first listed case.

use num_bigint::BigUint;
use std::fmt;

/// `2^{a * s}` compared with `n^b`.
fn pow2_cmp(a: usize, s: usize, n: usize, b: u32) -> std::cmp::Ordering {
    let lhs = BigUint::from(1u8) << (a * s);
    let rhs = BigUint::from(n).pow(b);
    lhs.cmp(&rhs)
}

/// `a * s > b * log2 n`.
fn above(a: usize, s: usize, n: usize, b: u32) -> bool {
    pow2_cmp(a, s, n, b).is_gt()
}

/// `a * s >= b * log2 n`.
fn at_least(a: usize, s: usize, n: usize, b: u32) -> bool {
    pow2_cmp(a, s, n, b).is_ge()
}

/// Levels `(t1, t2, t3)` of a cycle `(ṽ1, v1, v2, v3)` where `v1` and `ṽ1`
/// share a cluster at level `t1`; normalized so that `t2 <= t3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LevelType3(pub [usize; 3]);

/// Levels `(t1, t2, t3, t4)` of a cycle `(v1, v2, v3, v4)`; normalized so
/// that `t1` is minimal and `t2 <= t4`. Levels may repeat: distinct clusters
/// can share a level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LevelType4(pub [usize; 4]);

/// Algorithm chosen for a 3-type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case3 {
    /// `t2 >= L + 1`: intersect the cluster collections of 2-paths.
    PathCollections,
    /// `t1 + t3 > (3/2) log n`: enumerate common neighbors of non-edges
    /// `(ṽ1, v2)`.
    CommonNeighbors,
    /// `t1 + t2 + t3 - min <= (3/2) log n`: test every cluster triple.
    ClusterTriples,
}

/// Algorithm chosen for a 4-type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case4 {
    /// 1: every cluster quadruple.
    ClusterQuadruples,
    /// 2(a): non-edges `(v2, v4)`, common neighbors at `t1` and `t3`.
    OppositeHigh13,
    /// 2(b): non-edges `(v1, v3)`, common neighbors at `t2` and `t4`.
    OppositeHigh24,
    /// 3(a): degree against co-degree in clusters of level `t1`.
    Codegree1,
    /// 3(b): degree against co-degree in clusters of level `t2`.
    Codegree2,
    /// 4(a): as 2(a) under the weaker threshold.
    OppositeMid13,
    /// 4(b): as 2(b) under the weaker threshold.
    OppositeMid24,
}

impl Case4 {
    /// Case label as used in reports: `1`, `2a`, ..., `4b`.
    pub fn label(self) -> &'static str {
        match self {
            Case4::ClusterQuadruples => "1",
            Case4::OppositeHigh13 => "2a",
            Case4::OppositeHigh24 => "2b",
            Case4::Codegree1 => "3a",
            Case4::Codegree2 => "3b",
            Case4::OppositeMid13 => "4a",
            Case4::OppositeMid24 => "4b",
        }
    }
}

impl LevelType3 {
    /// Every normalized 3-type with levels in `[low, high]`.
    pub fn all(low: usize, high: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for t1 in low..=high {
            for t2 in low..=high {
                for t3 in t2..=high {
                    out.push(Self([t1, t2, t3]));
                }
            }
        }
        out
    }

    /// The case for this type in a graph on `n` vertices with lowest level
    /// `low`, or `None` if no case applies.
    pub fn case(self, n: usize, low: usize) -> Option<Case3> {
        let [t1, t2, t3] = self.0;
        let min = t1.min(t2).min(t3);
        if t2 > low {
            Some(Case3::PathCollections)
        } else if above(2, t1 + t3, n, 3) {
            Some(Case3::CommonNeighbors)
        } else if !above(2, t1 + t2 + t3 - min, n, 3) {
            Some(Case3::ClusterTriples)
        } else {
            None
        }
    }
}

impl LevelType4 {
    /// Every normalized 4-type with levels in `[low, high]`.
    pub fn all(low: usize, high: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for t1 in low..=high {
            for t2 in t1..=high {
                for t3 in t1..=high {
                    for t4 in t2..=high {
                        out.push(Self([t1, t2, t3, t4]));
                    }
                }
            }
        }
        out
    }

    /// Sum of the levels minus the smallest one.
    pub fn spread(self) -> usize {
        self.0.iter().sum::<usize>() - self.0.iter().min().copied().unwrap_or(0)
    }

    /// The case for this type in a graph on `n` vertices, or `None` if no
    /// case applies.
    pub fn case(self, n: usize) -> Option<Case4> {
        let [t1, t2, t3, t4] = self.0;
        Some(if !above(6, self.spread(), n, 11) {
            Case4::ClusterQuadruples
        } else if above(6, t1 + t3, n, 11) {
            Case4::OppositeHigh13
        } else if above(6, t2 + t4, n, 11) {
            Case4::OppositeHigh24
        } else if t3 >= t1 && at_least(6, t3 - t1, n, 1) {
            Case4::Codegree1
        } else if t4 >= t2 && at_least(6, t4 - t2, n, 1) {
            Case4::Codegree2
        } else if above(6, t1 + t3, n, 7) {
            Case4::OppositeMid13
        } else if above(6, t2 + t4, n, 7) {
            Case4::OppositeMid24
        } else {
            return None;
        })
    }
}

impl fmt::Display for LevelType3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for LevelType4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}
