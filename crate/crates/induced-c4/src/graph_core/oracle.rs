//! Brute-force reference detectors.
//!
//! [`oracle_detect`] uses the fact that an induced 4-cycle exists iff some
//! non-adjacent pair has a common neighborhood that is not a clique: the pair
//! and two non-adjacent common neighbors form the cycle. [`naive_detect`]
//! enumerates all 4-subsets and shares no code with anything else.

use super::{bits, C4Witness, Graph};

/// Scans non-edges `(x, y)`, `x < y`, in lexicographic order and returns the
/// first one whose common neighborhood contains a non-adjacent pair `(u, v)`
/// (smallest `u`, then smallest `v`). The witness `x - u - y - v` is returned
/// in canonical form.
pub fn oracle_detect(g: &Graph) -> Option<C4Witness> {
    let n = g.n();
    let mut common = vec![0u64; g.words()];
    for x in 0..n {
        let rx = g.row(x);
        for y in x + 1..n {
            if g.has_edge(x, y) {
                continue;
            }
            bits::and_into(&mut common, rx, g.row(y));
            if bits::count(&common) < 2 {
                continue;
            }
            for u in bits::ones(&common) {
                let ru = g.row(u);
                // Common neighbors above u that u is not adjacent to.
                let hit = common
                    .iter()
                    .zip(ru)
                    .enumerate()
                    .find_map(|(i, (&c, &r))| {
                        let mut w = c & !r;
                        if i == u >> 6 {
                            w &= !(2u64 << (u & 63)).wrapping_sub(1);
                        } else if i < u >> 6 {
                            w = 0;
                        }
                        (w != 0).then(|| i * 64 + w.trailing_zeros() as usize)
                    });
                if let Some(v) = hit {
                    return Some(C4Witness::new(x, u, y, v).canonical());
                }
            }
        }
    }
    None
}

/// Enumerates every 4-subset and each of its three cyclic orders. Intended
/// for tests and small baselines only (`O(n^4)`).
pub fn naive_detect(g: &Graph) -> Option<C4Witness> {
    let n = g.n();
    let e = |u: usize, v: usize| g.has_edge(u, v);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    for (p, q, r, s) in [(a, b, c, d), (a, b, d, c), (a, c, b, d)] {
                        if e(p, q) && e(q, r) && e(r, s) && e(s, p) && !e(p, r) && !e(q, s) {
                            return Some(C4Witness::new(p, q, r, s).canonical());
                        }
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::super::{verify_witness, GraphSpec};
    use super::*;

    #[test]
    fn cycle_and_complete() {
        assert_eq!(
            oracle_detect(&Graph::cycle(4)),
            Some(C4Witness::new(0, 1, 2, 3))
        );
        assert_eq!(oracle_detect(&Graph::complete(4)), None);
        assert_eq!(oracle_detect(&Graph::new(0)), None);
        assert_eq!(oracle_detect(&Graph::cycle(5)), None);
    }

    #[test]
    fn agrees_with_subset_enumeration() {
        for seed in 0..200u64 {
            let p = ["0.2", "0.4", "0.5", "0.6", "0.8"][seed as usize % 5];
            let spec: GraphSpec = format!("gnp:n=12,p={p},seed={seed}").parse().unwrap();
            let g = spec.generate().unwrap().graph;
            let fast = oracle_detect(&g);
            assert_eq!(fast.is_some(), naive_detect(&g).is_some(), "seed {seed}");
            if let Some(w) = fast {
                assert!(verify_witness(&g, &w));
                assert_eq!(w, w.canonical());
            }
        }
    }

    #[test]
    fn finds_pairs_across_word_boundaries() {
        let mut g = Graph::new(200);
        for (u, v) in [(3, 70), (70, 150), (150, 199), (199, 3)] {
            g.add_edge(u, v);
        }
        let w = oracle_detect(&g).unwrap();
        assert_eq!(w, C4Witness::new(3, 70, 150, 199));
    }
}
