//! Seeded instance families for tests, the self-test command, and benches.

use crate::graph_core::rng::CounterRng;
use crate::graph_core::Graph;
use crate::orderings::Cluster;

/// Disjoint cliques of the given sizes (ids `0..`, contiguous vertex ranges)
/// whose cross edges follow random nested labels, so that every pair of
/// cliques is ordered. Labels are drawn from `0..=label_range`.
///
/// With `flips > 0`, that many random vertex pairs from different cliques
/// are toggled afterwards, which usually destroys some of the orderings.
pub fn ordered_clusters(sizes: &[usize], label_range: u64, flips: usize, seed: u64) -> (Graph, Vec<Cluster>) {
    let n: usize = sizes.iter().sum();
    let mut rng = CounterRng::new(seed, 17);
    let mut g = Graph::new(n);
    let mut clusters = Vec::with_capacity(sizes.len());
    let mut owner = Vec::with_capacity(n);
    let mut start = 0;
    for (id, &s) in sizes.iter().enumerate() {
        for u in start..start + s {
            owner.push(id);
            for v in u + 1..start + s {
                g.add_edge(u, v);
            }
        }
        clusters.push(Cluster::new(id, 0, (start..start + s).collect()));
        start += s;
    }
    for i in 0..sizes.len() {
        for j in i + 1..sizes.len() {
            let f: Vec<u64> = (0..sizes[i]).map(|_| rng.below(label_range + 1)).collect();
            let h: Vec<u64> = (0..sizes[j]).map(|_| rng.below(label_range + 1)).collect();
            for (x, &u) in clusters[i].vertices.iter().enumerate() {
                for (y, &v) in clusters[j].vertices.iter().enumerate() {
                    if f[x] <= h[y] {
                        g.add_edge(u, v);
                    }
                }
            }
        }
    }
    if n >= 2 && sizes.len() >= 2 {
        let mut done = 0;
        while done < flips {
            let u = rng.below(n as u64) as usize;
            let v = rng.below(n as u64) as usize;
            if owner[u] != owner[v] {
                let present = g.has_edge(u, v);
                g.set_edge(u, v, !present);
                done += 1;
            }
        }
    }
    (g, clusters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::oracle_detect;

    #[test]
    fn unflipped_pairs_are_c4_free() {
        for seed in 0..50 {
            let (g, cl) = ordered_clusters(&[3, 4], 4, 0, seed);
            assert!(oracle_detect(&g).is_none());
            assert!(cl.iter().all(|c| g.is_clique(&c.vertices)));
        }
    }
}
