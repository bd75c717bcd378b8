//! Clique extraction in dense graphs.
//!
//! On `G[R]` with average degree `d`, either returns a clique of size at
//! least `d^2 / (16 |R|)`, a single vertex when `d <= 4 sqrt(|R|)`, or an
//! induced 4-cycle found as a non-clique common neighborhood of two
//! non-adjacent vertices.

use super::DecompConfig;
use crate::graph_core::{bits, C4Witness, Graph};

/// Result of [`extract_clique`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extraction {
    Found(C4Witness),
    /// Sorted vertex ids of a verified clique.
    Clique(Vec<usize>),
}

/// Runs the extraction on `G[r]`; `r` must be non-empty and sorted.
pub fn extract_clique(g: &Graph, r: &[usize], cfg: &DecompConfig) -> Extraction {
    assert!(!r.is_empty(), "extract_clique needs a non-empty vertex set");
    let n = g.n();
    let m = r.len();
    let r_mask = bits::from_ids(n, r.iter().copied());
    let mut deg = vec![0usize; n];
    for &v in r {
        deg[v] = bits::and_count(g.row(v), &r_mask);
    }
    let d = r.iter().map(|&v| deg[v]).sum::<usize>() as f64 / m as f64;
    if d <= 4.0 * (m as f64).sqrt() {
        return Extraction::Clique(vec![r[0]]);
    }
    let delta = d * d / (16.0 * m as f64);

    // Peel vertices of degree at most prune * d.
    let cut = cfg.prune * d;
    let mut alive = r_mask.clone();
    let mut queued = vec![false; n];
    let mut stack: Vec<usize> = r.iter().copied().filter(|&v| deg[v] as f64 <= cut).collect();
    for &v in &stack {
        queued[v] = true;
    }
    let mut scratch = vec![0u64; g.words()];
    while let Some(v) = stack.pop() {
        bits::clear(&mut alive, v);
        bits::and_into(&mut scratch, g.row(v), &alive);
        for u in bits::ones(&scratch) {
            deg[u] -= 1;
            if !queued[u] && deg[u] as f64 <= cut {
                queued[u] = true;
                stack.push(u);
            }
        }
    }
    let core: Vec<usize> = bits::ones(&alive).collect();
    if core.is_empty() {
        return Extraction::Clique(vec![r[0]]);
    }
    let nv = core.len() as f64;

    let mut in_i = vec![0u64; g.words()];
    extend_independent(g, &core, &mut in_i);
    while (bits::count(&in_i) as f64) < 4.0 * nv / d {
        // U(x): vertices outside I whose only neighbor in I is x.
        let mut unique: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &v in &core {
            if bits::test(&in_i, v) {
                continue;
            }
            bits::and_into(&mut scratch, g.row(v), &in_i);
            let mut it = bits::ones(&scratch);
            if let (Some(x), None) = (it.next(), it.next()) {
                unique[x].push(v);
            }
        }
        let pick = bits::ones(&in_i).find(|&x| unique[x].len() as f64 >= d / 8.0 - 1.0);
        match pick {
            Some(x) => {
                let u_x = &unique[x];
                let s = &u_x[..u_x.len().min(delta.ceil() as usize).max(1)];
                match g.first_non_adjacent_pair(s) {
                    None => return Extraction::Clique(s.to_vec()),
                    Some((u, v)) => {
                        bits::clear(&mut in_i, x);
                        bits::set(&mut in_i, u);
                        bits::set(&mut in_i, v);
                        extend_independent(g, &core, &mut in_i);
                    }
                }
            }
            None => {
                let members: Vec<usize> = bits::ones(&in_i).collect();
                return common_neighborhood_step(g, &members, &alive, &r_mask);
            }
        }
    }
    let members: Vec<usize> = bits::ones(&in_i).collect();
    let size = ((4.0 * nv / d).ceil() as usize).clamp(2, members.len().max(2));
    common_neighborhood_step(g, &members[..size.min(members.len())], &alive, &r_mask)
}

/// Greedy extension to a maximal independent set of `G[core]`, scanning
/// vertices in ascending id order.
fn extend_independent(g: &Graph, core: &[usize], in_i: &mut [u64]) {
    for &v in core {
        if !bits::test(in_i, v) && bits::and_count(g.row(v), in_i) == 0 {
            bits::set(in_i, v);
        }
    }
}

/// Picks the pair of `members` with the largest co-degree inside `alive`
/// (first such pair on ties) and returns its common neighborhood within
/// `r_mask` if it is a clique, or the induced 4-cycle it contains.
fn common_neighborhood_step(g: &Graph, members: &[usize], alive: &[u64], r_mask: &[u64]) -> Extraction {
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            let c = bits::and3_count(g.row(x), g.row(y), alive);
            if best.is_none_or(|(b, _, _)| c > b) {
                best = Some((c, x, y));
            }
        }
    }
    let Some((_, x, y)) = best else {
        return Extraction::Clique(vec![members[0]]);
    };
    let mut common = vec![0u64; g.words()];
    bits::and_into(&mut common, g.row(x), g.row(y));
    let z: Vec<usize> = bits::ones(&common).filter(|&v| bits::test(r_mask, v)).collect();
    if z.is_empty() {
        return Extraction::Clique(vec![x]);
    }
    match g.first_non_adjacent_pair(&z) {
        Some((u, v)) => Extraction::Found(C4Witness::new(x, u, y, v).canonical()),
        None => Extraction::Clique(z),
    }
}
