//! Witness search by repeated detection on unions of vertex parts.

use super::detect;
use crate::decomposition::DecompConfig;
use crate::error::{contract, Result};
use crate::graph_core::{oracle_detect, C4Witness, Graph};

/// Number of parts the vertex set is split into at each step.
const PARTS: usize = 8;

/// Returns a verified induced 4-cycle iff [`detect`] reports one.
///
/// Splits the vertices into 8 contiguous id ranges of `⌈n / 8⌉`, runs
/// [`detect`] on the subgraph induced by each union of up to four parts (in
/// lexicographic order of part-index quadruples, skipping unions already
/// tried), and recurses into the first positive union. Graphs with at most
/// 8 vertices are searched directly.
pub fn find(g: &Graph, cfg: &DecompConfig) -> Result<Option<C4Witness>> {
    if !detect(g, cfg).found {
        return Ok(None);
    }
    let ids: Vec<usize> = (0..g.n()).collect();
    search(g, ids, cfg).map(Some)
}

/// `ids` induces a subgraph of `g` known to contain an induced 4-cycle.
fn search(g: &Graph, mut ids: Vec<usize>, cfg: &DecompConfig) -> Result<C4Witness> {
    loop {
        let sub = g.induced(&ids);
        if ids.len() <= PARTS {
            return match oracle_detect(&sub) {
                Some(w) => Ok(w.map(&ids).canonical()),
                None => contract(format!("no induced 4-cycle among {ids:?} after a positive detection")),
            };
        }
        let size = ids.len().div_ceil(PARTS);
        let part = |i: usize| &ids[(i * size).min(ids.len())..((i + 1) * size).min(ids.len())];
        let mut tried = [false; 1 << PARTS];
        let mut next = None;
        'combos: for combo in 0..PARTS.pow(4) {
            let idx = [combo >> 9 & 7, combo >> 6 & 7, combo >> 3 & 7, combo & 7];
            let mask = idx.iter().filter(|&&i| !part(i).is_empty()).fold(0usize, |m, &i| m | 1 << i);
            if mask == 0 || std::mem::replace(&mut tried[mask], true) {
                continue;
            }
            let union: Vec<usize> = (0..PARTS).filter(|i| mask >> i & 1 == 1).flat_map(|i| part(i).iter().copied()).collect();
            let local: Vec<usize> = union.iter().map(|&v| ids.binary_search(&v).expect("union of parts")).collect();
            if detect(&sub.induced(&local), cfg).found {
                next = Some(union);
                break 'combos;
            }
        }
        match next {
            Some(union) => ids = union,
            None => return contract(format!("no union of parts of {} vertices contains the detected cycle", ids.len())),
        }
    }
}
