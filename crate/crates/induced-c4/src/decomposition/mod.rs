//! Decomposition of the vertex set into levels of verified cliques with
//! bounded common neighborhoods.
//!
//! Level `ℓ` holds cliques of size about `n / 2^ℓ`. Levels run from
//! `L = ⌊H / 2⌋` to `H = ⌊log2 n⌋`; level `H` is made of singletons. For every
//! non-edge `(x, y)` and `ℓ > L` the table `N_ℓ(x, y)` lists the common
//! neighbors of `x` and `y` inside level `ℓ`.

pub mod extract;
mod layers;
mod low;

pub use extract::{extract_clique, Extraction};
pub use layers::{decompose_layers, Decomposition, LayeredDecomposition};
pub use low::{
    decompose_large, decompose_low, split_clique, LargeOutcome, LowDecomposition, LowOutcome, NeighborhoodTable,
};

use crate::error::{contract, Result};

/// Constants of the decomposition.
///
/// Level `ℓ` clusters have size in `(lo * n / 2^ℓ, hi * n / 2^ℓ]`; the large
/// cluster step stops once the remainder has fewer than
/// `c_sparse * n^{3/2} * Δ^{1/2}` edges; table entries satisfy
/// `|N_ℓ(x, y)| <= c_nbr * n / 2^ℓ`; graphs with fewer than `n0` vertices go
/// to the brute-force oracle; clique extraction peels vertices of degree at
/// most `prune * d`.
#[derive(Clone, Debug, PartialEq)]
pub struct DecompConfig {
    pub lo: f64,
    pub hi: f64,
    pub c_sparse: f64,
    pub c_nbr: f64,
    pub n0: usize,
    pub prune: f64,
}

impl Default for DecompConfig {
    fn default() -> Self {
        Self { lo: 0.25, hi: 2.0, c_sparse: 4.0, c_nbr: 2.0, n0: 64, prune: 0.5 }
    }
}

impl DecompConfig {
    /// Rejects non-positive constants and an empty band.
    pub fn validate(&self) -> Result<()> {
        let positive = [self.lo, self.hi, self.c_sparse, self.c_nbr, self.prune];
        if positive.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return contract(format!("decomposition constants must be positive: {self:?}"));
        }
        if self.lo >= self.hi {
            return contract(format!("band lower multiplier {} is not below {}", self.lo, self.hi));
        }
        Ok(())
    }
}

/// `(L, H)` with `H = ⌊log2 n⌋` and `L = ⌊H / 2⌋` (both 0 for `n <= 1`).
pub fn level_bounds(n: usize) -> (usize, usize) {
    let h = if n <= 1 { 0 } else { n.ilog2() as usize };
    (h / 2, h)
}

/// `n / 2^ℓ` as a float.
pub fn level_scale(n: usize, level: usize) -> f64 {
    n as f64 / 2f64.powi(level as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_bounds_follow_floor_log() {
        assert_eq!(level_bounds(0), (0, 0));
        assert_eq!(level_bounds(1), (0, 0));
        assert_eq!(level_bounds(3), (0, 1));
        assert_eq!(level_bounds(64), (3, 6));
        assert_eq!(level_bounds(255), (3, 7));
        assert_eq!(level_bounds(256), (4, 8));
        assert_eq!(level_bounds(1 << 13), (6, 13));
    }

    #[test]
    fn config_validation() {
        assert!(DecompConfig::default().validate().is_ok());
        assert!(DecompConfig { lo: 2.0, ..DecompConfig::default() }.validate().is_err());
        assert!(DecompConfig { c_nbr: 0.0, ..DecompConfig::default() }.validate().is_err());
        assert!(DecompConfig { prune: f64::NAN, ..DecompConfig::default() }.validate().is_err());
    }
}
