//! Counter-based pseudo-random numbers used by every generator.
//!
//! The value for `(seed, stream, counter)` is
//!
//! ```text
//! mix64(seed + mix64(stream) + (counter + 1) * 0x9E3779B97F4A7C15)   (mod 2^64)
//! ```
//!
//! where `mix64` is the SplitMix64 finalizer:
//!
//! ```text
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! z ^ (z >> 31)
//! ```
//!
//! Being a pure function of its inputs, it reproduces across platforms and
//! languages. `gnp` draws the pair `(u, v)`, `u < v`, from stream 0 with
//! counter `u * n + v`.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The value at position `counter` of stream `stream` under `seed`.
#[inline]
pub fn counter_u64(seed: u64, stream: u64, counter: u64) -> u64 {
    mix64(
        seed.wrapping_add(mix64(stream))
            .wrapping_add(counter.wrapping_add(1).wrapping_mul(GOLDEN)),
    )
}

/// Sequential reader over one stream.
#[derive(Clone, Debug)]
pub struct CounterRng {
    seed: u64,
    stream: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self {
            seed,
            stream,
            counter: 0,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let v = counter_u64(self.seed, self.stream, self.counter);
        self.counter += 1;
        v
    }

    /// Uniform integer in `0..bound` by rejection sampling; `bound > 0`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    /// `k` distinct values from `0..bound`, in draw order.
    pub fn distinct(&mut self, k: usize, bound: u64) -> Vec<u64> {
        assert!(k as u64 <= bound, "cannot draw {k} distinct values below {bound}");
        let mut out = Vec::with_capacity(k);
        while out.len() < k {
            let v = self.below(bound);
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }
}
