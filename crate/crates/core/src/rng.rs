//! Portable seeded sampling.
//!
//! Every random choice in the toolkit goes through [`SplitMix64`] so that a
//! seed reproduces the same splits, mixtures and shuffles on any platform and
//! in any implementation that follows the same recipe:
//!
//! * state advances by `0x9E3779B97F4A7C15` per draw, output mixed with the
//!   standard SplitMix64 finalizer;
//! * bounded integers use rejection sampling on the top of the 64-bit range,
//!   so `below(n)` is exactly uniform;
//! * sampling without replacement is a partial Fisher-Yates pass over
//!   `0..n`, swapping position `i` with `i + below(n - i)`.

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform integer in `0..bound`. `bound` must be non-zero.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "below() called with zero bound");
        // Largest multiple of `bound` that fits; reject draws past it.
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    /// A seeded permutation prefix: the first `k` entries of a Fisher-Yates
    /// shuffle of `0..n`.
    pub fn sample_indices(&mut self, n: usize, k: usize) -> Vec<usize> {
        assert!(k <= n, "cannot sample {k} of {n} without replacement");
        let mut pool: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = i + self.below((n - i) as u64) as usize;
            pool.swap(i, j);
        }
        pool.truncate(k);
        pool
    }

    /// Sorted variant of [`sample_indices`](Self::sample_indices), for
    /// subsampling that keeps the original relative order.
    pub fn sample_sorted(&mut self, n: usize, k: usize) -> Vec<usize> {
        let mut idx = self.sample_indices(n, k);
        idx.sort_unstable();
        idx
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        let n = items.len();
        for i in 0..n.saturating_sub(1) {
            let j = i + self.below((n - i) as u64) as usize;
            items.swap(i, j);
        }
    }
}
