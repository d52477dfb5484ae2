//! Seeded 64-bit generator for reproducible test instances.
//!
//! SplitMix64: state advances by the golden-ratio increment
//! 0x9E3779B97F4A7C15 and each output is finalized with the
//! murmur-style mixers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB.
//! The sequence is fully determined by the seed, so independent
//! reimplementations can reproduce every random instance bit for bit.

use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1), using the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [-1, 1).
    pub fn next_unit(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }

    pub fn next_complex(&mut self) -> Complex64 {
        let re = self.next_unit();
        let im = self.next_unit();
        Complex64::new(re, im)
    }

    pub fn next_below(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        (self.next_u64() % bound as u64) as usize
    }
}
