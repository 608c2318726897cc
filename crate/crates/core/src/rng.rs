//! Seeded pseudo-random generation for tests, the selftest command and the
//! benchmark harness.
//!
//! The generator is pinned so that benchmark inputs are reproducible from a
//! seed alone: it is SplitMix64 with the usual constants. The state advances
//! by the 64-bit golden-ratio increment `0x9E3779B97F4A7C15` and each output
//! is the finalizer
//!
//! ```text
//! z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//! z ^= z >> 27; z *= 0x94D049BB133111EB;
//! z ^= z >> 31;
//! ```
//!
//! Random field elements are drawn as `next_u64() % p`, and random
//! polynomials draw their coefficients in ascending exponent order.

use crate::field::{FieldElem, PrimeModulus};
use crate::unipoly::UniPoly;

const GAMMA: u64 = 0x9E3779B97F4A7C15;

/// SplitMix64 generator with a fixed, documented state-advance and finalizer.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw in `[0, bound)` by plain modulo reduction. The slight
    /// modulo bias is irrelevant for test-input generation and keeps the
    /// draw reproducible from the documented u64 stream.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.next_u64() % bound
    }

    /// One residue in `[0, p)`.
    pub fn field_elem(&mut self, modulus: &PrimeModulus) -> FieldElem {
        self.next_below(modulus.p())
    }

    /// `len` residues, ascending exponent order.
    pub fn poly(&mut self, len: usize, modulus: &PrimeModulus) -> UniPoly {
        UniPoly::new((0..len).map(|_| self.field_elem(modulus)).collect())
    }
}
