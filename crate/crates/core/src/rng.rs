//! Small deterministic generator for sampled checks.
//!
//! Verification sweeps that sample ("16 random rho values", "100 random
//! products of transvections") must produce identical bytes on every run and
//! platform, so the crate uses a fixed-seed splitmix64 stream instead of an
//! OS-seeded RNG.

use crate::gf2::{GF2Mat, GF2Vec};

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    #[must_use]
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` (`bound > 0`).
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }

    pub fn bit(&mut self) -> u8 {
        (self.next_u64() & 1) as u8
    }

    pub fn vector(&mut self, len: usize) -> GF2Vec {
        let mut v = GF2Vec::zeros(len);
        for i in 0..len {
            v.set(i, self.bit());
        }
        v
    }

    pub fn nonzero_vector(&mut self, len: usize) -> GF2Vec {
        loop {
            let v = self.vector(len);
            if !v.is_zero() {
                return v;
            }
        }
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> GF2Mat {
        let mut m = GF2Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, self.bit());
            }
        }
        m
    }
}
