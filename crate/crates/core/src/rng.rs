//! The random stream that drives an annealing run.
//!
//! Runs are reproducible across platforms: the generator is xoshiro256++
//! seeded through SplitMix64 (`SeedableRng::seed_from_u64`), vertex draws use Lemire's
//! multiply-shift rejection method on 32-bit outputs, and uniform reals take
//! the top 53 bits of a 64-bit output. None of these depend on pointer width
//! or on the `rand` crate's distribution internals.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

/// Uniform integer in `0..n` without modulo bias. `n` must be nonzero.
#[inline]
pub fn uniform_below<R: RngCore + ?Sized>(rng: &mut R, n: u32) -> u32 {
    debug_assert!(n > 0);
    let mut m = u64::from(rng.next_u32()) * u64::from(n);
    let mut low = m as u32;
    if low < n {
        let threshold = n.wrapping_neg() % n;
        while low < threshold {
            m = u64::from(rng.next_u32()) * u64::from(n);
            low = m as u32;
        }
    }
    (m >> 32) as u32
}

/// Uniform real in `[0, 1)` with 53 bits of precision.
#[inline]
pub fn unit_f64<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Seeded xoshiro256++ stream with the sampling helpers used by the annealer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnealRng(Xoshiro256PlusPlus);

impl AnnealRng {
    pub fn from_seed(seed: u64) -> Self {
        Self(Xoshiro256PlusPlus::seed_from_u64(seed))
    }

    pub fn vertex(&mut self, n: u32) -> u32 {
        uniform_below(&mut self.0, n)
    }

    pub fn unit(&mut self) -> f64 {
        unit_f64(&mut self.0)
    }
}

impl RngCore for AnnealRng {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }

    #[inline]
    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.0.fill_bytes(dst)
    }
}
