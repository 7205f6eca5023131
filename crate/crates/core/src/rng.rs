//! Seeded test-function generator.
//!
//! The generator contract is fixed so that reports are reproducible across
//! implementations:
//!
//! * state transition: `state += 0x9E3779B97F4A7C15`, then the SplitMix64
//!   finalizer `z = (z ^ z>>30) * 0xBF58476D1CE4E5B9`,
//!   `z = (z ^ z>>27) * 0x94D049BB133111EB`, `z ^ z>>31`;
//! * a uniform draw on `[-1, 1)` is `2 * (z >> 11) * 2^-53 - 1`;
//! * grid values are drawn in rank order, real part first, then imaginary part.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::group::GroupSpec;
use crate::spectral::GridFunction;

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

    /// Uniform on `[-1, 1)`.
    pub fn next_signed_unit(&mut self) -> f64 {
        let u = (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        2.0 * u - 1.0
    }

    /// Complex values with independent uniform parts, in rank order.
    pub fn grid_function(&mut self, spec: &GroupSpec) -> GridFunction {
        let values: Vec<Complex64> = (0..spec.size())
            .map(|_| {
                let re = self.next_signed_unit();
                let im = self.next_signed_unit();
                Complex64::new(re, im)
            })
            .collect();
        GridFunction::from_raw(spec, values)
    }
}

/// Random function with its Haar mean removed.
pub fn random_mean_zero(spec: &GroupSpec, seed: u64) -> GridFunction {
    let f = SplitMix64::new(seed).grid_function(spec);
    let mean = f.integral();
    GridFunction::from_raw(spec, f.values().iter().map(|v| v - mean).collect())
}
