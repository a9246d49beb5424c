//! Seeded random sources: complex Gaussians, Haar vectors and Haar unitaries.
//!
//! Every stream is a `ChaCha8Rng` seeded from a `u64`. Ensemble trial `i`
//! derived from base seed `s` uses `s ^ i·0x9E3779B97F4A7C15` (see
//! [`trial_seed`]), so trials can be generated in any order or in parallel.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matcore::ComplexMatrix;

/// Golden-ratio increment used to split one base seed into per-trial streams.
pub const STREAM_SPLIT: u64 = 0x9E37_79B9_7F4A_7C15;

/// Seed of trial `trial` in an ensemble with base seed `seed`.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    seed ^ trial.wrapping_mul(STREAM_SPLIT)
}

#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Stream for trial `trial` of the ensemble with base seed `seed`.
    pub fn for_trial(seed: u64, trial: u64) -> Self {
        Self::new(trial_seed(seed, trial))
    }

    /// Uniform in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        self.inner.gen::<f64>()
    }

    /// Standard complex Gaussian: real and imaginary parts independent with
    /// variance 1/2 each, from one Box–Muller pair.
    pub fn complex_gaussian(&mut self) -> Complex64 {
        // 1 - U lies in (0, 1], keeping ln finite
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt() * FRAC_1_SQRT_2;
        let (s, c) = (TAU * u2).sin_cos();
        Complex64::new(r * c, r * s)
    }

    /// Haar-random unit vector in C^dim.
    pub fn haar_vector(&mut self, dim: usize) -> Vec<Complex64> {
        loop {
            let v: Vec<Complex64> = (0..dim).map(|_| self.complex_gaussian()).collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-12 {
                return v.into_iter().map(|z| z / norm).collect();
            }
        }
    }

    /// Haar-random unitary from Gram–Schmidt orthonormalization of a complex
    /// Ginibre matrix. Gram–Schmidt yields the QR factor with a positive real
    /// diagonal in R, which is the phase fix that makes Q Haar distributed.
    pub fn haar_unitary(&mut self, dim: usize) -> ComplexMatrix {
        loop {
            let g = ComplexMatrix::from_fn(dim, |_, _| self.complex_gaussian());
            if let Some(q) = orthonormalize_columns(&g) {
                return q;
            }
        }
    }
}

/// Modified Gram–Schmidt on the columns of `g`; `None` if a column collapses.
fn orthonormalize_columns(g: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = g.dim();
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| g.column(j)).collect();
    for j in 0..n {
        for k in 0..j {
            let (done, rest) = cols.split_at_mut(j);
            let qk = &done[k];
            let proj: Complex64 = qk.iter().zip(rest[0].iter()).map(|(a, b)| a.conj() * b).sum();
            for (x, q) in rest[0].iter_mut().zip(qk) {
                *x -= proj * q;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-10 {
            return None;
        }
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    Some(ComplexMatrix::from_fn(n, |i, j| cols[j][i]))
}
