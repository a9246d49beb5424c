//! Spin-j rotation matrices u(θ, φ) = exp(−iφJ_z)·exp(−iθJ_y).

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::ComplexMatrix;
use crate::random::SeededRng;

/// Largest supported 2j.
pub const MAX_TWICE_J: usize = 3;

/// Direction of a spin-projection axis in spherical angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisDirection {
    theta: f64,
    phi: f64,
}

impl AxisDirection {
    pub const Z: AxisDirection = AxisDirection { theta: 0.0, phi: 0.0 };

    /// Requires θ ∈ [0, π] and φ ∈ [0, 2π).
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !(0.0..TAU).contains(&phi) {
            return Err(Error::ParameterOutOfRange(format!(
                "axis (theta={theta}, phi={phi}) outside [0,pi] x [0,2pi)"
            )));
        }
        Ok(Self { theta, phi })
    }

    /// Folds arbitrary angles onto the canonical ranges. Reflecting θ through
    /// a pole moves φ by π, so the unit vector is continuous in both angles.
    pub fn wrapped(theta: f64, phi: f64) -> Self {
        let mut theta = theta.rem_euclid(TAU);
        let mut phi = phi;
        if theta > PI {
            theta = TAU - theta;
            phi += PI;
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        Self { theta, phi }
    }

    /// Uniform on the sphere.
    pub fn random(rng: &mut SeededRng) -> Self {
        let cos_theta = 2.0 * rng.uniform() - 1.0;
        let phi = TAU * rng.uniform();
        Self::wrapped(cos_theta.clamp(-1.0, 1.0).acos(), phi)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// (sinθ cosφ, sinθ sinφ, cosθ).
    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

fn factorial(n: i64) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Spin-j rotation u(θ, φ) = exp(−iφJ_z)·exp(−iθJ_y) with `twice_j` = 2j.
///
/// Rows and columns run over m = j, j−1, …, −j. Entries are
/// e^{−imφ}·d^j_{m m'}(θ) with the Wigner small-d matrix evaluated from its
/// closed-form sum.
pub fn su2_irrep(axis: AxisDirection, twice_j: usize) -> Result<ComplexMatrix> {
    if twice_j == 0 || twice_j > MAX_TWICE_J {
        return Err(Error::UnsupportedSpin(twice_j));
    }
    let tj = twice_j as i64;
    let dim = twice_j + 1;
    let (s, c) = (0.5 * axis.theta).sin_cos();
    // with doubled projections M = 2m, j+m = (tj+M)/2 etc.
    let m_of = |i: usize| tj - 2 * i as i64;
    // d^j_{m'm}(θ) = Σ_s (−1)^{m'−m+s} √((j+m')!(j−m')!(j+m)!(j−m)!)
    //                 / ((j+m−s)! s! (m'−m+s)! (j−m'−s)!) · c^{2j+m−m'−2s} · s^{m'−m+2s}
    let small_d = |mp2: i64, m2: i64| -> f64 {
        let pref = (factorial((tj + mp2) / 2)
            * factorial((tj - mp2) / 2)
            * factorial((tj + m2) / 2)
            * factorial((tj - m2) / 2))
        .sqrt();
        let dm = (mp2 - m2) / 2;
        let mut acc = 0.0;
        for k in 0..=tj {
            let a = (tj + m2) / 2 - k;
            let b = dm + k;
            let e = (tj - mp2) / 2 - k;
            if a < 0 || b < 0 || e < 0 {
                continue;
            }
            let sign = if (dm + k).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            let term = c.powi((a + e) as i32) * s.powi((b + k) as i32);
            acc += sign * term / (factorial(a) * factorial(k) * factorial(b) * factorial(e));
        }
        pref * acc
    };
    Ok(ComplexMatrix::from_fn(dim, |row, col| {
        let mp2 = m_of(row);
        let m2 = m_of(col);
        let phase = Complex64::from_polar(1.0, -0.5 * mp2 as f64 * axis.phi);
        phase * small_d(mp2, m2)
    }))
}

/// (J_x, J_y, J_z) for spin j = `twice_j`/2 in the m = j, …, −j basis.
pub fn spin_operators(twice_j: usize) -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let dim = twice_j + 1;
    let j = twice_j as f64 / 2.0;
    let m = |i: usize| j - i as f64;
    // J+ |m> = sqrt(j(j+1) − m(m+1)) |m+1>, and |m+1> sits one row above |m>
    let raise = ComplexMatrix::from_fn(dim, |r, c| {
        if c >= 1 && r == c - 1 {
            let mm = m(c);
            Complex64::new((j * (j + 1.0) - mm * (mm + 1.0)).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let lower = raise.adjoint();
    let jx = (&raise + &lower).scale_real(0.5);
    let jy = (&raise - &lower).scale(Complex64::new(0.0, -0.5));
    let jz = ComplexMatrix::from_real_diagonal(&(0..dim).map(m).collect::<Vec<_>>());
    (jx, jy, jz)
}
