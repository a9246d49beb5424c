//! Density matrices: validation, fixture states and seeded random ensembles.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{hermitian_eigensystem, ComplexMatrix, EigenSystem};
use crate::random::SeededRng;

/// Tolerance for Hermiticity, trace and positivity of a density matrix.
pub const STATE_TOL: f64 = 1e-10;

/// Eigenvalues below this (and above `-STATE_TOL`) are treated as exact zeros
/// when a spectrum is turned into a probability vector.
pub const CLIP_BELOW: f64 = 1e-12;

/// A validated density matrix together with its subsystem dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validates `matrix` at [`STATE_TOL`] and attaches `dims`.
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        check_dims(matrix.dim(), &dims)?;
        let report = validate(&matrix, STATE_TOL);
        if !report.valid {
            return Err(Error::InvalidState(report.describe()));
        }
        Ok(Self { matrix, dims })
    }

    /// Uses the default subsystem split for the dimension (see [`default_dims`]).
    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        let dims = default_dims(matrix.dim());
        Self::new(matrix, dims)
    }

    /// Skips validation; callers guarantee the invariants by construction.
    pub(crate) fn new_unchecked(matrix: ComplexMatrix, dims: Vec<usize>) -> Self {
        debug_assert_eq!(matrix.dim(), dims.iter().product::<usize>());
        Self { matrix, dims }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Same matrix, different subsystem split.
    pub fn with_dims(self, dims: Vec<usize>) -> Result<Self> {
        check_dims(self.matrix.dim(), &dims)?;
        Ok(Self {
            matrix: self.matrix,
            dims,
        })
    }

    pub fn eigensystem(&self) -> Result<EigenSystem> {
        hermitian_eigensystem(&self.matrix)
    }

    /// Eigenvalues clipped to a probability vector: values in
    /// `[-STATE_TOL, CLIP_BELOW)` become 0 and the rest are renormalized.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        clip_spectrum(&self.eigensystem()?.values)
    }

    /// Returns `(dA, dB)` if the state is bipartite.
    pub fn bipartite_dims(&self) -> Result<(usize, usize)> {
        match self.dims.as_slice() {
            &[a, b] => Ok((a, b)),
            other => Err(Error::NotBipartite(other.to_vec())),
        }
    }
}

/// `[2, 2]` for dimension 4, otherwise a single subsystem.
pub fn default_dims(dim: usize) -> Vec<usize> {
    if dim == 4 {
        vec![2, 2]
    } else {
        vec![dim]
    }
}

fn check_dims(dim: usize, dims: &[usize]) -> Result<()> {
    let product: usize = dims.iter().product();
    if dims.is_empty() || dims.contains(&0) || product != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: product,
        });
    }
    Ok(())
}

pub(crate) fn clip_spectrum(values: &[f64]) -> Result<Vec<f64>> {
    let mut clipped = Vec::with_capacity(values.len());
    for &v in values {
        if v < -STATE_TOL || !v.is_finite() {
            return Err(Error::InvalidState(format!("eigenvalue {v:e} is negative")));
        }
        clipped.push(if v < CLIP_BELOW { 0.0 } else { v });
    }
    let total: f64 = clipped.iter().sum();
    if total <= 0.0 {
        return Err(Error::InvalidState("spectrum sums to zero".into()));
    }
    Ok(clipped.into_iter().map(|v| v / total).collect())
}

/// Result of checking the three density-matrix conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub hermiticity_defect: f64,
    pub trace_defect: f64,
    pub min_eigenvalue: f64,
    pub valid: bool,
}

impl ValidationReport {
    fn describe(&self) -> String {
        format!(
            "hermiticity defect {:e}, trace defect {:e}, min eigenvalue {:e}",
            self.hermiticity_defect, self.trace_defect, self.min_eigenvalue
        )
    }
}

/// Measures Hermiticity, trace and positivity defects of `m`. Never fails:
/// a matrix that cannot be diagonalized reports `min_eigenvalue = NaN`.
pub fn validate(m: &ComplexMatrix, tol: f64) -> ValidationReport {
    let hermiticity_defect = m.hermiticity_defect();
    let trace = m.trace();
    let trace_defect = (trace - Complex64::new(1.0, 0.0)).norm();
    // the spectrum is taken from the Hermitian part, which the eigensolver accepts
    let hermitian_part = ComplexMatrix::from_fn(m.dim(), |i, j| 0.5 * (m[(i, j)] + m[(j, i)].conj()));
    let min_eigenvalue = match hermitian_eigensystem(&hermitian_part) {
        Ok(es) => es.values.first().copied().unwrap_or(f64::NAN),
        Err(_) => f64::NAN,
    };
    let valid = hermiticity_defect <= tol && trace_defect <= tol && min_eigenvalue >= -tol;
    ValidationReport {
        hermiticity_defect,
        trace_defect,
        min_eigenvalue,
        valid,
    }
}

/// Named fixture states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateLabel {
    /// I_d / d.
    MaxMixed(usize),
    /// |Φ⁺⟩ = (|00⟩ + |11⟩)/√2.
    BellPhiPlus,
    /// |k⟩⟨k| with k counted from 1.
    PureBasis { dim: usize, k: usize },
    /// p·|Φ⁺⟩⟨Φ⁺| + (1 − p)·I₄/4.
    Werner(f64),
    /// diag(1/2, 0, 0, 1/2).
    ClassicallyCorrelated,
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateLabel::MaxMixed(d) => write!(f, "max_mixed({d})"),
            StateLabel::BellPhiPlus => write!(f, "bell_phi_plus"),
            StateLabel::PureBasis { dim, k } => write!(f, "pure_basis({dim},{k})"),
            StateLabel::Werner(p) => write!(f, "werner({p})"),
            StateLabel::ClassicallyCorrelated => write!(f, "classically_correlated"),
        }
    }
}

impl FromStr for StateLabel {
    type Err = Error;

    /// Accepts `name`, `name(a,b)` and `name:a:b`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, args): (&str, Vec<&str>) = if let Some(open) = s.find('(') {
            let inner = s[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::UnknownLabel(s.to_string()))?;
            (&s[..open], inner.split(',').map(str::trim).filter(|a| !a.is_empty()).collect())
        } else {
            let mut parts = s.split(':');
            let name = parts.next().unwrap_or_default();
            (name, parts.collect())
        };

        let int = |a: &str| -> Result<usize> {
            a.parse()
                .map_err(|_| Error::ParameterOutOfRange(format!("`{a}` is not a non-negative integer")))
        };
        let real = |a: &str| -> Result<f64> {
            a.parse()
                .map_err(|_| Error::ParameterOutOfRange(format!("`{a}` is not a number")))
        };
        let arity = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::ParameterOutOfRange(format!(
                    "`{name}` takes {n} argument(s), got {}",
                    args.len()
                )))
            }
        };

        match name {
            "max_mixed" => {
                arity(1)?;
                Ok(StateLabel::MaxMixed(int(args[0])?))
            }
            "bell_phi_plus" => {
                arity(0)?;
                Ok(StateLabel::BellPhiPlus)
            }
            "pure_basis" => {
                arity(2)?;
                Ok(StateLabel::PureBasis {
                    dim: int(args[0])?,
                    k: int(args[1])?,
                })
            }
            "werner" => {
                arity(1)?;
                Ok(StateLabel::Werner(real(args[0])?))
            }
            "classically_correlated" => {
                arity(0)?;
                Ok(StateLabel::ClassicallyCorrelated)
            }
            _ => Err(Error::UnknownLabel(s.to_string())),
        }
    }
}

fn bell_phi_plus_matrix() -> ComplexMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let v = [h, 0.0, 0.0, h].map(|x| Complex64::new(x, 0.0));
    ComplexMatrix::projector(&v)
}

/// Builds the fixture state for `label`.
pub fn named_state(label: StateLabel) -> Result<DensityMatrix> {
    let matrix = match label {
        StateLabel::MaxMixed(d) => {
            if d == 0 {
                return Err(Error::ParameterOutOfRange("max_mixed needs d >= 1".into()));
            }
            ComplexMatrix::identity(d).scale_real(1.0 / d as f64)
        }
        StateLabel::BellPhiPlus => bell_phi_plus_matrix(),
        StateLabel::PureBasis { dim, k } => {
            if dim == 0 || k == 0 || k > dim {
                return Err(Error::ParameterOutOfRange(format!(
                    "pure_basis needs 1 <= k <= dim, got dim={dim}, k={k}"
                )));
            }
            let mut diag = vec![0.0; dim];
            diag[k - 1] = 1.0;
            ComplexMatrix::from_real_diagonal(&diag)
        }
        StateLabel::Werner(p) => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::ParameterOutOfRange(format!("werner p={p} outside [0, 1]")));
            }
            let bell = bell_phi_plus_matrix().scale_real(p);
            let noise = ComplexMatrix::identity(4).scale_real((1.0 - p) / 4.0);
            &bell + &noise
        }
        StateLabel::ClassicallyCorrelated => ComplexMatrix::from_real_diagonal(&[0.5, 0.0, 0.0, 0.5]),
    };
    let dims = default_dims(matrix.dim());
    Ok(DensityMatrix::new_unchecked(matrix, dims))
}

/// Random-state ensembles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    /// GG†/Tr(GG†) with G a dim×rank complex Ginibre matrix.
    HilbertSchmidt,
    /// Projector onto a Haar-random unit vector.
    PureHaar,
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hilbert_schmidt" | "hs" => Ok(Measure::HilbertSchmidt),
            "pure_haar" | "pure" => Ok(Measure::PureHaar),
            other => Err(Error::UnknownLabel(other.to_string())),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Measure::HilbertSchmidt => "hilbert_schmidt",
            Measure::PureHaar => "pure_haar",
        })
    }
}

/// Draws a random density matrix; deterministic in all four arguments.
/// `rank` must lie in `1..=dim`; it is ignored by [`Measure::PureHaar`].
pub fn random_density(dim: usize, rank: usize, seed: u64, measure: Measure) -> Result<DensityMatrix> {
    if rank == 0 || rank > dim {
        return Err(Error::BadRank { rank, dim });
    }
    let mut rng = SeededRng::new(seed);
    Ok(sample_density(&mut rng, dim, rank, measure))
}

pub(crate) fn sample_density(rng: &mut SeededRng, dim: usize, rank: usize, measure: Measure) -> DensityMatrix {
    let matrix = match measure {
        Measure::HilbertSchmidt => {
            // G is dim x rank, stored row-major
            let g: Vec<Complex64> = (0..dim * rank).map(|_| rng.complex_gaussian()).collect();
            let mut w = ComplexMatrix::from_fn(dim, |i, j| {
                (0..rank).map(|k| g[i * rank + k] * g[j * rank + k].conj()).sum()
            });
            for i in 0..dim {
                w[(i, i)].im = 0.0;
            }
            let tr = w.trace().re;
            w.scale_real(1.0 / tr)
        }
        Measure::PureHaar => ComplexMatrix::projector(&rng.haar_vector(dim)),
    };
    DensityMatrix::new_unchecked(matrix, default_dims(dim))
}

/// On-disk matrix format: `{"dim": n, "dims": [..], "entries": [[re, im], ..]}`,
/// row-major with n² entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixRecord {
    pub fn from_matrix(m: &ComplexMatrix, dims: &[usize]) -> Self {
        Self {
            dim: m.dim(),
            dims: Some(dims.to_vec()),
            entries: m.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn from_state(rho: &DensityMatrix) -> Self {
        Self::from_matrix(rho.matrix(), rho.dims())
    }

    /// Unvalidated matrix and dims; dims default to [`default_dims`].
    pub fn to_matrix(&self) -> Result<(ComplexMatrix, Vec<usize>)> {
        if self.entries.len() != self.dim * self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim * self.dim,
                found: self.entries.len(),
            });
        }
        let m = ComplexMatrix::from_row_major(
            self.entries.iter().map(|&[re, im]| Complex64::new(re, im)).collect(),
        )?;
        let dims = self.dims.clone().unwrap_or_else(|| default_dims(self.dim));
        check_dims(self.dim, &dims)?;
        Ok((m, dims))
    }

    pub fn to_state(&self) -> Result<DensityMatrix> {
        let (m, dims) = self.to_matrix()?;
        DensityMatrix::new(m, dims)
    }
}
