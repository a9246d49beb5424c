//! Spin tomograms and tomographic entropies and information.
//!
//! A tomogram of ρ for a unitary u is the diagonal of uρu†. Measuring the spin
//! projection along an axis n uses u = R(n)†, where R(n) = [`su2_irrep`]
//! rotates the z axis onto n, so that u†J_z u = n·J. For bipartite states the
//! unitary is R(n₁)† ⊗ R(n₂)† and the tomogram is the joint distribution of the
//! two spin projections.

pub mod optimize;
pub mod quadrature;
pub mod su2;

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entropy::{shannon, shannon_of, von_neumann, ProbabilityVector};
use crate::error::{Error, Result};
use crate::matcore::{conjugate_unchecked, hermitian_eigensystem, kron, ComplexMatrix, STRUCTURE_TOL};
use crate::maps::{partial_trace, Keep};
use crate::random::SeededRng;
use crate::report::InequalityReport;
use crate::states::DensityMatrix;

pub use optimize::{coordinate_ascent, OptimizerConfig};
pub use quadrature::{gauss_legendre, QuadratureOrder, SphereRule};
pub use su2::{spin_operators, su2_irrep, AxisDirection};

/// Probabilities above `-TOMOGRAM_NOISE` but below zero are round-off.
pub const TOMOGRAM_NOISE: f64 = 1e-12;

/// Outcome of a spin-projection measurement; projections stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutcomeLabel {
    Single { m_x2: i32 },
    Pair { m1_x2: i32, m2_x2: i32 },
    /// Flat basis index, for states with more than two subsystems.
    Flat(usize),
}

impl fmt::Display for OutcomeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let half = |v: i32| {
            if v % 2 == 0 {
                format!("{}", v / 2)
            } else {
                format!("{v}/2")
            }
        };
        match *self {
            OutcomeLabel::Single { m_x2 } => f.write_str(&half(m_x2)),
            OutcomeLabel::Pair { m1_x2, m2_x2 } => write!(f, "({},{})", half(m1_x2), half(m2_x2)),
            OutcomeLabel::Flat(k) => write!(f, "#{k}"),
        }
    }
}

/// Doubled projections j, j−1, …, −j for a `dim`-level spin.
fn projections(dim: usize) -> impl Iterator<Item = i32> {
    (0..dim).map(move |i| dim as i32 - 1 - 2 * i as i32)
}

fn outcome_labels(dims: &[usize]) -> Vec<OutcomeLabel> {
    match dims {
        &[d] => projections(d).map(|m_x2| OutcomeLabel::Single { m_x2 }).collect(),
        &[d1, d2] => projections(d1)
            .flat_map(|m1_x2| projections(d2).map(move |m2_x2| OutcomeLabel::Pair { m1_x2, m2_x2 }))
            .collect(),
        other => (0..other.iter().product()).map(OutcomeLabel::Flat).collect(),
    }
}

/// Probability table over spin-projection outcomes for one unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct Tomogram {
    probabilities: ProbabilityVector,
    labels: Vec<OutcomeLabel>,
    unitary: String,
}

impl Tomogram {
    pub fn new(probabilities: ProbabilityVector, labels: Vec<OutcomeLabel>, unitary: impl Into<String>) -> Result<Self> {
        if probabilities.len() != labels.len() {
            return Err(Error::BadLabels(format!(
                "{} probabilities for {} labels",
                probabilities.len(),
                labels.len()
            )));
        }
        Ok(Self {
            probabilities,
            labels,
            unitary: unitary.into(),
        })
    }

    pub fn probabilities(&self) -> &[f64] {
        self.probabilities.components()
    }

    pub fn distribution(&self) -> &ProbabilityVector {
        &self.probabilities
    }

    pub fn labels(&self) -> &[OutcomeLabel] {
        &self.labels
    }

    /// Description of the unitary the tomogram was taken with.
    pub fn unitary(&self) -> &str {
        &self.unitary
    }
}

fn clean_probabilities(diag: impl Iterator<Item = f64>) -> Result<Vec<f64>> {
    diag.map(|p| {
        if p >= 0.0 {
            Ok(p)
        } else if p >= -TOMOGRAM_NOISE {
            Ok(0.0)
        } else {
            Err(Error::InvalidState(format!("negative outcome probability {p:e}")))
        }
    })
    .collect()
}

/// w(m, u) = ⟨m|uρu†|m⟩.
pub fn tomogram(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<Tomogram> {
    tomogram_with_id(rho, u, "global".to_string())
}

fn tomogram_with_id(rho: &DensityMatrix, u: &ComplexMatrix, id: String) -> Result<Tomogram> {
    if u.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: u.dim(),
        });
    }
    let defect = u.unitarity_defect();
    if defect.is_nan() || defect > STRUCTURE_TOL {
        return Err(Error::NotUnitary { defect });
    }
    let rotated = conjugate_unchecked(rho.matrix(), u);
    let probs = clean_probabilities(rotated.diagonal().into_iter().map(|z| z.re))?;
    Ok(Tomogram {
        probabilities: ProbabilityVector::new_unchecked(probs),
        labels: outcome_labels(rho.dims()),
        unitary: id,
    })
}

fn axes_id(a1: AxisDirection, a2: AxisDirection) -> String {
    format!(
        "axes(theta1={:.17e},phi1={:.17e};theta2={:.17e},phi2={:.17e})",
        a1.theta(),
        a1.phi(),
        a2.theta(),
        a2.phi()
    )
}

/// u = R(n)†, measuring the spin projection along `axis`.
pub fn axis_measurement(axis: AxisDirection, twice_j: usize) -> Result<ComplexMatrix> {
    Ok(su2_irrep(axis, twice_j)?.adjoint())
}

/// Joint tomogram w(m₁, m₂) of a bipartite state with spin projections
/// measured along `a1` and `a2`.
pub fn joint_tomogram(rho: &DensityMatrix, a1: AxisDirection, a2: AxisDirection) -> Result<Tomogram> {
    let (d1, d2) = rho.bipartite_dims()?;
    let u = kron(&axis_measurement(a1, d1 - 1)?, &axis_measurement(a2, d2 - 1)?);
    tomogram_with_id(rho, &u, axes_id(a1, a2))
}

/// Marginal tomograms w₁(m₁) = Σ w(m₁, m₂) and w₂(m₂) = Σ w(m₁, m₂).
pub fn tomo_marginals(w: &Tomogram) -> Result<(Tomogram, Tomogram)> {
    let pair = |l: &OutcomeLabel| match *l {
        OutcomeLabel::Pair { m1_x2, m2_x2 } => Ok((m1_x2, m2_x2)),
        other => Err(Error::BadLabels(format!("label {other} is not a pair"))),
    };
    let pairs: Vec<(i32, i32)> = w.labels.iter().map(pair).collect::<Result<_>>()?;
    let Some(&(first_m1, _)) = pairs.first() else {
        return Err(Error::BadLabels("empty tomogram".into()));
    };
    let d2 = pairs.iter().take_while(|(m1, _)| *m1 == first_m1).count();
    if !pairs.len().is_multiple_of(d2) {
        return Err(Error::BadLabels("labels do not form a product table".into()));
    }
    let d1 = pairs.len() / d2;
    let m1s: Vec<i32> = (0..d1).map(|i| pairs[i * d2].0).collect();
    let m2s: Vec<i32> = (0..d2).map(|k| pairs[k].1).collect();
    for i in 0..d1 {
        for k in 0..d2 {
            if pairs[i * d2 + k] != (m1s[i], m2s[k]) {
                return Err(Error::BadLabels("labels do not form a product table".into()));
            }
        }
    }
    let p = w.probabilities();
    let w1: Vec<f64> = (0..d1).map(|i| (0..d2).map(|k| p[i * d2 + k]).sum()).collect();
    let w2: Vec<f64> = (0..d2).map(|k| (0..d1).map(|i| p[i * d2 + k]).sum()).collect();
    Ok((
        Tomogram {
            probabilities: ProbabilityVector::new_unchecked(w1),
            labels: m1s.into_iter().map(|m_x2| OutcomeLabel::Single { m_x2 }).collect(),
            unitary: format!("{} (first marginal)", w.unitary),
        },
        Tomogram {
            probabilities: ProbabilityVector::new_unchecked(w2),
            labels: m2s.into_iter().map(|m_x2| OutcomeLabel::Single { m_x2 }).collect(),
            unitary: format!("{} (second marginal)", w.unitary),
        },
    ))
}

/// Shannon entropy of the tomogram.
pub fn tomographic_entropy(w: &Tomogram) -> f64 {
    shannon(&w.probabilities)
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    match rho.bipartite_dims()? {
        (2, 2) => Ok(()),
        (d1, d2) => Err(Error::DimensionMismatch {
            expected: 4,
            found: d1 * d2,
        }),
    }
}

/// I(n₁, n₂) = H₁ + H₂ − H of the joint tomogram at the given axes.
pub fn tomographic_information(rho: &DensityMatrix, a1: AxisDirection, a2: AxisDirection) -> Result<f64> {
    require_two_qubits(rho)?;
    let w = joint_tomogram(rho, a1, a2)?;
    let (w1, w2) = tomo_marginals(&w)?;
    Ok(tomographic_entropy(&w1) + tomographic_entropy(&w2) - tomographic_entropy(&w))
}

/// I_q = S₁ + S₂ − S(1,2).
pub fn quantum_information(rho: &DensityMatrix) -> Result<f64> {
    let s1 = von_neumann(&partial_trace(rho, Keep::First)?)?;
    let s2 = von_neumann(&partial_trace(rho, Keep::Second)?)?;
    Ok(s1 + s2 - von_neumann(rho)?)
}

type Qubit = [[Complex64; 2]; 2];

/// Closed form of the spin-1/2 [`axis_measurement`], the hot path of the axis
/// searches.
fn qubit_measurement(axis: AxisDirection) -> Qubit {
    let (s, c) = (0.5 * axis.theta()).sin_cos();
    let up = Complex64::from_polar(1.0, 0.5 * axis.phi());
    let down = up.conj();
    [[up * c, down * s], [-up * s, down * c]]
}

/// Per-state cache for joint two-qubit tomograms.
struct QubitPairTomography {
    rho: [[Complex64; 4]; 4],
}

/// B^{m₁}_{b b'} = Σ_{a a'} u₁[m₁][a] ρ_{(a b),(a' b')} ū₁[m₁][a'], the
/// unnormalized conditional blocks of the second qubit.
type LocalBlocks = [[[Complex64; 2]; 2]; 2];

impl QubitPairTomography {
    fn new(rho: &DensityMatrix) -> Self {
        let m = rho.matrix();
        let mut cache = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (i, row) in cache.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = m[(i, j)];
            }
        }
        Self { rho: cache }
    }

    fn blocks(&self, u1: &Qubit) -> LocalBlocks {
        let mut out = [[[Complex64::new(0.0, 0.0); 2]; 2]; 2];
        for (m1, block) in out.iter_mut().enumerate() {
            for (b, row) in block.iter_mut().enumerate() {
                for (bp, entry) in row.iter_mut().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for a in 0..2 {
                        for ap in 0..2 {
                            acc += u1[m1][a] * self.rho[2 * a + b][2 * ap + bp] * u1[m1][ap].conj();
                        }
                    }
                    *entry = acc;
                }
            }
        }
        out
    }

    fn joint(blocks: &LocalBlocks, u2: &Qubit) -> [f64; 4] {
        let mut w = [0.0; 4];
        for m1 in 0..2 {
            for m2 in 0..2 {
                let row = u2[m2];
                let blk = &blocks[m1];
                let v = row[0] * blk[0][0] * row[0].conj()
                    + row[0] * blk[0][1] * row[1].conj()
                    + row[1] * blk[1][0] * row[0].conj()
                    + row[1] * blk[1][1] * row[1].conj();
                w[2 * m1 + m2] = v.re;
            }
        }
        w
    }

    fn marginal_entropy_first(blocks: &LocalBlocks) -> f64 {
        shannon_of(&[blocks[0][0][0].re + blocks[0][1][1].re, blocks[1][0][0].re + blocks[1][1][1].re])
    }

    fn information(&self, u1: &Qubit, u2: &Qubit) -> f64 {
        let w = Self::joint(&self.blocks(u1), u2);
        let h = shannon_of(&w);
        let h1 = shannon_of(&[w[0] + w[1], w[2] + w[3]]);
        let h2 = shannon_of(&[w[0] + w[2], w[1] + w[3]]);
        h1 + h2 - h
    }
}

/// How a unitary in a search is specified.
#[derive(Debug, Clone, PartialEq)]
pub enum UnitaryParam {
    /// R(a1)† ⊗ R(a2)†.
    LocalAxes(AxisDirection, AxisDirection),
    Global(ComplexMatrix),
    /// exp(iH) with H Hermitian built from d² reals: the d diagonal entries,
    /// then (re, im) of each upper-triangular entry row by row.
    GlobalParam(Vec<f64>),
}

impl UnitaryParam {
    /// Matrix acting on a space with subsystem dims `dims`.
    pub fn to_matrix(&self, dims: &[usize]) -> Result<ComplexMatrix> {
        let dim: usize = dims.iter().product();
        match self {
            UnitaryParam::LocalAxes(a1, a2) => match dims {
                &[d1, d2] => Ok(kron(&axis_measurement(*a1, d1 - 1)?, &axis_measurement(*a2, d2 - 1)?)),
                other => Err(Error::NotBipartite(other.to_vec())),
            },
            UnitaryParam::Global(u) => {
                if u.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: u.dim(),
                    });
                }
                Ok(u.clone())
            }
            UnitaryParam::GlobalParam(angles) => {
                if angles.len() != dim * dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim * dim,
                        found: angles.len(),
                    });
                }
                let mut h = ComplexMatrix::zeros(dim);
                for i in 0..dim {
                    h[(i, i)] = Complex64::new(angles[i], 0.0);
                }
                let mut k = dim;
                for i in 0..dim {
                    for j in (i + 1)..dim {
                        let z = Complex64::new(angles[k], angles[k + 1]);
                        h[(i, j)] = z;
                        h[(j, i)] = z.conj();
                        k += 2;
                    }
                }
                let es = hermitian_eigensystem(&h)?;
                let v = &es.vectors;
                Ok(ComplexMatrix::from_fn(dim, |i, j| {
                    (0..dim)
                        .map(|k| v[(i, k)] * Complex64::from_polar(1.0, es.values[k]) * v[(j, k)].conj())
                        .sum()
                }))
            }
        }
    }
}

/// Minimum of H(u) over global unitaries.
///
/// The diagonalizer u₀ = V† of ρ = V Λ V† is always evaluated, together with
/// `config.probes` Haar-random unitaries seeded from `config.seed`. Returns the
/// smallest entropy seen and the unitary that produced it.
pub fn min_tomographic_entropy(rho: &DensityMatrix, config: &OptimizerConfig) -> Result<(f64, UnitaryParam)> {
    let diagonalizer = rho.eigensystem()?.vectors.adjoint();
    let mut best_value = tomographic_entropy(&tomogram_with_id(rho, &diagonalizer, "diagonalizer".into())?);
    let mut best = diagonalizer;
    let mut rng = SeededRng::new(config.seed);
    for _ in 0..config.probes {
        let u = rng.haar_unitary(rho.dim());
        let h = tomographic_entropy(&tomogram(rho, &u)?);
        if h < best_value {
            best_value = h;
            best = u;
        }
    }
    Ok((best_value, UnitaryParam::Global(best)))
}

/// Sphere-averaged tomographic information
/// ⟨I⟩ = ⟨H₁⟩_{n₁} + ⟨H₂⟩_{n₂} − ⟨H⟩_{n₁,n₂}, each average being (1/4π)∫dn
/// (or (1/16π²)∫∫dn₁dn₂) evaluated with a Gauss–Legendre × trapezoid rule.
pub fn averaged_information(rho: &DensityMatrix, n_theta: usize, n_phi: usize) -> Result<f64> {
    require_two_qubits(rho)?;
    let rule = SphereRule::new(QuadratureOrder::new(n_theta, n_phi)?)?;
    let cache = QubitPairTomography::new(rho);
    let rotations: Vec<Qubit> = rule.nodes.iter().map(|&n| qubit_measurement(n)).collect();

    // per first-axis node: (H₁(n₁), Σ_{n₂} w₂ H(n₁, n₂))
    let per_node: Vec<(f64, f64)> = rotations
        .par_iter()
        .map(|u1| {
            let blocks = cache.blocks(u1);
            let h1 = QubitPairTomography::marginal_entropy_first(&blocks);
            let joint: f64 = rotations
                .iter()
                .zip(&rule.weights)
                .map(|(u2, w2)| w2 * shannon_of(&QubitPairTomography::joint(&blocks, u2)))
                .sum();
            (h1, joint)
        })
        .collect();

    let rho2 = partial_trace(rho, Keep::Second)?;
    let mut avg_h1 = 0.0;
    let mut avg_joint = 0.0;
    for ((h1, joint), w1) in per_node.iter().zip(&rule.weights) {
        avg_h1 += w1 * h1;
        avg_joint += w1 * joint;
    }
    let rho2_m = rho2.matrix();
    let avg_h2: f64 = rotations
        .iter()
        .zip(&rule.weights)
        .map(|(u, w)| {
            let p: Vec<f64> = (0..2)
                .map(|m| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for b in 0..2 {
                        for bp in 0..2 {
                            acc += u[m][b] * rho2_m[(b, bp)] * u[m][bp].conj();
                        }
                    }
                    acc.re
                })
                .collect();
            w * shannon_of(&p)
        })
        .sum();
    Ok(avg_h1 + avg_h2 - avg_joint)
}

fn axes_from_point(x: &[f64; 4]) -> (AxisDirection, AxisDirection) {
    (AxisDirection::wrapped(x[0], x[1]), AxisDirection::wrapped(x[2], x[3]))
}

/// I_t: maximum of I(n₁, n₂) over local axes.
///
/// A `grid`⁴ mesh (θ at `grid` points on [0, π] including both poles, φ at
/// `grid` points on [0, 2π)) is searched exhaustively, then the best node is
/// refined by coordinate ascent. The result is never below any grid value.
pub fn max_local_information(
    rho: &DensityMatrix,
    config: &OptimizerConfig,
) -> Result<(f64, (AxisDirection, AxisDirection))> {
    require_two_qubits(rho)?;
    let g = config.grid.max(2);
    let thetas: Vec<f64> = (0..g).map(|k| std::f64::consts::PI * k as f64 / (g - 1) as f64).collect();
    let phis: Vec<f64> = (0..g).map(|l| std::f64::consts::TAU * l as f64 / g as f64).collect();
    let mesh: Vec<AxisDirection> = thetas
        .iter()
        .flat_map(|&t| phis.iter().map(move |&p| AxisDirection::wrapped(t, p)))
        .collect();
    let rotations: Vec<Qubit> = mesh.iter().map(|&a| qubit_measurement(a)).collect();
    let cache = QubitPairTomography::new(rho);

    let best_per_row: Vec<(f64, usize)> = rotations
        .par_iter()
        .map(|u1| {
            let blocks = cache.blocks(u1);
            let mut best = (f64::NEG_INFINITY, 0);
            for (k, u2) in rotations.iter().enumerate() {
                let w = QubitPairTomography::joint(&blocks, u2);
                let h = shannon_of(&w);
                let h1 = shannon_of(&[w[0] + w[1], w[2] + w[3]]);
                let h2 = shannon_of(&[w[0] + w[2], w[1] + w[3]]);
                let i = h1 + h2 - h;
                if i > best.0 {
                    best = (i, k);
                }
            }
            best
        })
        .collect();
    let (mut best_value, mut best_pair) = (f64::NEG_INFINITY, (0, 0));
    for (row, &(v, col)) in best_per_row.iter().enumerate() {
        if v > best_value {
            best_value = v;
            best_pair = (row, col);
        }
    }

    let (a1, a2) = (mesh[best_pair.0], mesh[best_pair.1]);
    let start = [a1.theta(), a1.phi(), a2.theta(), a2.phi()];
    let objective = |x: &[f64; 4]| {
        let (b1, b2) = axes_from_point(x);
        cache.information(&qubit_measurement(b1), &qubit_measurement(b2))
    };
    let project = |x: [f64; 4]| {
        let (b1, b2) = axes_from_point(&x);
        [b1.theta(), b1.phi(), b2.theta(), b2.phi()]
    };
    let refined = coordinate_ascent(objective, project, start, best_value, config);
    Ok((refined.value, axes_from_point(&refined.point)))
}

/// Scalars of the information chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InformationSummary {
    /// I_q.
    pub quantum: f64,
    /// I(n₁, n₂) at the requested axes.
    pub at_axes: f64,
    /// I_t.
    pub maximum: f64,
    /// ⟨I⟩.
    pub averaged: f64,
    /// ΔI = I_q − I_t.
    pub gap: f64,
    /// Axes achieving I_t.
    pub witness: (AxisDirection, AxisDirection),
    /// H(u₁₀ × u₂₀) in the product eigenbasis of the marginals.
    pub product_eigenbasis_entropy: f64,
}

#[derive(Debug, Clone)]
pub struct InformationChain {
    pub reports: Vec<InequalityReport>,
    pub summary: InformationSummary,
}

/// Evaluates the tomographic inequality chain for a two-qubit state.
///
/// Reports, in order:
/// - `tomographic_sandwich_upper`: S₁ + S₂ ≥ H(u₁₀×u₂₀)
/// - `tomographic_sandwich_lower`: H(u₁₀×u₂₀) ≥ S(1,2)
/// - `information_bound`: I_q ≥ I(axes)
/// - `averaged_information_bound`: I_q ≥ ⟨I⟩
/// - `information_gap`: I_q ≥ I_t, slack ΔI
/// - `averaged_gap`: I_q − ⟨I⟩ ≥ ΔI
///
/// where u_k0 diagonalizes the k-th marginal.
pub fn information_chain(
    rho: &DensityMatrix,
    axes: (AxisDirection, AxisDirection),
    config: &OptimizerConfig,
    quad: QuadratureOrder,
    tolerance: f64,
) -> Result<InformationChain> {
    require_two_qubits(rho)?;
    let rho1 = partial_trace(rho, Keep::First)?;
    let rho2 = partial_trace(rho, Keep::Second)?;
    let s1 = von_neumann(&rho1)?;
    let s2 = von_neumann(&rho2)?;
    let s12 = von_neumann(rho)?;
    let quantum = s1 + s2 - s12;

    let u10 = rho1.eigensystem()?.vectors.adjoint();
    let u20 = rho2.eigensystem()?.vectors.adjoint();
    let h_product = tomographic_entropy(&tomogram_with_id(rho, &kron(&u10, &u20), "marginal diagonalizers".into())?);

    let at_axes = tomographic_information(rho, axes.0, axes.1)?;
    let averaged = averaged_information(rho, quad.n_theta, quad.n_phi)?;
    let (maximum, witness) = max_local_information(rho, config)?;
    let gap = quantum - maximum;

    let reports = vec![
        InequalityReport::greater_equal("tomographic_sandwich_upper", s1 + s2, h_product, tolerance),
        InequalityReport::greater_equal("tomographic_sandwich_lower", h_product, s12, tolerance),
        InequalityReport::greater_equal("information_bound", quantum, at_axes, tolerance)
            .with_meta("theta1", axes.0.theta())
            .with_meta("phi1", axes.0.phi())
            .with_meta("theta2", axes.1.theta())
            .with_meta("phi2", axes.1.phi()),
        InequalityReport::greater_equal("averaged_information_bound", quantum, averaged, tolerance)
            .with_meta("n_theta", quad.n_theta)
            .with_meta("n_phi", quad.n_phi),
        InequalityReport::greater_equal("information_gap", quantum, maximum, tolerance)
            .with_meta("theta1", witness.0.theta())
            .with_meta("phi1", witness.0.phi())
            .with_meta("theta2", witness.1.theta())
            .with_meta("phi2", witness.1.phi()),
        InequalityReport::greater_equal("averaged_gap", quantum - averaged, gap, tolerance),
    ];
    Ok(InformationChain {
        reports,
        summary: InformationSummary {
            quantum,
            at_axes,
            maximum,
            averaged,
            gap,
            witness,
            product_eigenbasis_entropy: h_product,
        },
    })
}

/// Reports of [`information_chain`] without the scalar summary.
pub fn information_chain_check(
    rho: &DensityMatrix,
    axes: (AxisDirection, AxisDirection),
    config: &OptimizerConfig,
    quad: QuadratureOrder,
    tolerance: f64,
) -> Result<Vec<InequalityReport>> {
    Ok(information_chain(rho, axes, config, quad, tolerance)?.reports)
}
