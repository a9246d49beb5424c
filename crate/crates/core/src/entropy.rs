//! Shannon and von Neumann entropies (in nats) and the static inequality
//! families built on them.

use crate::error::{Error, Result};
use crate::maps::{block_normalized_maps, coded_marginals, partial_trace, permute_basis, IndexCoding, Keep, Permutation};
use crate::report::{InequalityReport, DEFAULT_TOL};
use crate::states::DensityMatrix;

/// Normalization tolerance of a probability vector.
pub const PROBABILITY_TOL: f64 = 1e-10;

/// Nonnegative components summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidDistribution("empty".into()));
        }
        if let Some(bad) = components.iter().find(|p| !(**p >= 0.0 && **p <= 1.0 + PROBABILITY_TOL)) {
            return Err(Error::InvalidDistribution(format!("component {bad} outside [0, 1]")));
        }
        let total: f64 = components.iter().sum();
        if (total - 1.0).abs() > PROBABILITY_TOL {
            return Err(Error::InvalidDistribution(format!("components sum to {total}")));
        }
        Ok(Self(components))
    }

    pub(crate) fn new_unchecked(components: Vec<f64>) -> Self {
        Self(components)
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// H = −Σ p ln p with 0·ln 0 = 0.
pub fn shannon(p: &ProbabilityVector) -> f64 {
    shannon_of(p.components())
}

#[inline]
pub(crate) fn shannon_of(p: &[f64]) -> f64 {
    let h: f64 = p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.ln()).sum();
    h + 0.0
}

/// S(ρ) = Shannon entropy of the clipped spectrum.
pub fn von_neumann(rho: &DensityMatrix) -> Result<f64> {
    Ok(shannon_of(&rho.spectrum()?))
}

/// S(ρ) ≤ S(m₁) + S(m₂) with (m₁, m₂) the coded marginals.
pub fn subadditivity_check(rho: &DensityMatrix, coding: IndexCoding) -> Result<InequalityReport> {
    let joint = von_neumann(rho)?;
    let (m1, m2) = coded_marginals(rho, coding)?;
    let marginal_sum = von_neumann(&m1)? + von_neumann(&m2)?;
    Ok(
        InequalityReport::less_equal(format!("subadditivity/{}", coding.name()), joint, marginal_sum, DEFAULT_TOL)
            .with_meta("coding", coding.name()),
    )
}

/// Subadditivity of ρ_p for all 24 basis permutations, in permutation-id order.
pub fn permutation_scan(rho: &DensityMatrix, coding: IndexCoding) -> Result<Vec<InequalityReport>> {
    Permutation::all(rho.dim())?
        .iter()
        .enumerate()
        .map(|(id, p)| {
            let permuted = permute_basis(rho, p)?;
            Ok(subadditivity_check(&permuted, coding)?
                .with_meta("permutation", id)
                .with_meta("images", p.to_string()))
        })
        .collect()
}

/// Entropies entering the block-normalized chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainTerms {
    /// S of the first-index marginal ρ₁.
    pub s1: f64,
    /// S of the second-index marginal ρ₂.
    pub s2: f64,
    /// S of the whole state.
    pub s12: f64,
    /// p₁·S(σ₁) + p₂·S(σ₂); an empty block contributes 0.
    pub block_average: f64,
}

pub fn chain_terms(rho: &DensityMatrix) -> Result<ChainTerms> {
    let rho = if rho.dims().len() == 2 {
        rho.clone()
    } else {
        rho.clone().with_dims(vec![2, 2])?
    };
    let blocks = block_normalized_maps(&rho)?;
    let weighted = |p: f64, sigma: &Option<DensityMatrix>| -> Result<f64> {
        match sigma {
            Some(s) => Ok(p * von_neumann(s)?),
            None => Ok(0.0),
        }
    };
    let block_average = weighted(blocks.p1, &blocks.sigma1)? + weighted(blocks.p2, &blocks.sigma2)?;
    Ok(ChainTerms {
        s1: von_neumann(&partial_trace(&rho, Keep::First)?)?,
        s2: von_neumann(&partial_trace(&rho, Keep::Second)?)?,
        s12: von_neumann(&rho)?,
        block_average,
    })
}

/// The block-normalized chain S₁+S₂ ≥ S₁+⟨S₂⟩ ≥ S(1,2), with ⟨S₂⟩ ≤ S₂ reported
/// on its own. Reports, in order: `block_entropy_concavity` (⟨S₂⟩ ≤ S₂),
/// `improved_chain_upper`, `improved_chain_lower`.
pub fn improved_chain_check(rho: &DensityMatrix) -> Result<Vec<InequalityReport>> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    let t = chain_terms(rho)?;
    Ok(vec![
        InequalityReport::less_equal("block_entropy_concavity", t.block_average, t.s2, DEFAULT_TOL),
        InequalityReport::greater_equal("improved_chain_upper", t.s1 + t.s2, t.s1 + t.block_average, DEFAULT_TOL),
        InequalityReport::greater_equal("improved_chain_lower", t.s1 + t.block_average, t.s12, DEFAULT_TOL),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{kron, ComplexMatrix};
    use crate::states::{named_state, random_density, Measure, StateLabel};
    use num_complex::Complex64;
    use std::f64::consts::LN_2;

    fn product_state() -> DensityMatrix {
        let c = Complex64::new;
        let sigma = ComplexMatrix::from_rows(&[vec![c(0.6, 0.0), c(0.2, -0.1)], vec![c(0.2, 0.1), c(0.4, 0.0)]]).unwrap();
        let tau = ComplexMatrix::from_rows(&[vec![c(0.9, 0.0), c(0.0, 0.25)], vec![c(0.0, -0.25), c(0.1, 0.0)]]).unwrap();
        DensityMatrix::new(kron(&sigma, &tau), vec![2, 2]).unwrap()
    }

    #[test]
    fn shannon_examples() {
        let p = |v: Vec<f64>| ProbabilityVector::new(v).unwrap();
        assert_eq!(shannon(&p(vec![1.0, 0.0, 0.0, 0.0])), 0.0);
        assert!((shannon(&p(vec![0.25; 4])) - 4f64.ln()).abs() < 1e-15);
        // direct summation: ½ln2 + ¼ln4 + 2·⅛ln8 = (½ + ½ + ¾) ln 2
        let direct = 0.5 * 2f64.ln() + 0.25 * 4f64.ln() + 2.0 * 0.125 * 8f64.ln();
        let h = shannon(&p(vec![0.5, 0.25, 0.125, 0.125]));
        assert!((h - direct).abs() < 1e-15);
        assert!((h - 1.75 * LN_2).abs() < 1e-15);
    }

    #[test]
    fn probability_vector_rejects_bad_input() {
        assert!(ProbabilityVector::new(vec![0.5, 0.6]).is_err());
        assert!(ProbabilityVector::new(vec![1.2, -0.2]).is_err());
        assert!(ProbabilityVector::new(vec![]).is_err());
        assert!(ProbabilityVector::new(vec![f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn von_neumann_examples() {
        let pure = named_state(StateLabel::BellPhiPlus).unwrap();
        assert!(von_neumann(&pure).unwrap().abs() < 1e-12);
        let mixed = named_state(StateLabel::MaxMixed(4)).unwrap();
        assert!((von_neumann(&mixed).unwrap() - 4f64.ln()).abs() < 1e-15);
        let werner = named_state(StateLabel::Werner(0.5)).unwrap();
        let oracle = -(0.625 * 0.625f64.ln() + 3.0 * 0.125 * 0.125f64.ln());
        assert!((von_neumann(&werner).unwrap() - oracle).abs() < 1e-12);
    }

    #[test]
    fn subadditivity_examples() {
        let mixed = named_state(StateLabel::MaxMixed(4)).unwrap();
        let r = subadditivity_check(&mixed, IndexCoding::TwoQubit).unwrap();
        assert!(r.slack.abs() < 1e-15 && r.holds);
        assert_eq!(r.name, "subadditivity/two_qubit");

        let bell = named_state(StateLabel::BellPhiPlus).unwrap();
        let r = subadditivity_check(&bell, IndexCoding::TwoQubit).unwrap();
        assert!((r.slack - 2.0 * LN_2).abs() < 1e-9);

        let r = subadditivity_check(&product_state(), IndexCoding::TwoQubit).unwrap();
        assert!(r.slack.abs() < 1e-10, "{}", r.slack);

        let r = subadditivity_check(&bell, IndexCoding::SpinThreeHalf).unwrap();
        assert_eq!(r.name, "subadditivity/spin_three_half");
    }

    #[test]
    fn permutation_scan_bell() {
        let bell = named_state(StateLabel::BellPhiPlus).unwrap();
        let reports = permutation_scan(&bell, IndexCoding::TwoQubit).unwrap();
        assert_eq!(reports.len(), 24);
        assert!((reports[0].slack - 2.0 * LN_2).abs() < 1e-9);
        // oracle: Bell permuted by p is the projector onto (|p⁻¹(1)> + |p⁻¹(4)>)/√2;
        // it is entangled (marginals maximally mixed) when the two basis states
        // differ in both qubits and a product of pure states otherwise.
        for (id, p) in Permutation::all(4).unwrap().iter().enumerate() {
            let inv = |target: usize| (0..4).find(|&j| p.apply(j) == target).unwrap();
            let (a, b) = (inv(0), inv(3));
            let entangled = a / 2 != b / 2 && a % 2 != b % 2;
            let expected = if entangled { 2.0 * LN_2 } else { 0.0 };
            assert!((reports[id].slack - expected).abs() < 1e-9, "id {id}");
            assert!(reports[id].holds);
            assert_eq!(reports[id].meta["permutation"], crate::report::MetaValue::Int(id as i64));
        }
    }

    #[test]
    fn permutation_scan_random_state() {
        let rho = random_density(4, 4, 1, Measure::HilbertSchmidt).unwrap();
        for coding in IndexCoding::ALL {
            let reports = permutation_scan(&rho, coding).unwrap();
            let min = reports.iter().map(|r| r.slack).fold(f64::INFINITY, f64::min);
            assert!(min >= 0.0, "{coding}: {min}");
        }
        let mixed = named_state(StateLabel::MaxMixed(4)).unwrap();
        assert!(permutation_scan(&mixed, IndexCoding::TwoQubit)
            .unwrap()
            .iter()
            .all(|r| r.slack.abs() < 1e-15));
    }

    #[test]
    fn improved_chain_examples() {
        let bell = named_state(StateLabel::BellPhiPlus).unwrap();
        let t = chain_terms(&bell).unwrap();
        assert!(t.block_average.abs() < 1e-12);
        assert!((t.s1 - LN_2).abs() < 1e-12);
        assert!(t.s12.abs() < 1e-12);
        for r in improved_chain_check(&bell).unwrap() {
            assert!((r.slack - LN_2).abs() < 1e-9, "{}: {}", r.name, r.slack);
        }

        let cc = named_state(StateLabel::ClassicallyCorrelated).unwrap();
        let reports = improved_chain_check(&cc).unwrap();
        assert_eq!(reports[2].name, "improved_chain_lower");
        assert!(reports[2].slack.abs() < 1e-12);

        let mixed = named_state(StateLabel::MaxMixed(4)).unwrap();
        let reports = improved_chain_check(&mixed).unwrap();
        for r in &reports {
            assert!(r.slack.abs() < 1e-12, "{}: {}", r.name, r.slack);
        }
    }

    #[test]
    fn block_average_equals_trace_form() {
        // −Tr[B ln(B/p)] summed over both blocks, evaluated from block eigenvalues
        for seed in 0..10 {
            let rho = random_density(4, 4, seed, Measure::HilbertSchmidt).unwrap();
            let t = chain_terms(&rho).unwrap();
            let mut trace_form = 0.0;
            for idx in [[0usize, 1], [2, 3]] {
                let block = rho.matrix().block(&idx);
                let p = block.trace().re;
                let ev = crate::matcore::hermitian_eigensystem(&block).unwrap().values;
                trace_form -= ev.iter().filter(|&&l| l > 0.0).map(|&l| l * (l / p).ln()).sum::<f64>();
            }
            assert!((t.block_average - trace_form).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_block_contributes_zero() {
        let rho = named_state(StateLabel::PureBasis { dim: 4, k: 2 }).unwrap();
        let t = chain_terms(&rho).unwrap();
        assert_eq!(t.block_average, 0.0);
        assert!(improved_chain_check(&rho).unwrap().iter().all(|r| r.holds));
    }
}
