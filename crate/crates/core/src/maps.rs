//! Maps acting on density matrices: index codings, partial traces, basis
//! permutations, the Clebsch–Gordan change of basis and the block
//! normalization maps.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{conjugate_unchecked, ComplexMatrix};
use crate::random::SeededRng;
use crate::states::DensityMatrix;

/// Block traces at or below this are treated as empty blocks.
pub const DEGENERATE_BLOCK: f64 = 1e-14;

/// Largest flat dimension for which [`Permutation::all`] enumerates exhaustively.
pub const MAX_ENUMERATED_PERMUTATION: usize = 8;

/// A spin label with projections stored doubled (m = 1/2 is stored as 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhysicalLabel {
    /// (m₁, m₂) of two spin-1/2 particles.
    QubitPair { m1_x2: i32, m2_x2: i32 },
    /// Projection m of a single spin-3/2.
    Projection { m_x2: i32 },
    /// Coupled total spin |j, m⟩ with integer j and m.
    Coupled { j: i32, m: i32 },
}

fn half(v: i32) -> String {
    if v % 2 == 0 {
        format!("{}", v / 2)
    } else {
        format!("{}/2", v)
    }
}

impl fmt::Display for PhysicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PhysicalLabel::QubitPair { m1_x2, m2_x2 } => write!(f, "({},{})", half(m1_x2), half(m2_x2)),
            PhysicalLabel::Projection { m_x2 } => write!(f, "{}", half(m_x2)),
            PhysicalLabel::Coupled { j, m } => write!(f, "|{j},{m}>"),
        }
    }
}

/// Bijection between flat basis indices 1..4 and physical labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexCoding {
    /// 1↔(½,½), 2↔(½,−½), 3↔(−½,½), 4↔(−½,−½).
    TwoQubit,
    /// 1↔3/2, 2↔1/2, 3↔−1/2, 4↔−3/2.
    SpinThreeHalf,
    /// 1↔(1,1), 2↔(1,0), 3↔(1,−1), 4↔(0,0).
    TripletSinglet,
}

impl IndexCoding {
    pub const ALL: [IndexCoding; 3] = [
        IndexCoding::TwoQubit,
        IndexCoding::SpinThreeHalf,
        IndexCoding::TripletSinglet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IndexCoding::TwoQubit => "two_qubit",
            IndexCoding::SpinThreeHalf => "spin_three_half",
            IndexCoding::TripletSinglet => "triplet_singlet",
        }
    }

    /// Labels in flat-index order.
    pub fn labels(self) -> [PhysicalLabel; 4] {
        use PhysicalLabel::*;
        match self {
            IndexCoding::TwoQubit => [
                QubitPair { m1_x2: 1, m2_x2: 1 },
                QubitPair { m1_x2: 1, m2_x2: -1 },
                QubitPair { m1_x2: -1, m2_x2: 1 },
                QubitPair { m1_x2: -1, m2_x2: -1 },
            ],
            IndexCoding::SpinThreeHalf => [
                Projection { m_x2: 3 },
                Projection { m_x2: 1 },
                Projection { m_x2: -1 },
                Projection { m_x2: -3 },
            ],
            IndexCoding::TripletSinglet => [
                Coupled { j: 1, m: 1 },
                Coupled { j: 1, m: 0 },
                Coupled { j: 1, m: -1 },
                Coupled { j: 0, m: 0 },
            ],
        }
    }

    /// Label of 0-based flat index `k`.
    pub fn label(self, k: usize) -> PhysicalLabel {
        self.labels()[k]
    }

    /// 0-based flat index of `label`, if the coding contains it.
    pub fn index_of(self, label: PhysicalLabel) -> Option<usize> {
        self.labels().iter().position(|&l| l == label)
    }

    /// Two-qubit slot `(a, b)`, each in {0, 1}, that the physical label with
    /// 0-based flat index `k` is read as when the two-qubit machinery is
    /// applied: the label goes back to its flat number, which the two-qubit
    /// coding turns into a pair.
    pub fn qubit_slot(self, k: usize) -> (usize, usize) {
        let flat = self
            .index_of(self.label(k))
            .expect("coding labels are a bijection");
        let label = IndexCoding::TwoQubit.label(flat);
        match label {
            PhysicalLabel::QubitPair { m1_x2, m2_x2 } => (usize::from(m1_x2 < 0), usize::from(m2_x2 < 0)),
            _ => unreachable!("two-qubit coding only holds qubit pairs"),
        }
    }
}

impl fmt::Display for IndexCoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IndexCoding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IndexCoding::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

/// Which subsystem survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    First,
    Second,
}

/// Partial trace of a bipartite state with dims `[d1, d2]`.
///
/// `Keep::First` returns ρ(1)_{a a'} = Σ_b ρ_{(a b),(a' b)}; `Keep::Second`
/// sums over the first index instead.
pub fn partial_trace(rho: &DensityMatrix, keep: Keep) -> Result<DensityMatrix> {
    let (d1, d2) = rho.bipartite_dims()?;
    let m = rho.matrix();
    let out = match keep {
        Keep::First => ComplexMatrix::from_fn(d1, |a, ap| (0..d2).map(|b| m[(a * d2 + b, ap * d2 + b)]).sum()),
        Keep::Second => ComplexMatrix::from_fn(d2, |b, bp| (0..d1).map(|a| m[(a * d2 + b, a * d2 + bp)]).sum()),
    };
    let d = out.dim();
    Ok(DensityMatrix::new_unchecked(out, vec![d]))
}

/// The two qubit-like marginals of a 4×4 state read through `coding`.
///
/// Each flat index is sent to the two-qubit slot given by
/// [`IndexCoding::qubit_slot`] and both partial traces are taken there, so
/// for `TwoQubit` this is exactly [`partial_trace`].
pub fn coded_marginals(rho: &DensityMatrix, coding: IndexCoding) -> Result<(DensityMatrix, DensityMatrix)> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    let m = rho.matrix();
    let slots: Vec<(usize, usize)> = (0..4).map(|k| coding.qubit_slot(k)).collect();
    let mut first = ComplexMatrix::zeros(2);
    let mut second = ComplexMatrix::zeros(2);
    for j in 0..4 {
        for k in 0..4 {
            let (a, b) = slots[j];
            let (ap, bp) = slots[k];
            if b == bp {
                first[(a, ap)] += m[(j, k)];
            }
            if a == ap {
                second[(b, bp)] += m[(j, k)];
            }
        }
    }
    Ok((
        DensityMatrix::new_unchecked(first, vec![2]),
        DensityMatrix::new_unchecked(second, vec![2]),
    ))
}

/// Rearrangement of flat basis indices, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// From 0-based images.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection of 0..{n}")));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    /// From 1-based images, the way the basis is numbered in print.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(format!("{images:?} is not 1-based")));
        }
        Self::new(images.iter().map(|i| i - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// Swap of two 0-based positions.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Self { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// 0-based image of 0-based `j`.
    pub fn apply(&self, j: usize) -> usize {
        self.images[j]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    /// Every permutation of `n` elements in lexicographic order of images; the
    /// position in the returned list is the permutation's stable id.
    pub fn all(n: usize) -> Result<Vec<Permutation>> {
        if n > MAX_ENUMERATED_PERMUTATION {
            return Err(Error::ParameterOutOfRange(format!(
                "exhaustive enumeration limited to n <= {MAX_ENUMERATED_PERMUTATION}, got {n}"
            )));
        }
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation {
                images: current.clone(),
            });
            if !next_lexicographic(&mut current) {
                return Ok(out);
            }
        }
    }

    /// Uniformly random permutation (Fisher–Yates), for sizes too large to enumerate.
    pub fn random(n: usize, rng: &mut SeededRng) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = ((rng.uniform() * (i + 1) as f64) as usize).min(i);
            images.swap(i, j);
        }
        Self { images }
    }
}

fn next_lexicographic(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// (ρ_p)_{jk} = ρ_{p(j) p(k)}.
pub fn permute_basis(rho: &DensityMatrix, p: &Permutation) -> Result<DensityMatrix> {
    if p.len() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: p.len(),
        });
    }
    let m = rho.matrix();
    let out = ComplexMatrix::from_fn(rho.dim(), |j, k| m[(p.apply(j), p.apply(k))]);
    Ok(DensityMatrix::new_unchecked(out, rho.dims().to_vec()))
}

/// The 4×4 Clebsch–Gordan matrix: identity corners around the 2×2 block
/// (1/√2)[[1, 1], [−1, 1]]. Its rows are the coupled basis vectors written in
/// the uncoupled basis.
pub fn clebsch_gordan_matrix() -> ComplexMatrix {
    let h = FRAC_1_SQRT_2;
    ComplexMatrix::from_real_rows(&[
        vec![1.0, 0.0, 0.0, 0.0],
        vec![0.0, h, h, 0.0],
        vec![0.0, -h, h, 0.0],
        vec![0.0, 0.0, 0.0, 1.0],
    ])
    .expect("4x4 literal")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisDirection {
    /// ρ ↦ CρC†.
    ToCoupled,
    /// ρ ↦ C†ρC.
    ToUncoupled,
}

pub fn change_basis_coupled(rho: &DensityMatrix, direction: BasisDirection) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    let c = clebsch_gordan_matrix();
    let u = match direction {
        BasisDirection::ToCoupled => c,
        BasisDirection::ToUncoupled => c.adjoint(),
    };
    Ok(DensityMatrix::new_unchecked(
        conjugate_unchecked(rho.matrix(), &u),
        rho.dims().to_vec(),
    ))
}

/// Output of [`block_normalized_maps`]: the diagonal 2×2 blocks of a 4×4
/// state, each divided by its trace. A block whose trace is at most
/// [`DEGENERATE_BLOCK`] has no normalized state.
#[derive(Debug, Clone)]
pub struct BlockMaps {
    pub p1: f64,
    pub sigma1: Option<DensityMatrix>,
    pub p2: f64,
    pub sigma2: Option<DensityMatrix>,
}

pub fn block_normalized_maps(rho: &DensityMatrix) -> Result<BlockMaps> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    let m = rho.matrix();
    let normalized = |indices: [usize; 2]| -> (f64, Option<DensityMatrix>) {
        let block = m.block(&indices);
        let p = block.trace().re;
        if p <= DEGENERATE_BLOCK {
            return (p.max(0.0), None);
        }
        let mut sigma = block.scale_real(1.0 / p);
        for i in 0..2 {
            sigma[(i, i)].im = 0.0;
        }
        (p, Some(DensityMatrix::new_unchecked(sigma, vec![2])))
    };
    let (p1, sigma1) = normalized([0, 1]);
    let (p2, sigma2) = normalized([2, 3]);
    Ok(BlockMaps { p1, sigma1, p2, sigma2 })
}

/// Population ⟨ψ|ρ|ψ⟩ of the state vector `psi`.
pub fn expectation(rho: &DensityMatrix, psi: &[Complex64]) -> f64 {
    let m = rho.matrix();
    let n = rho.dim();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += psi[i].conj() * m[(i, j)] * psi[j];
        }
    }
    acc.re
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::kron;
    use crate::random::SeededRng;
    use crate::states::{named_state, random_density, validate, Measure, StateLabel, STATE_TOL};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn generic_state() -> DensityMatrix {
        random_density(4, 4, 99, Measure::HilbertSchmidt).unwrap()
    }

    #[test]
    fn coding_orders() {
        use PhysicalLabel::*;
        assert_eq!(IndexCoding::TwoQubit.label(1), QubitPair { m1_x2: 1, m2_x2: -1 });
        assert_eq!(IndexCoding::TwoQubit.label(2), QubitPair { m1_x2: -1, m2_x2: 1 });
        assert_eq!(IndexCoding::SpinThreeHalf.label(0), Projection { m_x2: 3 });
        assert_eq!(IndexCoding::SpinThreeHalf.label(3), Projection { m_x2: -3 });
        assert_eq!(IndexCoding::TripletSinglet.label(2), Coupled { j: 1, m: -1 });
        assert_eq!(IndexCoding::TripletSinglet.label(3), Coupled { j: 0, m: 0 });
        for coding in IndexCoding::ALL {
            for k in 0..4 {
                assert_eq!(coding.index_of(coding.label(k)), Some(k));
            }
            let slots: Vec<_> = (0..4).map(|k| coding.qubit_slot(k)).collect();
            assert_eq!(slots, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        }
        assert_eq!(IndexCoding::SpinThreeHalf.label(1).to_string(), "1/2");
        assert_eq!("triplet_singlet".parse::<IndexCoding>().unwrap(), IndexCoding::TripletSinglet);
        assert!("qutrit".parse::<IndexCoding>().is_err());
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let bell = named_state(StateLabel::BellPhiPlus).unwrap();
        for keep in [Keep::First, Keep::Second] {
            let m = partial_trace(&bell, keep).unwrap();
            assert!(m.matrix().max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-15);
        }
    }

    #[test]
    fn product_state_factorizes() {
        let sigma = ComplexMatrix::from_rows(&[vec![c(0.7, 0.0), c(0.1, 0.2)], vec![c(0.1, -0.2), c(0.3, 0.0)]]).unwrap();
        let tau = ComplexMatrix::from_rows(&[vec![c(0.4, 0.0), c(-0.2, 0.1)], vec![c(-0.2, -0.1), c(0.6, 0.0)]]).unwrap();
        let rho = DensityMatrix::new(kron(&sigma, &tau), vec![2, 2]).unwrap();
        assert!(partial_trace(&rho, Keep::First).unwrap().matrix().max_abs_diff(&sigma) < 1e-15);
        assert!(partial_trace(&rho, Keep::Second).unwrap().matrix().max_abs_diff(&tau) < 1e-15);
    }

    #[test]
    fn two_qubit_marginals_match_explicit_block_sums() {
        let rho = generic_state();
        let r = |j: usize, k: usize| rho.matrix()[(j - 1, k - 1)];
        let rho1 = ComplexMatrix::from_rows(&[
            vec![r(1, 1) + r(2, 2), r(1, 3) + r(2, 4)],
            vec![r(3, 1) + r(4, 2), r(3, 3) + r(4, 4)],
        ])
        .unwrap();
        let rho2 = ComplexMatrix::from_rows(&[
            vec![r(1, 1) + r(3, 3), r(1, 2) + r(3, 4)],
            vec![r(2, 1) + r(4, 3), r(2, 2) + r(4, 4)],
        ])
        .unwrap();
        let first = partial_trace(&rho, Keep::First).unwrap();
        let second = partial_trace(&rho, Keep::Second).unwrap();
        assert!(first.matrix().max_abs_diff(&rho1) < 1e-15);
        assert!(second.matrix().max_abs_diff(&rho2) < 1e-15);
        let (c1, c2) = coded_marginals(&rho, IndexCoding::TwoQubit).unwrap();
        assert_eq!(c1, first);
        assert_eq!(c2, second);
    }

    #[test]
    fn spin_three_half_marginals() {
        let rho = generic_state();
        // flat index of projection m (doubled)
        let idx = |m_x2: i32| IndexCoding::SpinThreeHalf.index_of(PhysicalLabel::Projection { m_x2 }).unwrap();
        let r = |m: i32, mp: i32| rho.matrix()[(idx(m), idx(mp))];
        let expected_first = ComplexMatrix::from_rows(&[
            vec![r(3, 3) + r(1, 1), r(3, -1) + r(1, -3)],
            vec![r(-1, 3) + r(-3, 1), r(-1, -1) + r(-3, -3)],
        ])
        .unwrap();
        let expected_second = ComplexMatrix::from_rows(&[
            vec![r(3, 3) + r(-1, -1), r(3, 1) + r(-1, -3)],
            vec![r(1, 3) + r(-3, -1), r(1, 1) + r(-3, -3)],
        ])
        .unwrap();
        let (m1, m2) = coded_marginals(&rho, IndexCoding::SpinThreeHalf).unwrap();
        assert!(m1.matrix().max_abs_diff(&expected_first) < 1e-15);
        assert!(m2.matrix().max_abs_diff(&expected_second) < 1e-15);
    }

    #[test]
    fn diagonal_spin_three_half_marginals() {
        let rho = DensityMatrix::from_matrix(ComplexMatrix::from_real_diagonal(&[0.5, 0.25, 0.125, 0.125])).unwrap();
        let (m1, m2) = coded_marginals(&rho, IndexCoding::SpinThreeHalf).unwrap();
        assert_eq!(m1.matrix(), &ComplexMatrix::from_real_diagonal(&[0.75, 0.25]));
        assert_eq!(m2.matrix(), &ComplexMatrix::from_real_diagonal(&[0.625, 0.375]));
    }

    #[test]
    fn maximally_mixed_marginals_any_coding() {
        let rho = named_state(StateLabel::MaxMixed(4)).unwrap();
        for coding in IndexCoding::ALL {
            let (a, b) = coded_marginals(&rho, coding).unwrap();
            let half = ComplexMatrix::identity(2).scale_real(0.5);
            assert_eq!(a.matrix(), &half);
            assert_eq!(b.matrix(), &half);
        }
    }

    #[test]
    fn partial_trace_requires_bipartite() {
        let rho = named_state(StateLabel::MaxMixed(3)).unwrap();
        assert!(matches!(partial_trace(&rho, Keep::First), Err(Error::NotBipartite(_))));
    }

    #[test]
    fn permutations_enumerate_lexicographically() {
        let all = Permutation::all(4).unwrap();
        assert_eq!(all.len(), 24);
        assert_eq!(all[0], Permutation::identity(4));
        assert_eq!(all[1].one_based(), vec![1, 2, 4, 3]);
        assert_eq!(all[23].one_based(), vec![4, 3, 2, 1]);
        for w in all.windows(2) {
            assert!(w[0].images() < w[1].images());
        }
        assert!(Permutation::all(9).is_err());
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
    }

    #[test]
    fn permute_basis_examples() {
        let rho = generic_state();
        assert_eq!(permute_basis(&rho, &Permutation::identity(4)).unwrap(), rho);
        let d = DensityMatrix::from_matrix(ComplexMatrix::from_real_diagonal(&[0.4, 0.3, 0.2, 0.1])).unwrap();
        let swapped = permute_basis(&d, &Permutation::transposition(4, 0, 1)).unwrap();
        assert_eq!(swapped.matrix(), &ComplexMatrix::from_real_diagonal(&[0.3, 0.4, 0.2, 0.1]));
        assert!(matches!(
            permute_basis(&rho, &Permutation::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn permute_basis_preserves_spectrum() {
        let mut rng = SeededRng::new(4);
        for seed in 0..20 {
            let rho = random_density(4, 1 + seed as usize % 4, seed, Measure::HilbertSchmidt).unwrap();
            let p = Permutation::random(4, &mut rng);
            let before = rho.eigensystem().unwrap().values;
            let after = permute_basis(&rho, &p).unwrap().eigensystem().unwrap().values;
            for (a, b) in before.iter().zip(&after) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn all_permuted_marginals_are_states() {
        let rho = generic_state();
        for p in Permutation::all(4).unwrap() {
            let permuted = permute_basis(&rho, &p).unwrap();
            for coding in IndexCoding::ALL {
                let (a, b) = coded_marginals(&permuted, coding).unwrap();
                assert!(validate(a.matrix(), STATE_TOL).valid);
                assert!(validate(b.matrix(), STATE_TOL).valid);
            }
        }
    }

    #[test]
    fn clebsch_gordan_structure() {
        let cg = clebsch_gordan_matrix();
        assert!((&cg * &cg.adjoint()).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
        assert_eq!(cg.column(0)[0], c(1.0, 0.0));
        let row0: Vec<Complex64> = (0..4).map(|j| cg[(0, j)]).collect();
        assert_eq!(row0, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let h = FRAC_1_SQRT_2;
        let central = cg.block(&[1, 2]);
        let f = ComplexMatrix::from_real_rows(&[vec![h, h], vec![-h, h]]).unwrap();
        assert_eq!(central, f);
        assert_eq!(cg[(3, 3)], c(1.0, 0.0));
    }

    #[test]
    fn coupled_round_trip() {
        let rho = generic_state();
        let there = change_basis_coupled(&rho, BasisDirection::ToCoupled).unwrap();
        let back = change_basis_coupled(&there, BasisDirection::ToUncoupled).unwrap();
        assert!(back.matrix().max_abs_diff(rho.matrix()) < 1e-12);
        let mixed = named_state(StateLabel::MaxMixed(4)).unwrap();
        let mixed_c = change_basis_coupled(&mixed, BasisDirection::ToCoupled).unwrap();
        assert!(mixed_c.matrix().max_abs_diff(mixed.matrix()) < 1e-16);
    }

    #[test]
    fn coupled_basis_on_bell_states() {
        // C only mixes |2> and |3>, so Φ⁺ (supported on |1>, |4>) is untouched
        let bell = named_state(StateLabel::BellPhiPlus).unwrap();
        let coupled = change_basis_coupled(&bell, BasisDirection::ToCoupled).unwrap();
        assert!(coupled.matrix().max_abs_diff(bell.matrix()) < 1e-16);
        let ev = coupled.eigensystem().unwrap().values;
        assert!((ev[3] - 1.0).abs() < 1e-12 && ev[..3].iter().all(|v| v.abs() < 1e-12));

        // Ψ⁺ = (|2> + |3>)/√2 becomes the coupled basis vector 2, diagonal
        let h = FRAC_1_SQRT_2;
        let psi_plus = [0.0, h, h, 0.0].map(|x| c(x, 0.0));
        let rho = DensityMatrix::from_matrix(ComplexMatrix::projector(&psi_plus)).unwrap();
        let coupled = change_basis_coupled(&rho, BasisDirection::ToCoupled).unwrap();
        assert!(coupled.matrix().max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.0, 1.0, 0.0, 0.0])) < 1e-15);

        // Ψ⁻ = (|2> − |3>)/√2 lands on coupled basis vector 3
        let psi_minus = [0.0, h, -h, 0.0].map(|x| c(x, 0.0));
        let rho = DensityMatrix::from_matrix(ComplexMatrix::projector(&psi_minus)).unwrap();
        let coupled = change_basis_coupled(&rho, BasisDirection::ToCoupled).unwrap();
        assert!(coupled.matrix().max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.0, 0.0, 1.0, 0.0])) < 1e-15);
        assert!((expectation(&rho, &psi_minus) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn block_maps_examples() {
        let mixed = named_state(StateLabel::MaxMixed(4)).unwrap();
        let b = block_normalized_maps(&mixed).unwrap();
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        assert_eq!((b.p1, b.p2), (0.5, 0.5));
        assert_eq!(b.sigma1.unwrap().matrix(), &half);
        assert_eq!(b.sigma2.unwrap().matrix(), &half);

        let pure = named_state(StateLabel::PureBasis { dim: 4, k: 1 }).unwrap();
        let b = block_normalized_maps(&pure).unwrap();
        assert_eq!((b.p1, b.p2), (1.0, 0.0));
        assert_eq!(b.sigma1.unwrap().matrix(), &ComplexMatrix::from_real_diagonal(&[1.0, 0.0]));
        assert!(b.sigma2.is_none());

        let bell = named_state(StateLabel::BellPhiPlus).unwrap();
        let b = block_normalized_maps(&bell).unwrap();
        assert!((b.p1 - 0.5).abs() < 1e-15 && (b.p2 - 0.5).abs() < 1e-15);
        assert!(b.sigma1.unwrap().matrix().max_abs_diff(&ComplexMatrix::from_real_diagonal(&[1.0, 0.0])) < 1e-15);
        assert!(b.sigma2.unwrap().matrix().max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.0, 1.0])) < 1e-15);
    }

    #[test]
    fn block_maps_reassemble_diagonal_blocks() {
        for seed in 0..10 {
            let rho = random_density(4, 3, seed, Measure::HilbertSchmidt).unwrap();
            let b = block_normalized_maps(&rho).unwrap();
            assert!((b.p1 + b.p2 - 1.0).abs() < 1e-12);
            let s1 = b.sigma1.as_ref().unwrap();
            let s2 = b.sigma2.as_ref().unwrap();
            assert!(validate(s1.matrix(), STATE_TOL).valid);
            assert!(validate(s2.matrix(), STATE_TOL).valid);
            let top = rho.matrix().block(&[0, 1]);
            let bottom = rho.matrix().block(&[2, 3]);
            assert!(s1.matrix().scale_real(b.p1).max_abs_diff(&top) < 1e-15);
            assert!(s2.matrix().scale_real(b.p2).max_abs_diff(&bottom) < 1e-15);
        }
    }
}
