//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::LN_2;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qudit_ineq::entropy::{chain_terms, improved_chain_check, permutation_scan, subadditivity_check};
use qudit_ineq::maps::{change_basis_coupled, clebsch_gordan_matrix, BasisDirection};
use qudit_ineq::matcore::kron;
use qudit_ineq::random::{trial_seed, SeededRng};
use qudit_ineq::states::{named_state, random_density};
use qudit_ineq::tomography::{
    averaged_information, joint_tomogram, max_local_information, quantum_information, tomo_marginals, tomogram,
    tomographic_entropy, tomographic_information, AxisDirection, OptimizerConfig,
};
use qudit_ineq::{von_neumann, ComplexMatrix, DensityMatrix, IndexCoding, Measure, StateLabel};
use qudit_ineq_cli::{run, Command, EnsembleSpec, Family, OutputFormat, RunConfig, StateSource};
use rayon::prelude::*;

const SEED: u64 = 42;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn hs_state(i: usize) -> DensityMatrix {
    random_density(4, 4, trial_seed(SEED, i as u64), Measure::HilbertSchmidt).unwrap()
}

fn ensure(ok: bool, detail: String) -> Verdict {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn bell_fixture() -> Verdict {
    let start = Instant::now();
    let rho = named_state(StateLabel::BellPhiPlus).unwrap();
    let iq = quantum_information(&rho).unwrap();
    let slack = subadditivity_check(&rho, IndexCoding::TwoQubit).unwrap().slack;
    let s12 = von_neumann(&rho).unwrap();
    let elapsed = start.elapsed();
    let ok = (iq - 2.0 * LN_2).abs() <= 1e-9
        && (slack - 2.0 * LN_2).abs() <= 1e-9
        && s12.abs() <= 1e-9
        && elapsed < Duration::from_secs(1);
    ensure(ok, format!("I_q={iq:.10} slack={slack:.10} S12={s12:.1e} in {elapsed:.2?}"))
}

fn equality_fixtures() -> Verdict {
    let mixed = named_state(StateLabel::MaxMixed(4)).unwrap();
    let mixed_slack = subadditivity_check(&mixed, IndexCoding::TwoQubit).unwrap().slack;
    let mut rng = SeededRng::new(SEED);
    let mut worst_slack: f64 = 0.0;
    let mut worst_info: f64 = 0.0;
    for k in 0..20 {
        let sigma = random_density(2, 2, trial_seed(SEED, 2 * k), Measure::HilbertSchmidt).unwrap();
        let tau = random_density(2, 1 + (k as usize % 2), trial_seed(SEED, 2 * k + 1), Measure::HilbertSchmidt).unwrap();
        let rho = DensityMatrix::new(kron(sigma.matrix(), tau.matrix()), vec![2, 2]).unwrap();
        worst_slack = worst_slack.max(subadditivity_check(&rho, IndexCoding::TwoQubit).unwrap().slack);
        for _ in 0..100 {
            let a1 = AxisDirection::random(&mut rng);
            let a2 = AxisDirection::random(&mut rng);
            worst_info = worst_info.max(tomographic_information(&rho, a1, a2).unwrap());
        }
    }
    let ok = mixed_slack.abs() <= 1e-9 && worst_slack <= 1e-9 && worst_info <= 1e-9;
    ensure(
        ok,
        format!(
            "I4/4 slack={mixed_slack:.1e}; 20 product states: max slack={worst_slack:.1e}, max I(n1,n2)={worst_info:.1e} over 100 axis pairs each"
        ),
    )
}

fn permutation_family() -> Verdict {
    // single-threaded on purpose: the runtime bound is stated for one thread
    let start = Instant::now();
    let mut reports = 0usize;
    let mut min_slack = f64::INFINITY;
    for coding in [IndexCoding::TwoQubit, IndexCoding::SpinThreeHalf] {
        for i in 0..10_000 {
            for r in permutation_scan(&hs_state(i), coding).unwrap() {
                reports += 1;
                min_slack = min_slack.min(r.slack);
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = reports == 2 * 24 * 10_000 && min_slack >= -1e-9 && elapsed < Duration::from_secs(300);
    ensure(ok, format!("{reports} reports, min slack={min_slack:.3e}, {elapsed:.2?} single-threaded"))
}

fn improved_chain() -> Verdict {
    let per_state: Vec<(f64, f64)> = (0..10_000)
        .into_par_iter()
        .map(|i| {
            let rho = hs_state(i);
            let min = improved_chain_check(&rho).unwrap().iter().map(|r| r.slack).fold(f64::INFINITY, f64::min);
            let t = chain_terms(&rho).unwrap();
            (min, t.s2 - t.block_average)
        })
        .collect();
    let min_slack = per_state.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let min_concavity = per_state.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    ensure(
        min_slack >= -1e-9 && min_concavity >= -1e-9,
        format!("min slack over 3x10^4 reports={min_slack:.3e}, min S2-<S2>={min_concavity:.3e}"),
    )
}

fn minimum_entropy() -> Verdict {
    let per_state: Vec<(f64, f64)> = (0..100)
        .into_par_iter()
        .map(|i| {
            let rho = hs_state(i);
            let s = von_neumann(&rho).unwrap();
            let u0 = rho.eigensystem().unwrap().vectors.adjoint();
            let h0 = tomographic_entropy(&tomogram(&rho, &u0).unwrap());
            let mut rng = SeededRng::for_trial(SEED + 5, i as u64);
            let mut margin = f64::INFINITY;
            for _ in 0..1000 {
                let u = rng.haar_unitary(4);
                margin = margin.min(tomographic_entropy(&tomogram(&rho, &u).unwrap()) - s);
            }
            ((h0 - s).abs(), margin)
        })
        .collect();
    let max_dev = per_state.iter().map(|p| p.0).fold(0.0, f64::max);
    let min_margin = per_state.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    ensure(
        max_dev <= 1e-9 && min_margin >= -1e-9,
        format!("max |H(u0)-S|={max_dev:.1e}, min H(u)-S over 10^5 Haar unitaries={min_margin:.3e}"),
    )
}

fn information_bound() -> Verdict {
    let margins: Vec<f64> = (0..100)
        .into_par_iter()
        .map(|i| {
            let rho = hs_state(i);
            let iq = quantum_information(&rho).unwrap();
            let mut rng = SeededRng::for_trial(SEED + 6, i as u64);
            (0..1000)
                .map(|_| {
                    let a1 = AxisDirection::random(&mut rng);
                    let a2 = AxisDirection::random(&mut rng);
                    iq - tomographic_information(&rho, a1, a2).unwrap()
                })
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let min_margin = margins.iter().copied().fold(f64::INFINITY, f64::min);
    ensure(min_margin >= -1e-9, format!("min I_q-I(n1,n2) over 10^5 pairs={min_margin:.3e}"))
}

fn information_chain() -> Verdict {
    let cfg = OptimizerConfig::default();
    let rows: Vec<(f64, f64, f64)> = (0..100)
        .into_par_iter()
        .map(|i| {
            let rho = hs_state(i);
            let iq = quantum_information(&rho).unwrap();
            let (it, _) = max_local_information(&rho, &cfg).unwrap();
            let fine = averaged_information(&rho, 32, 32).unwrap();
            let coarse = averaged_information(&rho, 16, 16).unwrap();
            let gap = iq - it;
            (gap, (iq - fine) - (gap - 1e-6), (fine - coarse).abs())
        })
        .collect();
    let min_gap = rows.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
    let min_avg = rows.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let max_refine = rows.iter().map(|r| r.2).fold(0.0, f64::max);
    ensure(
        min_gap >= -1e-9 && min_avg >= 0.0 && max_refine < 1e-4,
        format!("min dI={min_gap:.3e}, min (I_q-<I>)-(dI-1e-6)={min_avg:.3e}, max |<I>_32-<I>_16|={max_refine:.1e}"),
    )
}

fn unitary_invariance() -> Verdict {
    let c = clebsch_gordan_matrix();
    let unitarity = (&c * &c.adjoint()).max_abs_diff(&ComplexMatrix::identity(4));
    let max_dev = (0..1000)
        .into_par_iter()
        .map(|i| {
            let rho = hs_state(i);
            let coupled = change_basis_coupled(&rho, BasisDirection::ToCoupled).unwrap();
            (von_neumann(&coupled).unwrap() - von_neumann(&rho).unwrap()).abs()
        })
        .reduce(|| 0.0, f64::max);
    ensure(
        max_dev <= 1e-10 && unitarity <= 1e-14,
        format!("max |S(CrC+)-S(r)|={max_dev:.1e}, |CC+-I|={unitarity:.1e}"),
    )
}

fn marginal_locality() -> Verdict {
    let max_dev = (0..100)
        .into_par_iter()
        .map(|i| {
            let rho = hs_state(i);
            let mut rng = SeededRng::for_trial(SEED + 9, i as u64);
            let a1 = AxisDirection::random(&mut rng);
            let (reference, _) = tomo_marginals(&joint_tomogram(&rho, a1, AxisDirection::Z).unwrap()).unwrap();
            (0..10)
                .map(|_| {
                    let a2 = AxisDirection::random(&mut rng);
                    let (w1, _) = tomo_marginals(&joint_tomogram(&rho, a1, a2).unwrap()).unwrap();
                    w1.probabilities()
                        .iter()
                        .zip(reference.probabilities())
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0, f64::max)
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    ensure(max_dev <= 1e-12, format!("max per-entry change of w1={max_dev:.1e}"))
}

fn ensemble(count: usize) -> StateSource {
    StateSource::Ensemble(EnsembleSpec {
        count,
        dim: 4,
        rank: 4,
        measure: Measure::HilbertSchmidt,
        seed: SEED,
    })
}

fn determinism() -> Verdict {
    let mut configs = Vec::new();
    for family in [Family::Subadditivity, Family::PermutationScan, Family::ImprovedChain, Family::TomoChain] {
        let mut c = RunConfig::new(Command::Check, ensemble(if family == Family::TomoChain { 4 } else { 200 }));
        c.family = Some(family);
        c.coding = IndexCoding::SpinThreeHalf;
        configs.push(c);
    }
    configs.push(RunConfig::new(Command::Validate, ensemble(50)));
    let mut tomo = RunConfig::new(Command::Tomo, StateSource::Label(StateLabel::Werner(0.5)));
    tomo.format = OutputFormat::Csv;
    configs.push(tomo.clone());
    tomo.format = OutputFormat::Json;
    configs.push(tomo);

    let mut bytes = 0;
    for c in &configs {
        let a = run(c).map_err(|e| e.to_string())?;
        let b = run(c).map_err(|e| e.to_string())?;
        if a.output != b.output {
            return Err(format!("{:?} produced different output", c.command));
        }
        bytes += a.output.len();
    }

    let bin = env!("CARGO_BIN_EXE_qudit-ineq");
    let args = ["check", "--ensemble", "64", "--seed", "7", "--family", "permutation_scan", "--coding", "triplet_singlet"];
    let first = std::process::Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
    let second = std::process::Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
    ensure(
        first.status.success() && first.stdout == second.stdout && !first.stdout.is_empty(),
        format!(
            "{} library runs ({bytes} bytes) and 2 binary runs ({} bytes) byte-identical",
            2 * configs.len(),
            first.stdout.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("bell fixture", bell_fixture),
        ("equality fixtures", equality_fixtures),
        ("permutation family", permutation_family),
        ("improved chain", improved_chain),
        ("minimum tomographic entropy", minimum_entropy),
        ("information bound", information_bound),
        ("information chain", information_chain),
        ("unitary invariance", unitary_invariance),
        ("marginal locality", marginal_locality),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (tag, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag} {name}: {detail} [{:.2?}]", k + 1, start.elapsed());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
