//! Derivative-free maximization: a coarse grid followed by coordinate
//! descent with step halving.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

/// Search settings shared by the unitary-group optimizations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Grid points per angle.
    pub grid: usize,
    /// Refinement stops once the step drops below this.
    pub step_tol: f64,
    /// First refinement step.
    pub initial_step: f64,
    /// Haar-random unitaries probed by the minimum-entropy search.
    pub probes: usize,
    pub seed: u64,
    /// Hard cap on refinement moves.
    pub max_moves: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            grid: 12,
            step_tol: 1e-4,
            initial_step: PI / 12.0,
            probes: 64,
            seed: 0,
            max_moves: 100_000,
        }
    }
}

/// Result of a local refinement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refined<const N: usize> {
    pub point: [f64; N],
    pub value: f64,
    pub evaluations: usize,
}

/// Coordinate ascent from `start`: each coordinate is tried at ±step, the
/// first strict improvement is taken, and the step halves after a pass with
/// no improvement. `project` maps a trial point back onto the domain.
pub fn coordinate_ascent<const N: usize>(
    f: impl Fn(&[f64; N]) -> f64,
    project: impl Fn([f64; N]) -> [f64; N],
    start: [f64; N],
    start_value: f64,
    config: &OptimizerConfig,
) -> Refined<N> {
    let mut point = start;
    let mut value = start_value;
    let mut step = config.initial_step;
    let mut evaluations = 0;
    let mut moves = 0;
    while step >= config.step_tol && moves < config.max_moves {
        let mut improved = false;
        for c in 0..N {
            for sign in [1.0, -1.0] {
                let mut trial = point;
                trial[c] += sign * step;
                let trial = project(trial);
                let v = f(&trial);
                evaluations += 1;
                if v > value {
                    point = trial;
                    value = v;
                    improved = true;
                    moves += 1;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Refined {
        point,
        value,
        evaluations,
    }
}
