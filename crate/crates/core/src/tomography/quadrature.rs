//! Product quadrature on the unit sphere: Gauss–Legendre in cosθ times the
//! periodic trapezoid rule in φ.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

use super::su2::AxisDirection;

/// Gauss–Legendre nodes and weights on [−1, 1], nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        // Tricomi initial guess, then Newton on P_n
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Quadrature orders per sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureOrder {
    pub n_theta: usize,
    pub n_phi: usize,
}

impl QuadratureOrder {
    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta < 2 || n_phi < 2 {
            return Err(Error::BadQuadratureOrder { n_theta, n_phi });
        }
        Ok(Self { n_theta, n_phi })
    }
}

impl Default for QuadratureOrder {
    fn default() -> Self {
        Self { n_theta: 32, n_phi: 32 }
    }
}

/// Nodes on the sphere with weights normalized so that they sum to one,
/// i.e. Σ wᵢ f(nᵢ) ≈ (1/4π) ∫ f dn.
#[derive(Debug, Clone)]
pub struct SphereRule {
    pub nodes: Vec<AxisDirection>,
    pub weights: Vec<f64>,
}

impl SphereRule {
    pub fn new(order: QuadratureOrder) -> Result<Self> {
        let QuadratureOrder { n_theta, n_phi } = QuadratureOrder::new(order.n_theta, order.n_phi)?;
        let (x, w) = gauss_legendre(n_theta);
        let dphi = TAU / n_phi as f64;
        let mut nodes = Vec::with_capacity(n_theta * n_phi);
        let mut weights = Vec::with_capacity(n_theta * n_phi);
        for (xi, wi) in x.iter().zip(&w) {
            let theta = xi.clamp(-1.0, 1.0).acos();
            for l in 0..n_phi {
                nodes.push(AxisDirection::wrapped(theta, l as f64 * dphi));
                weights.push(wi * dphi / (4.0 * PI));
            }
        }
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// (1/4π) ∫ f dn.
    pub fn average(&self, f: impl Fn(AxisDirection) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&n, &w)| w * f(n)).sum()
    }
}
