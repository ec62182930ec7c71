//! Adaptive Gauss–Legendre quadrature and the compactified radial integral
//! over the plane used for the action and Gauss–Bonnet checks.

use std::f64::consts::PI;

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("no convergence within the subdivision budget: estimate {estimate} (error ~ {error_estimate})")]
    NonConvergence { estimate: f64, error_estimate: f64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    /// Absolute error target for the whole integral.
    pub abs_tol: f64,
    /// Maximum bisection depth of any subinterval.
    pub max_depth: u32,
    /// Gauss–Legendre points per panel.
    pub order: usize,
    /// Angles averaged per radius for integrands that only depend on `|ξ₊|`.
    pub angular_samples: usize,
    /// Integrand evaluations after which refinement stops.
    pub max_evaluations: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-8,
            max_depth: 30,
            order: 10,
            angular_samples: 4,
            max_evaluations: 1_000_000,
        }
    }
}

impl QuadConfig {
    pub fn with_tolerance(abs_tol: f64) -> Self {
        QuadConfig {
            abs_tol,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<(), QuadratureError> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(QuadratureError::InvalidTolerance(self.abs_tol));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Chebyshev-like initial guess, then Newton on P_n
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, 0.0);
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

struct Panel<'a, F> {
    f: &'a F,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    max_depth: u32,
    max_evaluations: usize,
    evaluations: usize,
}

impl<F: Fn(f64) -> Result<f64, AlgebraError>> Panel<'_, F> {
    fn rule(&mut self, a: f64, b: f64) -> Result<f64, AlgebraError> {
        let (c, h) = ((a + b) / 2.0, (b - a) / 2.0);
        let mut s = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += w * (self.f)(c + h * x)?;
        }
        self.evaluations += self.nodes.len();
        Ok(s * h)
    }

    /// Returns `(value, error, converged)`; subintervals are visited left to right,
    /// so the summation order is fixed.
    fn refine(&mut self, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> Result<(f64, f64, bool), AlgebraError> {
        let m = (a + b) / 2.0;
        let left = self.rule(a, m)?;
        let right = self.rule(m, b)?;
        let halves = left + right;
        let err = (halves - whole).abs();
        if err <= tol {
            return Ok((halves, err, true));
        }
        if depth >= self.max_depth || self.evaluations >= self.max_evaluations {
            return Ok((halves, err, false));
        }
        let (lv, le, lc) = self.refine(a, m, left, tol / 2.0, depth + 1)?;
        let (rv, re, rc) = self.refine(m, b, right, tol / 2.0, depth + 1)?;
        Ok((lv + rv, le + re, lc && rc))
    }
}

/// Integrates `f` over `[a, b]` to absolute tolerance `cfg.abs_tol`.
pub fn adaptive_gauss_legendre<F>(f: &F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult, QuadratureError>
where
    F: Fn(f64) -> Result<f64, AlgebraError>,
{
    cfg.validate()?;
    let (nodes, weights) = gauss_legendre(cfg.order.max(2));
    let mut panel = Panel {
        f,
        nodes,
        weights,
        max_depth: cfg.max_depth,
        max_evaluations: cfg.max_evaluations,
        evaluations: 0,
    };
    let whole = panel.rule(a, b)?;
    let (value, error_estimate, converged) = panel.refine(a, b, whole, cfg.abs_tol, 0)?;
    if !converged || !value.is_finite() {
        return Err(QuadratureError::NonConvergence {
            estimate: value,
            error_estimate,
        });
    }
    Ok(QuadResult {
        value,
        error_estimate,
        evaluations: panel.evaluations,
    })
}

/// `∬ g(ξ¹, ξ²) dξ¹ dξ²` over the plane for integrands depending on `u = r²`
/// only (sampled along `angular_samples` rays and averaged).
///
/// With `u = t / (1 - t)` the area element becomes `π dt / (1 - t)²` on `[0, 1)`.
pub fn integrate_plane_radial<G>(g: &G, cfg: &QuadConfig) -> Result<QuadResult, QuadratureError>
where
    G: Fn(f64, f64) -> Result<f64, AlgebraError>,
{
    let rays = cfg.angular_samples.max(1);
    let integrand = |t: f64| -> Result<f64, AlgebraError> {
        let u = t / (1.0 - t);
        let r = u.sqrt();
        let mut s = 0.0;
        for a in 0..rays {
            let phi = 2.0 * PI * a as f64 / rays as f64;
            s += g(r * phi.cos(), r * phi.sin())?;
        }
        Ok(PI * s / rays as f64 / ((1.0 - t) * (1.0 - t)))
    };
    adaptive_gauss_legendre(&integrand, 0.0, 1.0, cfg)
}
