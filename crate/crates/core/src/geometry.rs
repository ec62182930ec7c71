//! Surfaces `X_k` in `su(N+1)` obtained from the Weierstrass-type immersion
//! formula, their fundamental forms, radii, curvature and Kähler angles, plus
//! the numeric quadratures and surface sampling.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraError, BiRationalFn, GaussianRational, WeightedMatrix};
use crate::model::{
    action_density, closed_form_action_density, closed_form_fk, closed_form_projector, ModelError, ModelInstance,
};
use crate::quadrature::{integrate_plane_radial, QuadConfig, QuadResult, QuadratureError};

/// Identifier of the fixed orthonormal basis used for surface coordinates.
pub const BASIS_ID: &str = "gellmann-v1";

#[derive(Debug, Clone, PartialEq)]
pub struct ImmersionField {
    pub instance: ModelInstance,
    pub k: usize,
    pub x: WeightedMatrix,
}

impl ImmersionField {
    pub fn is_anti_hermitian(&self) -> bool {
        self.x.adjoint() == -&self.x
    }

    pub fn is_traceless(&self) -> bool {
        self.x.trace().is_zero()
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `X_k = -i (P_k + 2 Σ_{j<k} P_j) + i (1 + 2k)/(1 + 2s) I`.
pub fn immersion(inst: ModelInstance, k: usize) -> Result<ImmersionField, ModelError> {
    inst.check_level(k)?;
    let n = inst.two_s();
    let mut sum = closed_form_projector(inst, k)?.mat;
    for j in 0..k {
        sum = &sum + &closed_form_projector(inst, j)?.mat.scale_const(&GaussianRational::from_int(2));
    }
    let c = GaussianRational::new(BigRational::zero(), rat(1 + 2 * k as i64, 1 + n as i64));
    let x = &sum.scale_const(&-GaussianRational::i()) + &WeightedMatrix::identity(n).scale_const(&c);
    Ok(ImmersionField { instance: inst, k, x })
}

/// `(A, B) = -½ tr(A B)`.
pub fn inner(a: &WeightedMatrix, b: &WeightedMatrix) -> Result<BiRationalFn, AlgebraError> {
    Ok(a.weighted_mul(b)?.trace().scale(&GaussianRational::from_ratio(-1, 2)))
}

/// Exact radius data for one level.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusRecord {
    pub k: usize,
    /// `(X_k, X_k)` when it is a real constant.
    #[serde(serialize_with = "ser_opt_rational")]
    pub radius_squared: Option<BigRational>,
    /// `|(-2k² + 2k(2s-1) + s - 1) / (1 + 2s)|`.
    #[serde(serialize_with = "ser_rational")]
    pub printed_closed_form: BigRational,
    pub agrees: bool,
}

pub(crate) fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub(crate) fn ser_opt_rational<S: serde::Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// The printed polynomial closed form for `R_k²`.
pub fn printed_radius_squared(inst: ModelInstance, k: usize) -> BigRational {
    let n = inst.two_s() as i64;
    let k = k as i64;
    // with s = n/2: (-2k² + 2k(n-1) + n/2 - 1) / (1 + n)
    let num = rat(-4 * k * k + 4 * k * (n - 1) + n - 2, 2);
    (num / rat(1 + n, 1)).abs()
}

fn real_constant(f: &BiRationalFn) -> Option<BigRational> {
    f.as_constant().filter(|c| c.is_real()).map(|c| c.re)
}

pub fn radius(inst: ModelInstance, k: usize) -> Result<RadiusRecord, ModelError> {
    let x = immersion(inst, k)?.x;
    let rsq = real_constant(&inner(&x, &x)?);
    let printed = printed_radius_squared(inst, k);
    Ok(RadiusRecord {
        k,
        agrees: rsq.as_ref() == Some(&printed),
        radius_squared: rsq,
        printed_closed_form: printed,
    })
}

/// `tr(∂P_k ∂̄P_k)`, computed from the projector.
pub fn metric_density(inst: ModelInstance, k: usize) -> Result<BiRationalFn, ModelError> {
    Ok(action_density(&closed_form_projector(inst, k)?.mat))
}

/// Metric density closed form `2(2sk + s - k²) / (1 + ξ₊ξ₋)²`.
pub fn closed_form_metric_density(inst: ModelInstance, k: usize) -> BiRationalFn {
    closed_form_action_density(inst, k)
}

/// Matrix coefficients of the second fundamental form.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondForm {
    /// coefficient of dξ₊²: `-F ∂([∂P, P] / F)`
    pub plus_plus: WeightedMatrix,
    /// coefficient of dξ₊dξ₋: `2i [∂̄P, ∂P]`
    pub mixed: WeightedMatrix,
    /// coefficient of dξ₋²: `-F ∂̄([∂̄P, P] / F)`
    pub minus_minus: WeightedMatrix,
}

impl SecondForm {
    /// Every coefficient anti-Hermitian-valued in the sense of a real form:
    /// `mixed† = -mixed` and `minus_minus = -(plus_plus)†`.
    pub fn is_lie_algebra_valued(&self) -> bool {
        self.mixed.adjoint() == -&self.mixed && self.minus_minus == -&self.plus_plus.adjoint()
    }
}

pub fn second_form(inst: ModelInstance, k: usize) -> Result<SecondForm, ModelError> {
    let p = closed_form_projector(inst, k)?.mat;
    let (dp, dm) = (p.d_plus(), p.d_minus());
    let f = (&dp * &dm).trace();
    let inv_f = f.recip()?;
    let neg_f = -&f;
    let plus_plus = dp.commutator(&p)?.scale(&inv_f).d_plus().scale(&neg_f);
    let minus_minus = dm.commutator(&p)?.scale(&inv_f).d_minus().scale(&neg_f);
    let mixed = dm
        .commutator(&dp)?
        .scale_const(&GaussianRational::new(BigRational::zero(), rat(2, 1)));
    Ok(SecondForm {
        plus_plus,
        mixed,
        minus_minus,
    })
}

/// Gaussian curvature of the conformal metric `F |dξ|²`,
/// `K = -(2/F) ∂∂̄ ln F = -2 (F ∂∂̄F - ∂F ∂̄F) / F³`, when constant.
pub fn curvature_of_metric(f: &BiRationalFn) -> Result<Option<BigRational>, AlgebraError> {
    let (dp, dm) = (f.d_plus(), f.d_minus());
    let mixed = dp.d_minus();
    let num = &(f * &mixed) - &(&dp * &dm);
    let k = num.checked_div(&f.pow(3))?.scale(&GaussianRational::from_int(-2));
    Ok(real_constant(&k))
}

pub fn gauss_curvature(inst: ModelInstance, k: usize) -> Result<Option<BigRational>, ModelError> {
    Ok(curvature_of_metric(&metric_density(inst, k)?)?)
}

/// `K_k = 2 / (2sk + s - k²)`.
pub fn closed_form_curvature(inst: ModelInstance, k: usize) -> BigRational {
    rat(4, 1) / inst.action_coefficient(k)
}

/// `cos θ_k` from the two tangent densities
/// `A = ‖(I-P)∂f‖²`, `B = ‖(I-P)∂̄f‖²`, `tan²(θ/2) = B/A`, so `cos θ = (A-B)/(A+B)`.
pub fn kahler_angle(inst: ModelInstance, k: usize) -> Result<Option<BigRational>, ModelError> {
    let f = closed_form_fk(inst, k)?.vec;
    let norm = f.inner(&f)?;
    let tangent = |g: crate::algebra::WeightedVector| -> Result<BiRationalFn, ModelError> {
        let c = f.inner(&g)?.checked_div(&norm)?;
        let h = &g - &f.scale(&c);
        Ok(h.inner(&h)?)
    };
    let a = tangent(f.d_plus())?;
    let b = tangent(f.d_minus())?;
    let cos = (&a - &b).checked_div(&(&a + &b))?;
    Ok(real_constant(&cos))
}

/// `cos θ_k = (s - k) / (2sk + s - k²)`.
pub fn closed_form_kahler_angle(inst: ModelInstance, k: usize) -> BigRational {
    rat(inst.two_s() as i64 - 2 * k as i64, 1) / inst.action_coefficient(k)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoincidenceReport {
    pub two_s: usize,
    /// Pairs `(k, l)`, `k < l`, with `X_k ≡ X_l`.
    pub coinciding: Vec<(usize, usize)>,
    pub pairs_checked: usize,
}

pub fn coincidence_check(inst: ModelInstance) -> Result<CoincidenceReport, ModelError> {
    let fields: Vec<WeightedMatrix> = inst
        .levels()
        .map(|k| immersion(inst, k).map(|f| f.x))
        .collect::<Result<_, _>>()?;
    let mut coinciding = Vec::new();
    let mut pairs_checked = 0;
    for k in 0..fields.len() {
        for l in k + 1..fields.len() {
            pairs_checked += 1;
            if (&fields[k] - &fields[l]).is_zero() {
                coinciding.push((k, l));
            }
        }
    }
    Ok(CoincidenceReport {
        two_s: inst.two_s(),
        coinciding,
        pairs_checked,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussBonnet {
    /// `(1/2π) ∬ K F dξ¹dξ²` by quadrature.
    pub value: f64,
    /// `K/(2π)` times the analytic area `π · 2(2sk + s - k²)`.
    pub shortcut: f64,
    pub error_estimate: f64,
}

fn density_integral(f: &BiRationalFn, scale: f64, cfg: &QuadConfig) -> Result<QuadResult, QuadratureError> {
    let g = |a: f64, b: f64| -> Result<f64, AlgebraError> { Ok(scale * f.eval_numeric(Complex64::new(a, b))?.re) };
    integrate_plane_radial(&g, cfg)
}

pub fn gauss_bonnet(inst: ModelInstance, k: usize, cfg: &QuadConfig) -> Result<GaussBonnet, GeometryError> {
    let f = metric_density(inst, k)?;
    let curvature = curvature_of_metric(&f)?.ok_or(GeometryError::NonConstant("Gaussian curvature"))?;
    let kf = to_f64(&curvature);
    let r = density_integral(&f, kf / (2.0 * PI), cfg)?;
    let area = PI * to_f64(&inst.action_coefficient(k));
    Ok(GaussBonnet {
        value: r.value,
        shortcut: kf * area / (2.0 * PI),
        error_estimate: r.error_estimate,
    })
}

/// `∬ tr(∂P_k ∂̄P_k) dξ¹dξ²`; expected `2π(2sk + s - k²)`.
pub fn total_action(inst: ModelInstance, k: usize, cfg: &QuadConfig) -> Result<QuadResult, GeometryError> {
    let f = metric_density(inst, k)?;
    Ok(density_integral(&f, 1.0, cfg)?)
}

pub fn expected_total_action(inst: ModelInstance, k: usize) -> f64 {
    PI * to_f64(&inst.action_coefficient(k))
}

fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, thiserror::Error)]
pub enum GeometryError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error("{0} is not constant")]
    NonConstant(&'static str),
}

/// Summary of the exact and numeric invariants of one surface.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometryReport {
    pub two_s: usize,
    pub k: usize,
    #[serde(serialize_with = "ser_rational")]
    pub radius_squared: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub gauss_curvature: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub cos_kahler: BigRational,
    pub euler_characteristic: f64,
    pub total_action: f64,
}

impl GeometryReport {
    pub fn compute(inst: ModelInstance, k: usize, cfg: &QuadConfig) -> Result<Self, GeometryError> {
        let radius_squared = radius(inst, k)?
            .radius_squared
            .ok_or(GeometryError::NonConstant("(X_k, X_k)"))?;
        let gauss_curvature = gauss_curvature(inst, k)?.ok_or(GeometryError::NonConstant("Gaussian curvature"))?;
        let cos_kahler = kahler_angle(inst, k)?.ok_or(GeometryError::NonConstant("Kähler angle"))?;
        let gb = gauss_bonnet(inst, k, cfg)?;
        let action = total_action(inst, k, cfg)?;
        Ok(GeometryReport {
            two_s: inst.two_s(),
            k,
            radius_squared,
            gauss_curvature,
            cos_kahler,
            euler_characteristic: gb.value,
            total_action: action.value,
        })
    }
}

/// Orthonormal basis of `su(d)` under `(A, B) = -½ tr(AB)`, as dense row-major
/// complex matrices. Order: `i(E_jk + E_kj)` for `j < k` lexicographic, then
/// `E_jk - E_kj` for `j < k` lexicographic, then `i sqrt(2/(l(l+1))) diag(1,…,1,-l,0,…)`
/// for `l = 1..d-1`.
pub fn gellmann_basis(d: usize) -> Vec<Vec<Complex64>> {
    let zero = Complex64::new(0.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|j| (j + 1..d).map(move |k| (j, k))).collect();
    let mut basis = Vec::with_capacity(d * d - 1);
    for &(j, k) in &pairs {
        let mut m = vec![zero; d * d];
        m[j * d + k] = i;
        m[k * d + j] = i;
        basis.push(m);
    }
    for &(j, k) in &pairs {
        let mut m = vec![zero; d * d];
        m[j * d + k] = Complex64::new(1.0, 0.0);
        m[k * d + j] = Complex64::new(-1.0, 0.0);
        basis.push(m);
    }
    for l in 1..d {
        let c = (2.0 / (l * (l + 1)) as f64).sqrt();
        let mut m = vec![zero; d * d];
        for t in 0..l {
            m[t * d + t] = i * c;
        }
        m[l * d + l] = i * (-(l as f64) * c);
        basis.push(m);
    }
    basis
}

/// `-½ tr(A B)` for dense row-major matrices.
pub fn dense_inner(a: &[Complex64], b: &[Complex64], d: usize) -> Complex64 {
    let mut tr = Complex64::new(0.0, 0.0);
    for i in 0..d {
        for l in 0..d {
            tr += a[i * d + l] * b[l * d + i];
        }
    }
    tr * -0.5
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridConfig {
    /// Points per axis; `1` samples the origin only.
    pub resolution: usize,
    /// Half-width of the square `[-R, R]²` in the `(ξ¹, ξ²)` plane.
    pub radius_bound: f64,
}

impl GridConfig {
    /// Grid points with `ξ¹` as the outer (slow) index.
    pub fn points(&self) -> Vec<(f64, f64)> {
        if self.resolution <= 1 {
            return vec![(0.0, 0.0)];
        }
        let n = self.resolution;
        let axis: Vec<f64> = (0..n)
            .map(|a| -self.radius_bound + 2.0 * self.radius_bound * a as f64 / (n - 1) as f64)
            .collect();
        axis.iter().flat_map(|&u| axis.iter().map(move |&v| (u, v))).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceSample {
    pub xi1: f64,
    pub xi2: f64,
    pub coords: Vec<f64>,
    pub metric_density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceSampleSet {
    pub two_s: usize,
    pub k: usize,
    pub grid: GridConfig,
    pub basis: &'static str,
    #[serde(serialize_with = "ser_rational")]
    pub radius_squared: BigRational,
    pub samples: Vec<SurfaceSample>,
}

impl SurfaceSampleSet {
    /// Largest relative deviation of a sample norm from `R_k`.
    pub fn max_norm_deviation(&self) -> f64 {
        let r = to_f64(&self.radius_squared).sqrt();
        self.samples
            .iter()
            .map(|s| (s.coords.iter().map(|c| c * c).sum::<f64>().sqrt() - r).abs() / r)
            .fold(0.0, f64::max)
    }
}

pub fn sample_surface(inst: ModelInstance, k: usize, grid: GridConfig) -> Result<SurfaceSampleSet, GeometryError> {
    let x = immersion(inst, k)?.x;
    let radius_squared = radius(inst, k)?
        .radius_squared
        .ok_or(GeometryError::NonConstant("(X_k, X_k)"))?;
    let density = metric_density(inst, k)?;
    let d = inst.dim();
    let basis = gellmann_basis(d);
    let samples = grid
        .points()
        .into_par_iter()
        .map(|(xi1, xi2)| {
            let xi = Complex64::new(xi1, xi2);
            let m = x.eval_numeric(xi)?;
            // `+ 0.0` folds negative zeros so exports do not print `-0`
            let coords = basis.iter().map(|b| dense_inner(&m, b, d).re + 0.0).collect();
            Ok(SurfaceSample {
                xi1,
                xi2,
                coords,
                metric_density: density.eval_numeric(xi)?.re,
            })
        })
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    Ok(SurfaceSampleSet {
        two_s: inst.two_s(),
        k,
        grid,
        basis: BASIS_ID,
        radius_squared,
        samples,
    })
}

/// Exact `(X_k, X_k)` without the closed-form comparison.
pub fn radius_squared(inst: ModelInstance, k: usize) -> Result<Option<BigRational>, ModelError> {
    Ok(radius(inst, k)?.radius_squared)
}
