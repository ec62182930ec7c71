//! The Veronese solution family: vectors `f_k`, rank-1 projectors `P_k`,
//! higher-rank projectors, the analytic raising/lowering operators and the
//! Euler–Lagrange residuals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{binomial, AlgebraError, BiRationalFn, GaussianRational, WeightedMatrix, WeightedVector};
use crate::krawtchouk::kraw_symbolic;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("2s must be at least 1, got {0}")]
    InvalidOrder(usize),
    #[error("level {level} outside 0..={two_s}")]
    LevelOutOfRange { level: usize, two_s: usize },
    #[error("rank profile has {found} entries, expected {expected}")]
    ProfileLength { expected: usize, found: usize },
    #[error("the zero vector has no projector")]
    ZeroVector,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The integer `N = 2s` fixing the target `CP^N` and the dimension `N + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ModelInstance {
    two_s: usize,
}

impl ModelInstance {
    pub fn new(two_s: usize) -> Result<Self, ModelError> {
        if two_s == 0 {
            return Err(ModelError::InvalidOrder(two_s));
        }
        Ok(ModelInstance { two_s })
    }

    pub fn two_s(&self) -> usize {
        self.two_s
    }

    pub fn dim(&self) -> usize {
        self.two_s + 1
    }

    /// The spin `s = N / 2`.
    pub fn spin(&self) -> BigRational {
        BigRational::new(BigInt::from(self.two_s), BigInt::from(2))
    }

    pub fn levels(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.two_s
    }

    pub fn check_level(&self, k: usize) -> Result<(), ModelError> {
        if k > self.two_s {
            return Err(ModelError::LevelOutOfRange { level: k, two_s: self.two_s });
        }
        Ok(())
    }

    /// `2(2sk + s - k^2) = 2Nk + N - 2k^2`, the coefficient of the metric density.
    pub fn action_coefficient(&self, k: usize) -> BigRational {
        let (n, k) = (self.two_s as i64, k as i64);
        BigRational::from_integer(BigInt::from(2 * n * k + n - 2 * k * k))
    }
}

/// Result of a ladder operation: either a new object or annihilation.
#[derive(Debug, Clone, PartialEq)]
pub enum Ladder<T> {
    Value(T),
    Annihilated,
}

impl<T> Ladder<T> {
    pub fn value(self) -> Option<T> {
        match self {
            Ladder::Value(v) => Some(v),
            Ladder::Annihilated => None,
        }
    }

    pub fn is_annihilated(&self) -> bool {
        matches!(self, Ladder::Annihilated)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionVector {
    pub instance: ModelInstance,
    pub level: usize,
    pub vec: WeightedVector,
}

impl SolutionVector {
    /// `f† f`.
    pub fn norm_sqr(&self) -> BiRationalFn {
        self.vec.inner(&self.vec).expect("same order")
    }
}

/// Bits `λ_l` selecting which `P_l` enter a higher-rank projector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RankProfile {
    bits: Vec<bool>,
}

impl RankProfile {
    pub fn new(bits: Vec<bool>) -> Self {
        RankProfile { bits }
    }

    /// Profile from the low `len` bits of `mask`, bit `l` selecting `P_l`.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        RankProfile {
            bits: (0..len).map(|l| mask >> l & 1 == 1).collect(),
        }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn rank(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProjectorLabel {
    Level(usize),
    Profile(RankProfile),
    Unlabelled,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorField {
    pub instance: ModelInstance,
    pub label: ProjectorLabel,
    pub mat: WeightedMatrix,
}

impl ProjectorField {
    pub fn is_hermitian(&self) -> bool {
        self.mat.adjoint() == self.mat
    }

    pub fn is_idempotent(&self) -> bool {
        &self.mat * &self.mat == self.mat
    }

    pub fn trace(&self) -> BiRationalFn {
        self.mat.trace()
    }
}

fn binomial_gr(n: usize, k: usize) -> GaussianRational {
    GaussianRational::real(BigRational::from_integer(binomial(n, k)))
}

/// `N! / (N - k)!`.
fn falling_factorial(n: usize, k: usize) -> GaussianRational {
    let v = (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i));
    GaussianRational::real(BigRational::from_integer(v))
}

/// The holomorphic Veronese curve: gauge entries `u_j = ξ₊^j`.
pub fn veronese_f0(inst: ModelInstance) -> SolutionVector {
    let entries = (0..inst.dim()).map(|j| BiRationalFn::x().pow(j as u32)).collect();
    SolutionVector {
        instance: inst,
        level: 0,
        vec: WeightedVector::new(inst.two_s(), entries).expect("length N + 1"),
    }
}

/// `(I - P) g` with `P` the projector onto `f`, computed as `g - f (f†g) / (f†f)`.
fn orthogonal_complement(f: &WeightedVector, norm: &BiRationalFn, g: &WeightedVector) -> WeightedVector {
    let coeff = f.inner(g).expect("same order").checked_div(norm).expect("nonzero norm");
    g - &f.scale(&coeff)
}

fn ladder_step(f: &SolutionVector, up: bool) -> Ladder<SolutionVector> {
    let norm = f.norm_sqr();
    if norm.is_zero() {
        return Ladder::Annihilated;
    }
    let d = if up { f.vec.d_plus() } else { f.vec.d_minus() };
    let v = orthogonal_complement(&f.vec, &norm, &d);
    if v.is_zero() {
        return Ladder::Annihilated;
    }
    let level = if up { f.level + 1 } else { f.level.wrapping_sub(1) };
    Ladder::Value(SolutionVector {
        instance: f.instance,
        level,
        vec: v,
    })
}

/// `f_{k+1} = (I - P_k) ∂ f_k`.
pub fn raise(f: &SolutionVector) -> Ladder<SolutionVector> {
    ladder_step(f, true)
}

/// `f_{k-1} = (I - P_k) ∂̄ f_k`.
pub fn lower(f: &SolutionVector) -> Ladder<SolutionVector> {
    ladder_step(f, false)
}

/// `k` applications of [`raise`] starting from `f_0`.
pub fn iterated_raise(inst: ModelInstance, k: usize) -> Ladder<SolutionVector> {
    let mut f = veronese_f0(inst);
    for _ in 0..k {
        match raise(&f) {
            Ladder::Value(next) => f = next,
            Ladder::Annihilated => return Ladder::Annihilated,
        }
    }
    Ladder::Value(f)
}

/// Closed form of `f_k` through Krawtchouk polynomials:
/// `u_j = N!/(N-k)! (-ξ₋/(1+ξ₊ξ₋))^k ξ₊^j K_j(k)`.
pub fn closed_form_fk(inst: ModelInstance, k: usize) -> Result<SolutionVector, ModelError> {
    inst.check_level(k)?;
    let n = inst.two_s();
    let prefactor = (-BiRationalFn::y())
        .checked_div(&BiRationalFn::conformal())?
        .pow(k as u32)
        .scale(&falling_factorial(n, k));
    let entries = (0..=n)
        .map(|j| &(&prefactor * &BiRationalFn::x().pow(j as u32)) * &kraw_symbolic(j, k, n))
        .collect();
    Ok(SolutionVector {
        instance: inst,
        level: k,
        vec: WeightedVector::new(n, entries)?,
    })
}

/// `P = f ⊗ f† / (f† f)`.
pub fn projector_from_vector(f: &SolutionVector) -> Result<ProjectorField, ModelError> {
    let norm = f.norm_sqr();
    if norm.is_zero() {
        return Err(ModelError::ZeroVector);
    }
    let inv = norm.recip()?;
    Ok(ProjectorField {
        instance: f.instance,
        label: ProjectorLabel::Level(f.level),
        mat: f.vec.outer(&f.vec)?.scale(&inv),
    })
}

/// Rank-one projector entries `C(N,k) (ξ₊ξ₋)^k / (1+ξ₊ξ₋)^N ξ₊^i ξ₋^j K_i(k) K_j(k)`
/// (gauge entries; the `sqrt(C(N,i) C(N,j))` lives in the weights).
fn projector_entries(inst: ModelInstance, k: usize, transposed: bool) -> WeightedMatrix {
    let n = inst.two_s();
    let kraw: Vec<BiRationalFn> = (0..=n).map(|j| kraw_symbolic(j, k, n)).collect();
    let prefactor = BiRationalFn::xy()
        .pow(k as u32)
        .checked_div(&BiRationalFn::conformal().pow(n as u32))
        .expect("nonzero")
        .scale(&binomial_gr(n, k));
    WeightedMatrix::from_fn(n, |i, j| {
        let (a, b) = if transposed { (j, i) } else { (i, j) };
        let mono = BiRationalFn::from_poly(crate::algebra::BiPolynomial::monomial(
            GaussianRational::one(),
            a as u32,
            b as u32,
        ));
        &(&prefactor * &mono) * &(&kraw[i] * &kraw[j])
    })
}

pub fn closed_form_projector(inst: ModelInstance, k: usize) -> Result<ProjectorField, ModelError> {
    inst.check_level(k)?;
    Ok(ProjectorField {
        instance: inst,
        label: ProjectorLabel::Level(k),
        mat: projector_entries(inst, k, false),
    })
}

fn check_profile(inst: ModelInstance, profile: &RankProfile) -> Result<(), ModelError> {
    if profile.bits.len() != inst.dim() {
        return Err(ModelError::ProfileLength {
            expected: inst.dim(),
            found: profile.bits.len(),
        });
    }
    Ok(())
}

/// `Σ λ_l P_l` with the rank-one entries in the `ξ₊^i ξ₋^j` convention.
pub fn higher_rank_projector(inst: ModelInstance, profile: &RankProfile) -> Result<ProjectorField, ModelError> {
    higher_rank(inst, profile, false)
}

/// The same sum with the monomial order as printed for the higher-rank
/// formula (`ξ₋^i ξ₊^j`), i.e. the transpose of [`higher_rank_projector`].
pub fn higher_rank_projector_printed_order(
    inst: ModelInstance,
    profile: &RankProfile,
) -> Result<ProjectorField, ModelError> {
    higher_rank(inst, profile, true)
}

fn higher_rank(inst: ModelInstance, profile: &RankProfile, transposed: bool) -> Result<ProjectorField, ModelError> {
    check_profile(inst, profile)?;
    let mut mat = WeightedMatrix::zeros(inst.two_s());
    for (l, _) in profile.bits.iter().enumerate().filter(|(_, b)| **b) {
        mat = &mat + &projector_entries(inst, l, transposed);
    }
    Ok(ProjectorField {
        instance: inst,
        label: ProjectorLabel::Profile(profile.clone()),
        mat,
    })
}

fn projector_step(p: &ProjectorField, up: bool) -> Ladder<ProjectorField> {
    let (dp, dm) = (p.mat.d_plus(), p.mat.d_minus());
    let (first, last) = if up { (&dp, &dm) } else { (&dm, &dp) };
    let prod = &(first * &p.mat) * last;
    let tr = prod.trace();
    if tr.is_zero() {
        return Ladder::Annihilated;
    }
    let label = match p.label {
        ProjectorLabel::Level(k) if up => ProjectorLabel::Level(k + 1),
        ProjectorLabel::Level(k) if k > 0 => ProjectorLabel::Level(k - 1),
        _ => ProjectorLabel::Unlabelled,
    };
    Ladder::Value(ProjectorField {
        instance: p.instance,
        label,
        mat: prod.scale(&tr.recip().expect("nonzero trace")),
    })
}

/// `Π₊(P) = (∂P) P (∂̄P) / tr[(∂P) P (∂̄P)]`, annihilated when the trace vanishes.
pub fn raise_projector(p: &ProjectorField) -> Ladder<ProjectorField> {
    projector_step(p, true)
}

/// `Π₋(P) = (∂̄P) P (∂P) / tr[(∂̄P) P (∂P)]`.
pub fn lower_projector(p: &ProjectorField) -> Ladder<ProjectorField> {
    projector_step(p, false)
}

/// `∂[∂̄P, P] + ∂̄[∂P, P]`.
pub fn el_residual_projector(p: &WeightedMatrix) -> WeightedMatrix {
    let a = p.d_minus().commutator(p).expect("same order");
    let b = p.d_plus().commutator(p).expect("same order");
    &a.d_plus() + &b.d_minus()
}

/// `(I - P)[∂∂̄f - ((f†∂̄f) ∂f + (f†∂f) ∂̄f) / (f†f)]`.
pub fn el_residual_vector(f: &SolutionVector) -> Result<WeightedVector, ModelError> {
    let norm = f.norm_sqr();
    if norm.is_zero() {
        return Err(ModelError::ZeroVector);
    }
    let (dp, dm) = (f.vec.d_plus(), f.vec.d_minus());
    let ddf = dp.d_minus();
    let c_dm = f.vec.inner(&dm)?;
    let c_dp = f.vec.inner(&dp)?;
    let correction = &dp.scale(&c_dm) + &dm.scale(&c_dp);
    let bracket = &ddf - &correction.scale(&norm.recip()?);
    Ok(orthogonal_complement(&f.vec, &norm, &bracket))
}

/// Action density `tr(∂P ∂̄P)`.
pub fn action_density(p: &WeightedMatrix) -> BiRationalFn {
    (&p.d_plus() * &p.d_minus()).trace()
}

/// `2(2sk + s - k^2) / (1 + ξ₊ξ₋)^2`.
pub fn closed_form_action_density(inst: ModelInstance, k: usize) -> BiRationalFn {
    BiRationalFn::constant(GaussianRational::real(inst.action_coefficient(k)))
        .checked_div(&BiRationalFn::conformal().pow(2))
        .expect("nonzero")
}

/// True when the denominator of every entry is a power of `1 + xy`.
pub fn has_conformal_denominators(v: &WeightedVector) -> bool {
    v.entries().iter().all(|e| {
        matches!(crate::algebra::conformal_shape(e.denom()), Some((_, 0, 0, _)))
    })
}

/// A deliberately broken vector `(1, ξ₊ + ξ₋)` at `N = 1`, used as a negative control.
pub fn perturbed_vector() -> SolutionVector {
    let inst = ModelInstance::new(1).expect("valid");
    SolutionVector {
        instance: inst,
        level: 0,
        vec: WeightedVector::new(1, vec![BiRationalFn::one(), &BiRationalFn::x() + &BiRationalFn::y()])
            .expect("length 2"),
    }
}

/// A Hermitian projector field that is not a solution: the projector onto
/// `(1, ξ₊ + ξ₋)`.
pub fn perturbed_projector() -> ProjectorField {
    projector_from_vector(&perturbed_vector()).expect("nonzero vector")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(n: usize) -> ModelInstance {
        ModelInstance::new(n).unwrap()
    }

    fn w() -> BiRationalFn {
        BiRationalFn::conformal()
    }

    #[test]
    fn rejects_zero_order() {
        assert_eq!(ModelInstance::new(0), Err(ModelError::InvalidOrder(0)));
        assert!(closed_form_fk(inst(2), 3).is_err());
    }

    #[test]
    fn f0_examples() {
        let f = veronese_f0(inst(1));
        assert_eq!(f.vec.entries(), &[BiRationalFn::one(), BiRationalFn::x()]);
        for n in 1..=4 {
            let f = veronese_f0(inst(n));
            assert!(f.vec.get(0).is_one());
            assert!(f.vec.d_minus().is_zero());
        }
    }

    #[test]
    fn raise_n1_by_hand() {
        let f1 = raise(&veronese_f0(inst(1))).value().unwrap();
        let e0 = (-BiRationalFn::y()).checked_div(&w()).unwrap();
        let e1 = BiRationalFn::one().checked_div(&w()).unwrap();
        assert_eq!(f1.vec.entries(), &[e0, e1]);
        assert_eq!(f1.level, 1);
        assert!(raise(&f1).is_annihilated());
        assert_eq!(closed_form_fk(inst(1), 1).unwrap().vec, f1.vec);
    }

    #[test]
    fn lower_of_raise_is_proportional_to_f0() {
        let f0 = veronese_f0(inst(2));
        let back = lower(&raise(&f0).value().unwrap()).value().unwrap();
        assert!(back.vec.proportionality(&f0.vec).is_some());
        assert!(lower(&f0).is_annihilated());
    }

    #[test]
    fn p0_for_n1() {
        let p = projector_from_vector(&veronese_f0(inst(1))).unwrap();
        let expected = [
            BiRationalFn::one(),
            BiRationalFn::y(),
            BiRationalFn::x(),
            BiRationalFn::xy(),
        ]
        .map(|e| e.checked_div(&w()).unwrap());
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(p.mat.get(i, j), &expected[2 * i + j]);
            }
        }
        assert!(p.trace().is_one());
        assert!(p.is_hermitian());
        assert_eq!(closed_form_projector(inst(1), 0).unwrap().mat, p.mat);
    }

    #[test]
    fn closed_forms_have_conformal_denominators() {
        for n in 1..=4 {
            for k in 0..=n {
                let f = closed_form_fk(inst(n), k).unwrap();
                assert!(has_conformal_denominators(&f.vec), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn action_density_p0_n1() {
        let p = closed_form_projector(inst(1), 0).unwrap();
        assert_eq!(action_density(&p.mat), BiRationalFn::one().checked_div(&w().pow(2)).unwrap());
        assert!(action_density(&WeightedMatrix::identity(2)).is_zero());
    }

    #[test]
    fn negative_controls_fail() {
        assert!(!el_residual_vector(&perturbed_vector()).unwrap().is_zero());
        assert!(!el_residual_projector(&perturbed_projector().mat).is_zero());
    }

    #[test]
    fn holomorphic_vector_residual_vanishes() {
        assert!(el_residual_vector(&veronese_f0(inst(3))).unwrap().is_zero());
        assert!(el_residual_projector(&WeightedMatrix::identity(3)).is_zero());
    }

    #[test]
    fn profile_validation() {
        let err = higher_rank_projector(inst(2), &RankProfile::from_mask(1, 2));
        assert_eq!(err.unwrap_err(), ModelError::ProfileLength { expected: 3, found: 2 });
        let all = higher_rank_projector(inst(2), &RankProfile::from_mask(0b111, 3)).unwrap();
        assert_eq!(all.mat, WeightedMatrix::identity(2));
        let single = higher_rank_projector(inst(2), &RankProfile::from_mask(0b010, 3)).unwrap();
        assert_eq!(single.mat, closed_form_projector(inst(2), 1).unwrap().mat);
    }

    #[test]
    fn projector_ladder_n2() {
        let p0 = closed_form_projector(inst(2), 0).unwrap();
        let p1 = raise_projector(&p0).value().unwrap();
        assert_eq!(p1.mat, closed_form_projector(inst(2), 1).unwrap().mat);
        assert_eq!(p1.label, ProjectorLabel::Level(1));
        assert!(lower_projector(&p0).is_annihilated());
        assert_eq!(lower_projector(&p1).value().unwrap().mat, p0.mat);
    }
}
