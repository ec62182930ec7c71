//! Spin-s matrices `σ^z, σ^±` and their field-dependent rotations `S^z, S^±`,
//! which act as algebraic creation/annihilation operators on `f_k` and `P_k`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::{binomial, BiRationalFn, GaussianRational, WeightedMatrix};
use crate::model::{closed_form_fk, closed_form_projector, Ladder, ModelError, ModelInstance, ProjectorField, ProjectorLabel, SolutionVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Raise,
    Lower,
}

/// Constant spin matrices in the weight gauge.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaTriple {
    pub z: WeightedMatrix,
    pub plus: WeightedMatrix,
    pub minus: WeightedMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinTriple {
    pub instance: ModelInstance,
    pub sz: WeightedMatrix,
    pub splus: WeightedMatrix,
    pub sminus: WeightedMatrix,
    pub sigma: SigmaTriple,
}

fn ratio(num: i64, den: &BigInt) -> BiRationalFn {
    BiRationalFn::constant(GaussianRational::real(BigRational::new(BigInt::from(num), den.clone())))
}

fn spin_minus(inst: ModelInstance, i: usize) -> BigRational {
    // s - i
    inst.spin() - BigRational::from_integer(BigInt::from(i))
}

/// `(σ^z)_ii = s - i`, `(σ^+)_{i,i+1} = sqrt((i+1)(N-i))`, `(σ^-)_{i+1,i}` likewise.
///
/// In the gauge `sqrt(C(N,i) C(N,i+1)) = C(N,i) sqrt((N-i)/(i+1))`, so the
/// off-diagonal stored entry is the rational `(i+1) / C(N,i)`.
pub fn sigma_matrices(inst: ModelInstance) -> SigmaTriple {
    let n = inst.two_s();
    let z = WeightedMatrix::from_fn(n, |i, j| {
        if i == j {
            BiRationalFn::constant(GaussianRational::real(spin_minus(inst, i) / BigRational::from_integer(binomial(n, i))))
        } else {
            BiRationalFn::zero()
        }
    });
    let plus = WeightedMatrix::from_fn(n, |i, j| {
        if j == i + 1 {
            ratio(j as i64, &binomial(n, i))
        } else {
            BiRationalFn::zero()
        }
    });
    let minus = WeightedMatrix::from_fn(n, |i, j| {
        if i == j + 1 {
            ratio(i as i64, &binomial(n, j))
        } else {
            BiRationalFn::zero()
        }
    });
    debug_assert!(gauge_closure_residual(inst) < 1e-9);
    SigmaTriple { z, plus, minus }
}

/// Largest deviation between the gauge encoding of `σ^±` and the literal
/// square-root entries, in floating point.
pub fn gauge_closure_residual(inst: ModelInstance) -> f64 {
    let n = inst.two_s();
    let c = |i: usize| binomial(n, i).to_f64().unwrap_or(f64::NAN);
    (0..n)
        .map(|i| {
            let literal = (((i + 1) * (n - i)) as f64).sqrt();
            let gauge = (c(i) * c(i + 1)).sqrt() * (i + 1) as f64 / c(i);
            (literal - gauge).abs()
        })
        .fold(0.0, f64::max)
}

fn lin(terms: &[(&BiRationalFn, &WeightedMatrix)], scale: &BiRationalFn) -> WeightedMatrix {
    let order = terms[0].1.order();
    let sum = terms
        .iter()
        .fold(WeightedMatrix::zeros(order), |acc, (c, m)| &acc + &m.scale(c));
    sum.scale(scale)
}

/// `S^z, S^+, S^-` as the field-dependent mixing of `σ^z, σ^+, σ^-`:
///
/// ```text
/// (1+ξ₊ξ₋) S^z = (ξ₊ξ₋ - 1) σ^z - ξ₋ σ^+ - ξ₊ σ^-
/// (1+ξ₊ξ₋) S^+ = 2ξ₋ σ^z + ξ₋² σ^+ - σ^-
/// (1+ξ₊ξ₋) S^- = 2ξ₊ σ^z - σ^+ + ξ₊² σ^-
/// ```
pub fn spin_matrices(inst: ModelInstance) -> SpinTriple {
    let sigma = sigma_matrices(inst);
    let (x, y, xy) = (BiRationalFn::x(), BiRationalFn::y(), BiRationalFn::xy());
    let one = BiRationalFn::from_int(1);
    let inv_w = one.checked_div(&BiRationalFn::conformal()).expect("nonzero");
    let two = GaussianRational::from_int(2);
    let sz = lin(
        &[(&(&xy - &one), &sigma.z), (&-&y, &sigma.plus), (&-&x, &sigma.minus)],
        &inv_w,
    );
    let splus = lin(
        &[(&y.scale(&two), &sigma.z), (&y.pow(2), &sigma.plus), (&-&one, &sigma.minus)],
        &inv_w,
    );
    let sminus = lin(
        &[(&x.scale(&two), &sigma.z), (&-&one, &sigma.plus), (&x.pow(2), &sigma.minus)],
        &inv_w,
    );
    SpinTriple {
        instance: inst,
        sz,
        splus,
        sminus,
        sigma,
    }
}

/// The tridiagonal closed form of `S^z`:
/// diagonal `(1-ξ₊ξ₋)/(1+ξ₊ξ₋) (i-s)`, sub-diagonal `-ξ₊/(1+ξ₊ξ₋) sqrt(i(N+1-i))`,
/// super-diagonal `-ξ₋/(1+ξ₊ξ₋) sqrt(j(N+1-j))`.
pub fn tridiagonal_sz(inst: ModelInstance) -> WeightedMatrix {
    let n = inst.two_s();
    let w = BiRationalFn::conformal();
    let diag = (&BiRationalFn::from_int(1) - &BiRationalFn::xy()).checked_div(&w).expect("nonzero");
    let lower = (-BiRationalFn::x()).checked_div(&w).expect("nonzero");
    let upper = (-BiRationalFn::y()).checked_div(&w).expect("nonzero");
    WeightedMatrix::from_fn(n, |i, j| {
        if i == j {
            let c = -spin_minus(inst, i) / BigRational::from_integer(binomial(n, i));
            diag.scale(&GaussianRational::real(c))
        } else if i == j + 1 {
            &lower * &ratio(i as i64, &binomial(n, j))
        } else if j == i + 1 {
            &upper * &ratio(j as i64, &binomial(n, i))
        } else {
            BiRationalFn::zero()
        }
    })
}

/// `Σ_k (k - s) P_k`.
pub fn projector_sum_sz(inst: ModelInstance) -> Result<WeightedMatrix, ModelError> {
    let mut acc = WeightedMatrix::zeros(inst.two_s());
    for k in inst.levels() {
        let c = -spin_minus(inst, k);
        if c.is_zero() {
            continue;
        }
        let p = closed_form_projector(inst, k)?;
        acc = &acc + &p.mat.scale_const(&GaussianRational::real(c));
    }
    Ok(acc)
}

fn step_vector(op: &WeightedMatrix, f: &SolutionVector, dir: Direction) -> Result<Ladder<SolutionVector>, ModelError> {
    let v = op.apply(&f.vec)?;
    if v.is_zero() {
        return Ok(Ladder::Annihilated);
    }
    let level = match dir {
        Direction::Raise => f.level + 1,
        Direction::Lower => f.level.wrapping_sub(1),
    };
    Ok(Ladder::Value(SolutionVector {
        instance: f.instance,
        level,
        vec: v,
    }))
}

/// `S^+ f`, labelled with level `k + 1`.
pub fn apply_raising(s: &SpinTriple, f: &SolutionVector) -> Result<Ladder<SolutionVector>, ModelError> {
    step_vector(&s.splus, f, Direction::Raise)
}

/// `S^- f`, labelled with level `k - 1`.
pub fn apply_lowering(s: &SpinTriple, f: &SolutionVector) -> Result<Ladder<SolutionVector>, ModelError> {
    step_vector(&s.sminus, f, Direction::Lower)
}

/// Checks `S^+ f_k = -(1+ξ₊ξ₋) f_{k+1}` (and `S^+ f_N = 0`) with the exact scalar.
pub fn raising_recurrence_holds(s: &SpinTriple, k: usize) -> Result<bool, ModelError> {
    let inst = s.instance;
    let f = closed_form_fk(inst, k)?;
    let image = apply_raising(s, &f)?;
    if k == inst.two_s() {
        return Ok(image.is_annihilated());
    }
    let Some(v) = image.value() else { return Ok(false) };
    let target = closed_form_fk(inst, k + 1)?.vec.scale(&-BiRationalFn::conformal());
    Ok(v.vec == target)
}

/// Checks `S^- f_k = k(k-1-N)/(1+ξ₊ξ₋) f_{k-1}` (and `S^- f_0 = 0`) with the exact scalar.
pub fn lowering_recurrence_holds(s: &SpinTriple, k: usize) -> Result<bool, ModelError> {
    let inst = s.instance;
    let f = closed_form_fk(inst, k)?;
    let image = apply_lowering(s, &f)?;
    if k == 0 {
        return Ok(image.is_annihilated());
    }
    let Some(v) = image.value() else { return Ok(false) };
    let c = (k as i64) * (k as i64 - 1 - inst.two_s() as i64);
    let factor = BiRationalFn::from_int(c).checked_div(&BiRationalFn::conformal())?;
    let target = closed_form_fk(inst, k - 1)?.vec.scale(&factor);
    Ok(v.vec == target)
}

/// `S^z f = (k - s) f` and `S^z (S^± f) = (k ± 1 - s) S^± f`, exactly.
pub fn eigencheck(s: &SpinTriple, f: &SolutionVector) -> Result<bool, ModelError> {
    let eig = |level: i64| {
        let v = BigRational::from_integer(BigInt::from(level)) - s.instance.spin();
        BiRationalFn::constant(GaussianRational::real(v))
    };
    let k = f.level as i64;
    if s.sz.apply(&f.vec)? != f.vec.scale(&eig(k)) {
        return Ok(false);
    }
    for (op, shift) in [(&s.splus, 1), (&s.sminus, -1)] {
        let g = op.apply(&f.vec)?;
        if s.sz.apply(&g)? != g.scale(&eig(k + shift)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Π_±(P) = S^± P S^∓ / tr(S^± P S^∓)`; annihilated when the trace vanishes.
pub fn projector_recurrence_spin(s: &SpinTriple, p: &ProjectorField, dir: Direction) -> Ladder<ProjectorField> {
    let (a, b) = match dir {
        Direction::Raise => (&s.splus, &s.sminus),
        Direction::Lower => (&s.sminus, &s.splus),
    };
    let prod = &(a * &p.mat) * b;
    let tr = prod.trace();
    if tr.is_zero() {
        return Ladder::Annihilated;
    }
    let label = match (&p.label, dir) {
        (ProjectorLabel::Level(k), Direction::Raise) => ProjectorLabel::Level(k + 1),
        (ProjectorLabel::Level(k), Direction::Lower) if *k > 0 => ProjectorLabel::Level(k - 1),
        _ => ProjectorLabel::Unlabelled,
    };
    Ladder::Value(ProjectorField {
        instance: p.instance,
        label,
        mat: prod.scale(&tr.recip().expect("nonzero trace")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::veronese_f0;
    use num_complex::Complex64;

    fn inst(n: usize) -> ModelInstance {
        ModelInstance::new(n).unwrap()
    }

    #[test]
    fn sigma_n1() {
        let s = sigma_matrices(inst(1));
        let at = |m: &WeightedMatrix| m.eval_numeric(Complex64::new(0.0, 0.0)).unwrap();
        let z = at(&s.z);
        assert_eq!((z[0].re, z[3].re), (0.5, -0.5));
        let p = at(&s.plus);
        assert_eq!(p.iter().map(|c| c.re).collect::<Vec<_>>(), vec![0.0, 1.0, 0.0, 0.0]);
        let m = at(&s.minus);
        assert_eq!(m.iter().map(|c| c.re).collect::<Vec<_>>(), vec![0.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn sigma_entries_match_square_roots() {
        for n in 1..=8 {
            assert!(gauge_closure_residual(inst(n)) < 1e-12);
            let s = sigma_matrices(inst(n));
            let m = s.plus.eval_numeric(Complex64::new(0.0, 0.0)).unwrap();
            let d = n + 1;
            for i in 0..n {
                let expected = (((i + 1) * (n - i)) as f64).sqrt();
                assert!((m[i * d + i + 1].re - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sigma_commutator() {
        for n in 1..=6 {
            let s = sigma_matrices(inst(n));
            let c = s.plus.commutator(&s.minus).unwrap();
            assert_eq!(c, s.z.scale_const(&GaussianRational::from_int(2)));
        }
    }

    #[test]
    fn highest_weight_annihilated() {
        // e_0 carries σ^z eigenvalue +s; σ^+ has an empty first column and an empty last row
        let s = sigma_matrices(inst(3));
        let mut entries = vec![BiRationalFn::zero(); 4];
        entries[0] = BiRationalFn::from_int(1);
        let e0 = crate::algebra::WeightedVector::new(3, entries).unwrap();
        assert!(s.plus.apply(&e0).unwrap().is_zero());
        assert!((0..4).all(|j| s.plus.get(3, j).is_zero()));
    }

    #[test]
    fn spin_at_origin() {
        let t = spin_matrices(inst(2));
        let o = Complex64::new(0.0, 0.0);
        let ev = |m: &WeightedMatrix| m.eval_numeric(o).unwrap();
        let neg = |m: &WeightedMatrix| ev(m).into_iter().map(|c| -c).collect::<Vec<_>>();
        assert_eq!(ev(&t.sz), neg(&t.sigma.z));
        assert_eq!(ev(&t.splus), neg(&t.sigma.minus));
        assert_eq!(ev(&t.sminus), neg(&t.sigma.plus));
    }

    #[test]
    fn n1_recurrences_by_hand() {
        let s = spin_matrices(inst(1));
        let f0 = veronese_f0(inst(1));
        let v = apply_raising(&s, &f0).unwrap().value().unwrap();
        assert_eq!(v.vec.entries(), &[BiRationalFn::y(), BiRationalFn::from_int(-1)]);
        assert!(raising_recurrence_holds(&s, 0).unwrap());
        assert!(raising_recurrence_holds(&s, 1).unwrap());
        assert!(lowering_recurrence_holds(&s, 1).unwrap());
        assert!(lowering_recurrence_holds(&s, 0).unwrap());
    }

    #[test]
    fn triangle_n3() {
        let i = inst(3);
        let s = spin_matrices(i);
        assert_eq!(s.sz, tridiagonal_sz(i));
        assert_eq!(s.sz, projector_sum_sz(i).unwrap());
        assert_eq!(s.splus.adjoint(), s.sminus);
        assert_eq!(s.sz.adjoint(), s.sz);
    }
}
