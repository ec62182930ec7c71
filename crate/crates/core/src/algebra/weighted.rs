//! Vectors and matrices in the binomial weight gauge.
//!
//! A stored entry `u_i` of a [`WeightedVector`] of order `N` stands for the
//! semantic component `sqrt(C(N,i)) u_i`; a stored entry `m_ij` of a
//! [`WeightedMatrix`] stands for `sqrt(C(N,i) C(N,j)) m_ij`. Products, sums,
//! derivatives and adjoints of weighted objects are again weighted objects, so
//! every stored scalar stays a rational function over Q(i).

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::{AlgebraError, BiRationalFn, GaussianRational};

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1u32);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn binomial_gr(n: usize, k: usize) -> GaussianRational {
    GaussianRational::real(BigRational::from_integer(binomial(n, k)))
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    binomial(n, k).to_f64().unwrap_or(f64::INFINITY)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedVector {
    order: usize,
    entries: Vec<BiRationalFn>,
}

impl WeightedVector {
    pub fn new(order: usize, entries: Vec<BiRationalFn>) -> Result<Self, AlgebraError> {
        if entries.len() != order + 1 {
            return Err(AlgebraError::LengthMismatch {
                expected: order + 1,
                found: entries.len(),
            });
        }
        Ok(WeightedVector { order, entries })
    }

    pub fn zeros(order: usize) -> Self {
        WeightedVector {
            order,
            entries: vec![BiRationalFn::zero(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.order + 1
    }

    pub fn entries(&self) -> &[BiRationalFn] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &BiRationalFn {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn check(&self, other: &WeightedVector) -> Result<(), AlgebraError> {
        if self.order != other.order {
            return Err(AlgebraError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn map(&self, f: impl Fn(&BiRationalFn) -> BiRationalFn) -> Self {
        WeightedVector {
            order: self.order,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &BiRationalFn) -> Self {
        self.map(|e| e * c)
    }

    pub fn d_plus(&self) -> Self {
        self.map(|e| e.d_plus())
    }

    pub fn d_minus(&self) -> Self {
        self.map(|e| e.d_minus())
    }

    /// Hermitian product `self† · other = Σ C(N,j) conj(self_j) other_j`.
    pub fn inner(&self, other: &WeightedVector) -> Result<BiRationalFn, AlgebraError> {
        self.check(other)?;
        let mut acc = BiRationalFn::zero();
        for (j, (a, b)) in self.entries.iter().zip(&other.entries).enumerate() {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let term = (&a.involution() * b).scale(&binomial_gr(self.order, j));
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Outer product `self ⊗ other†`.
    pub fn outer(&self, other: &WeightedVector) -> Result<WeightedMatrix, AlgebraError> {
        self.check(other)?;
        let conj: Vec<BiRationalFn> = other.entries.iter().map(|e| e.involution()).collect();
        let n = self.dim();
        let entries = (0..n * n)
            .into_par_iter()
            .map(|idx| &self.entries[idx / n] * &conj[idx % n])
            .collect();
        Ok(WeightedMatrix {
            order: self.order,
            entries,
        })
    }

    /// Returns `Some(c)` with `self = c · other` when the two are proportional.
    pub fn proportionality(&self, other: &WeightedVector) -> Option<BiRationalFn> {
        if self.order != other.order {
            return None;
        }
        let pivot = other.entries.iter().position(|e| !e.is_zero())?;
        let c = self.entries[pivot].checked_div(&other.entries[pivot]).ok()?;
        let ok = self
            .entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| *a == b * &c);
        ok.then_some(c)
    }

    /// Semantic components on the real slice.
    pub fn eval_numeric(&self, xi: Complex64) -> Result<Vec<Complex64>, AlgebraError> {
        self.entries
            .iter()
            .enumerate()
            .map(|(j, e)| Ok(e.eval_numeric(xi)? * binomial_f64(self.order, j).sqrt()))
            .collect()
    }
}

impl<'a> Add<&'a WeightedVector> for &'a WeightedVector {
    type Output = WeightedVector;
    fn add(self, rhs: &WeightedVector) -> WeightedVector {
        assert_eq!(self.order, rhs.order, "weighted vector order mismatch");
        WeightedVector {
            order: self.order,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a WeightedVector> for &'a WeightedVector {
    type Output = WeightedVector;
    fn sub(self, rhs: &WeightedVector) -> WeightedVector {
        assert_eq!(self.order, rhs.order, "weighted vector order mismatch");
        WeightedVector {
            order: self.order,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Square matrix of order `N` (dimension `N + 1`) in the binomial weight gauge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedMatrix {
    order: usize,
    entries: Vec<BiRationalFn>,
}

impl WeightedMatrix {
    pub fn zeros(order: usize) -> Self {
        let n = order + 1;
        WeightedMatrix {
            order,
            entries: vec![BiRationalFn::zero(); n * n],
        }
    }

    /// Stored entries `δ_ij / C(N,i)`, i.e. the semantic identity.
    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |i, j| {
            if i == j {
                BiRationalFn::constant(binomial_gr(order, i).inv().expect("nonzero"))
            } else {
                BiRationalFn::zero()
            }
        })
    }

    /// Builds a matrix from stored (gauge) entries.
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> BiRationalFn + Sync + Send) -> Self {
        let n = order + 1;
        WeightedMatrix {
            order,
            entries: (0..n * n).into_par_iter().map(|idx| f(idx / n, idx % n)).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.order + 1
    }

    /// Stored entry `m_ij`.
    pub fn get(&self, i: usize, j: usize) -> &BiRationalFn {
        &self.entries[i * self.dim() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BiRationalFn) {
        let n = self.dim();
        self.entries[i * n + j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn check(&self, other: &WeightedMatrix) -> Result<(), AlgebraError> {
        if self.order != other.order {
            return Err(AlgebraError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn map(&self, f: impl Fn(&BiRationalFn) -> BiRationalFn + Sync + Send) -> Self {
        WeightedMatrix {
            order: self.order,
            entries: self.entries.par_iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &BiRationalFn) -> Self {
        self.map(|e| e * c)
    }

    pub fn scale_const(&self, c: &GaussianRational) -> Self {
        self.map(|e| e.scale(c))
    }

    pub fn d_plus(&self) -> Self {
        self.map(|e| e.d_plus())
    }

    pub fn d_minus(&self) -> Self {
        self.map(|e| e.d_minus())
    }

    /// Conjugate transpose: stored `m'_ij = involution(m_ji)`.
    pub fn adjoint(&self) -> Self {
        let n = self.dim();
        WeightedMatrix {
            order: self.order,
            entries: (0..n * n)
                .into_par_iter()
                .map(|idx| self.entries[(idx % n) * n + idx / n].involution())
                .collect(),
        }
    }

    /// Semantic trace `Σ C(N,i) m_ii`.
    pub fn trace(&self) -> BiRationalFn {
        (0..self.dim()).fold(BiRationalFn::zero(), |acc, i| {
            &acc + &self.get(i, i).scale(&binomial_gr(self.order, i))
        })
    }

    /// Semantic product: `m_ij = Σ_l C(N,l) a_il b_lj`.
    pub fn weighted_mul(&self, other: &WeightedMatrix) -> Result<WeightedMatrix, AlgebraError> {
        self.check(other)?;
        let n = self.dim();
        let weights: Vec<GaussianRational> = (0..n).map(|l| binomial_gr(self.order, l)).collect();
        let entries = (0..n * n)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                let mut acc = BiRationalFn::zero();
                for (l, w) in weights.iter().enumerate() {
                    let a = &self.entries[i * n + l];
                    let b = &other.entries[l * n + j];
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b).scale(w);
                }
                acc
            })
            .collect();
        Ok(WeightedMatrix {
            order: self.order,
            entries,
        })
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &WeightedMatrix) -> Result<WeightedMatrix, AlgebraError> {
        let ab = self.weighted_mul(other)?;
        let ba = other.weighted_mul(self)?;
        Ok(&ab - &ba)
    }

    /// Semantic matrix-vector product.
    pub fn apply(&self, v: &WeightedVector) -> Result<WeightedVector, AlgebraError> {
        if self.order != v.order() {
            return Err(AlgebraError::OrderMismatch {
                left: self.order,
                right: v.order(),
            });
        }
        let n = self.dim();
        let entries = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut acc = BiRationalFn::zero();
                for j in 0..n {
                    let a = &self.entries[i * n + j];
                    let b = v.get(j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b).scale(&binomial_gr(self.order, j));
                }
                acc
            })
            .collect();
        WeightedVector::new(self.order, entries)
    }

    /// Semantic entries on the real slice, row-major.
    pub fn eval_numeric(&self, xi: Complex64) -> Result<Vec<Complex64>, AlgebraError> {
        let n = self.dim();
        let w: Vec<f64> = (0..n).map(|i| binomial_f64(self.order, i).sqrt()).collect();
        self.entries
            .iter()
            .enumerate()
            .map(|(idx, e)| Ok(e.eval_numeric(xi)? * (w[idx / n] * w[idx % n])))
            .collect()
    }
}

impl<'a> Add<&'a WeightedMatrix> for &'a WeightedMatrix {
    type Output = WeightedMatrix;
    fn add(self, rhs: &WeightedMatrix) -> WeightedMatrix {
        assert_eq!(self.order, rhs.order, "weighted matrix order mismatch");
        WeightedMatrix {
            order: self.order,
            entries: self.entries.par_iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a WeightedMatrix> for &'a WeightedMatrix {
    type Output = WeightedMatrix;
    fn sub(self, rhs: &WeightedMatrix) -> WeightedMatrix {
        assert_eq!(self.order, rhs.order, "weighted matrix order mismatch");
        WeightedMatrix {
            order: self.order,
            entries: self.entries.par_iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Panics on order mismatch; use [`WeightedMatrix::weighted_mul`] for the checked form.
impl<'a> Mul<&'a WeightedMatrix> for &'a WeightedMatrix {
    type Output = WeightedMatrix;
    fn mul(self, rhs: &WeightedMatrix) -> WeightedMatrix {
        self.weighted_mul(rhs).expect("weighted matrix order mismatch")
    }
}

impl Neg for &WeightedMatrix {
    type Output = WeightedMatrix;
    fn neg(self) -> WeightedMatrix {
        self.map(|e| -e)
    }
}
