//! Krawtchouk polynomials `K_j(k; p, N) = 2F1(-j, -k; -N; 1/p)`.
//!
//! Two independent evaluators are provided: the terminating hypergeometric
//! sum and the three-term recurrence in the degree `j`
//!
//! ```text
//! -k K_j = p (N - j) K_{j+1} - [p (N - j) + j (1 - p)] K_j + j (1 - p) K_{j-1}
//! ```
//!
//! Both are generic over the scalar field so the same code runs at a rational
//! `p` and symbolically at `p = xy / (1 + xy)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{BiRationalFn, GaussianRational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KrawtchoukError {
    #[error("order N must be at least 1")]
    ZeroOrder,
    #[error("index {index} exceeds order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("p = {0} is not in the open interval (0, 1)")]
    ParameterOutOfRange(BigRational),
}

/// Minimal field interface needed by the evaluators.
pub trait KrawtchoukField: Clone {
    fn from_rational(r: &BigRational) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Callers guarantee a nonzero divisor.
    fn div(&self, rhs: &Self) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }
}

impl KrawtchoukField for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl KrawtchoukField for BiRationalFn {
    fn from_rational(r: &BigRational) -> Self {
        BiRationalFn::constant(GaussianRational::real(r.clone()))
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self.checked_div(rhs).expect("nonzero divisor")
    }
}

/// The parameter `p` of a query.
#[derive(Debug, Clone, PartialEq)]
pub enum KrawtchoukParameter {
    Rational(BigRational),
    /// `p = xy / (1 + xy)`.
    Symbolic,
}

#[derive(Debug, Clone, PartialEq)]
pub enum KrawtchoukValue {
    Exact(BigRational),
    Symbolic(BiRationalFn),
}

/// A validated request for `K_j(k; p, N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrawtchoukQuery {
    degree: usize,
    argument: usize,
    order: usize,
    p: KrawtchoukParameter,
}

impl KrawtchoukQuery {
    pub fn new(degree: usize, argument: usize, order: usize, p: KrawtchoukParameter) -> Result<Self, KrawtchoukError> {
        if order == 0 {
            return Err(KrawtchoukError::ZeroOrder);
        }
        for index in [degree, argument] {
            if index > order {
                return Err(KrawtchoukError::IndexOutOfRange { index, order });
            }
        }
        if let KrawtchoukParameter::Rational(r) = &p {
            if *r <= BigRational::zero() || *r >= BigRational::one() {
                return Err(KrawtchoukError::ParameterOutOfRange(r.clone()));
            }
        }
        Ok(KrawtchoukQuery {
            degree,
            argument,
            order,
            p,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn argument(&self) -> usize {
        self.argument
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn parameter(&self) -> &KrawtchoukParameter {
        &self.p
    }
}

/// `p = xy / (1 + xy)` as a rational function.
pub fn symbolic_p() -> BiRationalFn {
    BiRationalFn::xy()
        .checked_div(&BiRationalFn::conformal())
        .expect("1 + xy is nonzero")
}

/// `1/p = (1 + xy) / (xy)`.
pub fn symbolic_inv_p() -> BiRationalFn {
    BiRationalFn::conformal()
        .checked_div(&BiRationalFn::xy())
        .expect("xy is nonzero")
}

/// Terminating hypergeometric sum with the given `1/p`.
pub fn hypergeometric_sum<F: KrawtchoukField>(j: usize, k: usize, n: usize, inv_p: &F) -> F {
    let mut total = F::from_int(1);
    let mut coeff = BigRational::one();
    let mut power = F::from_int(1);
    for r in 0..j.min(k) {
        let (r, j, k, n) = (r as i64, j as i64, k as i64, n as i64);
        // c_{r+1} / c_r = (r - j)(r - k) / ((r - N)(r + 1)); r < N keeps it finite
        coeff *= BigRational::new(BigInt::from((r - j) * (r - k)), BigInt::from((r - n) * (r + 1)));
        power = power.mul(inv_p);
        total = total.add(&power.mul(&F::from_rational(&coeff)));
    }
    total
}

/// Three-term recurrence in the degree, given `p`.
pub fn three_term_recurrence<F: KrawtchoukField>(j: usize, k: usize, n: usize, p: &F) -> F {
    let one = F::from_int(1);
    let kf = F::from_int(k as i64);
    let mut prev = one.clone();
    if j == 0 {
        return prev;
    }
    let mut cur = one.sub(&kf.div(&F::from_int(n as i64).mul(p)));
    let q = one.sub(p);
    for m in 1..j {
        let a = p.mul(&F::from_int((n - m) as i64));
        let b = q.mul(&F::from_int(m as i64));
        let next = a.add(&b).sub(&kf).mul(&cur).sub(&b.mul(&prev)).div(&a);
        prev = cur;
        cur = next;
    }
    cur
}

/// `K_j(k; p, N)` by the hypergeometric sum.
pub fn kraw_sum(q: &KrawtchoukQuery) -> KrawtchoukValue {
    match &q.p {
        KrawtchoukParameter::Rational(p) => {
            KrawtchoukValue::Exact(hypergeometric_sum(q.degree, q.argument, q.order, &p.recip()))
        }
        KrawtchoukParameter::Symbolic => KrawtchoukValue::Symbolic(kraw_symbolic(q.degree, q.argument, q.order)),
    }
}

/// `K_j(k; p, N)` by the recurrence.
pub fn kraw_recurrence(q: &KrawtchoukQuery) -> KrawtchoukValue {
    match &q.p {
        KrawtchoukParameter::Rational(p) => {
            KrawtchoukValue::Exact(three_term_recurrence(q.degree, q.argument, q.order, p))
        }
        KrawtchoukParameter::Symbolic => {
            KrawtchoukValue::Symbolic(three_term_recurrence(q.degree, q.argument, q.order, &symbolic_p()))
        }
    }
}

/// Exact rational value of `K_j(k; p, N)` by the sum.
pub fn kraw_rational(j: usize, k: usize, n: usize, p: &BigRational) -> BigRational {
    hypergeometric_sum(j, k, n, &p.recip())
}

/// `K_j(k; xy/(1+xy), N)`; its denominator divides `(xy)^min(j,k)`.
pub fn kraw_symbolic(j: usize, k: usize, n: usize) -> BiRationalFn {
    hypergeometric_sum(j, k, n, &symbolic_inv_p())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BiPolynomial;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    /// Direct evaluation of the finite sum with factorial-free Pochhammer
    /// products, written independently of `hypergeometric_sum`.
    fn oracle(j: i64, k: i64, n: i64, p: &BigRational) -> BigRational {
        let poch = |a: i64, m: i64| (0..m).fold(BigRational::one(), |acc, t| acc * r(a + t, 1));
        let fact = |m: i64| (1..=m).fold(BigRational::one(), |acc, t| acc * r(t, 1));
        (0..=j.min(k)).fold(BigRational::zero(), |acc, m| {
            let term = poch(-j, m) * poch(-k, m) / (poch(-n, m) * fact(m));
            let mut pw = BigRational::one();
            for _ in 0..m {
                pw /= p;
            }
            acc + term * pw
        })
    }

    #[test]
    fn matches_independent_oracle() {
        for n in 1..=6 {
            for j in 0..=n {
                for k in 0..=n {
                    let p = r(2, 7);
                    assert_eq!(kraw_rational(j, k, n, &p), oracle(j as i64, k as i64, n as i64, &p));
                }
            }
        }
    }

    #[test]
    fn boundary_values() {
        let p = r(1, 3);
        for n in 1..=5 {
            for j in 0..=n {
                assert!(kraw_rational(j, 0, n, &p).is_one());
                assert!(kraw_rational(0, j, n, &p).is_one());
            }
        }
        // K_1(1; p, 1) = 1 - 1/p = -2 at p = 1/3
        assert_eq!(kraw_rational(1, 1, 1, &p), r(-2, 1));
    }

    #[test]
    fn recurrence_agrees_with_sum_at_one_third() {
        let p = r(1, 3);
        for j in 0..=5 {
            for k in 0..=5 {
                assert_eq!(three_term_recurrence(j, k, 5, &p), kraw_rational(j, k, 5, &p));
            }
        }
        // degree one: 1 - k/(N p)
        assert_eq!(three_term_recurrence(1, 2, 5, &p), r(1, 1) - r(2, 1) / (r(5, 1) * &p));
    }

    #[test]
    fn symbolic_examples() {
        // K_1(1) at N = 1 is -1/(xy)
        let expected = BiRationalFn::from_int(-1).checked_div(&BiRationalFn::xy()).unwrap();
        assert_eq!(kraw_symbolic(1, 1, 1), expected);
        for k in 0..=4 {
            assert!(kraw_symbolic(0, k, 4).is_one());
        }
    }

    #[test]
    fn symbolic_denominator_divides_monomial() {
        for n in 1..=5 {
            for j in 0..=n {
                for k in 0..=n {
                    let f = kraw_symbolic(j, k, n);
                    let m = j.min(k) as u32;
                    let mono = BiPolynomial::monomial(GaussianRational::one(), m, m);
                    assert!(mono.div_exact(f.denom()).is_some(), "j={j} k={k} n={n}");
                }
            }
        }
    }

    #[test]
    fn symbolic_substitution_matches_rational() {
        // at xy = u = 2, p = 2/3
        let u = r(2, 1);
        let p = &u / (r(1, 1) + &u);
        for j in 0..=4 {
            for k in 0..=4 {
                let f = kraw_symbolic(j, k, 4);
                let num = eval_in_u(f.numer(), &u);
                let den = eval_in_u(f.denom(), &u);
                assert_eq!(num / den, kraw_rational(j, k, 4, &p));
            }
        }
    }

    /// Every exponent pair here is diagonal `(i, i)`, so `x = 1, y = u` is exact.
    fn eval_in_u(p: &BiPolynomial, u: &BigRational) -> BigRational {
        p.terms().fold(BigRational::zero(), |acc, (e, c)| {
            assert_eq!(e.0, e.1);
            let mut t = c.re.clone();
            for _ in 0..e.1 {
                t *= u;
            }
            acc + t
        })
    }

    #[test]
    fn query_validation() {
        use KrawtchoukParameter::*;
        assert_eq!(KrawtchoukQuery::new(0, 0, 0, Symbolic), Err(KrawtchoukError::ZeroOrder));
        assert!(KrawtchoukQuery::new(3, 0, 2, Symbolic).is_err());
        assert!(KrawtchoukQuery::new(1, 1, 2, Rational(r(1, 1))).is_err());
        assert!(KrawtchoukQuery::new(1, 1, 2, Rational(r(0, 1))).is_err());
        let q = KrawtchoukQuery::new(1, 1, 1, Rational(r(1, 2))).unwrap();
        assert_eq!(kraw_sum(&q), kraw_recurrence(&q));
        let q = KrawtchoukQuery::new(2, 1, 3, Symbolic).unwrap();
        assert_eq!(kraw_sum(&q), kraw_recurrence(&q));
    }
}
