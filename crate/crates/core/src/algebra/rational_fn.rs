//! Normalized rational functions in `x = ξ₊`, `y = ξ₋`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::gcd::gcd;
use super::{AlgebraError, BiPolynomial, GaussianRational};

/// Relative threshold below which a denominator is treated as vanishing.
pub const DENOMINATOR_GUARD: f64 = 1e-12;

/// A rational function `num / den` kept in canonical form: `gcd(num, den) = 1`
/// and the lex-leading coefficient of `den` is one. Canonical form makes
/// structural equality coincide with equality of rational functions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BiRationalFn {
    num: BiPolynomial,
    den: BiPolynomial,
}

/// `1 + xy`, the conformal factor whose powers make up every model denominator.
pub fn conformal_factor() -> BiPolynomial {
    BiPolynomial::from_terms([
        ((0, 0), GaussianRational::one()),
        ((1, 1), GaussianRational::one()),
    ])
}

/// Splits a polynomial as `c · x^a y^b (1 + xy)^m`, if it has that shape.
pub fn conformal_shape(p: &BiPolynomial) -> Option<(GaussianRational, u32, u32, u32)> {
    if p.is_zero() {
        return None;
    }
    let (a, b) = p.monomial_content();
    let mut rest = p.shift_down(a, b);
    let factor = conformal_factor();
    let mut m = 0;
    loop {
        if let Some(c) = rest.as_constant() {
            return Some((c, a, b, m));
        }
        rest = rest.div_exact(&factor)?;
        m += 1;
    }
}

/// gcd specialised to the case where one side is a monomial times a power of `1 + xy`.
fn reducing_gcd(num: &BiPolynomial, den: &BiPolynomial) -> BiPolynomial {
    if den.as_constant().is_some() || num.as_constant().is_some() {
        return BiPolynomial::one();
    }
    if let Some((_, a, b, m)) = conformal_shape(den) {
        let (na, nb) = num.monomial_content();
        let (ga, gb) = (a.min(na), b.min(nb));
        let factor = conformal_factor();
        let mut rest = num.shift_down(na, nb);
        let mut t = 0;
        while t < m {
            match rest.div_exact(&factor) {
                Some(q) => {
                    rest = q;
                    t += 1;
                }
                None => break,
            }
        }
        return factor.pow(t).shift_up(ga, gb);
    }
    gcd(num, den)
}

impl BiRationalFn {
    /// Builds `num / den` in canonical form.
    pub fn new(num: BiPolynomial, den: BiPolynomial) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: BiPolynomial, den: BiPolynomial) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let g = reducing_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            BiRationalFn { num, den }
        } else {
            let inv = lc.inv().expect("nonzero leading coefficient");
            BiRationalFn {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: BiPolynomial) -> Self {
        BiRationalFn {
            num: p,
            den: BiPolynomial::one(),
        }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(BiPolynomial::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::constant(GaussianRational::from_ratio(num, den))
    }

    pub fn x() -> Self {
        Self::from_poly(BiPolynomial::x())
    }

    pub fn y() -> Self {
        Self::from_poly(BiPolynomial::y())
    }

    /// `xy`, i.e. `u = |ξ₊|²` on the real slice.
    pub fn xy() -> Self {
        Self::from_poly(BiPolynomial::monomial(GaussianRational::one(), 1, 1))
    }

    /// `1 + xy`.
    pub fn conformal() -> Self {
        Self::from_poly(conformal_factor())
    }

    pub fn numer(&self) -> &BiPolynomial {
        &self.num
    }

    pub fn denom(&self) -> &BiPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value when the function is constant.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(&n / &d)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiRationalFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn checked_div(&self, rhs: &BiRationalFn) -> Result<Self, AlgebraError> {
        let inv = rhs.recip()?;
        Ok(self * &inv)
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let lc = self.num.leading_coeff().expect("nonzero").inv().expect("nonzero");
        Ok(BiRationalFn {
            num: self.den.scale(&lc),
            den: self.num.scale(&lc),
        })
    }

    pub fn pow(&self, exp: u32) -> Self {
        BiRationalFn {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }

    /// ∂/∂ξ₊.
    pub fn d_plus(&self) -> Self {
        Self::quotient_rule(&self.num, &self.den, self.num.d_x(), self.den.d_x())
    }

    /// ∂/∂ξ₋.
    pub fn d_minus(&self) -> Self {
        Self::quotient_rule(&self.num, &self.den, self.num.d_y(), self.den.d_y())
    }

    fn quotient_rule(n: &BiPolynomial, d: &BiPolynomial, dn: BiPolynomial, dd: BiPolynomial) -> Self {
        if dd.is_zero() {
            return Self::normalize(dn, d.clone());
        }
        // (n/d)' = (n' d - n d') / d^2; strip the common factor of d before squaring.
        let g = reducing_gcd(d, &dd);
        let (d_red, dd_red) = if g.is_one() {
            (d.clone(), dd)
        } else {
            (d.div_exact(&g).expect("gcd"), dd.div_exact(&g).expect("gcd"))
        };
        let num = &(&dn * &d_red) - &(n * &dd_red);
        Self::normalize(num, &d_red * d)
    }

    /// Complex conjugation on the real slice: swap `x <-> y`, conjugate coefficients.
    pub fn involution(&self) -> Self {
        let num = self.num.involution();
        let den = self.den.involution();
        let lc = den.leading_coeff().expect("nonzero").clone();
        if lc.is_one() {
            BiRationalFn { num, den }
        } else {
            let inv = lc.inv().expect("nonzero");
            BiRationalFn {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    /// Evaluates at `(x, y)` treated as independent complex numbers.
    pub fn eval_at(&self, x: Complex64, y: Complex64) -> Result<Complex64, AlgebraError> {
        let n = self.num.eval(x, y);
        let d = self.den.eval(x, y);
        if d.norm() < DENOMINATOR_GUARD * (1.0 + n.norm()) {
            return Err(AlgebraError::SingularEvaluation { re: x.re, im: x.im });
        }
        Ok(n / d)
    }

    /// Evaluates on the real slice `ξ₋ = conj(ξ₊)`.
    pub fn eval_numeric(&self, xi_plus: Complex64) -> Result<Complex64, AlgebraError> {
        self.eval_at(xi_plus, xi_plus.conj())
            .map_err(|_| AlgebraError::SingularEvaluation { re: xi_plus.re, im: xi_plus.im })
    }
}

impl Zero for BiRationalFn {
    fn zero() -> Self {
        Self::from_poly(BiPolynomial::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for BiRationalFn {
    fn one() -> Self {
        Self::from_poly(BiPolynomial::one())
    }
}

impl<'a> Add<&'a BiRationalFn> for &'a BiRationalFn {
    type Output = BiRationalFn;
    fn add(self, rhs: &BiRationalFn) -> BiRationalFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return BiRationalFn::normalize(&self.num + &rhs.num, self.den.clone());
        }
        if rhs.den.is_one() {
            return BiRationalFn::normalize(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        if self.den.is_one() {
            return BiRationalFn::normalize(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        let g = reducing_gcd(&self.den, &rhs.den);
        let (l, r) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (
                self.den.div_exact(&g).expect("gcd"),
                rhs.den.div_exact(&g).expect("gcd"),
            )
        };
        let num = &(&self.num * &r) + &(&rhs.num * &l);
        BiRationalFn::normalize(num, &self.den * &r)
    }
}

impl<'a> Sub<&'a BiRationalFn> for &'a BiRationalFn {
    type Output = BiRationalFn;
    fn sub(self, rhs: &BiRationalFn) -> BiRationalFn {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a BiRationalFn> for &'a BiRationalFn {
    type Output = BiRationalFn;
    fn mul(self, rhs: &BiRationalFn) -> BiRationalFn {
        if self.is_zero() || rhs.is_zero() {
            return BiRationalFn::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return BiRationalFn::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel so the final normalisation works on smaller operands
        let g1 = reducing_gcd(&self.num, &rhs.den);
        let g2 = reducing_gcd(&rhs.num, &self.den);
        let cut = |p: &BiPolynomial, g: &BiPolynomial| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).expect("gcd")
            }
        };
        let num = &cut(&self.num, &g1) * &cut(&rhs.num, &g2);
        let den = &cut(&self.den, &g2) * &cut(&rhs.den, &g1);
        BiRationalFn::normalize(num, den)
    }
}

impl Neg for &BiRationalFn {
    type Output = BiRationalFn;
    fn neg(self) -> BiRationalFn {
        BiRationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for BiRationalFn {
    type Output = BiRationalFn;
    fn neg(self) -> BiRationalFn {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<BiRationalFn> for BiRationalFn {
            type Output = BiRationalFn;
            fn $m(self, rhs: BiRationalFn) -> BiRationalFn {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for BiRationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
