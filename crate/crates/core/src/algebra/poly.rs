//! Sparse polynomials in two commuting variables `x` (for ξ₊) and `y` (for ξ₋)
//! with Gaussian-rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::GaussianRational;

/// Exponent pair `(i, j)` of the monomial `x^i y^j`. The derived ordering is
/// lexicographic with `x` before `y`, so the last map entry is the leading term.
pub type Exponent = (u32, u32);

/// Canonical sparse bivariate polynomial: no zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BiPolynomial {
    terms: BTreeMap<Exponent, GaussianRational>,
}

impl BiPolynomial {
    pub fn zero() -> Self {
        BiPolynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: GaussianRational, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPolynomial { terms }
    }

    pub fn x() -> Self {
        Self::monomial(GaussianRational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(GaussianRational::one(), 0, 1)
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Exponent, GaussianRational)>>(iter: I) -> Self {
        let mut p = BiPolynomial::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value, if the polynomial has degree zero (or is zero).
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> GaussianRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn leading_term(&self) -> Option<(Exponent, &GaussianRational)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    pub fn leading_coeff(&self) -> Option<&GaussianRational> {
        self.terms.values().next_back()
    }

    pub fn degree_x(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, |e| e.0)
    }

    pub fn degree_y(&self) -> u32 {
        self.terms.keys().map(|e| e.1).max().unwrap_or(0)
    }

    /// Largest `(a, b)` such that `x^a y^b` divides the polynomial.
    pub fn monomial_content(&self) -> Exponent {
        let a = self.terms.keys().map(|e| e.0).min().unwrap_or(0);
        let b = self.terms.keys().map(|e| e.1).min().unwrap_or(0);
        (a, b)
    }

    /// Divides by `x^a y^b`; every term must be divisible.
    pub fn shift_down(&self, a: u32, b: u32) -> Self {
        if a == 0 && b == 0 {
            return self.clone();
        }
        BiPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ((e.0 - a, e.1 - b), c.clone()))
                .collect(),
        }
    }

    pub fn shift_up(&self, a: u32, b: u32) -> Self {
        if a == 0 && b == 0 {
            return self.clone();
        }
        BiPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ((e.0 + a, e.1 + b), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return BiPolynomial::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        BiPolynomial {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = BiPolynomial::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to `x`.
    pub fn d_x(&self) -> Self {
        BiPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.0 > 0)
                .map(|(e, c)| ((e.0 - 1, e.1), c * &GaussianRational::from_int(e.0 as i64)))
                .collect(),
        }
    }

    /// Partial derivative with respect to `y`.
    pub fn d_y(&self) -> Self {
        BiPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.1 > 0)
                .map(|(e, c)| ((e.0, e.1 - 1), c * &GaussianRational::from_int(e.1 as i64)))
                .collect(),
        }
    }

    /// Swaps `x <-> y` and conjugates every coefficient.
    pub fn involution(&self) -> Self {
        BiPolynomial {
            terms: self.terms.iter().map(|(e, c)| ((e.1, e.0), c.conj())).collect(),
        }
    }

    /// Divides every coefficient so the leading coefficient becomes one.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &BiPolynomial) -> Option<BiPolynomial> {
        let (lead_e, lead_c) = divisor.leading_term()?;
        if self.is_zero() {
            return Some(BiPolynomial::zero());
        }
        if divisor.terms.len() == 1 {
            let inv = lead_c.inv()?;
            let mut out = BTreeMap::new();
            for (e, c) in &self.terms {
                if e.0 < lead_e.0 || e.1 < lead_e.1 {
                    return None;
                }
                out.insert((e.0 - lead_e.0, e.1 - lead_e.1), c * &inv);
            }
            return Some(BiPolynomial { terms: out });
        }
        if self.degree_x() < divisor.degree_x() || self.degree_y() < divisor.degree_y() {
            return None;
        }
        let inv = lead_c.inv()?;
        let mut rem = self.clone();
        let mut quot = BiPolynomial::zero();
        while let Some((e, c)) = rem.leading_term() {
            // With a single divisor the lex division is deterministic: once the leading
            // term is not divisible the remainder can never vanish.
            if e.0 < lead_e.0 || e.1 < lead_e.1 {
                return None;
            }
            let qe = (e.0 - lead_e.0, e.1 - lead_e.1);
            let qc = c * &inv;
            for (de, dc) in divisor.terms.iter() {
                rem.add_term((de.0 + qe.0, de.1 + qe.1), -(dc * &qc));
            }
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        // Horner in x over groups of equal x-degree, highest first.
        let mut acc = Complex64::new(0.0, 0.0);
        let mut current: Option<u32> = None;
        let mut inner = Complex64::new(0.0, 0.0);
        for (e, c) in self.terms.iter().rev() {
            match current {
                Some(d) if d == e.0 => {}
                Some(d) => {
                    acc = (acc + inner) * x.powu(d - e.0);
                    inner = Complex64::new(0.0, 0.0);
                }
                None => {}
            }
            current = Some(e.0);
            inner += c.to_complex() * y.powu(e.1);
        }
        if let Some(d) = current {
            acc = (acc + inner) * x.powu(d);
        }
        acc
    }
}

impl<'a> Add<&'a BiPolynomial> for &'a BiPolynomial {
    type Output = BiPolynomial;
    fn add(self, rhs: &BiPolynomial) -> BiPolynomial {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (e, c) in &small.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a BiPolynomial> for &'a BiPolynomial {
    type Output = BiPolynomial;
    fn sub(self, rhs: &BiPolynomial) -> BiPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl<'a> Mul<&'a BiPolynomial> for &'a BiPolynomial {
    type Output = BiPolynomial;
    fn mul(self, rhs: &BiPolynomial) -> BiPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return BiPolynomial::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let mut out = BiPolynomial::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term((ea.0 + eb.0, ea.1 + eb.1), ca * cb);
            }
        }
        out
    }
}

impl Neg for &BiPolynomial {
    type Output = BiPolynomial;
    fn neg(self) -> BiPolynomial {
        BiPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl fmt::Display for BiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match *e {
                (0, 0) => String::new(),
                (i, 0) => pow_str("x", i),
                (0, j) => pow_str("y", j),
                (i, j) => format!("{}*{}", pow_str("x", i), pow_str("y", j)),
            };
            if mono.is_empty() {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", c, mono)?;
            }
        }
        Ok(())
    }
}

fn pow_str(v: &str, e: u32) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{}^{}", v, e)
    }
}
