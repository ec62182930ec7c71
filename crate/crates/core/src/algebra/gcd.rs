//! Greatest common divisors in Q(i)[x, y].
//!
//! Polynomials are viewed as elements of R[x] with R = Q(i)[y]. The gcd splits
//! into the gcd of the contents (univariate Euclid over the field Q(i)) and the
//! gcd of the primitive parts (primitive pseudo-remainder sequence in x).

use num_traits::{One, Zero};

use super::{BiPolynomial, GaussianRational};

/// Dense univariate polynomial in `y`, lowest degree first, no trailing zeros.
type Uni = Vec<GaussianRational>;

fn trim(p: &mut Uni) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn uni_mul(a: &Uni, b: &Uni) -> Uni {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![GaussianRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + &(ca * cb);
        }
    }
    trim(&mut out);
    out
}

fn uni_sub(a: &Uni, b: &Uni) -> Uni {
    let n = a.len().max(b.len());
    let zero = GaussianRational::zero();
    let mut out: Uni = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    trim(&mut out);
    out
}

fn uni_scale(a: &Uni, c: &GaussianRational) -> Uni {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|v| v * c).collect()
}

fn uni_divrem(a: &Uni, b: &Uni) -> (Uni, Uni) {
    assert!(!b.is_empty(), "univariate division by zero");
    let db = b.len() - 1;
    let inv = b[db].inv().expect("nonzero leading coefficient");
    let mut rem = a.clone();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![GaussianRational::zero(); rem.len() - db];
    while rem.len() > db {
        let shift = rem.len() - 1 - db;
        let q = &rem[rem.len() - 1] * &inv;
        for (i, cb) in b.iter().enumerate() {
            rem[shift + i] = &rem[shift + i] - &(cb * &q);
        }
        quot[shift] = q;
        rem.pop();
        trim(&mut rem);
    }
    (quot, rem)
}

fn uni_monic(a: &Uni) -> Uni {
    match a.last() {
        None => Vec::new(),
        Some(lc) if lc.is_one() => a.clone(),
        Some(lc) => uni_scale(a, &lc.inv().expect("nonzero")),
    }
}

fn uni_gcd(a: &Uni, b: &Uni) -> Uni {
    let (mut u, mut v) = (a.clone(), b.clone());
    while !v.is_empty() {
        if v.len() == 1 {
            return vec![GaussianRational::one()];
        }
        let (_, r) = uni_divrem(&u, &v);
        u = v;
        v = r;
    }
    uni_monic(&u)
}

fn is_unit(a: &Uni) -> bool {
    a.len() == 1
}

/// Coefficients of `x^0, x^1, ...`, each a polynomial in `y`.
fn to_dense(p: &BiPolynomial) -> Vec<Uni> {
    let mut out: Vec<Uni> = vec![Vec::new(); p.degree_x() as usize + 1];
    for (e, c) in p.terms() {
        let row = &mut out[e.0 as usize];
        let j = e.1 as usize;
        if row.len() <= j {
            row.resize(j + 1, GaussianRational::zero());
        }
        row[j] = c.clone();
    }
    out
}

fn from_dense(d: &[Uni]) -> BiPolynomial {
    BiPolynomial::from_terms(d.iter().enumerate().flat_map(|(i, row)| {
        row.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(j, c)| ((i as u32, j as u32), c.clone()))
    }))
}

fn dense_trim(d: &mut Vec<Uni>) {
    while d.last().is_some_and(|c| c.is_empty()) {
        d.pop();
    }
}

fn content(d: &[Uni]) -> Uni {
    let mut g: Uni = Vec::new();
    for c in d.iter().filter(|c| !c.is_empty()) {
        g = if g.is_empty() { uni_monic(c) } else { uni_gcd(&g, c) };
        if is_unit(&g) {
            break;
        }
    }
    g
}

fn primitive_part(d: &[Uni]) -> Vec<Uni> {
    let c = content(d);
    if c.is_empty() || is_unit(&c) {
        return d.to_vec();
    }
    d.iter().map(|row| uni_divrem(row, &c).0).collect()
}

/// Pseudo-remainder of `a` by `b` in R[x], up to a factor that is a power of `lc(b)`.
fn prem(a: &[Uni], b: &[Uni]) -> Vec<Uni> {
    let db = b.len() - 1;
    let lcb = &b[db];
    let mut r: Vec<Uni> = a.to_vec();
    dense_trim(&mut r);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let lcr = r[r.len() - 1].clone();
        let mut next: Vec<Uni> = r.iter().map(|c| uni_mul(c, lcb)).collect();
        for (i, cb) in b.iter().enumerate() {
            next[shift + i] = uni_sub(&next[shift + i], &uni_mul(cb, &lcr));
        }
        dense_trim(&mut next);
        r = next;
    }
    r
}

/// Monic gcd of two bivariate polynomials; `gcd(0, 0) = 0`.
pub fn gcd(a: &BiPolynomial, b: &BiPolynomial) -> BiPolynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (ma, mb) = (a.monomial_content(), b.monomial_content());
    let mono = (ma.0.min(mb.0), ma.1.min(mb.1));
    let a = a.shift_down(ma.0, ma.1);
    let b = b.shift_down(mb.0, mb.1);
    let unit = BiPolynomial::one();
    let core = if a.as_constant().is_some() || b.as_constant().is_some() {
        unit
    } else if let Some(g) = quick_divisor(&a, &b) {
        g
    } else {
        primitive_gcd(&a, &b)
    };
    core.shift_up(mono.0, mono.1).monic()
}

/// Cheap exits when one operand divides the other.
fn quick_divisor(a: &BiPolynomial, b: &BiPolynomial) -> Option<BiPolynomial> {
    let (small, big) = if a.num_terms() <= b.num_terms() { (a, b) } else { (b, a) };
    if big.div_exact(small).is_some() {
        return Some(small.clone());
    }
    None
}

fn primitive_gcd(a: &BiPolynomial, b: &BiPolynomial) -> BiPolynomial {
    let da = to_dense(a);
    let db = to_dense(b);
    let (ca, cb) = (content(&da), content(&db));
    let content_gcd = uni_gcd(&ca, &cb);
    let mut u = primitive_part(&da);
    let mut v = primitive_part(&db);
    if u.len() < v.len() {
        std::mem::swap(&mut u, &mut v);
    }
    let prim = loop {
        if v.len() == 1 {
            // a primitive polynomial of x-degree zero is a unit
            break vec![vec![GaussianRational::one()]];
        }
        let r = prem(&u, &v);
        if r.is_empty() {
            break v;
        }
        u = v;
        v = primitive_part(&r);
    };
    let prim = from_dense(&primitive_part(&prim));
    let cg = from_dense(&[content_gcd]);
    &prim * &cg
}
