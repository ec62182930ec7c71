//! Exact computer-algebra kernel: Gaussian rationals, bivariate polynomials,
//! canonical rational functions, and weighted vectors/matrices.

mod gaussian;
pub mod gcd;
mod poly;
mod rational_fn;
mod weighted;

pub use gaussian::GaussianRational;
pub use poly::{BiPolynomial, Exponent};
pub use rational_fn::{conformal_factor, conformal_shape, BiRationalFn, DENOMINATOR_GUARD};
pub use weighted::{binomial, WeightedMatrix, WeightedVector};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("denominator vanishes at xi_plus = {re} + {im}i")]
    SingularEvaluation { re: f64, im: f64 },
}
