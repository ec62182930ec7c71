//! Exact construction and verification of the Veronese solution family of the
//! Euclidean CP^{2s} sigma model, parametrised by Krawtchouk polynomials.
//!
//! Every field is a rational function in the two commuting variables
//! `x = ξ₊`, `y = ξ₋`; identities are checked as exact equalities of rational
//! functions, and the real slice `ξ₋ = conj(ξ₊)` is only used for numerics.

pub mod algebra;
pub mod geometry;
pub mod krawtchouk;
pub mod model;
pub mod quadrature;
pub mod spin;
pub mod verify;
