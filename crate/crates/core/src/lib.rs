//! Exact integer linear algebra around the Chinese-remainder map on
//! `Z[X]/(X^n - 1)`.
//!
//! The ring `Z[X]/(X^n - 1)` maps into the direct sum of the cyclotomic
//! quotients `Z[X]/Phi_d(X)` over the divisors `d` of `n`.  That map is
//! injective but not surjective; this crate computes the structure of its
//! cokernel exactly: the matrix of the map in the monomial bases
//! ([`crtmap`]), its Smith normal form by general-purpose elimination
//! ([`snf`]), the same elementary divisors in closed form ([`divisors`]),
//! determinants through resultants of cyclotomic polynomials
//! ([`resultants`]), and explicit witness bases adapted to the cokernel
//! ([`smithvec`]).
//!
//! All arithmetic is exact over arbitrary-precision integers; nothing is
//! floating point and nothing is probabilistic.  The closed forms and the
//! elimination engine are implemented independently so each can serve as an
//! oracle for the other.

pub mod arith;
pub mod crtmap;
pub mod cyclotomic;
pub mod divisors;
pub mod intpoly;
pub mod resultants;
pub mod smithvec;
pub mod snf;

pub use crtmap::{DirectSumElement, IntMatrix, MonicFactorization};
pub use cyclotomic::{all_cyclotomic_divisors, cyclotomic, cyclotomic_prime_power};
pub use intpoly::IntPolynomial;
pub use smithvec::SmithVector;
pub use snf::SnfResult;
