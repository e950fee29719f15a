//! Exact integer and polynomial arithmetic.

pub mod arith;
pub mod modpoly;
pub mod poly;

pub use arith::{euler_phi, mobius, primes_in};
pub use modpoly::ModPoly;
pub use poly::{poly_compose, poly_divexact, poly_mul, IntPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
}
