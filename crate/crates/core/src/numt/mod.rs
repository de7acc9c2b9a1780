//! Exact elementary number theory and the polynomial kernel.
//!
//! Everything here works over unbounded integers or rationals; there is no
//! floating point anywhere in the crate.

mod arith;
mod cyclotomic;
mod poly;
mod ratpoly;
mod resultant;

pub use arith::{
    divisors, euler_phi, factorize, is_prime, is_prime_power, mobius, prime_power_ratio, star,
    Factorization, FACTOR_BOUND,
};
pub use cyclotomic::{cyclotomic_poly, phi_at_1, psi_poly, CoeffExtPoly};
pub use poly::IntPoly;
pub use ratpoly::RatPoly;
pub use resultant::resultant;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumtError {
    #[error("zero has no factorization")]
    Zero,
    #[error("{0} exceeds the factorization bound {FACTOR_BOUND}")]
    TooLarge(u64),
    #[error("moduli must be distinct (got {0} twice)")]
    EqualModuli(u64),
    #[error("zero polynomial has no resultant")]
    ZeroPolynomial,
    #[error("invalid Ψ parameters: need a > b (got a = {a}, b = {b})")]
    PsiExponents { a: u32, b: u32 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
}
