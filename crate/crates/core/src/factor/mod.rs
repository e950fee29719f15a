//! Factorization of integer polynomials: finite-field factoring, degree-set
//! certificates, Hensel lifting and Zassenhaus recombination.

pub mod composed;
pub mod degree_set;
pub mod hensel;
pub mod modp;
pub mod report;
pub mod zassenhaus;

pub use degree_set::{certify_irreducible, degree_set, Certification, DegreeSet};
pub use modp::factor_mod_p;
pub use report::{
    conjecture_verdict, factor_report, CertificateKind, ConjectureVerdict, FactorReport, Match, Verdict,
};
pub use zassenhaus::{factor_over_q, Factorization, DEFAULT_DEGREE_CAP};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FactorError {
    #[error("prime {0} divides the leading coefficient")]
    BadPrime(u64),
    #[error("modulus {0} is not a supported prime")]
    UnsupportedModulus(u64),
    #[error("no supplied prime keeps the polynomial squarefree")]
    NoUsablePrime,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("polynomial is not primitive")]
    NotPrimitive,
    #[error("expected a nonconstant polynomial")]
    Constant,
}
