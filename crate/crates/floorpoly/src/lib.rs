//! Exact analysis of the sequences `floor(P(k)) mod m` for polynomials `P`
//! with coefficients in a real quadratic field.
//!
//! The crate decides whether such a sequence visits every residue class
//! with equal frequency (uniform distribution) or at all (completeness),
//! and when the answer is negative it produces a small, independently
//! checkable certificate: a modulus together with either an over-heavy
//! residue class or a class that is never attained.

pub mod analysis;
pub mod dist;
pub mod error;
pub mod exact;
pub mod nt;
pub mod parse;
pub mod poly;

pub use analysis::{
    classify_complete, classify_linear_complete, classify_linear_ud, classify_ud,
    find_incomplete_prime_even, find_incomplete_prime_monomial, find_nonud_modulus,
    find_residue_run, unattained_window_search, verify_certificate, Budget, Certificate,
    IncompletenessWitness, NonUdWitness, RunWitness, Verdict, VerdictKind, WindowWitness,
};
pub use dist::{ResidueHistogram, WeylStat};
pub use error::{Error, Result};
pub use exact::ExactReal;
pub use poly::{ClearedForm, IntPoly, Poly};
