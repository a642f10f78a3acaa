//! Numerical verification of a Cesaro-weighted explicit formula for
//! Hardy-Littlewood numbers (integers representable as prime + square).
//!
//! The quantity under test is the weighted representation count
//!
//! ```text
//!   S(N, k) = sum_{n <= N} r(n) * (1 - n/N)^k / Gamma(k+1),
//!   r(n)    = sum_{p + m^2 = n} log p   (prime powers weighted by von Mangoldt)
//! ```
//!
//! and the library evaluates the closed-form side: two main terms, two sums
//! over nontrivial zeta zeros, a Bessel series in the square part, and a
//! double sum over zeros and Bessel orders. [`eval::verify`] computes both
//! sides and reports the residual together with truncation-tail estimates,
//! so that agreement (or disagreement) is a statement about mathematics, not
//! about float luck.
//!
//! Numerical policy, applied throughout:
//! * compensated (Kahan-Babuska-Neumaier) summation for every long sum,
//! * log-magnitude + phase ([`logscaled::LogScaled`]) for factors like
//!   `Gamma(rho)` and `J_{k+1/2+rho}(u)` whose magnitudes overflow `f64`
//!   individually but cancel in products,
//! * every evaluator reports an error estimate, and the dispatcher
//!   cross-checks methods in their overlap regions instead of trusting one.

pub mod bessel;
pub mod error;
pub mod eval;
pub mod gamma;
pub mod lhs_check;
pub mod logscaled;
pub mod oracle;
pub mod quad;
pub mod report;
pub mod sieve;
pub mod sum;
pub mod zeros;

pub use error::{ConfigViolation, DataError, EvalError, HlError};
pub use eval::{evaluate_rhs, verify, CesaroQuery, Normalization, TermBreakdown, TruncationConfig};
pub use logscaled::LogScaled;
pub use report::VerificationReport;
pub use sieve::VonMangoldtTable;
pub use zeros::ZeroList;

/// Complex double used across the crate.
pub type C64 = num_complex::Complex64;
