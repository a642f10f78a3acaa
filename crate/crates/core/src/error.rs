//! Error taxonomy. Three layers, matching who is at fault:
//! the caller ([`ConfigViolation`]), the inputs ([`DataError`]), or the
//! numerics themselves ([`EvalError`]).

use thiserror::Error;

/// The request itself is out of contract. CLI maps these to exit code 2.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigViolation {
    #[error("N must be at least 2 (got {0})")]
    NTooSmall(u64),
    #[error("N must be at most 10^8 (got {0}); the sieve and double-sum cost grow past the tested envelope")]
    NTooLarge(u64),
    #[error("Cesaro weight k must exceed 1/2 for the zero sums to converge absolutely (got {0})")]
    KTooSmall(f64),
    #[error("k must be finite (got {0})")]
    KNotFinite(f64),
    #[error("truncation parameter {name} must be positive (got {value})")]
    NonPositiveTruncation { name: &'static str, value: i64 },
    #[error("unknown normalization `{0}` (expected `divided` or `scaled`)")]
    BadNormalization(String),
}

/// The zeros file (or other external data) is unusable. CLI exit code 3.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum DataError {
    #[error("zeros file {path}: {problem}")]
    ZerosFile { path: String, problem: String },
    #[error("zeros file {path} line {line}: {problem}")]
    ZerosLine {
        path: String,
        line: usize,
        problem: String,
    },
    #[error("requested {requested} zeros but the file holds only {available}")]
    NotEnoughZeros { requested: usize, available: usize },
}

/// A numerical method could not deliver a trustworthy value.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("ascending series for J_nu unreliable: cancellation consumed {lost_digits:.1} digits (order nu={nu}, argument u={u})")]
    SeriesCancellation {
        nu: String,
        u: f64,
        lost_digits: f64,
    },
    #[error(
        "quadrature for J_nu outside its validity region: {reason} (order nu={nu}, argument u={u})"
    )]
    QuadratureInvalid { nu: String, u: f64, reason: String },
    #[error("asymptotic expansion for J_nu diverged before reaching tolerance: best relative error {best_rel:.3e} (order nu={nu}, argument u={u})")]
    AsymptoticDiverged { nu: String, u: f64, best_rel: f64 },
    #[error("no Bessel method applicable at order nu={nu}, argument u={u}: {details}")]
    NoMethodApplicable { nu: String, u: f64, details: String },
    #[error("methods disagree at order nu={nu}, argument u={u}: relative gap {gap:.3e} exceeds {tol:.3e}")]
    CrossCheckFailed {
        nu: String,
        u: f64,
        gap: f64,
        tol: f64,
    },
}

/// Anything the library can refuse to do, in one type for the CLI boundary.
#[derive(Debug, Error)]
pub enum HlError {
    #[error(transparent)]
    Config(#[from] ConfigViolation),
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}
