//! Line-integral reconstruction of the weighted count.
//!
//! The Cesaro-weighted sum has an exact contour representation: for `N` not
//! itself counted with positive weight (the boundary term carries weight
//! zero, so any `N` works),
//!
//! ```text
//!   sum_{n<=N} r(n) (N-n)^k / Gamma(k+1)
//!     = (1/2 pi i) int_{(a)} e^{N z} S~(z) omega_2(z) z^{-k-1} dz
//! ```
//!
//! because expanding `S~ omega_2 = sum_{p^j, m} log p * e^{-(p^j + m^2) z}`
//! and applying `(1/2 pi i) int_{(a)} e^{w z} z^{-k-1} dz = w^k / Gamma(k+1)`
//! (for `w > 0`, zero for `w < 0`) reproduces the weighted count term by
//! term. The two sides share no code: the left runs over the sieve, the
//! right through the quadrature and the exponential-sum evaluators. Any
//! systematic error in either pipeline shows up as a mismatch here.

use crate::error::ConfigViolation;
use crate::oracle::{omega2_direct, s_tilde_depth, s_tilde_direct};
use crate::quad::integrate_oscillatory;
use crate::sieve::VonMangoldtTable;
use crate::C64;
use serde::Serialize;
use std::f64::consts::PI;

/// Outcome of one reconstruction, in the divided normalization.
#[derive(Debug, Clone, Serialize)]
pub struct LineIntegralCheck {
    pub n: u64,
    pub k: f64,
    /// Sieve side: `N^{-k} sum r(n) (N-n)^k / Gamma(k+1)`.
    pub lhs_sieve: f64,
    /// Contour side, same normalization.
    pub lhs_integral: f64,
    pub rel_dev: f64,
    /// Quadrature error estimate plus truncation tail, relative.
    pub rel_err_est: f64,
    pub evals: usize,
}

/// Reconstruct the weighted count through the contour at `a = 1/N` and
/// compare against the sieve. Builds its own table (the exponential sum
/// needs `Lambda` up to `~50 N`, well past the count itself).
pub fn lhs_line_integral(n: u64, k: f64) -> Result<LineIntegralCheck, ConfigViolation> {
    crate::sieve::validate_query_params(n, k)?;
    let nf = n as f64;
    let a = 1.0 / nf;
    let z0 = C64::new(a, 0.0);
    let depth = s_tilde_depth(z0);
    let table = VonMangoldtTable::up_to(depth.max(n));
    let lhs_sieve = table.cesaro_lhs(n, k)?;

    // Magnitude of the integrand envelope at the contour, for the cut.
    let s_mag = s_tilde_direct(z0, &table, depth).norm();
    let w_mag = omega2_direct(z0).norm();
    let envelope = (nf * a).exp() * s_mag * w_mag / PI;
    // Tail past T: envelope * T^{-k} / k. Aim at 1e-7 of the unnormalized
    // count so the comparison holds 1e-4 with three digits to spare.
    let target_abs = 1e-7 * lhs_sieve.abs().max(1e-300) * nf.powf(k);
    let t_max = (envelope / (k * target_abs)).powf(1.0 / k).max(20.0 * a);

    let f = |t: f64| -> C64 {
        let z = C64::new(a, t);
        let s = s_tilde_direct(z, &table, depth);
        let w = omega2_direct(z);
        (z * nf).exp() * s * w * (-z.ln() * (k + 1.0)).exp()
    };
    // Phase rate: e^{iNt} plus the pole-like factors' combined arg slope.
    let local_freq = |t: f64| 1.3 * nf + (k + 3.0) / (a * a + t * t).sqrt();
    let r = integrate_oscillatory(0.0, t_max, 1.0, f, local_freq);
    let unnormalized = r.value.re / PI; // conjugate fold of (1/2 pi) int_{-T}^{T}
    let lhs_integral = unnormalized / nf.powf(k);
    let tail_est = envelope * t_max.powf(-k) / k;
    let denom = lhs_sieve.abs().max(f64::MIN_POSITIVE);
    Ok(LineIntegralCheck {
        n,
        k,
        lhs_sieve,
        lhs_integral,
        rel_dev: (lhs_integral - lhs_sieve).abs() / denom,
        rel_err_est: (r.abs_err / PI + tail_est) / (denom * nf.powf(k)),
        evals: r.evals,
    })
}
