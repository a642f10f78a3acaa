//! Assembly of the right-hand side: main terms, the two zero sums, the
//! Bessel series over squares, and the double sum over zeros and squares.
//!
//! Everything here returns plain `f64` term values together with explicit
//! truncation-tail estimates and diagnostics. The policy throughout:
//!
//! * summation order is fixed and compensated (Kahan-Babuska-Neumaier), and
//!   parallel sums are deterministic by construction, so a given input
//!   produces bit-identical output regardless of thread count;
//! * conjugate symmetry is exploited (`term(conj rho) = conj(term(rho))`
//!   holds exactly in floating point), so each sum runs over positive
//!   ordinates only and doubles the real part. The imaginary residue that a
//!   full two-sided summation would have left is still computed and
//!   reported, from the same cached per-zero terms;
//! * every truncation gets a tail estimate from explicit envelope bounds.
//!   The estimates are calibrated, not proven: they use measured constants
//!   and the Riemann-von Mangoldt density, and they are labeled as such.

use crate::bessel::{self, bessel_j, BesselEval};
use crate::error::{ConfigViolation, EvalError, HlError};
use crate::gamma::{gamma_logscaled, gamma_pos, gamma_ratio};
use crate::logscaled::LogScaled;
use crate::report::VerificationReport;
use crate::sieve::{validate_query_params, VonMangoldtTable};
use crate::sum::{Kbn, KbnC64};
use crate::zeros::ZeroList;
use crate::C64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{PI, TAU};

/// How the Cesaro-weighted sum is normalized.
///
/// `Divided` is the working normalization: weight `(1 - n/N)^k / k!`, main
/// term of size `N^{3/2}`. `ScaledByNk` multiplies everything by `N^k`,
/// matching the unnormalized weight `(N - n)^k / k!`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    Divided,
    ScaledByNk,
}

impl std::str::FromStr for Normalization {
    type Err = ConfigViolation;
    fn from_str(s: &str) -> Result<Self, ConfigViolation> {
        match s {
            "divided" => Ok(Normalization::Divided),
            "scaled" => Ok(Normalization::ScaledByNk),
            other => Err(ConfigViolation::BadNormalization(other.to_string())),
        }
    }
}

impl std::fmt::Display for Normalization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Normalization::Divided => "divided",
            Normalization::ScaledByNk => "scaled",
        })
    }
}

/// One verification request: compare both sides at `(N, k)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CesaroQuery {
    pub n: u64,
    pub k: f64,
    pub normalization: Normalization,
}

impl CesaroQuery {
    pub fn new(n: u64, k: f64) -> Self {
        CesaroQuery {
            n,
            k,
            normalization: Normalization::Divided,
        }
    }

    /// Enforce the parameter contract; returns advisory warnings.
    ///
    /// `k > 1` is the supported regime (every series converges with room to
    /// spare). `1/2 < k <= 1` is accepted but flagged: the double sum sits
    /// at the edge of its convergence proof there and tail estimates lose
    /// their safety margin. `k <= 1/2` is refused outright.
    pub fn validate(&self) -> Result<Vec<String>, ConfigViolation> {
        validate_query_params(self.n, self.k)?;
        let mut warnings = Vec::new();
        if self.k <= 1.0 {
            warnings.push(format!(
                "k = {} is in the exploratory band (1/2, 1]: the double sum converges \
                 only conditionally there and tail estimates are not calibrated",
                self.k
            ));
        }
        if self.normalization == Normalization::ScaledByNk {
            let log_scale = self.k * (self.n as f64).ln();
            if log_scale > 700.0 {
                return Err(ConfigViolation::BadNormalization(format!(
                    "scaled: N^k = exp({log_scale:.1}) overflows f64; use `divided`"
                )));
            }
        }
        Ok(warnings)
    }
}

/// Where to cut the infinite sums.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TruncationConfig {
    /// Zeros entering the two plain zero sums.
    pub zeros_primary: usize,
    /// Zeros entering the double sum; `None` means `min(zeros_primary, 250)`.
    /// The double sum's zero terms decay much faster than the plain sums',
    /// so it needs far fewer zeros for the same accuracy, and each of its
    /// zeros costs a full oscillatory integral family.
    pub zeros_double: Option<usize>,
    /// Hard cap on the square index `ell` in both Bessel sums; `None` lets
    /// the tail floor decide (bounded by [`AUTO_ELL_CAP`]).
    pub ell_max: Option<u64>,
    /// Stop extending `ell` once the envelope tail drops below this fraction
    /// of the main term. Contributions below it cannot move the residual.
    pub ell_floor_rel: f64,
    /// Per-evaluation tolerance handed to the Bessel dispatcher.
    pub bessel_tol: f64,
}

impl Default for TruncationConfig {
    fn default() -> Self {
        TruncationConfig {
            zeros_primary: 10_000,
            zeros_double: None,
            ell_max: None,
            ell_floor_rel: 1e-12,
            bessel_tol: 1e-8,
        }
    }
}

/// Cap on the automatically chosen `ell` range. At small `N` the envelope
/// floor can demand tens of thousands of terms to chase irrelevant digits;
/// past this cap the remainder is folded into the reported tail instead.
pub const AUTO_ELL_CAP: u64 = 2_000;

impl TruncationConfig {
    pub fn effective_zeros_double(&self) -> usize {
        self.zeros_double
            .unwrap_or_else(|| self.zeros_primary.min(250))
    }

    pub fn validate(&self) -> Result<(), ConfigViolation> {
        if self.zeros_primary == 0 {
            return Err(ConfigViolation::NonPositiveTruncation {
                name: "zeros_primary",
                value: 0,
            });
        }
        if self.zeros_double == Some(0) {
            return Err(ConfigViolation::NonPositiveTruncation {
                name: "zeros_double",
                value: 0,
            });
        }
        if self.ell_max == Some(0) {
            return Err(ConfigViolation::NonPositiveTruncation {
                name: "ell_max",
                value: 0,
            });
        }
        if !(self.ell_floor_rel > 0.0 && self.ell_floor_rel < 1.0) {
            return Err(ConfigViolation::NonPositiveTruncation {
                name: "ell_floor_rel",
                value: self.ell_floor_rel as i64,
            });
        }
        if !(self.bessel_tol > 0.0 && self.bessel_tol <= 1e-2) {
            return Err(ConfigViolation::NonPositiveTruncation {
                name: "bessel_tol",
                value: self.bessel_tol as i64,
            });
        }
        Ok(())
    }
}

/// Truncation-tail estimates, one per truncated sum, in the same units as
/// the term values. Calibrated envelopes, not proofs.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TailEstimates {
    pub zero_sum_primary: f64,
    pub zero_sum_secondary: f64,
    pub square_series: f64,
    pub double_sum_zeros: f64,
    pub double_sum_ell: f64,
    /// Accumulated |term| * rel_err over all Bessel evaluations: rounding
    /// and method error, as opposed to truncation.
    pub bessel_rounding: f64,
    pub total: f64,
}

/// Numerical health indicators for one evaluation.
#[derive(Debug, Clone, Serialize)]
pub struct Diagnostics {
    /// Largest leftover imaginary part among the conjugate-symmetric sums,
    /// summed two-sided in a fixed order. Should sit at rounding level.
    pub imag_residue: f64,
    /// log10 of (sum of |terms|) / |sum|, maximized over the zero sums: how
    /// many digits the summation itself cancels.
    pub condition_digits: f64,
    pub bessel_evals: usize,
    pub warnings: Vec<String>,
}

/// The right-hand side, term by term.
#[derive(Debug, Clone, Serialize)]
pub struct TermBreakdown {
    /// Main term, size `N^{3/2}`.
    pub t1: f64,
    /// Second main term, size `N`.
    pub t2: f64,
    /// Zero sum with `N^{1/2+rho}` weights (the `sqrt(N)`-scale pulse).
    pub t3: f64,
    /// Zero sum with `N^rho` weights.
    pub t4: f64,
    /// Bessel series over squares.
    pub t5: f64,
    /// Double sum: zeros x squares, complex-order Bessel.
    pub t6: f64,
    pub rhs_total: f64,
    pub zeros_used: usize,
    pub zeros_used_double: usize,
    /// Largest square index summed anywhere.
    pub l_max: u64,
    pub tails: TailEstimates,
    pub diagnostics: Diagnostics,
}

/// The two elementary terms: `sqrt(pi)/2 * N^{3/2} / Gamma(k + 5/2)` and
/// `-N / (2 Gamma(k + 2))`.
pub fn main_terms(n: u64, k: f64) -> (f64, f64) {
    let nf = n as f64;
    let t1 = 0.5 * PI.sqrt() * nf.powf(1.5) / gamma_pos(k + 2.5);
    let t2 = -nf / (2.0 * gamma_pos(k + 2.0));
    (t1, t2)
}

/// Output of one plain zero sum.
#[derive(Debug, Clone, Copy)]
pub struct ZeroSumOut {
    pub value: f64,
    /// |Im| of the two-sided sum, fixed order; rounding-level by symmetry.
    pub imag_residue: f64,
    /// Envelope estimate for the zeros beyond the last one used.
    pub tail: f64,
    /// log10( sum |terms| / |value| ).
    pub condition_digits: f64,
}

/// Tail of `sum_{gamma > g} gamma^{-a}` against the Riemann-von Mangoldt
/// density `log(gamma/2pi)/2pi`, in closed form. Needs `a > 1`.
fn rvm_tail(g: f64, a: f64) -> f64 {
    let s = a - 1.0;
    g.powf(-s) * ((g / TAU).ln() + 1.0 / s) / (s * TAU)
}

fn fold_pair_sum(terms: &[C64]) -> (f64, f64, f64) {
    // Production value: doubled real parts, compensated, in zero order.
    let mut re = Kbn::new();
    let mut abs = 0.0f64;
    for c in terms {
        re.add(2.0 * c.re);
        abs += 2.0 * c.re.abs();
    }
    // Diagnostic: what a two-sided summation (all +gamma terms, then all
    // -gamma terms) would have left in the imaginary part.
    let mut full = KbnC64::new();
    for c in terms {
        full.add(*c);
    }
    for c in terms {
        full.add(c.conj());
    }
    (re.total(), full.total().im.abs(), abs)
}

fn condition_digits(abs_sum: f64, value: f64) -> f64 {
    if value == 0.0 || abs_sum == 0.0 {
        0.0
    } else {
        (abs_sum / value.abs()).log10().max(0.0)
    }
}

/// `-sqrt(pi)/2 * sum_rho Gamma(rho)/Gamma(k + 3/2 + rho) * N^{1/2 + rho}`,
/// over the provided positive ordinates and their conjugates.
pub fn zero_sum_primary(n: u64, k: f64, gammas: &[f64]) -> ZeroSumOut {
    let nf = n as f64;
    let ln_n = nf.ln();
    let shift = k + 1.5;
    let terms: Vec<C64> = gammas
        .par_iter()
        .map(|&g| {
            let rho = C64::new(0.5, g);
            let ratio = gamma_ratio(rho, rho + shift);
            // N^{1/2 + rho} = N^{1 + i gamma}
            let phase = g * ln_n;
            ratio * C64::new(nf * phase.cos(), nf * phase.sin())
        })
        .collect();
    let (doubled_re, imag, abs) = fold_pair_sum(&terms);
    let pref = -0.5 * PI.sqrt();
    let value = pref * doubled_re;
    let tail = match gammas.last() {
        // |ratio| ~ gamma^{-(k+3/2)}, |N^{1/2+rho}| = N; x2 pairs, x2 safety.
        Some(&g_last) => 4.0 * pref.abs() * nf * rvm_tail(g_last, shift),
        None => f64::INFINITY,
    };
    ZeroSumOut {
        value,
        imag_residue: pref.abs() * imag,
        tail,
        condition_digits: condition_digits(abs, doubled_re),
    }
}

/// `+1/2 * sum_rho Gamma(rho)/Gamma(k + 1 + rho) * N^rho`.
pub fn zero_sum_secondary(n: u64, k: f64, gammas: &[f64]) -> ZeroSumOut {
    let nf = n as f64;
    let ln_n = nf.ln();
    let sqrt_n = nf.sqrt();
    let shift = k + 1.0;
    let terms: Vec<C64> = gammas
        .par_iter()
        .map(|&g| {
            let rho = C64::new(0.5, g);
            let ratio = gamma_ratio(rho, rho + shift);
            let phase = g * ln_n;
            ratio * C64::new(sqrt_n * phase.cos(), sqrt_n * phase.sin())
        })
        .collect();
    let (doubled_re, imag, abs) = fold_pair_sum(&terms);
    let value = 0.5 * doubled_re;
    let tail = match gammas.last() {
        Some(&g_last) => 4.0 * 0.5 * sqrt_n * rvm_tail(g_last, shift),
        None => f64::INFINITY,
    };
    ZeroSumOut {
        value,
        imag_residue: 0.5 * imag,
        tail,
        condition_digits: condition_digits(abs, doubled_re),
    }
}

/// Output of the Bessel series over squares.
#[derive(Debug, Clone, Copy)]
pub struct SquareSeriesOut {
    pub value: f64,
    pub l_used: u64,
    pub tail: f64,
    pub bessel_err: f64,
    pub evals: usize,
}

/// `N^{3/4 - k/2} / pi^{k+1} * sum_{ell>=1} J_{k+3/2}(2 pi ell sqrt(N)) / ell^{k+3/2}`.
///
/// Truncated when the envelope `|J_order(u)| <= sqrt(2/(pi u))` bounds the
/// remainder below `floor_abs` (or at the configured cap).
pub fn square_series(
    n: u64,
    k: f64,
    cfg: &TruncationConfig,
    scale_hint: f64,
) -> Result<SquareSeriesOut, EvalError> {
    let nf = n as f64;
    let order = k + 1.5;
    let u1 = TAU * nf.sqrt();
    let pref = nf.powf(0.75 - 0.5 * k) / PI.powf(k + 1.0);
    let floor_abs = cfg.ell_floor_rel * scale_hint.abs().max(f64::MIN_POSITIVE);
    // Remainder past L: pref * sqrt(2/(pi u1)) * L^{-(k+1)} / (k+1).
    let tail_at = |l: f64| pref * (2.0 / (PI * u1)).sqrt() * l.powf(-(k + 1.0)) / (k + 1.0);
    let hard_cap = cfg.ell_max.unwrap_or(200_000).min(200_000);

    let nu = C64::new(order, 0.0);
    let mut acc = Kbn::new();
    let mut bessel_err = 0.0f64;
    let mut evals = 0usize;
    let mut l = 0u64;
    while l < hard_cap {
        l += 1;
        let u = u1 * l as f64;
        let ev = bessel_j(nu, u, cfg.bessel_tol)?;
        evals += 1;
        let j = ev.value.to_c64().re;
        let term = pref * j / (l as f64).powf(order);
        acc.add(term);
        bessel_err += term.abs() * ev.rel_err.min(1.0);
        if cfg.ell_max.is_none() && tail_at(l as f64) < floor_abs {
            break;
        }
    }
    Ok(SquareSeriesOut {
        value: acc.total(),
        l_used: l,
        tail: tail_at(l as f64),
        bessel_err,
        evals,
    })
}

/// Output of the double sum over zeros and squares.
#[derive(Debug, Clone, Copy)]
pub struct DoubleSumOut {
    pub value: f64,
    pub zeros_used: usize,
    pub l_max: u64,
    pub tail_zeros: f64,
    pub tail_ell: f64,
    pub bessel_err: f64,
    pub imag_residue: f64,
    pub condition_digits: f64,
    pub evals: usize,
}

/// Envelope for one double-sum term (conjugate pair included):
///
/// ```text
///   2 |pref| * |Gamma(rho) N^{rho/2} pi^{-rho} J_{k+1/2+rho}(u) / ell^{k+1/2+rho}|
///     <= 2 pref * 0.849 * N^{1/4} (g^2+u^2)^{-1/4} (u/sqrt(g^2+u^2))^{k+1} ell^{-(k+1)}
/// ```
///
/// using `|Gamma(1/2+ig)| <= sqrt(2 pi) e^{-pi g/2}` and a measured bound
/// `|J_{sigma+ig}(u)| e^{-pi g/2} <= 0.6 (g^2+u^2)^{-1/4} (u/sqrt(g^2+u^2))^sigma`
/// (worst observed ratio 0.40 across the regimes this sum visits).
struct DoubleBound {
    amp: f64,
    sigma: f64,
    u1: f64,
}

impl DoubleBound {
    fn new(n: u64, k: f64, pref_abs: f64) -> Self {
        let nf = n as f64;
        DoubleBound {
            amp: 2.0 * pref_abs * 0.6 * 2.0f64.sqrt() * nf.powf(0.25),
            sigma: k + 1.0,
            u1: TAU * nf.sqrt(),
        }
    }

    fn term(&self, g: f64, ell: f64) -> f64 {
        let u = self.u1 * ell;
        let h = (g * g + u * u).sqrt();
        self.amp * (u / h).powf(self.sigma) * ell.powf(-self.sigma) / h.sqrt()
    }

    /// Sum of the envelope over `ell > l`, by direct summation in growing
    /// chunks plus a closed-form integral remainder once `u >> g`.
    fn ell_tail(&self, g: f64, l: u64) -> f64 {
        let mut total = 0.0f64;
        let mut start = l + 1;
        let mut chunk = 64u64;
        loop {
            let mut part = 0.0f64;
            for ell in start..start + chunk {
                part += self.term(g, ell as f64);
            }
            total += part;
            start += chunk;
            let u_next = self.u1 * start as f64;
            if u_next > 2.0 * g && part < 1e-3 * total.max(f64::MIN_POSITIVE) {
                // int_start^inf (u1 l)^{-1/2} l^{-sigma} dl
                let rem = self.amp * self.u1.powf(-0.5) * (start as f64).powf(0.5 - self.sigma)
                    / (self.sigma - 0.5);
                return total + rem;
            }
            chunk *= 2;
            if start > l + 1_000_000 {
                // Envelope refuses to decay (cannot happen for k > 1/2);
                // treat the running total as the estimate.
                return total * 2.0;
            }
        }
    }

    /// Smallest `l` with `ell_tail(g, l) < budget`, within `[0, cap]`.
    fn auto_ell(&self, g: f64, budget: f64, cap: u64) -> u64 {
        if self.ell_tail(g, 0) < budget {
            return 0;
        }
        let (mut lo, mut hi) = (0u64, cap);
        if self.ell_tail(g, cap) >= budget {
            return cap;
        }
        // Invariant: tail(lo) >= budget > tail(hi).
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.ell_tail(g, mid) < budget {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    /// Zeros beyond `g_max`: integrate the per-zero envelope against the
    /// Riemann-von Mangoldt density on a geometric grid.
    fn zero_tail(&self, g_max: f64) -> f64 {
        let density = |g: f64| (g / TAU).ln() / TAU;
        let mut total = 0.0f64;
        let mut g = g_max;
        loop {
            let g_next = g * 1.08;
            let mid = 0.5 * (g + g_next);
            let part = self.ell_tail(mid, 0) * density(mid) * (g_next - g);
            total += part;
            g = g_next;
            if part < 1e-4 * total.max(f64::MIN_POSITIVE) || g > 1e12 {
                return 2.0 * total;
            }
        }
    }
}

struct ZeroContrib {
    c: C64,
    l_used: u64,
    err: f64,
    evals: usize,
    tail_ell: f64,
}

/// `-N^{1/4-k/2}/pi^k * sum_rho Gamma(rho) (N^{rho/2}/pi^rho)
///   sum_ell J_{k+1/2+rho}(2 pi ell sqrt(N)) / ell^{k+1/2+rho}`.
///
/// Per zero, the inner Bessel family is evaluated with a shared quadrature
/// pass below the asymptotic threshold and the Hankel expansion above it.
/// The ell range per zero comes from the envelope bound against
/// `ell_floor_rel * scale_hint`; zeros whose whole inner sum sits under the
/// floor contribute only to the tail estimate.
pub fn double_sum(
    n: u64,
    k: f64,
    gammas: &[f64],
    cfg: &TruncationConfig,
    scale_hint: f64,
) -> Result<DoubleSumOut, EvalError> {
    let nf = n as f64;
    let u1 = TAU * nf.sqrt();
    let pref = -nf.powf(0.25 - 0.5 * k) / PI.powf(k);
    let bound = DoubleBound::new(n, k, pref.abs());
    let budget = cfg.ell_floor_rel * scale_hint.abs().max(f64::MIN_POSITIVE);
    let cap = cfg.ell_max.unwrap_or(AUTO_ELL_CAP).min(AUTO_ELL_CAP);

    let contribs: Vec<Result<ZeroContrib, EvalError>> = gammas
        .par_iter()
        .map(|&g| {
            let l_used = bound.auto_ell(g, budget, cap);
            let tail_ell = bound.ell_tail(g, l_used);
            if l_used == 0 {
                return Ok(ZeroContrib {
                    c: C64::new(0.0, 0.0),
                    l_used: 0,
                    err: 0.0,
                    evals: 0,
                    tail_ell,
                });
            }
            let rho = C64::new(0.5, g);
            let nu = C64::new(k + 1.0, g); // k + 1/2 + rho
            let factor = gamma_logscaled(rho)
                .mul(LogScaled::real_pow_complex(nf, rho / 2.0))
                .div(LogScaled::real_pow_complex(PI, rho));
            // Split the ell range at the Hankel applicability threshold.
            let gate = bessel::asymptotic_threshold(nu);
            let asym_from = ((gate / u1).ceil() as u64).max(1);
            let fam_count = l_used.min(asym_from - 1) as usize;

            let mut inner = KbnC64::new();
            let mut err = 0.0f64;
            let mut evals = 0usize;
            let mut push = |ell: u64, ev: &BesselEval, err: &mut f64| {
                let term = factor
                    .mul(ev.value)
                    .mul(LogScaled::real_pow_complex(ell as f64, -nu))
                    .to_c64();
                inner.add(term);
                *err += term.norm() * ev.rel_err.min(1.0);
            };
            if fam_count > 0 {
                let fam = bessel::bessel_j_quadrature_family(nu, u1, fam_count)?;
                evals += fam_count;
                for (i, ev) in fam.iter().enumerate() {
                    push(i as u64 + 1, ev, &mut err);
                }
            }
            for ell in (fam_count as u64 + 1)..=l_used {
                let ev = bessel_j(nu, u1 * ell as f64, cfg.bessel_tol)?;
                evals += 1;
                push(ell, &ev, &mut err);
            }
            Ok(ZeroContrib {
                c: inner.total(),
                l_used,
                err,
                evals,
                tail_ell,
            })
        })
        .collect();

    let mut per_zero = Vec::with_capacity(contribs.len());
    for c in contribs {
        per_zero.push(c?);
    }

    let terms: Vec<C64> = per_zero.iter().map(|z| z.c).collect();
    let (doubled_re, imag, abs) = fold_pair_sum(&terms);
    let value = pref * doubled_re;
    let tail_zeros = match gammas.last() {
        Some(&g_last) => bound.zero_tail(g_last),
        None => f64::INFINITY,
    };
    Ok(DoubleSumOut {
        value,
        zeros_used: gammas.len(),
        l_max: per_zero.iter().map(|z| z.l_used).max().unwrap_or(0),
        tail_zeros,
        tail_ell: per_zero.iter().map(|z| z.tail_ell).sum(),
        bessel_err: pref.abs() * 2.0 * per_zero.iter().map(|z| z.err).sum::<f64>(),
        imag_residue: pref.abs() * imag,
        condition_digits: condition_digits(abs, doubled_re),
        evals: per_zero.iter().map(|z| z.evals).sum(),
    })
}

/// Evaluate all six terms of the right-hand side.
pub fn evaluate_rhs(
    query: &CesaroQuery,
    zeros: &ZeroList,
    cfg: &TruncationConfig,
) -> Result<TermBreakdown, HlError> {
    let mut warnings = query.validate()?;
    cfg.validate()?;
    let n = query.n;
    let k = query.k;
    let gammas_primary = zeros.take(cfg.zeros_primary)?;
    let z2 = cfg.effective_zeros_double();
    let gammas_double = zeros.take(z2)?;

    let (t1, t2) = main_terms(n, k);
    let zp = zero_sum_primary(n, k, gammas_primary);
    let zs = zero_sum_secondary(n, k, gammas_primary);
    let sq = square_series(n, k, cfg, t1).map_err(HlError::Eval)?;
    let ds = double_sum(n, k, gammas_double, cfg, t1).map_err(HlError::Eval)?;

    let scale = match query.normalization {
        Normalization::Divided => 1.0,
        Normalization::ScaledByNk => (n as f64).powf(k),
    };
    let (t1, t2) = (t1 * scale, t2 * scale);
    let (t3, t4) = (zp.value * scale, zs.value * scale);
    let (t5, t6) = (sq.value * scale, ds.value * scale);

    let tails = TailEstimates {
        zero_sum_primary: zp.tail * scale,
        zero_sum_secondary: zs.tail * scale,
        square_series: sq.tail * scale,
        double_sum_zeros: ds.tail_zeros * scale,
        double_sum_ell: ds.tail_ell * scale,
        bessel_rounding: (sq.bessel_err + ds.bessel_err) * scale,
        total: (zp.tail
            + zs.tail
            + sq.tail
            + ds.tail_zeros
            + ds.tail_ell
            + sq.bessel_err
            + ds.bessel_err)
            * scale,
    };

    let cond = zp
        .condition_digits
        .max(zs.condition_digits)
        .max(ds.condition_digits);
    if cond > 4.0 {
        warnings.push(format!(
            "zero sums cancel {cond:.1} digits; consider more zeros or larger k"
        ));
    }

    let mut rhs = Kbn::new();
    for t in [t1, t2, t3, t4, t5, t6] {
        rhs.add(t);
    }
    Ok(TermBreakdown {
        t1,
        t2,
        t3,
        t4,
        t5,
        t6,
        rhs_total: rhs.total(),
        zeros_used: gammas_primary.len(),
        zeros_used_double: gammas_double.len(),
        l_max: sq.l_used.max(ds.l_max),
        tails,
        diagnostics: Diagnostics {
            imag_residue: zp.imag_residue.max(zs.imag_residue).max(ds.imag_residue) * scale,
            condition_digits: cond,
            bessel_evals: sq.evals + ds.evals,
            warnings,
        },
    })
}

/// Evaluate both sides and package the comparison.
pub fn verify(
    query: &CesaroQuery,
    table: &VonMangoldtTable,
    zeros: &ZeroList,
    cfg: &TruncationConfig,
) -> Result<VerificationReport, HlError> {
    let breakdown = evaluate_rhs(query, zeros, cfg)?;
    let lhs_divided = table.cesaro_lhs(query.n, query.k)?;
    let lhs = match query.normalization {
        Normalization::Divided => lhs_divided,
        Normalization::ScaledByNk => lhs_divided * (query.n as f64).powf(query.k),
    };
    Ok(VerificationReport::assemble(query, lhs, breakdown, zeros))
}
