//! Bessel functions `J_nu(u)` for real `u > 0` and complex order `nu`,
//! organised as three independent methods plus a regime dispatcher.
//!
//! * [`series::bessel_j_series`]: ascending power series. Exact at small
//!   `u`; self-destructs honestly (reports cancellation) when the
//!   alternating terms outgrow the sum.
//! * [`quadrature::bessel_j_quadrature`]: Poisson integral on `[0, pi/2]`
//!   with an analytic endpoint tail. Workhorse for mid-range `u` and any
//!   complex order with `Re nu > -0.45`.
//! * [`asymptotic::bessel_j_asymptotic`]: multi-term Hankel expansion for
//!   large `u`, with the error of the first omitted term.
//!
//! Every method returns a [`BesselEval`] whose `rel_err` is a live estimate
//! (truncation + cancellation + quadrature gap), never a wish. The
//! dispatcher [`bessel_j`] tries methods in regime order and accepts the
//! first one meeting the tolerance, falling back to an absolute envelope
//! test for real orders (near a zero of `J_nu` relative digits are
//! unattainable and meaningless); [`bessel_j_checked`] runs all applicable
//! methods and insists they agree, which is how the test suite patrols the
//! overlap regions.
//!
//! Magnitudes are carried as [`LogScaled`]: at order `nu = 7/2 + i*gamma`
//! the function grows like `e^{pi gamma / 2}`, which overflows `f64` near
//! `gamma ~ 450` while the explicit-formula terms that consume it stay O(1).

pub mod asymptotic;
pub mod quadrature;
pub mod series;

use crate::error::EvalError;
use crate::logscaled::LogScaled;
use crate::C64;
use serde::Serialize;
use std::f64::consts::PI;

pub use asymptotic::bessel_j_asymptotic;
pub use quadrature::{bessel_j_quadrature, bessel_j_quadrature_family};
pub use series::bessel_j_series;

/// Which evaluation path produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    Series,
    Quadrature,
    Asymptotic,
}

/// A Bessel value with provenance and an honest error estimate.
#[derive(Debug, Clone, Copy)]
pub struct BesselEval {
    pub value: LogScaled,
    /// Self-reported relative error (truncation, cancellation, panel gaps).
    pub rel_err: f64,
    pub method: Method,
}

/// Format a complex order compactly for error messages.
pub(crate) fn nu_str(nu: C64) -> String {
    if nu.im == 0.0 {
        format!("{}", nu.re)
    } else {
        format!("{}{:+}i", nu.re, nu.im)
    }
}

/// Ascending series is worth attempting below this argument (cancellation
/// stays under a few digits); larger imaginary order relaxes the limit
/// because the `1/Gamma(nu+m+1)` factors damp the hump.
pub(crate) fn series_applicable(nu: C64, u: f64) -> bool {
    let g = nu.im.abs();
    u <= 14.0 || (g >= 4.0 && u <= 14.0 * g.sqrt())
}

/// The argument above which the Hankel expansion converges usefully.
pub(crate) fn asymptotic_threshold(nu: C64) -> f64 {
    30f64.max(0.7 * nu.norm_sqr())
}

/// Hankel expansion converges usefully once `u` clears the order scale.
pub(crate) fn asymptotic_applicable(nu: C64, u: f64) -> bool {
    u >= asymptotic_threshold(nu)
}

/// Quadrature needs the Poisson representation, hence `Re nu > -0.45`,
/// and a sane point budget.
pub(crate) fn quadrature_applicable(nu: C64, u: f64) -> bool {
    nu.re > -0.45 && quadrature::estimated_points(nu, u) < 5.0e7
}

/// Evaluate `J_nu(u)` by the cheapest reliable method for the regime.
///
/// Methods are tried in order of expected accuracy; the first whose
/// self-reported relative error meets `tol` wins. If none does, the error
/// lists what each method reported, because "no method applies" is a
/// statement the caller may need to act on (widen tolerance, change
/// truncation strategy), not a shrug.
pub fn bessel_j(nu: C64, u: f64, tol: f64) -> Result<BesselEval, EvalError> {
    assert!(u > 0.0, "bessel_j needs u > 0, got {u}");
    let mut order: Vec<Method> = Vec::with_capacity(3);
    if u <= 14.0 {
        order.push(Method::Series);
        order.push(Method::Quadrature);
        order.push(Method::Asymptotic);
    } else if asymptotic_applicable(nu, u) {
        order.push(Method::Asymptotic);
        order.push(Method::Quadrature);
        order.push(Method::Series);
    } else {
        order.push(Method::Quadrature);
        order.push(Method::Series);
        order.push(Method::Asymptotic);
    }

    // `best` is the evaluation with the smallest *estimated absolute*
    // error (log of |value| * rel_err): the quantity the near-zero
    // fallback below certifies against.
    let mut best: Option<(BesselEval, f64)> = None;
    let mut notes: Vec<String> = Vec::new();
    for m in order {
        let attempt = match m {
            Method::Series if series_applicable(nu, u) => Some(bessel_j_series(nu, u)),
            Method::Quadrature if quadrature_applicable(nu, u) => Some(bessel_j_quadrature(nu, u)),
            Method::Asymptotic if asymptotic_applicable(nu, u) => Some(bessel_j_asymptotic(nu, u)),
            _ => None,
        };
        match attempt {
            None => notes.push(format!("{m:?}: outside applicability gates")),
            Some(Err(e)) => notes.push(format!("{m:?}: {e}")),
            Some(Ok(ev)) => {
                if ev.rel_err <= tol {
                    return Ok(ev);
                }
                notes.push(format!("{m:?}: rel_err {:.3e} > tol", ev.rel_err));
                let abs_ln = ev.value.log_mag + ev.rel_err.max(1e-16).ln();
                if best.map_or(true, |(_, b)| abs_ln < b) {
                    best = Some((ev, abs_ln));
                }
            }
        }
    }
    // Near a zero of J_nu no method can certify relative digits: the value
    // itself is ~0. For real nonnegative order fall back to an absolute
    // test against the envelope min(1, sqrt(2/(pi u))), which every method
    // meets there; rel_err stays as reported, so the caller sees the truth.
    if nu.im == 0.0 && nu.re >= 0.0 {
        if let Some((ev, abs_ln)) = best {
            let env_ln = (2.0 / (PI * u)).sqrt().min(1.0).ln();
            if abs_ln <= tol.ln() + env_ln {
                return Ok(ev);
            }
        }
    }
    Err(EvalError::NoMethodApplicable {
        nu: nu_str(nu),
        u,
        details: notes.join("; "),
    })
}

/// Evaluate with *all* applicable methods and demand pairwise agreement.
///
/// The acceptance tolerance is `max(tol, 12 * (err_a + err_b))`: two
/// methods may each be honest about a mediocre error estimate, and that is
/// not a disagreement. Returns the most accurate evaluation.
pub fn bessel_j_checked(nu: C64, u: f64, tol: f64) -> Result<BesselEval, EvalError> {
    let mut evals: Vec<BesselEval> = Vec::new();
    let mut notes: Vec<String> = Vec::new();
    if series_applicable(nu, u) {
        match bessel_j_series(nu, u) {
            Ok(e) => evals.push(e),
            Err(e) => notes.push(e.to_string()),
        }
    }
    if quadrature_applicable(nu, u) {
        match bessel_j_quadrature(nu, u) {
            Ok(e) => evals.push(e),
            Err(e) => notes.push(e.to_string()),
        }
    }
    if asymptotic_applicable(nu, u) {
        match bessel_j_asymptotic(nu, u) {
            Ok(e) => evals.push(e),
            Err(e) => notes.push(e.to_string()),
        }
    }
    if evals.is_empty() {
        return Err(EvalError::NoMethodApplicable {
            nu: nu_str(nu),
            u,
            details: notes.join("; "),
        });
    }
    evals.sort_by(|a, b| a.rel_err.total_cmp(&b.rel_err));
    for pair in evals.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let gap = relative_gap(a.value, b.value);
        let allowed = tol.max(12.0 * (a.rel_err + b.rel_err));
        if gap > allowed {
            return Err(EvalError::CrossCheckFailed {
                nu: nu_str(nu),
                u,
                gap,
                tol: allowed,
            });
        }
    }
    Ok(evals[0])
}

/// `|a - b| / max(|a|, |b|)` computed in log space so it works at any scale.
pub fn relative_gap(a: LogScaled, b: LogScaled) -> f64 {
    if a.is_zero() && b.is_zero() {
        return 0.0;
    }
    if a.is_zero() || b.is_zero() {
        return 1.0;
    }
    // Divide the smaller by the larger: the quotient is O(1) and safe.
    let (hi, lo) = if a.log_mag >= b.log_mag {
        (a, b)
    } else {
        (b, a)
    };
    let q = lo.div(hi).to_c64();
    (q - 1.0).norm()
}

/// Closed forms for half-integer orders (spherical Bessel relatives):
/// the independent yardstick used by tests and acceptance checks.
/// `order` must be one of 0.5, 1.5, 2.5, 3.5.
pub fn bessel_half_integer_closed_form(order: f64, u: f64) -> f64 {
    let root = (2.0 / (std::f64::consts::PI * u)).sqrt();
    let (s, c) = (u.sin(), u.cos());
    if order == 0.5 {
        root * s
    } else if order == 1.5 {
        root * (s / u - c)
    } else if order == 2.5 {
        root * ((3.0 / (u * u) - 1.0) * s - 3.0 * c / u)
    } else if order == 3.5 {
        root * ((15.0 / (u * u * u) - 6.0 / u) * s - (15.0 / (u * u) - 1.0) * c)
    } else {
        panic!("no closed form wired for order {order}");
    }
}
