//! Ascending power series for `J_nu(u)`.
//!
//! ```text
//!   J_nu(u) = (u/2)^nu * sum_{m>=0} (-(u/2)^2)^m / (m! * Gamma(nu+m+1))
//! ```
//!
//! The terms alternate and, past modest `u`, grow enormous before they
//! shrink: the sum is then a tiny difference of huge numbers. That is not a
//! corner case to sweep under the rug; the accumulator tracks the largest
//! term, and the measured digit loss is priced into the reported `rel_err`
//! rather than hidden. A caller needing relative digits sees an estimate far above
//! any sane tolerance and dispatches elsewhere; a caller needing absolute
//! accuracy (near a real zero of `J_nu`, where the value itself is ~0 and
//! no method can certify relative digits) still gets the sum, whose
//! absolute error stays at rounding level of the largest term. Magnitudes
//! run through [`LogScaled`] because `1/Gamma(nu+1)` at order `1/2 +
//! i*gamma` is already `e^{+pi gamma/2}`-sized.

use super::{nu_str, BesselEval, Method};
use crate::error::EvalError;
use crate::gamma::log_gamma;
use crate::logscaled::{LogScaled, ScaledSum};
use crate::C64;

/// Hard cap on terms; convergence past the hump is factorial, so a sum that
/// has not converged by here never will in this arithmetic.
const MAX_TERMS: usize = 600;

pub fn bessel_j_series(nu: C64, u: f64) -> Result<BesselEval, EvalError> {
    let half = 0.5 * u;
    let x = -half * half; // series variable, negative real
    let mut term = LogScaled::from_ln(-log_gamma(nu + 1.0));
    let mut acc = ScaledSum::new();
    acc.add(term);
    let mut trunc_rel = f64::INFINITY;
    for m in 0..MAX_TERMS {
        let mf = (m + 1) as f64;
        let factor = C64::new(x, 0.0) / (C64::new(mf, 0.0) * (nu + mf));
        term = term.mul_c64(factor);
        acc.add(term);
        // Converged when the running total dwarfs the term and the terms
        // are shrinking (past the hump), not merely small before it.
        let total = acc.total();
        if !total.is_zero() && term.log_mag < total.log_mag - 45.0 && factor.norm() < 0.9 {
            trunc_rel = (term.log_mag - total.log_mag).exp();
            break;
        }
    }
    let total = acc.total();
    let lost = acc.cancellation_digits();
    if total.is_zero() {
        // A literal zero total cannot carry an absolute error bar through
        // the (value, rel_err) interface; refuse instead of guessing.
        return Err(EvalError::SeriesCancellation {
            nu: nu_str(nu),
            u,
            lost_digits: f64::INFINITY,
        });
    }
    if !trunc_rel.is_finite() {
        // MAX_TERMS exhausted without the shrink test firing.
        return Err(EvalError::SeriesCancellation {
            nu: nu_str(nu),
            u,
            lost_digits: f64::INFINITY,
        });
    }
    let value = LogScaled::real_pow_complex(half, nu).mul(total);
    // Rounding noise amplified by cancellation, plus truncation. The noise
    // floor is ~1e-13 of the largest term (not machine epsilon): the
    // offset-rescaling arithmetic in ScaledSum costs ~2-3 digits over a
    // plain compensated sum, measured at deep-cancellation arguments.
    let rel_err = 10f64.powf(lost) * 1e-13 + trunc_rel;
    Ok(BesselEval {
        value,
        rel_err,
        method: Method::Series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn frozen_small_argument_values() {
        // Independent multiprecision references.
        let j = bessel_j_series(C64::new(0.0, 0.0), 0.1).unwrap();
        assert_relative_eq!(
            j.value.to_c64().re,
            0.99750156206604003228,
            max_relative = 1e-13
        );
        let j = bessel_j_series(C64::new(3.5, 0.0), 6.283185307179586).unwrap();
        assert_relative_eq!(
            j.value.to_c64().re,
            0.19736663205929271201,
            max_relative = 1e-11
        );
        let j = bessel_j_series(C64::new(6.0, 0.0), 3.0).unwrap();
        assert_relative_eq!(
            j.value.to_c64().re,
            0.011393932332213069421,
            max_relative = 1e-12
        );
        // u = 12 sits at the edge of the comfort zone: ~5 digits cancel, and
        // the reported error must admit it while the value stays good.
        let j = bessel_j_series(C64::new(0.0, 0.0), 12.0).unwrap();
        assert_relative_eq!(
            j.value.to_c64().re,
            0.047689310796833536624,
            max_relative = 1e-9
        );
        assert!(
            j.rel_err > 1e-12 && j.rel_err < 1e-8,
            "rel_err {}",
            j.rel_err
        );
    }

    #[test]
    fn complex_order_small_argument() {
        let j = bessel_j_series(C64::new(3.5, 14.13472514173469379), 10.0).unwrap();
        assert_relative_eq!(j.value.log_mag, 15.826073722298267002, max_relative = 1e-12);
        assert!(j.rel_err < 1e-10);
        let j = bessel_j_series(C64::new(1.7, 14.134725141734694), 2.0).unwrap();
        assert_relative_eq!(j.value.log_mag, 15.435527803918681558, max_relative = 1e-12);
    }

    #[test]
    fn cancellation_is_priced_not_hidden() {
        // Past the comfort zone the computed total is rounding noise of the
        // largest term. The measured digit loss then compares the hump to
        // that noise, so rel_err lands at O(1) or above: "zero significant
        // digits". What matters is that no tolerance below 1 can ever
        // select these evaluations.
        //
        // u = 628.3 at complex order: the hump tops the true sum by ~260
        // digits.
        let r = bessel_j_series(C64::new(3.5, 14.134725141734694), 628.3).unwrap();
        assert!(r.rel_err > 1.0, "rel_err {}", r.rel_err);
        // Moderately large real argument: same story, smaller scale.
        let r = bessel_j_series(C64::new(0.0, 0.0), 60.0).unwrap();
        assert!(r.rel_err > 1.0, "rel_err {}", r.rel_err);
    }

    #[test]
    fn absolute_accuracy_survives_at_a_real_zero() {
        // At the first zero of J_0 the true value is ~5e-17 (the f64
        // rounding of the zero), so the relative error is meaningless --
        // but the sum's absolute error sits at rounding level of the
        // largest term, and that is what the dispatcher's absolute
        // fallback relies on.
        let r = bessel_j_series(C64::new(0.0, 0.0), 2.404825557695773).unwrap();
        assert!(
            r.value.to_c64().norm() < 1e-13,
            "value {}",
            r.value.to_c64()
        );
        assert!(r.rel_err > 1.0, "rel_err {}", r.rel_err);
    }

    #[test]
    fn half_integer_closed_form_cross_check() {
        for &u in &[0.3f64, 2.0, 8.0] {
            let exact = super::super::bessel_half_integer_closed_form(1.5, u);
            let got = bessel_j_series(C64::new(1.5, 0.0), u)
                .unwrap()
                .value
                .to_c64()
                .re;
            assert_relative_eq!(got, exact, max_relative = 1e-11, epsilon = 1e-14);
        }
    }
}
