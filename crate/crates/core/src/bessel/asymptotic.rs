//! Hankel asymptotic expansion of `J_nu(u)` for large argument.
//!
//! ```text
//!   J_nu(u) = (H1 + H2) / 2,
//!   H1,H2 ~ sqrt(2/(pi u)) e^{+- i omega} sum_m (+-i)^m a_m(nu) / u^m,
//!   omega = u - pi nu / 2 - pi / 4,
//!   a_0 = 1,  a_m = a_{m-1} (4 nu^2 - (2m-1)^2) / (8 m)
//! ```
//!
//! The series is divergent-asymptotic: terms shrink, bottom out, then blow
//! up. Summation stops at the smallest term, whose size is the standard
//! error estimate. For complex order the two halves differ in magnitude by
//! `e^{pi Im(nu)}` (that is where the Bessel growth lives), so each half is
//! assembled as a [`LogScaled`] value and combined through a [`ScaledSum`].

use super::{nu_str, BesselEval, Method};
use crate::error::EvalError;
use crate::logscaled::{LogScaled, ScaledSum};
use crate::sum::KbnC64;
use crate::C64;
use std::f64::consts::{FRAC_PI_4, PI};

const MAX_TERMS: usize = 40;

pub fn bessel_j_asymptotic(nu: C64, u: f64) -> Result<BesselEval, EvalError> {
    let nu2x4 = nu * nu * 4.0;
    let mut c = C64::new(1.0, 0.0); // a_m / u^m
    let mut s_plus = KbnC64::new();
    let mut s_minus = KbnC64::new();
    s_plus.add(c);
    s_minus.add(c);
    let mut best = 1.0f64;
    let mut prev = 1.0f64;
    for m in 1..MAX_TERMS {
        let mf = m as f64;
        let odd = 2.0 * mf - 1.0;
        c = c * (nu2x4 - odd * odd) / (8.0 * mf * u);
        let mag = c.norm();
        if mag >= prev {
            break; // divergence onset; stop before the bounce
        }
        // i^m and (-i)^m cycle through quadrants; apply without powc.
        let (plus_rot, minus_rot) = match m % 4 {
            0 => (c, c),
            1 => (C64::new(-c.im, c.re), C64::new(c.im, -c.re)),
            2 => (-c, -c),
            _ => (C64::new(c.im, -c.re), C64::new(-c.im, c.re)),
        };
        s_plus.add(plus_rot);
        s_minus.add(minus_rot);
        prev = mag;
        best = mag;
        if mag < 1e-18 {
            break;
        }
    }
    if best >= 0.5 {
        return Err(EvalError::AsymptoticDiverged {
            nu: nu_str(nu),
            u,
            best_rel: best,
        });
    }
    // omega = u - pi nu/2 - pi/4; e^{+-i omega} has log-magnitude -+Im(omega).
    let om_re = u - FRAC_PI_4 - 0.5 * PI * nu.re;
    let om_im = -0.5 * PI * nu.im;
    let root = (2.0 / (PI * u)).sqrt();
    let e_plus = LogScaled::new(-om_im, om_re);
    let e_minus = LogScaled::new(om_im, -om_re);
    let mut acc = ScaledSum::new();
    acc.add(e_plus.mul_c64(s_plus.total() * 0.5 * root));
    acc.add(e_minus.mul_c64(s_minus.total() * 0.5 * root));
    let total = acc.total();
    if total.is_zero() {
        return Err(EvalError::AsymptoticDiverged {
            nu: nu_str(nu),
            u,
            best_rel: best,
        });
    }
    // Error: smallest term, on the dominant branch, relative to the result
    // (the ScaledSum's max-term bookkeeping prices in any cancellation
    // between the two halves near real-order zeros of the cosine).
    let rel_err = best * (acc.max_term_log() - total.log_mag).exp() + 1e-16;
    Ok(BesselEval {
        value: total,
        rel_err,
        method: Method::Asymptotic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn frozen_large_argument_real_orders() {
        // Independent multiprecision references.
        let e = bessel_j_asymptotic(C64::new(3.5, 0.0), 628.3).unwrap();
        assert_relative_eq!(
            e.value.to_c64().re,
            0.031830416151120052557,
            max_relative = 1e-12
        );
        let e = bessel_j_asymptotic(C64::new(3.5, 0.0), 10000.0).unwrap();
        assert_relative_eq!(
            e.value.to_c64().re,
            -0.0075956364686511020783,
            max_relative = 1e-12
        );
        assert!(e.rel_err < 1e-12);
        let e = bessel_j_asymptotic(C64::new(0.0, 0.0), 100.0).unwrap();
        assert_relative_eq!(
            e.value.to_c64().re,
            0.019985850304223122424,
            max_relative = 1e-11
        );
        let e = bessel_j_asymptotic(C64::new(6.0, 0.0), 150.0).unwrap();
        assert_relative_eq!(
            e.value.to_c64().re,
            -0.0070334596564724017526,
            max_relative = 1e-11
        );
    }

    #[test]
    fn frozen_complex_order() {
        // The hard regime: both the growth e^{pi gamma/2} and a
        // 40-term tail live here.
        let e = bessel_j_asymptotic(C64::new(3.5, 14.13472514173469379), 628.3).unwrap();
        assert_relative_eq!(e.value.log_mag, 17.983475634949534653, max_relative = 1e-13);
        let dp = (e.value.phase - -0.16790692236187670411).abs();
        assert!(dp < 1e-11, "phase gap {dp}");
        assert!(e.rel_err < 1e-12);
    }

    #[test]
    fn declares_divergence_when_order_too_heavy() {
        // |4 nu^2| / (8u) > 1 from the first term: refuse, do not guess.
        let r = bessel_j_asymptotic(C64::new(3.0, 30.0), 400.0);
        assert!(matches!(r, Err(EvalError::AsymptoticDiverged { .. })));
    }

    #[test]
    fn converges_fully_even_at_the_order_scale() {
        // u barely past the order scale still converges to the floor: the
        // term ratio (4 nu^2 - (2m-1)^2) / (8 m u) stays below one until the
        // terms are already under 1e-18, so claiming machine accuracy here
        // is honest, not optimistic.
        let e = bessel_j_asymptotic(C64::new(6.0, 0.0), 40.0).unwrap();
        assert!(e.rel_err < 1e-12);
        assert_relative_eq!(
            e.value.to_c64().re,
            0.048500114137794527629,
            max_relative = 1e-12
        );
    }

    #[test]
    fn half_integer_terminating_series_is_exact() {
        // For nu = 1/2 the expansion terminates: a_1 = (4*(1/4)-1)/8 = 0,
        // so the result equals sqrt(2/(pi u)) sin u to machine accuracy.
        let u = 37.0;
        let e = bessel_j_asymptotic(C64::new(0.5, 0.0), u).unwrap();
        let exact = (2.0 / (PI * u)).sqrt() * u.sin();
        assert_relative_eq!(e.value.to_c64().re, exact, max_relative = 1e-13);
    }
}
