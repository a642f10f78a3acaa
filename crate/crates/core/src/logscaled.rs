//! Log-magnitude + phase representation for complex factors whose sizes
//! leave `f64` range long before their products do.
//!
//! The motivating case: `Gamma(rho)` at a zeta zero `rho = 1/2 + i*gamma`
//! decays like `exp(-pi*gamma/2)` (already ~1e-6742 at gamma ~ 10^4), while
//! the Bessel factor it multiplies grows like `exp(+pi*gamma/2)`. Neither
//! side fits in a float; the product is O(1). [`LogScaled`] keeps
//! `ln|z|` and `arg z` separately so products and quotients are exact-ish
//! additions, and only the final, tame value is ever exponentiated.

use crate::sum::KbnC64;
use crate::C64;
use std::f64::consts::{PI, TAU};

/// A complex number stored as `exp(log_mag) * exp(i * phase)`.
///
/// `log_mag = -inf` encodes zero. `phase` is kept in `(-pi, pi]` but only
/// matters modulo 2*pi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogScaled {
    pub log_mag: f64,
    pub phase: f64,
}

#[inline]
fn wrap_phase(p: f64) -> f64 {
    if p.abs() <= PI {
        return p;
    }
    let w = p.rem_euclid(TAU);
    if w > PI {
        w - TAU
    } else {
        w
    }
}

impl LogScaled {
    pub const ZERO: LogScaled = LogScaled {
        log_mag: f64::NEG_INFINITY,
        phase: 0.0,
    };

    pub const ONE: LogScaled = LogScaled {
        log_mag: 0.0,
        phase: 0.0,
    };

    pub fn new(log_mag: f64, phase: f64) -> Self {
        Self {
            log_mag,
            phase: wrap_phase(phase),
        }
    }

    /// From an ordinary complex value (loses nothing representable).
    pub fn from_c64(z: C64) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            return Self::ZERO;
        }
        Self {
            log_mag: z.norm().ln(),
            phase: z.arg(),
        }
    }

    /// Interpret `lnz` as a complex logarithm: `exp(lnz.re) * e^{i lnz.im}`.
    /// This is how `log_gamma` output becomes a usable factor.
    pub fn from_ln(lnz: C64) -> Self {
        Self::new(lnz.re, lnz.im)
    }

    /// `base^expo` for a positive real base: magnitude `base^Re(expo)`,
    /// phase `Im(expo) * ln(base)`. Exact in log space, no range limits.
    pub fn real_pow_complex(base: f64, expo: C64) -> Self {
        debug_assert!(base > 0.0);
        let lb = base.ln();
        Self::new(expo.re * lb, expo.im * lb)
    }

    pub fn is_zero(&self) -> bool {
        self.log_mag == f64::NEG_INFINITY
    }

    pub fn mul(self, other: LogScaled) -> LogScaled {
        if self.is_zero() || other.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.log_mag + other.log_mag, self.phase + other.phase)
    }

    pub fn div(self, other: LogScaled) -> LogScaled {
        Self::new(self.log_mag - other.log_mag, self.phase - other.phase)
    }

    pub fn mul_c64(self, z: C64) -> LogScaled {
        self.mul(Self::from_c64(z))
    }

    pub fn conj(self) -> LogScaled {
        Self {
            log_mag: self.log_mag,
            phase: -self.phase,
        }
    }

    pub fn scale_log(self, dlog: f64) -> LogScaled {
        Self {
            log_mag: self.log_mag + dlog,
            phase: self.phase,
        }
    }

    /// Collapse to a plain complex number. Overflows to inf / underflows to
    /// zero exactly like `exp` would; call only when the value is known tame
    /// (or when inf is an acceptable answer, as in diagnostics).
    pub fn to_c64(self) -> C64 {
        if self.is_zero() {
            return C64::new(0.0, 0.0);
        }
        let m = self.log_mag.exp();
        C64::new(m * self.phase.cos(), m * self.phase.sin())
    }
}

/// Accumulator for sums of [`LogScaled`] terms with a floating reference
/// scale. Terms are added as `exp(log_mag - offset)` into a compensated
/// complex sum; the offset follows the largest term seen so the working
/// values stay near unit magnitude.
///
/// Also tracks the largest term magnitude, which is the honest way to report
/// cancellation: if `max ln|term| - ln|sum|` is large, that many digits died.
#[derive(Debug, Clone)]
pub struct ScaledSum {
    offset: f64,
    acc: KbnC64,
    max_log: f64,
    count: usize,
}

impl Default for ScaledSum {
    fn default() -> Self {
        Self::new()
    }
}

impl ScaledSum {
    pub fn new() -> Self {
        Self {
            offset: f64::NEG_INFINITY,
            acc: KbnC64::new(),
            max_log: f64::NEG_INFINITY,
            count: 0,
        }
    }

    pub fn add(&mut self, t: LogScaled) {
        if t.is_zero() {
            return;
        }
        self.count += 1;
        self.max_log = self.max_log.max(t.log_mag);
        if self.offset == f64::NEG_INFINITY {
            self.offset = t.log_mag;
        } else if t.log_mag > self.offset + 250.0 {
            // Rebase before the incoming term overflows the working scale.
            // The old partial shrinks by exp(offset - new), which stays
            // representable because the gap is capped by the rebase itself.
            let new_offset = t.log_mag;
            let shrink = (self.offset - new_offset).exp();
            let old = self.acc.total();
            self.acc = KbnC64::new();
            self.acc.add(old * shrink);
            self.offset = new_offset;
        }
        let rel = (t.log_mag - self.offset).exp();
        self.acc
            .add(C64::new(rel * t.phase.cos(), rel * t.phase.sin()));
    }

    pub fn total(&self) -> LogScaled {
        let z = self.acc.total();
        if z.re == 0.0 && z.im == 0.0 {
            return LogScaled::ZERO;
        }
        LogScaled::new(self.offset + z.norm().ln(), z.arg())
    }

    /// `ln` of the largest single term added so far.
    pub fn max_term_log(&self) -> f64 {
        self.max_log
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Decimal digits lost to cancellation: `log10(max |term|) - log10(|sum|)`.
    /// Zero when the sum is at least as large as its biggest term.
    pub fn cancellation_digits(&self) -> f64 {
        let tot = self.total();
        if tot.is_zero() {
            return f64::INFINITY;
        }
        ((self.max_log - tot.log_mag) / std::f64::consts::LN_10).max(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sum::kbn_sum_c64;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn round_trip_c64() {
        let z = C64::new(-3.25, 4.5);
        let r = LogScaled::from_c64(z).to_c64();
        assert_relative_eq!(r.re, z.re, max_relative = 1e-14);
        assert_relative_eq!(r.im, z.im, max_relative = 1e-14);
    }

    #[test]
    fn huge_times_tiny_is_finite() {
        // Individually exp(800) and exp(-790) are inf and 0 in f64.
        let a = LogScaled::new(800.0, 0.3);
        let b = LogScaled::new(-790.0, -0.1);
        let p = a.mul(b).to_c64();
        let expect = 10f64.exp();
        assert_relative_eq!(p.norm(), expect, max_relative = 1e-12);
        assert_relative_eq!(p.arg(), 0.2, max_relative = 1e-12);
    }

    #[test]
    fn gamma_magnitude_at_first_zero_from_frozen_log() {
        // ln Gamma(1/2 + i*14.1347...) has real part -21.28383579969...;
        // |Gamma| at that point is 5.70883588728e-10 (independent oracle).
        let lng = C64::new(-21.283835799687658759, 23.305944848039551716);
        let g = LogScaled::from_ln(lng);
        assert_relative_eq!(
            g.log_mag.exp(),
            5.7088358872811522574e-10,
            max_relative = 1e-15
        );
    }

    #[test]
    fn real_pow_complex_matches_powc() {
        // N^rho for modest sizes agrees with the direct complex power.
        let n = 100.0f64;
        let rho = C64::new(0.5, 14.134725141734694);
        let direct = C64::new(n, 0.0).powc(rho);
        let scaled = LogScaled::real_pow_complex(n, rho).to_c64();
        assert_relative_eq!(scaled.re, direct.re, max_relative = 1e-12);
        assert_relative_eq!(scaled.im, direct.im, max_relative = 1e-12);
    }

    #[test]
    fn scaled_sum_handles_enormous_dynamic_range() {
        // exp(1000)*(1) + exp(1000)*(-1) + exp(990): the survivors sit ~e^10
        // below the largest terms; a direct f64 sum is inf - inf = NaN.
        let mut s = ScaledSum::new();
        s.add(LogScaled::new(1000.0, 0.0));
        s.add(LogScaled::new(1000.0, PI)); // = -exp(1000)
        s.add(LogScaled::new(990.0, 0.0));
        let t = s.total();
        assert_relative_eq!(t.log_mag, 990.0, epsilon = 1e-9);
        assert!(t.phase.abs() < 1e-9);
        assert!(s.cancellation_digits() > 3.0);
    }

    #[test]
    fn cancellation_digit_count_is_honest() {
        // -1e20 is stored as (log_mag, phase = pi), and sin(pi_f64) is
        // 1.22e-16, so the pair leaves an imaginary residue of that relative
        // size: cancellation bottoms out at the phase-quantization floor
        // (~15.9 digits), not at the naive 20. The real part does cancel.
        let mut s = ScaledSum::new();
        s.add(LogScaled::from_c64(C64::new(1e20, 0.0)));
        s.add(LogScaled::from_c64(C64::new(-1e20, 0.0)));
        s.add(LogScaled::from_c64(C64::new(1.0, 0.0)));
        let lost = s.cancellation_digits();
        assert!(lost >= 15.0 && lost <= 16.5, "lost = {lost}");
        assert_relative_eq!(s.total().to_c64().re, 1.0, max_relative = 1e-10);
    }

    proptest! {
        #[test]
        fn scaled_sum_matches_kbn_on_tame_terms(
            parts in proptest::collection::vec((-5.0f64..5.0, -3.0f64..3.0), 1..60)
        ) {
            let terms: Vec<C64> = parts.iter().map(|&(m, p)| {
                C64::new(m.exp() * p.cos(), m.exp() * p.sin())
            }).collect();
            let direct = kbn_sum_c64(terms.iter().copied());
            let mut s = ScaledSum::new();
            for &(m, p) in &parts {
                s.add(LogScaled::new(m, p));
            }
            let via = s.total().to_c64();
            prop_assert!((via - direct).norm() <= 1e-11 * (1.0 + direct.norm()));
        }

        #[test]
        fn mul_adds_logs(a in -300.0f64..300.0, b in -300.0f64..300.0,
                         pa in -3.0f64..3.0, pb in -3.0f64..3.0) {
            let p = LogScaled::new(a, pa).mul(LogScaled::new(b, pb));
            prop_assert!((p.log_mag - (a + b)).abs() < 1e-12);
            // Phases agree modulo 2*pi.
            let d = (p.phase - (pa + pb)).rem_euclid(TAU);
            prop_assert!(d < 1e-12 || (TAU - d) < 1e-12);
        }
    }
}
