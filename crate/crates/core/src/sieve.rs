//! Prime-power sieve, von Mangoldt weights, and the arithmetic side of the
//! verification: representation counts `r(n)` and their Cesaro-weighted sum.
//!
//! `r(n) = sum_{m >= 1, p^a + m^2 = n} log p` counts representations of `n`
//! as prime power plus positive square, each weighted by the log of the
//! prime (the von Mangoldt weight). The weighted count
//!
//! ```text
//!   S(N, k) = sum_{n <= N} r(n) (1 - n/N)^k / Gamma(k+1)
//! ```
//!
//! is the left-hand side that the explicit formula reproduces.

use crate::error::ConfigViolation;
use crate::gamma::gamma_pos;
use crate::sum::{kbn_sum, par_sum_deterministic, Kbn};

/// Table of prime-power bases: `base[n] = p` when `n = p^a`, else 0.
/// `u32` holds any base up to the 1e8 ceiling.
pub struct VonMangoldtTable {
    limit: u64,
    base: Vec<u32>,
}

impl VonMangoldtTable {
    /// Sieve up to and including `limit`.
    pub fn up_to(limit: u64) -> Self {
        assert!(limit >= 2, "table needs limit >= 2");
        let n = limit as usize;
        // Smallest prime factor sieve, then squash non-prime-powers.
        let mut base = vec![0u32; n + 1];
        let mut i = 2usize;
        while i <= n {
            if base[i] == 0 {
                let mut j = i;
                while j <= n {
                    if base[j] == 0 {
                        base[j] = i as u32;
                    }
                    j += i;
                }
            }
            i += 1;
        }
        // Keep the factor only where n is a pure power of it. Non-powers
        // fail after one or two divisions, so this pass is ~O(n).
        for v in 2..=n {
            let p = base[v] as u64;
            let mut m = v as u64;
            while m % p == 0 {
                m /= p;
            }
            if m != 1 {
                base[v] = 0;
            }
        }
        Self { limit, base }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// The prime `p` when `n = p^a`, else `None`.
    pub fn prime_power_base(&self, n: u64) -> Option<u32> {
        assert!(n <= self.limit, "n = {n} beyond sieve limit {}", self.limit);
        match self.base[n as usize] {
            0 => None,
            p => Some(p),
        }
    }

    /// von Mangoldt weight: `log p` for `n = p^a`, zero otherwise.
    #[inline]
    pub fn lambda(&self, n: u64) -> f64 {
        debug_assert!(n <= self.limit);
        match self.base[n as usize] {
            0 => 0.0,
            p => (p as f64).ln(),
        }
    }

    /// Weighted representation count `r(n)` (prime power + positive square).
    pub fn r_hl(&self, n: u64) -> f64 {
        assert!(n <= self.limit);
        let mut acc = Kbn::new();
        let mut m = 1u64;
        while m * m + 2 <= n {
            acc.add(self.lambda(n - m * m));
            m += 1;
        }
        acc.total()
    }

    /// The Cesaro-weighted count over `n <= nn` with weight exponent `k`.
    ///
    /// Iteration runs square-part-outer (`m`), prime-part-inner (`j`), so
    /// the inner loop scans `lambda` linearly; parallelised over `m` with
    /// order-fixed chunk folding, so results are bitwise reproducible.
    pub fn cesaro_lhs(&self, nn: u64, k: f64) -> Result<f64, ConfigViolation> {
        validate_query_params(nn, k)?;
        assert!(nn <= self.limit, "sieve only reaches {}", self.limit);
        let nf = nn as f64;
        let inv_gamma = 1.0 / gamma_pos(k + 1.0);
        let m_max = ((nn as f64).sqrt() as u64 + 2).min(nn);
        let total = par_sum_deterministic(m_max as usize, 4, |mi| {
            let m = (mi + 1) as u64;
            let m2 = m * m;
            if m2 + 2 > nn {
                return 0.0;
            }
            let mut acc = Kbn::new();
            for j in 2..=(nn - m2) {
                let lam = self.lambda(j);
                if lam != 0.0 {
                    let w = ((nf - (j + m2) as f64) / nf).powf(k);
                    acc.add(lam * w);
                }
            }
            acc.total()
        });
        Ok(total * inv_gamma)
    }
}

/// Shared validation for the (N, k) query surface; the same contract guards
/// the evaluator and the CLI.
pub fn validate_query_params(nn: u64, k: f64) -> Result<(), ConfigViolation> {
    if !k.is_finite() {
        return Err(ConfigViolation::KNotFinite(k));
    }
    if nn < 2 {
        return Err(ConfigViolation::NTooSmall(nn));
    }
    if nn > 100_000_000 {
        return Err(ConfigViolation::NTooLarge(nn));
    }
    if k <= 0.5 {
        return Err(ConfigViolation::KTooSmall(k));
    }
    Ok(())
}

/// Representation count by trial division only: no sieve, no shared code.
/// Exists to be the independent slow oracle in tests.
pub fn r_hl_bruteforce(n: u64) -> f64 {
    fn lambda_slow(v: u64) -> f64 {
        if v < 2 {
            return 0.0;
        }
        let mut m = v;
        let mut p = 0u64;
        let mut d = 2u64;
        while d * d <= m {
            if m % d == 0 {
                p = d;
                while m % d == 0 {
                    m /= d;
                }
                break;
            }
            d += 1;
        }
        if p == 0 {
            // v itself is prime
            return (v as f64).ln();
        }
        if m == 1 {
            (p as f64).ln()
        } else {
            0.0
        }
    }
    let mut terms = Vec::new();
    let mut m = 1u64;
    while m * m + 2 <= n {
        terms.push(lambda_slow(n - m * m));
        m += 1;
    }
    kbn_sum(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn lambda_of_prime_powers_and_composites() {
        let t = VonMangoldtTable::up_to(1 << 20);
        assert_relative_eq!(t.lambda(2), 2f64.ln());
        assert_relative_eq!(t.lambda(4), 2f64.ln());
        assert_relative_eq!(t.lambda(8), 2f64.ln());
        assert_relative_eq!(t.lambda(9), 3f64.ln());
        assert_relative_eq!(t.lambda(97), 97f64.ln());
        assert_relative_eq!(t.lambda(1 << 20), 2f64.ln());
        assert_eq!(t.lambda(1), 0.0);
        assert_eq!(t.lambda(12), 0.0);
        assert_eq!(t.lambda(100), 0.0);
        assert_eq!(t.prime_power_base(49), Some(7));
        assert_eq!(t.prime_power_base(50), None);
    }

    #[test]
    fn chebyshev_psi_at_one_hundred() {
        // sum_{n<=100} Lambda(n); frozen from an independent computation.
        let t = VonMangoldtTable::up_to(100);
        let psi = kbn_sum((2..=100).map(|n| t.lambda(n)));
        assert_relative_eq!(psi, 94.045311229357392246, max_relative = 1e-14);
    }

    #[test]
    fn representation_counts_small_cases() {
        let t = VonMangoldtTable::up_to(100);
        // 3 = 2 + 1^2 only.
        assert_relative_eq!(t.r_hl(3), 2f64.ln());
        // 6 = 5 + 1^2 = 2 + 2^2.
        assert_relative_eq!(t.r_hl(6), 5f64.ln() + 2f64.ln(), max_relative = 1e-15);
        // 2 has no representation with positive square.
        assert_eq!(t.r_hl(2), 0.0);
        // 5 = 4 + 1^2 (prime power 2^2) and 5 = 1 + 2^2 (Lambda(1) = 0).
        assert_relative_eq!(t.r_hl(5), 2f64.ln());
    }

    #[test]
    fn sieve_agrees_with_trial_division() {
        let t = VonMangoldtTable::up_to(600);
        for n in 2..=600u64 {
            let fast = t.r_hl(n);
            let slow = r_hl_bruteforce(n);
            assert!(
                (fast - slow).abs() <= 1e-12,
                "r({n}): sieve {fast} vs brute {slow}"
            );
        }
    }

    #[test]
    fn weighted_count_frozen_values() {
        // N = 4, k = 2: the only contribution is n = 3 at weight
        // (1 - 3/4)^2 / 2, so S = log(2) / 32 exactly.
        let t = VonMangoldtTable::up_to(10_000);
        let s4 = t.cesaro_lhs(4, 2.0).unwrap();
        assert_relative_eq!(s4, 2f64.ln() / 32.0, max_relative = 1e-15);
        // Independent multiprecision references:
        let s100 = t.cesaro_lhs(100, 2.0).unwrap();
        assert_relative_eq!(s100, 63.55401508005907595, max_relative = 1e-12);
        let s1e4 = t.cesaro_lhs(10_000, 2.0).unwrap();
        assert_relative_eq!(s1e4, 75306.823015380183297, max_relative = 1e-11);
    }

    #[test]
    fn query_validation_contract() {
        assert!(matches!(
            validate_query_params(1, 2.0),
            Err(ConfigViolation::NTooSmall(1))
        ));
        assert!(matches!(
            validate_query_params(100_000_001, 2.0),
            Err(ConfigViolation::NTooLarge(_))
        ));
        assert!(matches!(
            validate_query_params(100, 0.5),
            Err(ConfigViolation::KTooSmall(_))
        ));
        assert!(matches!(
            validate_query_params(100, f64::NAN),
            Err(ConfigViolation::KNotFinite(_))
        ));
        assert!(validate_query_params(2, 0.6).is_ok());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn r_matches_bruteforce_everywhere(n in 2u64..3000) {
            let t = VonMangoldtTable::up_to(3000);
            prop_assert!((t.r_hl(n) - r_hl_bruteforce(n)).abs() <= 1e-12);
        }

        #[test]
        fn weighted_count_is_monotone_in_n(n in 10u64..400) {
            // Raising N raises every weight (1 - n/N)^k and only adds
            // nonnegative terms, so S(N, k) is nondecreasing in N.
            let t = VonMangoldtTable::up_to(1000);
            let a = t.cesaro_lhs(n, 2.0).unwrap();
            let b = t.cesaro_lhs(n + 5, 2.0).unwrap();
            prop_assert!(b >= a - 1e-12);
        }
    }
}
