//! Compensated summation and deterministic parallel reduction.
//!
//! Every long sum in this crate runs through Kahan-Babuska-Neumaier (KBN)
//! accumulators: one extra float of state buys back the digits that naive
//! left-to-right addition loses when terms vary over many orders of
//! magnitude or cancel. The parallel helper fixes chunk boundaries by index,
//! sums each chunk sequentially, then folds the per-chunk partials in chunk
//! order, so the result is bitwise identical for any worker count.

use crate::C64;
use rayon::prelude::*;

/// Kahan-Babuska-Neumaier accumulator for `f64`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kbn {
    sum: f64,
    comp: f64,
}

impl Kbn {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        // Neumaier's branch: compensate with whichever operand lost low bits.
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// KBN accumulator for complex values (independent real/imag compensation).
#[derive(Debug, Clone, Copy, Default)]
pub struct KbnC64 {
    re: Kbn,
    im: Kbn,
}

impl KbnC64 {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: C64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn total(&self) -> C64 {
        C64::new(self.re.total(), self.im.total())
    }
}

/// Compensated sum of an iterator.
pub fn kbn_sum<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    let mut acc = Kbn::new();
    for x in xs {
        acc.add(x);
    }
    acc.total()
}

/// Compensated sum of complex terms.
pub fn kbn_sum_c64<I: IntoIterator<Item = C64>>(zs: I) -> C64 {
    let mut acc = KbnC64::new();
    for z in zs {
        acc.add(z);
    }
    acc.total()
}

/// Default chunk length for [`par_sum_deterministic`]. Large enough that
/// rayon overhead is invisible, small enough to load-balance a few cores.
pub const PAR_CHUNK: usize = 1024;

/// Deterministic parallel sum of `f(i)` for `i in 0..n`.
///
/// Chunks are `[0, chunk)`, `[chunk, 2*chunk)`, ... regardless of thread
/// count; each chunk is KBN-summed sequentially and the partials are folded
/// in chunk order. Changing `RAYON_NUM_THREADS` cannot change the result,
/// only the wall time.
pub fn par_sum_deterministic<F>(n: usize, chunk: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    assert!(chunk > 0, "chunk size must be positive");
    let partials: Vec<f64> = (0..n.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let lo = c * chunk;
            let hi = usize::min(lo + chunk, n);
            kbn_sum((lo..hi).map(&f))
        })
        .collect();
    kbn_sum(partials)
}

/// Complex variant of [`par_sum_deterministic`].
pub fn par_sum_deterministic_c64<F>(n: usize, chunk: usize, f: F) -> C64
where
    F: Fn(usize) -> C64 + Sync,
{
    assert!(chunk > 0, "chunk size must be positive");
    let partials: Vec<C64> = (0..n.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let lo = c * chunk;
            let hi = usize::min(lo + chunk, n);
            kbn_sum_c64((lo..hi).map(&f))
        })
        .collect();
    kbn_sum_c64(partials)
}

/// Plain ordered two-pass sum (no compensation): first pass accumulates,
/// second pass re-adds the residuals. Used only as an *independent* check
/// against the KBN path in diagnostics, so it must not share code with it.
pub fn ordered_two_pass_sum(xs: &[f64]) -> f64 {
    let s1: f64 = xs.iter().sum();
    let resid: f64 = {
        let mut acc = 0.0f64;
        let mut run = 0.0f64;
        for &x in xs {
            let t = run + x;
            let err = if run.abs() >= x.abs() {
                (run - t) + x
            } else {
                (x - t) + run
            };
            acc += err;
            run = t;
        }
        let _ = run;
        acc
    };
    s1 + resid
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn kbn_recovers_catastrophic_cancellation() {
        // Naive left-to-right gives 0.0 here; the compensation keeps the 2.0.
        let xs = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(kbn_sum(xs), 2.0);
        let naive: f64 = xs.iter().sum();
        assert_eq!(naive, 0.0);
    }

    #[test]
    fn kbn_matches_closed_form_harmonic_pieces() {
        // sum_{n=1..10^6} 1/n^2 = pi^2/6 - tail, tail in (1e-6 - 5e-13, 1e-6).
        let n = 1_000_000u64;
        let s = kbn_sum((1..=n).map(|i| 1.0 / (i as f64 * i as f64)));
        let limit = std::f64::consts::PI * std::f64::consts::PI / 6.0;
        let tail = 1.0 / n as f64; // integral bound, accurate to O(n^-2)
        assert!((limit - s - tail).abs() < 1e-9, "s = {s}");
    }

    #[test]
    fn parallel_sum_is_bitwise_deterministic() {
        // Pseudo-random magnitudes over ~30 orders; parallel result must
        // equal the sequential chunked fold exactly, not approximately.
        let f = |i: usize| {
            let x = ((i as u64).wrapping_mul(0x9e3779b97f4a7c15) >> 11) as f64;
            let scale = ((i % 61) as i32) - 30;
            (x + 1.0) * 2f64.powi(scale) * if i % 2 == 0 { 1.0 } else { -1.0 }
        };
        let n = 100_000;
        let par = par_sum_deterministic(n, PAR_CHUNK, f);
        let seq = {
            let partials: Vec<f64> = (0..n.div_ceil(PAR_CHUNK))
                .map(|c| {
                    let lo = c * PAR_CHUNK;
                    let hi = usize::min(lo + PAR_CHUNK, n);
                    kbn_sum((lo..hi).map(f))
                })
                .collect();
            kbn_sum(partials)
        };
        assert_eq!(par.to_bits(), seq.to_bits());
    }

    #[test]
    fn complex_parallel_sum_matches_componentwise() {
        // Libm-free terms on purpose: a sin/cos pair can compile to a fused
        // sincos in one calling context and separate calls in another, and
        // those legitimately differ in the last ulp. Pure arithmetic gives
        // identical input bits, so this pins the accumulator paths alone.
        let f = |i: usize| {
            let x = ((i * i + 3 * i) % 7919) as f64 * 1e-3 - 3.9;
            let y = ((i * 37 + 11) % 4093) as f64 * 1e-7;
            C64::new(x * x - 2.0, y - x)
        };
        let z = par_sum_deterministic_c64(10_000, 128, f);
        let re = par_sum_deterministic(10_000, 128, |i| f(i).re);
        let im = par_sum_deterministic(10_000, 128, |i| f(i).im);
        assert_eq!(z.re.to_bits(), re.to_bits());
        assert_eq!(z.im.to_bits(), im.to_bits());
    }

    proptest! {
        #[test]
        fn kbn_exact_on_integers(xs in proptest::collection::vec(-1_000_000i64..1_000_000, 0..200)) {
            // Integer sums below 2^53 are exactly representable, so KBN must
            // reproduce them with zero error in any order.
            let exact: i64 = xs.iter().sum();
            let s = kbn_sum(xs.iter().map(|&v| v as f64));
            prop_assert_eq!(s, exact as f64);
        }

        #[test]
        fn two_pass_agrees_with_kbn_on_tame_data(xs in proptest::collection::vec(-1e6f64..1e6, 1..100)) {
            let a = kbn_sum(xs.iter().copied());
            let b = ordered_two_pass_sum(&xs);
            prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()));
        }
    }
}
