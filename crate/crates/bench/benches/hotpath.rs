//! Benchmarks for the three costs that dominate a verification run: Bessel
//! evaluations (single and family), the zero sums, and the sieve side.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use hlnum_core::bessel::{bessel_j, bessel_j_quadrature_family};
use hlnum_core::eval::{zero_sum_primary, zero_sum_secondary};
use hlnum_core::{VonMangoldtTable, C64};

/// Synthetic ordinates with the true asymptotic spacing; benchmarks only
/// care about magnitudes, not the actual zeros.
fn synthetic_gammas(count: usize) -> Vec<f64> {
    let mut g = 14.134725;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(g);
        g += 2.0 * std::f64::consts::PI / (g / (2.0 * std::f64::consts::PI)).ln();
    }
    out
}

fn bench_bessel_single(c: &mut Criterion) {
    let mut group = c.benchmark_group("bessel_single");
    let cases = [
        ("series_small_u", C64::new(3.5, 14.134725), 9.0),
        ("asymptotic_large_u", C64::new(3.5, 14.134725), 628.3),
        ("quadrature_mid_band", C64::new(3.0, 100.0), 300.0),
    ];
    for (name, nu, u) in cases {
        group.bench_function(name, |b| {
            b.iter(|| bessel_j(black_box(nu), black_box(u), 1e-5).unwrap())
        });
    }
    group.finish();
}

fn bench_bessel_family(c: &mut Criterion) {
    let mut group = c.benchmark_group("bessel_family");
    group.sample_size(20);
    // The double-sum inner loop at N = 10^3: u1 = 2 pi sqrt(N), one family
    // per zero. Family cost ~ the cost of its fastest member alone.
    let u1 = 2.0 * std::f64::consts::PI * 1000f64.sqrt();
    for gamma in [14.134725, 99.0, 236.5] {
        let nu = C64::new(3.0, gamma);
        group.bench_with_input(
            BenchmarkId::new("count10", format!("gamma{gamma}")),
            &nu,
            |b, &nu| b.iter(|| bessel_j_quadrature_family(black_box(nu), u1, 10).unwrap()),
        );
    }
    group.finish();
}

fn bench_zero_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("zero_sums");
    group.sample_size(30);
    let gammas = synthetic_gammas(10_000);
    group.bench_function("primary_z10000", |b| {
        b.iter(|| zero_sum_primary(black_box(1000), black_box(2.0), &gammas))
    });
    group.bench_function("secondary_z10000", |b| {
        b.iter(|| zero_sum_secondary(black_box(1000), black_box(2.0), &gammas))
    });
    group.finish();
}

fn bench_sieve(c: &mut Criterion) {
    let mut group = c.benchmark_group("sieve");
    group.sample_size(20);
    group.bench_function("build_1e5", |b| {
        b.iter(|| VonMangoldtTable::up_to(black_box(100_000)))
    });
    let table = VonMangoldtTable::up_to(100_000);
    group.bench_function("cesaro_lhs_1e5", |b| {
        b.iter(|| {
            table
                .cesaro_lhs(black_box(100_000), black_box(2.0))
                .unwrap()
        })
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_bessel_single,
    bench_bessel_family,
    bench_zero_sums,
    bench_sieve
);
criterion_main!(benches);
