//! `hlnum`: verify the explicit formula for prime-plus-square counts.
//!
//! Output discipline: everything machine-readable (the JSON report, CSV
//! rows) goes to stdout and is byte-deterministic for a given input; all
//! timings, progress and warnings go to stderr. Exit codes: 0 success,
//! 1 verification or evaluation failure, 2 invalid configuration, 3 bad or
//! missing input data.

use clap::{Args, Parser, Subcommand};
use hlnum_core::eval::TruncationConfig;
use hlnum_core::oracle;
use hlnum_core::report::VerificationReport;
use hlnum_core::zeros::ZeroList;
use hlnum_core::{CesaroQuery, HlError, Normalization, VonMangoldtTable};
use std::path::PathBuf;
use std::time::Instant;

mod svg;

#[derive(Parser)]
#[command(
    name = "hlnum",
    about = "Numerical verification of the Cesaro-weighted explicit formula for \
             Hardy-Littlewood numbers (prime + square)",
    long_about = None,
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate both sides at one (N, k) and report the residual.
    Verify(VerifyArgs),
    /// Verify a list of N at fixed k; CSV to stdout, optional SVG plot.
    Sweep(SweepArgs),
    /// Run the independent cross-checks (theta modularity, Laplace
    /// inversion, Linnik expansion with a tamper probe).
    OracleSuite(OracleArgs),
}

#[derive(Args)]
struct ZerosArg {
    /// Zeros file: one ordinate per line, `#` comments. Defaults to
    /// $HLNUM_ZEROS, then data/zeros_10k.txt.
    #[arg(long, value_name = "PATH")]
    zeros: Option<PathBuf>,
}

impl ZerosArg {
    fn load(&self) -> Result<ZeroList, HlError> {
        let path = self
            .zeros
            .clone()
            .or_else(|| std::env::var_os("HLNUM_ZEROS").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("data/zeros_10k.txt"));
        let t0 = Instant::now();
        let list = ZeroList::load(&path)?;
        eprintln!(
            "# zeros: {} ordinates from {} in {:.1?} (sha256 {})",
            list.len(),
            list.source(),
            t0.elapsed(),
            &list.sha256_hex()[..12.min(list.sha256_hex().len())]
        );
        for w in list.warnings() {
            eprintln!("# zeros warning: {w}");
        }
        Ok(list)
    }
}

#[derive(Args)]
struct TruncArgs {
    /// Zeros in the two plain zero sums.
    #[arg(long, default_value_t = 10_000)]
    zeros_primary: usize,
    /// Zeros in the double sum (default: min(zeros-primary, 250)).
    #[arg(long)]
    zeros_double: Option<usize>,
    /// Hard cap on the square index in the Bessel sums (default: automatic
    /// from the tail floor).
    #[arg(long)]
    ell_max: Option<u64>,
    /// Stop extending the square index once the envelope tail falls below
    /// this fraction of the main term.
    #[arg(long, default_value_t = 1e-12)]
    ell_floor_rel: f64,
    /// Relative tolerance requested from the Bessel dispatcher.
    #[arg(long, default_value_t = 1e-8)]
    bessel_tol: f64,
}

impl TruncArgs {
    fn to_config(&self) -> TruncationConfig {
        TruncationConfig {
            zeros_primary: self.zeros_primary,
            zeros_double: self.zeros_double,
            ell_max: self.ell_max,
            ell_floor_rel: self.ell_floor_rel,
            bessel_tol: self.bessel_tol,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Upper limit N of the weighted count.
    #[arg(long)]
    n: u64,
    /// Cesaro weight exponent k (k > 1/2; k > 1 recommended).
    #[arg(long)]
    k: f64,
    /// Weight normalization: "divided" is (1-n/N)^k/k!, "scaled" multiplies
    /// the report by N^k, i.e. (N-n)^k/k!.
    #[arg(long, default_value = "divided")]
    normalization: Normalization,
    /// Output format for the report.
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
    #[command(flatten)]
    zeros: ZerosArg,
    #[command(flatten)]
    trunc: TruncArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated list of N values.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<u64>,
    /// Cesaro weight exponent k, shared by all N.
    #[arg(long)]
    k: f64,
    /// Write a self-contained SVG plot of |residual| against N here.
    #[arg(long, value_name = "PATH")]
    plot: Option<PathBuf>,
    #[command(flatten)]
    zeros: ZerosArg,
    #[command(flatten)]
    trunc: TruncArgs,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    zeros: ZerosArg,
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify(a) => run_verify(&a),
        Command::Sweep(a) => run_sweep(&a),
        Command::OracleSuite(a) => run_oracle_suite(&a),
    };
    match code {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

fn exit_code(e: &HlError) -> i32 {
    match e {
        HlError::Config(_) => 2,
        HlError::Data(_) => 3,
        HlError::Eval(_) | HlError::Io(_) => 1,
    }
}

fn verify_one(
    query: &CesaroQuery,
    table: &VonMangoldtTable,
    zeros: &ZeroList,
    cfg: &TruncationConfig,
) -> Result<VerificationReport, HlError> {
    let t0 = Instant::now();
    let report = hlnum_core::verify(query, table, zeros, cfg)?;
    eprintln!(
        "# verify N={} k={}: {:.1?} ({} Bessel evaluations, residual {:.6e})",
        query.n,
        query.k,
        t0.elapsed(),
        report.diagnostics.bessel_evals,
        report.residual
    );
    for w in &report.diagnostics.warnings {
        eprintln!("# warning: {w}");
    }
    Ok(report)
}

fn build_table(limit: u64) -> VonMangoldtTable {
    let t0 = Instant::now();
    let table = VonMangoldtTable::up_to(limit);
    eprintln!("# sieve up to {limit}: {:.1?}", t0.elapsed());
    table
}

fn run_verify(a: &VerifyArgs) -> Result<i32, HlError> {
    let query = CesaroQuery {
        n: a.n,
        k: a.k,
        normalization: a.normalization,
    };
    // Validate before paying for the sieve or the zeros parse.
    query.validate()?;
    let cfg = a.trunc.to_config();
    cfg.validate()?;
    let zeros = a.zeros.load()?;
    let table = build_table(a.n.max(2));
    let report = verify_one(&query, &table, &zeros, &cfg)?;
    match a.format.as_str() {
        "csv" => {
            println!("{}", VerificationReport::CSV_HEADER);
            println!("{}", report.csv_line());
        }
        _ => print!("{}", report.body_json()),
    }
    Ok(0)
}

fn run_sweep(a: &SweepArgs) -> Result<i32, HlError> {
    let cfg = a.trunc.to_config();
    cfg.validate()?;
    let mut ns = a.n.clone();
    ns.sort_unstable();
    ns.dedup();
    for &n in &ns {
        CesaroQuery::new(n, a.k).validate()?;
    }
    let zeros = a.zeros.load()?;
    let table = build_table(*ns.last().expect("clap enforces nonempty"));
    let mut reports = Vec::with_capacity(ns.len());
    println!("{}", VerificationReport::CSV_HEADER);
    for &n in &ns {
        let query = CesaroQuery::new(n, a.k);
        let report = verify_one(&query, &table, &zeros, &cfg)?;
        println!("{}", report.csv_line());
        reports.push(report);
    }
    if let Some(path) = &a.plot {
        let svg = svg::residual_plot(&reports);
        std::fs::write(path, svg)?;
        eprintln!("# plot written to {}", path.display());
    }
    Ok(0)
}

fn run_oracle_suite(a: &OracleArgs) -> Result<i32, HlError> {
    let mut all_ok = true;
    let mut check = |name: &str, ok: bool, detail: String| {
        all_ok &= ok;
        println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    };

    // Theta modularity: the functional equation residual must sit at
    // rounding level across scales and off-axis points.
    let t0 = Instant::now();
    let theta_points = [
        hlnum_core::C64::new(1.0, 0.0),
        hlnum_core::C64::new(0.05, 0.0),
        hlnum_core::C64::new(0.02, 0.3),
        hlnum_core::C64::new(0.6, -2.0),
        hlnum_core::C64::new(3.0, 40.0),
    ];
    let worst = theta_points
        .iter()
        .map(|&z| oracle::theta_modularity_dev(z))
        .fold(0.0f64, f64::max);
    check(
        "theta-modularity",
        worst < 1e-9,
        format!("max functional-equation deviation {worst:.3e} (bound 1e-9)"),
    );
    eprintln!("# theta modularity: {:.1?}", t0.elapsed());

    // Laplace inversion: numeric line integral against the exact Riesz
    // weight for three decay rates.
    let t0 = Instant::now();
    let mut worst_rel = 0.0f64;
    for s in [2.0, 3.0, 5.0] {
        let (_, _, rel) = oracle::check_laplace_inversion(s, 3.0, 1.0 / s);
        worst_rel = worst_rel.max(rel);
    }
    check(
        "laplace-inversion",
        worst_rel < 1e-6,
        format!("max relative deviation {worst_rel:.3e} over s in {{2, 3, 5}} (bound 1e-6)"),
    );
    eprintln!("# laplace inversion: {:.1?}", t0.elapsed());

    // Linnik expansion: prime sum vs pole + zero terms on the built-in grid,
    // then the same bound must break when one ordinate is shifted by 0.5.
    let zeros = a.zeros.load()?;
    let gammas = zeros.take(zeros.len().min(1000))?;
    let table = build_table(200_000);
    let t0 = Instant::now();
    let mut worst_ratio = 0.0f64;
    let mut grid_ok = true;
    for (aa, t) in oracle::linnik_grid() {
        let c = oracle::check_linnik_point(aa, t, &table, gammas);
        grid_ok &= c.passes();
        worst_ratio = worst_ratio.max(c.dev / c.bound);
    }
    check(
        "linnik-expansion",
        grid_ok,
        format!("worst deviation/bound {worst_ratio:.3} over the 24-point grid"),
    );
    eprintln!("# linnik grid: {:.1?}", t0.elapsed());

    let t0 = Instant::now();
    let mut tampered: Vec<f64> = gammas.to_vec();
    tampered[0] += 0.5;
    let probe = oracle::check_linnik_point(0.002, 0.02, &table, &tampered);
    check(
        "linnik-tamper-probe",
        !probe.passes(),
        format!(
            "first ordinate shifted by 0.5 drives deviation to {:.3}x the bound (must exceed 1)",
            probe.dev / probe.bound
        ),
    );
    eprintln!("# linnik tamper probe: {:.1?}", t0.elapsed());

    Ok(if all_ok { 0 } else { 1 })
}
