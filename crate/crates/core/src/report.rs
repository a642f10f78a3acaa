//! Stable, serializable record of one verification run.
//!
//! The JSON body is a pure function of the inputs: field order is fixed by
//! struct declaration, floats print shortest-roundtrip, and nothing
//! wall-clock-dependent is allowed in. Two runs over the same inputs must
//! produce byte-identical bodies; timings belong to the caller's side
//! channel, never here.

use crate::eval::{CesaroQuery, Diagnostics, TailEstimates, TermBreakdown};
use crate::zeros::ZeroList;
use serde::Serialize;

/// Bumped on any change to the body layout.
pub const SCHEMA_VERSION: u32 = 1;

/// The six right-hand-side terms, largest scale first.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Terms {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub t4: f64,
    pub t5: f64,
    pub t6: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub n: u64,
    pub k: f64,
    pub normalization: String,
    pub lhs: f64,
    pub rhs_total: f64,
    /// `lhs - rhs_total`: everything the truncated formula did not explain.
    pub residual: f64,
    /// `|residual| / |t1|`: the headline agreement figure.
    pub residual_over_main: f64,
    pub terms: Terms,
    pub zeros_used: usize,
    pub zeros_used_double: usize,
    pub l_max: u64,
    pub tails: TailEstimates,
    pub diagnostics: Diagnostics,
    pub zeros_sha256: String,
    pub zeros_source: String,
    /// Data-quality warnings from the zeros file (the evaluation's own
    /// warnings live under `diagnostics`).
    pub zeros_warnings: Vec<String>,
}

impl VerificationReport {
    pub const CSV_HEADER: &'static str = "N,k,lhs,t1,t2,t3,t4,t5,t6,residual,zeros_used,l_max";

    pub fn assemble(query: &CesaroQuery, lhs: f64, b: TermBreakdown, zeros: &ZeroList) -> Self {
        let residual = lhs - b.rhs_total;
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            n: query.n,
            k: query.k,
            normalization: query.normalization.to_string(),
            lhs,
            rhs_total: b.rhs_total,
            residual,
            residual_over_main: residual.abs() / b.t1.abs(),
            terms: Terms {
                t1: b.t1,
                t2: b.t2,
                t3: b.t3,
                t4: b.t4,
                t5: b.t5,
                t6: b.t6,
            },
            zeros_used: b.zeros_used,
            zeros_used_double: b.zeros_used_double,
            l_max: b.l_max,
            tails: b.tails,
            diagnostics: b.diagnostics,
            zeros_sha256: zeros.sha256_hex().to_string(),
            zeros_source: zeros.source().to_string(),
            zeros_warnings: zeros.warnings().to_vec(),
        }
    }

    /// The canonical JSON body, newline-terminated. Deterministic for a
    /// given report: struct-ordered fields, shortest-roundtrip floats.
    pub fn body_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization is infallible");
        s.push('\n');
        s
    }

    /// One CSV row matching [`Self::CSV_HEADER`].
    pub fn csv_line(&self) -> String {
        let t = &self.terms;
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.k,
            self.lhs,
            t.t1,
            t.t2,
            t.t3,
            t.t4,
            t.t5,
            t.t6,
            self.residual,
            self.zeros_used,
            self.l_max
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{evaluate_rhs, CesaroQuery, TruncationConfig};
    use crate::zeros::{ZeroList, FIRST_ZERO};

    fn sample_report() -> VerificationReport {
        let zeros = ZeroList::from_gammas(
            vec![FIRST_ZERO, 21.022039638771555, 25.010857580145689],
            "test",
        );
        let cfg = TruncationConfig {
            zeros_primary: 3,
            zeros_double: Some(1),
            ell_max: Some(2),
            ..TruncationConfig::default()
        };
        let q = CesaroQuery::new(100, 2.0);
        let b = evaluate_rhs(&q, &zeros, &cfg).unwrap();
        VerificationReport::assemble(&q, 63.55401508005907595, b, &zeros)
    }

    #[test]
    fn body_is_deterministic() {
        let a = sample_report().body_json();
        let b = sample_report().body_json();
        assert_eq!(a, b);
        assert!(a.ends_with('\n'));
    }

    #[test]
    fn body_carries_the_contract_fields() {
        let r = sample_report();
        let v: serde_json::Value = serde_json::from_str(&r.body_json()).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["n"], 100);
        assert_eq!(v["normalization"], "divided");
        assert!(v["terms"]["t1"].is_f64());
        assert!(v["tails"]["total"].is_f64());
        assert!(v["zeros_sha256"].is_string());
        // No timing field anywhere in the body.
        assert!(r.body_json().to_lowercase().find("timing").is_none());
    }

    #[test]
    fn csv_row_matches_header_arity() {
        let r = sample_report();
        let header_cols = VerificationReport::CSV_HEADER.split(',').count();
        let row = r.csv_line();
        assert_eq!(row.split(',').count(), header_cols);
        assert!(row.starts_with("100,2,"));
        // Residual column sits where the header says it does.
        let cols: Vec<&str> = row.split(',').collect();
        let residual: f64 = cols[9].parse().unwrap();
        assert!((residual - r.residual).abs() <= f64::EPSILON * r.residual.abs());
    }

    #[test]
    fn residual_is_lhs_minus_rhs() {
        let r = sample_report();
        assert_eq!(r.residual, r.lhs - r.rhs_total);
        assert_eq!(r.residual_over_main, r.residual.abs() / r.terms.t1.abs());
    }
}
