//! Loading and vetting the table of nontrivial zeta-zero ordinates.
//!
//! The file format is deliberately dull: ASCII text, `#` comment lines, one
//! positive ordinate per line in increasing order. Everything else about
//! the loader is paranoia: the explicit formula is only as good as these
//! numbers, so the loader hashes the bytes (the digest rides along into
//! reports), checks monotonicity and positivity hard, and flags - without
//! refusing - soft oddities like low printed precision or a first zero that
//! does not look like the first zero.

use crate::error::DataError;
use sha2::{Digest, Sha256};
use std::path::Path;

/// Expected ordinate of the lowest zero; used as a sanity anchor.
pub const FIRST_ZERO: f64 = 14.134725141734694;

/// Parsed, vetted zero ordinates plus provenance.
#[derive(Debug, Clone)]
pub struct ZeroList {
    gammas: Vec<f64>,
    sha256_hex: String,
    source: String,
    warnings: Vec<String>,
}

impl ZeroList {
    /// Parse from text. `source` labels error messages (a path, usually).
    pub fn parse(text: &str, source: &str) -> Result<Self, DataError> {
        if !text.is_ascii() {
            return Err(DataError::ZerosFile {
                path: source.into(),
                problem: "file contains non-ASCII bytes".into(),
            });
        }
        let mut gammas: Vec<f64> = Vec::new();
        let mut warnings: Vec<String> = Vec::new();
        let mut low_precision_lines = 0usize;
        let mut first_low_precision_line = 0usize;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let value: f64 = line.parse().map_err(|_| DataError::ZerosLine {
                path: source.into(),
                line: line_no,
                problem: format!("not a number: {line:?}"),
            })?;
            if !value.is_finite() || value <= 0.0 {
                return Err(DataError::ZerosLine {
                    path: source.into(),
                    line: line_no,
                    problem: format!("ordinates must be finite and positive, got {value}"),
                });
            }
            if let Some(&prev) = gammas.last() {
                if value <= prev {
                    return Err(DataError::ZerosLine {
                        path: source.into(),
                        line: line_no,
                        problem: format!("not strictly increasing: {value} after {prev}"),
                    });
                }
            }
            let decimals = line.split('.').nth(1).map_or(0, |frac| {
                frac.chars().take_while(|c| c.is_ascii_digit()).count()
            });
            if decimals < 9 {
                low_precision_lines += 1;
                if low_precision_lines == 1 {
                    first_low_precision_line = line_no;
                }
            }
            gammas.push(value);
        }
        if gammas.is_empty() {
            return Err(DataError::ZerosFile {
                path: source.into(),
                problem: "no zero ordinates found".into(),
            });
        }
        if low_precision_lines > 0 {
            warnings.push(format!(
                "{low_precision_lines} line(s) carry fewer than 9 decimals (first at line {first_low_precision_line}); zero-sum accuracy is limited by input precision"
            ));
        }
        if (gammas[0] - FIRST_ZERO).abs() > 1e-3 {
            warnings.push(format!(
                "first ordinate {} is not the expected lowest zero {FIRST_ZERO}; the file may be truncated from the wrong end or mislabeled",
                gammas[0]
            ));
        }
        let sha256_hex = hex_digest(text.as_bytes());
        Ok(Self {
            gammas,
            sha256_hex,
            source: source.into(),
            warnings,
        })
    }

    /// Read and parse a file, hashing the raw bytes.
    pub fn load(path: &Path) -> Result<Self, DataError> {
        let bytes = std::fs::read(path).map_err(|e| DataError::ZerosFile {
            path: path.display().to_string(),
            problem: format!("cannot read: {e}"),
        })?;
        let text = String::from_utf8(bytes).map_err(|_| DataError::ZerosFile {
            path: path.display().to_string(),
            problem: "file is not valid ASCII/UTF-8 text".into(),
        })?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    /// First `z` ordinates, or a precise refusal.
    pub fn take(&self, z: usize) -> Result<&[f64], DataError> {
        if z > self.gammas.len() {
            return Err(DataError::NotEnoughZeros {
                requested: z,
                available: self.gammas.len(),
            });
        }
        Ok(&self.gammas[..z])
    }

    pub fn sha256_hex(&self) -> &str {
        &self.sha256_hex
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Build directly from ordinates (tests, tamper experiments). The
    /// digest marks the list as synthetic.
    pub fn from_gammas(gammas: Vec<f64>, label: &str) -> Self {
        Self {
            gammas,
            sha256_hex: "synthetic".into(),
            source: label.into(),
            warnings: Vec::new(),
        }
    }
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let out = h.finalize();
    let mut s = String::with_capacity(64);
    for b in out {
        s.push_str(&format!("{b:02x}"));
    }
    s
}
