//! Run configuration: a flat key = value text format plus programmatic
//! overrides (command-line flags win over file values). Every field is
//! validated before any computation starts and rejections carry a
//! line or field diagnostic.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;

use crate::deformation::YangBaxterOperator;
use crate::numerics::{cplx, CMat};
use crate::{Error, Result};

/// How the deformation is specified.
#[derive(Debug, Clone, PartialEq)]
pub enum DeformationSpec {
    QFlip { q: f64 },
    CouplingMatrix { path: String },
    Custom { path: String },
}

/// Output format of the report file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Named tolerances with validated keys; unknown names are rejected so
/// typos fail loudly.
#[derive(Debug, Clone)]
pub struct Tolerances {
    values: BTreeMap<String, f64>,
}

impl Default for Tolerances {
    fn default() -> Self {
        let mut values = BTreeMap::new();
        for (k, v) in [
            ("braid", 1e-10),
            ("traciality", 1e-12),
            ("spectrum", 1e-10),
            ("factorization", 1e-9),
            ("norm_bound", 1e-8),
            ("commutation", 1e-10),
            ("wick_vacuum", 1e-10),
            ("wick_lower", 1e-10),
            ("projection", 1e-10),
            ("khintchine", 1e-9),
            ("trace", 1e-9),
            ("modular", 1e-10),
            ("witness", 1e-8),
        ] {
            values.insert(k.to_string(), v);
        }
        Tolerances { values }
    }
}

impl Tolerances {
    pub fn get(&self, name: &str) -> f64 {
        *self
            .values
            .get(name)
            .unwrap_or_else(|| panic!("unknown tolerance {name}"))
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::Config(format!(
                "tolerance {name} must be a nonnegative finite number, got {value}"
            )));
        }
        match self.values.get_mut(name) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(Error::Config(format!(
                "unknown tolerance name {name}; known: {}",
                self.values.keys().cloned().collect::<Vec<_>>().join(", ")
            ))),
        }
    }
}

/// Everything a run needs, with validated invariants.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub deformation: DeformationSpec,
    pub d: usize,
    pub levels: usize,
    pub n_range: (usize, usize),
    pub p: usize,
    pub seed: u64,
    pub instances: usize,
    pub tolerances: Tolerances,
    pub lambdas: Vec<f64>,
    pub fixed_dim: usize,
    pub t_cut: f64,
    pub suites: Vec<String>,
    pub out: Option<String>,
    pub format: ReportFormat,
    pub budget: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            deformation: DeformationSpec::QFlip { q: 0.5 },
            d: 2,
            levels: 4,
            n_range: (1, 3),
            p: 2,
            seed: 1,
            instances: 10,
            tolerances: Tolerances::default(),
            lambdas: vec![2.0],
            fixed_dim: 0,
            t_cut: 1.3,
            suites: Vec::new(),
            out: None,
            format: ReportFormat::Json,
            budget: crate::witness::DEFAULT_MATRIX_BUDGET,
        }
    }
}

pub const KNOWN_SUITES: &[&str] = &[
    "deformation",
    "fock",
    "wick",
    "khintchine-free",
    "khintchine-deformed",
    "araki",
    "witness",
];

impl RunConfig {
    /// Reads a flat key = value file; `#` starts a comment. Unknown keys
    /// and malformed values are rejected with the line number.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())?;
        let mut config = RunConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key = value, got {raw:?}", idx + 1))
            })?;
            config
                .apply(key.trim(), value.trim())
                .map_err(|e| Error::Config(format!("line {}: {e}", idx + 1)))?;
        }
        Ok(config)
    }

    /// Applies one key/value pair; the CLI funnels flag overrides here.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        let parse_usize = |v: &str| -> Result<usize> {
            v.parse()
                .map_err(|_| Error::Config(format!("field {key}: expected integer, got {v:?}")))
        };
        let parse_f64 = |v: &str| -> Result<f64> {
            v.parse()
                .map_err(|_| Error::Config(format!("field {key}: expected number, got {v:?}")))
        };
        match key {
            "kind" => {
                self.deformation = match value {
                    "q_flip" => DeformationSpec::QFlip {
                        q: match &self.deformation {
                            DeformationSpec::QFlip { q } => *q,
                            _ => 0.5,
                        },
                    },
                    "q_matrix" => DeformationSpec::CouplingMatrix {
                        path: String::new(),
                    },
                    "custom" => DeformationSpec::Custom {
                        path: String::new(),
                    },
                    other => {
                        return Err(Error::Config(format!(
                            "field kind: expected q_flip, q_matrix or custom, got {other:?}"
                        )))
                    }
                };
            }
            "q" => {
                let q = parse_f64(value)?;
                self.deformation = DeformationSpec::QFlip { q };
            }
            "qmatrix" => {
                self.deformation = DeformationSpec::CouplingMatrix {
                    path: value.to_string(),
                };
            }
            "tmatrix" => {
                self.deformation = DeformationSpec::Custom {
                    path: value.to_string(),
                };
            }
            "d" => self.d = parse_usize(value)?,
            "N" | "levels" => self.levels = parse_usize(value)?,
            "n" => self.n_range = parse_range(value)?,
            "p" => self.p = parse_usize(value)?,
            "seed" => {
                self.seed = value.parse().map_err(|_| {
                    Error::Config(format!("field seed: expected unsigned integer, got {value:?}"))
                })?
            }
            "instances" => self.instances = parse_usize(value)?,
            "lambdas" => {
                self.lambdas = value
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| {
                        s.trim().parse::<f64>().map_err(|_| {
                            Error::Config(format!("field lambdas: bad entry {s:?}"))
                        })
                    })
                    .collect::<Result<_>>()?;
            }
            "fixed_dim" => self.fixed_dim = parse_usize(value)?,
            "t_cut" => self.t_cut = parse_f64(value)?,
            "suite" | "suites" => {
                self.suites = value
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect();
            }
            "out" => self.out = Some(value.to_string()),
            "format" => {
                self.format = match value {
                    "json" => ReportFormat::Json,
                    "csv" => ReportFormat::Csv,
                    other => {
                        return Err(Error::Config(format!(
                            "field format: expected json or csv, got {other:?}"
                        )))
                    }
                };
            }
            "budget" => self.budget = parse_usize(value)?,
            _ if key.starts_with("tol.") => {
                let name = &key[4..];
                let v = parse_f64(value)?;
                self.tolerances.set(name, v)?;
            }
            other => {
                return Err(Error::Config(format!("unknown field {other:?}")));
            }
        }
        Ok(())
    }

    /// Full validation pass; called before any suite runs.
    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::Config("field d: must be positive".into()));
        }
        match &self.deformation {
            DeformationSpec::QFlip { q } => {
                if !(q.abs() < 1.0) {
                    return Err(Error::Config(format!(
                        "field q: requires |q| < 1, got {q}"
                    )));
                }
            }
            DeformationSpec::CouplingMatrix { path } | DeformationSpec::Custom { path } => {
                if path.is_empty() {
                    return Err(Error::Config(
                        "matrix deformations need a file path (qmatrix/tmatrix)".into(),
                    ));
                }
            }
        }
        if self.n_range.0 > self.n_range.1 {
            return Err(Error::Config(format!(
                "field n: empty range {}..{}",
                self.n_range.0, self.n_range.1
            )));
        }
        if self.n_range.1 > self.levels {
            return Err(Error::Config(format!(
                "field n: top of range {} exceeds cutoff N={}",
                self.n_range.1, self.levels
            )));
        }
        if self.p == 0 {
            return Err(Error::Config("field p: must be positive".into()));
        }
        for &l in &self.lambdas {
            if !(l > 1.0) {
                return Err(Error::Config(format!(
                    "field lambdas: entries must exceed 1, got {l}"
                )));
            }
        }
        if !(self.t_cut > 1.0) {
            return Err(Error::Config(format!(
                "field t_cut: must exceed 1, got {}",
                self.t_cut
            )));
        }
        for suite in &self.suites {
            if !KNOWN_SUITES.contains(&suite.as_str()) {
                return Err(Error::Config(format!(
                    "unknown suite {suite:?}; known: {}",
                    KNOWN_SUITES.join(", ")
                )));
            }
        }
        Ok(())
    }

    /// Builds the validated deformation operator this config describes.
    pub fn deformation_operator(&self) -> Result<YangBaxterOperator> {
        match &self.deformation {
            DeformationSpec::QFlip { q } => YangBaxterOperator::q_flip(self.d, *q),
            DeformationSpec::CouplingMatrix { path } => {
                let m = read_matrix_file(path)?;
                if m.nrows() != self.d || m.ncols() != self.d {
                    return Err(Error::Config(format!(
                        "coupling matrix is {}x{}, expected {}x{}",
                        m.nrows(),
                        m.ncols(),
                        self.d,
                        self.d
                    )));
                }
                YangBaxterOperator::from_coupling_matrix(&m)
            }
            DeformationSpec::Custom { path } => {
                let m = read_matrix_file(path)?;
                let dd = self.d * self.d;
                if m.nrows() != dd || m.ncols() != dd {
                    return Err(Error::Config(format!(
                        "custom deformation matrix is {}x{}, expected {dd}x{dd}",
                        m.nrows(),
                        m.ncols()
                    )));
                }
                YangBaxterOperator::from_matrix(m)
            }
        }
    }
}

fn parse_range(value: &str) -> Result<(usize, usize)> {
    if let Some((a, b)) = value.split_once("..") {
        let lo = a.trim().parse().map_err(|_| {
            Error::Config(format!("field n: bad lower bound in {value:?}"))
        })?;
        let hi = b.trim().parse().map_err(|_| {
            Error::Config(format!("field n: bad upper bound in {value:?}"))
        })?;
        Ok((lo, hi))
    } else {
        let single = value.trim().parse().map_err(|_| {
            Error::Config(format!("field n: expected integer or a..b, got {value:?}"))
        })?;
        Ok((single, single))
    }
}

/// Plain-text complex matrix: first line `rows cols`, then row-major
/// `re im` pairs separated by whitespace.
pub fn read_matrix_file(path: impl AsRef<Path>) -> Result<CMat> {
    let text = std::fs::read_to_string(path.as_ref())?;
    parse_matrix(&text)
}

pub fn parse_matrix(text: &str) -> Result<CMat> {
    let mut tokens = text.split_whitespace();
    let rows: usize = tokens
        .next()
        .ok_or_else(|| Error::Config("matrix file: missing row count".into()))?
        .parse()
        .map_err(|_| Error::Config("matrix file: bad row count".into()))?;
    let cols: usize = tokens
        .next()
        .ok_or_else(|| Error::Config("matrix file: missing column count".into()))?
        .parse()
        .map_err(|_| Error::Config("matrix file: bad column count".into()))?;
    let mut entries = Vec::with_capacity(rows * cols);
    for idx in 0..rows * cols {
        let re: f64 = tokens
            .next()
            .ok_or_else(|| Error::Config(format!("matrix file: missing entry {idx}")))?
            .parse()
            .map_err(|_| Error::Config(format!("matrix file: bad real part at entry {idx}")))?;
        let im: f64 = tokens
            .next()
            .ok_or_else(|| Error::Config(format!("matrix file: missing imaginary part {idx}")))?
            .parse()
            .map_err(|_| {
                Error::Config(format!("matrix file: bad imaginary part at entry {idx}"))
            })?;
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::Config(format!(
                "matrix file: non-finite entry {idx}"
            )));
        }
        entries.push(cplx(re, im));
    }
    if tokens.next().is_some() {
        return Err(Error::Config("matrix file: trailing tokens".into()));
    }
    Ok(CMat::from_row_slice(rows, cols, &entries))
}

/// Serializes a matrix in the same format.
pub fn matrix_to_text(m: &CMat) -> String {
    let mut out = format!("{} {}\n", m.nrows(), m.ncols());
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|j| {
                let z: Complex64 = m[(i, j)];
                format!("{} {}", z.re, z.im)
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn apply_and_validate_fields() {
        let mut c = RunConfig::default();
        c.apply("d", "3").unwrap();
        c.apply("q", "-0.5").unwrap();
        c.apply("N", "5").unwrap();
        c.apply("n", "1..4").unwrap();
        c.apply("tol.braid", "1e-11").unwrap();
        c.apply("suite", "fock,wick").unwrap();
        c.validate().unwrap();
        assert_eq!(c.n_range, (1, 4));
        assert_eq!(c.tolerances.get("braid"), 1e-11);
        assert!(matches!(c.deformation, DeformationSpec::QFlip { q } if q == -0.5));
    }

    #[test]
    fn rejections_carry_diagnostics() {
        let mut c = RunConfig::default();
        let err = c.apply("q", "nope").unwrap_err().to_string();
        assert!(err.contains("field q"), "{err}");
        let err = c.apply("tol.unknown", "1e-9").unwrap_err().to_string();
        assert!(err.contains("unknown tolerance"), "{err}");
        let err = c.apply("mystery", "1").unwrap_err().to_string();
        assert!(err.contains("unknown field"), "{err}");
        c.apply("q", "1.5").unwrap();
        assert!(c.validate().is_err());
        let mut c = RunConfig::default();
        c.apply("suite", "fock,unknown-suite").unwrap();
        let err = c.validate().unwrap_err().to_string();
        assert!(err.contains("unknown suite"), "{err}");
        let mut c = RunConfig::default();
        c.apply("n", "3..9").unwrap();
        assert!(c.validate().is_err());
    }

    #[test]
    fn config_file_roundtrip() {
        let dir = std::env::temp_dir().join("qfock-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.conf");
        std::fs::write(
            &path,
            "# comment\nq = 0.5\nd = 2\nN = 4\nn = 1..2\nseed = 9\ntol.witness = 2e-8\n",
        )
        .unwrap();
        let c = RunConfig::from_file(&path).unwrap();
        assert_eq!(c.seed, 9);
        assert_eq!(c.tolerances.get("witness"), 2e-8);
        let bad = dir.join("bad.conf");
        std::fs::write(&bad, "q == 0.3\n").unwrap();
        let err = RunConfig::from_file(&bad).unwrap_err().to_string();
        assert!(err.contains("line 1"), "{err}");
    }

    #[test]
    fn matrix_text_roundtrip() {
        let m = CMat::from_row_slice(
            2,
            2,
            &[cplx(0.3, 0.0), cplx(0.0, 0.5), cplx(0.0, -0.5), cplx(0.2, 0.0)],
        );
        let text = matrix_to_text(&m);
        assert!(text.starts_with("2 2\n"));
        let back = parse_matrix(&text).unwrap();
        assert!(crate::numerics::frobenius(&(m - back)) < 1e-15);
        assert!(parse_matrix("2 2 1 0 0").is_err());
        assert!(parse_matrix("2 2 1 0 0 0 0 0 1 0 7").is_err());
        assert!(parse_matrix("1 1 inf 0").is_err());
    }
}
