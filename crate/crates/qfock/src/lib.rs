//! Desk-scale numerical models of Yang-Baxter-deformed Fock spaces.
//!
//! The crate builds truncated deformed Fock spaces as explicit complex
//! matrices and certifies, with explicit slack reporting, the identities
//! and norm inequalities that govern them: symmetrizer factorizations,
//! Wick product formulas, vector-valued Khintchine-type bounds, and the
//! inequality chains used to witness non-injectivity, both for tracial
//! deformations and for quasi-free (Araki-Woods type) second quantization.
//!
//! Every operator is a dense matrix over a finite grade cutoff. Reported
//! operator norms over a cutoff are certified lower bounds of the
//! untruncated norms and are flagged as such in the check reports.

// negated comparisons like !(q < 1.0) also reject NaN parameters
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod araki;
pub mod config;
pub mod deformation;
pub mod fock;
pub mod numerics;
pub mod opspace;
pub mod report;
pub mod rng;
pub mod suites;
pub mod symgroup;
pub mod wick;
pub mod witness;

pub use araki::QuasiFreeGenerator;
pub use deformation::YangBaxterOperator;
pub use fock::{DeformedFockSpace, FockOperator, NormDomain};
pub use numerics::{CMat, CVec, GramForm};
pub use report::CheckReport;
pub use symgroup::Permutation;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not hermitian: asymmetry {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { residual: f64, tol: f64 },
    #[error("loss of strict positivity: eigenvalue {value:.3e} at or below threshold {threshold:.3e}")]
    PositivityLoss { value: f64, threshold: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operator norm {norm} is not strictly below 1")]
    NotStrictContraction { norm: f64 },
    #[error("braid relation violated: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    BraidViolation { residual: f64, tol: f64 },
    #[error("level {level} exceeds truncation {max}")]
    LevelOverflow { level: usize, max: usize },
    #[error("direct enumeration supports n <= {max}, got {n}")]
    EnumerationTooLarge { n: usize, max: usize },
    #[error("matrix budget exceeded: {required} > {budget} complex entries")]
    BudgetExceeded { required: usize, budget: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
