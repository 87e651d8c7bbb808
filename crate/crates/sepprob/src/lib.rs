//! Estimation of separability and PPT probabilities of random bipartite
//! density matrices, driven by a quasirandom (generalized golden-ratio)
//! sequence, together with exact evaluation of the closed-form constants and
//! integral identities the estimates are checked against.
//!
//! The sampling pipeline is
//!
//! ```text
//! sequence point ──> normal variates ──> Ginibre / Haar factors
//!        ──> density matrix ──> PPT / determinant / realignment verdict
//! ```
//!
//! and lives in [`qrng`], [`normal`], [`rmt`] and [`criteria`]. The
//! [`estimator`] module drives the pipeline over an index range with
//! deterministic parallelism, periodic CSV checkpoints and resume support.
//! The [`exact`] module evaluates the hypergeometric and polylogarithmic
//! closed forms (separability functions, X-state integral identities, the
//! constants registry). [`catalog`] names the supported scenarios and
//! [`plot`] renders checkpoint series as SVG ratio plots.
//!
//! ```
//! use sepprob::catalog;
//! use sepprob::estimator::{run, RunOptions};
//! use sepprob::qrng::SequenceSpec;
//!
//! let named = catalog::by_name("two-qubit-hs").unwrap();
//! let spec = SequenceSpec::new(named.scenario.variate_count(), 0.5).unwrap();
//! let out = run(&named.scenario, &spec, 0, 20_000, &RunOptions::default(), |_| Ok(())).unwrap();
//! let p = out.counters.p_ppt();
//! assert!((p - 8.0 / 33.0).abs() < 0.02);
//! ```

// Frozen coefficient tables and oracle decimals carry generator-precision
// digits on purpose.
#![allow(clippy::excessive_precision)]

pub mod catalog;
pub mod criteria;
mod dd;
pub mod estimator;
pub mod exact;
pub mod linalg;
pub mod normal;
pub mod plot;
pub mod qrng;
pub mod rmt;

use thiserror::Error;

/// Crate-level error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(&'static str),

    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    #[error("sequence dimension {seq_d} does not match scenario variate count {want}")]
    DimensionMismatch { seq_d: usize, want: usize },

    #[error("{0} did not converge")]
    NonConvergence(&'static str),

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("unknown constant `{0}`")]
    UnknownConstant(String),

    #[error("scenario mismatch on resume: checkpoint has `{found}`, requested `{requested}`")]
    ScenarioMismatch { found: String, requested: String },

    #[error("malformed {what}: {detail}")]
    Malformed { what: &'static str, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Why a single sample was discarded instead of classified.
///
/// All of these are probability-zero events for the continuous ensembles; the
/// estimator tallies them under `skipped` and excludes them from denominators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleFailure {
    /// A uniform coordinate collapsed to 0 or 1 in fixed-to-float conversion.
    CoordinateOutOfRange,
    /// Tr(BB†) vanished so the density matrix could not be normalized.
    ZeroTrace,
    /// The QR factor of a Ginibre draw was numerically singular.
    SingularDraw,
    /// The Jacobi eigensolver failed to reduce the off-diagonal norm.
    EigenNonConvergence,
}
