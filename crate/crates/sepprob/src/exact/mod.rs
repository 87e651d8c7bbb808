//! Closed-form evaluation and verification: hypergeometric separability
//! probabilities, the master separability function and its induced-measure
//! relatives, the dilogarithmic 10-dimensional X-state function, tanh-sinh
//! quadrature for the integral identities, and the constants registry the
//! estimator checks its output against.

pub mod dilog;
pub mod gamma;
pub mod hyp;
pub mod quad;
pub mod registry;
pub mod xstate;

pub use dilog::{dilog, sep_function_10d};
pub use gamma::gamma;
pub use hyp::{chi_dk, chi_master, hyp_series, psep_hs, HypSeriesParams};
pub use quad::{tanh_sinh, QuadResult};
pub use registry::{constant, constants_registry, registry_csv, ConstantEntry, ConstantStatus};
pub use xstate::{verify_xstate_identities, IdentityCheck, XStateReport};
