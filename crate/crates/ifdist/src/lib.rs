//! Interpolating family (IF) of size distributions.
//!
//! A five-parameter family on `[x0, inf)` with shape parameters `p` (possibly
//! infinite), `b` (nonzero, either sign) and `q > 0`, scale `c > 0` and
//! location `x0 >= 0`. Three closed-form subfamilies cover most named size
//! distributions in the literature:
//!
//! * IF1 (`p = 0`): Burr XII / Dagum type, including Pareto I-IV, Fisk and Lomax,
//! * IF2 (`p -> inf`): Weibull, Frechet, Gumbel type 2, Rayleigh, exponential,
//! * IF3 (`b = 1`, finite `p`): generalized Lomax and Stoppa.
//!
//! The crate provides densities and cdf/quantile/sampling ([`density`]),
//! closed-form raw moments with existence conditions ([`moments`]), closed-form
//! differential entropy and the max-entropy constraint pairs ([`entropy`]), a
//! registry of named textbook cases ([`registry`]), and an independent
//! numerical oracle ([`oracle`]) that the [`verify`] suites use to check every
//! closed form against adaptive quadrature and Monte Carlo.

use thiserror::Error;

pub mod cli;
pub mod density;
pub mod entropy;
pub mod model;
pub mod moments;
pub mod oracle;
pub mod registry;
pub mod specfun;
pub mod verify;

mod util;

pub use model::{ExtendedP, IfParams, Subfamily};

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter failed validation.
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParam { field: String, reason: String },

    /// A distribution string or named-case call could not be parsed.
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    /// The registry has no case with this name.
    #[error("unknown case `{0}`")]
    UnknownCase(String),

    /// A function argument fell outside its mathematical domain.
    #[error("{context}: argument {value} outside {domain}")]
    Domain {
        context: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// The request is well-formed but has no supported answer.
    #[error("{0}")]
    Unsupported(String),

    /// Adaptive quadrature exhausted its panel budget.
    #[error("integration did not converge: {0}")]
    NonConvergence(String),
}

impl Error {
    pub(crate) fn invalid(field: &str, reason: impl Into<String>) -> Self {
        Error::InvalidParam {
            field: field.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
