//! Error type shared across the library.

use std::fmt;

/// Library result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by walk construction, evaluators, and quadrature.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Invalid configuration or parameters (bad probabilities, ranges,
    /// malformed coins, incompatible options).
    Config(String),
    /// Coin and direction set disagree on the internal-space dimension.
    ArityMismatch { coin: usize, dirs: usize },
    /// Path enumeration would exceed the budget guard.
    EnumerationBudget { paths: f64, limit: f64 },
    /// A closed form requires a non-degenerate coin (`a != 0` and `b != 0`).
    DegenerateCoin(String),
    /// A generating-function denominator vanished at the evaluation point.
    Pole { n: u64, z_re: f64, z_im: f64 },
    /// A branch/oracle consistency check failed; the closed form must not
    /// be trusted at these parameters.
    BranchCheck { what: String, deviation: f64 },
    /// A quantity that must be real (or bounded) came out otherwise.
    Integrity { what: String, value: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Config(msg) => write!(f, "configuration error: {msg}"),
            Error::ArityMismatch { coin, dirs } => write!(
                f,
                "coin dimension {coin} does not match direction count {dirs}"
            ),
            Error::EnumerationBudget { paths, limit } => write!(
                f,
                "path enumeration needs {paths:.3e} paths, over the {limit:.3e} budget"
            ),
            Error::DegenerateCoin(msg) => write!(f, "degenerate coin: {msg}"),
            Error::Pole { n, z_re, z_im } => write!(
                f,
                "denominator vanished at n={n}, z={z_re}{z_im:+}i (pole of the closed form)"
            ),
            Error::BranchCheck { what, deviation } => {
                write!(f, "branch check failed for {what}: deviation {deviation:.3e}")
            }
            Error::Integrity { what, value } => {
                write!(f, "numerical integrity violation in {what}: {value:.3e}")
            }
        }
    }
}

impl std::error::Error for Error {}

impl Error {
    /// True for errors caused by caller input rather than numerics.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Config(_) | Error::ArityMismatch { .. } | Error::DegenerateCoin(_)
        )
    }
}
