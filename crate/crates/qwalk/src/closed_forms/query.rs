//! Query descriptor shared by the closed-form evaluators and the CLI.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, WalkScalar};
use crate::walk_core::CoinSpec;

/// Walk family a query addresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkFamily {
    Classical,
    TwoState,
    Grover3,
}

/// An absorption problem: walk family, start site `m`, lattice size `n`
/// (`None` for semi-infinite), and the initial internal amplitudes ordered
/// like the coin's direction set.
#[derive(Debug, Clone)]
pub struct AbsorptionQuery<T: WalkScalar> {
    pub family: WalkFamily,
    pub coin: CoinSpec<T>,
    pub m: u32,
    pub n: Option<u32>,
    pub amplitudes: Vec<Complex<T>>,
}

impl<T: WalkScalar> AbsorptionQuery<T> {
    pub fn new(
        family: WalkFamily,
        coin: CoinSpec<T>,
        m: u32,
        n: Option<u32>,
        amplitudes: Vec<Complex<T>>,
    ) -> Result<Self> {
        if m == 0 {
            return Err(Error::Config("initial position m must be >= 1".into()));
        }
        if let Some(n) = n {
            if m >= n {
                return Err(Error::Config(format!(
                    "initial position must lie strictly inside (0, n): m={m}, n={n}"
                )));
            }
        }
        let expected = match family {
            WalkFamily::Classical => 0,
            WalkFamily::TwoState => 2,
            WalkFamily::Grover3 => 3,
        };
        if expected > 0 {
            if amplitudes.len() != expected {
                return Err(Error::Config(format!(
                    "expected {expected} internal amplitudes, got {}",
                    amplitudes.len()
                )));
            }
            let norm: T = amplitudes
                .iter()
                .fold(T::zero(), |acc, a| acc + a.norm_sqr());
            if (norm - T::one()).abs() > lit(1e-12) {
                return Err(Error::Config(format!(
                    "internal amplitude vector must have unit norm, got |.|^2 = {norm}"
                )));
            }
        }
        Ok(AbsorptionQuery {
            family,
            coin,
            m,
            n,
            amplitudes,
        })
    }

    /// `(alpha, beta)` for a two-state query.
    pub fn two_state_amps(&self) -> (Complex<T>, Complex<T>) {
        (self.amplitudes[0], self.amplitudes[1])
    }
}
