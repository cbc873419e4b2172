//! Uniform handles bundling a generating-function evaluator with its
//! parameters, so quadrature code and the CLI can treat the four walk
//! families alike.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, WalkScalar};
use crate::walk_core::CoinSpec;

use super::{grover3, two_state};

/// Initial internal state a generating function tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    R,
    S,
    L,
}

/// Which walk family and geometry a handle evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenFunWalk {
    TwoStateSemi,
    TwoStateFinite,
    Grover3Semi,
    Grover3Finite,
}

/// A generating function `z -> f(z)` with its provenance.
#[derive(Debug, Clone)]
pub struct GenFunHandle<T: WalkScalar> {
    pub walk: GenFunWalk,
    pub component: Component,
    pub m: u32,
    pub n: Option<u32>,
    coin: Option<CoinSpec<T>>,
}

impl<T: WalkScalar> GenFunHandle<T> {
    pub fn two_state_semi(component: Component, m: u32, coin: CoinSpec<T>) -> Self {
        GenFunHandle {
            walk: GenFunWalk::TwoStateSemi,
            component,
            m,
            n: None,
            coin: Some(coin),
        }
    }

    pub fn two_state_finite(component: Component, m: u32, n: u32, coin: CoinSpec<T>) -> Self {
        GenFunHandle {
            walk: GenFunWalk::TwoStateFinite,
            component,
            m,
            n: Some(n),
            coin: Some(coin),
        }
    }

    pub fn grover3_semi(component: Component, m: u32) -> Self {
        GenFunHandle {
            walk: GenFunWalk::Grover3Semi,
            component,
            m,
            n: None,
            coin: None,
        }
    }

    pub fn grover3_finite(component: Component, m: u32, n: u32) -> Self {
        GenFunHandle {
            walk: GenFunWalk::Grover3Finite,
            component,
            m,
            n: Some(n),
            coin: None,
        }
    }

    pub fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        match self.walk {
            GenFunWalk::TwoStateSemi => {
                two_state::two_state_semi(self.component, self.m, self.coin_ref()?, z)
            }
            GenFunWalk::TwoStateFinite => two_state::two_state_finite(
                self.component,
                self.m,
                self.n_ref()?,
                self.coin_ref()?,
                z,
            ),
            GenFunWalk::Grover3Semi => grover3::grover3_semi(self.component, self.m, z),
            GenFunWalk::Grover3Finite => {
                grover3::grover3_finite(self.component, self.m, self.n_ref()?, z)
            }
        }
    }

    /// The conjugate-reciprocal evaluator `z -> conj(f(1/conj z))`.
    ///
    /// Finite walks use the closed forms valid on an annulus around the
    /// unit circle; semi-infinite walks are only evaluated on `|z| = 1`,
    /// where the expression reduces to `conj(f(z))`.
    pub fn conj_reciprocal(&self, z: Complex<T>) -> Result<Complex<T>> {
        match self.walk {
            GenFunWalk::TwoStateFinite => two_state::two_state_finite_conj_reciprocal(
                self.component,
                self.m,
                self.n_ref()?,
                self.coin_ref()?,
                z,
            ),
            GenFunWalk::Grover3Finite => {
                grover3::grover3_finite_conj_reciprocal(self.component, self.m, self.n_ref()?, z)
            }
            GenFunWalk::TwoStateSemi | GenFunWalk::Grover3Semi => {
                if (z.norm() - T::one()).abs() > lit(1e-9) {
                    return Err(Error::Config(
                        "semi-infinite conjugate-reciprocal evaluation is only \
                         defined on the unit circle"
                            .into(),
                    ));
                }
                Ok(self.eval(z)?.conj())
            }
        }
    }

    fn coin_ref(&self) -> Result<&CoinSpec<T>> {
        self.coin
            .as_ref()
            .ok_or_else(|| Error::Config("handle is missing its coin".into()))
    }

    fn n_ref(&self) -> Result<u32> {
        self.n
            .ok_or_else(|| Error::Config("finite handle is missing n".into()))
    }
}
