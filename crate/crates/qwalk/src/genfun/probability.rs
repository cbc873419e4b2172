//! Absorption probabilities assembled from generating functions and
//! Hadamard products: `P = (f (.) conj f(conj .))(1)`.

use num_complex::Complex;

use crate::error::Result;
use crate::hadamard::{
    hadamard_at_one, hadamard_at_one_complex, ContourSpec, HadamardValue,
};
use crate::scalar::WalkScalar;
use crate::walk_core::CoinSpec;

use super::handle::{Component, GenFunHandle};

/// `(f (.) conj f(conj .))(1)` for any generating-function handle: the
/// probability contributed by that component's channel.
pub fn self_probability<T: WalkScalar>(
    handle: &GenFunHandle<T>,
    contour: &ContourSpec<T>,
    tol: T,
) -> Result<HadamardValue<T>> {
    let nan = Complex::new(T::nan(), T::nan());
    hadamard_at_one(
        |z| handle.eval(z).unwrap_or(nan),
        |z| handle.conj_reciprocal(z).unwrap_or(nan),
        contour,
        tol,
    )
}

/// `(f (.) conj g(conj .))(1)` for two handles — the cross terms `H`.
pub fn cross_probability<T: WalkScalar>(
    f: &GenFunHandle<T>,
    g: &GenFunHandle<T>,
    contour: &ContourSpec<T>,
    tol: T,
) -> Result<Complex<T>> {
    let nan = Complex::new(T::nan(), T::nan());
    let est = hadamard_at_one_complex(
        |z| f.eval(z).unwrap_or(nan),
        |z| g.conj_reciprocal(z).unwrap_or(nan),
        contour,
        tol,
    )?;
    Ok(est.value)
}

fn self_product<T: WalkScalar>(
    handle: &GenFunHandle<T>,
    contour: &ContourSpec<T>,
    tol: T,
) -> Result<HadamardValue<T>> {
    self_probability(handle, contour, tol)
}

/// `P_inf^(m)(1,0)` for a two-state coin, by quadrature of
/// `|r_inf^(m)|^2` on the unit circle.
pub fn two_state_semi_probability<T: WalkScalar>(
    m: u32,
    coin: &CoinSpec<T>,
    contour: &ContourSpec<T>,
    tol: T,
) -> Result<HadamardValue<T>> {
    self_product(
        &GenFunHandle::two_state_semi(Component::R, m, coin.clone()),
        contour,
        tol,
    )
}

/// `P_n^(m)(1,0)` for a two-state coin via the rational integrand.
pub fn two_state_finite_probability<T: WalkScalar>(
    m: u32,
    n: u32,
    coin: &CoinSpec<T>,
    contour: &ContourSpec<T>,
    tol: T,
) -> Result<HadamardValue<T>> {
    self_product(
        &GenFunHandle::two_state_finite(Component::R, m, n, coin.clone()),
        contour,
        tol,
    )
}

/// `P_inf^(m)(1,0,0)` for the three-state Grover walk.
pub fn grover3_semi_probability<T: WalkScalar>(
    m: u32,
    contour: &ContourSpec<T>,
    tol: T,
) -> Result<HadamardValue<T>> {
    self_product(&GenFunHandle::grover3_semi(Component::R, m), contour, tol)
}

/// `P_n^(m)(1,0,0)` for the three-state Grover walk.
pub fn grover3_finite_probability<T: WalkScalar>(
    m: u32,
    n: u32,
    contour: &ContourSpec<T>,
    tol: T,
) -> Result<HadamardValue<T>> {
    self_product(&GenFunHandle::grover3_finite(Component::R, m, n), contour, tol)
}

/// Semi-infinite cross term `H_inf^(m) = (r (.) conj l(conj .))(1)`; the
/// value is genuinely complex for complex coins.
pub fn two_state_semi_cross<T: WalkScalar>(
    m: u32,
    coin: &CoinSpec<T>,
    contour: &ContourSpec<T>,
    tol: T,
) -> Result<Complex<T>> {
    let r = GenFunHandle::two_state_semi(Component::R, m, coin.clone());
    let l = GenFunHandle::two_state_semi(Component::L, m, coin.clone());
    let nan = Complex::new(T::nan(), T::nan());
    let est = hadamard_at_one_complex(
        |z| r.eval(z).unwrap_or(nan),
        |z| l.conj_reciprocal(z).unwrap_or(nan),
        contour,
        tol,
    )?;
    Ok(est.value)
}

/// Finite cross term `H_n^(m)`.
pub fn two_state_finite_cross<T: WalkScalar>(
    m: u32,
    n: u32,
    coin: &CoinSpec<T>,
    contour: &ContourSpec<T>,
    tol: T,
) -> Result<Complex<T>> {
    let r = GenFunHandle::two_state_finite(Component::R, m, n, coin.clone());
    let l = GenFunHandle::two_state_finite(Component::L, m, n, coin.clone());
    let nan = Complex::new(T::nan(), T::nan());
    let est = hadamard_at_one_complex(
        |z| r.eval(z).unwrap_or(nan),
        |z| l.conj_reciprocal(z).unwrap_or(nan),
        contour,
        tol,
    )?;
    Ok(est.value)
}
