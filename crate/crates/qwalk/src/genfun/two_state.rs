//! Generating functions of the two-state walk, absorbed at `|0>|L>`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{as_f64, lit, WalkScalar};
use crate::walk_core::CoinSpec;

use super::branch::sqrt_two_state;
use super::handle::Component;
use super::lf::{pow_u, two_state_entries, ScaledR};

fn check_z_in_disk<T: WalkScalar>(z: Complex<T>, slack: f64) -> Result<()> {
    if z.norm() > T::one() + lit(slack) {
        return Err(Error::Config(format!(
            "|z| = {} outside the validity disk",
            z.norm()
        )));
    }
    Ok(())
}

/// Semi-infinite generating functions (absorber at 0, start at `m`):
/// `r` for the `|m>|R>` channel, `l` for `|m>|L>`. Negative square-root
/// branch, i.e. the one whose Taylor series converges at 0.
pub fn two_state_semi<T: WalkScalar>(
    component: Component,
    m: u32,
    coin: &CoinSpec<T>,
    z: Complex<T>,
) -> Result<Complex<T>> {
    if m == 0 {
        return Err(Error::Config("semi-infinite start needs m >= 1".into()));
    }
    check_z_in_disk(z, 1e-9)?;
    let (a, b) = two_state_entries(coin)?;
    let zero = Complex::new(T::zero(), T::zero());
    if z == zero {
        return Ok(zero);
    }
    let one = Complex::new(T::one(), T::zero());
    let alpha = b.norm_sqr() - a.norm_sqr();
    let s = sqrt_two_state(z, alpha);
    let two: T = lit(2.0);
    let l1 = (one + z * z - s) / ((a * z).scale(two));
    let value = match component {
        Component::R => {
            let r1 = (one - z * z - s) / ((b * z).scale(two));
            r1 * pow_u(l1, (m - 1) as u64)
        }
        Component::L => pow_u(l1, m as u64),
        Component::S => {
            return Err(Error::Config(
                "the two-state walk has no stay component".into(),
            ))
        }
    };
    Ok(value)
}

/// Shared scaled pieces of the finite closed forms.
struct FiniteParts<T: WalkScalar> {
    sr: ScaledR<T>,
    /// `R~_{n-m}`, `R~_{n-m-1}`, `R~_{n-1}`, `R~_n`
    r_nm: Complex<T>,
    r_nm1: Complex<T>,
    r_n1: Complex<T>,
    r_n: Complex<T>,
}

fn finite_parts<T: WalkScalar>(
    m: u32,
    n: u32,
    coin: &CoinSpec<T>,
    z: Complex<T>,
) -> Result<(Complex<T>, Complex<T>, FiniteParts<T>)> {
    if !(1 <= m && m < n) {
        return Err(Error::Config(format!("need 1 <= m < n, got m={m}, n={n}")));
    }
    let (a, b) = two_state_entries(coin)?;
    // lambda_{+-} = [(1+z^2) +- sqrt(z^4 + 2(|b|^2-|a|^2) z^2 + 1)]/2.
    // Finite forms are rational in z (the square root cancels in every
    // ratio), so the plain principal branch would also do; the factored
    // branch keeps them continuous along the unit circle for quadrature.
    let one = Complex::new(T::one(), T::zero());
    let half: T = lit(0.5);
    let alpha = b.norm_sqr() - a.norm_sqr();
    let s = sqrt_two_state(z, alpha);
    let u = (one + z * z).scale(half);
    let sr = ScaledR::from_lambdas(u + s.scale(half), u - s.scale(half));
    let parts = FiniteParts {
        r_nm: sr.r_scaled((n - m) as u64),
        r_nm1: sr.r_scaled((n - m) as u64 - 1),
        r_n1: sr.r_scaled((n - 1) as u64),
        r_n: sr.r_scaled(n as u64),
        sr,
    };
    Ok((a, b, parts))
}

fn pole_check<T: WalkScalar>(den: Complex<T>, scale: T, n: u32, z: Complex<T>) -> Result<()> {
    if den.norm() < lit::<T>(1e-14) * T::one().max(scale) {
        return Err(Error::Pole {
            n: n as u64,
            z_re: as_f64(z.re),
            z_im: as_f64(z.im),
        });
    }
    Ok(())
}

/// Finite-lattice generating functions (absorbers at 0 and n, start m):
///
/// `r_n^(m)(z) = -conj(b) conj(a)^{m-1} z^m R_{n-m} / (R_n - z^2 R_{n-1})`
/// and the matching `l` form, evaluated on `lambda_+`-scaled ratios.
pub fn two_state_finite<T: WalkScalar>(
    component: Component,
    m: u32,
    n: u32,
    coin: &CoinSpec<T>,
    z: Complex<T>,
) -> Result<Complex<T>> {
    let (a, b, parts) = finite_parts(m, n, coin, z)?;
    let zero = Complex::new(T::zero(), T::zero());
    if z == zero {
        return Ok(zero);
    }
    let lp = parts.sr.lambda_plus;
    let den = lp * parts.r_n - z * z * parts.r_n1;
    pole_check(den, lp.norm(), n, z)?;
    match component {
        Component::R => {
            // q = (conj(a) z / lambda_+)^{m-1}, |q| <= |a|^{-(m-1)} |a|^{m-1} = O(1)
            let q = pow_u(a.conj() * z / lp, (m - 1) as u64);
            Ok(-b.conj() * q * z * parts.r_nm / den)
        }
        Component::L => {
            let q = pow_u(a.conj() * z / lp, m as u64);
            Ok(q * (lp * parts.r_nm - z * z * parts.r_nm1) / den)
        }
        Component::S => Err(Error::Config(
            "the two-state walk has no stay component".into(),
        )),
    }
}

/// The conjugate-reciprocal evaluators `z -> conj(f(1/conj z))` of the
/// finite forms, analytic outside the unit circle and equal to `conj(f(z))`
/// on it; these are the second factors of the Hadamard-product integrands.
pub fn two_state_finite_conj_reciprocal<T: WalkScalar>(
    component: Component,
    m: u32,
    n: u32,
    coin: &CoinSpec<T>,
    z: Complex<T>,
) -> Result<Complex<T>> {
    let (a, b, parts) = finite_parts(m, n, coin, z)?;
    let zero = Complex::new(T::zero(), T::zero());
    if z == zero {
        return Ok(zero);
    }
    let lp = parts.sr.lambda_plus;
    let den = lp * parts.r_n - parts.r_n1;
    pole_check(den, lp.norm(), n, z)?;
    match component {
        Component::R => {
            let q = pow_u(a * z / lp, (m - 1) as u64);
            Ok(-b * q * z * parts.r_nm / den)
        }
        Component::L => {
            let q = pow_u(a * z / lp, m as u64);
            Ok(q * (lp * parts.r_nm - parts.r_nm1) / den)
        }
        Component::S => Err(Error::Config(
            "the two-state walk has no stay component".into(),
        )),
    }
}
