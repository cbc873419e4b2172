//! Branch-safe square roots for the semi-infinite generating functions.
//!
//! Every radicand appearing in this crate factors into quadratics whose
//! roots lie on the unit circle, `1 + 2 w cos(psi) + w^2 =
//! (1 + w e^{i psi})(1 + w e^{-i psi})`. Taking principal square roots of
//! the two linear factors separately places both branch cuts outside the
//! open unit disk, so the product is the Taylor branch (value 1 at `w = 0`)
//! everywhere in the closed disk, including on `|w| = 1` where the plain
//! principal square root of the full radicand would jump.

use num_complex::Complex;

use crate::scalar::{lit, WalkScalar};

/// `sqrt(1 + 2 w cos(psi) + w^2)`, Taylor branch on the closed unit disk.
fn sqrt_unit_root_quadratic<T: WalkScalar>(w: Complex<T>, psi: T) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    let e_plus = Complex::from_polar(T::one(), psi);
    let e_minus = Complex::from_polar(T::one(), -psi);
    ((one + w * e_plus).sqrt()) * ((one + w * e_minus).sqrt())
}

/// `sqrt(z^4 + 2 (|b|^2 - |a|^2) z^2 + 1)` with `S(0) = 1`.
///
/// `alpha = |b|^2 - |a|^2` must lie in `(-1, 1)` (non-degenerate coin).
pub fn sqrt_two_state<T: WalkScalar>(z: Complex<T>, alpha: T) -> Complex<T> {
    sqrt_unit_root_quadratic(z * z, alpha.acos())
}

/// `sqrt(9 z^2 + 6 z + 9)` with `S(0) = 3`; the roots are `-omega` and
/// `-conj(omega)` with `omega = 1/3 + (2 sqrt 2 / 3) i`.
pub fn sqrt_grover3<T: WalkScalar>(z: Complex<T>) -> Complex<T> {
    let three = lit::<T>(3.0);
    sqrt_unit_root_quadratic(z, lit::<T>(1.0 / 3.0).acos()).scale(three)
}

/// `sqrt((z^2 + z(cos t - 1) + 1)(z^2 + z(cos t + 1) + 1))` with `S(0) = 1`,
/// the radicand of the d = 2 momentum system at transverse momentum `t`.
pub fn sqrt_grover2d<T: WalkScalar>(z: Complex<T>, cos_theta: T) -> Complex<T> {
    let half = lit::<T>(0.5);
    let cos_mu = (half * (cos_theta - T::one())).max(-T::one()).min(T::one());
    let cos_nu = (half * (cos_theta + T::one())).max(-T::one()).min(T::one());
    sqrt_unit_root_quadratic(z, cos_mu.acos()) * sqrt_unit_root_quadratic(z, cos_nu.acos())
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn taylor_branch_at_origin() {
        let z = C::new(0.0, 0.0);
        assert!((sqrt_two_state(z, 0.0) - C::new(1.0, 0.0)).norm() < 1e-15);
        assert!((sqrt_grover3(z) - C::new(3.0, 0.0)).norm() < 1e-15);
        assert!((sqrt_grover2d(z, 0.3) - C::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn squares_back_to_radicand_on_circle() {
        for k in 0..64 {
            let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / 64.0;
            let z = C::from_polar(1.0, th);
            for alpha in [-0.6, 0.0, 0.3] {
                let s = sqrt_two_state(z, alpha);
                let rad = z.powi(4) + z * z * (2.0 * alpha) + 1.0;
                assert!((s * s - rad).norm() < 1e-12);
            }
            let s3 = sqrt_grover3(z);
            let rad3 = (z * z + z * (2.0 / 3.0) + 1.0) * 9.0;
            assert!((s3 * s3 - rad3).norm() < 1e-12);
            for c in [-0.99, -0.2, 0.7] {
                let s = sqrt_grover2d(z, c);
                let rad = (z * z + z * (c - 1.0) + 1.0) * (z * z + z * (c + 1.0) + 1.0);
                assert!((s * s - rad).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn continuous_along_circle() {
        // no sign jumps between adjacent samples away from branch points
        let n = 4096;
        let mut prev = sqrt_two_state(C::from_polar(1.0, 1e-4), 0.0);
        for k in 1..n {
            let th = 1e-4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            let cur = sqrt_two_state(C::from_polar(1.0, th), 0.0);
            // jump would be ~2|s|; allow the genuine O(1/sqrt n) motion near
            // the four branch points where s passes through 0
            assert!(
                (cur - prev).norm() < 0.5,
                "jump at theta={th}: {prev} -> {cur}"
            );
            prev = cur;
        }
    }
}
