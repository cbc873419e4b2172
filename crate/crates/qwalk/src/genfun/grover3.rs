//! Generating functions of the three-state Grover walk, absorbed at `|0>|L>`.
//!
//! The semi-infinite `r` closed form is used with its first factor read as
//! `(3 - 2z + 3z^2 + (z-1) sqrt(9 + 6z + 9z^2))/(4z)`; the `l` and `s`
//! forms come from solving the first-step system. All three are locked to
//! the simulator by the coefficient oracle below.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{as_f64, lit, WalkScalar};

use super::branch::sqrt_grover3;
use super::handle::Component;
use super::lf::{pow_u, ScaledR};

/// Real part of `omega = 1/3 + (2 sqrt 2 / 3) i`, the unit-modulus root of
/// `9 z^2 + 6 z + 9 = 0` entering the closed-form probabilities.
pub const GROVER3_OMEGA_RE: f64 = 1.0 / 3.0;
/// Imaginary part of `omega`.
pub const GROVER3_OMEGA_IM: f64 = 0.9428090415820633658677924793417283374;

fn check_z<T: WalkScalar>(z: Complex<T>) -> Result<()> {
    if z.norm() > T::one() + lit(1e-9) {
        return Err(Error::Config(format!(
            "|z| = {} outside the validity disk",
            z.norm()
        )));
    }
    Ok(())
}

/// Semi-infinite generating functions for the `(Z, {-1,0,1}, G_3)` walk
/// with absorber at 0, start at `m`: components `r`, `s`, `l` for initial
/// internal states `|R>`, `|S>`, `|L>`.
pub fn grover3_semi<T: WalkScalar>(
    component: Component,
    m: u32,
    z: Complex<T>,
) -> Result<Complex<T>> {
    if m == 0 {
        return Err(Error::Config("semi-infinite start needs m >= 1".into()));
    }
    check_z(z)?;
    let zero = Complex::new(T::zero(), T::zero());
    if z == zero {
        return Ok(zero);
    }
    let s = sqrt_grover3(z);
    let one = Complex::new(T::one(), T::zero());
    let three: T = lit(3.0);
    let four: T = lit(4.0);
    let two: T = lit(2.0);
    let z2 = z * z;
    let l1 = (-(one.scale(three)) - z.scale(four) - z2.scale(three) + (z + one) * s)
        / (z.scale(two));
    let first = match component {
        Component::R => {
            (one.scale(three) - z.scale(two) + z2.scale(three) + (z - one) * s) / (z.scale(four))
        }
        Component::S => (-(one.scale(three)) - z + s) / (z.scale(two)),
        Component::L => l1,
    };
    Ok(first * pow_u(l1, (m - 1) as u64))
}

struct FiniteParts<T: WalkScalar> {
    sr: ScaledR<T>,
    r_nm: Complex<T>,
    r_nm1: Complex<T>,
    r_n1: Complex<T>,
    r_n: Complex<T>,
    /// `z^2 (1 + 3z)`
    w: Complex<T>,
}

fn finite_parts<T: WalkScalar>(m: u32, n: u32, z: Complex<T>) -> Result<FiniteParts<T>> {
    if !(1 <= m && m < n) {
        return Err(Error::Config(format!("need 1 <= m < n, got m={m}, n={n}")));
    }
    // lambda_{+-} = (z-1)/2 [-(3z^2+4z+3) +- sqrt((3z^2+4z+3)^2 - 4z^2)]
    let one = Complex::new(T::one(), T::zero());
    let three: T = lit(3.0);
    let four: T = lit(4.0);
    let half: T = lit(0.5);
    let p = (z * z).scale(three) + z.scale(four) + one.scale(three);
    let sq = (p * p - (z * z).scale(four)).sqrt();
    let pref = (z - one).scale(half);
    let sr = ScaledR::from_lambdas(pref * (-p + sq), pref * (-p - sq));
    Ok(FiniteParts {
        r_nm: sr.r_scaled((n - m) as u64),
        r_nm1: sr.r_scaled((n - m) as u64 - 1),
        r_n1: sr.r_scaled((n - 1) as u64),
        r_n: sr.r_scaled(n as u64),
        w: z * z * (one + z.scale(three)),
        sr,
    })
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

/// Finite-lattice forms (absorbers at 0 and n):
///
/// `r_n^(m) = 2(z+1)(z-1)^{m-1} z^m R_{n-m} / (R_n + z^2(1+3z) R_{n-1})`
/// and the matching `l` form, evaluated on scaled ratios.
pub fn grover3_finite<T: WalkScalar>(
    component: Component,
    m: u32,
    n: u32,
    z: Complex<T>,
) -> Result<Complex<T>> {
    let parts = finite_parts(m, n, z)?;
    let zero = Complex::new(T::zero(), T::zero());
    if z == zero {
        return Ok(zero);
    }
    let one = Complex::new(T::one(), T::zero());
    let lp = parts.sr.lambda_plus;
    let den = lp * parts.r_n + parts.w * parts.r_n1;
    pole_check(den, lp.norm() + parts.w.norm(), n, z)?;
    // base of the segmenting power: |(z-1) z / lambda_+| <= 1
    let base = (z - one) * z / lp;
    match component {
        Component::R => {
            let q = pow_u(base, (m - 1) as u64);
            Ok((z + one).scale(lit(2.0)) * q * z * parts.r_nm / den)
        }
        Component::L => {
            let q = pow_u(base, m as u64);
            Ok(q * (lp * parts.r_nm + parts.w * parts.r_nm1) / den)
        }
        Component::S => Err(Error::Config(
            "finite s-component closed form is not published; use simulation".into(),
        )),
    }
}

/// Conjugate-reciprocal evaluators of the finite Grover3 forms:
/// `conj(r_n^(m)(1/conj z)) = -2(z+1)(z-1)^{m-1} z^m R_{n-m} /
/// (R_n - (z+3) R_{n-1})`, and the matching `l` form.
pub fn grover3_finite_conj_reciprocal<T: WalkScalar>(
    component: Component,
    m: u32,
    n: u32,
    z: Complex<T>,
) -> Result<Complex<T>> {
    let parts = finite_parts(m, n, z)?;
    let zero = Complex::new(T::zero(), T::zero());
    if z == zero {
        return Ok(zero);
    }
    let one = Complex::new(T::one(), T::zero());
    let three: T = lit(3.0);
    let lp = parts.sr.lambda_plus;
    let zp3 = z + one.scale(three);
    let den = lp * parts.r_n - zp3 * parts.r_n1;
    pole_check(den, lp.norm() + zp3.norm(), n, z)?;
    match component {
        Component::R => {
            let base = (z - one) * z / lp;
            let q = pow_u(base, (m - 1) as u64);
            Ok(-(z + one).scale(lit(2.0)) * q * z * parts.r_nm / den)
        }
        Component::L => {
            // printed with a (1-z)^m prefactor; the coefficient oracle fixes
            // the sign to (z-1)^m
            let base = (z - one) * z / lp;
            let q = pow_u(base, m as u64);
            Ok(q * (lp * parts.r_nm - zp3 * parts.r_nm1) / den)
        }
        Component::S => Err(Error::Config(
            "finite s-component closed form is not published; use simulation".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::taylor_coefficients_n;
    use crate::walk_core::{absorb_measure, step, AbsorberSet, CoinSpec, WalkState};

    type C = Complex<f64>;

    fn absorbed_series(
        start_pos: i64,
        start_dir: u8,
        absorbers: &AbsorberSet,
        tmax: usize,
    ) -> Vec<C> {
        let coin: CoinSpec<f64> = CoinSpec::Grover3;
        let dirs = coin.directions();
        let mut state = WalkState::point(vec![start_pos], start_dir);
        let mut out = Vec::with_capacity(tmax);
        for _ in 0..tmax {
            state = step(&state, &coin, &dirs).unwrap();
            out.push(state.amplitude(&[0], 2));
            let (next, _) = absorb_measure(&state, absorbers);
            state = next;
        }
        out
    }

    fn assert_coeffs_match(f: impl Fn(C) -> C, series: &[C], tol: f64, label: &str) {
        let got = taylor_coefficients_n(f, series.len() + 1, 0.75, 512).unwrap();
        assert!(
            got.coeffs[0].norm() < tol,
            "{label}: nonzero constant term {}",
            got.coeffs[0]
        );
        for (t, want) in series.iter().enumerate() {
            let have = got.coeffs[t + 1];
            assert!(
                (have - want).norm() < tol,
                "{label} t={}: closed {have} vs walk {want}",
                t + 1
            );
        }
    }

    #[test]
    fn omega_is_unit_modulus_root() {
        // the radicand roots are -omega and -conj(omega)
        let om = C::new(GROVER3_OMEGA_RE, GROVER3_OMEGA_IM);
        assert!((om.norm() - 1.0).abs() < 1e-15);
        let at = |z: C| z * z * 9.0 + z * 6.0 + 9.0;
        assert!(at(-om).norm() < 1e-13);
        assert!(at(-om.conj()).norm() < 1e-13);
    }

    #[test]
    fn first_coefficients() {
        // r: 2/3 (R -> L entry of G3); s: 2/3; l: -1/3
        let got = taylor_coefficients_n(
            |z| grover3_semi(Component::R, 1, z).unwrap(),
            3,
            0.4,
            256,
        )
        .unwrap();
        assert!((got.coeffs[1] - C::new(2.0 / 3.0, 0.0)).norm() < 1e-12);
        let got = taylor_coefficients_n(
            |z| grover3_semi(Component::S, 1, z).unwrap(),
            3,
            0.4,
            256,
        )
        .unwrap();
        assert!((got.coeffs[1] - C::new(2.0 / 3.0, 0.0)).norm() < 1e-12);
        let got = taylor_coefficients_n(
            |z| grover3_semi(Component::L, 1, z).unwrap(),
            3,
            0.4,
            256,
        )
        .unwrap();
        assert!((got.coeffs[1] - C::new(-1.0 / 3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn semi_matches_walk_core_to_t30() {
        let absorbers = AbsorberSet::points([0]).unwrap();
        for m in 1..=3u32 {
            for (dir, comp, name) in [
                (0u8, Component::R, "r"),
                (1, Component::S, "s"),
                (2, Component::L, "l"),
            ] {
                let series = absorbed_series(m as i64, dir, &absorbers, 30);
                assert_coeffs_match(
                    |z| grover3_semi(comp, m, z).unwrap(),
                    &series,
                    1e-9,
                    &format!("g3 semi {name} m={m}"),
                );
            }
        }
    }

    #[test]
    fn finite_matches_walk_core_to_t30() {
        for (m, n) in [(1u32, 2u32), (1, 3), (2, 5), (3, 7)] {
            let absorbers = AbsorberSet::points([0, n as i64]).unwrap();
            let series_r = absorbed_series(m as i64, 0, &absorbers, 30);
            assert_coeffs_match(
                |z| grover3_finite(Component::R, m, n, z).unwrap(),
                &series_r,
                1e-9,
                &format!("g3 finite r m={m} n={n}"),
            );
            let series_l = absorbed_series(m as i64, 2, &absorbers, 30);
            assert_coeffs_match(
                |z| grover3_finite(Component::L, m, n, z).unwrap(),
                &series_l,
                1e-9,
                &format!("g3 finite l m={m} n={n}"),
            );
        }
    }

    #[test]
    fn finite_r_first_coefficient_n2() {
        let got = taylor_coefficients_n(
            |z| grover3_finite(Component::R, 1, 2, z).unwrap(),
            3,
            0.4,
            256,
        )
        .unwrap();
        assert!((got.coeffs[1] - C::new(2.0 / 3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn boundedness_on_disk() {
        for n in 2..=12u32 {
            for k in 0..100 {
                let r = ((k % 10) as f64 + 1.0) / 10.0;
                let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.41) / 100.0;
                let z = C::from_polar(r, th);
                let v = grover3_finite(Component::R, 1, n, z).unwrap();
                assert!(v.norm() <= 1.0 + 1e-9, "n={n} z={z}: {}", v.norm());
            }
        }
    }

    #[test]
    fn conjugate_reciprocal_identity_on_circle() {
        for (m, n) in [(1u32, 3u32), (2, 5), (3, 8)] {
            for k in 0..48 {
                let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.13) / 48.0;
                let z = C::from_polar(1.0, th);
                for comp in [Component::R, Component::L] {
                    let direct = grover3_finite(comp, m, n, z).unwrap();
                    let cr = grover3_finite_conj_reciprocal(comp, m, n, z).unwrap();
                    assert!(
                        (cr - direct.conj()).norm() < 1e-10,
                        "{comp:?} m={m} n={n} th={th}: {cr} vs {}",
                        direct.conj()
                    );
                }
            }
        }
    }
}
