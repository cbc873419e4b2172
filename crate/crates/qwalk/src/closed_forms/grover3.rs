//! Three-state Grover walk closed forms: the semi-infinite constant, the
//! finite `F_n/B_n` formula at `1` and `omega`, and the recurrences.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::genfun::{GROVER3_OMEGA_IM, GROVER3_OMEGA_RE};
use crate::scalar::{as_f64, clit, lit, WalkScalar};

/// `P_inf^(1)(1,0,0) = 5 sqrt2 / (2 pi) - 3 arccsc(3) / (4 pi) - 3/8`,
/// with `arccsc(3)` evaluated as `arcsin(1/3)`.
pub fn grover3_semi_closed<T: WalkScalar>() -> T {
    let sqrt2 = lit::<T>(2.0).sqrt();
    let pi = T::PI();
    let five: T = lit(5.0);
    let three: T = lit(3.0);
    five * sqrt2 / (pi + pi) - three * lit::<T>(1.0 / 3.0).asin() / (lit::<T>(4.0) * pi)
        - three / lit(8.0)
}

/// Scaled `F_k = delta_+^k - delta_-^k`, `B_k = delta_+^k + delta_-^k`
/// machinery at a fixed evaluation point, with
/// `delta_{+-} = [-(3v^2+4v+3) +- sqrt((3v^2+4v+3)^2 - 4v^2)]/2`.
struct DeltaPowers<T: WalkScalar> {
    /// `delta_small / delta_big`
    rho: Complex<T>,
    /// +1 if `delta_big = delta_+`, -1 otherwise; multiplies scaled `F`.
    sigma: T,
}

impl<T: WalkScalar> DeltaPowers<T> {
    fn at(v: Complex<T>) -> Self {
        let three: T = lit(3.0);
        let four: T = lit(4.0);
        let half: T = lit(0.5);
        let one = Complex::new(T::one(), T::zero());
        let p = (v * v).scale(three) + v.scale(four) + one.scale(three);
        let sq = (p * p - (v * v).scale(four)).sqrt();
        let d_plus = (-p + sq).scale(half);
        let d_minus = (-p - sq).scale(half);
        if d_plus.norm() >= d_minus.norm() {
            DeltaPowers {
                rho: d_minus / d_plus,
                sigma: T::one(),
            }
        } else {
            DeltaPowers {
                rho: d_plus / d_minus,
                sigma: -T::one(),
            }
        }
    }

    /// `F_k / delta_big^k`, up to the stored sign.
    fn f_scaled(&self, k: u32) -> Complex<T> {
        (Complex::new(T::one(), T::zero()) - self.rho.powu(k)).scale(self.sigma)
    }

    /// `B_k / delta_big^k`.
    fn b_scaled(&self, k: u32) -> Complex<T> {
        Complex::new(T::one(), T::zero()) + self.rho.powu(k)
    }
}

/// `P_n^(m)(1,0,0)` per the closed form
/// `1/2 [ F_{n-m}(1) F_{m-1}(1) / (sqrt6 F_{n-1}(1))
///       - F_{n-m}(w) B_{m-1}(w) / (sqrt2 B_{n-1}(w)) ]`.
///
/// The first ("localization") term vanishes at `m = 1` since `F_0 = 0`.
/// The imaginary part of the assembled value must stay below `1e-10`.
pub fn grover3_finite_closed<T: WalkScalar>(m: u32, n: u32) -> Result<T> {
    if !(1 <= m && m < n) {
        return Err(Error::Config(format!("need 1 <= m < n, got m={m}, n={n}")));
    }
    let at_one = DeltaPowers::<T>::at(Complex::new(T::one(), T::zero()));
    let at_omega = DeltaPowers::<T>::at(clit(GROVER3_OMEGA_RE, GROVER3_OMEGA_IM));
    // every delta_big exponent cancels: (n-m) + (m-1) - (n-1) = 0
    let loc: Complex<T> = at_one.f_scaled(n - m) * at_one.f_scaled(m - 1) / at_one.f_scaled(n - 1);
    let osc: Complex<T> = at_omega.f_scaled(n - m) * at_omega.b_scaled(m - 1) / at_omega.b_scaled(n - 1);
    let half: T = lit(0.5);
    let value = (loc.scale(T::one() / lit::<T>(6.0).sqrt())
        - osc.scale(T::one() / lit::<T>(2.0).sqrt()))
    .scale(half);
    // 1e-10 in double precision; scaled up for coarser scalars
    let bound = lit::<T>(1e-10).max(T::epsilon() * lit(1e2));
    if value.im.abs() > bound {
        return Err(Error::Integrity {
            what: format!("grover3_finite_closed(m={m}, n={n}) imaginary part"),
            value: as_f64(value.im),
        });
    }
    Ok(value.re)
}

/// One step of the lattice-size recursion `P -> (2 + 3P)/(3 + 4P)`.
pub fn grover3_orbit_step<T: WalkScalar>(p: T) -> T {
    (lit::<T>(2.0) + lit::<T>(3.0) * p) / (lit::<T>(3.0) + lit::<T>(4.0) * p)
}

/// Residual report for the Grover3 recurrences and the Hadamard-walk
/// equivalence.
#[derive(Debug, Clone, Copy)]
pub struct Grover3RecurrenceReport<T> {
    /// Worst deviation of the orbit of `(2+3P)/(3+4P)` from the closed form.
    pub orbit: T,
    /// Worst relative residual of the sixth-order position recurrence
    /// `p_{m+6} - 134 p_{m+5} + 3599 p_{m+4} - 6932 p_{m+3} + 3599 p_{m+2}
    ///  - 134 p_{m+1} + p_m`.
    pub position: T,
    /// Worst `|b_n - a_{2n-1}|`, the Grover3/Hadamard equivalence.
    pub hadamard_equivalence: T,
}

/// Evaluates the recurrences: the orbit over `2 <= n <= n_orbit`, the
/// position recurrence at fixed `n_pos` for `1 <= m <= m_max`, and the
/// `b_n = a_{2n-1}` identity for `2 <= n <= n_equiv`.
pub fn grover3_recurrences<T: WalkScalar>(
    n_orbit: u32,
    n_pos: u32,
    m_max: u32,
    n_equiv: u32,
) -> Result<Grover3RecurrenceReport<T>> {
    if n_orbit < 3 || m_max + 6 >= n_pos || n_equiv < 2 {
        return Err(Error::Config(
            "need n_orbit >= 3, m_max + 6 < n_pos, n_equiv >= 2".into(),
        ));
    }
    let mut orbit_dev = T::zero();
    let mut p = T::zero(); // P_1 = 0
    for n in 2..=n_orbit {
        p = grover3_orbit_step(p);
        let closed = grover3_finite_closed::<T>(1, n)?;
        orbit_dev = orbit_dev.max((p - closed).abs());
    }

    let coeffs: [T; 7] = [
        T::one(),
        lit(-134.0),
        lit(3599.0),
        lit(-6932.0),
        lit(3599.0),
        lit(-134.0),
        T::one(),
    ];
    let mut position = T::zero();
    for m in 1..=m_max {
        let mut resid = T::zero();
        let mut scale = T::zero();
        for (j, c) in coeffs.iter().enumerate() {
            // coefficient order: p_{m+6}, p_{m+5}, ..., p_m
            let term = *c * grover3_finite_closed::<T>(m + 6 - j as u32, n_pos)?;
            resid = resid + term;
            scale = scale.max(term.abs());
        }
        position = position.max(resid.abs() / scale.max(T::one()));
    }

    let hadamard = crate::walk_core::CoinSpec::<T>::hadamard();
    let mut equiv = T::zero();
    for n in 2..=n_equiv {
        let b_n = grover3_finite_closed::<T>(1, n)?;
        let q = super::query::AbsorptionQuery::new(
            super::query::WalkFamily::TwoState,
            hadamard.clone(),
            1,
            Some(2 * n - 1),
            vec![
                Complex::new(T::one(), T::zero()),
                Complex::new(T::zero(), T::zero()),
            ],
        )?;
        let a_2n1 = super::two_state::two_state_finite_closed(&q)?.p10;
        equiv = equiv.max((b_n - a_2n1).abs());
    }

    Ok(Grover3RecurrenceReport {
        orbit: orbit_dev,
        position,
        hadamard_equivalence: equiv,
    })
}
