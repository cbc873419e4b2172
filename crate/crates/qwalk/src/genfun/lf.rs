//! Linear-fractional recurrences `f_{n+1} = (a f_n + b)/(c f_n + d)` with
//! `f_1 = 0`, solved in closed form through `R_n = lambda_+^n - lambda_-^n`.
//!
//! All evaluation is done on ratios scaled by powers of the dominant root,
//! which keeps every intermediate bounded and lets `n` range up to `10^4`
//! without overflow.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{as_f64, lit, WalkScalar};
use crate::walk_core::CoinSpec;

use super::branch;

/// Dense polynomial in `z`, ascending coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T: WalkScalar>(pub Vec<Complex<T>>);

impl<T: WalkScalar> Polynomial<T> {
    pub fn from_real(coeffs: &[f64]) -> Self {
        Polynomial(
            coeffs
                .iter()
                .map(|&c| Complex::new(lit(c), T::zero()))
                .collect(),
        )
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for c in self.0.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }
}

/// Polynomial coefficients of the recurrence `f_{n+1} = (a f_n + b)/(c f_n + d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LfCoefficients<T: WalkScalar> {
    pub a: Polynomial<T>,
    pub b: Polynomial<T>,
    pub c: Polynomial<T>,
    pub d: Polynomial<T>,
}

/// `f_n(z)` for the recurrence with the given polynomial coefficients and
/// `f_1 = 0`.
pub fn solve_linear_fractional<T: WalkScalar>(
    coeffs: &LfCoefficients<T>,
    n: u64,
    z: Complex<T>,
) -> Result<Complex<T>> {
    if n == 0 {
        return Err(Error::Config("linear-fractional index n must be >= 1".into()));
    }
    lf_closed_form(
        coeffs.a.eval(z),
        coeffs.b.eval(z),
        coeffs.c.eval(z),
        coeffs.d.eval(z),
        n,
        z,
    )
}

/// Naive iteration of the recurrence, for cross-checks.
pub fn lf_iterate<T: WalkScalar>(
    coeffs: &LfCoefficients<T>,
    n: u64,
    z: Complex<T>,
) -> Result<Complex<T>> {
    if n == 0 {
        return Err(Error::Config("linear-fractional index n must be >= 1".into()));
    }
    let (a, b, c, d) = (
        coeffs.a.eval(z),
        coeffs.b.eval(z),
        coeffs.c.eval(z),
        coeffs.d.eval(z),
    );
    let mut f = Complex::new(T::zero(), T::zero());
    for step in 1..n {
        let den = c * f + d;
        if den.norm() < lit(1e-14) {
            return Err(Error::Pole {
                n: step + 1,
                z_re: as_f64(z.re),
                z_im: as_f64(z.im),
            });
        }
        f = (a * f + b) / den;
    }
    Ok(f)
}

/// Scaled sequence `R~_k = R_k / lambda_+^k` for the three indices a closed
/// form needs; `rho = lambda_- / lambda_+` with `|rho| <= 1`.
#[derive(Debug, Clone, Copy)]
pub struct ScaledR<T: WalkScalar> {
    pub lambda_plus: Complex<T>,
    pub rho: Complex<T>,
    confluent: bool,
}

impl<T: WalkScalar> ScaledR<T> {
    /// From the recurrence trace `s = a + d` and determinant `p = ad - bc`.
    pub fn from_trace_det(s: Complex<T>, p: Complex<T>) -> Self {
        let four: T = lit(4.0);
        let disc = s * s - p.scale(four);
        let sq = disc.sqrt();
        let half: T = lit(0.5);
        let mut lp = (s + sq).scale(half);
        let mut lm = (s - sq).scale(half);
        if lm.norm() > lp.norm() {
            core::mem::swap(&mut lp, &mut lm);
        }
        let scale = lp.norm() + lm.norm();
        let confluent = (lp - lm).norm() <= lit::<T>(1e-6) * scale || scale == T::zero();
        let rho = if lp.norm() > T::zero() {
            lm / lp
        } else {
            Complex::new(T::zero(), T::zero())
        };
        ScaledR {
            lambda_plus: lp,
            rho,
            confluent,
        }
    }

    pub fn from_lambdas(lp: Complex<T>, lm: Complex<T>) -> Self {
        let (lp, lm) = if lm.norm() > lp.norm() { (lm, lp) } else { (lp, lm) };
        let scale = lp.norm() + lm.norm();
        ScaledR {
            lambda_plus: lp,
            rho: if lp.norm() > T::zero() {
                lm / lp
            } else {
                Complex::new(T::zero(), T::zero())
            },
            confluent: (lp - lm).norm() <= lit::<T>(1e-6) * scale || scale == T::zero(),
        }
    }

    /// `R_k / lambda_+^k = 1 - rho^k`, evaluated through the three-term
    /// recurrence when the roots nearly coincide.
    pub fn r_scaled(&self, k: u64) -> Complex<T> {
        let one = Complex::new(T::one(), T::zero());
        if k == 0 {
            return Complex::new(T::zero(), T::zero());
        }
        if !self.confluent {
            return one - pow_u(self.rho, k);
        }
        // near-degenerate roots: iterate R~_{j+1} = (1 + rho) R~_j - rho R~_{j-1}
        let mut prev = Complex::new(T::zero(), T::zero());
        let mut cur = one - self.rho;
        for _ in 1..k {
            let next = (one + self.rho) * cur - self.rho * prev;
            prev = cur;
            cur = next;
        }
        cur
    }
}

/// `w^k` by binary exponentiation (exact integer exponent, no polar form).
pub(crate) fn pow_u<T: WalkScalar>(w: Complex<T>, mut k: u64) -> Complex<T> {
    let mut base = w;
    let mut acc = Complex::new(T::one(), T::zero());
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base;
        }
        base = base * base;
        k >>= 1;
    }
    acc
}

/// Closed form `f_n = b R_{n-1} / (R_n - a R_{n-1})` with `f_1 = 0`,
/// evaluated in scaled form.
pub fn lf_closed_form<T: WalkScalar>(
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    d: Complex<T>,
    n: u64,
    z: Complex<T>,
) -> Result<Complex<T>> {
    if n == 1 {
        return Ok(Complex::new(T::zero(), T::zero()));
    }
    let s = a + d;
    let p = a * d - b * c;
    let sr = ScaledR::from_trace_det(s, p);
    let (num, den);
    if sr.confluent && (sr.lambda_plus - sr.lambda_plus * sr.rho).norm() == T::zero() {
        // exactly coincident roots: R_k -> k lambda^{k-1}
        let lam = sr.lambda_plus;
        num = b.scale(lit((n - 1) as f64));
        den = lam.scale(lit(n as f64)) - a.scale(lit((n - 1) as f64));
    } else {
        let r_n = sr.r_scaled(n);
        let r_nm1 = sr.r_scaled(n - 1);
        num = b * r_nm1;
        den = sr.lambda_plus * r_n - a * r_nm1;
    }
    let scale = T::one().max(sr.lambda_plus.norm() + a.norm());
    if den.norm() < lit::<T>(1e-14) * scale {
        return Err(Error::Pole {
            n,
            z_re: as_f64(z.re),
            z_im: as_f64(z.im),
        });
    }
    Ok(num / den)
}

/// The `lambda_{+-}(z)` families whose `R_n` sequences drive every closed
/// form in the crate.
#[derive(Debug, Clone)]
pub enum RFamily<T: WalkScalar> {
    /// `lambda_{+-} = [(1+z^2) +- sqrt(z^4 + 2(|b|^2-|a|^2) z^2 + 1)]/2`.
    TwoState { coin: CoinSpec<T> },
    /// `lambda_{+-} = (z-1)/2 [-(3z^2+4z+3) +- sqrt((3z^2+4z+3)^2 - 4z^2)]`.
    Grover3,
    /// `lambda_{+-} = (1-z^2)[A +- sqrt(A^2 - z^2)]`, `A = 1 + z cos t + z^2`.
    Grover2D { cos_theta: T },
    /// Lemma-2.1 roots of explicit recurrence coefficients.
    Custom(LfCoefficients<T>),
}

/// `R_n(z) = lambda_+^n - lambda_-^n` machinery for a family.
#[derive(Debug, Clone)]
pub struct RSequence<T: WalkScalar> {
    pub family: RFamily<T>,
}

impl<T: WalkScalar> RSequence<T> {
    pub fn new(family: RFamily<T>) -> Self {
        RSequence { family }
    }

    /// Both roots at `z` (Taylor-branch square roots for the walk families).
    pub fn lambdas(&self, z: Complex<T>) -> Result<(Complex<T>, Complex<T>)> {
        let half: T = lit(0.5);
        match &self.family {
            RFamily::TwoState { coin } => {
                let (a, b) = two_state_entries(coin)?;
                let alpha = b.norm_sqr() - a.norm_sqr();
                let s = branch::sqrt_two_state(z, alpha);
                let one = Complex::new(T::one(), T::zero());
                let u = (one + z * z).scale(half);
                Ok((u + s.scale(half), u - s.scale(half)))
            }
            RFamily::Grover3 => {
                let three: T = lit(3.0);
                let four: T = lit(4.0);
                let p = (z * z).scale(three) + z.scale(four) + on_real(three);
                let disc = p * p - (z * z).scale(four);
                let sq = disc.sqrt();
                let pref = (z - on_real(T::one())).scale(half);
                Ok((pref * (-p + sq), pref * (-p - sq)))
            }
            RFamily::Grover2D { cos_theta } => {
                let one = Complex::new(T::one(), T::zero());
                let a = one + z.scale(*cos_theta) + z * z;
                let sq = branch::sqrt_grover2d(z, *cos_theta);
                let pref = one - z * z;
                Ok((pref * (a + sq), pref * (a - sq)))
            }
            RFamily::Custom(coeffs) => {
                let (a, b, c, d) = (
                    coeffs.a.eval(z),
                    coeffs.b.eval(z),
                    coeffs.c.eval(z),
                    coeffs.d.eval(z),
                );
                let s = a + d;
                let p = a * d - b * c;
                let disc = s * s - p.scale(lit(4.0));
                let sq = disc.sqrt();
                Ok(((s + sq).scale(half), (s - sq).scale(half)))
            }
        }
    }

    /// Trace and determinant of the associated recurrence, i.e. the
    /// coefficients of `R_{n+2} - (a+d) R_{n+1} + (ad-bc) R_n = 0`.
    pub fn trace_det(&self, z: Complex<T>) -> Result<(Complex<T>, Complex<T>)> {
        let (lp, lm) = self.lambdas(z)?;
        Ok((lp + lm, lp * lm))
    }

    /// Unscaled `R_n(z)`; may overflow for large `n`, intended for the
    /// recurrence checks at moderate index.
    pub fn r(&self, n: u32, z: Complex<T>) -> Result<Complex<T>> {
        let (lp, lm) = self.lambdas(z)?;
        Ok(pow_u(lp, n as u64) - pow_u(lm, n as u64))
    }

    pub fn scaled(&self, z: Complex<T>) -> Result<ScaledR<T>> {
        let (lp, lm) = self.lambdas(z)?;
        Ok(ScaledR::from_lambdas(lp, lm))
    }
}

fn on_real<T: WalkScalar>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

pub(crate) fn two_state_entries<T: WalkScalar>(
    coin: &CoinSpec<T>,
) -> Result<(Complex<T>, Complex<T>)> {
    match coin {
        CoinSpec::TwoState { a, b } => {
            if a.norm() < lit(1e-15) || b.norm() < lit(1e-15) {
                return Err(Error::DegenerateCoin(
                    "closed forms divide by a and b; use the simulation route".into(),
                ));
            }
            Ok((*a, *b))
        }
        other => Err(Error::Config(format!(
            "expected a two-state coin, got {other:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn classical_coeffs(p: f64) -> LfCoefficients<f64> {
        // f_{n+1} = q z / (1 - p z f_n)  =>  (a,b,c,d) = (0, qz, -pz, 1)
        let q = 1.0 - p;
        LfCoefficients {
            a: Polynomial::from_real(&[0.0]),
            b: Polynomial::from_real(&[0.0, q]),
            c: Polynomial::from_real(&[0.0, -p]),
            d: Polynomial::from_real(&[1.0]),
        }
    }

    #[test]
    fn base_cases() {
        let coeffs = classical_coeffs(0.5);
        let z = C::new(1.0, 0.0);
        assert_eq!(solve_linear_fractional(&coeffs, 1, z).unwrap(), C::new(0.0, 0.0));
        // n = 2 -> b/d = qz
        let f2 = solve_linear_fractional(&coeffs, 2, z).unwrap();
        assert!((f2 - C::new(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn classical_n5_is_four_fifths() {
        let coeffs = classical_coeffs(0.5);
        let f5 = solve_linear_fractional(&coeffs, 5, C::new(1.0, 0.0)).unwrap();
        assert!((f5 - C::new(0.8, 0.0)).norm() < 1e-12, "{f5}");
    }

    #[test]
    fn closed_form_matches_iteration() {
        // random-ish fixed polynomial coefficients, n <= 40
        let coeffs = LfCoefficients {
            a: Polynomial::from_real(&[0.3, -0.2, 0.5]),
            b: Polynomial::from_real(&[0.0, 0.9, -0.1]),
            c: Polynomial::from_real(&[-0.4, 0.25]),
            d: Polynomial::from_real(&[1.1, 0.0, -0.3]),
        };
        for k in 0..24 {
            let z = C::from_polar(0.35 + 0.02 * (k % 5) as f64, 0.26 * k as f64);
            for n in 1..=40u64 {
                let closed = solve_linear_fractional(&coeffs, n, z);
                let naive = lf_iterate(&coeffs, n, z);
                match (closed, naive) {
                    (Ok(x), Ok(y)) => {
                        let scale = 1.0f64.max(y.norm());
                        assert!(
                            (x - y).norm() / scale < 1e-10,
                            "n={n} z={z}: {x} vs {y}"
                        );
                    }
                    // a pole hit by one route may be a near-pole for the other
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn large_n_does_not_overflow() {
        let coeffs = classical_coeffs(0.3);
        let f = solve_linear_fractional(&coeffs, 10_000, C::new(1.0, 0.0)).unwrap();
        // P_n^(1) = q (p^{n-1}-q^{n-1})/(p^n - q^n) -> q/max(p,q) = 1 for q > p
        assert!(f.im.abs() < 1e-12);
        assert!((f.re - 1.0).abs() < 1e-10, "{f}");
    }

    #[test]
    fn r_three_term_recurrence_all_families() {
        let fams: Vec<RSequence<f64>> = vec![
            RSequence::new(RFamily::TwoState {
                coin: CoinSpec::from_a_squared(0.35).unwrap(),
            }),
            RSequence::new(RFamily::Grover3),
            RSequence::new(RFamily::Grover2D { cos_theta: 0.4 }),
        ];
        for fam in &fams {
            for k in 0..12 {
                let z = C::from_polar(0.3 + 0.05 * (k % 4) as f64, 0.5 * k as f64);
                let (s, p) = fam.trace_det(z).unwrap();
                for n in 0..=58u32 {
                    let r0 = fam.r(n, z).unwrap();
                    let r1 = fam.r(n + 1, z).unwrap();
                    let r2 = fam.r(n + 2, z).unwrap();
                    let resid = (r2 - s * r1 + p * r0).norm();
                    let scale = r2.norm().max(r1.norm()).max(1e-300);
                    assert!(
                        resid / scale < 1e-9,
                        "family {:?} n={n} z={z}: rel resid {:e}",
                        fam.family,
                        resid / scale
                    );
                }
            }
        }
    }

    #[test]
    fn two_state_lambda_at_one() {
        let coin = CoinSpec::from_a_squared(0.35).unwrap();
        let fam: RSequence<f64> = RSequence::new(RFamily::TwoState { coin });
        let (lp, lm) = fam.lambdas(C::new(1.0, 0.0)).unwrap();
        let b = 0.65f64.sqrt();
        assert!((lp - C::new(1.0 + b, 0.0)).norm() < 1e-12);
        assert!((lm - C::new(1.0 - b, 0.0)).norm() < 1e-12);
    }
}
