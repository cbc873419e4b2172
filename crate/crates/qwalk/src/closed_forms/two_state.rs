//! Two-state walk closed forms: the semi-infinite constant, the finite
//! `R_n/B_n` machinery, limits, conservation, and recurrences.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, WalkScalar};
use crate::walk_core::CoinSpec;

use super::query::{AbsorptionQuery, WalkFamily};

/// One `(R_n, B_n)` pair at `z = 1`:
/// `R_n = (1+x)^n - (1-x)^n`, `B_n = (1+x)^n + (1-x)^n`, `x = |b|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RbPair<T> {
    pub r: T,
    pub b: T,
    pub x: T,
    pub n: u32,
}

/// Generator for `R_n`/`B_n` values and the overflow-free scaled ratios
/// `R_n/(1+x)^n = 1 - rho^n`, `B_n/(1+x)^n = 1 + rho^n` with
/// `rho = (1-x)/(1+x)`.
#[derive(Debug, Clone, Copy)]
pub struct RbSequence<T> {
    x: T,
    rho: T,
}

impl<T: WalkScalar> RbSequence<T> {
    pub fn new(x: T) -> Result<Self> {
        if !(x > T::zero() && x <= T::one()) {
            return Err(Error::Config(format!("need 0 < |b| <= 1, got {x}")));
        }
        Ok(RbSequence {
            x,
            rho: (T::one() - x) / (T::one() + x),
        })
    }

    pub fn x(&self) -> T {
        self.x
    }

    pub fn rho(&self) -> T {
        self.rho
    }

    /// Unscaled pair; overflows for large `n`, fine for the identity tests.
    pub fn pair(&self, n: u32) -> RbPair<T> {
        let up = (T::one() + self.x).powi(n as i32);
        let dn = (T::one() - self.x).powi(n as i32);
        RbPair {
            r: up - dn,
            b: up + dn,
            x: self.x,
            n,
        }
    }

    /// `R_n / (1+x)^n`.
    pub fn r_scaled(&self, n: u32) -> T {
        T::one() - self.rho.powi(n as i32)
    }

    /// `B_n / (1+x)^n`.
    pub fn b_scaled(&self, n: u32) -> T {
        T::one() + self.rho.powi(n as i32)
    }
}

/// Degeneracies of the semi-infinite closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degeneracy {
    /// `b = 0`: the walker never turns around, never absorbed.
    NeverAbsorbed,
    /// `a = 0`: absorbed on the first step with certainty.
    ImmediatelyAbsorbed,
}

/// `P_inf^(1)(1,0)` with degeneracy flag.
#[derive(Debug, Clone, Copy)]
pub struct SemiClosed<T> {
    pub value: T,
    pub degenerate: Option<Degeneracy>,
}

/// `P_inf^(1)(1,0) = (2 / pi |b|^2) [ (|b|^2 - |a|^2) arccos|a| + |a||b| ]`.
///
/// The equivalent trigonometric form (with `|a| = cos phi`) is
/// `(sin 2phi - 2 phi cos 2phi) / (pi sin^2 phi)`; both are evaluated and
/// cross-asserted by the tests. (The printed trigonometric form carries a
/// sign typo on the `2 phi cos 2phi` term; the corrected sign is fixed by
/// equality with the arccos form and by the simulation oracle.)
pub fn two_state_semi_closed<T: WalkScalar>(coin: &CoinSpec<T>) -> Result<SemiClosed<T>> {
    let (a, b) = match coin {
        CoinSpec::TwoState { a, b } => (a.norm(), b.norm()),
        other => {
            return Err(Error::Config(format!(
                "expected a two-state coin, got {other:?}"
            )))
        }
    };
    if b < lit(1e-15) {
        return Ok(SemiClosed {
            value: T::zero(),
            degenerate: Some(Degeneracy::NeverAbsorbed),
        });
    }
    if a < lit(1e-15) {
        return Ok(SemiClosed {
            value: T::one(),
            degenerate: Some(Degeneracy::ImmediatelyAbsorbed),
        });
    }
    let two: T = lit(2.0);
    let value = two / (T::PI() * b * b) * ((b * b - a * a) * a.acos() + a * b);
    Ok(SemiClosed {
        value,
        degenerate: None,
    })
}

/// The trigonometric form of `P_inf^(1)(1,0)` with `|a| = cos(phi)`,
/// `(sin 2phi - 2 phi cos 2phi)/(pi sin^2 phi)` (sign fixed by equality
/// with the arccos form).
pub fn two_state_semi_closed_trig<T: WalkScalar>(a_abs: T) -> T {
    let phi = a_abs.acos();
    let two: T = lit(2.0);
    ((two * phi).sin() - two * phi * (two * phi).cos()) / (T::PI() * phi.sin() * phi.sin())
}

/// All components of the finite absorption probability at `(m, n)`.
#[derive(Debug, Clone, Copy)]
pub struct FiniteComponents<T> {
    /// Combined `P_n^(m)(alpha, beta)`.
    pub p_left: T,
    /// `P_n^(m)(1, 0) = (|b|/2) R_{n-m} B_{m-1} / B_{n-1}`.
    pub p10: T,
    /// `P_n^(m)(0, 1) = (1/2)(R_{n-m-1} R_m + |a|^2 B_{n-m-1} B_{m-1}) / B_{n-1}`.
    pub p01: T,
    /// Cross term `H_n^(m) = -(a conj b / 2) B_{n-m-1} B_{m-1} / B_{n-1}`;
    /// the 1/2 normalization is the oracle-resolved one.
    pub h: Complex<T>,
}

fn coin_entries<T: WalkScalar>(coin: &CoinSpec<T>) -> Result<(Complex<T>, Complex<T>)> {
    match coin {
        CoinSpec::TwoState { a, b } => Ok((*a, *b)),
        other => Err(Error::Config(format!(
            "expected a two-state coin, got {other:?}"
        ))),
    }
}

/// Closed-form finite components, evaluated on scaled ratios so `n` may
/// reach the thousands without overflow.
pub fn two_state_finite_closed<T: WalkScalar>(
    query: &AbsorptionQuery<T>,
) -> Result<FiniteComponents<T>> {
    if query.family != WalkFamily::TwoState {
        return Err(Error::Config("query is not a two-state walk".into()));
    }
    let n = query
        .n
        .ok_or_else(|| Error::Config("finite closed form needs n".into()))?;
    let m = query.m;
    let (a, b) = coin_entries(&query.coin)?;
    let x = b.norm();
    if x < lit(1e-15) {
        return Err(Error::DegenerateCoin(
            "finite closed forms need |b| > 0".into(),
        ));
    }
    let seq = RbSequence::new(x)?;
    let half: T = lit(0.5);
    // exponents in each ratio cancel: (1+x)^{(n-m)+(m-1)-(n-1)} = 1, etc.
    let b_n1 = seq.b_scaled(n - 1);
    let p10 = half * x * seq.r_scaled(n - m) * seq.b_scaled(m - 1) / b_n1;
    let p01 = {
        // R_{n-m-1} R_m / B_{n-1} carries (1+x)^{n-1} exactly;
        // B_{n-m-1} B_{m-1} / B_{n-1} carries (1+x)^{n-2}, one power short.
        let t1 = seq.r_scaled(n - m - 1) * seq.r_scaled(m) / b_n1;
        let t2 = a.norm_sqr() * seq.b_scaled(n - m - 1) * seq.b_scaled(m - 1)
            / (b_n1 * (T::one() + x));
        half * (t1 + t2)
    };
    let w_scaled = seq.b_scaled(n - m - 1) * seq.b_scaled(m - 1) / (b_n1 * (T::one() + x));
    let h = -(a * b.conj()).scale(half * w_scaled);
    let (alpha, beta) = query.two_state_amps();
    let cross = (alpha * beta.conj() * h).re;
    let p_left = alpha.norm_sqr() * p10 + beta.norm_sqr() * p01 + cross + cross;
    Ok(FiniteComponents {
        p_left,
        p10,
        p01,
        h,
    })
}

/// `lim_{n->inf} P_n^(m)(1,0) = (|b|/2)[1 + ((1-|b|)/(1+|b|))^{m-1}]`.
pub fn two_state_limit_fixed_m<T: WalkScalar>(coin: &CoinSpec<T>, m: u32) -> Result<T> {
    let (_, b) = coin_entries(coin)?;
    let x = b.norm();
    let seq = RbSequence::new(x)?;
    let half: T = lit(0.5);
    Ok(half * x * (T::one() + seq.rho().powi((m - 1) as i32)))
}

/// `lim_{n->inf} P_n^(cn)(1,0) = |b|/2`, independent of the ray.
pub fn two_state_limit_ray<T: WalkScalar>(coin: &CoinSpec<T>) -> Result<T> {
    let (_, b) = coin_entries(coin)?;
    Ok(lit::<T>(0.5) * b.norm())
}

/// Left/right split of the conservation identity: `left` is
/// `P_n^(m)(alpha, beta; a, b)`, `right` the swapped-query probability
/// `P_n^(n-m)(beta, alpha; conj a, -conj b)`; their sum is exactly 1.
#[derive(Debug, Clone, Copy)]
pub struct ConservationSplit<T> {
    pub left: T,
    pub right: T,
    pub sum: T,
}

pub fn two_state_conservation<T: WalkScalar>(
    query: &AbsorptionQuery<T>,
) -> Result<ConservationSplit<T>> {
    let left = two_state_finite_closed(query)?.p_left;
    let n = query.n.expect("finite query checked above");
    let (a, b) = coin_entries(&query.coin)?;
    let (alpha, beta) = query.two_state_amps();
    let swapped = AbsorptionQuery::new(
        WalkFamily::TwoState,
        CoinSpec::two_state(a.conj(), -b.conj())?,
        n - query.m,
        Some(n),
        vec![beta, alpha],
    )?;
    let right = two_state_finite_closed(&swapped)?.p_left;
    Ok(ConservationSplit {
        left,
        right,
        sum: left + right,
    })
}

/// `P_n^(1)(alpha, beta) = 1 - |a alpha + b beta|^2 / |a|^2 (1 - P_n^(1)(1,0))`.
pub fn eq39_probability<T: WalkScalar>(
    coin: &CoinSpec<T>,
    alpha: Complex<T>,
    beta: Complex<T>,
    p_n1_10: T,
) -> Result<T> {
    let (a, b) = coin_entries(coin)?;
    if a.norm() < lit(1e-15) {
        return Err(Error::DegenerateCoin("relation divides by |a|^2".into()));
    }
    let w = (a * alpha + b * beta).norm_sqr() / a.norm_sqr();
    Ok(T::one() - w * (T::one() - p_n1_10))
}

/// Residual report for the two-state recurrences.
#[derive(Debug, Clone, Copy)]
pub struct TwoStateRecurrenceReport<T> {
    /// Worst `|P_{n+1} - (|b|^2 + P_n)/(1 + P_n)|` (corrected form).
    pub corrected_lattice: T,
    /// Worst deviation of the printed form
    /// `P_{n+1} = (|b| + P_n)/(1 + P_n)` — expected to be large.
    pub printed_lattice: T,
    /// Worst relative residual of the third-order position recurrence with
    /// coefficient `4/|a|^2 - 1`.
    pub position: T,
    /// Worst deviation between the linear relation for `P_n^(1)(alpha,beta)`
    /// and the component combination.
    pub linear_relation: T,
}

/// Evaluates the recurrence residuals against the closed form over
/// `2 <= n <= n_max` (lattice recurrences, m = 1) and
/// `1 <= m <= m_max` at fixed `n_pos` (position recurrence), with a fixed
/// sample of internal states for the linear relation.
pub fn two_state_recurrences<T: WalkScalar>(
    coin: &CoinSpec<T>,
    n_max: u32,
    n_pos: u32,
    m_max: u32,
) -> Result<TwoStateRecurrenceReport<T>> {
    if n_max < 3 || n_pos < 5 || m_max + 3 > n_pos - 1 {
        return Err(Error::Config(
            "need n_max >= 3, n_pos >= 5, m_max + 3 <= n_pos - 1".into(),
        ));
    }
    let (a, b) = coin_entries(coin)?;
    let x = b.norm();
    let p10 = |m: u32, n: u32| -> Result<T> {
        let q = AbsorptionQuery::new(
            WalkFamily::TwoState,
            coin.clone(),
            m,
            Some(n),
            vec![
                Complex::new(T::one(), T::zero()),
                Complex::new(T::zero(), T::zero()),
            ],
        )?;
        Ok(two_state_finite_closed(&q)?.p10)
    };

    let mut corrected = T::zero();
    let mut printed = T::zero();
    for n in 2..n_max {
        let cur = p10(1, n)?;
        let next = p10(1, n + 1)?;
        corrected = corrected.max((next - (x * x + cur) / (T::one() + cur)).abs());
        printed = printed.max((next - (x + cur) / (T::one() + cur)).abs());
    }

    let coef = lit::<T>(4.0) / a.norm_sqr() - T::one();
    let mut position = T::zero();
    for m in 1..=m_max {
        let p0 = p10(m, n_pos)?;
        let p1 = p10(m + 1, n_pos)?;
        let p2 = p10(m + 2, n_pos)?;
        let p3 = p10(m + 3, n_pos)?;
        let resid = (p3 - coef * p2 + coef * p1 - p0).abs();
        let scale = p3.abs().max(coef * p2.abs()).max(T::one());
        position = position.max(resid / scale);
    }

    // Eq-39 linear relation vs component combination at n = n_pos, m = 1,
    // over a deterministic grid of internal states.
    let mut linear = T::zero();
    let p_ref = p10(1, n_pos)?;
    for k in 0..20u32 {
        let t: T = lit::<T>(0.1) + lit::<T>(0.04) * lit::<T>(k as f64);
        let phase: T = lit::<T>(0.37) * lit::<T>(k as f64);
        let alpha = Complex::from_polar(t.cos(), phase);
        let beta = Complex::from_polar(t.sin(), -phase * lit(0.5));
        let q = AbsorptionQuery::new(
            WalkFamily::TwoState,
            coin.clone(),
            1,
            Some(n_pos),
            vec![alpha, beta],
        )?;
        let combo = two_state_finite_closed(&q)?.p_left;
        let lin = eq39_probability(coin, alpha, beta, p_ref)?;
        linear = linear.max((combo - lin).abs());
    }

    Ok(TwoStateRecurrenceReport {
        corrected_lattice: corrected,
        printed_lattice: printed,
        position,
        linear_relation: linear,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn q10(coin: &CoinSpec<f64>, m: u32, n: u32) -> AbsorptionQuery<f64> {
        AbsorptionQuery::new(
            WalkFamily::TwoState,
            coin.clone(),
            m,
            Some(n),
            vec![C::new(1.0, 0.0), C::new(0.0, 0.0)],
        )
        .unwrap()
    }

    #[test]
    fn index_reduction_identities_exact() {
        // R_n = R_{n-1} + x B_{n-1}, B_n = B_{n-1} + x R_{n-1}
        let seq = RbSequence::new(1.0 / 2f64.sqrt()).unwrap();
        for n in 1..=30u32 {
            let cur = seq.pair(n);
            let prev = seq.pair(n - 1);
            assert!((cur.r - (prev.r + cur.x * prev.b)).abs() < 1e-12 * cur.b.abs());
            assert!((cur.b - (prev.b + cur.x * prev.r)).abs() < 1e-12 * cur.b.abs());
        }
    }

    #[test]
    fn semi_closed_hadamard_is_two_over_pi() {
        let v = two_state_semi_closed(&CoinSpec::<f64>::hadamard()).unwrap();
        assert!(v.degenerate.is_none());
        assert!((v.value - 2.0 / std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn semi_closed_degenerate_flags() {
        let never = CoinSpec::two_state(C::new(1.0, 0.0), C::new(0.0, 0.0)).unwrap();
        let v = two_state_semi_closed(&never).unwrap();
        assert_eq!(v.degenerate, Some(Degeneracy::NeverAbsorbed));
        assert_eq!(v.value, 0.0);
        let always = CoinSpec::two_state(C::new(0.0, 0.0), C::new(1.0, 0.0)).unwrap();
        let v = two_state_semi_closed(&always).unwrap();
        assert_eq!(v.degenerate, Some(Degeneracy::ImmediatelyAbsorbed));
        assert_eq!(v.value, 1.0);
    }

    #[test]
    fn trig_form_matches_arccos_form() {
        for a2 in [0.1f64, 0.2, 0.35, 0.5, 0.65, 0.8, 0.9] {
            let coin = CoinSpec::from_a_squared(a2).unwrap();
            let v = two_state_semi_closed(&coin).unwrap().value;
            let t = two_state_semi_closed_trig(a2.sqrt());
            assert!((v - t).abs() < 1e-12, "a2={a2}: {v} vs {t}");
        }
    }

    #[test]
    fn finite_small_cases() {
        let coin = CoinSpec::hadamard();
        // m=1, n=2: R_1 B_0 / B_1 scaled -> x^2 = 1/2
        let c = two_state_finite_closed(&q10(&coin, 1, 2)).unwrap();
        assert!((c.p10 - 0.5).abs() < 1e-15);
        // m=1, n=3 -> 2/3
        let c = two_state_finite_closed(&q10(&coin, 1, 3)).unwrap();
        assert!((c.p10 - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn finite_large_n_limit() {
        // n = 4000 evaluation must not overflow and must sit within 1e-4 of
        // the m=1 limit |b| = 1/sqrt2
        let coin = CoinSpec::hadamard();
        let c = two_state_finite_closed(&q10(&coin, 1, 4000)).unwrap();
        assert!((c.p10 - 1.0 / 2f64.sqrt()).abs() < 1e-4);
    }

    #[test]
    fn limits_fixed_m_and_ray() {
        let coin = CoinSpec::<f64>::hadamard();
        // m=1: the bracket equals 2, value |b|
        let v = two_state_limit_fixed_m(&coin, 1).unwrap();
        assert!((v - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        // m large approaches |b|/2, the ray value
        let v = two_state_limit_fixed_m(&coin, 200).unwrap();
        let ray = two_state_limit_ray(&coin).unwrap();
        assert!((v - ray).abs() < 1e-15);
        // Hadamard m=2 against the n=4000 closed form within 1e-4
        let v2 = two_state_limit_fixed_m(&coin, 2).unwrap();
        let big = two_state_finite_closed(&q10(&coin, 2, 4000)).unwrap().p10;
        assert!((v2 - big).abs() < 1e-4, "{v2} vs {big}");
        let expect = (1.0 + (2f64.sqrt() - 1.0) / (2f64.sqrt() + 1.0)) / (2.0 * 2f64.sqrt());
        assert!((v2 - expect).abs() < 1e-15);
    }

    #[test]
    fn conservation_grid_exact() {
        let mut cases = 0;
        for a2 in [0.2, 0.35, 0.5, 0.65, 0.8] {
            let coin = CoinSpec::from_a_squared(a2).unwrap();
            for (k, (m, n)) in [(1u32, 2u32), (1, 5), (2, 5), (3, 7), (4, 9), (5, 11)]
                .iter()
                .enumerate()
            {
                let t = 0.2 + 0.11 * (k as f64 + 1.0);
                let alpha = C::from_polar(t.cos(), 0.3 * k as f64);
                let beta = C::from_polar(t.sin(), -0.7 * k as f64);
                let q = AbsorptionQuery::new(
                    WalkFamily::TwoState,
                    coin.clone(),
                    *m,
                    Some(*n),
                    vec![alpha, beta],
                )
                .unwrap();
                let split = two_state_conservation(&q).unwrap();
                assert!(
                    (split.sum - 1.0).abs() < 1e-12,
                    "a2={a2} m={m} n={n}: sum {}",
                    split.sum
                );
                cases += 1;
            }
        }
        assert!(cases >= 30);
    }

    #[test]
    fn conservation_two_site_symmetric() {
        let coin = CoinSpec::hadamard();
        let q = q10(&coin, 1, 2);
        let split = two_state_conservation(&q).unwrap();
        assert!((split.left - 0.5).abs() < 1e-15);
        assert!((split.right - 0.5).abs() < 1e-15);
    }

    #[test]
    fn recurrences_corrected_passes_printed_fails() {
        let coin = CoinSpec::<f64>::hadamard();
        let rep = two_state_recurrences(&coin, 50, 20, 16).unwrap();
        assert!(rep.corrected_lattice < 1e-12, "{:e}", rep.corrected_lattice);
        assert!(rep.printed_lattice > 0.05, "{:e}", rep.printed_lattice);
        assert!(rep.position < 1e-10, "{:e}", rep.position);
        assert!(rep.linear_relation < 1e-12, "{:e}", rep.linear_relation);
    }

    #[test]
    fn printed_lattice_recurrence_fails_at_hadamard_n3() {
        // printed form from P_2 = 1/2 gives ~0.80474, Thm 4.2 says 2/3
        let x = 1.0 / 2f64.sqrt();
        let printed = (x + 0.5) / 1.5;
        assert!((printed - 0.804_738).abs() < 1e-5);
        let coin = CoinSpec::hadamard();
        let p3 = two_state_finite_closed(&q10(&coin, 1, 3)).unwrap().p10;
        assert!((printed - p3).abs() > 0.1);
    }

    #[test]
    fn phase_invariance_of_closed_forms() {
        // multiplying a or b by a unit phase leaves every probability
        // unchanged (they depend on |a|, |b| only)
        let base = CoinSpec::two_state_real(0.35f64.sqrt(), 0.65f64.sqrt()).unwrap();
        let reference = two_state_finite_closed(&q10(&base, 2, 7)).unwrap();
        let ref_semi = two_state_semi_closed(&base).unwrap().value;
        for k in 1..=8 {
            let phi = 0.7853981633974483 * k as f64; // pi/4 steps
            let (a, b) = match &base {
                CoinSpec::TwoState { a, b } => (*a, *b),
                _ => unreachable!(),
            };
            let coin = CoinSpec::two_state(a * C::from_polar(1.0, phi), b).unwrap();
            let got = two_state_finite_closed(&q10(&coin, 2, 7)).unwrap();
            let ulp = 4.0 * f64::EPSILON;
            assert!((got.p10 - reference.p10).abs() <= ulp);
            assert!((got.p01 - reference.p01).abs() <= ulp);
            assert!((got.h.norm() - reference.h.norm()).abs() <= ulp);
            let semi = two_state_semi_closed(&coin).unwrap().value;
            assert!((semi - ref_semi).abs() <= ulp);

            let coin_b = CoinSpec::two_state(a, b * C::from_polar(1.0, phi)).unwrap();
            let got_b = two_state_finite_closed(&q10(&coin_b, 2, 7)).unwrap();
            assert!((got_b.p10 - reference.p10).abs() <= ulp);
            assert!((got_b.p01 - reference.p01).abs() <= ulp);
        }
    }

    #[test]
    fn probabilities_stay_in_unit_interval() {
        for a2 in [0.2, 0.35, 0.5, 0.65, 0.8] {
            let coin = CoinSpec::from_a_squared(a2).unwrap();
            for n in 2..=40u32 {
                for m in 1..n {
                    let c = two_state_finite_closed(&q10(&coin, m, n)).unwrap();
                    for v in [c.p_left, c.p10, c.p01] {
                        assert!((0.0..=1.0 + 1e-12).contains(&v), "a2={a2} m={m} n={n}: {v}");
                    }
                }
            }
        }
    }
}
