//! Classical random-walk closed forms and their recurrences.

use crate::error::{Error, Result};
use crate::scalar::{lit, WalkScalar};

fn validate<T: WalkScalar>(p: T, q: T) -> Result<()> {
    if !(p > T::zero() && p < T::one()) {
        return Err(Error::Config(format!("p must lie in (0,1), got {p}")));
    }
    if (p + q - T::one()).abs() > lit(1e-12) {
        return Err(Error::Config(format!("p + q must equal 1, got {}", p + q)));
    }
    Ok(())
}

/// Absorption probability at 0 for the `(p, q)` walk from `m`, boundary at
/// `n` (or semi-infinite): `q^m (p^{n-m} - q^{n-m})/(p^n - q^n)` for
/// `p != q`, `1 - m/n` at `p = q` (the general formula is 0/0 there), and
/// the `min(1, (q/p)^m)` limits in the semi-infinite case.
pub fn classical_closed<T: WalkScalar>(p: T, q: T, m: usize, n: Option<usize>) -> Result<T> {
    validate(p, q)?;
    if m == 0 {
        return Err(Error::Config("need m >= 1".into()));
    }
    match n {
        None => {
            if p <= q {
                Ok(T::one())
            } else {
                Ok((q / p).powi(m as i32))
            }
        }
        Some(n) => {
            if m >= n {
                return Err(Error::Config(format!("need m < n, got m={m}, n={n}")));
            }
            let half: T = lit(0.5);
            if (p - half).abs() < lit(1e-15) {
                return Ok(T::one() - lit::<T>(m as f64) / lit(n as f64));
            }
            // scale by max(p,q)^k to keep the powers bounded
            let big = p.max(q);
            let r = p.min(q) / big;
            let sign = |k: usize| -> T {
                // (p^k - q^k)/big^k = 1 - r^k when p > q, r^k - 1 otherwise
                if p > q {
                    T::one() - r.powi(k as i32)
                } else {
                    r.powi(k as i32) - T::one()
                }
            };
            // q^m (p^{n-m}-q^{n-m})/(p^n-q^n) = q^m big^{-m} sign(n-m)/sign(n)
            let qm = (q / big).powi(m as i32);
            Ok(qm * sign(n - m) / sign(n))
        }
    }
}

/// `lim_{n -> inf} P_n^{(c n)}`: 0 for `p > q`, `1 - c` at `p = q`, 1 for
/// `p < q`.
pub fn classical_ray_limit<T: WalkScalar>(p: T, q: T, c: T) -> Result<T> {
    validate(p, q)?;
    if !(c > T::zero() && c < T::one()) {
        return Err(Error::Config(format!("ray fraction c must lie in (0,1), got {c}")));
    }
    let half: T = lit(0.5);
    if (p - half).abs() < lit(1e-15) {
        Ok(T::one() - c)
    } else if p > q {
        Ok(T::zero())
    } else {
        Ok(T::one())
    }
}

/// Worst-case residuals of the three classical recurrences against the
/// closed form, over `1 <= m <= m_max`, fixed `n`.
#[derive(Debug, Clone, Copy)]
pub struct ClassicalRecurrenceReport<T> {
    /// `P_{n+1}^(1) - q/(1 - p P_n^(1))`
    pub lattice_recurrence: T,
    /// `P_n^(m) - prod_k P_{n-m+k}^(1)`
    pub product_identity: T,
    /// `P_n^(m+2) - (1/p) P_n^(m+1) + (q/p) P_n^(m)`
    pub position_recurrence: T,
}

pub fn classical_recurrence_residuals<T: WalkScalar>(
    p: T,
    q: T,
    n: usize,
    m_max: usize,
) -> Result<ClassicalRecurrenceReport<T>> {
    validate(p, q)?;
    if n < 4 || m_max + 2 >= n {
        return Err(Error::Config(
            "need n >= 4 and m_max + 2 < n for the recurrence residuals".into(),
        ));
    }
    let pn = |m: usize, nn: usize| classical_closed(p, q, m, Some(nn));

    let mut lattice = T::zero();
    for nn in 2..n {
        let lhs = pn(1, nn + 1)?;
        let rhs = q / (T::one() - p * pn(1, nn)?);
        lattice = lattice.max((lhs - rhs).abs());
    }

    let mut product = T::zero();
    let mut position = T::zero();
    for m in 1..=m_max {
        let mut prod = T::one();
        for k in 1..=m {
            prod = prod * pn(1, n - m + k)?;
        }
        product = product.max((pn(m, n)? - prod).abs());
        let resid = pn(m + 2, n)? - pn(m + 1, n)? / p + (q / p) * pn(m, n)?;
        position = position.max(resid.abs());
    }

    Ok(ClassicalRecurrenceReport {
        lattice_recurrence: lattice,
        product_identity: product,
        position_recurrence: position,
    })
}
