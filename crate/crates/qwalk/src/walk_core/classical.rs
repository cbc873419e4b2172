//! Classical random-walk absorption via an absorbing-Markov-chain solve.

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

/// Probability that a `(p, q)` walk from `m` hits `0` before `n`, solved
/// from the tridiagonal hitting system `h_x = q h_{x-1} + p h_{x+1}` with
/// `h_0 = 1`, `h_n = 0`.
pub fn classical_absorption_finite<T: WalkScalar>(p: T, q: T, m: usize, n: usize) -> Result<T> {
    validate(p, q)?;
    if !(m > 0 && m < n) {
        return Err(Error::Config(format!("need 0 < m < n, got m={m}, n={n}")));
    }
    // Thomas solve of the interior system for x = 1..n-1:
    //   -q h_{x-1} + h_x - p h_{x+1} = 0,  boundary terms move right.
    let dim = n - 1;
    let mut diag = vec![T::one(); dim];
    let mut rhs = vec![T::zero(); dim];
    rhs[0] = q; // h_0 = 1
    // forward elimination of the -q sub-diagonal against the -p super-diagonal
    for i in 1..dim {
        let w = -q / diag[i - 1];
        diag[i] = diag[i] - w * (-p);
        rhs[i] = rhs[i] - w * rhs[i - 1];
    }
    let mut h = vec![T::zero(); dim];
    h[dim - 1] = rhs[dim - 1] / diag[dim - 1];
    for i in (0..dim - 1).rev() {
        h[i] = (rhs[i] + p * h[i + 1]) / diag[i];
    }
    Ok(h[m - 1])
}

/// Absorption probability at `0` for the walk from `m`; `n = None` means
/// semi-infinite, solved by truncation with a growing domain until the
/// value moves by less than `1e-10`.
pub fn classical_absorption<T: WalkScalar>(p: T, q: T, m: usize, n: Option<usize>) -> Result<T> {
    match n {
        Some(n) => classical_absorption_finite(p, q, m, n),
        None => {
            validate(p, q)?;
            if m == 0 {
                return Err(Error::Config("need m >= 1".into()));
            }
            // Truncation error is O(1/domain) in the recurrent regime, so
            // the doubling sequence is Richardson-extrapolated (the p = q
            // truncation value 1 - m/domain is exactly linear in 1/domain;
            // off-symmetry the error is geometric and extrapolation is
            // harmless).
            let mut domain = (4 * m).max(64);
            let mut prev = classical_absorption_finite(p, q, m, domain)?;
            let mut prev_extrap: Option<T> = None;
            loop {
                domain *= 2;
                let cur = classical_absorption_finite(p, q, m, domain)?;
                let two: T = lit(2.0);
                let extrap = two * cur - prev;
                if let Some(pe) = prev_extrap {
                    if (extrap - pe).abs() < lit(1e-10) || domain > 1 << 22 {
                        return Ok(extrap.min(T::one()));
                    }
                }
                prev = cur;
                prev_extrap = Some(extrap);
            }
        }
    }
}
