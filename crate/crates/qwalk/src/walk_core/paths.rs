//! Path-sum evaluation of arrival amplitudes.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::WalkScalar;

use super::coin::{CoinMatrix, CoinSpec, DirectionSet};
use super::state::AbsorberSet;

const PATH_BUDGET: f64 = 1e8;

/// Sums `A(gamma) = prod_k U(sigma_{k-1}, sigma_k)` over all `t`-paths from
/// `initial` to `target` whose intermediate positions (steps `1..t-1`)
/// avoid the absorbers. This is the arrival amplitude
/// `<target| Q (Pi_no Q)^{t-1} |initial>`; when the target is not an
/// absorber it coincides with the fully projected matrix element.
pub fn brute_force_amplitude<T: WalkScalar>(
    initial: (&[i64], u8),
    target: (&[i64], u8),
    coin: &CoinSpec<T>,
    dirs: &DirectionSet,
    absorbers: Option<&AbsorberSet>,
    t: u32,
) -> Result<Complex<T>> {
    if coin.dimension() != dirs.len() {
        return Err(Error::ArityMismatch {
            coin: coin.dimension(),
            dirs: dirs.len(),
        });
    }
    if t == 0 {
        return Err(Error::Config("path length t must be at least 1".into()));
    }
    let paths = (dirs.len() as f64).powi(t as i32);
    if paths > PATH_BUDGET {
        return Err(Error::EnumerationBudget {
            paths,
            limit: PATH_BUDGET,
        });
    }
    if let Some(b) = absorbers {
        if b.key_of(initial.0).is_some() {
            return Err(Error::Config(
                "initial position must lie strictly outside the absorber set".into(),
            ));
        }
    }

    let matrix = coin.matrix();
    let mut ctx = Dfs {
        matrix: &matrix,
        dirs,
        absorbers,
        target_pos: target.0,
        target_dir: target.1 as usize,
        t,
        acc: Complex::new(T::zero(), T::zero()),
    };
    let mut pos = initial.0.to_vec();
    ctx.descend(
        &mut pos,
        initial.1 as usize,
        1,
        Complex::new(T::one(), T::zero()),
    );
    Ok(ctx.acc)
}

struct Dfs<'a, T: WalkScalar> {
    matrix: &'a CoinMatrix<T>,
    dirs: &'a DirectionSet,
    absorbers: Option<&'a AbsorberSet>,
    target_pos: &'a [i64],
    target_dir: usize,
    t: u32,
    acc: Complex<T>,
}

impl<T: WalkScalar> Dfs<'_, T> {
    fn descend(&mut self, pos: &mut Vec<i64>, dir: usize, k: u32, amp: Complex<T>) {
        let last = k == self.t;
        for next in 0..self.dirs.len() {
            let w = self.matrix.entry(next, dir);
            if w.norm_sqr() == T::zero() {
                continue;
            }
            for (coord, delta) in pos.iter_mut().zip(self.dirs.vector(next)) {
                *coord += delta;
            }
            if last {
                if next == self.target_dir && pos.as_slice() == self.target_pos {
                    self.acc = self.acc + amp * w;
                }
            } else {
                let blocked = self
                    .absorbers
                    .map(|b| b.key_of(pos).is_some())
                    .unwrap_or(false);
                if !blocked {
                    self.descend(pos, next, k + 1, amp * w);
                }
            }
            for (coord, delta) in pos.iter_mut().zip(self.dirs.vector(next)) {
                *coord -= delta;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk_core::{absorb_measure, step, WalkState};

    #[test]
    fn single_path_amplitude() {
        // t=1, Hadamard, |1>|R> -> |0>|L>, no absorbers: the only path is
        // R -> L with amplitude -1/sqrt2.
        let coin: CoinSpec<f64> = CoinSpec::hadamard();
        let dirs = coin.directions();
        let amp = brute_force_amplitude((&[1], 0), (&[0], 1), &coin, &dirs, None, 1).unwrap();
        assert!((amp.re + 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!(amp.im.abs() < 1e-15);
    }

    #[test]
    fn budget_guard_triggers() {
        let coin: CoinSpec<f64> = CoinSpec::grover_d(3).unwrap();
        let dirs = coin.directions();
        let err =
            brute_force_amplitude((&[1, 0, 0], 0), (&[0, 0, 0], 1), &coin, &dirs, None, 12)
                .unwrap_err();
        assert!(matches!(err, Error::EnumerationBudget { .. }));
    }

    #[test]
    fn frozen_t3_boundary_value() {
        // t=3, Hadamard, |1>|R> -> |0>|L>, boundary at 0. Exhaustive hand
        // enumeration: the only surviving path is R->R->L->L with amplitude
        // a * (-conj(b)) * conj(a) = -1/(2 sqrt 2); the R->L->... paths die
        // at the boundary after step one.
        let coin: CoinSpec<f64> = CoinSpec::hadamard();
        let dirs = coin.directions();
        let absorbers = AbsorberSet::points([0]).unwrap();
        let amp =
            brute_force_amplitude((&[1], 0), (&[0], 1), &coin, &dirs, Some(&absorbers), 3)
                .unwrap();
        assert!((amp.re - (-1.0 / (2.0 * 2f64.sqrt()))).abs() < 1e-15);
        assert!(amp.im.abs() < 1e-15);
    }

    /// Evolved arrival amplitude via step/absorb iteration, for the oracle
    /// equality tests.
    fn evolved_amplitude(
        initial: (&[i64], u8),
        target: (&[i64], u8),
        coin: &CoinSpec<f64>,
        absorbers: Option<&AbsorberSet>,
        t: u32,
    ) -> Complex<f64> {
        let dirs = coin.directions();
        let mut state = WalkState::point(initial.0.to_vec(), initial.1);
        for k in 1..=t {
            state = step(&state, coin, &dirs).unwrap();
            if k == t {
                break;
            }
            if let Some(b) = absorbers {
                let (next, _) = absorb_measure(&state, b);
                state = next;
            }
        }
        state.amplitude(target.0, target.1)
    }

    #[test]
    fn oracle_equality_all_families() {
        let coins: Vec<(CoinSpec<f64>, Vec<i64>, Vec<i64>)> = vec![
            (CoinSpec::hadamard(), vec![2], vec![0]),
            (CoinSpec::from_a_squared(0.2).unwrap(), vec![2], vec![0]),
            (CoinSpec::from_a_squared(0.35).unwrap(), vec![3], vec![1]),
            (CoinSpec::from_a_squared(0.65).unwrap(), vec![2], vec![2]),
            (CoinSpec::from_a_squared(0.8).unwrap(), vec![2], vec![0]),
            (CoinSpec::Grover3, vec![2], vec![0]),
            (CoinSpec::grover_d(2).unwrap(), vec![2, 0], vec![0, 1]),
        ];
        for (coin, start, tgt) in coins {
            let dirs = coin.directions();
            let absorbers = if start.len() == 1 {
                AbsorberSet::points([0]).unwrap()
            } else {
                AbsorberSet::walls([0]).unwrap()
            };
            let tmax = if dirs.len() >= 4 { 8 } else { 10 };
            for t in 1..=tmax {
                let bf = brute_force_amplitude(
                    (&start, 0),
                    (&tgt, (dirs.len() - 1) as u8),
                    &coin,
                    &dirs,
                    Some(&absorbers),
                    t,
                )
                .unwrap();
                let ev = evolved_amplitude(
                    (&start, 0),
                    (&tgt, (dirs.len() - 1) as u8),
                    &coin,
                    Some(&absorbers),
                    t,
                );
                assert!(
                    (bf - ev).norm() < 1e-12,
                    "coin {coin:?} t={t}: {bf} vs {ev}"
                );
            }
        }
    }
}
