//! Coin-shift stepping, measurement, and absorbing runs.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::WalkScalar;

use super::coin::{CoinMatrix, CoinSpec, DirectionSet};
use super::state::{zero_masses, AbsorberSet, WalkState};

/// Which of the three computation routes produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Simulation,
    Hadamard,
    ClosedForm,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::Simulation => "simulation",
            Method::Hadamard => "hadamard",
            Method::ClosedForm => "closed-form",
        }
    }
}

/// Absorption probability estimate plus convergence metadata.
#[derive(Debug, Clone)]
pub struct AbsorptionReport<T: WalkScalar> {
    /// Total mass absorbed at tracked absorbers.
    pub probability: T,
    /// Per-step tracked mass, `(t, mass at each tracked absorber)`.
    pub per_step_mass: Vec<(u32, BTreeMap<i64, T>)>,
    pub steps_run: u32,
    /// Squared norm still unabsorbed when the run stopped.
    pub residual_mass: T,
    /// Mass absorbed at absorbers outside the tracked set.
    pub untracked_mass: T,
    pub method: Method,
}

impl<T: WalkScalar> AbsorptionReport<T> {
    /// `probability + residual + untracked` — equals 1 within 1e-9 for any
    /// run whose initial state was normalized.
    pub fn accounted_mass(&self) -> T {
        self.probability + self.residual_mass + self.untracked_mass
    }
}

/// One application of the walk operator `Q = T (I (x) U)`.
///
/// Output amplitude at `(g + move(to), to)` accumulates
/// `M[to][from] * amp(g, from)`; the squared norm is preserved to within
/// rounding.
pub fn step<T: WalkScalar>(
    state: &WalkState<T>,
    coin: &CoinSpec<T>,
    dirs: &DirectionSet,
) -> Result<WalkState<T>> {
    if coin.dimension() != dirs.len() {
        return Err(Error::ArityMismatch {
            coin: coin.dimension(),
            dirs: dirs.len(),
        });
    }
    let matrix = coin.matrix();
    Ok(step_with(state, &matrix, dirs))
}

pub(crate) fn step_with<T: WalkScalar>(
    state: &WalkState<T>,
    matrix: &CoinMatrix<T>,
    dirs: &DirectionSet,
) -> WalkState<T> {
    let mut out: HashMap<(Vec<i64>, u8), Complex<T>> =
        HashMap::with_capacity(state.support_len() * dirs.len());
    let zero = Complex::new(T::zero(), T::zero());
    for ((pos, from), amp) in state.iter() {
        for to in 0..dirs.len() {
            let w = matrix.entry(to, *from as usize);
            if w == zero {
                continue;
            }
            let mut new_pos = pos.clone();
            for (coord, delta) in new_pos.iter_mut().zip(dirs.vector(to)) {
                *coord += delta;
            }
            let slot = out.entry((new_pos, to as u8)).or_insert(zero);
            *slot = *slot + w * *amp;
        }
    }
    WalkState::from_map(out)
}

/// Projective measurement at the absorbers: removes all amplitude sitting
/// on absorber positions and reports the squared modulus per absorber.
pub fn absorb_measure<T: WalkScalar>(
    state: &WalkState<T>,
    absorbers: &AbsorberSet,
) -> (WalkState<T>, BTreeMap<i64, T>) {
    let mut masses = zero_masses(absorbers);
    let mut keep = HashMap::with_capacity(state.support_len());
    for ((pos, dir), amp) in state.iter() {
        match absorbers.key_of(pos) {
            Some(key) => {
                let m = masses.get_mut(&key).expect("key from absorber set");
                *m = *m + amp.norm_sqr();
            }
            None => {
                keep.insert((pos.clone(), *dir), *amp);
            }
        }
    }
    (WalkState::from_map(keep), masses)
}

/// Budgets for an absorbing run.
#[derive(Debug, Clone, Copy)]
pub struct RunSpec<T> {
    pub max_steps: u32,
    pub residual_tol: T,
}

/// Alternates `step` and `absorb_measure`, accumulating tracked mass.
///
/// Stops at `max_steps` or as soon as the remaining squared norm drops
/// below `residual_tol`. Non-convergence is not an error; it is visible in
/// `residual_mass`.
pub fn run_absorbing<T: WalkScalar>(
    initial: &WalkState<T>,
    coin: &CoinSpec<T>,
    dirs: &DirectionSet,
    absorbers: &AbsorberSet,
    tracked: &BTreeSet<i64>,
    spec: RunSpec<T>,
) -> Result<AbsorptionReport<T>> {
    if spec.max_steps == 0 {
        return Err(Error::Config("max_steps must be at least 1".into()));
    }
    if !(spec.residual_tol > T::zero()) {
        return Err(Error::Config("residual_tol must be positive".into()));
    }
    if coin.dimension() != dirs.len() {
        return Err(Error::ArityMismatch {
            coin: coin.dimension(),
            dirs: dirs.len(),
        });
    }
    for key in tracked {
        if !absorbers.keys().contains(key) {
            return Err(Error::Config(format!(
                "tracked absorber {key} is not in the absorber set"
            )));
        }
    }

    let matrix = coin.matrix();
    let mut state = initial.clone();
    let mut probability = T::zero();
    let mut untracked = T::zero();
    let mut per_step = Vec::new();
    let mut residual = state.norm_sqr();
    let mut steps_run = 0;

    for t in 1..=spec.max_steps {
        state = step_with(&state, &matrix, dirs);
        let (next, masses) = absorb_measure(&state, absorbers);
        state = next;
        let mut tracked_masses = BTreeMap::new();
        for (key, mass) in masses {
            if tracked.contains(&key) {
                probability = probability + mass;
                tracked_masses.insert(key, mass);
            } else {
                untracked = untracked + mass;
            }
        }
        per_step.push((t, tracked_masses));
        steps_run = t;
        residual = state.norm_sqr();
        if residual < spec.residual_tol {
            break;
        }
    }

    Ok(AbsorptionReport {
        probability,
        per_step_mass: per_step,
        steps_run,
        residual_mass: residual,
        untracked_mass: untracked,
        method: Method::Simulation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::as_f64;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn hadamard_step_from_one_r() {
        // |1>|R> -> (1/sqrt2)|2>|R> - (1/sqrt2)|0>|L>
        let coin = CoinSpec::<f64>::hadamard();
        let dirs = coin.directions();
        let state = WalkState::point(vec![1], 0);
        let out = step(&state, &coin, &dirs).unwrap();
        let h = 1.0 / 2f64.sqrt();
        assert!((out.amplitude(&[2], 0) - c(h, 0.0)).norm() < 1e-15);
        assert!((out.amplitude(&[0], 1) - c(-h, 0.0)).norm() < 1e-15);
        assert_eq!(out.support_len(), 2);
    }

    #[test]
    fn grover3_step_from_stay() {
        // |0>|S> -> (2/3)|1>|R> - (1/3)|0>|S> + (2/3)|-1>|L>
        let coin: CoinSpec<f64> = CoinSpec::Grover3;
        let dirs = coin.directions();
        let state = WalkState::point(vec![0], 1);
        let out = step(&state, &coin, &dirs).unwrap();
        assert!((out.amplitude(&[1], 0) - c(2.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!((out.amplitude(&[0], 1) - c(-1.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!((out.amplitude(&[-1], 2) - c(2.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn absorb_removes_mass_at_absorbers() {
        let h = 1.0 / 2f64.sqrt();
        let mut state = WalkState::new();
        state.add(vec![2], 0, c(h, 0.0));
        state.add(vec![0], 1, c(-h, 0.0));
        let absorbers = AbsorberSet::points([0]).unwrap();
        let (rest, masses) = absorb_measure(&state, &absorbers);
        assert!((masses[&0] - 0.5).abs() < 1e-15);
        assert_eq!(rest.support_len(), 1);
        assert!((rest.amplitude(&[2], 0) - c(h, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn absorb_noop_without_support() {
        let state: WalkState<f64> = WalkState::point(vec![5], 0);
        let absorbers = AbsorberSet::points([0, 10]).unwrap();
        let (rest, masses) = absorb_measure(&state, &absorbers);
        assert_eq!(rest.support_len(), 1);
        assert!(masses.values().all(|m| *m == 0.0));
    }

    #[test]
    fn wall_absorption_2d_single_step() {
        // One step of |(1,0)>|S_{+1}> under GroverD(2): the S_{-1} branch
        // (amplitude 1/2) lands on the wall B_0.
        let coin: CoinSpec<f64> = CoinSpec::grover_d(2).unwrap();
        let dirs = coin.directions();
        let state = WalkState::point(vec![1, 0], 0);
        let out = step(&state, &coin, &dirs).unwrap();
        let absorbers = AbsorberSet::walls([0]).unwrap();
        let (_, masses) = absorb_measure(&out, &absorbers);
        assert!((masses[&0] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn two_site_hadamard_run_absorbs_half_left() {
        let coin = CoinSpec::<f64>::hadamard();
        let dirs = coin.directions();
        let initial = WalkState::point(vec![1], 0);
        let absorbers = AbsorberSet::points([0, 2]).unwrap();
        let tracked: BTreeSet<i64> = [0].into();
        let report = run_absorbing(
            &initial,
            &coin,
            &dirs,
            &absorbers,
            &tracked,
            RunSpec {
                max_steps: 10,
                residual_tol: 1e-16,
            },
        )
        .unwrap();
        assert!((as_f64(report.probability) - 0.5).abs() < 1e-15);
        assert_eq!(report.per_step_mass[0].0, 1);
        assert!(as_f64(report.residual_mass) < 1e-16);
        assert!((as_f64(report.accounted_mass()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn arity_mismatch_is_config_error() {
        let coin: CoinSpec<f64> = CoinSpec::Grover3;
        let dirs = DirectionSet::line();
        let err = step(&WalkState::point(vec![0], 0), &coin, &dirs).unwrap_err();
        assert!(matches!(err, Error::ArityMismatch { coin: 3, dirs: 2 }));
    }
}
