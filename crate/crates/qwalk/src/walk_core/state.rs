//! Sparse walk states and absorber geometry.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::WalkScalar;

/// Lattice position. One entry per dimension.
pub type Position = Vec<i64>;

/// Sparse map from `(position, direction index)` to complex amplitude.
///
/// Value-semantic: evolution produces new states and never mutates shared
/// data, so states can be freely handed between threads.
#[derive(Debug, Clone)]
pub struct WalkState<T: WalkScalar> {
    amps: HashMap<(Position, u8), Complex<T>>,
}

impl<T: WalkScalar> WalkState<T> {
    pub fn new() -> Self {
        WalkState {
            amps: HashMap::new(),
        }
    }

    /// Point source `|pos>|direction>`.
    pub fn point(pos: Position, direction: u8) -> Self {
        let mut amps = HashMap::new();
        amps.insert((pos, direction), Complex::new(T::one(), T::zero()));
        WalkState { amps }
    }

    /// Point source on `Z` at `pos` with the given internal amplitudes
    /// (ordered like the coin's direction set).
    pub fn line_source(pos: i64, internal: &[Complex<T>]) -> Self {
        let mut amps = HashMap::new();
        for (idx, amp) in internal.iter().enumerate() {
            if amp.norm_sqr() > T::zero() {
                amps.insert((vec![pos], idx as u8), *amp);
            }
        }
        WalkState { amps }
    }

    pub fn add(&mut self, pos: Position, direction: u8, amp: Complex<T>) {
        let slot = self
            .amps
            .entry((pos, direction))
            .or_insert_with(|| Complex::new(T::zero(), T::zero()));
        *slot = *slot + amp;
    }

    pub fn amplitude(&self, pos: &[i64], direction: u8) -> Complex<T> {
        self.amps
            .get(&(pos.to_vec(), direction))
            .copied()
            .unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    pub fn norm_sqr(&self) -> T {
        self.amps
            .values()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    pub fn support_len(&self) -> usize {
        self.amps.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Position, u8), &Complex<T>)> {
        self.amps.iter()
    }

    /// Largest L1 distance of any support point from `origin`.
    pub fn l1_radius_from(&self, origin: &[i64]) -> i64 {
        self.amps
            .keys()
            .map(|(pos, _)| {
                pos.iter()
                    .zip(origin)
                    .map(|(p, o)| (p - o).abs())
                    .sum::<i64>()
            })
            .max()
            .unwrap_or(0)
    }

    /// Drops amplitudes with `|amp|^2 <= threshold`. A zero threshold keeps
    /// everything (the default for 1D runs; the 2D engine documents its own
    /// pruning knob).
    pub fn prune(&mut self, threshold: T) {
        if threshold > T::zero() {
            self.amps.retain(|_, a| a.norm_sqr() > threshold);
        }
    }

    pub(crate) fn from_map(amps: HashMap<(Position, u8), Complex<T>>) -> Self {
        WalkState { amps }
    }
}

impl<T: WalkScalar> Default for WalkState<T> {
    fn default() -> Self {
        Self::new()
    }
}

/// Set of absorbing lattice positions: isolated points of `Z`, or
/// hyperplane walls `B_k = { z : z_1 = k }` of `Z^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AbsorberSet {
    Points1D(Vec<i64>),
    Walls(Vec<i64>),
}

impl AbsorberSet {
    pub fn points(points: impl IntoIterator<Item = i64>) -> Result<Self> {
        let mut pts: Vec<i64> = points.into_iter().collect();
        pts.sort_unstable();
        pts.dedup();
        if pts.is_empty() {
            return Err(Error::Config("absorber set must be non-empty".into()));
        }
        Ok(AbsorberSet::Points1D(pts))
    }

    pub fn walls(coords: impl IntoIterator<Item = i64>) -> Result<Self> {
        let mut ws: Vec<i64> = coords.into_iter().collect();
        ws.sort_unstable();
        ws.dedup();
        if ws.is_empty() {
            return Err(Error::Config("absorber set must be non-empty".into()));
        }
        Ok(AbsorberSet::Walls(ws))
    }

    /// The absorber a position belongs to, keyed by point (1D) or wall
    /// coordinate, if any.
    pub fn key_of(&self, pos: &[i64]) -> Option<i64> {
        match self {
            AbsorberSet::Points1D(pts) => {
                let x = pos[0];
                pts.binary_search(&x).ok().map(|_| x)
            }
            AbsorberSet::Walls(ws) => {
                let x = pos[0];
                ws.binary_search(&x).ok().map(|_| x)
            }
        }
    }

    pub fn keys(&self) -> &[i64] {
        match self {
            AbsorberSet::Points1D(pts) => pts,
            AbsorberSet::Walls(ws) => ws,
        }
    }
}

/// Convenience: empty tracked-mass map over the absorber keys.
pub(crate) fn zero_masses<T: WalkScalar>(absorbers: &AbsorberSet) -> BTreeMap<i64, T> {
    absorbers.keys().iter().map(|&k| (k, T::zero())).collect()
}
