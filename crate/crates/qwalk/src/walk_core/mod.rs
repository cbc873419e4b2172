//! Exact evolution of absorbing quantum walks by repeated
//! coin–shift–measure steps, plus the classical random-walk baseline.
//!
//! Conventions (fixed across the crate):
//!
//! * Directions are ordered `(R, L)` in one dimension, `(R, S, L)` with a
//!   stay direction, and `(S_{+1}, S_{-1}, ..., S_{+d}, S_{-d})` on `Z^d`.
//! * The realized coin matrix `M` acts on amplitude column vectors indexed
//!   in that order, so a step sends amplitude at `(g, from)` to
//!   `(g + move(to), to)` with weight `M[to][from]`.
//! * Measurement happens on arrival: the walk applies the step operator and
//!   then projects out (and reports) all amplitude sitting on absorbers.
//!   The initial state is never measured at `t = 0`.

mod classical;
mod coin;
mod evolve;
mod paths;
mod state;

pub use classical::{classical_absorption, classical_absorption_finite};
pub use coin::{CoinMatrix, CoinSpec, DirectionSet};
pub use evolve::{absorb_measure, run_absorbing, step, AbsorptionReport, Method, RunSpec};
pub use paths::brute_force_amplitude;
pub use state::{AbsorberSet, Position, WalkState};
