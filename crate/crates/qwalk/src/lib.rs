//! Absorption probabilities of discrete-time quantum walks with absorbing
//! boundaries, computed three independent ways and cross-validated:
//!
//! * [`walk_core`] — exact amplitude-propagation simulation (the brute-force
//!   oracle everything else is checked against), plus the classical
//!   random-walk baseline.
//! * [`genfun`] + [`hadamard`] — closed-form generating functions for the
//!   absorbed amplitude, combined into probabilities via numerically
//!   evaluated Hadamard products on a contour.
//! * [`closed_forms`] — direct evaluators for the published closed-form
//!   probabilities, limits, and recurrences.
//! * [`grover2d`] — the two-dimensional Grover walk against an absorbing
//!   wall, via momentum decomposition and a dense lattice simulator.
//!
//! Core numerics are generic over the floating-point scalar through
//! [`WalkScalar`]; the concrete aliases [`Real`] and [`Complex64`] fix the
//! default double-precision instantiation used by the CLI and the
//! verification suites.

pub mod closed_forms;
pub mod error;
pub mod genfun;
pub mod grover2d;
pub mod hadamard;
pub mod scalar;
pub mod verify;
pub mod walk_core;

pub use error::{Error, Result};
pub use scalar::WalkScalar;

/// Default real scalar used by the CLI and verification suites.
pub type Real = f64;
/// Complex amplitude over the default scalar.
pub type Complex64 = num_complex::Complex<f64>;
/// Complex amplitude over `f32`, for reduced-precision instantiations.
pub type Complex32 = num_complex::Complex<f32>;
