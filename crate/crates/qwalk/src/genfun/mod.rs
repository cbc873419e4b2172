//! Closed-form generating functions for absorbed amplitude at the boundary,
//! and the linear-fractional recurrence solver they rest on.
//!
//! The `t`-th Taylor coefficient of each generating function is the arrival
//! amplitude at the tracked boundary at step `t`; every closed form here is
//! locked to the `walk_core` simulator by coefficient-oracle tests before
//! being used in a Hadamard product.

mod branch;
mod grover3;
mod handle;
mod lf;
mod probability;
mod two_state;

pub use branch::{sqrt_grover3, sqrt_grover2d, sqrt_two_state};
pub use grover3::{
    grover3_finite, grover3_finite_conj_reciprocal, grover3_semi, GROVER3_OMEGA_IM,
    GROVER3_OMEGA_RE,
};
pub use handle::{Component, GenFunHandle, GenFunWalk};
pub use lf::{
    lf_closed_form, lf_iterate, solve_linear_fractional, LfCoefficients, Polynomial, RFamily,
    RSequence,
};
pub use probability::{
    cross_probability, grover3_finite_probability, grover3_semi_probability, self_probability,
    two_state_finite_cross, two_state_finite_probability, two_state_semi_cross,
    two_state_semi_probability,
};
pub use two_state::{two_state_finite, two_state_finite_conj_reciprocal, two_state_semi};
