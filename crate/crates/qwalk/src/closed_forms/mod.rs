//! Direct evaluators for the published closed-form probabilities, limits,
//! and recurrences, plus verifiers asserting the recurrences against the
//! closed forms.
//!
//! Two printed formulas fail their oracles and are shipped in corrected
//! form (the printed versions remain available for the documented
//! expected-failure checks): the lattice-size recurrence for two-state
//! walks uses `P_{n+1} = (|b|^2 + P_n)/(1 + P_n)`, and the finite cross
//! term is `H_n^(m) = -(a conj b / 2) B_{n-m-1} B_{m-1} / B_{n-1}`.

mod classical;
mod grover3;
mod inequalities;
mod query;
mod two_state;

pub use classical::{
    classical_closed, classical_ray_limit, classical_recurrence_residuals,
    ClassicalRecurrenceReport,
};
pub use grover3::{
    grover3_finite_closed, grover3_orbit_step, grover3_recurrences, grover3_semi_closed,
    Grover3RecurrenceReport,
};
pub use inequalities::{reflection_inequality_suite, ReflectionCase, ReflectionReport};
pub use query::{AbsorptionQuery, WalkFamily};
pub use two_state::{
    eq39_probability, two_state_conservation, two_state_finite_closed, two_state_limit_fixed_m,
    two_state_limit_ray, two_state_recurrences, two_state_semi_closed,
    two_state_semi_closed_trig, ConservationSplit,
    Degeneracy, FiniteComponents, RbPair, RbSequence, SemiClosed, TwoStateRecurrenceReport,
};
