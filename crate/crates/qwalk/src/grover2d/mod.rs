//! The `d = 2` Grover walk against an absorbing wall: momentum-space
//! generating functions, a dense lattice simulator for cross-validation,
//! and the numeric probe of the conjectured finite-wall limit.

mod momentum;
mod probe;
mod sim;

pub use momentum::{
    momentum_inverse_fourier, solve_momentum_system, system_residual, wall_absorption_finite,
    wall_absorption_semi, wall_recursion_finite, wall_recursion_iterate, MomentumComponents,
    WallEstimate,
};
pub use probe::{conjecture61_probe, ProbeBudget, ProbeReport, ProbeRow};
pub use sim::{run_wall_2d, Wall2dConfig, Wall2dResult};
