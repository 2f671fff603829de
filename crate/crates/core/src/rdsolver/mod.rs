//! 1D finite-difference integrator with homogeneous Neumann boundaries.
//!
//! Space is a uniform grid of `Mx + 1` nodes on `[0, L]`; the Laplacian is
//! the three-point stencil with reflected ghost nodes at both ends. Two
//! steppers are available: forward Euler, and IMEX (implicit diffusion via a
//! tridiagonal solve, explicit reaction).

mod field;
mod grid;
mod integrate;
mod laplacian;
mod mms;
mod stepper;
mod tridiag;

pub use field::{mass_integral, Field};
pub use grid::Grid1D;
pub use integrate::{
    integrate, steady_state_residual, InitialCondition, SampleDiagnostics, SimConfig, Termination,
    Trajectory, CLAMP_TOLERANCE,
};
pub use laplacian::discrete_laplacian;
pub use mms::{
    convergence_study, manufactured_solution, spatial_convergence, temporal_convergence,
    ConvergenceLevel, ConvergenceStudy, Refinement,
};
pub use stepper::{stable_dt, step_explicit, step_imex, Stepper};
pub use tridiag::{solve_tridiagonal, NeumannDiffusionSolver};
