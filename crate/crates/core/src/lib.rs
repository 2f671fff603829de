//! Reaction-diffusion cocaine-heroin epidemic models.
//!
//! Two population models are covered:
//!
//! - the four-compartment SCHR model (susceptible, cocaine users, heroin
//!   users, recovered), and
//! - the six-compartment extension with cocaine and heroin users in
//!   treatment (`U_c`, `U_h`).
//!
//! The crate is split by concern:
//!
//! - [`kinetics`]: parameters, pointwise reaction terms, reproduction numbers
//!   and closed-form equilibria.
//! - [`stability`]: Jacobians, next-generation decomposition, Neumann mode
//!   spectra, characteristic roots, Lyapunov functionals and discrete
//!   dissipation diagnostics.
//! - [`rdsolver`]: the 1D finite-difference integrator with no-flux
//!   boundaries (forward Euler and IMEX), trajectory diagnostics and
//!   manufactured-solution convergence studies.
//! - [`harness`]: scenario files, the preset catalog, report/CSV export and
//!   the command drivers behind the `schr` binary.
//!
//! ```
//! use schr::harness::presets;
//! use schr::kinetics::{r0_basic, endemic_equilibrium_basic};
//!
//! let p = presets::basic_endemic_params();
//! assert!((r0_basic(&p).unwrap() - 1.653_846_153_846).abs() < 1e-9);
//! let e = endemic_equilibrium_basic(&p).unwrap();
//! assert!((e.point.values[0] - 130.0).abs() < 1e-9);
//! ```

// `!(x > 0.0)` is used on purpose: it rejects NaN along with nonpositive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod harness;
pub mod kinetics;
pub mod rdsolver;
pub mod stability;

pub use error::{Error, Result};
