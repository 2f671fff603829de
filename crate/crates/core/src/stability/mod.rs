//! Local and global stability diagnostics.
//!
//! Local stability is decided mode by mode: under homogeneous Neumann
//! conditions on `[0, L]` the Laplacian eigenvalues are `λ_j = (jπ/L)²` and
//! each mode shifts the reaction Jacobian by `−dλ_j`. Global stability is
//! examined numerically by evaluating Lyapunov functionals along computed
//! trajectories.

mod classify;
mod eigen;
mod jacobian;
mod lyapunov;
mod modes;
mod ngm;
mod roots;

pub use classify::{classify, StabilityReport, Verdict, VERDICT_MARGIN};
pub use eigen::{eigen_residual, eigenvalues};
pub use jacobian::{jacobian, jacobian_basic, jacobian_extended, reduced_jacobian};
pub use lyapunov::{
    choose_alphas, dissipation_report, free_functional_coefficients, lyapunov_extended_endemic,
    lyapunov_extended_free, lyapunov_g1, lyapunov_g2, AlphaChoice, LyapunovFunctional,
    LyapunovTrace,
};
pub use modes::{neumann_modes, Mode, ModeSpectrum, DEFAULT_JMAX};
pub use ngm::{ngm_decompose, NgmDecomposition};
pub use roots::{characteristic_basic, roots_drug_free, roots_endemic, roots_numeric, ModeRoots};
