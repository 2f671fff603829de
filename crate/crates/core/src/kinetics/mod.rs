//! Model parameters, reaction terms, reproduction numbers and equilibria.
//!
//! Everything here is a pure function of its inputs. The spatial operator
//! lives in [`crate::rdsolver`]; this module only knows the pointwise
//! kinetics.

mod equilibrium;
mod params;
mod reaction;
mod state;
mod threshold;

pub use equilibrium::{
    drug_free_equilibrium, endemic_equilibrium, endemic_equilibrium_basic,
    endemic_equilibrium_extended, equilibrium_residual, newton_equilibrium, residual_tolerance,
    EquilibriumKind, EquilibriumPoint, Provenance,
};
pub use params::ModelParams;
pub use reaction::{reaction, reaction_basic, reaction_extended, reaction_into};
pub use state::{CompartmentVector, Model};
pub use threshold::{effective_threshold_extended, r0, r0_basic, r0_extended};
