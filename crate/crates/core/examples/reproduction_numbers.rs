//! Basic reproduction numbers of the four presets, cross-checked against the
//! spectral radius of the next-generation matrix at the drug-free state.

use schr::harness::presets;
use schr::kinetics::{drug_free_equilibrium, effective_threshold_extended, r0, Model};
use schr::stability::ngm_decompose;

fn main() -> schr::Result<()> {
    for s in presets::catalog() {
        let p = &s.sim.params;
        let model = s.sim.model;
        let ef = drug_free_equilibrium(p, model)?;
        let trace = ngm_decompose(p, &ef.point).reproduction_trace()?;
        print!(
            "{:<20} R0 = {:.6}  NGM = {:.6}",
            s.name,
            r0(p, model)?,
            trace
        );
        if model == Model::Extended {
            print!("  threshold = {:.6}", effective_threshold_extended(p)?);
        }
        println!();
    }
    Ok(())
}
