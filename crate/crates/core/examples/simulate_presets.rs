//! Integrates every preset to T = 500 and reports the distance to the
//! equilibrium the thresholds predict.

use schr::harness::presets;
use schr::kinetics::{drug_free_equilibrium, endemic_equilibrium};
use schr::rdsolver::integrate;

fn main() -> schr::Result<()> {
    for s in presets::catalog() {
        let p = &s.sim.params;
        let traj = integrate(&s.sim)?;
        let target = endemic_equilibrium(p, s.sim.model)
            .or_else(|_| drug_free_equilibrium(p, s.sim.model))?;
        let last = traj.last();
        println!(
            "{:<20} {} at t = {}: sup distance to {} = {:.3e}, min value {:.3e}",
            s.name,
            traj.termination,
            last.time,
            target.kind,
            last.sup_distance(&target.point),
            traj.min_before_clamp()
        );
    }
    Ok(())
}
