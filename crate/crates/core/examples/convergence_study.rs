//! Observed convergence orders against a manufactured solution.

use schr::harness::presets;
use schr::kinetics::Model;
use schr::rdsolver::{convergence_study, Refinement, Stepper};

fn main() -> schr::Result<()> {
    let p = presets::basic_endemic_params();
    for (r, stepper) in [
        (Refinement::default_spatial(), Stepper::Explicit),
        (Refinement::default_temporal(), Stepper::Explicit),
        (Refinement::default_temporal(), Stepper::Imex),
    ] {
        let study = convergence_study(&p, Model::Basic, &r, stepper)?;
        println!("{} ({}), T = {}", study.kind, study.stepper, study.t_end);
        for l in &study.levels {
            let order = l.order.map_or("-".to_string(), |o| format!("{o:.3}"));
            println!(
                "  Mx={:<4} dt={:<8.1e} error={:.3e} order={}",
                l.cells, l.dt, l.error, order
            );
        }
    }
    Ok(())
}
