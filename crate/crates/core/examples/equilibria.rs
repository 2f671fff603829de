//! Closed-form equilibria next to a root-finder started away from them.

use schr::harness::presets;
use schr::kinetics::{
    drug_free_equilibrium, endemic_equilibrium, equilibrium_residual, newton_equilibrium,
    CompartmentVector, EquilibriumKind,
};

fn main() -> schr::Result<()> {
    for s in presets::catalog() {
        let p = &s.sim.params;
        let model = s.sim.model;
        println!("== {} ==", s.name);
        let ef = drug_free_equilibrium(p, model)?;
        println!("E_f = {:?}", ef.point.values);
        match endemic_equilibrium(p, model) {
            Ok(e) => {
                println!(
                    "E*  = {:?} (residual {:.1e})",
                    e.point.values,
                    equilibrium_residual(&e, p)
                );
                let seed: Vec<f64> = e.point.values.iter().map(|v| 1.5 * v + 1.0).collect();
                let seed = CompartmentVector::new(model, seed)?;
                let n = newton_equilibrium(p, &seed, EquilibriumKind::DrugAddiction)?;
                let gap = n
                    .point
                    .values
                    .iter()
                    .zip(&e.point.values)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                println!("root-found from 1.5·E*+1 differs by {gap:.2e}");
            }
            Err(e) => println!("E*  absent: {e}"),
        }
    }
    Ok(())
}
