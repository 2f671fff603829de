//! Mode-by-mode characteristic roots for the basic endemic preset.

use schr::harness::presets;
use schr::kinetics::{drug_free_equilibrium, endemic_equilibrium, Model};
use schr::stability::{classify, neumann_modes};

fn main() -> schr::Result<()> {
    let p = presets::basic_endemic_params();
    let modes = neumann_modes(2.0, 5)?;
    for e in [
        drug_free_equilibrium(&p, Model::Basic)?,
        endemic_equilibrium(&p, Model::Basic)?,
    ] {
        let report = classify(&p, &e, &modes)?;
        println!("{} equilibrium: {}", e.kind, report.verdict);
        for m in &report.modes {
            let roots: Vec<String> = m
                .roots
                .iter()
                .map(|z| format!("{:+.5}{:+.5}i", z.re, z.im))
                .collect();
            println!(
                "  j={} λ={:.4}  {}",
                m.mode_index,
                m.lambda_j,
                roots.join("  ")
            );
        }
    }
    Ok(())
}
