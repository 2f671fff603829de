//! With a return flow from treatment back to active use, the closed-form R0
//! of the extended model understates the invasion threshold. Sweep β across
//! the gap between the two and watch the sign of the dominant mode-0
//! eigenvalue at E_f.

use schr::harness::presets;
use schr::kinetics::{drug_free_equilibrium, effective_threshold_extended, r0_extended, Model};
use schr::stability::{neumann_modes, roots_numeric};

fn main() -> schr::Result<()> {
    let mut base = presets::extended_endemic_params();
    base.mu[1] = 0.08;
    let mode0 = neumann_modes(2.0, 0)?.modes().next().expect("mode 0");
    println!(
        "{:>9} {:>9} {:>10} {:>12}  E_f",
        "beta", "R0", "threshold", "max Re"
    );
    for k in 0..=8 {
        let mut p = base;
        p.beta = 0.00120 + 0.00001 * k as f64;
        let ef = drug_free_equilibrium(&p, Model::Extended)?;
        let growth = roots_numeric(&p, &ef.point, mode0)?.max_real_part();
        println!(
            "{:>9.5} {:>9.5} {:>10.5} {:>12.4e}  {}",
            p.beta,
            r0_extended(&p)?,
            effective_threshold_extended(&p)?,
            growth,
            if growth > 0.0 { "invadable" } else { "stable" }
        );
    }
    Ok(())
}
