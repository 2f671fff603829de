//! Lyapunov functionals evaluated along simulated trajectories.

use schr::harness::presets;
use schr::kinetics::endemic_equilibrium;
use schr::rdsolver::integrate;
use schr::stability::{choose_alphas, dissipation_report, AlphaChoice, LyapunovFunctional};

fn main() -> schr::Result<()> {
    let cases = [
        ("basic-drug-free", "g1"),
        ("basic-endemic", "g2"),
        ("extended-drug-free", "free"),
        ("extended-endemic", "endemic"),
    ];
    for (name, which) in cases {
        let mut s = presets::preset(name)?;
        s.sim.stride = 100;
        let p = s.sim.params;
        let functional = match which {
            "g1" => LyapunovFunctional::G1,
            "g2" => LyapunovFunctional::G2(endemic_equilibrium(&p, s.sim.model)?),
            "free" => match choose_alphas(&p) {
                AlphaChoice::Feasible(a) => LyapunovFunctional::ExtendedFree(a),
                AlphaChoice::Infeasible {
                    best_max_coefficient,
                } => {
                    println!("{name}: no admissible weights ({best_max_coefficient:.3e})");
                    continue;
                }
            },
            _ => LyapunovFunctional::ExtendedEndemic(endemic_equilibrium(&p, s.sim.model)?),
        };
        let traj = integrate(&s.sim)?;
        let trace = dissipation_report(&traj, &functional);
        let first = trace.values.first().copied().flatten().unwrap_or(f64::NAN);
        let last = trace.values.last().copied().flatten().unwrap_or(f64::NAN);
        println!(
            "{name:<20} {:<12} {first:.4e} -> {last:.4e}, nonpositive slopes after t=10: {:.2}%",
            trace.functional,
            100.0 * trace.fraction_nonpositive(10.0)
        );
    }
    Ok(())
}
