//! Built-in scenarios for the two parameter regimes of both models.

use std::path::PathBuf;

use super::config::{Outputs, Scenario};
use crate::error::{Error, Result};
use crate::kinetics::{Model, ModelParams};
use crate::rdsolver::{Grid1D, InitialCondition, SimConfig, Stepper};

pub const PRESET_NAMES: [&str; 4] = [
    "basic-drug-free",
    "basic-endemic",
    "extended-drug-free",
    "extended-endemic",
];

/// Regime where the basic threshold exceeds one.
pub fn basic_endemic_params() -> ModelParams {
    ModelParams {
        lambda: 2.15,
        beta: 0.002,
        eta: [0.01, 0.01, 0.01, 0.01, 0.0, 0.0],
        sigma: 0.2,
        gamma: [0.05, 0.05, 0.0, 0.0],
        mu: [0.0, 0.0],
        kappa: [0.0, 0.0],
        d: 0.1,
    }
}

/// Regime where the basic threshold is below one.
pub fn basic_drug_free_params() -> ModelParams {
    ModelParams {
        lambda: 2.15,
        beta: 0.001,
        eta: [0.03, 0.03, 0.03, 0.03, 0.0, 0.0],
        sigma: 0.001,
        gamma: [0.05, 0.05, 0.0, 0.0],
        mu: [0.0, 0.0],
        kappa: [0.0, 0.0],
        d: 0.1,
    }
}

fn with_treatment(mut p: ModelParams, mu: f64) -> ModelParams {
    p.eta[4] = 0.01;
    p.eta[5] = 0.01;
    p.gamma[2] = 0.03;
    p.gamma[3] = 0.03;
    p.mu = [mu, mu];
    p.kappa = [0.01, 0.01];
    p
}

pub fn extended_endemic_params() -> ModelParams {
    with_treatment(basic_endemic_params(), 0.01)
}

pub fn extended_drug_free_params() -> ModelParams {
    with_treatment(basic_drug_free_params(), 0.05)
}

/// `(S, C, H, R)` at `t = 0`.
pub const BASIC_INITIAL: [f64; 4] = [30.0, 10.0, 5.0, 0.0];
/// `(S, C, U_c, H, U_h, R)` at `t = 0`.
pub const EXTENDED_INITIAL: [f64; 6] = [30.0, 10.0, 3.0, 5.0, 3.0, 0.0];

fn scenario(name: &str, model: Model, params: ModelParams) -> Scenario {
    let initial = match model {
        Model::Basic => InitialCondition::constant(&BASIC_INITIAL),
        Model::Extended => InitialCondition::constant(&EXTENDED_INITIAL),
    };
    let sim = SimConfig {
        params,
        model,
        grid: Grid1D::new(2.0, 40).expect("preset grid is valid"),
        initial,
        dt: 1e-2,
        t_end: 500.0,
        stride: 100,
        stepper: Stepper::Explicit,
        steady_stop: false,
        threads: 1,
        allow_unstable_dt: false,
    };
    Scenario {
        name: name.to_string(),
        sim,
        outputs: Outputs::all(),
        out_dir: PathBuf::from("out").join(name),
        j_max: crate::stability::DEFAULT_JMAX,
    }
}

/// The scenario registered under `name`.
pub fn preset(name: &str) -> Result<Scenario> {
    match name {
        "basic-drug-free" => Ok(scenario(name, Model::Basic, basic_drug_free_params())),
        "basic-endemic" => Ok(scenario(name, Model::Basic, basic_endemic_params())),
        "extended-drug-free" => Ok(scenario(name, Model::Extended, extended_drug_free_params())),
        "extended-endemic" => Ok(scenario(name, Model::Extended, extended_endemic_params())),
        other => Err(Error::Usage(format!(
            "unknown preset `{other}` (expected one of {})",
            PRESET_NAMES.join(", ")
        ))),
    }
}

/// All four built-in scenarios in catalog order.
pub fn catalog() -> Vec<Scenario> {
    PRESET_NAMES
        .iter()
        .map(|n| preset(n).expect("catalog name"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinetics::{r0_basic, r0_extended};

    #[test]
    fn regimes() {
        assert!(r0_basic(&basic_endemic_params()).unwrap() > 1.0);
        assert!(r0_basic(&basic_drug_free_params()).unwrap() < 1.0);
        assert!(r0_extended(&extended_endemic_params()).unwrap() > 1.0);
        assert!(r0_extended(&extended_drug_free_params()).unwrap() < 1.0);
    }

    #[test]
    fn lookup() {
        assert_eq!(catalog().len(), 4);
        assert!(matches!(preset("nope"), Err(Error::Usage(_))));
        for s in catalog() {
            assert!(!s.sim.steady_stop);
            assert_eq!(s.sim.t_end, 500.0);
            s.validate().unwrap();
        }
    }
}
