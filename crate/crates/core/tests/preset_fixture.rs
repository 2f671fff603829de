//! Preset values against a literal transcription of the reference parameter set.

use std::path::Path;

use schr::harness::{load_scenario, presets};
use schr::kinetics::{Model, ModelParams};
use schr::rdsolver::InitialCondition;

/// One table row: symbol, endemic-regime value, drug-free-regime value.
type Row = (&'static str, f64, f64);

const SHARED: &[Row] = &[
    ("S0", 30.0, 30.0),
    ("C0", 10.0, 10.0),
    ("H0", 5.0, 5.0),
    ("R0", 0.0, 0.0),
    ("eta1", 0.01, 0.03),
    ("eta2", 0.01, 0.03),
    ("eta3", 0.01, 0.03),
    ("eta4", 0.01, 0.03),
    ("sigma", 0.2, 0.001),
    ("beta", 0.002, 0.001),
    ("d", 0.1, 0.1),
    ("T", 500.0, 500.0),
    ("gamma1", 0.05, 0.05),
    ("gamma2", 0.05, 0.05),
    ("Lambda", 2.15, 2.15),
];

const EXTENSION: &[Row] = &[
    ("Uc0", 3.0, 3.0),
    ("Uh0", 3.0, 3.0),
    ("eta5", 0.01, 0.01),
    ("eta6", 0.01, 0.01),
    ("gamma3", 0.03, 0.03),
    ("gamma4", 0.03, 0.03),
    ("mu1", 0.01, 0.05),
    ("mu2", 0.01, 0.05),
    ("kappa1", 0.01, 0.01),
    ("kappa2", 0.01, 0.01),
];

fn initial_values(init: &InitialCondition) -> Vec<f64> {
    match init {
        InitialCondition::Homogeneous {
            values, amplitude, ..
        } => {
            assert_eq!(*amplitude, 0.0, "presets start evenly distributed");
            values.clone()
        }
        InitialCondition::Field(_) => panic!("presets use homogeneous data"),
    }
}

fn lookup(model: Model, p: &ModelParams, init: &[f64], t_end: f64, symbol: &str) -> f64 {
    let (s, c, uc, h, uh, r) = match model {
        Model::Basic => (0, 1, usize::MAX, 2, usize::MAX, 3),
        Model::Extended => (0, 1, 2, 3, 4, 5),
    };
    match symbol {
        "S0" => init[s],
        "C0" => init[c],
        "Uc0" => init[uc],
        "H0" => init[h],
        "Uh0" => init[uh],
        "R0" => init[r],
        "eta1" => p.eta[0],
        "eta2" => p.eta[1],
        "eta3" => p.eta[2],
        "eta4" => p.eta[3],
        "eta5" => p.eta[4],
        "eta6" => p.eta[5],
        "sigma" => p.sigma,
        "beta" => p.beta,
        "d" => p.d,
        "T" => t_end,
        "gamma1" => p.gamma[0],
        "gamma2" => p.gamma[1],
        "gamma3" => p.gamma[2],
        "gamma4" => p.gamma[3],
        "mu1" => p.mu[0],
        "mu2" => p.mu[1],
        "kappa1" => p.kappa[0],
        "kappa2" => p.kappa[1],
        "Lambda" => p.lambda,
        other => panic!("unknown symbol {other}"),
    }
}

fn check(name: &str, model: Model, endemic: bool) {
    let s = presets::preset(name).unwrap();
    assert_eq!(s.sim.model, model);
    let init = initial_values(&s.sim.initial);
    let rows = match model {
        Model::Basic => SHARED.to_vec(),
        Model::Extended => SHARED.iter().chain(EXTENSION).copied().collect(),
    };
    for (symbol, hi, lo) in rows {
        let want = if endemic { hi } else { lo };
        let got = lookup(model, &s.sim.params, &init, s.sim.t_end, symbol);
        assert_eq!(got, want, "{name}: {symbol}");
    }
    assert_eq!(s.sim.dt, 1e-2, "{name}: dt");
    assert_eq!(s.sim.grid.length(), 2.0, "{name}: domain length");
}

#[test]
fn basic_endemic_matches_reference() {
    check("basic-endemic", Model::Basic, true);
}

#[test]
fn basic_drug_free_matches_reference() {
    check("basic-drug-free", Model::Basic, false);
}

#[test]
fn extended_endemic_matches_reference() {
    check("extended-endemic", Model::Extended, true);
}

#[test]
fn extended_drug_free_matches_reference() {
    check("extended-drug-free", Model::Extended, false);
}

#[test]
fn basic_presets_carry_no_treatment_rates() {
    for name in ["basic-endemic", "basic-drug-free"] {
        let p = presets::preset(name).unwrap().sim.params;
        assert_eq!(p.mu, [0.0, 0.0]);
        assert_eq!(p.kappa, [0.0, 0.0]);
        assert_eq!(p.eta[4..], [0.0, 0.0]);
        assert_eq!(p.gamma[2..], [0.0, 0.0]);
    }
}

#[test]
fn shipped_files_equal_catalog() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("presets");
    for s in presets::catalog() {
        let loaded = load_scenario(dir.join(format!("{}.toml", s.name))).unwrap();
        assert_eq!(loaded, s, "{}", s.name);
    }
}
