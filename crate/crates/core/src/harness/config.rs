//! TOML scenario files.
//!
//! ```toml
//! name = "basic-endemic"
//! model = "basic"            # or "extended"
//!
//! [params]
//! lambda = 2.15
//! beta = 0.002
//! eta1 = 0.01                # … eta4; eta5/eta6 for extended
//! sigma = 0.2
//! gamma1 = 0.05              # gamma2; gamma3/gamma4 for extended
//! d = 0.1                    # extended also needs mu1, mu2, kappa1, kappa2
//!
//! [initial]
//! S = 30.0
//! C = 10.0
//! H = 5.0
//! R = 0.0                    # extended also needs Uc, Uh
//! amplitude = 0.0            # optional cosine perturbation
//! mode = 1
//!
//! [grid]                     # optional
//! length = 2.0
//! cells = 40
//!
//! [time]
//! dt = 0.01                  # optional, default 0.01
//! t_end = 500.0
//! stride = 100
//! stepper = "explicit"
//! steady_stop = false
//!
//! [outputs]
//! dir = "out/basic-endemic"
//! trajectory = true
//! diagnostics = true
//! stability = true
//! lyapunov = true
//! ```
//!
//! Unknown keys anywhere are rejected.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::kinetics::{Model, ModelParams};
use crate::rdsolver::{Grid1D, InitialCondition, SimConfig, Stepper};
use crate::stability::DEFAULT_JMAX;

/// Which artifacts a run writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Outputs {
    pub trajectory: bool,
    pub diagnostics: bool,
    pub stability: bool,
    pub lyapunov: bool,
}

impl Outputs {
    pub fn all() -> Self {
        Self {
            trajectory: true,
            diagnostics: true,
            stability: true,
            lyapunov: true,
        }
    }

    pub fn any(&self) -> bool {
        self.trajectory || self.diagnostics || self.stability || self.lyapunov
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub sim: SimConfig,
    pub outputs: Outputs,
    pub out_dir: PathBuf,
    /// Highest Neumann mode index examined by stability reports.
    pub j_max: usize,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        if self.name.trim().is_empty() {
            return Err(Error::Config("scenario name must be nonempty".into()));
        }
        if !self.outputs.any() {
            return Err(Error::Config("at least one output must be enabled".into()));
        }
        self.sim.validate()?;
        Ok(())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: String,
    model: String,
    params: RawParams,
    initial: RawInitial,
    #[serde(default)]
    grid: RawGrid,
    #[serde(default)]
    time: RawTime,
    outputs: RawOutputs,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    lambda: f64,
    beta: f64,
    eta1: f64,
    eta2: f64,
    eta3: f64,
    eta4: f64,
    sigma: f64,
    gamma1: f64,
    gamma2: f64,
    d: f64,
    eta5: Option<f64>,
    eta6: Option<f64>,
    gamma3: Option<f64>,
    gamma4: Option<f64>,
    mu1: Option<f64>,
    mu2: Option<f64>,
    kappa1: Option<f64>,
    kappa2: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInitial {
    #[serde(rename = "S")]
    s: f64,
    #[serde(rename = "C")]
    c: f64,
    #[serde(rename = "H")]
    h: f64,
    #[serde(rename = "R")]
    r: f64,
    #[serde(rename = "Uc")]
    uc: Option<f64>,
    #[serde(rename = "Uh")]
    uh: Option<f64>,
    #[serde(default)]
    amplitude: f64,
    #[serde(default = "one")]
    mode: usize,
}

fn one() -> usize {
    1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawGrid {
    length: f64,
    cells: usize,
}

impl Default for RawGrid {
    fn default() -> Self {
        Self {
            length: 2.0,
            cells: 40,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawTime {
    dt: f64,
    t_end: f64,
    stride: usize,
    stepper: Stepper,
    steady_stop: bool,
    allow_unstable_dt: bool,
    threads: usize,
}

impl Default for RawTime {
    fn default() -> Self {
        Self {
            dt: 1e-2,
            t_end: 500.0,
            stride: 100,
            stepper: Stepper::Explicit,
            steady_stop: true,
            allow_unstable_dt: false,
            threads: 1,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutputs {
    dir: PathBuf,
    #[serde(default)]
    trajectory: bool,
    #[serde(default)]
    diagnostics: bool,
    #[serde(default)]
    stability: bool,
    #[serde(default)]
    lyapunov: bool,
    #[serde(default = "default_jmax")]
    jmax: usize,
}

fn default_jmax() -> usize {
    DEFAULT_JMAX
}

fn extended_key(model: Model, section: &str, key: &str, v: Option<f64>) -> Result<f64> {
    match (model, v) {
        (_, Some(v)) => Ok(v),
        (Model::Basic, None) => Ok(0.0),
        (Model::Extended, None) => Err(Error::Config(format!(
            "missing key `{key}` in [{section}] (required for the extended model)"
        ))),
    }
}

/// Parses and validates scenario text.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let raw: RawScenario =
        toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
    let model = Model::parse(&raw.model).ok_or_else(|| {
        Error::Config(format!(
            "unknown model `{}` (expected `basic` or `extended`)",
            raw.model
        ))
    })?;
    let rp = &raw.params;
    let ext = |k: &str, v| extended_key(model, "params", k, v);
    let params = ModelParams {
        lambda: rp.lambda,
        beta: rp.beta,
        eta: [
            rp.eta1,
            rp.eta2,
            rp.eta3,
            rp.eta4,
            ext("eta5", rp.eta5)?,
            ext("eta6", rp.eta6)?,
        ],
        sigma: rp.sigma,
        gamma: [
            rp.gamma1,
            rp.gamma2,
            ext("gamma3", rp.gamma3)?,
            ext("gamma4", rp.gamma4)?,
        ],
        mu: [ext("mu1", rp.mu1)?, ext("mu2", rp.mu2)?],
        kappa: [ext("kappa1", rp.kappa1)?, ext("kappa2", rp.kappa2)?],
        d: rp.d,
    };
    let ri = &raw.initial;
    let values = match model {
        Model::Basic => {
            if ri.uc.is_some() || ri.uh.is_some() {
                return Err(Error::Config(
                    "[initial] Uc/Uh are only valid for the extended model".into(),
                ));
            }
            vec![ri.s, ri.c, ri.h, ri.r]
        }
        Model::Extended => {
            let uc = extended_key(model, "initial", "Uc", ri.uc)?;
            let uh = extended_key(model, "initial", "Uh", ri.uh)?;
            vec![ri.s, ri.c, uc, ri.h, uh, ri.r]
        }
    };
    for (name, v) in model.names().iter().zip(&values) {
        if !v.is_finite() || *v < 0.0 {
            return Err(Error::param(
                name,
                format!("initial value must be >= 0, got {v}"),
            ));
        }
    }
    if !(ri.amplitude.abs() <= 1.0) {
        return Err(Error::param(
            "amplitude",
            "must lie in [-1, 1] to keep data nonnegative",
        ));
    }
    let sim = SimConfig {
        params,
        model,
        grid: Grid1D::new(raw.grid.length, raw.grid.cells)?,
        initial: InitialCondition::Homogeneous {
            values,
            amplitude: ri.amplitude,
            mode: ri.mode,
        },
        dt: raw.time.dt,
        t_end: raw.time.t_end,
        stride: raw.time.stride,
        stepper: raw.time.stepper,
        steady_stop: raw.time.steady_stop,
        threads: raw.time.threads,
        allow_unstable_dt: raw.time.allow_unstable_dt,
    };
    let s = Scenario {
        name: raw.name,
        sim,
        outputs: Outputs {
            trajectory: raw.outputs.trajectory,
            diagnostics: raw.outputs.diagnostics,
            stability: raw.outputs.stability,
            lyapunov: raw.outputs.lyapunov,
        },
        out_dir: raw.outputs.dir,
        j_max: raw.outputs.jmax,
    };
    s.validate()?;
    Ok(s)
}

/// Reads and validates a scenario file.
pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_scenario(&text).map_err(|e| match e {
        Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Writes `s` in the scenario file format. Only homogeneous initial data can
/// be expressed.
pub fn to_toml(s: &Scenario) -> Result<String> {
    let InitialCondition::Homogeneous {
        values,
        amplitude,
        mode,
    } = &s.sim.initial
    else {
        return Err(Error::Config(
            "explicit initial fields cannot be written to a scenario file".into(),
        ));
    };
    let model = s.sim.model;
    let mut out = String::new();
    let w = &mut out;
    // `{:?}` keeps a decimal point on whole numbers so TOML reads floats.
    writeln!(w, "name = {:?}", s.name).unwrap();
    writeln!(w, "model = \"{model}\"\n").unwrap();
    writeln!(w, "[params]").unwrap();
    for (k, v) in s.sim.params.named_fields() {
        let extended_only = matches!(
            k,
            "eta5" | "eta6" | "gamma3" | "gamma4" | "mu1" | "mu2" | "kappa1" | "kappa2"
        );
        if model == Model::Extended || !extended_only {
            writeln!(w, "{k} = {v:?}").unwrap();
        }
    }
    writeln!(w, "\n[initial]").unwrap();
    for (name, v) in model.names().iter().zip(values) {
        writeln!(w, "{name} = {v:?}").unwrap();
    }
    writeln!(w, "amplitude = {amplitude:?}\nmode = {mode}").unwrap();
    writeln!(w, "\n[grid]").unwrap();
    writeln!(
        w,
        "length = {:?}\ncells = {}",
        s.sim.grid.length(),
        s.sim.grid.cells()
    )
    .unwrap();
    writeln!(w, "\n[time]").unwrap();
    writeln!(
        w,
        "dt = {:?}\nt_end = {:?}\nstride = {}",
        s.sim.dt, s.sim.t_end, s.sim.stride
    )
    .unwrap();
    writeln!(
        w,
        "stepper = \"{}\"\nsteady_stop = {}",
        s.sim.stepper, s.sim.steady_stop
    )
    .unwrap();
    writeln!(
        w,
        "allow_unstable_dt = {}\nthreads = {}",
        s.sim.allow_unstable_dt, s.sim.threads
    )
    .unwrap();
    writeln!(w, "\n[outputs]").unwrap();
    writeln!(w, "dir = {:?}", s.out_dir.display().to_string()).unwrap();
    let o = &s.outputs;
    writeln!(
        w,
        "trajectory = {}\ndiagnostics = {}\nstability = {}\nlyapunov = {}\njmax = {}",
        o.trajectory, o.diagnostics, o.stability, o.lyapunov, s.j_max
    )
    .unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::presets;

    #[test]
    fn round_trip_catalog() {
        for s in presets::catalog() {
            let text = to_toml(&s).unwrap();
            assert_eq!(parse_scenario(&text).unwrap(), s, "{text}");
        }
    }

    fn basic_text() -> String {
        to_toml(&presets::preset("basic-endemic").unwrap()).unwrap()
    }

    #[test]
    fn negative_beta_named() {
        let t = basic_text().replace("beta = 0.002", "beta = -1.0");
        let e = parse_scenario(&t).unwrap_err();
        assert!(e.to_string().contains("beta"), "{e}");
    }

    #[test]
    fn dt_defaults() {
        let t = basic_text().replace("dt = 0.01\n", "");
        assert_eq!(parse_scenario(&t).unwrap().sim.dt, 1e-2);
    }

    #[test]
    fn unknown_key_rejected() {
        let t = basic_text().replace("sigma = 0.2", "sigma = 0.2\nsigmma = 0.3");
        let e = parse_scenario(&t).unwrap_err();
        assert!(matches!(e, Error::Config(_)));
        assert!(e.to_string().contains("sigmma"), "{e}");
    }

    #[test]
    fn missing_key_named() {
        let t = basic_text().replace("gamma1 = 0.05\n", "");
        let e = parse_scenario(&t).unwrap_err();
        assert!(e.to_string().contains("gamma1"), "{e}");

        let t = to_toml(&presets::preset("extended-endemic").unwrap())
            .unwrap()
            .replace("kappa2 = 0.01\n", "");
        let e = parse_scenario(&t).unwrap_err();
        assert!(e.to_string().contains("kappa2"), "{e}");
    }

    #[test]
    fn no_outputs_rejected() {
        let t = basic_text()
            .replace("trajectory = true", "trajectory = false")
            .replace("diagnostics = true", "diagnostics = false")
            .replace("stability = true", "stability = false")
            .replace("lyapunov = true", "lyapunov = false");
        assert!(matches!(parse_scenario(&t), Err(Error::Config(_))));
    }
}
