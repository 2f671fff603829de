use std::f64::consts::PI;
use std::fmt;

use super::laplacian::laplacian_into;
use super::stepper::{Forcing, StepEngine};
use super::{mass_integral, stable_dt, Field, Grid1D, Stepper};
use crate::error::{Error, Result};
use crate::kinetics::{reaction_into, Model, ModelParams};

/// Negative values down to `−CLAMP_TOLERANCE` count as roundoff and are
/// clamped to zero; anything below aborts the run.
pub const CLAMP_TOLERANCE: f64 = 1e-12;

/// Consecutive quiet samples needed for an early steady-state stop.
const STEADY_SAMPLES: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub enum InitialCondition {
    /// `u_i(x) = values[i]·(1 + amplitude·cos(mode·π·x/L))`.
    Homogeneous {
        values: Vec<f64>,
        amplitude: f64,
        mode: usize,
    },
    Field(Field),
}

impl InitialCondition {
    pub fn constant(values: &[f64]) -> Self {
        InitialCondition::Homogeneous {
            values: values.to_vec(),
            amplitude: 0.0,
            mode: 1,
        }
    }

    pub fn build(&self, grid: Grid1D, model: Model) -> Result<Field> {
        match self {
            InitialCondition::Homogeneous {
                values,
                amplitude,
                mode,
            } => {
                if values.len() != model.len() {
                    return Err(Error::Layout {
                        expected: model.len(),
                        got: values.len(),
                    });
                }
                let k = *mode as f64 * PI / grid.length();
                let a = *amplitude;
                Ok(Field::from_fn(grid, model, |i, x| {
                    values[i] * (1.0 + a * (k * x).cos())
                }))
            }
            InitialCondition::Field(f) => {
                if f.model != model || f.grid != grid {
                    return Err(Error::Domain(
                        "initial field does not match the configured model and grid".into(),
                    ));
                }
                let mut f = f.clone();
                f.time = 0.0;
                Ok(f)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub params: ModelParams,
    pub model: Model,
    pub grid: Grid1D,
    pub initial: InitialCondition,
    pub dt: f64,
    pub t_end: f64,
    /// Record every `stride`-th step (the final step is always recorded).
    pub stride: usize,
    pub stepper: Stepper,
    /// Stop once the steady-state residual stays small for 10 samples.
    pub steady_stop: bool,
    /// Worker threads for the per-step sweeps; 1 runs inline.
    pub threads: usize,
    /// Run the explicit stepper above `stable_dt` (with a warning).
    pub allow_unstable_dt: bool,
}

impl SimConfig {
    pub fn new(params: ModelParams, model: Model, initial: InitialCondition) -> Result<Self> {
        Ok(Self {
            params,
            model,
            grid: Grid1D::new(2.0, 40)?,
            initial,
            dt: 1e-2,
            t_end: 500.0,
            stride: 100,
            stepper: Stepper::Explicit,
            steady_stop: true,
            threads: 1,
            allow_unstable_dt: false,
        })
    }

    pub fn steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }

    /// Checks the config and returns warnings for tolerated irregularities.
    pub fn validate(&self) -> Result<Vec<String>> {
        self.params.validate()?;
        let mut warnings = Vec::new();
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::param("dt", "must be positive and finite"));
        }
        if !(self.t_end >= self.dt) || !self.t_end.is_finite() {
            return Err(Error::param("t_end", "must be finite and at least dt"));
        }
        if self.stride == 0 {
            return Err(Error::param("stride", "must be at least 1"));
        }
        if self.threads == 0 {
            return Err(Error::param("threads", "must be at least 1"));
        }
        let n = self.steps();
        if ((n as f64) * self.dt - self.t_end).abs() > 1e-9 * self.t_end {
            warnings.push(format!(
                "t_end = {} is not a multiple of dt = {}; final time is {}",
                self.t_end,
                self.dt,
                n as f64 * self.dt
            ));
        }
        if self.stepper == Stepper::Explicit {
            let bound = stable_dt(&self.params, &self.grid, self.model);
            if self.dt > bound * (1.0 + 1e-12) {
                if !self.allow_unstable_dt {
                    return Err(Error::param(
                        "dt",
                        format!(
                            "{} exceeds the explicit stability bound {bound:.6e}",
                            self.dt
                        ),
                    ));
                }
                warnings.push(format!(
                    "dt = {} exceeds the explicit stability bound {bound:.6e}",
                    self.dt
                ));
            }
        }
        Ok(warnings)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Termination {
    ReachedEnd,
    SteadyState,
    Aborted { time: f64, reason: String },
}

impl Termination {
    pub fn is_aborted(&self) -> bool {
        matches!(self, Termination::Aborted { .. })
    }
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Termination::ReachedEnd => f.write_str("reached t_end"),
            Termination::SteadyState => f.write_str("steady state"),
            Termination::Aborted { time, reason } => write!(f, "aborted at t = {time}: {reason}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleDiagnostics {
    pub time: f64,
    /// Trapezoid integral per compartment.
    pub mass: Vec<f64>,
    /// Minimum after clamping.
    pub min_value: f64,
    /// Smallest value seen since the previous sample, before clamping.
    pub min_before_clamp: f64,
    pub steady_residual: f64,
    /// Largest per-compartment `max − min` over the grid.
    pub spread: f64,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub model: Model,
    pub params: ModelParams,
    pub times: Vec<f64>,
    pub fields: Vec<Field>,
    pub diagnostics: Vec<SampleDiagnostics>,
    pub termination: Termination,
    pub warnings: Vec<String>,
}

impl Trajectory {
    pub fn last(&self) -> &Field {
        self.fields
            .last()
            .expect("trajectory holds the initial sample")
    }

    /// Smallest pre-clamp value over the whole run.
    pub fn min_before_clamp(&self) -> f64 {
        self.diagnostics
            .iter()
            .map(|d| d.min_before_clamp)
            .fold(f64::INFINITY, f64::min)
    }
}

/// `sup_{i,x} |d Δ_h u_i + f_i(u)|`.
pub fn steady_state_residual(f: &Field, p: &ModelParams) -> f64 {
    let n = f.grid.nodes();
    let m = f.model.len();
    let dx = f.grid.spacing();
    let mut lap = vec![vec![0.0; n]; m];
    for (u, l) in f.data.iter().zip(lap.iter_mut()) {
        laplacian_into(u, 1.0 / (dx * dx), l);
    }
    let mut y = [0.0; 6];
    let mut r = [0.0; 6];
    let mut worst: f64 = 0.0;
    for j in 0..n {
        for i in 0..m {
            y[i] = f.data[i][j];
        }
        reaction_into(f.model, p, &y[..m], &mut r[..m]);
        for i in 0..m {
            worst = worst.max((p.d * lap[i][j] + r[i]).abs());
        }
    }
    worst
}

fn diagnose(f: &Field, p: &ModelParams, min_before_clamp: f64) -> SampleDiagnostics {
    SampleDiagnostics {
        time: f.time,
        mass: mass_integral(f),
        min_value: f.min_value(),
        min_before_clamp,
        steady_residual: steady_state_residual(f, p),
        spread: f.spatial_spread(),
    }
}

/// Runs the configured simulation. Aborts are reported through
/// [`Trajectory::termination`] with every sample up to the failure kept.
pub fn integrate(cfg: &SimConfig) -> Result<Trajectory> {
    integrate_with_forcing(cfg, None)
}

pub(crate) fn integrate_with_forcing(
    cfg: &SimConfig,
    forcing: Option<Forcing<'_>>,
) -> Result<Trajectory> {
    let warnings = cfg.validate()?;
    let field = cfg.initial.build(cfg.grid, cfg.model)?;
    if !field.is_finite() {
        return Err(Error::Domain("initial data must be finite".into()));
    }
    if cfg.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::Domain(format!("cannot start thread pool: {e}")))?;
        pool.install(|| run(cfg, field, warnings, forcing, true))
    } else {
        run(cfg, field, warnings, forcing, false)
    }
}

fn run(
    cfg: &SimConfig,
    mut field: Field,
    warnings: Vec<String>,
    forcing: Option<Forcing<'_>>,
    parallel: bool,
) -> Result<Trajectory> {
    let p = &cfg.params;
    let mut engine = StepEngine::new(cfg.model, *p, &cfg.grid, cfg.dt, cfg.stepper, parallel)?;
    let steps = cfg.steps();
    let quiet = 1e-8 * p.lambda.max(1.0);

    let mut traj = Trajectory {
        model: cfg.model,
        params: *p,
        times: vec![0.0],
        fields: vec![field.clone()],
        diagnostics: vec![diagnose(&field, p, field.min_value())],
        termination: Termination::ReachedEnd,
        warnings,
    };
    let mut quiet_run = 0usize;
    let mut window_min = f64::INFINITY;

    for k in 1..=steps {
        engine.advance(&mut field, k as f64 * cfg.dt, forcing);

        let mut step_min = f64::INFINITY;
        let mut finite = true;
        for v in field.data.iter().flatten() {
            finite &= v.is_finite();
            step_min = step_min.min(*v);
        }
        window_min = window_min.min(step_min);
        let abort = if !finite {
            Some("non-finite value produced".to_string())
        } else if step_min < -CLAMP_TOLERANCE {
            Some(format!("positivity violated (min = {step_min:.3e})"))
        } else {
            None
        };
        if let Some(reason) = abort {
            if finite {
                traj.diagnostics.push(diagnose(&field, p, window_min));
                traj.times.push(field.time);
                traj.fields.push(field.clone());
            }
            traj.termination = Termination::Aborted {
                time: field.time,
                reason,
            };
            return Ok(traj);
        }
        if step_min < 0.0 {
            for v in field.data.iter_mut().flatten() {
                if *v < 0.0 {
                    *v = 0.0;
                }
            }
        }

        if k % cfg.stride == 0 || k == steps {
            let diag = diagnose(&field, p, window_min);
            window_min = f64::INFINITY;
            quiet_run = if diag.steady_residual < quiet {
                quiet_run + 1
            } else {
                0
            };
            traj.diagnostics.push(diag);
            traj.times.push(field.time);
            traj.fields.push(field.clone());
            if cfg.steady_stop && quiet_run >= STEADY_SAMPLES && k < steps {
                traj.termination = Termination::SteadyState;
                break;
            }
        }
    }
    Ok(traj)
}
