use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

use super::laplacian::laplacian_into;
use super::{Field, Grid1D, NeumannDiffusionSolver};
use crate::error::{Error, Result};
use crate::kinetics::{drug_free_equilibrium, reaction_into, Model, ModelParams};
use crate::stability::jacobian;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stepper {
    /// Forward Euler on `d·Δ_h u + f(u)`.
    #[default]
    Explicit,
    /// Backward Euler diffusion, forward Euler reaction.
    Imex,
}

impl Stepper {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "explicit" => Some(Stepper::Explicit),
            "imex" => Some(Stepper::Imex),
            _ => None,
        }
    }
}

impl fmt::Display for Stepper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stepper::Explicit => "explicit",
            Stepper::Imex => "imex",
        })
    }
}

/// Sufficient (not necessary) forward-Euler step bound:
/// `min(δx²/(2d), 0.1/ρ)` with `ρ` the max absolute row sum of the reaction
/// Jacobian at the drug-free state. Either bound is `∞` when its rate is 0.
pub fn stable_dt(p: &ModelParams, grid: &Grid1D, model: Model) -> f64 {
    let dx = grid.spacing();
    let diffusion = if p.d > 0.0 {
        dx * dx / (2.0 * p.d)
    } else {
        f64::INFINITY
    };
    let rho = drug_free_equilibrium(p, model)
        .map(|e| {
            let j = jacobian(p, &e.point);
            j.row_iter()
                .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
                .fold(0.0, f64::max)
        })
        .unwrap_or(0.0);
    let reaction = if rho > 0.0 { 0.1 / rho } else { f64::INFINITY };
    diffusion.min(reaction)
}

/// Space-time source added to the reaction term, `g(t, x, compartment)`.
pub(crate) type Forcing<'a> = &'a (dyn Fn(f64, f64, usize) -> f64 + Sync);

/// Reusable buffers for repeated steps on one grid.
pub(crate) struct StepEngine {
    model: Model,
    params: ModelParams,
    dt: f64,
    kind: Stepper,
    inv_dx2: f64,
    xs: Vec<f64>,
    rates: Vec<f64>,
    lap: Vec<Vec<f64>>,
    implicit: Option<NeumannDiffusionSolver>,
    parallel: bool,
}

impl StepEngine {
    pub(crate) fn new(
        model: Model,
        params: ModelParams,
        grid: &Grid1D,
        dt: f64,
        kind: Stepper,
        parallel: bool,
    ) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::Domain(format!("dt must be > 0, got {dt}")));
        }
        let n = grid.nodes();
        let dx = grid.spacing();
        let implicit = match kind {
            Stepper::Explicit => None,
            Stepper::Imex => Some(NeumannDiffusionSolver::new(n, dt * params.d / (dx * dx))?),
        };
        Ok(Self {
            model,
            params,
            dt,
            kind,
            inv_dx2: 1.0 / (dx * dx),
            xs: grid.positions(),
            rates: vec![0.0; n * model.len()],
            lap: vec![vec![0.0; n]; model.len()],
            implicit,
            parallel,
        })
    }

    /// Advances `field` by one step from `field.time` to `time_next`.
    pub(crate) fn advance(
        &mut self,
        field: &mut Field,
        time_next: f64,
        forcing: Option<Forcing<'_>>,
    ) {
        let m = self.model.len();
        let n = self.xs.len();
        let t = field.time;
        let p = &self.params;
        let model = self.model;
        let xs = &self.xs;
        let data = &field.data;

        // Node-major reaction rates.
        let node_rates = |(j, out): (usize, &mut [f64])| {
            let mut y = [0.0; 6];
            for i in 0..m {
                y[i] = data[i][j];
            }
            reaction_into(model, p, &y[..m], out);
            if let Some(g) = forcing {
                for (i, o) in out.iter_mut().enumerate() {
                    *o += g(t, xs[j], i);
                }
            }
        };
        if self.parallel {
            self.rates
                .par_chunks_mut(m)
                .enumerate()
                .for_each(node_rates);
        } else {
            self.rates.chunks_mut(m).enumerate().for_each(node_rates);
        }

        let dt = self.dt;
        let d = p.d;
        let inv_dx2 = self.inv_dx2;
        let rates = &self.rates;
        let implicit = self.implicit.as_ref();
        let kind = self.kind;
        let update = |(i, (u, lap)): (usize, (&mut Vec<f64>, &mut Vec<f64>))| match kind {
            Stepper::Explicit => {
                laplacian_into(u, inv_dx2, lap);
                for j in 0..n {
                    u[j] += dt * (d * lap[j] + rates[j * m + i]);
                }
            }
            Stepper::Imex => {
                for j in 0..n {
                    u[j] += dt * rates[j * m + i];
                }
                implicit
                    .expect("imex stepper has a diffusion solver")
                    .solve_in_place(u);
            }
        };
        let pairs = field.data.iter_mut().zip(self.lap.iter_mut()).enumerate();
        if self.parallel {
            pairs.collect::<Vec<_>>().into_par_iter().for_each(update);
        } else {
            pairs.for_each(update);
        }
        field.time = time_next;
    }
}

fn single_step(f: &Field, p: &ModelParams, dt: f64, kind: Stepper) -> Result<Field> {
    let mut engine = StepEngine::new(f.model, *p, &f.grid, dt, kind, false)?;
    let mut out = f.clone();
    engine.advance(&mut out, f.time + dt, None);
    if !out.is_finite() {
        return Err(Error::SolverAbort {
            time: out.time,
            reason: "non-finite value produced".into(),
        });
    }
    Ok(out)
}

/// One forward-Euler step `u ← u + dt (d Δ_h u + f(u))`.
pub fn step_explicit(f: &Field, p: &ModelParams, dt: f64) -> Result<Field> {
    single_step(f, p, dt, Stepper::Explicit)
}

/// One IMEX step `(I − dt d Δ_h) u_new = u + dt f(u)`.
pub fn step_imex(f: &Field, p: &ModelParams, dt: f64) -> Result<Field> {
    single_step(f, p, dt, Stepper::Imex)
}
