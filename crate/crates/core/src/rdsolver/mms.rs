//! Manufactured-solution convergence studies.
//!
//! Every compartment is driven towards `u(t, x) = e^{−t}(2 + cos(πx/L))` by
//! adding the source `u_t − d u_xx − f_i(u, …, u)`; the observed error is the
//! sup-norm distance from `u` at the final time.

use std::f64::consts::PI;

use super::integrate::integrate_with_forcing;
use super::{Grid1D, InitialCondition, SimConfig, Stepper};
use crate::error::{Error, Result};
use crate::kinetics::{reaction_into, Model, ModelParams};

pub fn manufactured_solution(t: f64, x: f64, length: f64) -> f64 {
    (-t).exp() * (2.0 + (PI * x / length).cos())
}

#[derive(Debug, Clone, PartialEq)]
pub enum Refinement {
    /// Vary `Mx` at fixed `dt`.
    Spatial {
        cells: Vec<usize>,
        dt: f64,
        t_end: f64,
    },
    /// Vary `dt` at fixed `Mx`.
    Temporal {
        dts: Vec<f64>,
        cells: usize,
        t_end: f64,
    },
}

impl Refinement {
    /// `Mx ∈ {20, 40, 80}`, `dt = 10⁻⁶`, `T = 0.1`.
    pub fn default_spatial() -> Self {
        Refinement::Spatial {
            cells: vec![20, 40, 80],
            dt: 1e-6,
            t_end: 0.1,
        }
    }

    /// `dt ∈ {4, 2, 1}·10⁻³`, `Mx = 40`, `T = 1`.
    pub fn default_temporal() -> Self {
        Refinement::Temporal {
            dts: vec![4e-3, 2e-3, 1e-3],
            cells: 40,
            t_end: 1.0,
        }
    }

    pub fn levels(&self) -> usize {
        match self {
            Refinement::Spatial { cells, .. } => cells.len(),
            Refinement::Temporal { dts, .. } => dts.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceLevel {
    pub cells: usize,
    pub dt: f64,
    pub error: f64,
    /// Observed order against the previous (coarser) level.
    pub order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy {
    pub kind: &'static str,
    pub stepper: Stepper,
    pub t_end: f64,
    pub levels: Vec<ConvergenceLevel>,
}

impl ConvergenceStudy {
    pub fn orders(&self) -> Vec<f64> {
        self.levels.iter().filter_map(|l| l.order).collect()
    }

    pub fn orders_within(&self, lo: f64, hi: f64) -> bool {
        let o = self.orders();
        !o.is_empty() && o.iter().all(|&v| (lo..=hi).contains(&v))
    }
}

fn mms_error(
    p: &ModelParams,
    model: Model,
    cells: usize,
    dt: f64,
    t_end: f64,
    stepper: Stepper,
) -> Result<f64> {
    let grid = Grid1D::new(2.0, cells)?;
    let length = grid.length();
    let k = PI / length;
    let m = model.len();
    let params = *p;
    let forcing = move |t: f64, x: f64, i: usize| {
        let u = manufactured_solution(t, x, length);
        let mut y = [0.0; 6];
        let mut r = [0.0; 6];
        y[..m].iter_mut().for_each(|v| *v = u);
        reaction_into(model, &params, &y[..m], &mut r[..m]);
        -u + params.d * k * k * (-t).exp() * (k * x).cos() - r[i]
    };
    let initial = super::Field::from_fn(grid, model, |_, x| manufactured_solution(0.0, x, length));
    let mut cfg = SimConfig::new(*p, model, InitialCondition::Field(initial))?;
    cfg.grid = grid;
    cfg.dt = dt;
    cfg.t_end = t_end;
    cfg.stepper = stepper;
    cfg.steady_stop = false;
    cfg.stride = cfg.steps().max(1);
    let traj = integrate_with_forcing(&cfg, Some(&forcing))?;
    if let super::Termination::Aborted { time, reason } = traj.termination {
        return Err(Error::SolverAbort { time, reason });
    }
    let last = traj.last();
    let xs = grid.positions();
    Ok(last
        .data
        .iter()
        .flat_map(|c| {
            c.iter()
                .zip(&xs)
                .map(|(&v, &x)| (v - manufactured_solution(last.time, x, length)).abs())
        })
        .fold(0.0, f64::max))
}

fn need_levels(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::Usage(format!(
            "a convergence study needs at least 3 refinement levels, got {n}"
        )));
    }
    Ok(())
}

fn with_orders(mut levels: Vec<ConvergenceLevel>, spatial: bool) -> Vec<ConvergenceLevel> {
    for k in 1..levels.len() {
        let (a, b) = (&levels[k - 1], &levels[k]);
        let ratio = if spatial {
            b.cells as f64 / a.cells as f64
        } else {
            a.dt / b.dt
        };
        levels[k].order = Some((a.error / b.error).ln() / ratio.ln());
    }
    levels
}

/// Sup-norm errors and observed orders for a sequence of grids.
pub fn spatial_convergence(
    p: &ModelParams,
    model: Model,
    cells: &[usize],
    dt: f64,
    t_end: f64,
    stepper: Stepper,
) -> Result<ConvergenceStudy> {
    need_levels(cells.len())?;
    let levels = cells
        .iter()
        .map(|&mx| {
            Ok(ConvergenceLevel {
                cells: mx,
                dt,
                error: mms_error(p, model, mx, dt, t_end, stepper)?,
                order: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceStudy {
        kind: "spatial",
        stepper,
        t_end,
        levels: with_orders(levels, true),
    })
}

/// Sup-norm errors and observed orders for a sequence of time steps.
pub fn temporal_convergence(
    p: &ModelParams,
    model: Model,
    dts: &[f64],
    cells: usize,
    t_end: f64,
    stepper: Stepper,
) -> Result<ConvergenceStudy> {
    need_levels(dts.len())?;
    let levels = dts
        .iter()
        .map(|&dt| {
            Ok(ConvergenceLevel {
                cells,
                dt,
                error: mms_error(p, model, cells, dt, t_end, stepper)?,
                order: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceStudy {
        kind: "temporal",
        stepper,
        t_end,
        levels: with_orders(levels, false),
    })
}

pub fn convergence_study(
    p: &ModelParams,
    model: Model,
    refinement: &Refinement,
    stepper: Stepper,
) -> Result<ConvergenceStudy> {
    match refinement {
        Refinement::Spatial { cells, dt, t_end } => {
            spatial_convergence(p, model, cells, *dt, *t_end, stepper)
        }
        Refinement::Temporal { dts, cells, t_end } => {
            temporal_convergence(p, model, dts, *cells, *t_end, stepper)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::presets;

    #[test]
    fn two_levels_is_usage_error() {
        let p = presets::basic_endemic_params();
        let err = spatial_convergence(&p, Model::Basic, &[20, 40], 1e-4, 0.01, Stepper::Explicit)
            .unwrap_err();
        assert!(matches!(err, Error::Usage(_)));
        let err = temporal_convergence(&p, Model::Basic, &[1e-3], 40, 0.01, Stepper::Explicit)
            .unwrap_err();
        assert!(matches!(err, Error::Usage(_)));
    }

    #[test]
    fn exact_at_t0() {
        assert_eq!(manufactured_solution(0.0, 0.0, 2.0), 3.0);
        assert!((manufactured_solution(0.0, 2.0, 2.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn temporal_order_is_one() {
        let p = presets::basic_endemic_params();
        let s = convergence_study(
            &p,
            Model::Basic,
            &Refinement::default_temporal(),
            Stepper::Explicit,
        )
        .unwrap();
        assert!(s.orders_within(0.8, 1.2), "{:?}", s.levels);
    }

    #[test]
    fn imex_spatial_order_is_two() {
        let p = presets::extended_endemic_params();
        let s = spatial_convergence(
            &p,
            Model::Extended,
            &[10, 20, 40],
            1e-5,
            0.05,
            Stepper::Imex,
        )
        .unwrap();
        assert!(s.orders_within(1.8, 2.2), "{:?}", s.levels);
    }
}
