//! Lyapunov functionals evaluated on discrete fields.
//!
//! Each functional is the trapezoid integral over the grid of a pointwise
//! density. Positivity of `S` and `C` is a precondition of `𝒢2` because of
//! its logarithms; violations are reported per sample by
//! [`dissipation_report`] instead of aborting.

use crate::error::{Error, Result};
use crate::kinetics::{EquilibriumKind, EquilibriumPoint, Model, ModelParams};
use crate::rdsolver::{Field, Trajectory};

/// `∫ C dx`.
pub fn lyapunov_g1(f: &Field) -> f64 {
    f.grid.integrate(f.compartment(f.model.cocaine()))
}

/// `u* (r − 1 − ln r)` with `r = u/u*`, evaluated through `ln_1p` so the
/// value stays accurate near `r = 1`.
fn volterra(u: f64, ustar: f64) -> f64 {
    let dr = (u - ustar) / ustar;
    ustar * (dr - dr.ln_1p())
}

/// `∫ (S − S* − S* ln(S/S*)) + (C − C* − C* ln(C/C*)) dx` around the basic
/// drug-addiction equilibrium.
pub fn lyapunov_g2(f: &Field, e: &EquilibriumPoint) -> Result<f64> {
    if f.model != Model::Basic
        || e.model() != Model::Basic
        || e.kind != EquilibriumKind::DrugAddiction
    {
        return Err(Error::Domain(
            "G2 needs a basic field and the basic drug-addiction equilibrium".into(),
        ));
    }
    let (ss, cs) = (e.point[0], e.point[1]);
    let s = f.compartment(0);
    let c = f.compartment(1);
    if let Some(j) = (0..s.len()).find(|&j| !(s[j] > 0.0 && c[j] > 0.0)) {
        return Err(Error::Domain(format!(
            "G2 undefined: S or C nonpositive at node {j}"
        )));
    }
    let density: Vec<f64> = s
        .iter()
        .zip(c)
        .map(|(&sv, &cv)| volterra(sv, ss) + volterra(cv, cs))
        .collect();
    Ok(f.grid.integrate(&density))
}

/// `∫ C + α1 U_c + α2 H + α3 U_h dx` for the extended drug-free state.
pub fn lyapunov_extended_free(f: &Field, alphas: [f64; 3]) -> Result<f64> {
    if f.model != Model::Extended {
        return Err(Error::Domain(
            "extended functional needs an extended field".into(),
        ));
    }
    if let Some(i) = alphas.iter().position(|&a| !(a > 0.0)) {
        return Err(Error::Domain(format!("alpha{} must be > 0", i + 1)));
    }
    let n = f.grid.nodes();
    let density: Vec<f64> = (0..n)
        .map(|j| {
            f.data[1][j]
                + alphas[0] * f.data[2][j]
                + alphas[1] * f.data[3][j]
                + alphas[2] * f.data[4][j]
        })
        .collect();
    Ok(f.grid.integrate(&density))
}

/// `∫ Σ (u − u*)² dx` over `S, C, U_c, H, U_h`.
pub fn lyapunov_extended_endemic(f: &Field, e: &EquilibriumPoint) -> Result<f64> {
    if f.model != Model::Extended || e.model() != Model::Extended {
        return Err(Error::Domain(
            "extended functional needs an extended field and equilibrium".into(),
        ));
    }
    let n = f.grid.nodes();
    let density: Vec<f64> = (0..n)
        .map(|j| {
            (0..5)
                .map(|i| {
                    let dv = f.data[i][j] - e.point[i];
                    dv * dv
                })
                .sum()
        })
        .collect();
    Ok(f.grid.integrate(&density))
}

/// Coefficients of `C, U_c, H, U_h` in the time derivative of
/// `C + α1 U_c + α2 H + α3 U_h` along the extended kinetics at a given `S`:
///
/// - `C`:   `βS − (η2+σ+γ1+μ1) + α1 μ1 + α2 σ`
/// - `U_c`: `μ2 − α1 (μ2+η5+γ3)`
/// - `H`:   `α3 κ1 − α2 (κ1+η3+γ2)`
/// - `U_h`: `α2 κ2 − α3 (κ2+η6+γ4)`
pub fn free_functional_coefficients(p: &ModelParams, alphas: [f64; 3], s: f64) -> [f64; 4] {
    let [a1, a2, a3] = alphas;
    [
        p.beta * s - p.cocaine_exit_extended() + a1 * p.mu[0] + a2 * p.sigma,
        p.mu[1] - a1 * p.cocaine_treatment_exit(),
        a3 * p.kappa[0] - a2 * p.heroin_exit_extended(),
        a2 * p.kappa[1] - a3 * p.heroin_treatment_exit(),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaChoice {
    Feasible([f64; 3]),
    /// No weights found; carries the smallest achieved maximum coefficient.
    Infeasible {
        best_max_coefficient: f64,
    },
}

fn worst_coefficient(p: &ModelParams, log_alphas: [f64; 3]) -> f64 {
    let alphas = log_alphas.map(|l| 10f64.powf(l));
    free_functional_coefficients(p, alphas, p.drug_free_susceptible())
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max)
}

const LOG_MIN: f64 = -6.0;
const LOG_MAX: f64 = 6.0;
const GRID_POINTS: usize = 25;

/// Searches for positive weights making all four coefficients of
/// [`free_functional_coefficients`] negative at `S = Λ/η1`.
///
/// Coarse log-spaced grid over `[1e-6, 1e6]³`, then compass refinement of
/// the best point in log space, minimising the largest coefficient.
pub fn choose_alphas(p: &ModelParams) -> AlphaChoice {
    let h = (LOG_MAX - LOG_MIN) / (GRID_POINTS - 1) as f64;
    let at = |i: usize| LOG_MIN + h * i as f64;
    let mut best = [0.0; 3];
    let mut best_val = f64::INFINITY;
    for i in 0..GRID_POINTS {
        for j in 0..GRID_POINTS {
            for k in 0..GRID_POINTS {
                let x = [at(i), at(j), at(k)];
                let v = worst_coefficient(p, x);
                if v < best_val {
                    best_val = v;
                    best = x;
                }
            }
        }
    }

    let mut step = h / 2.0;
    while step > 1e-9 {
        let mut improved = false;
        for axis in 0..3 {
            for dir in [-1.0, 1.0] {
                let mut x = best;
                x[axis] = (x[axis] + dir * step).clamp(2.0 * LOG_MIN, 2.0 * LOG_MAX);
                let v = worst_coefficient(p, x);
                if v < best_val {
                    best_val = v;
                    best = x;
                    improved = true;
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }

    if best_val < 0.0 {
        AlphaChoice::Feasible(best.map(|l| 10f64.powf(l)))
    } else {
        AlphaChoice::Infeasible {
            best_max_coefficient: best_val,
        }
    }
}

/// Which functional [`dissipation_report`] evaluates.
#[derive(Debug, Clone, PartialEq)]
pub enum LyapunovFunctional {
    G1,
    G2(EquilibriumPoint),
    ExtendedFree([f64; 3]),
    ExtendedEndemic(EquilibriumPoint),
}

impl LyapunovFunctional {
    pub fn name(&self) -> &'static str {
        match self {
            LyapunovFunctional::G1 => "g1",
            LyapunovFunctional::G2(_) => "g2",
            LyapunovFunctional::ExtendedFree(_) => "ext-free",
            LyapunovFunctional::ExtendedEndemic(_) => "ext-endemic",
        }
    }

    pub fn evaluate(&self, f: &Field) -> Result<f64> {
        match self {
            LyapunovFunctional::G1 => Ok(lyapunov_g1(f)),
            LyapunovFunctional::G2(e) => lyapunov_g2(f, e),
            LyapunovFunctional::ExtendedFree(a) => lyapunov_extended_free(f, *a),
            LyapunovFunctional::ExtendedEndemic(e) => lyapunov_extended_endemic(f, e),
        }
    }
}

/// Functional values along a trajectory with forward-difference slopes.
///
/// `values[k]` is `None` when the functional is undefined at sample `k`;
/// `slopes[k]` is the slope from sample `k` to `k+1` (`None` for the last
/// sample or when either end is undefined).
#[derive(Debug, Clone, PartialEq)]
pub struct LyapunovTrace {
    pub functional: &'static str,
    pub times: Vec<f64>,
    pub values: Vec<Option<f64>>,
    pub slopes: Vec<Option<f64>>,
}

impl LyapunovTrace {
    pub fn flagged(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&k| self.values[k].is_none())
            .collect()
    }

    fn slopes_after(&self, t: f64) -> impl Iterator<Item = f64> + '_ {
        self.times
            .iter()
            .zip(&self.slopes)
            .filter(move |(&tk, _)| tk >= t)
            .filter_map(|(_, s)| *s)
    }

    /// Fraction of defined slopes at sample times `>= t` that are `<= 0`.
    pub fn fraction_nonpositive(&self, t: f64) -> f64 {
        let (mut total, mut good) = (0usize, 0usize);
        for s in self.slopes_after(t) {
            total += 1;
            if s <= 0.0 {
                good += 1;
            }
        }
        if total == 0 {
            return f64::NAN;
        }
        good as f64 / total as f64
    }

    /// True when every defined slope at sample times `>= t` is negative.
    pub fn strictly_decreasing_after(&self, t: f64) -> bool {
        let mut any = false;
        for s in self.slopes_after(t) {
            any = true;
            if s >= 0.0 {
                return false;
            }
        }
        any
    }

    /// Least-squares slope of `ln(value)` against time over samples with
    /// `t >= from` and positive values.
    pub fn tail_log_slope(&self, from: f64) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .times
            .iter()
            .zip(&self.values)
            .filter(|(&t, _)| t >= from)
            .filter_map(|(&t, v)| v.filter(|&v| v > 0.0).map(|v| (t, v.ln())))
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let n = pts.len() as f64;
        let mt = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mt) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mt) * (p.0 - mt)).sum();
        (sxx > 0.0).then(|| sxy / sxx)
    }
}

/// Evaluates `functional` at every sample of `traj`.
pub fn dissipation_report(traj: &Trajectory, functional: &LyapunovFunctional) -> LyapunovTrace {
    let values: Vec<Option<f64>> = traj
        .fields
        .iter()
        .map(|f| functional.evaluate(f).ok())
        .collect();
    let n = values.len();
    let slopes = (0..n)
        .map(|k| {
            if k + 1 >= n {
                return None;
            }
            match (values[k], values[k + 1]) {
                (Some(a), Some(b)) => Some((b - a) / (traj.times[k + 1] - traj.times[k])),
                _ => None,
            }
        })
        .collect();
    LyapunovTrace {
        functional: functional.name(),
        times: traj.times.clone(),
        values,
        slopes,
    }
}
