use nalgebra::DVector;
use std::fmt;

use super::{r0_basic, reaction, CompartmentVector, Model, ModelParams};
use crate::error::{Error, Result};
use crate::stability::jacobian;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquilibriumKind {
    DrugFree,
    DrugAddiction,
}

impl fmt::Display for EquilibriumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquilibriumKind::DrugFree => "drug-free",
            EquilibriumKind::DrugAddiction => "drug-addiction",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    RootFound,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::RootFound => "root-found",
        })
    }
}

/// Spatially homogeneous steady state.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumPoint {
    pub point: CompartmentVector,
    pub kind: EquilibriumKind,
    pub provenance: Provenance,
}

impl EquilibriumPoint {
    pub fn model(&self) -> Model {
        self.point.model
    }
}

/// Residual tolerance for equilibria, `1e-10 · max(1, Λ)`.
pub fn residual_tolerance(p: &ModelParams) -> f64 {
    1e-10 * p.lambda.max(1.0)
}

/// Sup-norm of the reaction term at the equilibrium.
pub fn equilibrium_residual(e: &EquilibriumPoint, p: &ModelParams) -> f64 {
    reaction(&e.point, p).sup_norm()
}

fn checked(e: EquilibriumPoint, p: &ModelParams) -> Result<EquilibriumPoint> {
    if let Some(i) = e.point.values.iter().position(|v| !v.is_finite()) {
        return Err(Error::Domain(format!(
            "equilibrium component {} is not finite",
            e.model().names()[i]
        )));
    }
    let res = equilibrium_residual(&e, p);
    if res >= residual_tolerance(p) {
        return Err(Error::Domain(format!(
            "closed-form equilibrium residual {res:e} exceeds tolerance"
        )));
    }
    Ok(e)
}

/// `(Λ/η1, 0, …, 0)` in the layout of `model`.
pub fn drug_free_equilibrium(p: &ModelParams, model: Model) -> Result<EquilibriumPoint> {
    if p.eta[0] <= 0.0 {
        return Err(Error::Domain("drug-free equilibrium needs eta1 > 0".into()));
    }
    let mut point = CompartmentVector::zeros(model);
    point.values[0] = p.drug_free_susceptible();
    checked(
        EquilibriumPoint {
            point,
            kind: EquilibriumKind::DrugFree,
            provenance: Provenance::ClosedForm,
        },
        p,
    )
}

/// Closed-form drug-addiction equilibrium of the SCHR model. Requires R0 > 1.
pub fn endemic_equilibrium_basic(p: &ModelParams) -> Result<EquilibriumPoint> {
    let r0 = r0_basic(p)?;
    if r0 <= 1.0 {
        return Err(Error::NoEndemicEquilibrium(format!("R0 = {r0} <= 1")));
    }
    if p.heroin_exit() <= 0.0 || p.eta[3] <= 0.0 {
        return Err(Error::Domain(
            "endemic equilibrium needs eta3 + gamma2 > 0 and eta4 > 0".into(),
        ));
    }
    let excess = r0 - 1.0;
    let s = p.cocaine_exit() / p.beta;
    let c = p.eta[0] / p.beta * excess;
    let h = p.sigma * c / p.heroin_exit();
    let r = (p.gamma[0] * c + p.gamma[1] * h) / p.eta[3];
    checked(
        EquilibriumPoint {
            point: CompartmentVector::basic([s, c, h, r]),
            kind: EquilibriumKind::DrugAddiction,
            provenance: Provenance::ClosedForm,
        },
        p,
    )
}

/// Closed-form drug-addiction equilibrium of the extended model.
///
/// Exists iff the resulting `C*` is positive, which is governed by the exact
/// invasion threshold rather than by the closed-form R0.
pub fn endemic_equilibrium_extended(p: &ModelParams) -> Result<EquilibriumPoint> {
    p.validate()?;
    p.validate_treatment_blocks()?;
    if p.beta <= 0.0 {
        return Err(Error::NoEndemicEquilibrium("beta = 0".into()));
    }
    if p.eta[3] <= 0.0 {
        return Err(Error::Domain("endemic equilibrium needs eta4 > 0".into()));
    }
    let b = p.cocaine_treatment_exit();
    let e = p.heroin_treatment_exit();
    // Λ/(η1 R0) − μ1μ2/(β b), grouped over a common β.
    let s = (p.cocaine_exit_extended() - p.mu[0] * p.mu[1] / b) / p.beta;
    let c = (p.lambda - p.eta[0] * s) / (p.beta * s);
    if !(c > 0.0) {
        return Err(Error::NoEndemicEquilibrium(format!("C* = {c} <= 0")));
    }
    let uc = p.mu[0] * c / b;
    let h = p.sigma * e * c / p.heroin_block_determinant();
    let uh = p.kappa[0] * h / e;
    let r = (p.gamma[0] * c + p.gamma[1] * h + p.gamma[2] * uc + p.gamma[3] * uh) / p.eta[3];
    checked(
        EquilibriumPoint {
            point: CompartmentVector::extended([s, c, uc, h, uh, r]),
            kind: EquilibriumKind::DrugAddiction,
            provenance: Provenance::ClosedForm,
        },
        p,
    )
}

pub fn endemic_equilibrium(p: &ModelParams, model: Model) -> Result<EquilibriumPoint> {
    match model {
        Model::Basic => endemic_equilibrium_basic(p),
        Model::Extended => endemic_equilibrium_extended(p),
    }
}

const NEWTON_MAX_ITER: usize = 100;
const NEWTON_TOL: f64 = 1e-12;
const PSEUDO_TRANSIENT_MAX_ITER: usize = 2000;

/// Damped Newton iteration on the reaction term, seeded at `seed`.
///
/// Independent of the closed forms; used to cross-check them. Converges
/// when the residual drops below `1e-12·max(1,Λ)` or the relative step
/// below `1e-12`.
///
/// For [`EquilibriumKind::DrugAddiction`] the seed must be strictly positive
/// and the iteration is pseudo-transient: each step solves
/// `(I/h − J)s = F` with `h` grown as the residual falls, and is cut back to
/// stay inside the positive orthant. Early iterates follow the flow of the
/// kinetics, so an interior seed is not pulled onto the drug-free root; late
/// iterates are plain Newton steps.
pub fn newton_equilibrium(
    p: &ModelParams,
    seed: &CompartmentVector,
    kind: EquilibriumKind,
) -> Result<EquilibriumPoint> {
    let model = seed.model;
    let n = model.len();
    let scale = p.lambda.max(1.0);
    let interior = kind == EquilibriumKind::DrugAddiction;
    if interior && seed.values.iter().any(|&v| !(v > 0.0)) {
        return Err(Error::Domain(
            "drug-addiction Newton seed must be strictly positive".into(),
        ));
    }
    let max_iter = if interior {
        PSEUDO_TRANSIENT_MAX_ITER
    } else {
        NEWTON_MAX_ITER
    };
    let mut x = seed.clone();
    let mut f = reaction(&x, p);
    let mut fnorm = f.sup_norm();
    let mut h = 1.0;
    let mut iterations = 0;

    while iterations < max_iter {
        if fnorm <= NEWTON_TOL * scale {
            break;
        }
        iterations += 1;
        let mut jac = jacobian(p, &x);
        if interior {
            for i in 0..n {
                jac[(i, i)] -= 1.0 / h;
            }
        }
        let rhs = DVector::from_iterator(n, f.values.iter().map(|v| -v));
        let step = jac
            .lu()
            .solve(&rhs)
            .ok_or_else(|| Error::Domain("singular Jacobian in Newton iteration".into()))?;

        let mut damping: f64 = 1.0;
        if interior {
            // Fraction-to-boundary rule.
            for (xi, si) in x.values.iter().zip(step.iter()) {
                if *si < 0.0 {
                    damping = damping.min(0.9 * xi / -si);
                }
            }
        }
        let trial = |damping: f64| CompartmentVector {
            model,
            values: x
                .values
                .iter()
                .zip(step.iter())
                .map(|(xi, si)| xi + damping * si)
                .collect(),
        };
        if interior {
            let next = trial(damping);
            let fn_next = reaction(&next, p);
            let norm_next = fn_next.sup_norm();
            h = (h * fnorm / norm_next.max(f64::MIN_POSITIVE)).clamp(1e-3, 1e12);
            x = next;
            f = fn_next;
            fnorm = norm_next;
        } else {
            loop {
                let next = trial(damping);
                let ft = reaction(&next, p);
                let ftn = ft.sup_norm();
                if ftn < fnorm || damping < 1e-3 {
                    x = next;
                    f = ft;
                    fnorm = ftn;
                    break;
                }
                damping *= 0.5;
            }
        }
        let step_norm = step.amax() * damping;
        if step_norm <= NEWTON_TOL * (1.0 + x.sup_norm()) {
            break;
        }
    }

    if fnorm > residual_tolerance(p) {
        return Err(Error::NoConvergence {
            iterations,
            residual: fnorm,
        });
    }
    Ok(EquilibriumPoint {
        point: x,
        kind,
        provenance: Provenance::RootFound,
    })
}
