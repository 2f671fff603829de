use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{eigen_residual, eigenvalues, reduced_jacobian, Mode};
use crate::error::{Error, Result};
use crate::kinetics::{CompartmentVector, EquilibriumKind, EquilibriumPoint, Model, ModelParams};

/// Characteristic roots of the linearisation restricted to one Laplacian mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeRoots {
    pub mode_index: usize,
    pub lambda_j: f64,
    pub roots: Vec<Complex64>,
    /// Quadratic coefficients at the basic drug-addiction equilibrium.
    pub alpha1: Option<f64>,
    pub alpha2: Option<f64>,
}

impl ModeRoots {
    pub fn max_real_part(&self) -> f64 {
        self.roots
            .iter()
            .fold(f64::NEG_INFINITY, |m, z| m.max(z.re))
    }
}

/// Left-hand side of the reduced `(S, C, H)` characteristic equation
///
/// `(X + dλ + η3+γ2)[(X + dλ + η1 + βC)(X + dλ + η2+σ+γ1 − βS) + β²SC]`
pub fn characteristic_basic(
    p: &ModelParams,
    s: f64,
    c: f64,
    lambda_j: f64,
    x: Complex64,
) -> Complex64 {
    let y = x + p.d * lambda_j;
    (y + p.heroin_exit())
        * ((y + p.eta[0] + p.beta * c) * (y + p.cocaine_exit() - p.beta * s)
            + p.beta * p.beta * s * c)
}

/// The three closed-form roots at the drug-free state:
/// `−dλ−η1`, `−dλ−(η2+σ+γ1)(1−R0)`, `−dλ−(η3+γ2)`.
pub fn roots_drug_free(p: &ModelParams, mode: Mode) -> ModeRoots {
    let shift = p.d * mode.lambda;
    let x1 = -shift - p.eta[0];
    let x2 = -shift - p.cocaine_exit() + p.beta * p.lambda / p.eta[0];
    let x3 = -shift - p.heroin_exit();
    ModeRoots {
        mode_index: mode.index,
        lambda_j: mode.lambda,
        roots: [x1, x2, x3]
            .into_iter()
            .map(|r| Complex64::new(r, 0.0))
            .collect(),
        alpha1: None,
        alpha2: None,
    }
}

/// Roots at the basic drug-addiction equilibrium: the two roots of
/// `(X+dλ)² + α1(X+dλ) + α2 = 0` followed by `−dλ−(η3+γ2)`.
pub fn roots_endemic(p: &ModelParams, e: &EquilibriumPoint, mode: Mode) -> Result<ModeRoots> {
    if e.model() != Model::Basic || e.kind != EquilibriumKind::DrugAddiction {
        return Err(Error::Domain(
            "roots_endemic needs the basic-model drug-addiction equilibrium".into(),
        ));
    }
    let (s, c) = (e.point[0], e.point[1]);
    let alpha1 = p.eta[0] + p.cocaine_exit() + p.beta * (c - s);
    let alpha2 = (p.eta[0] + p.beta * c) * p.cocaine_exit() - p.eta[0] * p.beta * s;
    let shift = p.d * mode.lambda;
    let disc = Complex64::new(alpha1 * alpha1 - 4.0 * alpha2, 0.0).sqrt();
    let y1 = (-alpha1 + disc) / 2.0;
    let y2 = (-alpha1 - disc) / 2.0;
    let roots = vec![
        y1 - shift,
        y2 - shift,
        Complex64::new(-shift - p.heroin_exit(), 0.0),
    ];
    Ok(ModeRoots {
        mode_index: mode.index,
        lambda_j: mode.lambda,
        roots,
        alpha1: Some(alpha1),
        alpha2: Some(alpha2),
    })
}

/// Eigenvalues of the reduced Jacobian at `point` shifted by `−dλ_j`,
/// each verified to have `‖Av − Xv‖ < 1e-10`.
pub fn roots_numeric(p: &ModelParams, point: &CompartmentVector, mode: Mode) -> Result<ModeRoots> {
    let j = reduced_jacobian(p, point);
    let n = j.nrows();
    let a = j - DMatrix::<f64>::identity(n, n) * (p.d * mode.lambda);
    let roots = eigenvalues(&a);
    for &x in &roots {
        let res = eigen_residual(&a, x);
        if res >= 1e-10 {
            return Err(Error::Domain(format!(
                "eigenvalue {x} of mode {} failed residual check ({res:e})",
                mode.index
            )));
        }
    }
    Ok(ModeRoots {
        mode_index: mode.index,
        lambda_j: mode.lambda,
        roots,
        alpha1: None,
        alpha2: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::presets;
    use crate::kinetics::{drug_free_equilibrium, endemic_equilibrium_basic, r0_basic};

    fn mode(index: usize, lambda: f64) -> Mode {
        Mode { index, lambda }
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| {
            a.re.partial_cmp(&b.re)
                .unwrap()
                .then(a.im.partial_cmp(&b.im).unwrap())
        });
        v
    }

    #[test]
    fn drug_free_roots_endemic_params() {
        let p = presets::basic_endemic_params();
        let r = roots_drug_free(&p, mode(0, 0.0));
        assert!((r.roots[0].re + 0.01).abs() < 1e-15);
        assert!((r.roots[1].re - 0.17).abs() < 1e-14);
        assert!((r.roots[2].re + 0.06).abs() < 1e-15);
        let r0 = r0_basic(&p).unwrap();
        assert!((r.roots[1].re + 0.26 * (1.0 - r0)).abs() < 1e-14);
    }

    #[test]
    fn drug_free_roots_drug_free_params() {
        let p = presets::basic_drug_free_params();
        let r = roots_drug_free(&p, mode(0, 0.0));
        let r0 = r0_basic(&p).unwrap();
        assert!((r.roots[1].re + 0.081 * (1.0 - r0)).abs() < 1e-15);
        assert!((r.roots[1].re + 0.009_333_333_333_333_333).abs() < 1e-14);
    }

    #[test]
    fn diffusion_shifts_every_root() {
        let p = presets::basic_endemic_params();
        let lam = 2.467_401_100_272_339_6;
        let a = roots_drug_free(&p, mode(0, 0.0));
        let b = roots_drug_free(&p, mode(1, lam));
        for (x, y) in a.roots.iter().zip(&b.roots) {
            assert!((y.re - x.re + 0.246_740_110_027_233_96).abs() < 1e-14);
        }
    }

    #[test]
    fn endemic_roots_mode_zero() {
        let p = presets::basic_endemic_params();
        let e = endemic_equilibrium_basic(&p).unwrap();
        let r = roots_endemic(&p, &e, mode(0, 0.0)).unwrap();
        let a1 = r.alpha1.unwrap();
        let a2 = r.alpha2.unwrap();
        assert!((a1 - 0.016_538_461_538_461_5).abs() < 1e-12, "{a1}");
        assert!((a2 - 0.0017).abs() < 1e-14, "{a2}");
        let im = (a2 - a1 * a1 / 4.0).sqrt();
        assert!((r.roots[0] - Complex64::new(-a1 / 2.0, im)).norm() < 1e-14);
        assert!((r.roots[0].re + 0.008_269_230_769).abs() < 1e-10);
        // √(α2 − α1²/4) = 0.040393314…
        assert!(
            (r.roots[0].im - 0.040_393_314).abs() < 1e-9,
            "{}",
            r.roots[0].im
        );
        assert!((r.roots[2].re + 0.06).abs() < 1e-15);
        for &x in &r.roots {
            let v = characteristic_basic(&p, e.point[0], e.point[1], 0.0, x);
            assert!(v.norm() < 1e-10 * (1.0 + x.norm().powi(3)));
        }
    }

    #[test]
    fn overdamped_endemic_has_real_roots() {
        // Fast S turnover: η1 = 1, R0 = 2 gives α1 = 2, α2 = 0.26.
        let mut p = presets::basic_endemic_params();
        p.eta[0] = 1.0;
        p.beta = 2.0 * p.cocaine_exit() / p.lambda;
        let e = endemic_equilibrium_basic(&p).unwrap();
        let r = roots_endemic(&p, &e, mode(0, 0.0)).unwrap();
        let a1 = r.alpha1.unwrap();
        let a2 = r.alpha2.unwrap();
        assert!(a1 * a1 - 4.0 * a2 > 0.0, "{a1} {a2}");
        for x in &r.roots {
            assert_eq!(x.im, 0.0);
            assert!(x.re < 0.0);
        }
    }

    #[test]
    fn high_modes_damp() {
        let p = presets::basic_endemic_params();
        let e = endemic_equilibrium_basic(&p).unwrap();
        let r = roots_endemic(&p, &e, mode(1000, 1e8)).unwrap();
        assert!(r.max_real_part() < -1e6);
    }

    #[test]
    fn numeric_matches_closed_form_for_basic() {
        let p = presets::basic_endemic_params();
        let e = endemic_equilibrium_basic(&p).unwrap();
        let f = drug_free_equilibrium(&p, Model::Basic).unwrap();
        for m in [mode(0, 0.0), mode(3, 22.2)] {
            let num = sorted(roots_numeric(&p, &e.point, m).unwrap().roots);
            let cf = sorted(roots_endemic(&p, &e, m).unwrap().roots);
            for (a, b) in num.iter().zip(&cf) {
                assert!((a - b).norm() < 1e-10, "{a} vs {b}");
            }
            let num = sorted(roots_numeric(&p, &f.point, m).unwrap().roots);
            let cf = sorted(roots_drug_free(&p, m).roots);
            for (a, b) in num.iter().zip(&cf) {
                assert!((a - b).norm() < 1e-10, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn endemic_roots_need_endemic_point() {
        let p = presets::basic_endemic_params();
        let f = drug_free_equilibrium(&p, Model::Basic).unwrap();
        assert!(roots_endemic(&p, &f, mode(0, 0.0)).is_err());
    }
}
