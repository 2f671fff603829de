use nalgebra::DMatrix;

use crate::error::Result;
use crate::kinetics::{CompartmentVector, Model, ModelParams};

/// Jacobian of the reaction term (no diffusion) at `y`, in `y`'s layout.
pub fn jacobian(p: &ModelParams, y: &CompartmentVector) -> DMatrix<f64> {
    let v = &y.values;
    let (s, c) = (v[0], v[1]);
    let (bs, bc) = (p.beta * s, p.beta * c);
    match y.model {
        Model::Basic => {
            #[rustfmt::skip]
            let m = DMatrix::from_row_slice(4, 4, &[
                -p.eta[0] - bc, -bs,                     0.0,             0.0,
                bc,             bs - p.cocaine_exit(),   0.0,             0.0,
                0.0,            p.sigma,                 -p.heroin_exit(), 0.0,
                0.0,            p.gamma[0],              p.gamma[1],      -p.eta[3],
            ]);
            m
        }
        Model::Extended => {
            let [m1, m2] = p.mu;
            let [k1, k2] = p.kappa;
            #[rustfmt::skip]
            let m = DMatrix::from_row_slice(6, 6, &[
                -p.eta[0] - bc, -bs,                           0.0,                          0.0,                          0.0,                          0.0,
                bc,             bs - p.cocaine_exit_extended(), m2,                           0.0,                          0.0,                          0.0,
                0.0,            m1,                            -p.cocaine_treatment_exit(),  0.0,                          0.0,                          0.0,
                0.0,            p.sigma,                       0.0,                          -p.heroin_exit_extended(),    k2,                           0.0,
                0.0,            0.0,                           0.0,                          k1,                           -p.heroin_treatment_exit(),   0.0,
                0.0,            p.gamma[0],                    p.gamma[2],                   p.gamma[1],                   p.gamma[3],                   -p.eta[3],
            ]);
            m
        }
    }
}

pub fn jacobian_basic(p: &ModelParams, y: &CompartmentVector) -> Result<DMatrix<f64>> {
    y.expect_model(Model::Basic)?;
    Ok(jacobian(p, y))
}

pub fn jacobian_extended(p: &ModelParams, y: &CompartmentVector) -> Result<DMatrix<f64>> {
    y.expect_model(Model::Extended)?;
    Ok(jacobian(p, y))
}

/// Jacobian with the `R` row and column removed. `R` appears in no other
/// equation, so this block carries all of the non-trivial dynamics.
pub fn reduced_jacobian(p: &ModelParams, y: &CompartmentVector) -> DMatrix<f64> {
    let n = y.model.reduced_len();
    jacobian(p, y).view((0, 0), (n, n)).into_owned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::presets;
    use crate::kinetics::{drug_free_equilibrium, reaction};

    fn central_difference(p: &ModelParams, y: &CompartmentVector) -> DMatrix<f64> {
        let n = y.model.len();
        let mut out = DMatrix::zeros(n, n);
        for j in 0..n {
            let h = 1e-6 * y.values[j].abs().max(1.0);
            let mut plus = y.clone();
            let mut minus = y.clone();
            plus.values[j] += h;
            minus.values[j] -= h;
            let fp = reaction(&plus, p);
            let fm = reaction(&minus, p);
            for i in 0..n {
                out[(i, j)] = (fp[i] - fm[i]) / (2.0 * h);
            }
        }
        out
    }

    #[test]
    fn entry_at_drug_free_point() {
        let p = presets::basic_endemic_params();
        let e = drug_free_equilibrium(&p, Model::Basic).unwrap();
        let j = jacobian_basic(&p, &e.point).unwrap();
        assert!((j[(1, 1)] - 0.17).abs() < 1e-14, "{}", j[(1, 1)]);
    }

    #[test]
    fn origin_s_entry_is_minus_eta1() {
        let p = presets::basic_endemic_params();
        let j = jacobian_basic(&p, &CompartmentVector::zeros(Model::Basic)).unwrap();
        assert_eq!(j[(0, 0)], -p.eta[0]);
    }

    #[test]
    fn matches_finite_differences() {
        let p = presets::basic_endemic_params();
        let y = CompartmentVector::basic([30.0, 10.0, 5.0, 0.0]);
        let a = jacobian_basic(&p, &y).unwrap();
        let fd = central_difference(&p, &y);
        for (x, z) in a.iter().zip(fd.iter()) {
            assert!((x - z).abs() <= 1e-6 * x.abs().max(1e-3), "{x} vs {z}");
        }
        let p = presets::extended_endemic_params();
        let y = CompartmentVector::extended([30.0, 10.0, 3.0, 5.0, 3.0, 1.0]);
        let a = jacobian_extended(&p, &y).unwrap();
        let fd = central_difference(&p, &y);
        for (x, z) in a.iter().zip(fd.iter()) {
            assert!((x - z).abs() <= 1e-6 * x.abs().max(1e-3), "{x} vs {z}");
        }
    }

    #[test]
    fn reduced_drops_recovered() {
        let p = presets::extended_endemic_params();
        let y = CompartmentVector::extended([30.0, 10.0, 3.0, 5.0, 3.0, 1.0]);
        let r = reduced_jacobian(&p, &y);
        assert_eq!(r.shape(), (5, 5));
    }
}
