use nalgebra::DMatrix;

use super::jacobian;
use crate::error::{Error, Result};
use crate::kinetics::{CompartmentVector, ModelParams};

/// Split of the Jacobian into new-infection (`transmission`) and
/// compartment-movement (`transition`) parts.
#[derive(Debug, Clone, PartialEq)]
pub struct NgmDecomposition {
    pub transmission: DMatrix<f64>,
    pub transition: DMatrix<f64>,
    pub evaluated_at: CompartmentVector,
}

/// The transmission matrix holds exactly the derivatives of the ±βSC terms
/// (rows S and C, columns S and C); everything else goes to the transition
/// matrix.
pub fn ngm_decompose(p: &ModelParams, y: &CompartmentVector) -> NgmDecomposition {
    let n = y.model.len();
    let (s, c) = (y.values[0], y.values[1]);
    let mut t = DMatrix::zeros(n, n);
    t[(0, 0)] = -p.beta * c;
    t[(0, 1)] = -p.beta * s;
    t[(1, 0)] = p.beta * c;
    t[(1, 1)] = p.beta * s;
    let k = jacobian(p, y) - &t;
    NgmDecomposition {
        transmission: t,
        transition: k,
        evaluated_at: y.clone(),
    }
}

impl NgmDecomposition {
    /// `−𝒯 𝒦⁻¹`.
    pub fn next_generation_matrix(&self) -> Result<DMatrix<f64>> {
        let inv = self
            .transition
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Domain("transition matrix is singular".into()))?;
        Ok(-(&self.transmission * inv))
    }

    /// `trace(−𝒯 𝒦⁻¹)`.
    pub fn reproduction_trace(&self) -> Result<f64> {
        Ok(self.next_generation_matrix()?.trace())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::presets;
    use crate::kinetics::{drug_free_equilibrium, r0_basic, Model};
    use approx::assert_relative_eq;

    #[test]
    fn transmission_row_at_drug_free_point() {
        let p = presets::basic_endemic_params();
        let e = drug_free_equilibrium(&p, Model::Basic).unwrap();
        let d = ngm_decompose(&p, &e.point);
        let row: Vec<f64> = d.transmission.row(1).iter().copied().collect();
        assert_relative_eq!(row[1], p.beta * p.lambda / p.eta[0], max_relative = 1e-15);
        assert_eq!([row[0], row[2], row[3]], [0.0; 3]);
    }

    #[test]
    fn zero_beta_has_no_transmission() {
        let mut p = presets::basic_endemic_params();
        p.beta = 0.0;
        let d = ngm_decompose(&p, &CompartmentVector::basic([30.0, 10.0, 5.0, 1.0]));
        assert!(d.transmission.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn parts_sum_to_jacobian() {
        let p = presets::extended_endemic_params();
        let y = CompartmentVector::extended([41.0, 7.5, 2.0, 6.0, 1.5, 12.0]);
        let d = ngm_decompose(&p, &y);
        let j = jacobian(&p, &y);
        for (a, b) in (&d.transmission + &d.transition).iter().zip(j.iter()) {
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
        }
    }

    #[test]
    fn trace_matches_closed_form() {
        for p in [
            presets::basic_endemic_params(),
            presets::basic_drug_free_params(),
        ] {
            let e = drug_free_equilibrium(&p, Model::Basic).unwrap();
            let tr = ngm_decompose(&p, &e.point).reproduction_trace().unwrap();
            assert_relative_eq!(tr, r0_basic(&p).unwrap(), max_relative = 1e-12);
        }
    }
}
