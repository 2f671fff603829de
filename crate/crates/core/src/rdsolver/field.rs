use super::Grid1D;
use crate::error::{Error, Result};
use crate::kinetics::{CompartmentVector, Model};

/// Per-compartment nodal values at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    pub grid: Grid1D,
    pub model: Model,
    pub time: f64,
    /// `data[i][j]`: compartment `i` at node `j`.
    pub data: Vec<Vec<f64>>,
}

impl Field {
    pub fn homogeneous(grid: Grid1D, model: Model, values: &[f64]) -> Result<Self> {
        if values.len() != model.len() {
            return Err(Error::Layout {
                expected: model.len(),
                got: values.len(),
            });
        }
        Ok(Self {
            grid,
            model,
            time: 0.0,
            data: values.iter().map(|&v| vec![v; grid.nodes()]).collect(),
        })
    }

    /// Builds a field from `f(compartment, x)`.
    pub fn from_fn(grid: Grid1D, model: Model, f: impl Fn(usize, f64) -> f64) -> Self {
        let xs = grid.positions();
        Self {
            grid,
            model,
            time: 0.0,
            data: (0..model.len())
                .map(|i| xs.iter().map(|&x| f(i, x)).collect())
                .collect(),
        }
    }

    pub fn compartment(&self, i: usize) -> &[f64] {
        &self.data[i]
    }

    pub fn at_node(&self, j: usize) -> CompartmentVector {
        CompartmentVector {
            model: self.model,
            values: self.data.iter().map(|c| c[j]).collect(),
        }
    }

    pub fn min_value(&self) -> f64 {
        self.data
            .iter()
            .flatten()
            .fold(f64::INFINITY, |m, &v| m.min(v))
    }

    pub fn max_of(&self, i: usize) -> f64 {
        self.data[i]
            .iter()
            .fold(f64::NEG_INFINITY, |m, &v| m.max(v))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().flatten().all(|v| v.is_finite())
    }

    /// `max_i (max_x u_i − min_x u_i)`.
    pub fn spatial_spread(&self) -> f64 {
        self.data
            .iter()
            .map(|c| {
                let (lo, hi) = c
                    .iter()
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                        (lo.min(v), hi.max(v))
                    });
                hi - lo
            })
            .fold(0.0, f64::max)
    }

    /// `sup_{i,x} |u_i(x) − p_i|`.
    pub fn sup_distance(&self, p: &CompartmentVector) -> f64 {
        self.data
            .iter()
            .zip(&p.values)
            .flat_map(|(c, &pv)| c.iter().map(move |&v| (v - pv).abs()))
            .fold(0.0, f64::max)
    }

    /// `sup |u − p| / sup |p|`.
    pub fn relative_distance(&self, p: &CompartmentVector) -> f64 {
        self.sup_distance(p) / p.sup_norm()
    }

    /// `sup_{i,x} |u_i(x) − v_i(x)|` for fields on the same grid.
    pub fn sup_difference(&self, other: &Field) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max)
    }
}

/// Trapezoid integral of every compartment.
pub fn mass_integral(f: &Field) -> Vec<f64> {
    f.data.iter().map(|c| f.grid.integrate(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::presets;
    use crate::kinetics::drug_free_equilibrium;

    fn grid() -> Grid1D {
        Grid1D::new(2.0, 40).unwrap()
    }

    #[test]
    fn mass_of_constants_and_ramps() {
        let f = Field::homogeneous(grid(), Model::Basic, &[30.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((mass_integral(&f)[0] - 60.0).abs() < 1e-12);

        let p = presets::basic_endemic_params();
        let e = drug_free_equilibrium(&p, Model::Basic).unwrap();
        let f = Field::homogeneous(grid(), Model::Basic, &e.point.values).unwrap();
        let m = mass_integral(&f);
        assert!((m[0] - 2.0 * 215.0).abs() < 1e-10);
        assert_eq!(&m[1..], &[0.0, 0.0, 0.0]);

        let f = Field::from_fn(grid(), Model::Basic, |_, x| 5.0 * x);
        assert!((mass_integral(&f)[0] - 10.0).abs() < 1e-12);
    }

    #[test]
    fn distances() {
        let f = Field::homogeneous(grid(), Model::Basic, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let p = CompartmentVector::basic([1.0, 2.0, 3.0, 5.0]);
        assert_eq!(f.sup_distance(&p), 1.0);
        assert_eq!(f.relative_distance(&p), 0.2);
        assert_eq!(f.spatial_spread(), 0.0);
    }
}
