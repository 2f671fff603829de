use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Which of the two population models a state or computation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// `(S, C, H, R)`
    Basic,
    /// `(S, C, U_c, H, U_h, R)`
    Extended,
}

impl Model {
    pub const fn len(self) -> usize {
        match self {
            Model::Basic => 4,
            Model::Extended => 6,
        }
    }

    pub const fn names(self) -> &'static [&'static str] {
        match self {
            Model::Basic => &["S", "C", "H", "R"],
            Model::Extended => &["S", "C", "Uc", "H", "Uh", "R"],
        }
    }

    pub const fn susceptible(self) -> usize {
        0
    }

    pub const fn cocaine(self) -> usize {
        1
    }

    pub const fn heroin(self) -> usize {
        match self {
            Model::Basic => 2,
            Model::Extended => 3,
        }
    }

    pub const fn recovered(self) -> usize {
        self.len() - 1
    }

    /// Size of the subsystem obtained by dropping `R`, which feeds back
    /// into nothing.
    pub const fn reduced_len(self) -> usize {
        self.len() - 1
    }

    pub fn parse(s: &str) -> Option<Model> {
        match s {
            "basic" | "schr" => Some(Model::Basic),
            "extended" => Some(Model::Extended),
            _ => None,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Basic => "basic",
            Model::Extended => "extended",
        })
    }
}

/// Compartment densities at a single point, tagged with their layout.
#[derive(Debug, Clone, PartialEq)]
pub struct CompartmentVector {
    pub model: Model,
    pub values: Vec<f64>,
}

impl CompartmentVector {
    pub fn new(model: Model, values: Vec<f64>) -> Result<Self> {
        if values.len() != model.len() {
            return Err(Error::Layout {
                expected: model.len(),
                got: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain(format!(
                "compartment {} is not finite",
                model.names()[i]
            )));
        }
        Ok(Self { model, values })
    }

    pub fn basic(values: [f64; 4]) -> Self {
        Self {
            model: Model::Basic,
            values: values.to_vec(),
        }
    }

    pub fn extended(values: [f64; 6]) -> Self {
        Self {
            model: Model::Extended,
            values: values.to_vec(),
        }
    }

    pub fn zeros(model: Model) -> Self {
        Self {
            model,
            values: vec![0.0; model.len()],
        }
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|&v| v >= 0.0)
    }

    pub(crate) fn expect_model(&self, model: Model) -> Result<()> {
        if self.model != model || self.values.len() != model.len() {
            return Err(Error::Layout {
                expected: model.len(),
                got: self.values.len(),
            });
        }
        Ok(())
    }
}

impl std::ops::Index<usize> for CompartmentVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}
