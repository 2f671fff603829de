use crate::error::{Error, Result};

/// Uniform grid `x_j = j·δx`, `j = 0..=cells`, on `[0, length]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    length: f64,
    cells: usize,
}

impl Grid1D {
    pub fn new(length: f64, cells: usize) -> Result<Self> {
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::Domain(format!(
                "grid length must be > 0, got {length}"
            )));
        }
        if cells < 4 {
            return Err(Error::Domain(format!(
                "grid needs at least 4 cells, got {cells}"
            )));
        }
        Ok(Self { length, cells })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn nodes(&self) -> usize {
        self.cells + 1
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.cells as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        if j == self.cells {
            self.length
        } else {
            j as f64 * self.spacing()
        }
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.nodes()).map(|j| self.x(j)).collect()
    }

    /// Composite trapezoid weights: `δx/2` at the ends, `δx` inside.
    pub fn trapezoid_weight(&self, j: usize) -> f64 {
        let dx = self.spacing();
        if j == 0 || j == self.cells {
            dx / 2.0
        } else {
            dx
        }
    }

    /// Composite trapezoid rule over the grid.
    pub fn integrate(&self, u: &[f64]) -> f64 {
        debug_assert_eq!(u.len(), self.nodes());
        let n = u.len();
        let inner: f64 = u[1..n - 1].iter().sum();
        self.spacing() * (inner + 0.5 * (u[0] + u[n - 1]))
    }
}
