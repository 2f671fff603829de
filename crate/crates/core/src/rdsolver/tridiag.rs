use crate::error::{Error, Result};

/// Thomas elimination for `a_i x_{i-1} + b_i x_i + c_i x_{i+1} = r_i`.
///
/// `lower[0]` and `upper[n-1]` are ignored. Fails on a zero pivot, which
/// cannot happen for diagonally dominant systems.
pub fn solve_tridiagonal(
    lower: &[f64],
    diag: &[f64],
    upper: &[f64],
    rhs: &[f64],
) -> Result<Vec<f64>> {
    let n = diag.len();
    if lower.len() != n || upper.len() != n || rhs.len() != n {
        return Err(Error::Layout {
            expected: n,
            got: lower.len().min(upper.len()).min(rhs.len()),
        });
    }
    let mut c = vec![0.0; n];
    let mut x = rhs.to_vec();
    let mut pivot = diag[0];
    for i in 0..n {
        if i > 0 {
            pivot = diag[i] - lower[i] * c[i - 1];
        }
        if pivot == 0.0 || !pivot.is_finite() {
            return Err(Error::Domain(format!("zero pivot at row {i}")));
        }
        c[i] = if i + 1 < n { upper[i] / pivot } else { 0.0 };
        x[i] = if i > 0 {
            (x[i] - lower[i] * x[i - 1]) / pivot
        } else {
            x[i] / pivot
        };
    }
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    Ok(x)
}

/// Pre-factored `(I − r Δ_h)` with reflected Neumann boundaries, where
/// `r = dt·d/δx²`. Rows: `[1+2r, −2r]`, `[−r, 1+2r, −r]`, `[−2r, 1+2r]`.
#[derive(Debug, Clone)]
pub struct NeumannDiffusionSolver {
    r: f64,
    upper_factor: Vec<f64>,
    inv_pivot: Vec<f64>,
}

impl NeumannDiffusionSolver {
    pub fn new(nodes: usize, r: f64) -> Result<Self> {
        if nodes < 2 {
            return Err(Error::Domain(
                "diffusion solver needs at least 2 nodes".into(),
            ));
        }
        if !(r >= 0.0) {
            return Err(Error::Domain(format!(
                "diffusion number must be >= 0, got {r}"
            )));
        }
        let n = nodes;
        let mut upper_factor = vec![0.0; n];
        let mut inv_pivot = vec![0.0; n];
        let diag = 1.0 + 2.0 * r;
        for i in 0..n {
            let lower = match i {
                0 => 0.0,
                _ if i == n - 1 => -2.0 * r,
                _ => -r,
            };
            let upper = match i {
                0 => -2.0 * r,
                _ if i == n - 1 => 0.0,
                _ => -r,
            };
            let pivot = if i == 0 {
                diag
            } else {
                diag - lower * upper_factor[i - 1]
            };
            // Strict diagonal dominance keeps every pivot >= 1.
            assert!(pivot >= 1.0 - 1e-12, "tridiagonal pivot breakdown");
            inv_pivot[i] = 1.0 / pivot;
            upper_factor[i] = upper * inv_pivot[i];
        }
        Ok(Self {
            r,
            upper_factor,
            inv_pivot,
        })
    }

    pub fn diffusion_number(&self) -> f64 {
        self.r
    }

    /// Overwrites `rhs` with the solution.
    pub fn solve_in_place(&self, rhs: &mut [f64]) {
        let n = rhs.len();
        debug_assert_eq!(n, self.inv_pivot.len());
        let r = self.r;
        rhs[0] *= self.inv_pivot[0];
        for i in 1..n {
            let lower = if i == n - 1 { -2.0 * r } else { -r };
            rhs[i] = (rhs[i] - lower * rhs[i - 1]) * self.inv_pivot[i];
        }
        for i in (0..n - 1).rev() {
            rhs[i] -= self.upper_factor[i] * rhs[i + 1];
        }
    }
}
