use super::Grid1D;
use crate::error::{Error, Result};

/// Three-point Laplacian with reflected ghost nodes (`u_{-1} = u_1`,
/// `u_{M+1} = u_{M-1}`), which encodes a zero normal derivative.
pub fn discrete_laplacian(u: &[f64], grid: &Grid1D) -> Result<Vec<f64>> {
    if u.len() != grid.nodes() {
        return Err(Error::Layout {
            expected: grid.nodes(),
            got: u.len(),
        });
    }
    let mut out = vec![0.0; u.len()];
    let dx = grid.spacing();
    laplacian_into(u, 1.0 / (dx * dx), &mut out);
    Ok(out)
}

#[inline]
pub(crate) fn laplacian_into(u: &[f64], inv_dx2: f64, out: &mut [f64]) {
    let n = u.len();
    out[0] = 2.0 * (u[1] - u[0]) * inv_dx2;
    for j in 1..n - 1 {
        out[j] = (u[j + 1] - 2.0 * u[j] + u[j - 1]) * inv_dx2;
    }
    out[n - 1] = 2.0 * (u[n - 2] - u[n - 1]) * inv_dx2;
}
