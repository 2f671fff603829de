use nalgebra::DMatrix;
use num_complex::Complex64;

/// Eigenvalues of a small dense real matrix, sorted by descending real part
/// (ties by descending imaginary part).
pub fn eigenvalues(a: &DMatrix<f64>) -> Vec<Complex64> {
    let mut ev: Vec<Complex64> = a.complex_eigenvalues().iter().copied().collect();
    ev.sort_by(|x, y| {
        y.re.partial_cmp(&x.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(y.im.partial_cmp(&x.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    ev
}

/// `min_{‖v‖=1} ‖A v − X v‖`, the smallest singular value of `A − X I`.
pub fn eigen_residual(a: &DMatrix<f64>, x: Complex64) -> f64 {
    let n = a.nrows();
    let shifted = DMatrix::from_fn(n, n, |i, j| {
        let v = Complex64::new(a[(i, j)], 0.0);
        if i == j {
            v - x
        } else {
            v
        }
    });
    shifted
        .singular_values()
        .iter()
        .fold(f64::INFINITY, |m, &s| m.min(s))
}
