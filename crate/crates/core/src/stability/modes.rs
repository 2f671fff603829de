use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const DEFAULT_JMAX: usize = 50;

/// One Neumann Laplacian mode: index `j` and eigenvalue `λ_j` of `−Δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub index: usize,
    pub lambda: f64,
}

/// `λ_j = (jπ/L)²` for `j = 0..=j_max`: the spectrum of `−d²/dx²` on
/// `[0, L]` with homogeneous Neumann conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSpectrum {
    pub domain_length: f64,
    pub eigenvalues: Vec<f64>,
}

pub fn neumann_modes(length: f64, j_max: usize) -> Result<ModeSpectrum> {
    if !(length > 0.0) || !length.is_finite() {
        return Err(Error::Domain(format!(
            "domain length must be > 0, got {length}"
        )));
    }
    let eigenvalues = (0..=j_max)
        .map(|j| {
            let k = j as f64 * PI / length;
            k * k
        })
        .collect();
    Ok(ModeSpectrum {
        domain_length: length,
        eigenvalues,
    })
}

impl ModeSpectrum {
    pub fn modes(&self) -> impl Iterator<Item = Mode> + '_ {
        self.eigenvalues
            .iter()
            .enumerate()
            .map(|(index, &lambda)| Mode { index, lambda })
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_of_length_two() {
        let m = neumann_modes(2.0, 2).unwrap();
        assert_eq!(m.eigenvalues[0], 0.0);
        assert!((m.eigenvalues[1] - 2.467_401_100_272_339_6).abs() < 1e-14);
        assert!((m.eigenvalues[2] - 9.869_604_401_089_358).abs() < 1e-13);
    }

    #[test]
    fn strictly_increasing() {
        let m = neumann_modes(3.7, 50).unwrap();
        assert_eq!(m.len(), 51);
        assert!(m.eigenvalues.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn nonpositive_length_rejected() {
        assert!(neumann_modes(0.0, 5).is_err());
        assert!(neumann_modes(-1.0, 5).is_err());
    }
}
