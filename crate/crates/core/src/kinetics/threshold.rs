use super::{Model, ModelParams};
use crate::error::{Error, Result};

/// βΛ / (η1 (η2+σ+γ1)).
pub fn r0_basic(p: &ModelParams) -> Result<f64> {
    let denom = p.eta[0] * p.cocaine_exit();
    if denom <= 0.0 {
        return Err(Error::Domain(
            "r0: eta1 * (eta2 + sigma + gamma1) must be > 0".into(),
        ));
    }
    Ok(p.beta * p.lambda / denom)
}

/// βΛ / (η1 (η2+σ+γ1+μ1)).
///
/// This closed form ignores the `U_c → C` return flow μ2; see
/// [`effective_threshold_extended`] for the exact invasion threshold.
pub fn r0_extended(p: &ModelParams) -> Result<f64> {
    let denom = p.eta[0] * p.cocaine_exit_extended();
    if denom <= 0.0 {
        return Err(Error::Domain(
            "r0: eta1 * (eta2 + sigma + gamma1 + mu1) must be > 0".into(),
        ));
    }
    Ok(p.beta * p.lambda / denom)
}

pub fn r0(p: &ModelParams, model: Model) -> Result<f64> {
    match model {
        Model::Basic => r0_basic(p),
        Model::Extended => r0_extended(p),
    }
}

/// Spectral radius of the next-generation matrix `F V⁻¹` on the infected
/// block `(C, U_c)` of the extended model at the drug-free state.
///
/// `F = [[βS_f, 0], [0, 0]]`, `V = [[a, −μ2], [−μ1, b]]` with
/// `a = η2+σ+γ1+μ1`, `b = μ2+η5+γ3`. Equals [`r0_extended`] when μ2 = 0 and
/// exceeds it otherwise.
pub fn effective_threshold_extended(p: &ModelParams) -> Result<f64> {
    if p.eta[0] <= 0.0 {
        return Err(Error::Domain(
            "effective threshold: eta1 must be > 0".into(),
        ));
    }
    let a = p.cocaine_exit_extended();
    let b = p.cocaine_treatment_exit();
    let det = a * b - p.mu[0] * p.mu[1];
    if det <= 0.0 || !det.is_finite() {
        return Err(Error::Domain(format!(
            "effective threshold: singular transition block (det = {det:e})"
        )));
    }
    let v_inv = [[b / det, p.mu[1] / det], [p.mu[0] / det, a / det]];
    let f11 = p.beta * p.drug_free_susceptible();
    // F V⁻¹ has a zero second row.
    let ngm = [[f11 * v_inv[0][0], f11 * v_inv[0][1]], [0.0, 0.0]];
    let tr = ngm[0][0] + ngm[1][1];
    let dt = ngm[0][0] * ngm[1][1] - ngm[0][1] * ngm[1][0];
    let disc = tr * tr - 4.0 * dt;
    let rho = if disc >= 0.0 {
        let sq = disc.sqrt();
        ((tr + sq) / 2.0).abs().max(((tr - sq) / 2.0).abs())
    } else {
        dt.abs().sqrt()
    };
    Ok(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::presets;
    use approx::assert_relative_eq;

    #[test]
    fn basic_table_values() {
        let r = r0_basic(&presets::basic_endemic_params()).unwrap();
        assert_relative_eq!(r, 0.0043 / 0.0026, max_relative = 1e-14);
        assert_relative_eq!(r, 1.653_846_153_846_153_8, max_relative = 1e-12);
        let r = r0_basic(&presets::basic_drug_free_params()).unwrap();
        assert_relative_eq!(r, 0.884_773_662_551_440_3, max_relative = 1e-12);
    }

    #[test]
    fn extended_table_values() {
        let r = r0_extended(&presets::extended_endemic_params()).unwrap();
        assert_relative_eq!(r, 0.0043 / 0.0027, max_relative = 1e-13);
        let r = r0_extended(&presets::extended_drug_free_params()).unwrap();
        assert_relative_eq!(r, 0.00215 / (0.03 * 0.131), max_relative = 1e-13);
        assert_relative_eq!(r, 0.547_073_791_348_600_5, max_relative = 1e-12);
    }

    #[test]
    fn zero_beta_gives_zero() {
        let mut p = presets::basic_endemic_params();
        p.beta = 0.0;
        assert_eq!(r0_basic(&p).unwrap(), 0.0);
        assert_eq!(r0_extended(&p).unwrap(), 0.0);
        let mut q = presets::extended_endemic_params();
        q.beta = 0.0;
        assert_eq!(effective_threshold_extended(&q).unwrap(), 0.0);
    }

    #[test]
    fn zero_mu1_reduces_to_basic() {
        let mut p = presets::extended_endemic_params();
        p.mu[0] = 0.0;
        assert_eq!(r0_extended(&p).unwrap(), r0_basic(&p).unwrap());
    }

    #[test]
    fn zero_denominator_is_domain_error() {
        let mut p = presets::basic_endemic_params();
        p.eta[1] = 0.0;
        p.sigma = 0.0;
        p.gamma[0] = 0.0;
        assert!(matches!(r0_basic(&p), Err(Error::Domain(_))));
    }

    #[test]
    fn effective_threshold_without_return_flow() {
        let mut p = presets::extended_endemic_params();
        p.mu[1] = 0.0;
        assert_relative_eq!(
            effective_threshold_extended(&p).unwrap(),
            r0_extended(&p).unwrap(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn effective_threshold_preset_values() {
        // 2x2 eigenvalues of F V^-1 computed by hand:
        // endemic  a=0.27, b=0.05, det=0.0134, βS_f=0.43 -> 0.43*0.05/0.0134
        // drug-free a=0.131, b=0.09, det=0.00929, βS_f=0.0716.. -> βS_f*0.09/0.00929
        let e = effective_threshold_extended(&presets::extended_endemic_params()).unwrap();
        assert_relative_eq!(e, 0.43 * 0.05 / 0.0134, max_relative = 1e-12);
        assert_relative_eq!(e, 1.604_477_611_940_298_5, max_relative = 1e-12);
        let e = effective_threshold_extended(&presets::extended_drug_free_params()).unwrap();
        assert_relative_eq!(
            e,
            (0.001 * 2.15 / 0.03) * 0.09 / 0.00929,
            max_relative = 1e-12
        );
    }
}
