use super::{CompartmentVector, Model, ModelParams};
use crate::error::Result;

/// Writes the reaction term of `model` at `y` into `out`.
///
/// Slices must have length `model.len()`; this is the allocation-free path
/// used by the integrator.
#[inline]
pub fn reaction_into(model: Model, p: &ModelParams, y: &[f64], out: &mut [f64]) {
    match model {
        Model::Basic => {
            let (s, c, h, r) = (y[0], y[1], y[2], y[3]);
            let infection = p.beta * s * c;
            out[0] = p.lambda - infection - p.eta[0] * s;
            out[1] = infection - p.cocaine_exit() * c;
            out[2] = -p.heroin_exit() * h + p.sigma * c;
            out[3] = p.gamma[0] * c + p.gamma[1] * h - p.eta[3] * r;
        }
        Model::Extended => {
            let (s, c, uc, h, uh, r) = (y[0], y[1], y[2], y[3], y[4], y[5]);
            let infection = p.beta * s * c;
            out[0] = p.lambda - infection - p.eta[0] * s;
            out[1] = infection - p.cocaine_exit() * c + p.mu[1] * uc - p.mu[0] * c;
            out[2] = p.mu[0] * c - p.cocaine_treatment_exit() * uc;
            out[3] = -p.heroin_exit() * h + p.sigma * c + p.kappa[1] * uh - p.kappa[0] * h;
            out[4] = p.kappa[0] * h - p.heroin_treatment_exit() * uh;
            out[5] =
                p.gamma[0] * c + p.gamma[1] * h - p.eta[3] * r + p.gamma[2] * uc + p.gamma[3] * uh;
        }
    }
}

/// Reaction term for whichever model `y` is tagged with.
pub fn reaction(y: &CompartmentVector, p: &ModelParams) -> CompartmentVector {
    let mut out = CompartmentVector::zeros(y.model);
    reaction_into(y.model, p, &y.values, &mut out.values);
    out
}

/// `(Λ−βSC−η1S, βSC−(η2+σ+γ1)C, σC−(η3+γ2)H, γ1C+γ2H−η4R)`.
pub fn reaction_basic(y: &CompartmentVector, p: &ModelParams) -> Result<CompartmentVector> {
    y.expect_model(Model::Basic)?;
    Ok(reaction(y, p))
}

/// Six right-hand sides of the extended model with treatment classes.
pub fn reaction_extended(y: &CompartmentVector, p: &ModelParams) -> Result<CompartmentVector> {
    y.expect_model(Model::Extended)?;
    Ok(reaction(y, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::presets;
    use crate::kinetics::drug_free_equilibrium;
    use proptest::prelude::*;

    // Hand-written copy of the extended right-hand side, kept separate from
    // `reaction_into` on purpose.
    fn extended_oracle(p: &ModelParams, y: &[f64; 6]) -> [f64; 6] {
        let [s, c, uc, h, uh, r] = *y;
        let [e1, e2, e3, e4, e5, e6] = p.eta;
        let [g1, g2, g3, g4] = p.gamma;
        let [m1, m2] = p.mu;
        let [k1, k2] = p.kappa;
        [
            p.lambda - p.beta * s * c - e1 * s,
            p.beta * s * c + m2 * uc - (e2 + p.sigma + g1 + m1) * c,
            m1 * c - (e5 + g3 + m2) * uc,
            p.sigma * c + k2 * uh - (e3 + g2 + k1) * h,
            k1 * h - (e6 + g4 + k2) * uh,
            g1 * c + g2 * h + g3 * uc + g4 * uh - e4 * r,
        ]
    }

    #[test]
    fn origin_keeps_only_recruitment() {
        let p = presets::basic_endemic_params();
        let f = reaction_basic(&CompartmentVector::zeros(Model::Basic), &p).unwrap();
        assert_eq!(f.values, vec![2.15, 0.0, 0.0, 0.0]);
        let f = reaction_extended(&CompartmentVector::zeros(Model::Extended), &p).unwrap();
        assert_eq!(f.values, vec![2.15, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn drug_free_point_is_fixed() {
        let p = presets::basic_endemic_params();
        let y = CompartmentVector::basic([215.0, 0.0, 0.0, 0.0]);
        let f = reaction_basic(&y, &p).unwrap();
        assert!(f.sup_norm() < 1e-14, "{:?}", f.values);

        let p = presets::extended_endemic_params();
        let e = drug_free_equilibrium(&p, Model::Extended).unwrap();
        assert!(reaction_extended(&e.point, &p).unwrap().sup_norm() < 1e-14);
    }

    #[test]
    fn basic_table_point() {
        let p = presets::basic_endemic_params();
        let y = CompartmentVector::basic([30.0, 10.0, 5.0, 0.0]);
        let f = reaction_basic(&y, &p).unwrap();
        // βSC = 0.6, η1S = 0.3, (η2+σ+γ1)C = 2.6, (η3+γ2)H = 0.3, σC = 2,
        // γ1C = 0.5, γ2H = 0.25
        let expected = [2.15 - 0.6 - 0.3, 0.6 - 2.6, -0.3 + 2.0, 0.5 + 0.25];
        for (got, want) in f.values.iter().zip(expected) {
            assert!((got - want).abs() < 1e-13, "{got} vs {want}");
        }
    }

    #[test]
    fn extended_table_point() {
        let p = presets::extended_endemic_params();
        let y = [30.0, 10.0, 3.0, 5.0, 3.0, 0.0];
        let f = reaction_extended(&CompartmentVector::extended(y), &p).unwrap();
        assert!((f[1] - (-2.07)).abs() < 1e-12, "{}", f[1]);
        assert!((f[2] - (-0.05)).abs() < 1e-12, "{}", f[2]);
        assert!((f[4] - (-0.10)).abs() < 1e-12, "{}", f[4]);
        let oracle = extended_oracle(&p, &y);
        for i in 0..6 {
            assert!((f[i] - oracle[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn layout_mismatch_is_an_error() {
        let p = presets::basic_endemic_params();
        assert!(reaction_basic(&CompartmentVector::zeros(Model::Extended), &p).is_err());
        assert!(reaction_extended(&CompartmentVector::zeros(Model::Basic), &p).is_err());
    }

    proptest! {
        #[test]
        fn extended_matches_oracle(
            y in prop::array::uniform6(0.0..200.0f64),
            beta in 0.0..0.01f64,
            mu in prop::array::uniform2(0.0..0.1f64),
            kappa in prop::array::uniform2(0.0..0.1f64),
        ) {
            let mut p = presets::extended_endemic_params();
            p.beta = beta;
            p.mu = mu;
            p.kappa = kappa;
            let f = reaction_extended(&CompartmentVector::extended(y), &p).unwrap();
            let o = extended_oracle(&p, &y);
            for i in 0..6 {
                prop_assert!((f[i] - o[i]).abs() <= 1e-12 * (1.0 + o[i].abs()));
            }
        }

        #[test]
        fn extended_without_treatment_reduces_to_basic(
            s in 0.0..200.0f64, c in 0.0..50.0f64, h in 0.0..50.0f64, r in 0.0..100.0f64,
            beta in 0.0..0.01f64,
        ) {
            let mut p = presets::extended_endemic_params().without_treatment();
            p.beta = beta;
            let fb = reaction_basic(&CompartmentVector::basic([s, c, h, r]), &p).unwrap();
            let fe = reaction_extended(&CompartmentVector::extended([s, c, 0.0, h, 0.0, r]), &p).unwrap();
            prop_assert_eq!(fb[0], fe[0]);
            prop_assert_eq!(fb[1], fe[1]);
            prop_assert_eq!(fb[2], fe[3]);
            prop_assert_eq!(fb[3], fe[5]);
            prop_assert_eq!(fe[2], 0.0);
            prop_assert_eq!(fe[4], 0.0);
        }
    }
}
