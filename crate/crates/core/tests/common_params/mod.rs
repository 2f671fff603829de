// Shared proptest strategies; included with `mod common_params;`.
#![allow(dead_code)]

use proptest::prelude::*;
use schr::kinetics::ModelParams;

prop_compose! {
    pub fn params()(
        lambda in 0.5f64..5.0,
        beta in 1e-4f64..5e-3,
        eta in proptest::array::uniform6(0.005f64..0.05),
        sigma in 0.001f64..0.3,
        gamma in proptest::array::uniform4(0.01f64..0.1),
        mu in proptest::array::uniform2(0.0f64..0.1),
        kappa in proptest::array::uniform2(0.0f64..0.1),
        d in 0.0f64..0.5,
    ) -> ModelParams {
        ModelParams { lambda, beta, eta, sigma, gamma, mu, kappa, d }
    }
}

prop_compose! {
    /// Equal death rates across every compartment.
    pub fn equal_eta_params()(p in params(), eta in 0.005f64..0.05) -> ModelParams {
        ModelParams { eta: [eta; 6], ..p }
    }
}
