use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rate constants shared by both models.
///
/// Arrays are zero-based: `eta[0]` is the death rate of `S`, `eta[4]` and
/// `eta[5]` belong to the treatment classes. The basic model ignores
/// `eta[4..]`, `gamma[2..]`, `mu` and `kappa`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Recruitment rate Λ.
    pub lambda: f64,
    /// Transmission rate β.
    pub beta: f64,
    /// Death rates of S, C, H, R, U_c, U_h.
    pub eta: [f64; 6],
    /// Cocaine to heroin progression rate σ.
    pub sigma: f64,
    /// Recovery rates of C, H, U_c, U_h.
    pub gamma: [f64; 4],
    /// C → U_c and U_c → C treatment flows.
    pub mu: [f64; 2],
    /// H → U_h and U_h → H treatment flows.
    pub kappa: [f64; 2],
    /// Diffusion coefficient shared by every compartment.
    pub d: f64,
}

impl ModelParams {
    /// Total outflow rate of `C` in the basic model, η2+σ+γ1.
    pub fn cocaine_exit(&self) -> f64 {
        self.eta[1] + self.sigma + self.gamma[0]
    }

    /// η3+γ2.
    pub fn heroin_exit(&self) -> f64 {
        self.eta[2] + self.gamma[1]
    }

    /// η2+σ+γ1+μ1.
    pub fn cocaine_exit_extended(&self) -> f64 {
        self.cocaine_exit() + self.mu[0]
    }

    /// μ2+η5+γ3.
    pub fn cocaine_treatment_exit(&self) -> f64 {
        self.mu[1] + self.eta[4] + self.gamma[2]
    }

    /// κ1+η3+γ2.
    pub fn heroin_exit_extended(&self) -> f64 {
        self.kappa[0] + self.heroin_exit()
    }

    /// κ2+η6+γ4.
    pub fn heroin_treatment_exit(&self) -> f64 {
        self.kappa[1] + self.eta[5] + self.gamma[3]
    }

    /// (κ1+η3+γ2)(κ2+η6+γ4) − κ1κ2, the denominator of the extended H*.
    pub fn heroin_block_determinant(&self) -> f64 {
        self.heroin_exit_extended() * self.heroin_treatment_exit() - self.kappa[0] * self.kappa[1]
    }

    /// Susceptible density of the drug-free state, Λ/η1.
    pub fn drug_free_susceptible(&self) -> f64 {
        self.lambda / self.eta[0]
    }

    /// Every field with its config-file name.
    pub fn named_fields(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("lambda", self.lambda),
            ("beta", self.beta),
            ("eta1", self.eta[0]),
            ("eta2", self.eta[1]),
            ("eta3", self.eta[2]),
            ("eta4", self.eta[3]),
            ("eta5", self.eta[4]),
            ("eta6", self.eta[5]),
            ("sigma", self.sigma),
            ("gamma1", self.gamma[0]),
            ("gamma2", self.gamma[1]),
            ("gamma3", self.gamma[2]),
            ("gamma4", self.gamma[3]),
            ("mu1", self.mu[0]),
            ("mu2", self.mu[1]),
            ("kappa1", self.kappa[0]),
            ("kappa2", self.kappa[1]),
            ("d", self.d),
        ]
    }

    /// Finite, nonnegative rates with η1 > 0 and η2+σ+γ1 > 0.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in self.named_fields() {
            if !v.is_finite() {
                return Err(Error::param(name, "must be finite"));
            }
            if v < 0.0 {
                return Err(Error::param(name, format!("must be >= 0, got {v}")));
            }
        }
        if self.eta[0] <= 0.0 {
            return Err(Error::param("eta1", "must be > 0 (drug-free S = Λ/η1)"));
        }
        if self.cocaine_exit() <= 0.0 {
            return Err(Error::param("eta2", "eta2 + sigma + gamma1 must be > 0"));
        }
        Ok(())
    }

    /// Extra conditions for the extended steady-state formulas: both
    /// treatment compartments must drain and the heroin block must be
    /// invertible. Trajectories do not need them (all-zero treatment rates
    /// are allowed for reduction runs).
    pub fn validate_treatment_blocks(&self) -> Result<()> {
        if self.cocaine_treatment_exit() <= 0.0 {
            return Err(Error::param("mu2", "mu2 + eta5 + gamma3 must be > 0"));
        }
        if self.heroin_treatment_exit() <= 0.0 {
            return Err(Error::param("kappa2", "kappa2 + eta6 + gamma4 must be > 0"));
        }
        if self.heroin_block_determinant() <= 0.0 {
            return Err(Error::param(
                "kappa1",
                "(kappa1+eta3+gamma2)(kappa2+eta6+gamma4) - kappa1*kappa2 must be > 0",
            ));
        }
        Ok(())
    }

    /// Copy with every treatment-related rate (μ, κ, η5, η6, γ3, γ4) set to 0.
    pub fn without_treatment(&self) -> Self {
        let mut p = *self;
        p.mu = [0.0; 2];
        p.kappa = [0.0; 2];
        p.eta[4] = 0.0;
        p.eta[5] = 0.0;
        p.gamma[2] = 0.0;
        p.gamma[3] = 0.0;
        p
    }
}
