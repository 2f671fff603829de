use rayon::prelude::*;
use std::fmt;

use super::{roots_drug_free, roots_endemic, roots_numeric, Mode, ModeRoots, ModeSpectrum};
use crate::error::{Error, Result};
use crate::kinetics::{
    effective_threshold_extended, r0, EquilibriumKind, EquilibriumPoint, Model, ModelParams,
};

/// Roots closer than this to the imaginary axis make the verdict inconclusive.
pub const VERDICT_MARGIN: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    LocallyAsymptoticallyStable,
    Unstable,
    Inconclusive,
}

impl Verdict {
    fn from_max_real_part(m: f64) -> Self {
        if m < -VERDICT_MARGIN {
            Verdict::LocallyAsymptoticallyStable
        } else if m > VERDICT_MARGIN {
            Verdict::Unstable
        } else {
            Verdict::Inconclusive
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::LocallyAsymptoticallyStable => "locally-asymptotically-stable",
            Verdict::Unstable => "unstable",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub model: Model,
    pub kind: EquilibriumKind,
    pub equilibrium: EquilibriumPoint,
    /// Closed-form reproduction number of the model.
    pub r0: f64,
    /// Exact invasion threshold (extended model only).
    pub effective_threshold: Option<f64>,
    pub modes: Vec<ModeRoots>,
    pub verdict: Verdict,
}

impl StabilityReport {
    pub fn max_real_part(&self) -> f64 {
        self.modes
            .iter()
            .fold(f64::NEG_INFINITY, |m, r| m.max(r.max_real_part()))
    }
}

/// Computes characteristic roots of every mode in `modes` and renders a
/// verdict. The basic model uses closed forms; the extended model uses
/// eigenvalues of the reduced Jacobian.
pub fn classify(
    p: &ModelParams,
    e: &EquilibriumPoint,
    modes: &ModeSpectrum,
) -> Result<StabilityReport> {
    if modes.is_empty() {
        return Err(Error::Domain("mode spectrum is empty".into()));
    }
    let model = e.model();
    let list: Vec<Mode> = modes.modes().collect();
    let per_mode = |m: &Mode| -> Result<ModeRoots> {
        match (model, e.kind) {
            (Model::Basic, EquilibriumKind::DrugFree) => Ok(roots_drug_free(p, *m)),
            (Model::Basic, EquilibriumKind::DrugAddiction) => roots_endemic(p, e, *m),
            (Model::Extended, _) => roots_numeric(p, &e.point, *m),
        }
    };
    let roots: Vec<ModeRoots> = list.par_iter().map(per_mode).collect::<Result<_>>()?;
    let max_re = roots
        .iter()
        .fold(f64::NEG_INFINITY, |m, r| m.max(r.max_real_part()));
    let effective_threshold = match model {
        Model::Basic => None,
        Model::Extended => Some(effective_threshold_extended(p)?),
    };
    Ok(StabilityReport {
        model,
        kind: e.kind,
        equilibrium: e.clone(),
        r0: r0(p, model)?,
        effective_threshold,
        modes: roots,
        verdict: Verdict::from_max_real_part(max_re),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::presets;
    use crate::kinetics::{drug_free_equilibrium, endemic_equilibrium};
    use crate::stability::{neumann_modes, DEFAULT_JMAX};

    fn spectrum() -> ModeSpectrum {
        neumann_modes(2.0, DEFAULT_JMAX).unwrap()
    }

    #[test]
    fn basic_verdicts() {
        let p = presets::basic_drug_free_params();
        let ef = drug_free_equilibrium(&p, Model::Basic).unwrap();
        let rep = classify(&p, &ef, &spectrum()).unwrap();
        assert_eq!(rep.verdict, Verdict::LocallyAsymptoticallyStable);
        assert_eq!(rep.modes.len(), 51);

        let p = presets::basic_endemic_params();
        let ef = drug_free_equilibrium(&p, Model::Basic).unwrap();
        assert_eq!(
            classify(&p, &ef, &spectrum()).unwrap().verdict,
            Verdict::Unstable
        );
        let es = endemic_equilibrium(&p, Model::Basic).unwrap();
        assert_eq!(
            classify(&p, &es, &spectrum()).unwrap().verdict,
            Verdict::LocallyAsymptoticallyStable
        );
    }

    #[test]
    fn extended_verdicts() {
        let p = presets::extended_endemic_params();
        let ef = drug_free_equilibrium(&p, Model::Extended).unwrap();
        let rep = classify(&p, &ef, &spectrum()).unwrap();
        assert_eq!(rep.verdict, Verdict::Unstable);
        assert!(rep.effective_threshold.unwrap() > 1.0);
        let es = endemic_equilibrium(&p, Model::Extended).unwrap();
        assert_eq!(
            classify(&p, &es, &spectrum()).unwrap().verdict,
            Verdict::LocallyAsymptoticallyStable
        );

        let p = presets::extended_drug_free_params();
        let ef = drug_free_equilibrium(&p, Model::Extended).unwrap();
        assert_eq!(
            classify(&p, &ef, &spectrum()).unwrap().verdict,
            Verdict::LocallyAsymptoticallyStable
        );
    }

    #[test]
    fn threshold_is_inconclusive() {
        let mut p = presets::basic_endemic_params();
        // R0 = 1 exactly: X2 = 0 at mode 0.
        p.lambda = 1.3;
        p.beta = 0.002;
        let ef = drug_free_equilibrium(&p, Model::Basic).unwrap();
        let rep = classify(&p, &ef, &spectrum()).unwrap();
        assert!(rep.modes[0].roots[1].re.abs() < 1e-12);
        assert_eq!(rep.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn max_real_part_nonincreasing_in_mode() {
        let p = presets::basic_endemic_params();
        let es = endemic_equilibrium(&p, Model::Basic).unwrap();
        let rep = classify(&p, &es, &spectrum()).unwrap();
        for w in rep.modes.windows(2) {
            assert!(w[1].max_real_part() <= w[0].max_real_part());
        }
    }
}
