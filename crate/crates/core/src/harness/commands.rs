//! Drivers behind the CLI subcommands. Each returns its artifacts and a
//! printable summary; the binary only parses arguments and maps errors to
//! exit codes with [`exit_code`].

use std::fmt::Write as _;
use std::path::PathBuf;

use super::export::{self, ABORTED_MARKER};
use super::report;
use super::{presets, to_toml, Scenario};
use crate::error::{Error, Result};
use crate::kinetics::{
    drug_free_equilibrium, effective_threshold_extended, endemic_equilibrium, r0, Model,
};
use crate::rdsolver::{
    convergence_study, integrate, ConvergenceStudy, Refinement, Stepper, Trajectory,
};
use crate::stability::{
    choose_alphas, classify, dissipation_report, neumann_modes, AlphaChoice, LyapunovFunctional,
    LyapunovTrace, StabilityReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_SOLVER_ABORT: i32 = 5;
pub const EXIT_DOMAIN: i32 = 6;

/// Process exit code for a failure.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) => EXIT_USAGE,
        Error::Config(_) | Error::InvalidParameter { .. } | Error::Layout { .. } => EXIT_CONFIG,
        Error::Io { .. } => EXIT_IO,
        Error::SolverAbort { .. } => EXIT_SOLVER_ABORT,
        Error::Domain(_) | Error::NoEndemicEquilibrium(_) | Error::NoConvergence { .. } => {
            EXIT_DOMAIN
        }
    }
}

#[derive(Debug)]
pub struct RunOutcome {
    pub summary: String,
    pub trajectory: Trajectory,
    pub files: Vec<PathBuf>,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.trajectory.termination.is_aborted() {
            EXIT_SOLVER_ABORT
        } else {
            EXIT_OK
        }
    }
}

/// Functional selection for [`lyapunov_cmd`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionalChoice {
    /// Drug-free functional below threshold, drug-addiction functional above.
    Auto,
    /// Drug-free functional (`G1` or its extended weighted analogue).
    DrugFree,
    /// Drug-addiction functional (`G2` or the extended quadratic one).
    DrugAddiction,
}

impl FunctionalChoice {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "auto" => Some(Self::Auto),
            "g1" | "drug-free" => Some(Self::DrugFree),
            "g2" | "drug-addiction" => Some(Self::DrugAddiction),
            _ => None,
        }
    }
}

fn above_threshold(s: &Scenario) -> Result<bool> {
    let p = &s.sim.params;
    Ok(match s.sim.model {
        Model::Basic => r0(p, Model::Basic)? > 1.0,
        Model::Extended => effective_threshold_extended(p)? > 1.0,
    })
}

/// Builds the functional for `choice`; the drug-addiction functional fails
/// when no drug-addiction equilibrium exists.
pub fn functional_for(s: &Scenario, choice: FunctionalChoice) -> Result<LyapunovFunctional> {
    let choice = match choice {
        FunctionalChoice::Auto if above_threshold(s)? => FunctionalChoice::DrugAddiction,
        FunctionalChoice::Auto => FunctionalChoice::DrugFree,
        c => c,
    };
    let p = &s.sim.params;
    match (s.sim.model, choice) {
        (Model::Basic, FunctionalChoice::DrugFree) => Ok(LyapunovFunctional::G1),
        (Model::Basic, _) => Ok(LyapunovFunctional::G2(endemic_equilibrium(
            p,
            Model::Basic,
        )?)),
        (Model::Extended, FunctionalChoice::DrugFree) => match choose_alphas(p) {
            AlphaChoice::Feasible(a) => Ok(LyapunovFunctional::ExtendedFree(a)),
            AlphaChoice::Infeasible {
                best_max_coefficient,
            } => Err(Error::Domain(format!(
                "no positive weights make the drug-free functional dissipative \
                 (best largest coefficient {best_max_coefficient:.3e})"
            ))),
        },
        (Model::Extended, _) => Ok(LyapunovFunctional::ExtendedEndemic(endemic_equilibrium(
            p,
            Model::Extended,
        )?)),
    }
}

fn lyapunov_summary(trace: &LyapunovTrace) -> String {
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "functional: {}", trace.functional).unwrap();
    let fraction = trace.fraction_nonpositive(10.0);
    if fraction.is_nan() {
        writeln!(w, "nonpositive slopes after t = 10: n/a (no samples)").unwrap();
    } else {
        writeln!(
            w,
            "nonpositive slopes after t = 10: {:.2}%",
            100.0 * fraction
        )
        .unwrap();
    }
    writeln!(
        w,
        "strictly decreasing after t = 10: {}",
        trace.strictly_decreasing_after(10.0)
    )
    .unwrap();
    if let Some(slope) = trace.tail_log_slope(trace.times.last().copied().unwrap_or(0.0) / 2.0) {
        writeln!(w, "tail log-slope: {slope:.6e}").unwrap();
    }
    let flagged = trace.flagged();
    if !flagged.is_empty() {
        writeln!(w, "undefined at {} samples", flagged.len()).unwrap();
    }
    out
}

/// Integrates the scenario and writes the requested artifacts into
/// `s.out_dir`. A solver abort keeps the partial outputs plus an
/// `ABORTED` marker and is reported through [`RunOutcome::exit_code`].
pub fn run(s: &Scenario) -> Result<RunOutcome> {
    s.validate()?;
    let dir = &s.out_dir;
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let stale = dir.join(ABORTED_MARKER);
    if stale.exists() {
        std::fs::remove_file(&stale).map_err(|e| Error::io(&stale, e))?;
    }
    let traj = integrate(&s.sim)?;
    let mut files = Vec::new();
    if s.outputs.trajectory {
        files.push(export::write_trajectory_csv(
            &dir.join(export::TRAJECTORY_CSV),
            s,
            &traj,
        )?);
    }
    if s.outputs.diagnostics {
        files.push(export::write_diagnostics_csv(
            &dir.join(export::DIAGNOSTICS_CSV),
            s,
            &traj,
        )?);
    }
    if s.outputs.trajectory && s.outputs.diagnostics {
        files.push(export::write_gnuplot_script(
            &dir.join(export::GNUPLOT_SCRIPT),
            s,
            &traj,
        )?);
    }
    let mut summary = report::run_summary(s, &traj);
    if s.outputs.lyapunov {
        match functional_for(s, FunctionalChoice::Auto) {
            Ok(func) => {
                let trace = dissipation_report(&traj, &func);
                files.push(export::write_lyapunov_csv(
                    &dir.join(export::LYAPUNOV_CSV),
                    s,
                    &trace,
                )?);
                summary.push_str(&lyapunov_summary(&trace));
            }
            Err(e) => writeln!(summary, "lyapunov trace skipped: {e}").unwrap(),
        }
    }
    if s.outputs.stability {
        let st = write_stability(s, s.j_max)?;
        files.extend(st.files);
        for (label, verdict) in st.verdicts {
            writeln!(summary, "stability of {label}: {verdict}").unwrap();
        }
    }
    if let crate::rdsolver::Termination::Aborted { reason, .. } = &traj.termination {
        files.push(export::write_aborted_marker(dir, reason)?);
    }
    Ok(RunOutcome {
        summary,
        trajectory: traj,
        files,
    })
}

#[derive(Debug)]
pub struct StabilityOutcome {
    pub summary: String,
    pub drug_free: StabilityReport,
    /// `None` when the drug-addiction equilibrium does not exist.
    pub drug_addiction: Option<StabilityReport>,
    pub files: Vec<PathBuf>,
    pub verdicts: Vec<(&'static str, String)>,
}

fn write_stability(s: &Scenario, j_max: usize) -> Result<StabilityOutcome> {
    let p = &s.sim.params;
    let model = s.sim.model;
    let modes = neumann_modes(s.sim.grid.length(), j_max)?;
    let dir = &s.out_dir;
    let mut files = Vec::new();
    let mut summary = String::new();

    let ef = drug_free_equilibrium(p, model)?;
    let free = classify(p, &ef, &modes)?;
    let text = report::stability_text(&free);
    files.push(export::write_text(
        &dir.join("stability_drug_free.txt"),
        &text,
    )?);
    files.push(export::write_text(
        &dir.join("stability_drug_free.kv"),
        &report::stability_kv(&free),
    )?);
    writeln!(summary, "== drug-free equilibrium ==\n{text}").unwrap();
    let mut verdicts = vec![("E_f", free.verdict.to_string())];

    let endemic = match endemic_equilibrium(p, model) {
        Ok(es) => {
            let rep = classify(p, &es, &modes)?;
            let text = report::stability_text(&rep);
            files.push(export::write_text(
                &dir.join("stability_drug_addiction.txt"),
                &text,
            )?);
            files.push(export::write_text(
                &dir.join("stability_drug_addiction.kv"),
                &report::stability_kv(&rep),
            )?);
            writeln!(summary, "== drug-addiction equilibrium ==\n{text}").unwrap();
            verdicts.push(("E*", rep.verdict.to_string()));
            Some(rep)
        }
        Err(Error::NoEndemicEquilibrium(reason)) => {
            files.push(export::write_text(
                &dir.join("stability_drug_addiction.txt"),
                &report::absent_text(model, &reason),
            )?);
            files.push(export::write_text(
                &dir.join("stability_drug_addiction.kv"),
                &report::absent_kv(model, &reason),
            )?);
            writeln!(
                summary,
                "== drug-addiction equilibrium ==\nabsent: {reason}"
            )
            .unwrap();
            verdicts.push(("E*", "absent".to_string()));
            None
        }
        Err(e) => return Err(e),
    };
    Ok(StabilityOutcome {
        summary,
        drug_free: free,
        drug_addiction: endemic,
        files,
        verdicts,
    })
}

/// Classifies both equilibria over modes `0..=j_max` and writes text and
/// key-value reports.
pub fn stability_report_cmd(s: &Scenario, j_max: usize) -> Result<StabilityOutcome> {
    s.validate()?;
    write_stability(s, j_max)
}

#[derive(Debug)]
pub struct LyapunovOutcome {
    pub summary: String,
    pub trace: LyapunovTrace,
    pub files: Vec<PathBuf>,
}

/// Integrates the scenario and records the chosen functional along it.
pub fn lyapunov_cmd(s: &Scenario, choice: FunctionalChoice) -> Result<LyapunovOutcome> {
    s.validate()?;
    let func = functional_for(s, choice)?;
    let traj = integrate(&s.sim)?;
    if let crate::rdsolver::Termination::Aborted { time, reason } = &traj.termination {
        return Err(Error::SolverAbort {
            time: *time,
            reason: reason.clone(),
        });
    }
    let trace = dissipation_report(&traj, &func);
    let path = export::write_lyapunov_csv(&s.out_dir.join(export::LYAPUNOV_CSV), s, &trace)?;
    Ok(LyapunovOutcome {
        summary: lyapunov_summary(&trace),
        trace,
        files: vec![path],
    })
}

#[derive(Debug)]
pub struct ConvergenceOutcome {
    pub summary: String,
    pub study: ConvergenceStudy,
    pub files: Vec<PathBuf>,
}

/// Manufactured-solution study with the scenario's parameters and model.
pub fn convergence_study_cmd(
    base: &Scenario,
    refinement: &Refinement,
    stepper: Stepper,
) -> Result<ConvergenceOutcome> {
    if refinement.levels() < 3 {
        return Err(Error::Usage(format!(
            "a convergence study needs at least 3 refinement levels, got {}",
            refinement.levels()
        )));
    }
    base.sim.params.validate()?;
    let study = convergence_study(&base.sim.params, base.sim.model, refinement, stepper)?;
    let path = base.out_dir.join(format!("convergence_{}.csv", study.kind));
    let file = export::write_convergence_csv(&path, base, &study)?;
    let mut summary = format!("{} convergence ({} stepper)\n", study.kind, stepper);
    for l in &study.levels {
        let order = l
            .order
            .map(|o| format!("{o:.4}"))
            .unwrap_or_else(|| "-".into());
        writeln!(
            summary,
            "  Mx = {:>4}  dt = {:.3e}  error = {:.6e}  order = {order}",
            l.cells, l.dt, l.error
        )
        .unwrap();
    }
    Ok(ConvergenceOutcome {
        summary,
        study,
        files: vec![file],
    })
}

/// One line per catalog entry.
pub fn presets_listing() -> String {
    let mut out = String::new();
    for s in presets::catalog() {
        let p = &s.sim.params;
        let model = s.sim.model;
        let r = r0(p, model).map(|v| format!("{v:.6}")).unwrap_or_default();
        let threshold = match model {
            Model::Extended => effective_threshold_extended(p)
                .map(|v| format!("  threshold = {v:.6}"))
                .unwrap_or_default(),
            Model::Basic => String::new(),
        };
        writeln!(
            out,
            "{:<20} {:<9} R0 = {r}{threshold}",
            s.name,
            model.to_string()
        )
        .unwrap();
    }
    out
}

/// Writes every catalog entry as `<dir>/<name>.toml`.
pub fn write_preset_files(dir: &std::path::Path) -> Result<Vec<PathBuf>> {
    presets::catalog()
        .iter()
        .map(|s| export::write_text(&dir.join(format!("{}.toml", s.name)), &to_toml(s)?))
        .collect()
}
