//! Plain-text and key-value renderings of stability reports and run summaries.

use std::fmt::Write as _;

use num_complex::Complex64;

use super::Scenario;
use crate::kinetics::{
    drug_free_equilibrium, effective_threshold_extended, endemic_equilibrium, r0, Model,
};
use crate::rdsolver::{steady_state_residual, Trajectory};
use crate::stability::StabilityReport;

/// Relative gap above which the closed-form R0 and the exact invasion
/// threshold are reported as different.
const THRESHOLD_GAP: f64 = 1e-9;

fn fmt_root(z: &Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.10e}", z.re)
    } else {
        format!("{:.10e}{:+.10e}i", z.re, z.im)
    }
}

fn fmt_point(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.8}")).collect();
    format!("({})", parts.join(", "))
}

/// Note for extended reports where the closed-form R0 and the exact
/// threshold disagree.
pub fn threshold_note(rep: &StabilityReport) -> Option<String> {
    let t = rep.effective_threshold?;
    if ((t - rep.r0) / t).abs() <= THRESHOLD_GAP {
        return None;
    }
    let mut note = format!(
        "closed-form R0 = {:.10} differs from the exact invasion threshold {:.10} \
         (return flow mu2 from Uc to C); the verdict follows the threshold",
        rep.r0, t
    );
    if (rep.r0 < 1.0) != (t < 1.0) {
        note.push_str("; the two lie on opposite sides of 1");
    }
    Some(note)
}

pub fn stability_text(rep: &StabilityReport) -> String {
    let mut s = String::new();
    let w = &mut s;
    writeln!(w, "model: {}", rep.model).unwrap();
    writeln!(
        w,
        "equilibrium: {} {} [{}]",
        rep.kind,
        fmt_point(&rep.equilibrium.point.values),
        rep.equilibrium.provenance
    )
    .unwrap();
    writeln!(w, "R0 (closed form): {:.10}", rep.r0).unwrap();
    if let Some(t) = rep.effective_threshold {
        writeln!(w, "invasion threshold: {t:.10}").unwrap();
    }
    if let Some(note) = threshold_note(rep) {
        writeln!(w, "note: {note}").unwrap();
    }
    writeln!(w, "verdict: {}", rep.verdict).unwrap();
    writeln!(w, "max real part over modes: {:.10e}", rep.max_real_part()).unwrap();
    writeln!(w, "modes (j, lambda_j, roots):").unwrap();
    for m in &rep.modes {
        let roots: Vec<String> = m.roots.iter().map(fmt_root).collect();
        writeln!(
            w,
            "  {:>3}  {:.6e}  {}",
            m.mode_index,
            m.lambda_j,
            roots.join("  ")
        )
        .unwrap();
    }
    s
}

/// One `key=value` per line; roots as `mode.<j>.root.<k>=re,im`.
pub fn stability_kv(rep: &StabilityReport) -> String {
    let mut s = String::new();
    let w = &mut s;
    writeln!(w, "model={}", rep.model).unwrap();
    writeln!(w, "equilibrium.kind={}", rep.kind).unwrap();
    writeln!(w, "equilibrium.provenance={}", rep.equilibrium.provenance).unwrap();
    for (name, v) in rep.model.names().iter().zip(&rep.equilibrium.point.values) {
        writeln!(w, "equilibrium.{name}={v:.16e}").unwrap();
    }
    writeln!(w, "r0={:.16e}", rep.r0).unwrap();
    if let Some(t) = rep.effective_threshold {
        writeln!(w, "threshold={t:.16e}").unwrap();
        writeln!(
            w,
            "threshold.differs_from_r0={}",
            threshold_note(rep).is_some()
        )
        .unwrap();
    }
    writeln!(w, "verdict={}", rep.verdict).unwrap();
    writeln!(w, "max_real_part={:.16e}", rep.max_real_part()).unwrap();
    writeln!(w, "modes={}", rep.modes.len()).unwrap();
    for m in &rep.modes {
        writeln!(w, "mode.{}.lambda={:.16e}", m.mode_index, m.lambda_j).unwrap();
        if let (Some(a1), Some(a2)) = (m.alpha1, m.alpha2) {
            writeln!(w, "mode.{}.alpha1={a1:.16e}", m.mode_index).unwrap();
            writeln!(w, "mode.{}.alpha2={a2:.16e}", m.mode_index).unwrap();
        }
        for (k, z) in m.roots.iter().enumerate() {
            writeln!(
                w,
                "mode.{}.root.{k}={:.16e},{:.16e}",
                m.mode_index, z.re, z.im
            )
            .unwrap();
        }
    }
    s
}

pub fn absent_text(model: Model, reason: &str) -> String {
    format!("model: {model}\nequilibrium: drug-addiction absent\nreason: {reason}\n")
}

pub fn absent_kv(model: Model, reason: &str) -> String {
    format!("model={model}\nequilibrium.kind=drug-addiction\nequilibrium.present=false\nreason={reason}\n")
}

/// Short human summary printed after a run.
pub fn run_summary(s: &Scenario, traj: &Trajectory) -> String {
    let p = &s.sim.params;
    let model = s.sim.model;
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "scenario: {} ({model} model)", s.name).unwrap();
    writeln!(
        w,
        "grid: L = {}, Mx = {}, dt = {}, t_end = {}, stepper = {}",
        s.sim.grid.length(),
        s.sim.grid.cells(),
        s.sim.dt,
        s.sim.t_end,
        s.sim.stepper
    )
    .unwrap();
    if let Ok(v) = r0(p, model) {
        writeln!(w, "R0 = {v:.6}").unwrap();
    }
    if model == Model::Extended {
        if let Ok(t) = effective_threshold_extended(p) {
            writeln!(w, "invasion threshold = {t:.6}").unwrap();
        }
    }
    if let Ok(ef) = drug_free_equilibrium(p, model) {
        writeln!(w, "E_f = {}", fmt_point(&ef.point.values)).unwrap();
    }
    match endemic_equilibrium(p, model) {
        Ok(es) => writeln!(w, "E* = {}", fmt_point(&es.point.values)).unwrap(),
        Err(e) => writeln!(w, "E* absent ({e})").unwrap(),
    }
    writeln!(w, "termination: {}", traj.termination).unwrap();
    let last = traj.last();
    writeln!(w, "final time: {}", last.time).unwrap();
    writeln!(w, "final residual: {:.3e}", steady_state_residual(last, p)).unwrap();
    let finals: Vec<String> = model
        .names()
        .iter()
        .enumerate()
        .map(|(i, n)| {
            format!(
                "{n} in [{:.6}, {:.6}]",
                last.data[i].iter().cloned().fold(f64::INFINITY, f64::min),
                last.max_of(i)
            )
        })
        .collect();
    writeln!(w, "final field: {}", finals.join(", ")).unwrap();
    for warning in &traj.warnings {
        writeln!(w, "warning: {warning}").unwrap();
    }
    out
}
