//! CSV and plotting-script output.
//!
//! Floats are printed as `{:.16e}` (17 significant digits), enough to
//! round-trip any `f64`. Each file starts with one `#` metadata line.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use super::Scenario;
use crate::error::{Error, Result};
use crate::rdsolver::{ConvergenceStudy, Trajectory};
use crate::stability::LyapunovTrace;

pub const TRAJECTORY_CSV: &str = "trajectory.csv";
pub const DIAGNOSTICS_CSV: &str = "diagnostics.csv";
pub const LYAPUNOV_CSV: &str = "lyapunov.csv";
pub const GNUPLOT_SCRIPT: &str = "plot.gp";
pub const ABORTED_MARKER: &str = "ABORTED";

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn write_all(
    path: &Path,
    body: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
) -> Result<PathBuf> {
    let mut w = create(path)?;
    body(&mut w)
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(path, e))?;
    Ok(path.to_path_buf())
}

pub fn metadata_line(s: &Scenario) -> String {
    format!(
        "# scenario={} model={} L={} Mx={} dt={} t_end={} stepper={} d={}",
        s.name,
        s.sim.model,
        s.sim.grid.length(),
        s.sim.grid.cells(),
        s.sim.dt,
        s.sim.t_end,
        s.sim.stepper,
        s.sim.params.d
    )
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.16e}")).unwrap_or_default()
}

/// One row per (sample, node): `t,x,<compartments…>`.
pub fn write_trajectory_csv(path: &Path, s: &Scenario, traj: &Trajectory) -> Result<PathBuf> {
    write_all(path, |w| {
        writeln!(w, "{}", metadata_line(s))?;
        writeln!(w, "t,x,{}", traj.model.names().join(","))?;
        for f in &traj.fields {
            let xs = f.grid.positions();
            for (j, x) in xs.iter().enumerate() {
                write!(w, "{:.16e},{:.16e}", f.time, x)?;
                for c in &f.data {
                    write!(w, ",{:.16e}", c[j])?;
                }
                writeln!(w)?;
            }
        }
        Ok(())
    })
}

/// One row per sample: masses, extrema and the steady-state residual.
pub fn write_diagnostics_csv(path: &Path, s: &Scenario, traj: &Trajectory) -> Result<PathBuf> {
    write_all(path, |w| {
        writeln!(w, "{}", metadata_line(s))?;
        let masses: Vec<String> = traj
            .model
            .names()
            .iter()
            .map(|n| format!("mass_{n}"))
            .collect();
        writeln!(
            w,
            "t,{},min_value,min_before_clamp,steady_residual,spread",
            masses.join(",")
        )?;
        for d in &traj.diagnostics {
            write!(w, "{:.16e}", d.time)?;
            for m in &d.mass {
                write!(w, ",{m:.16e}")?;
            }
            writeln!(
                w,
                ",{:.16e},{:.16e},{:.16e},{:.16e}",
                d.min_value, d.min_before_clamp, d.steady_residual, d.spread
            )?;
        }
        Ok(())
    })
}

/// `t,value,slope`; undefined entries are left empty.
pub fn write_lyapunov_csv(path: &Path, s: &Scenario, trace: &LyapunovTrace) -> Result<PathBuf> {
    write_all(path, |w| {
        writeln!(w, "{} functional={}", metadata_line(s), trace.functional)?;
        writeln!(w, "t,value,slope")?;
        for k in 0..trace.times.len() {
            writeln!(
                w,
                "{:.16e},{},{}",
                trace.times[k],
                opt(trace.values[k]),
                opt(trace.slopes[k])
            )?;
        }
        Ok(())
    })
}

pub fn write_convergence_csv(
    path: &Path,
    s: &Scenario,
    study: &ConvergenceStudy,
) -> Result<PathBuf> {
    write_all(path, |w| {
        writeln!(
            w,
            "{} study={} study_stepper={} study_t_end={}",
            metadata_line(s),
            study.kind,
            study.stepper,
            study.t_end
        )?;
        writeln!(w, "cells,dt,error,order")?;
        for l in &study.levels {
            writeln!(
                w,
                "{},{:.16e},{:.16e},{}",
                l.cells,
                l.dt,
                l.error,
                opt(l.order)
            )?;
        }
        Ok(())
    })
}

/// Gnuplot script: spatial means over time (from the diagnostics masses)
/// and final spatial profiles (from the trajectory).
pub fn write_gnuplot_script(path: &Path, s: &Scenario, traj: &Trajectory) -> Result<PathBuf> {
    let names = traj.model.names();
    let length = s.sim.grid.length();
    let t_last = traj.last().time;
    write_all(path, |w| {
        writeln!(w, "# generated for scenario {}", s.name)?;
        writeln!(w, "set datafile separator ','")?;
        writeln!(w, "set datafile commentschars '#'")?;
        writeln!(w, "set key autotitle columnhead")?;
        writeln!(w, "set terminal pngcairo size 1200,{}", 300 * names.len())?;
        writeln!(w, "set output 'means.png'")?;
        writeln!(w, "set multiplot layout {},1", names.len())?;
        writeln!(w, "set xlabel 't'")?;
        for (i, n) in names.iter().enumerate() {
            writeln!(w, "set ylabel '{n}'")?;
            writeln!(
                w,
                "plot '{DIAGNOSTICS_CSV}' using 1:(${}/{length}) with lines title 'mean {n}'",
                i + 2
            )?;
        }
        writeln!(w, "unset multiplot")?;
        writeln!(w, "set output 'final_profile.png'")?;
        writeln!(w, "set multiplot layout {},1", names.len())?;
        writeln!(w, "set xlabel 'x'")?;
        for (i, n) in names.iter().enumerate() {
            writeln!(w, "set ylabel '{n}'")?;
            writeln!(
                w,
                "plot '{TRAJECTORY_CSV}' using 2:(abs($1-{t_last:.16e})<1e-9 ? ${} : 1/0) with linespoints title '{n}(t={t_last})'",
                i + 3
            )?;
        }
        writeln!(w, "unset multiplot")?;
        Ok(())
    })
}

pub fn write_aborted_marker(dir: &Path, reason: &str) -> Result<PathBuf> {
    write_all(&dir.join(ABORTED_MARKER), |w| writeln!(w, "{reason}"))
}

pub fn write_text(path: &Path, text: &str) -> Result<PathBuf> {
    write_all(path, |w| w.write_all(text.as_bytes()))
}
