use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use schr::harness::commands::{self, write_preset_files};
use schr::harness::{load_scenario, presets, FunctionalChoice, Scenario};
use schr::rdsolver::{Refinement, Stepper};
use schr::{Error, Result};

#[derive(Parser)]
#[command(
    name = "schr",
    version,
    about = "Cocaine-heroin reaction-diffusion models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a scenario and write its outputs.
    Run(Common),
    /// Classify the drug-free and drug-addiction equilibria.
    Stability(Common),
    /// Track a Lyapunov functional along a simulated trajectory.
    Lyapunov {
        #[command(flatten)]
        common: Common,
        /// auto, g1 (drug-free) or g2 (drug-addiction).
        #[arg(long, default_value = "auto")]
        functional: String,
    },
    /// Manufactured-solution convergence study.
    Converge {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "spatial")]
        kind: Kind,
        /// Comma-separated cell counts (spatial) or time steps (temporal).
        #[arg(long, value_delimiter = ',')]
        levels: Option<Vec<f64>>,
        /// Fixed time step of a spatial study.
        #[arg(long)]
        dt: Option<f64>,
        /// Fixed cell count of a temporal study.
        #[arg(long)]
        cells: Option<usize>,
        #[arg(long)]
        t_end: Option<f64>,
    },
    /// List the built-in presets (and write them as scenario files with --out).
    Presets {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Spatial,
    Temporal,
}

#[derive(Args)]
struct Common {
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    jmax: Option<usize>,
    #[arg(long)]
    stepper: Option<String>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl Common {
    fn scenario(&self) -> Result<Scenario> {
        let mut s = match (&self.config, &self.preset) {
            (Some(path), None) => load_scenario(path)?,
            (None, Some(name)) => presets::preset(name)?,
            _ => {
                return Err(Error::Usage(
                    "exactly one of --config or --preset is required".into(),
                ))
            }
        };
        if let Some(out) = &self.out {
            s.out_dir = out.clone();
        }
        if let Some(j) = self.jmax {
            s.j_max = j;
        }
        if let Some(st) = &self.stepper {
            s.sim.stepper = Stepper::parse(st).ok_or_else(|| {
                Error::Usage(format!("unknown stepper `{st}` (explicit or imex)"))
            })?;
        }
        if self.threads == 0 {
            return Err(Error::Usage("--threads must be at least 1".into()));
        }
        s.sim.threads = self.threads;
        Ok(s)
    }
}

fn refinement(
    kind: Kind,
    levels: Option<Vec<f64>>,
    dt: Option<f64>,
    cells: Option<usize>,
    t_end: Option<f64>,
) -> Result<Refinement> {
    Ok(
        match (
            kind,
            Refinement::default_spatial(),
            Refinement::default_temporal(),
        ) {
            (
                Kind::Spatial,
                Refinement::Spatial {
                    cells: c0,
                    dt: dt0,
                    t_end: t0,
                },
                _,
            ) => Refinement::Spatial {
                cells: match levels {
                    Some(v) => v
                        .iter()
                        .map(|&x| {
                            (x >= 4.0 && x.fract() == 0.0)
                                .then_some(x as usize)
                                .ok_or_else(|| {
                                    Error::Usage(format!(
                                        "spatial level `{x}` is not an integer >= 4"
                                    ))
                                })
                        })
                        .collect::<Result<_>>()?,
                    None => c0,
                },
                dt: dt.unwrap_or(dt0),
                t_end: t_end.unwrap_or(t0),
            },
            (
                Kind::Temporal,
                _,
                Refinement::Temporal {
                    dts,
                    cells: c0,
                    t_end: t0,
                },
            ) => Refinement::Temporal {
                dts: levels.unwrap_or(dts),
                cells: cells.unwrap_or(c0),
                t_end: t_end.unwrap_or(t0),
            },
            _ => unreachable!("default refinements have fixed kinds"),
        },
    )
}

fn print_files(files: &[PathBuf]) {
    for f in files {
        println!("wrote {}", f.display());
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Run(c) => {
            let s = c.scenario()?;
            let out = commands::run(&s)?;
            print!("{}", out.summary);
            print_files(&out.files);
            Ok(out.exit_code())
        }
        Command::Stability(c) => {
            let s = c.scenario()?;
            let out = commands::stability_report_cmd(&s, s.j_max)?;
            print!("{}", out.summary);
            print_files(&out.files);
            Ok(0)
        }
        Command::Lyapunov { common, functional } => {
            let s = common.scenario()?;
            let choice = FunctionalChoice::parse(&functional).ok_or_else(|| {
                Error::Usage(format!("unknown functional `{functional}` (auto, g1, g2)"))
            })?;
            let out = commands::lyapunov_cmd(&s, choice)?;
            print!("{}", out.summary);
            print_files(&out.files);
            Ok(0)
        }
        Command::Converge {
            common,
            kind,
            levels,
            dt,
            cells,
            t_end,
        } => {
            let s = common.scenario()?;
            let r = refinement(kind, levels, dt, cells, t_end)?;
            let out = commands::convergence_study_cmd(&s, &r, s.sim.stepper)?;
            print!("{}", out.summary);
            print_files(&out.files);
            Ok(0)
        }
        Command::Presets { out } => {
            print!("{}", commands::presets_listing());
            if let Some(dir) = out {
                print_files(&write_preset_files(&dir)?);
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e) as u8)
        }
    }
}
