//! Scenario files, the preset catalog, report and CSV export, and the
//! command drivers used by the `schr` binary.

pub mod commands;
mod config;
pub mod export;
pub mod presets;
pub mod report;

pub use commands::{
    convergence_study_cmd, exit_code, lyapunov_cmd, presets_listing, run, stability_report_cmd,
    FunctionalChoice,
};
pub use config::{load_scenario, parse_scenario, to_toml, Outputs, Scenario};
