//! Command line front end for the superfringe toolkit: configures binning
//! schemes and scans, runs the analytic and Monte Carlo engines, and writes
//! CSV/JSON datasets.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use args::{Cli, Command};
use config::{load_config_file, resolve, PartialConfig};
use error::CliError;
use output::Sink;

/// Execute a parsed invocation.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let (mode, figure, common) = match &cli.command {
        Command::Scan(c) => ("scan", None, c),
        Command::Mc(c) => ("mc", None, c),
        Command::Fwhm(c) => ("fwhm", None, c),
        Command::Sens(c) => ("sens", None, c),
        Command::Fringes(c) => ("fringes", None, c),
        Command::Optimize(c) => ("optimize", None, c),
        Command::Reproduce(r) => ("reproduce", Some(r.figure), &r.common),
    };
    let file_layer: Option<PartialConfig> = match &common.config {
        Some(path) => Some(load_config_file(path)?),
        None => None,
    };
    let config = resolve(mode, figure, common.as_partial(), file_layer)?;
    let sink = Sink::from_path(common.out.clone());
    let document = match &cli.command {
        Command::Scan(_) => commands::run_scan(config)?,
        Command::Mc(_) => commands::run_mc(config)?,
        Command::Fwhm(_) => commands::run_fwhm(config)?,
        Command::Sens(_) => commands::run_sens(config)?,
        Command::Fringes(_) => commands::run_fringes(config)?,
        Command::Optimize(_) => commands::run_optimize(config)?,
        Command::Reproduce(r) => commands::run_reproduce(r.figure, config)?,
    };
    output::emit(&document, &sink)
}
