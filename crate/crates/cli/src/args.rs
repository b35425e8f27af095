//! Command line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{FigureId, OutputFormat, PartialConfig};

/// Experiment runner for super-resolving binned-homodyne interferometry.
///
/// Default invocations are reproducible: the Monte Carlo seed defaults to a
/// fixed value (42) unless overridden by --seed, a config file, or the
/// SUPERFRINGE_SEED environment variable (in decreasing precedence).
#[derive(Debug, Parser)]
#[command(name = "superfringe", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analytic response/variance/sensitivity scan over a phase grid
    Scan(CommonArgs),
    /// Monte Carlo scan: per-phase hit counts with standard errors
    Mc(CommonArgs),
    /// Fringe width report (numeric FWHM plus closed forms)
    Fwhm(CommonArgs),
    /// Sensitivity curve with closed-form comparisons and minima
    Sens(CommonArgs),
    /// Fringe census: peaks, troughs, per-fringe visibility
    Fringes(CommonArgs),
    /// Search the window spacing maximizing fringes at a visibility budget
    Optimize(CommonArgs),
    /// Emit a reference dataset (fig2a..fig2d, fig3a..fig3c)
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Mean photon number N of the coherent input
    #[arg(long = "n-photons")]
    pub n_photons: Option<f64>,

    /// Acceptance window half-width a (quadrature units)
    #[arg(long)]
    pub a: Option<f64>,

    /// Window spacing b for multi-window schemes; requires --bins
    #[arg(long)]
    pub b: Option<f64>,

    /// Number of windows (odd); requires --b
    #[arg(long)]
    pub bins: Option<u64>,

    /// First phase of the scan grid (radians unless --degrees)
    #[arg(long = "phi-start", allow_hyphen_values = true)]
    pub phi_start: Option<f64>,

    /// Last phase of the scan grid (radians unless --degrees)
    #[arg(long = "phi-end", allow_hyphen_values = true)]
    pub phi_end: Option<f64>,

    /// Number of grid points (inclusive of both ends)
    #[arg(long)]
    pub steps: Option<u64>,

    /// Monte Carlo samples per phase point
    #[arg(long)]
    pub samples: Option<u64>,

    /// Master seed for the Monte Carlo substreams
    #[arg(long)]
    pub seed: Option<u64>,

    /// Detection efficiency in (0, 1]; rescales N to eta*N in simulations
    #[arg(long)]
    pub efficiency: Option<f64>,

    /// Visibility budget for the spacing optimizer, in (0, 1)
    #[arg(long = "visibility-threshold")]
    pub visibility_threshold: Option<f64>,

    /// Interpret --phi-start/--phi-end as degrees (converted on ingest)
    #[arg(long)]
    pub degrees: bool,

    /// Read a JSON config layer (bare object or a dataset with a `config`
    /// key); command line flags override file values
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Output path (defaults to stdout)
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Output format
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Which reference dataset to emit
    #[arg(value_enum)]
    pub figure: FigureId,

    #[command(flatten)]
    pub common: CommonArgs,
}

impl CommonArgs {
    /// The flag layer of the configuration, with degree conversion applied.
    pub fn as_partial(&self) -> PartialConfig {
        let convert = |v: Option<f64>| {
            v.map(|x| if self.degrees { x.to_radians() } else { x })
        };
        PartialConfig {
            mode: None,
            figure: None,
            n_photons: self.n_photons,
            a: self.a,
            b: self.b,
            n_bins: self.bins,
            phi_start: convert(self.phi_start),
            phi_end: convert(self.phi_end),
            phi_steps: self.steps,
            samples: self.samples,
            seed: self.seed,
            efficiency: self.efficiency,
            visibility_threshold: self.visibility_threshold,
            format: self.format,
        }
    }
}
