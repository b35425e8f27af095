//! Run configuration: defaults, config files, the seed environment
//! variable and command line flags, merged in that order of precedence
//! (flags win).
//!
//! The resolved configuration is embedded verbatim in every JSON dataset
//! under the top-level `config` key, and such a dataset can be fed back via
//! `--config` to reproduce the identical records.

use std::path::Path;

use serde::{Deserialize, Serialize};

use superfringe_core::quadmodel::PhaseGrid;
use superfringe_core::{BinaryScheme, CoherentSource, MultiScheme, Scheme};

use crate::error::CliError;

/// Environment variable consulted for the seed when neither `--seed` nor a
/// config file provides one. Lowest precedence after the built-in default.
pub const SEED_ENV_VAR: &str = "SUPERFRINGE_SEED";

/// Fixed default seed; default invocations are reproducible by design.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FigureId {
    Fig2a,
    Fig2b,
    Fig2c,
    Fig2d,
    Fig3a,
    Fig3b,
    Fig3c,
}

impl FigureId {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Fig2a => "fig2a",
            Self::Fig2b => "fig2b",
            Self::Fig2c => "fig2c",
            Self::Fig2d => "fig2d",
            Self::Fig3a => "fig3a",
            Self::Fig3b => "fig3b",
            Self::Fig3c => "fig3c",
        }
    }
}

/// A configuration layer in which every field may be absent.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    /// Informational when read from a file; the subcommand decides the mode.
    pub mode: Option<String>,
    pub figure: Option<String>,
    pub n_photons: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub n_bins: Option<u64>,
    pub phi_start: Option<f64>,
    pub phi_end: Option<f64>,
    pub phi_steps: Option<u64>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub efficiency: Option<f64>,
    pub visibility_threshold: Option<f64>,
    pub format: Option<OutputFormat>,
}

impl PartialConfig {
    /// Overlay `upper` on `self`: present fields of `upper` win.
    fn overlay(self, upper: PartialConfig) -> PartialConfig {
        PartialConfig {
            mode: upper.mode.or(self.mode),
            figure: upper.figure.or(self.figure),
            n_photons: upper.n_photons.or(self.n_photons),
            a: upper.a.or(self.a),
            b: upper.b.or(self.b),
            n_bins: upper.n_bins.or(self.n_bins),
            phi_start: upper.phi_start.or(self.phi_start),
            phi_end: upper.phi_end.or(self.phi_end),
            phi_steps: upper.phi_steps.or(self.phi_steps),
            samples: upper.samples.or(self.samples),
            seed: upper.seed.or(self.seed),
            efficiency: upper.efficiency.or(self.efficiency),
            visibility_threshold: upper.visibility_threshold.or(self.visibility_threshold),
            format: upper.format.or(self.format),
        }
    }
}

/// Fully resolved run configuration, embedded in JSON outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub mode: String,
    pub figure: Option<String>,
    pub n_photons: Option<f64>,
    pub a: f64,
    pub b: Option<f64>,
    pub n_bins: Option<u64>,
    pub phi_start: f64,
    pub phi_end: f64,
    pub phi_steps: u64,
    pub samples: u64,
    pub seed: u64,
    pub efficiency: f64,
    pub visibility_threshold: f64,
    pub format: OutputFormat,
}

/// Read a config layer from a JSON file. The file may be a bare config
/// object or a complete dataset written by this tool, in which case its
/// top-level `config` block is used.
pub fn load_config_file(path: &Path) -> Result<PartialConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config file {}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("config file is not valid JSON: {e}")))?;
    let config_value = match value.get("config") {
        Some(inner) => inner.clone(),
        None => value,
    };
    serde_json::from_value(config_value).map_err(|e| CliError::Config(format!("invalid config file: {e}")))
}

fn seed_from_env() -> Result<Option<u64>, CliError> {
    match std::env::var(SEED_ENV_VAR) {
        Ok(text) => text
            .trim()
            .parse::<u64>()
            .map(Some)
            .map_err(|_| CliError::Config(format!("{SEED_ENV_VAR} must be an unsigned 64-bit integer, got {text:?}"))),
        Err(_) => Ok(None),
    }
}

/// Merge defaults, the seed environment variable, an optional config file
/// and the command line flags into a resolved configuration.
pub fn resolve(
    mode: &str,
    figure: Option<FigureId>,
    flags: PartialConfig,
    file: Option<PartialConfig>,
) -> Result<RunConfig, CliError> {
    let mut layered = PartialConfig::default();
    if let Some(seed) = seed_from_env()? {
        layered.seed = Some(seed);
    }
    if let Some(file_layer) = file {
        layered = layered.overlay(file_layer);
    }
    layered = layered.overlay(flags);

    // Reference figures resolve multi-window fringe structure, which wants
    // a denser default grid than plain scans.
    let default_steps = match figure {
        Some(FigureId::Fig3a | FigureId::Fig3b) => 512,
        _ => 256,
    };

    let config = RunConfig {
        mode: mode.to_string(),
        figure: figure.map(|f| f.as_str().to_string()),
        n_photons: layered.n_photons,
        a: layered.a.unwrap_or(0.5),
        b: layered.b,
        n_bins: layered.n_bins,
        phi_start: layered.phi_start.unwrap_or(-std::f64::consts::PI),
        phi_end: layered.phi_end.unwrap_or(std::f64::consts::PI),
        phi_steps: layered.phi_steps.unwrap_or(default_steps),
        samples: layered.samples.unwrap_or(100_000),
        seed: layered.seed.unwrap_or(DEFAULT_SEED),
        efficiency: layered.efficiency.unwrap_or(1.0),
        visibility_threshold: layered.visibility_threshold.unwrap_or(0.95),
        format: layered.format.unwrap_or(OutputFormat::Csv),
    };
    validate(&config)?;
    Ok(config)
}

fn validate(config: &RunConfig) -> Result<(), CliError> {
    if config.b.is_some() != config.n_bins.is_some() {
        return Err(CliError::Config(
            "--b and --bins must be given together (multi-window) or not at all (binary)".into(),
        ));
    }
    if config.phi_steps < 2 {
        return Err(CliError::Config(format!(
            "--steps must be at least 2, got {}",
            config.phi_steps
        )));
    }
    Ok(())
}

impl RunConfig {
    /// The coherent source of the run; `--n-photons` is mandatory for every
    /// mode that is not a fixed reference figure.
    pub fn source(&self) -> Result<CoherentSource, CliError> {
        let n = self
            .n_photons
            .ok_or_else(|| CliError::Config("--n-photons is required".into()))?;
        CoherentSource::new(n).map_err(Into::into)
    }

    /// The acceptance scheme selected by `--a` / `--b` / `--bins`.
    pub fn scheme(&self) -> Result<Scheme, CliError> {
        match (self.b, self.n_bins) {
            (Some(b), Some(n)) => Ok(Scheme::Multi(MultiScheme::new(self.a, b, n as usize)?)),
            _ => Ok(Scheme::Binary(BinaryScheme::new(self.a)?)),
        }
    }

    pub fn grid(&self) -> Result<PhaseGrid, CliError> {
        PhaseGrid::linspace(self.phi_start, self.phi_end, self.phi_steps as usize).map_err(Into::into)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file_values() {
        let file = PartialConfig {
            n_photons: Some(19.0),
            samples: Some(1000),
            ..Default::default()
        };
        let flags = PartialConfig {
            samples: Some(77),
            ..Default::default()
        };
        let config = resolve("scan", None, flags, Some(file)).unwrap();
        assert_eq!(config.n_photons, Some(19.0));
        assert_eq!(config.samples, 77);
        assert_eq!(config.seed, DEFAULT_SEED);
    }

    #[test]
    fn window_pair_must_be_consistent() {
        let flags = PartialConfig {
            b: Some(3.17),
            ..Default::default()
        };
        assert!(matches!(resolve("scan", None, flags, None), Err(CliError::Config(_))));
    }

    #[test]
    fn dataset_config_block_round_trips() {
        let flags = PartialConfig {
            n_photons: Some(139.0),
            b: Some(3.17),
            n_bins: Some(5),
            ..Default::default()
        };
        let config = resolve("scan", None, flags, None).unwrap();
        let dataset = serde_json::json!({ "config": config, "records": [] });
        let text = serde_json::to_string(&dataset).unwrap();
        let reloaded: PartialConfig = {
            let value: serde_json::Value = serde_json::from_str(&text).unwrap();
            serde_json::from_value(value["config"].clone()).unwrap()
        };
        let again = resolve("scan", None, PartialConfig::default(), Some(reloaded)).unwrap();
        assert_eq!(config, again);
    }
}
