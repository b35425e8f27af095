//! Implementations of the CLI subcommands.

use rayon::prelude::*;
use serde_json::{json, Value};

use superfringe_core::binning::{
    analytic_scan, binary_sensitivity_closed_form, count_fringes, fringe_pattern, fwhm, min_sensitivity,
    optimize_spacing, visibility, zero_width_fwhm, zero_width_sensitivity_minimum, Scheme,
};
use superfringe_core::mcsim::{
    empirical_fwhm, empirical_sensitivity, pull_statistics, simulate_point, EmpiricalCurve, McConfig,
};
use superfringe_core::numerics::peak_analysis;
use superfringe_core::{Binning, CoherentSource};

use crate::config::{FigureId, RunConfig};
use crate::error::CliError;
use crate::output::{cell_value, optional_value, Cell, Document};

const PI: f64 = std::f64::consts::PI;

/// Analytic scan: response, variance, sensitivity per phase point.
pub fn run_scan(config: RunConfig) -> Result<Document, CliError> {
    let source = config.source()?;
    let scheme = config.scheme()?;
    let grid = config.grid()?;
    let records = analytic_scan(&scheme, source, &grid);
    let csv_rows = records
        .iter()
        .map(|r| {
            format!(
                "{},{},{},{}",
                Cell(r.phi).csv(),
                Cell(r.response).csv(),
                Cell(r.variance).csv(),
                Cell(r.sensitivity).csv()
            )
        })
        .collect();
    let records_json: Vec<Value> = records
        .iter()
        .map(|r| {
            json!({
                "phi": cell_value(r.phi),
                "response": cell_value(r.response),
                "variance": cell_value(r.variance),
                "sensitivity": cell_value(r.sensitivity),
            })
        })
        .collect();
    let summary = analytic_summary(&scheme, source);
    Ok(Document {
        config,
        csv_header: "phi,response,variance,sensitivity",
        csv_rows,
        records: Value::Array(records_json),
        summary,
    })
}

/// Monte Carlo scan. Phase points are simulated in parallel; each point
/// owns a random substream derived from (seed, point index), so the output
/// is byte-identical for any worker count.
pub fn run_mc(config: RunConfig) -> Result<Document, CliError> {
    let source = config.source()?;
    let scheme = config.scheme()?;
    let curve = simulate_curve(&config, &scheme, source)?;
    let csv_rows = curve
        .points
        .iter()
        .map(|p| {
            format!(
                "{},{},{},{},{}",
                Cell(p.phi).csv(),
                p.n_samples,
                p.hits,
                Cell(p.response_hat).csv(),
                Cell(p.std_err).csv()
            )
        })
        .collect();
    let records_json: Vec<Value> = curve
        .points
        .iter()
        .map(|p| {
            json!({
                "phi": cell_value(p.phi),
                "n_samples": p.n_samples,
                "hits": p.hits,
                "response_hat": cell_value(p.response_hat),
                "std_err": cell_value(p.std_err),
            })
        })
        .collect();
    let summary = empirical_summary(&curve, &scheme, source);
    Ok(Document {
        config,
        csv_header: "phi,n_samples,hits,response_hat,std_err",
        csv_rows,
        records: Value::Array(records_json),
        summary,
    })
}

/// Fringe width report.
pub fn run_fwhm(config: RunConfig) -> Result<Document, CliError> {
    let source = config.source()?;
    let scheme = config.scheme()?;
    let width = fwhm(&scheme, source)?;
    let zero_width = zero_width_fwhm(source);
    let ratio = PI / width;
    let n = source.mean_photon_number();
    let row = format!(
        "{},{},{},{},{}",
        Cell(n).csv(),
        Cell(config.a).csv(),
        Cell(width).csv(),
        match zero_width {
            Ok(w) => Cell(w).csv(),
            Err(_) => "nan".into(),
        },
        Cell(ratio).csv()
    );
    let summary = json!({
        "fwhm": cell_value(width),
        "fwhm_zero_width": match zero_width { Ok(w) => cell_value(w), Err(_) => Value::Null },
        "rayleigh_ratio": cell_value(ratio),
    });
    Ok(Document {
        config,
        csv_header: "n_photons,a,fwhm,fwhm_zero_width,rayleigh_ratio",
        csv_rows: vec![row],
        records: summary.clone(),
        summary,
    })
}

/// Sensitivity curve with the closed-form comparison column.
pub fn run_sens(config: RunConfig) -> Result<Document, CliError> {
    let source = config.source()?;
    let scheme = config.scheme()?;
    let grid = config.grid()?;
    let closed = |phi: f64| match &scheme {
        Scheme::Binary(b) => binary_sensitivity_closed_form(b, source, phi),
        Scheme::Multi(_) => f64::NAN,
    };
    let mut csv_rows = Vec::with_capacity(grid.len());
    let mut records_json = Vec::with_capacity(grid.len());
    for &phi in grid.as_slice() {
        let sens = scheme.sensitivity(source, phi);
        let reference = closed(phi);
        csv_rows.push(format!(
            "{},{},{}",
            Cell(phi).csv(),
            Cell(sens).csv(),
            Cell(reference).csv()
        ));
        records_json.push(json!({
            "phi": cell_value(phi),
            "sensitivity": cell_value(sens),
            "sensitivity_closed_form": cell_value(reference),
        }));
    }
    let summary = sensitivity_summary(&scheme, source);
    Ok(Document {
        config,
        csv_header: "phi,sensitivity,sensitivity_closed_form",
        csv_rows,
        records: Value::Array(records_json),
        summary,
    })
}

/// Fringe census.
pub fn run_fringes(config: RunConfig) -> Result<Document, CliError> {
    let source = config.source()?;
    let scheme = config.scheme()?;
    let pattern = fringe_pattern(&scheme, source);
    let m = pattern.peaks.len();
    let mut csv_rows = Vec::with_capacity(m);
    let mut records_json = Vec::with_capacity(m);
    for j in 0..m {
        let deepest = pattern.troughs[(j + m - 1) % m]
            .value
            .min(pattern.troughs[j].value);
        csv_rows.push(format!(
            "{},{},{},{}",
            Cell(pattern.peaks[j].phi).csv(),
            Cell(pattern.peaks[j].value).csv(),
            Cell(deepest).csv(),
            Cell(pattern.fringe_visibility[j]).csv()
        ));
        records_json.push(json!({
            "peak_phi": cell_value(pattern.peaks[j].phi),
            "peak_response": cell_value(pattern.peaks[j].value),
            "deepest_trough": cell_value(deepest),
            "visibility": cell_value(pattern.fringe_visibility[j]),
        }));
    }
    let vis = visibility(&scheme, source).ok();
    let summary = json!({
        "fringe_count": m,
        "visibility_min": optional_value(vis.map(|v| v.min)),
        "visibility_mean": optional_value(vis.map(|v| v.mean)),
    });
    Ok(Document {
        config,
        csv_header: "peak_phi,peak_response,deepest_trough,visibility",
        csv_rows,
        records: Value::Array(records_json),
        summary,
    })
}

/// Window-spacing optimizer.
pub fn run_optimize(config: RunConfig) -> Result<Document, CliError> {
    let source = config.source()?;
    let optimum = optimize_spacing(source, config.a, config.visibility_threshold)?;
    let (b, n_bins) = match optimum.scheme {
        Scheme::Multi(m) => (Some(m.spacing()), m.n_bins()),
        Scheme::Binary(_) => (None, 1),
    };
    let row = format!(
        "{},{},{},{},{},{},{}",
        Cell(source.mean_photon_number()).csv(),
        Cell(config.a).csv(),
        Cell(config.visibility_threshold).csv(),
        match b {
            Some(v) => Cell(v).csv(),
            None => "nan".into(),
        },
        n_bins,
        optimum.fringe_count,
        Cell(optimum.visibility_mean).csv()
    );
    let summary = json!({
        "b": optional_value(b),
        "n_bins": n_bins,
        "fringes": optimum.fringe_count,
        "visibility_min": cell_value(optimum.visibility_min),
        "visibility_mean": cell_value(optimum.visibility_mean),
    });
    Ok(Document {
        config,
        csv_header: "n_photons,a,visibility_threshold,b,n_bins,fringes,visibility_mean",
        csv_rows: vec![row],
        records: summary.clone(),
        summary,
    })
}

/// Reference datasets at fixed, documented parameter sets.
pub fn run_reproduce(figure: FigureId, config: RunConfig) -> Result<Document, CliError> {
    match figure {
        FigureId::Fig2a => reproduce_scan_with_mc(config, 19.0, None),
        FigureId::Fig2b => reproduce_scan_with_mc(config, 132.0, None),
        FigureId::Fig2c => reproduce_width_sweep(config),
        FigureId::Fig2d => reproduce_sensitivity_sweep(config),
        FigureId::Fig3a => reproduce_scan_with_mc(config, 139.0, Some((3.17, 5))),
        FigureId::Fig3b => reproduce_multi_sensitivity(config),
        FigureId::Fig3c => reproduce_fringe_scaling(config),
    }
}

/// Shared path for the fringe-shape figures: analytic curve plus Monte
/// Carlo dots on the same grid.
fn reproduce_scan_with_mc(mut config: RunConfig, n: f64, multi: Option<(f64, u64)>) -> Result<Document, CliError> {
    config.n_photons = Some(n);
    if let Some((b, bins)) = multi {
        config.b = Some(b);
        config.n_bins = Some(bins);
    } else {
        config.b = None;
        config.n_bins = None;
    }
    let source = config.source()?;
    let scheme = config.scheme()?;
    let grid = config.grid()?;
    let analytic = analytic_scan(&scheme, source, &grid);
    let curve = simulate_curve(&config, &scheme, source)?;
    let mut csv_rows = Vec::with_capacity(grid.len());
    let mut records_json = Vec::with_capacity(grid.len());
    for (r, p) in analytic.iter().zip(curve.points.iter()) {
        csv_rows.push(format!(
            "{},{},{},{},{},{},{},{}",
            Cell(r.phi).csv(),
            Cell(r.response).csv(),
            Cell(r.variance).csv(),
            Cell(r.sensitivity).csv(),
            p.n_samples,
            p.hits,
            Cell(p.response_hat).csv(),
            Cell(p.std_err).csv()
        ));
        records_json.push(json!({
            "phi": cell_value(r.phi),
            "response": cell_value(r.response),
            "variance": cell_value(r.variance),
            "sensitivity": cell_value(r.sensitivity),
            "n_samples": p.n_samples,
            "hits": p.hits,
            "response_hat": cell_value(p.response_hat),
            "std_err": cell_value(p.std_err),
        }));
    }
    let summary = json!({
        "analytic": analytic_summary(&scheme, source),
        "empirical": empirical_summary(&curve, &scheme, source),
    });
    Ok(Document {
        config,
        csv_header: "phi,response,variance,sensitivity,n_samples,hits,response_hat,std_err",
        csv_rows,
        records: Value::Array(records_json),
        summary,
    })
}

/// Documented default photon-number grid for the width and sensitivity
/// sweeps: 25 logarithmically spaced values from 2 to 1024, plus the two
/// reference points 19 and 132.
fn default_n_grid() -> Vec<f64> {
    let mut ns: Vec<f64> = (0..25).map(|k| 2.0 * 512f64.powf(k as f64 / 24.0)).collect();
    ns.push(19.0);
    ns.push(132.0);
    ns.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ns.dedup();
    ns
}

fn reproduce_width_sweep(config: RunConfig) -> Result<Document, CliError> {
    let mut csv_rows = Vec::new();
    let mut records_json = Vec::new();
    for n in default_n_grid() {
        let source = CoherentSource::new(n)?;
        let scheme = Scheme::binary(config.a)?;
        let width = fwhm(&scheme, source)?;
        let theory = zero_width_fwhm(source);
        csv_rows.push(format!(
            "{},{},{},{}",
            Cell(n).csv(),
            Cell(width).csv(),
            match theory {
                Ok(w) => Cell(w).csv(),
                Err(_) => "nan".into(),
            },
            Cell(PI).csv()
        ));
        records_json.push(json!({
            "n_photons": cell_value(n),
            "fwhm": cell_value(width),
            "fwhm_theory": match theory { Ok(w) => cell_value(w), Err(_) => Value::Null },
            "rayleigh": cell_value(PI),
        }));
    }
    let summary = json!({ "n_grid": "25 log-spaced points over [2, 1024] plus 19 and 132" });
    Ok(Document {
        config,
        csv_header: "n_photons,fwhm,fwhm_theory,rayleigh",
        csv_rows,
        records: Value::Array(records_json),
        summary,
    })
}

fn reproduce_sensitivity_sweep(config: RunConfig) -> Result<Document, CliError> {
    let mut csv_rows = Vec::new();
    let mut records_json = Vec::new();
    for n in default_n_grid() {
        let source = CoherentSource::new(n)?;
        let scheme = Scheme::binary(config.a)?;
        let minimum = min_sensitivity(&scheme, source)?;
        let theory = 1.37 / n.sqrt();
        let snl = 1.0 / n.sqrt();
        csv_rows.push(format!(
            "{},{},{},{},{}",
            Cell(n).csv(),
            Cell(minimum.value).csv(),
            Cell(minimum.x).csv(),
            Cell(theory).csv(),
            Cell(snl).csv()
        ));
        records_json.push(json!({
            "n_photons": cell_value(n),
            "min_sensitivity": cell_value(minimum.value),
            "phi_at_min": cell_value(minimum.x),
            "theory": cell_value(theory),
            "snl": cell_value(snl),
        }));
    }
    let summary = json!({ "n_grid": "25 log-spaced points over [2, 1024] plus 19 and 132" });
    Ok(Document {
        config,
        csv_header: "n_photons,min_sensitivity,phi_at_min,theory,snl",
        csv_rows,
        records: Value::Array(records_json),
        summary,
    })
}

fn reproduce_multi_sensitivity(mut config: RunConfig) -> Result<Document, CliError> {
    config.n_photons = Some(139.0);
    config.b = Some(3.17);
    config.n_bins = Some(5);
    let source = config.source()?;
    let scheme = config.scheme()?;
    let grid = config.grid()?;
    let curve = simulate_curve(&config, &scheme, source)?;
    let estimates = empirical_sensitivity(&curve)?;
    let mut csv_rows = Vec::with_capacity(grid.len());
    let mut records_json = Vec::with_capacity(grid.len());
    for e in &estimates {
        let analytic = scheme.sensitivity(source, e.phi);
        csv_rows.push(format!(
            "{},{},{}",
            Cell(e.phi).csv(),
            Cell(analytic).csv(),
            match e.value {
                Some(v) => Cell(v).csv(),
                None => "unreliable".into(),
            }
        ));
        records_json.push(json!({
            "phi": cell_value(e.phi),
            "sensitivity": cell_value(analytic),
            "sensitivity_mc": match e.value { Some(v) => cell_value(v), None => Value::String("unreliable".into()) },
        }));
    }
    let reliable_min = estimates
        .iter()
        .filter_map(|e| e.value)
        .fold(f64::INFINITY, f64::min);
    let summary = json!({
        "analytic": sensitivity_summary(&scheme, source),
        "mc_min_sensitivity": cell_value(reliable_min),
        "unreliable_points": estimates.iter().filter(|e| e.value.is_none()).count(),
    });
    Ok(Document {
        config,
        csv_header: "phi,sensitivity,sensitivity_mc",
        csv_rows,
        records: Value::Array(records_json),
        summary,
    })
}

fn reproduce_fringe_scaling(config: RunConfig) -> Result<Document, CliError> {
    const N_VALUES: [f64; 5] = [50.0, 100.0, 200.0, 400.0, 800.0];
    const THRESHOLDS: [f64; 2] = [0.95, 0.90];
    let mut csv_rows = Vec::new();
    let mut records_json = Vec::new();
    let mut fits = serde_json::Map::new();
    for threshold in THRESHOLDS {
        let mut points = Vec::new();
        for n in N_VALUES {
            let source = CoherentSource::new(n)?;
            let optimum = optimize_spacing(source, config.a, threshold)?;
            let (b, n_bins) = match optimum.scheme {
                Scheme::Multi(m) => (Some(m.spacing()), m.n_bins()),
                Scheme::Binary(_) => (None, 1),
            };
            points.push((n, optimum.fringe_count as f64));
            csv_rows.push(format!(
                "{},{},{},{},{},{}",
                Cell(n).csv(),
                Cell(threshold).csv(),
                match b {
                    Some(v) => Cell(v).csv(),
                    None => "nan".into(),
                },
                n_bins,
                optimum.fringe_count,
                Cell(optimum.visibility_mean).csv()
            ));
            records_json.push(json!({
                "n_photons": cell_value(n),
                "visibility_threshold": cell_value(threshold),
                "b": optional_value(b),
                "n_bins": n_bins,
                "fringes": optimum.fringe_count,
                "visibility_mean": cell_value(optimum.visibility_mean),
            }));
        }
        let slope = loglog_slope(&points);
        let key = format!("exponent_at_{:.2}", threshold).replace('.', "_");
        fits.insert(key, cell_value(slope));
    }
    let summary = Value::Object(fits);
    Ok(Document {
        config,
        csv_header: "n_photons,visibility_threshold,b,n_bins,fringes,visibility_mean",
        csv_rows,
        records: Value::Array(records_json),
        summary,
    })
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let m = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let lx = x.ln();
        let ly = y.ln();
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (m * sxy - sx * sy) / (m * sxx - sx * sx)
}

/// Simulate the configured Monte Carlo curve, fanning phase points across
/// the rayon pool. Ordered collection keeps the result identical to the
/// serial engine for any worker count.
fn simulate_curve(config: &RunConfig, scheme: &Scheme, source: CoherentSource) -> Result<EmpiricalCurve, CliError> {
    let grid = config.grid()?;
    let mc = McConfig::with_efficiency(config.samples, config.seed, grid, config.efficiency)?;
    let points = (0..mc.grid().len())
        .into_par_iter()
        .map(|i| simulate_point(scheme, source, &mc, i))
        .collect();
    Ok(EmpiricalCurve {
        lambda0: scheme.lambda0(),
        points,
    })
}

fn analytic_summary<S: Binning>(scheme: &S, source: CoherentSource) -> Value {
    let width = fwhm(scheme, source).ok();
    let vis = visibility(scheme, source).ok();
    let sens = min_sensitivity(scheme, source).ok();
    json!({
        "fwhm": optional_value(width),
        "rayleigh_ratio": optional_value(width.map(|w| PI / w)),
        "visibility_min": optional_value(vis.map(|v| v.min)),
        "visibility_mean": optional_value(vis.map(|v| v.mean)),
        "fringe_count": count_fringes(scheme, source),
        "min_sensitivity": optional_value(sens.map(|s| s.value)),
        "phi_at_min": optional_value(sens.map(|s| s.x)),
    })
}

fn sensitivity_summary(scheme: &Scheme, source: CoherentSource) -> Value {
    let sens = min_sensitivity(scheme, source).ok();
    let n = source.mean_photon_number();
    let closed = zero_width_sensitivity_minimum(source).ok();
    json!({
        "min_sensitivity": optional_value(sens.map(|s| s.value)),
        "phi_at_min": optional_value(sens.map(|s| s.x)),
        "coefficient": optional_value(sens.map(|s| s.value * n.sqrt())),
        "snl": cell_value(1.0 / n.sqrt()),
        "zero_width_min": match closed {
            Some(c) => json!({ "delta_phi": cell_value(c.delta_phi), "phi": cell_value(c.phi) }),
            None => Value::Null,
        },
    })
}

/// Fringe figures of an empirical curve plus its pulls against theory.
///
/// Fringe counting treats the scan as periodic, which is only meaningful
/// when it covers a full period; shorter scans report null fringe fields.
/// A duplicated seam sample (grids like `[-pi, pi]` inclusive) is dropped
/// before the cyclic analysis.
fn empirical_summary<S: Binning>(curve: &EmpiricalCurve, scheme: &S, source: CoherentSource) -> Value {
    let stats = pull_statistics(curve, scheme, source);
    let mut samples: Vec<(f64, f64)> = curve.points.iter().map(|p| (p.phi, p.response_hat)).collect();
    let mut fringe_fields = (Value::Null, Value::Null, Value::Null);
    if samples.len() >= 3 {
        let span = samples[samples.len() - 1].0 - samples[0].0;
        let h = span / (samples.len() - 1) as f64;
        let full_period = (span - 2.0 * PI).abs() < 0.5 * h;
        if full_period {
            samples.pop();
        }
        if full_period || (span - 2.0 * PI).abs() < 1e-9 {
            let mut y_min = f64::INFINITY;
            let mut y_max = f64::NEG_INFINITY;
            for &(_, y) in &samples {
                y_min = y_min.min(y);
                y_max = y_max.max(y);
            }
            if y_max - y_min > 1e-12 {
                let analysis = peak_analysis(&samples, 0.01 * (y_max - y_min));
                let m = analysis.peaks.len();
                if m > 0 {
                    let mut vis_min = f64::INFINITY;
                    let mut vis_sum = 0.0;
                    for j in 0..m {
                        let left = analysis.troughs[(j + m - 1) % m].y;
                        let right = analysis.troughs[j].y;
                        let v = (analysis.peaks[j].y - left.min(right)) / analysis.peaks[j].y;
                        vis_min = vis_min.min(v);
                        vis_sum += v;
                    }
                    fringe_fields = (
                        json!(m),
                        cell_value(vis_min),
                        cell_value(vis_sum / m as f64),
                    );
                }
            }
        }
    }
    json!({
        "fringe_count": fringe_fields.0,
        "visibility_min": fringe_fields.1,
        "visibility_mean": fringe_fields.2,
        "fwhm": match empirical_fwhm(curve) { Ok(w) => cell_value(w), Err(_) => Value::Null },
        "pull_mean": cell_value(stats.mean),
        "pull_variance": cell_value(stats.variance),
        "within_four_stderr": cell_value(stats.within_four_stderr),
        "used_points": stats.used_points,
        "skipped_points": stats.skipped_points,
    })
}
