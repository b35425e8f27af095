//! Analytic response scans and their derived summary figures.

use alloc::vec::Vec;

use crate::quadmodel::{CoherentSource, PhaseGrid};

use super::{count_fringes, fwhm, min_sensitivity, visibility, Binning, SchemeError};

/// Analytic per-phase record: response, variance and sensitivity.
///
/// `sensitivity` is `f64::INFINITY` at stationary phases; serializers write
/// it as the string `inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponsePoint {
    pub phi: f64,
    pub response: f64,
    pub variance: f64,
    pub sensitivity: f64,
}

/// Evaluate response, variance and sensitivity over a phase grid.
pub fn analytic_scan<S: Binning>(scheme: &S, source: CoherentSource, grid: &PhaseGrid) -> Vec<ResponsePoint> {
    grid.as_slice()
        .iter()
        .map(|&phi| ResponsePoint {
            phi,
            response: scheme.response(source, phi),
            variance: scheme.variance(source, phi),
            sensitivity: scheme.sensitivity(source, phi),
        })
        .collect()
}

/// Scalar summary of one period of a response curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSummary {
    /// Full width at half maximum of the `phi = 0` fringe, radians.
    pub fwhm: f64,
    /// Smallest per-fringe visibility over one period (the conservative
    /// headline figure).
    pub visibility_min: f64,
    /// Mean per-fringe visibility over one period.
    pub visibility_mean: f64,
    /// Fringes per 2 pi period.
    pub fringe_count: usize,
    /// Smallest finite sensitivity over one period, radians.
    pub min_sensitivity: f64,
    /// Phase where the sensitivity minimum is attained.
    pub phi_at_min: f64,
}

/// Compute the summary figures of a scheme's response curve.
pub fn scan_summary<S: Binning>(scheme: &S, source: CoherentSource) -> Result<ScanSummary, SchemeError> {
    let width = fwhm(scheme, source)?;
    let vis = visibility(scheme, source)?;
    let fringes = count_fringes(scheme, source);
    let sens = min_sensitivity(scheme, source)?;
    Ok(ScanSummary {
        fwhm: width,
        visibility_min: vis.min,
        visibility_mean: vis.mean,
        fringe_count: fringes,
        min_sensitivity: sens.value,
        phi_at_min: sens.x,
    })
}
