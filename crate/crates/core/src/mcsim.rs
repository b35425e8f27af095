//! Seeded Monte Carlo engine: draws homodyne quadrature outcomes, applies a
//! binning scheme and produces empirical response curves with uncertainty.
//! This is the artifact's statistical stand-in for the experiment.
//!
//! # Determinism contract
//!
//! Every phase point draws from its own ChaCha8 stream, keyed by the master
//! seed with the point index as the stream id, so the curve is bit-identical
//! no matter how the points are scheduled or distributed across workers.
//! One quadrature sample consumes exactly two 64-bit words `w1, w2` of its
//! stream and maps them through the Box-Muller cosine branch:
//!
//! ```text
//! u = (w1 >> 11 + 1) * 2^-53          in (0, 1]
//! v = (w2 >> 11)     * 2^-53          in [0, 1)
//! p = mean + sqrt(-2 ln u) * cos(2 pi v) / 2
//! ```
//!
//! The sampler identity is part of the golden-file contract of the CLI
//! crate: changing it invalidates recorded datasets.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::binning::Binning;
use crate::math;
use crate::quadmodel::{output_mean_p, CoherentSource, PhaseGrid, QUADRATURE_SIGMA};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum McError {
    /// At least one sample per phase point is required.
    InvalidSampleCount(u64),
    /// Detection efficiency must lie in (0, 1].
    InvalidEfficiency(f64),
    /// Finite-difference sensitivity needs at least three points.
    TooFewPoints(usize),
    /// Finite-difference sensitivity needs a uniform phase grid.
    NonUniformGrid,
}

impl fmt::Display for McError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidSampleCount(n) => write!(f, "samples per point must be >= 1, got {n}"),
            Self::InvalidEfficiency(eta) => write!(f, "efficiency must lie in (0, 1], got {eta}"),
            Self::TooFewPoints(n) => write!(f, "need at least 3 grid points, got {n}"),
            Self::NonUniformGrid => write!(f, "finite differences require a uniform phase grid"),
        }
    }
}

impl core::error::Error for McError {}

/// Monte Carlo run configuration.
///
/// The grid is validated at construction (non-empty, strictly increasing,
/// at most one period), so a configured run can always execute.
#[derive(Debug, Clone, PartialEq)]
pub struct McConfig {
    samples_per_point: u64,
    master_seed: u64,
    grid: PhaseGrid,
    efficiency: f64,
}

impl McConfig {
    pub fn new(samples_per_point: u64, master_seed: u64, grid: PhaseGrid) -> Result<Self, McError> {
        Self::with_efficiency(samples_per_point, master_seed, grid, 1.0)
    }

    /// Detection efficiency `eta` in (0, 1] rescales the photon flux to
    /// `eta * N`; loss on a coherent state only shrinks its amplitude.
    pub fn with_efficiency(
        samples_per_point: u64,
        master_seed: u64,
        grid: PhaseGrid,
        efficiency: f64,
    ) -> Result<Self, McError> {
        if samples_per_point == 0 {
            return Err(McError::InvalidSampleCount(samples_per_point));
        }
        if !(efficiency > 0.0 && efficiency <= 1.0) {
            return Err(McError::InvalidEfficiency(efficiency));
        }
        Ok(Self {
            samples_per_point,
            master_seed,
            grid,
            efficiency,
        })
    }

    pub fn samples_per_point(&self) -> u64 {
        self.samples_per_point
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn grid(&self) -> &PhaseGrid {
        &self.grid
    }

    pub fn efficiency(&self) -> f64 {
        self.efficiency
    }
}

/// The random stream feeding one phase point: a pure function of the
/// master seed and the point index.
pub fn point_rng(master_seed: u64, point_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(point_index);
    rng
}

#[inline]
fn unit_open_closed(bits: u64) -> f64 {
    ((bits >> 11) as f64 + 1.0) * (1.0 / 9_007_199_254_740_992.0)
}

#[inline]
fn unit_half_open(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
}

#[inline]
fn standard_normal<R: RngCore>(rng: &mut R) -> f64 {
    let u = unit_open_closed(rng.next_u64());
    let v = unit_half_open(rng.next_u64());
    math::sqrt(-2.0 * math::ln(u)) * math::cos(2.0 * PI * v)
}

/// Draw one homodyne quadrature outcome for the given source and phase.
pub fn sample_quadrature<R: RngCore>(source: CoherentSource, phi: f64, rng: &mut R) -> f64 {
    output_mean_p(source, phi) + QUADRATURE_SIGMA * standard_normal(rng)
}

/// Empirical record for one phase point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalPoint {
    pub phi: f64,
    pub n_samples: u64,
    pub hits: u64,
    /// `lambda0 * hits / n_samples`.
    pub response_hat: f64,
    /// `lambda0 * sqrt(q_hat (1 - q_hat) / n_samples)`.
    pub std_err: f64,
}

/// Empirical response curve plus the eigenvalue that scaled it.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCurve {
    pub lambda0: f64,
    pub points: Vec<EmpiricalPoint>,
}

/// Simulate a single phase point of the scan. Exposed so parallel drivers
/// can fan points out across workers while keeping the output identical to
/// the serial scan.
pub fn simulate_point<S: Binning>(
    scheme: &S,
    source: CoherentSource,
    config: &McConfig,
    point_index: usize,
) -> EmpiricalPoint {
    let phi = config.grid.as_slice()[point_index];
    let detected = source.attenuated(config.efficiency);
    let mut rng = point_rng(config.master_seed, point_index as u64);
    let n = config.samples_per_point;
    let mut hits = 0u64;
    for _ in 0..n {
        if scheme.accepts(sample_quadrature(detected, phi, &mut rng)) {
            hits += 1;
        }
    }
    let lambda0 = scheme.lambda0();
    let q_hat = hits as f64 / n as f64;
    EmpiricalPoint {
        phi,
        n_samples: n,
        hits,
        response_hat: lambda0 * q_hat,
        std_err: lambda0 * math::sqrt(q_hat * (1.0 - q_hat) / n as f64),
    }
}

/// Run the full scan serially. Identical output to any point-parallel
/// driver built on [`simulate_point`].
pub fn simulate_scan<S: Binning>(scheme: &S, source: CoherentSource, config: &McConfig) -> EmpiricalCurve {
    EmpiricalCurve {
        lambda0: scheme.lambda0(),
        points: (0..config.grid.len())
            .map(|i| simulate_point(scheme, source, config, i))
            .collect(),
    }
}

/// Finite-difference sensitivity estimate for one phase point; `None`
/// marks points whose slope drowned in the counting noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensitivityEstimate {
    pub phi: f64,
    pub value: Option<f64>,
}

/// Empirical sensitivity of a response curve: single-shot standard
/// deviation over the absolute slope of the curve.
///
/// Slopes come from central differences (one-sided at the ends) on a
/// uniform grid. Points whose |slope| is at most three times its own
/// propagated standard error are marked unreliable (`value: None`) rather
/// than reported as numbers — near fringe extremes the estimate would
/// otherwise explode into noise.
pub fn empirical_sensitivity(curve: &EmpiricalCurve) -> Result<Vec<SensitivityEstimate>, McError> {
    let pts = &curve.points;
    let m = pts.len();
    if m < 3 {
        return Err(McError::TooFewPoints(m));
    }
    let h = (pts[m - 1].phi - pts[0].phi) / (m - 1) as f64;
    let tol = 1e-9 * f64::max(1.0, math::abs(h));
    for w in pts.windows(2) {
        if math::abs(w[1].phi - w[0].phi - h) > tol {
            return Err(McError::NonUniformGrid);
        }
    }
    let lambda0 = curve.lambda0;
    let single_shot_sd = |p: &EmpiricalPoint| {
        let q = (p.response_hat / lambda0).clamp(0.0, 1.0);
        lambda0 * math::sqrt(q * (1.0 - q))
    };
    let estimate = |slope: f64, noise: f64, sd: f64, phi: f64| {
        if math::abs(slope) <= 3.0 * noise {
            SensitivityEstimate { phi, value: None }
        } else {
            SensitivityEstimate {
                phi,
                value: Some(sd / math::abs(slope)),
            }
        }
    };
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let (slope, noise) = if i == 0 {
            (
                (pts[1].response_hat - pts[0].response_hat) / h,
                math::sqrt(pts[1].std_err * pts[1].std_err + pts[0].std_err * pts[0].std_err) / h,
            )
        } else if i == m - 1 {
            (
                (pts[m - 1].response_hat - pts[m - 2].response_hat) / h,
                math::sqrt(pts[m - 1].std_err * pts[m - 1].std_err + pts[m - 2].std_err * pts[m - 2].std_err) / h,
            )
        } else {
            (
                (pts[i + 1].response_hat - pts[i - 1].response_hat) / (2.0 * h),
                math::sqrt(pts[i + 1].std_err * pts[i + 1].std_err + pts[i - 1].std_err * pts[i - 1].std_err)
                    / (2.0 * h),
            )
        };
        out.push(estimate(slope, noise, single_shot_sd(&pts[i]), pts[i].phi));
    }
    Ok(out)
}

/// Full width at half maximum of the empirical fringe nearest `phi = 0`.
///
/// Anchors on the tallest sample within a quarter period of zero so that
/// the equally tall fringe at `phi = +-pi` cannot capture the measurement
/// when noise promotes it, then interpolates the half-level crossings on
/// both flanks. The half level uses the observed minimum over the whole
/// scan.
pub fn empirical_fwhm(curve: &EmpiricalCurve) -> Result<f64, crate::numerics::NumericsError> {
    let samples: Vec<(f64, f64)> = curve.points.iter().map(|p| (p.phi, p.response_hat)).collect();
    let mut top: Option<usize> = None;
    for (i, &(phi, y)) in samples.iter().enumerate() {
        if math::abs(phi) <= 0.5 * PI && top.is_none_or(|t| y > samples[t].1) {
            top = Some(i);
        }
    }
    let top = top.ok_or(crate::numerics::NumericsError::DegenerateCurve)?;
    crate::numerics::half_max_width_at(&samples, top)
}

/// Pull statistics of an empirical curve against its analytic counterpart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PullStats {
    /// Mean of `(response_hat - analytic) / std_err` over usable points.
    pub mean: f64,
    /// Sample variance of the pulls.
    pub variance: f64,
    /// Fraction of usable points with `|response_hat - analytic| <= 4 std_err`.
    pub within_four_stderr: f64,
    /// Points with `std_err > 0` that entered the statistics.
    pub used_points: usize,
    /// Points skipped because every sample agreed (`std_err = 0`).
    pub skipped_points: usize,
}

/// Compare an empirical curve with the analytic response of the scheme
/// that produced it.
pub fn pull_statistics<S: Binning>(curve: &EmpiricalCurve, scheme: &S, source: CoherentSource) -> PullStats {
    let mut pulls: Vec<f64> = Vec::with_capacity(curve.points.len());
    let mut within = 0usize;
    let mut skipped = 0usize;
    for p in &curve.points {
        let analytic = scheme.response(source, p.phi);
        if p.std_err > 0.0 {
            let pull = (p.response_hat - analytic) / p.std_err;
            if math::abs(p.response_hat - analytic) <= 4.0 * p.std_err {
                within += 1;
            }
            pulls.push(pull);
        } else {
            skipped += 1;
        }
    }
    let m = pulls.len();
    if m == 0 {
        return PullStats {
            mean: 0.0,
            variance: 0.0,
            within_four_stderr: 0.0,
            used_points: 0,
            skipped_points: skipped,
        };
    }
    let mean = pulls.iter().sum::<f64>() / m as f64;
    let variance = if m > 1 {
        pulls.iter().map(|p| (p - mean) * (p - mean)).sum::<f64>() / (m - 1) as f64
    } else {
        0.0
    };
    PullStats {
        mean,
        variance,
        within_four_stderr: within as f64 / m as f64,
        used_points: m,
        skipped_points: skipped,
    }
}
