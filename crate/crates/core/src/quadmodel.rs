//! Quadrature statistics of the interferometer output port.
//!
//! Conventions, fixed once for the whole crate: the phase quadrature `p` of
//! the measured port is Gaussian with
//!
//! * variance `1/4` (vacuum level, independent of the input), and
//! * mean `sqrt(N)/2 * sin(phi)` for input mean photon number `N` and
//!   interferometer phase `phi`.
//!
//! This is the unique Gaussian convention under which the zero-width limit
//! of the binary binned response equals `exp(-N sin^2(phi) / 2)`; the test
//! suite enforces it against the quadrature oracle. All statistics depend
//! on the input only through `N`, so the complex field amplitude is never
//! represented.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_2_SQRT_PI, SQRT_2};
use core::fmt;

use crate::math;

/// Variance of the quadrature distribution, equal for every input.
pub const VACUUM_VARIANCE: f64 = 0.25;

/// Standard deviation of the quadrature distribution.
pub const QUADRATURE_SIGMA: f64 = 0.5;

/// Peak value of the quadrature density, `sqrt(2/pi)`.
pub const DENSITY_PEAK: f64 = FRAC_2_SQRT_PI * core::f64::consts::FRAC_1_SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DomainError {
    /// Mean photon number must be finite and non-negative.
    InvalidPhotonNumber(f64),
    /// Interval endpoints are reversed or not comparable.
    InvalidInterval { lo: f64, hi: f64 },
    /// A phase grid must be non-empty, strictly increasing and span at most
    /// one period.
    InvalidPhaseGrid,
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidPhotonNumber(n) => write!(f, "mean photon number must be finite and >= 0, got {n}"),
            Self::InvalidInterval { lo, hi } => write!(f, "interval requires lo <= hi, got [{lo}, {hi}]"),
            Self::InvalidPhaseGrid => write!(f, "phase grid must be non-empty, strictly increasing and span at most 2 pi"),
        }
    }
}

impl core::error::Error for DomainError {}

/// Coherent input state, characterised entirely by its mean photon number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentSource {
    mean_photon_number: f64,
}

impl CoherentSource {
    pub fn new(mean_photon_number: f64) -> Result<Self, DomainError> {
        if !mean_photon_number.is_finite() || mean_photon_number < 0.0 {
            return Err(DomainError::InvalidPhotonNumber(mean_photon_number));
        }
        Ok(Self { mean_photon_number })
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.mean_photon_number
    }

    /// Source with the photon flux scaled by a detection efficiency in
    /// `(0, 1]`; loss on a coherent state only rescales its amplitude.
    pub fn attenuated(&self, efficiency: f64) -> Self {
        Self {
            mean_photon_number: self.mean_photon_number * efficiency,
        }
    }
}

/// Mean of the output quadrature, `sqrt(N)/2 * sin(phi)`.
///
/// Odd and 2 pi periodic in `phi`.
pub fn output_mean_p(source: CoherentSource, phi: f64) -> f64 {
    0.5 * math::sqrt(source.mean_photon_number()) * math::sin(phi)
}

/// Probability density of observing quadrature value `p`: a Gaussian with
/// mean [`output_mean_p`] and variance `1/4`.
pub fn p_density(p: f64, source: CoherentSource, phi: f64) -> f64 {
    let d = p - output_mean_p(source, phi);
    DENSITY_PEAK * math::exp(-2.0 * d * d)
}

/// Probability mass of the centred unit-variance-convention Gaussian on
/// `[lo, hi]` for mean `mu`; tail-stable.
///
/// The cancellation-prone flank (both endpoints on the same side of the
/// mean) is routed through `erfc` so masses as small as 1e-300 keep full
/// relative precision.
pub(crate) fn interval_mass(lo: f64, hi: f64, mu: f64) -> f64 {
    let zl = SQRT_2 * (lo - mu);
    let zh = SQRT_2 * (hi - mu);
    let mass = if zl >= 0.0 {
        0.5 * (math::erfc(zl) - math::erfc(zh))
    } else if zh <= 0.0 {
        0.5 * (math::erfc(-zh) - math::erfc(-zl))
    } else {
        0.5 * (math::erf(zh) - math::erf(zl))
    };
    mass.max(0.0)
}

/// Probability that the quadrature outcome falls in `[lo, hi]`, in closed
/// form: `(erf(sqrt(2)(hi - mu)) - erf(sqrt(2)(lo - mu))) / 2` with `mu`
/// the output mean. Additive over adjacent intervals.
pub fn bin_probability(lo: f64, hi: f64, source: CoherentSource, phi: f64) -> Result<f64, DomainError> {
    if lo.is_nan() || hi.is_nan() || lo > hi {
        return Err(DomainError::InvalidInterval { lo, hi });
    }
    Ok(interval_mass(lo, hi, output_mean_p(source, phi)))
}

/// Mean photon count of a plain intensity measurement, `N cos^2(phi / 2)`:
/// the classical baseline fringe with period 2 pi and FWHM pi.
pub fn intensity_response(source: CoherentSource, phi: f64) -> f64 {
    let c = math::cos(0.5 * phi);
    source.mean_photon_number() * c * c
}

/// Ordered set of phase points, in radians.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGrid {
    points: Vec<f64>,
}

impl PhaseGrid {
    /// Wraps an explicit list of phases. The list must be non-empty,
    /// strictly increasing and span at most one period.
    pub fn from_points(points: Vec<f64>) -> Result<Self, DomainError> {
        if points.is_empty() || points.iter().any(|p| !p.is_finite()) {
            return Err(DomainError::InvalidPhaseGrid);
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(DomainError::InvalidPhaseGrid);
        }
        let span = points[points.len() - 1] - points[0];
        if span > 2.0 * core::f64::consts::PI * (1.0 + 1e-12) {
            return Err(DomainError::InvalidPhaseGrid);
        }
        Ok(Self { points })
    }

    /// Uniform grid of `steps >= 2` points including both endpoints.
    pub fn linspace(start: f64, end: f64, steps: usize) -> Result<Self, DomainError> {
        if steps < 2 || !start.is_finite() || !end.is_finite() || start >= end {
            return Err(DomainError::InvalidPhaseGrid);
        }
        let h = (end - start) / (steps - 1) as f64;
        let points = (0..steps)
            .map(|i| if i == steps - 1 { end } else { start + h * i as f64 })
            .collect();
        Self::from_points(points)
    }

    /// Uniform grid of `steps >= 2` points over `[start, start + 2 pi)`,
    /// excluding the endpoint that wraps back onto the first point.
    pub fn periodic(start: f64, steps: usize) -> Result<Self, DomainError> {
        if steps < 2 || !start.is_finite() {
            return Err(DomainError::InvalidPhaseGrid);
        }
        let h = 2.0 * core::f64::consts::PI / steps as f64;
        let points = (0..steps).map(|i| start + h * i as f64).collect();
        Self::from_points(points)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Spacing of the grid when it is uniform (within 1e-9 relative), else
    /// `None`.
    pub fn uniform_spacing(&self) -> Option<f64> {
        if self.points.len() < 2 {
            return None;
        }
        let h = (self.points[self.points.len() - 1] - self.points[0]) / (self.points.len() - 1) as f64;
        let tol = 1e-9 * f64::max(1.0, math::abs(h));
        for w in self.points.windows(2) {
            if math::abs(w[1] - w[0] - h) > tol {
                return None;
            }
        }
        Some(h)
    }
}
