//! Quadrature binning schemes and their analytic fringe properties.
//!
//! A scheme is a set of equal-width acceptance windows on the quadrature
//! axis. Outcomes inside any window are assigned the eigenvalue
//! `lambda0 = 1 / erf(sqrt(2) a)` (which normalizes the fringe peak to 1),
//! everything else the eigenvalue 0. The mean of that two-valued observable
//! as a function of the interferometer phase is the scheme's response — the
//! fringe pattern whose width, visibility, count and phase sensitivity this
//! module evaluates in closed form.
//!
//! Windows must be disjoint (`spacing > 2 a` for [`MultiScheme`]); the
//! variance then reduces to the Bernoulli form
//! `response * (lambda0 - response)`.

use core::f64::consts::SQRT_2;
use core::fmt;

use crate::math;
use crate::numerics::NumericsError;
use crate::quadmodel::{self, CoherentSource};

mod closed_form;
mod fringes;
mod optimize;
mod scan;

pub use closed_form::{
    binary_sensitivity_closed_form, zero_width_fwhm, zero_width_response, zero_width_sensitivity_minimum,
    SensitivityMinimum, SUPER_RESOLUTION_THRESHOLD,
};
pub use fringes::{count_fringes, fringe_pattern, fwhm, min_sensitivity, visibility, FringePattern, PhasePoint, Visibility};
pub use optimize::{optimize_spacing, SpacingOptimum};
pub use scan::{analytic_scan, scan_summary, ResponsePoint, ScanSummary};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchemeError {
    /// Window half-width must be finite and positive.
    InvalidHalfWidth(f64),
    /// Window spacing must be finite and exceed the window width, so that
    /// windows stay disjoint.
    InvalidSpacing { spacing: f64, half_width: f64 },
    /// The number of windows must be an odd positive integer.
    InvalidBinCount(usize),
    /// The operation needs a strictly positive mean photon number.
    InvalidPhotonNumber(f64),
    /// Closed-form resolution only exists above the super-resolution
    /// threshold 2 ln 2.
    BelowThreshold(f64),
    /// The response curve is flat to machine precision.
    FlatResponse,
    /// No fringe with the required prominence was found.
    NoFringes,
    /// A closed-form expression left its real domain by more than the
    /// rounding allowance.
    OutOfDomain(f64),
    /// Visibility constraints must lie strictly between 0 and 1.
    InvalidThreshold(f64),
    /// A numeric kernel failed underneath an analytic operation.
    Numerics(NumericsError),
}

impl fmt::Display for SchemeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidHalfWidth(a) => write!(f, "window half-width must be finite and > 0, got {a}"),
            Self::InvalidSpacing { spacing, half_width } => {
                write!(f, "window spacing must exceed the window width: spacing {spacing}, half-width {half_width}")
            }
            Self::InvalidBinCount(n) => write!(f, "number of windows must be odd and >= 1, got {n}"),
            Self::InvalidPhotonNumber(n) => write!(f, "operation requires mean photon number > 0, got {n}"),
            Self::BelowThreshold(n) => {
                write!(f, "closed-form width needs N >= 2 ln 2 ~= 1.3863, got {n}")
            }
            Self::FlatResponse => write!(f, "response curve is flat; width undefined"),
            Self::NoFringes => write!(f, "no fringe detected"),
            Self::OutOfDomain(x) => write!(f, "closed form left its domain: {x}"),
            Self::InvalidThreshold(t) => write!(f, "visibility threshold must lie in (0, 1), got {t}"),
            Self::Numerics(e) => write!(f, "numeric kernel failed: {e}"),
        }
    }
}

impl core::error::Error for SchemeError {}

impl From<NumericsError> for SchemeError {
    fn from(e: NumericsError) -> Self {
        Self::Numerics(e)
    }
}

/// Iterator over the window centres of a scheme, in increasing order.
#[derive(Debug, Clone)]
pub struct Centers {
    spacing: f64,
    next: i64,
    last: i64,
}

impl Iterator for Centers {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        if self.next > self.last {
            return None;
        }
        let k = self.next;
        self.next += 1;
        Some(k as f64 * self.spacing)
    }
}

/// Common interface of the acceptance-window schemes.
///
/// Every statistic is a pure function of the window layout, the source and
/// the phase; implementations are safe to share across threads.
pub trait Binning {
    /// Half-width `a` of each acceptance window.
    fn half_width(&self) -> f64;

    /// Window centres, in increasing order.
    fn centers(&self) -> Centers;

    /// Eigenvalue of the accept outcome, `1 / erf(sqrt(2) a)`. Chosen so
    /// that a window centred on the quadrature mean gives response 1.
    fn lambda0(&self) -> f64 {
        1.0 / math::erf(SQRT_2 * self.half_width())
    }

    /// Whether a quadrature outcome falls inside any acceptance window.
    fn accepts(&self, p: f64) -> bool {
        let a = self.half_width();
        self.centers().any(|c| math::abs(p - c) <= a)
    }

    /// Raw probability that an outcome is accepted: the Gaussian mass
    /// covered by the windows.
    fn acceptance_probability(&self, source: CoherentSource, phi: f64) -> f64 {
        let mu = quadmodel::output_mean_p(source, phi);
        let a = self.half_width();
        let q: f64 = self.centers().map(|c| quadmodel::interval_mass(c - a, c + a, mu)).sum();
        q.clamp(0.0, 1.0)
    }

    /// Phase derivative of [`Self::acceptance_probability`], in closed form:
    /// the quadrature density evaluated at the window edges, times the
    /// drift rate of the mean.
    fn acceptance_derivative(&self, source: CoherentSource, phi: f64) -> f64 {
        let mu = quadmodel::output_mean_p(source, phi);
        let mu_rate = 0.5 * math::sqrt(source.mean_photon_number()) * math::cos(phi);
        let a = self.half_width();
        let edge_term = |c: f64| {
            let lo = c - a - mu;
            let hi = c + a - mu;
            quadmodel::DENSITY_PEAK * (math::exp(-2.0 * lo * lo) - math::exp(-2.0 * hi * hi))
        };
        // Sum mirrored windows pairwise so their contributions cancel
        // exactly (not merely to rounding) at the mu = 0 stationary points.
        let layout = self.centers();
        let mut edge_sum = edge_term(0.0);
        for k in 1..=layout.last {
            let c = k as f64 * layout.spacing;
            edge_sum += edge_term(c) + edge_term(-c);
        }
        mu_rate * edge_sum
    }

    /// Mean of the binned observable, `lambda0 * acceptance_probability`.
    ///
    /// Even and 2 pi periodic in `phi`, with its global maximum at
    /// `phi = 0` where the central window sits on the quadrature mean.
    fn response(&self, source: CoherentSource, phi: f64) -> f64 {
        self.lambda0() * self.acceptance_probability(source, phi)
    }

    /// Phase derivative of the response, in closed form.
    fn response_derivative(&self, source: CoherentSource, phi: f64) -> f64 {
        self.lambda0() * self.acceptance_derivative(source, phi)
    }

    /// Variance of the binned observable, `response * (lambda0 - response)`.
    ///
    /// Valid because the windows are disjoint, which makes the observable a
    /// scaled Bernoulli variable.
    fn variance(&self, source: CoherentSource, phi: f64) -> f64 {
        let r = self.response(source, phi);
        (r * (self.lambda0() - r)).max(0.0)
    }

    /// Error-propagation phase sensitivity,
    /// `sqrt(variance) / |d response / d phi|`.
    ///
    /// Computed in the eigenvalue-invariant form
    /// `sqrt(q (1 - q)) / |dq/dphi|`, which is identical for any positive
    /// rescaling of `lambda0`. At stationary phases (fringe peaks and
    /// troughs) the definition genuinely diverges; those points return
    /// `f64::INFINITY` from an explicit branch rather than a division.
    fn sensitivity(&self, source: CoherentSource, phi: f64) -> f64 {
        let slope = self.acceptance_derivative(source, phi);
        if slope == 0.0 {
            return f64::INFINITY;
        }
        let q = self.acceptance_probability(source, phi);
        math::sqrt((q * (1.0 - q)).max(0.0)) / math::abs(slope)
    }
}

/// Two-outcome scheme: a single acceptance window `[-a, a]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryScheme {
    half_width: f64,
}

impl BinaryScheme {
    /// The zero-width limit `a -> 0` is exposed by the dedicated
    /// `zero_width_*` operations, not by `a = 0`.
    pub fn new(half_width: f64) -> Result<Self, SchemeError> {
        if !half_width.is_finite() || half_width <= 0.0 {
            return Err(SchemeError::InvalidHalfWidth(half_width));
        }
        Ok(Self { half_width })
    }
}

impl Binning for BinaryScheme {
    fn half_width(&self) -> f64 {
        self.half_width
    }

    fn centers(&self) -> Centers {
        Centers {
            spacing: 0.0,
            next: 0,
            last: 0,
        }
    }

    fn accepts(&self, p: f64) -> bool {
        math::abs(p) <= self.half_width
    }
}

/// Comb of `n_bins` disjoint acceptance windows centred at `k * spacing`
/// for `k = -(n-1)/2 ..= (n-1)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiScheme {
    half_width: f64,
    spacing: f64,
    n_bins: usize,
}

impl MultiScheme {
    pub fn new(half_width: f64, spacing: f64, n_bins: usize) -> Result<Self, SchemeError> {
        if !half_width.is_finite() || half_width <= 0.0 {
            return Err(SchemeError::InvalidHalfWidth(half_width));
        }
        if n_bins == 0 || n_bins.is_multiple_of(2) {
            return Err(SchemeError::InvalidBinCount(n_bins));
        }
        if !spacing.is_finite() || spacing <= 2.0 * half_width {
            return Err(SchemeError::InvalidSpacing { spacing, half_width });
        }
        Ok(Self {
            half_width,
            spacing,
            n_bins,
        })
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn n_bins(&self) -> usize {
        self.n_bins
    }
}

impl Binning for MultiScheme {
    fn half_width(&self) -> f64 {
        self.half_width
    }

    fn centers(&self) -> Centers {
        let k = (self.n_bins as i64 - 1) / 2;
        Centers {
            spacing: self.spacing,
            next: -k,
            last: k,
        }
    }

    fn accepts(&self, p: f64) -> bool {
        // Nearest window centre; windows are disjoint so only it can match.
        let k_max = (self.n_bins as i64 - 1) / 2;
        let k = math::round(p / self.spacing) as i64;
        let k = k.clamp(-k_max, k_max);
        math::abs(p - k as f64 * self.spacing) <= self.half_width
    }
}

/// Either scheme, for callers configured at run time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scheme {
    Binary(BinaryScheme),
    Multi(MultiScheme),
}

impl Scheme {
    pub fn binary(half_width: f64) -> Result<Self, SchemeError> {
        BinaryScheme::new(half_width).map(Self::Binary)
    }

    pub fn multi(half_width: f64, spacing: f64, n_bins: usize) -> Result<Self, SchemeError> {
        MultiScheme::new(half_width, spacing, n_bins).map(Self::Multi)
    }
}

impl Binning for Scheme {
    fn half_width(&self) -> f64 {
        match self {
            Self::Binary(s) => s.half_width(),
            Self::Multi(s) => s.half_width(),
        }
    }

    fn centers(&self) -> Centers {
        match self {
            Self::Binary(s) => s.centers(),
            Self::Multi(s) => s.centers(),
        }
    }

    fn accepts(&self, p: f64) -> bool {
        match self {
            Self::Binary(s) => s.accepts(p),
            Self::Multi(s) => s.accepts(p),
        }
    }
}
