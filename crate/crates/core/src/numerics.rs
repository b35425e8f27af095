//! Shared numeric kernels: error function, adaptive quadrature, bisection
//! root finding, 1-D minimization and local-maximum detection.
//!
//! Everything here is deterministic — identical inputs give identical
//! outputs regardless of call order or threading. The quadrature routine is
//! the independent cross-check for the closed forms in [`crate::binning`]
//! and never runs on a hot path.

use alloc::vec::Vec;
use core::fmt;

use crate::math;

/// Convergence budget for the iterative routines.
///
/// Procedures report non-convergence explicitly instead of silently
/// returning the last iterate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceSpec {
    /// Absolute tolerance on the result (interval width, integral error).
    pub abs_tol: f64,
    /// Relative tolerance; a routine converges when it meets either bound.
    pub rel_tol: f64,
    /// Iteration/subdivision cap.
    pub max_iterations: u32,
}

impl ToleranceSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_iterations: u32) -> Result<Self, NumericsError> {
        if abs_tol <= 0.0 || !abs_tol.is_finite() || rel_tol <= 0.0 || !rel_tol.is_finite() || max_iterations == 0 {
            return Err(NumericsError::InvalidTolerance);
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_iterations,
        })
    }
}

impl Default for ToleranceSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_iterations: 128,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NumericsError {
    InvalidTolerance,
    /// `lo`/`hi` do not form a valid interval.
    InvalidInterval { lo: f64, hi: f64 },
    /// Root bracket endpoints do not straddle a sign change.
    InvalidBracket { f_lo: f64, f_hi: f64 },
    /// Iteration budget exhausted; carries the best estimate and a bound on
    /// its error.
    NonConvergence { estimate: f64, error_bound: f64 },
    /// The sampled curve has no usable structure (flat, or the half level
    /// is never crossed inside the sampled range).
    DegenerateCurve,
}

impl fmt::Display for NumericsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidTolerance => write!(f, "tolerances must be positive and allow at least one iteration"),
            Self::InvalidInterval { lo, hi } => write!(f, "invalid interval [{lo}, {hi}]"),
            Self::InvalidBracket { f_lo, f_hi } => {
                write!(f, "bracket endpoints do not straddle a root: f(lo)={f_lo}, f(hi)={f_hi}")
            }
            Self::NonConvergence { estimate, error_bound } => {
                write!(f, "did not converge: estimate {estimate} with error bound {error_bound}")
            }
            Self::DegenerateCurve => write!(f, "curve is flat or does not bracket the requested level"),
        }
    }
}

impl core::error::Error for NumericsError {}

/// Error function, `2/sqrt(pi) * Integral_0^x exp(-t^2) dt`.
///
/// Relative error is below 1e-14 for `|x| <= 6`; beyond that the value
/// saturates to `+-1` within 1e-16. Odd in `x`.
#[inline]
pub fn erf(x: f64) -> f64 {
    math::erf(x)
}

/// Complementary error function `1 - erf(x)`, accurate in the far tail
/// where forming the difference explicitly would lose everything to
/// cancellation.
#[inline]
pub fn erfc(x: f64) -> f64 {
    math::erfc(x)
}

fn simpson(lo: f64, hi: f64, f_lo: f64, f_mid: f64, f_hi: f64) -> f64 {
    (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_mid: f64,
    f_hi: f64,
    whole: f64,
    budget: f64,
    depth: u32,
    unresolved: &mut f64,
) -> f64 {
    let mid = 0.5 * (lo + hi);
    let lm = 0.5 * (lo + mid);
    let rm = 0.5 * (mid + hi);
    let f_lm = f(lm);
    let f_rm = f(rm);
    let left = simpson(lo, mid, f_lo, f_lm, f_mid);
    let right = simpson(mid, hi, f_mid, f_rm, f_hi);
    let delta = left + right - whole;
    if math::abs(delta) <= 15.0 * budget {
        return left + right + delta / 15.0;
    }
    if depth == 0 {
        *unresolved += math::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    adapt(f, lo, mid, f_lo, f_lm, f_mid, left, budget / 2.0, depth - 1, unresolved)
        + adapt(f, mid, hi, f_mid, f_rm, f_hi, right, budget / 2.0, depth - 1, unresolved)
}

/// Adaptive Simpson quadrature of `f` over `[lo, hi]`.
///
/// Subdivides until the local error estimate meets `tol.abs_tol`. If the
/// subdivision depth cap (`tol.max_iterations`) is reached first, the
/// routine reports [`NumericsError::NonConvergence`] carrying the best
/// estimate and the accumulated error bound rather than returning it as if
/// converged.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: &ToleranceSpec) -> Result<f64, NumericsError> {
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(NumericsError::InvalidInterval { lo, hi });
    }
    if lo == hi {
        return Ok(0.0);
    }
    let f_lo = f(lo);
    let f_hi = f(hi);
    let f_mid = f(0.5 * (lo + hi));
    let whole = simpson(lo, hi, f_lo, f_mid, f_hi);
    let mut unresolved = 0.0;
    let value = adapt(
        &f,
        lo,
        hi,
        f_lo,
        f_mid,
        f_hi,
        whole,
        tol.abs_tol,
        tol.max_iterations,
        &mut unresolved,
    );
    if unresolved <= f64::max(tol.abs_tol, tol.rel_tol * math::abs(value)) {
        Ok(value)
    } else {
        Err(NumericsError::NonConvergence {
            estimate: value,
            error_bound: unresolved,
        })
    }
}

/// Bisection root finding on a bracketing interval.
///
/// Requires `f(lo)` and `f(hi)` to have opposite signs; shrinks the bracket
/// until its width is at most `tol.abs_tol` and returns the midpoint.
pub fn find_root<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: &ToleranceSpec) -> Result<f64, NumericsError> {
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(NumericsError::InvalidInterval { lo, hi });
    }
    let f_lo = f(lo);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    let f_hi = f(hi);
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(NumericsError::InvalidBracket { f_lo, f_hi });
    }
    let mut lo = lo;
    let mut hi = hi;
    let mut lo_positive = f_lo > 0.0;
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..tol.max_iterations {
        mid = 0.5 * (lo + hi);
        if hi - lo <= tol.abs_tol {
            return Ok(mid);
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid > 0.0) == lo_positive {
            lo = mid;
            lo_positive = f_mid > 0.0;
        } else {
            hi = mid;
        }
    }
    Err(NumericsError::NonConvergence {
        estimate: mid,
        error_bound: hi - lo,
    })
}

/// Location and value of a 1-D extremum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
}

const INV_GOLDEN: f64 = 0.381_966_011_250_105_1; // 2 - golden ratio

fn golden_min<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, tol: &ToleranceSpec) -> Minimum {
    let mut x1 = a + INV_GOLDEN * (b - a);
    let mut x2 = b - INV_GOLDEN * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iterations = 0;
    while b - a > tol.abs_tol && iterations < tol.max_iterations {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + INV_GOLDEN * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - INV_GOLDEN * (b - a);
            f2 = f(x2);
        }
        iterations += 1;
    }
    if f1 < f2 {
        Minimum { x: x1, value: f1 }
    } else {
        Minimum { x: x2, value: f2 }
    }
}

pub(crate) fn golden_max<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: &ToleranceSpec) -> Minimum {
    let m = golden_min(&|x| -f(x), a, b, tol);
    Minimum {
        x: m.x,
        value: -m.value,
    }
}

/// Minimize `f` over `[lo, hi]`: a coarse scan over 256 equal subintervals
/// picks the best cell, then golden-section refinement shrinks it to
/// `tol.abs_tol`. Deterministic; ties resolve to the smallest `x`.
pub fn minimize_1d<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: &ToleranceSpec) -> Result<Minimum, NumericsError> {
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(NumericsError::InvalidInterval { lo, hi });
    }
    const COARSE: usize = 256;
    let h = (hi - lo) / COARSE as f64;
    let mut best = Minimum { x: lo, value: f(lo) };
    for i in 1..=COARSE {
        let x = if i == COARSE { hi } else { lo + h * i as f64 };
        let value = f(x);
        if value < best.value {
            best = Minimum { x, value };
        }
    }
    let a = f64::max(lo, best.x - h);
    let b = f64::min(hi, best.x + h);
    let refined = golden_min(&f, a, b, tol);
    Ok(if refined.value <= best.value { refined } else { best })
}

/// A sampled extremum: position in the input slice plus its coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub index: usize,
    pub x: f64,
    pub y: f64,
}

/// Peaks of a sampled curve together with the troughs separating them.
///
/// `troughs[j]` is the deepest sample strictly between `peaks[j]` and
/// `peaks[(j + 1) % peaks.len()]`, walking cyclically. With a single peak
/// the lone trough is the deepest sample of the rest of the curve.
#[derive(Debug, Clone, PartialEq)]
pub struct PeakAnalysis {
    pub peaks: Vec<Extremum>,
    pub troughs: Vec<Extremum>,
}

fn cyclic_trough(samples: &[(f64, f64)], from: usize, to: usize) -> Extremum {
    let n = samples.len();
    let mut i = (from + 1) % n;
    let mut best = Extremum {
        index: i,
        x: samples[i].0,
        y: samples[i].1,
    };
    while i != to {
        let (x, y) = samples[i];
        if y < best.y {
            best = Extremum { index: i, x, y };
        }
        i = (i + 1) % n;
    }
    best
}

fn troughs_between(samples: &[(f64, f64)], peaks: &[Extremum]) -> Vec<Extremum> {
    let m = peaks.len();
    (0..m)
        .map(|j| cyclic_trough(samples, peaks[j].index, peaks[(j + 1) % m].index))
        .collect()
}

/// Local maxima of an ordered `(x, y)` sequence, treating the domain as
/// periodic (the endpoints wrap), keeping only peaks whose prominence —
/// height above the higher of the two adjacent troughs — is at least
/// `prominence`.
///
/// Plateaus count as a single peak at the plateau midpoint. Peaks are
/// pruned lowest-prominence-first so that removing a ripple merges its
/// trough segments before the remaining peaks are re-measured.
pub fn peak_analysis(samples: &[(f64, f64)], prominence: f64) -> PeakAnalysis {
    let n = samples.len();
    let mut peaks: Vec<Extremum> = Vec::new();
    if n < 3 {
        return PeakAnalysis {
            peaks,
            troughs: Vec::new(),
        };
    }

    // Plateau-aware strict maxima on the cyclic sequence.
    let mut i = 0;
    while i < n {
        let y = samples[i].1;
        // Length of the run of equal values starting at i (cyclic runs that
        // cross the seam are handled by the i == 0 shift below).
        let mut run = 1;
        while run < n && samples[(i + run) % n].1 == y {
            run += 1;
        }
        if run == n {
            // Perfectly flat curve: no peaks.
            return PeakAnalysis {
                peaks: Vec::new(),
                troughs: Vec::new(),
            };
        }
        if i == 0 {
            // Shift the run start backwards across the seam if it continues
            // there, so each plateau is visited exactly once.
            let mut start = 0usize;
            let mut len = run;
            while len < n && samples[(n + start - 1) % n].1 == y {
                start = (n + start - 1) % n;
                len += 1;
            }
            if start != 0 {
                // The seam plateau is visited when `i` reaches `start`.
                i = run;
                continue;
            }
        }
        let prev = samples[(n + i - 1) % n].1;
        let next = samples[(i + run) % n].1;
        if y > prev && y > next {
            let rep = (i + (run - 1) / 2) % n;
            peaks.push(Extremum {
                index: rep,
                x: samples[rep].0,
                y,
            });
        }
        i += run;
    }
    if peaks.is_empty() {
        return PeakAnalysis {
            peaks,
            troughs: Vec::new(),
        };
    }
    peaks.sort_by_key(|p| p.index);

    // Prune lowest-prominence peaks until every survivor clears the bar.
    loop {
        let troughs = troughs_between(samples, &peaks);
        if peaks.len() == 1 {
            if peaks[0].y - troughs[0].y < prominence {
                peaks.clear();
                return PeakAnalysis {
                    peaks,
                    troughs: Vec::new(),
                };
            }
            return PeakAnalysis { peaks, troughs };
        }
        let m = peaks.len();
        let mut weakest = 0;
        let mut weakest_prom = f64::INFINITY;
        for j in 0..m {
            let left = troughs[(j + m - 1) % m].y;
            let right = troughs[j].y;
            let prom = peaks[j].y - f64::max(left, right);
            if prom < weakest_prom {
                weakest_prom = prom;
                weakest = j;
            }
        }
        if weakest_prom < prominence {
            peaks.remove(weakest);
        } else {
            return PeakAnalysis { peaks, troughs };
        }
    }
}

/// Positions of the local maxima of a sampled periodic curve with at least
/// the given prominence. See [`peak_analysis`] for the full result.
pub fn find_local_maxima(samples: &[(f64, f64)], prominence: f64) -> Vec<f64> {
    peak_analysis(samples, prominence)
        .peaks
        .into_iter()
        .map(|p| p.x)
        .collect()
}

/// Full width at half maximum of a sampled curve: the half level is
/// `min + (max - min) / 2`; crossings on both flanks of the tallest sample
/// are located by linear interpolation between neighbouring samples.
///
/// The walk does not wrap, so the sampled range must contain both flanks of
/// the peak. Flat curves and peaks whose flanks never reach the half level
/// are rejected.
pub fn half_max_width(samples: &[(f64, f64)]) -> Result<f64, NumericsError> {
    let mut top = 0usize;
    let mut y_max = f64::NEG_INFINITY;
    for (i, &(_, y)) in samples.iter().enumerate() {
        if y > y_max {
            y_max = y;
            top = i;
        }
    }
    half_max_width_at(samples, top)
}

/// [`half_max_width`] anchored on a chosen peak sample instead of the
/// global maximum — for curves with several fringes of comparable height
/// where noise may promote the wrong one.
///
/// The half level is `min + (y[peak] - min) / 2` with the minimum taken
/// over all samples.
pub fn half_max_width_at(samples: &[(f64, f64)], top: usize) -> Result<f64, NumericsError> {
    let n = samples.len();
    if n < 3 || top >= n {
        return Err(NumericsError::DegenerateCurve);
    }
    let mut y_min = samples[0].1;
    for &(_, y) in samples.iter() {
        if y < y_min {
            y_min = y;
        }
    }
    let y_max = samples[top].1;
    if y_max - y_min < 1e-12 {
        return Err(NumericsError::DegenerateCurve);
    }
    let half = y_min + 0.5 * (y_max - y_min);
    let cross = |a: (f64, f64), b: (f64, f64)| -> f64 {
        // Linear interpolation of the half-level crossing between samples.
        a.0 + (half - a.1) / (b.1 - a.1) * (b.0 - a.0)
    };
    let mut right = None;
    for i in top..n - 1 {
        if samples[i].1 >= half && samples[i + 1].1 < half {
            right = Some(cross(samples[i], samples[i + 1]));
            break;
        }
    }
    let mut left = None;
    for i in (1..=top).rev() {
        if samples[i].1 >= half && samples[i - 1].1 < half {
            left = Some(cross(samples[i], samples[i - 1]));
            break;
        }
    }
    match (left, right) {
        (Some(l), Some(r)) => Ok(r - l),
        _ => Err(NumericsError::DegenerateCurve),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_1_SQRT_2, PI};

    /// Reference error function, independent of libm: Maclaurin series for
    /// small arguments, Lentz continued fraction for the complement above.
    fn erf_reference(x: f64) -> f64 {
        if x < 0.0 {
            return -erf_reference(-x);
        }
        if x <= 2.0 {
            // erf(x) = 2/sqrt(pi) * sum_k (-1)^k x^(2k+1) / (k! (2k+1))
            let mut term = x;
            let mut sum = x;
            for k in 1..200 {
                term *= -x * x / k as f64;
                let contrib = term / (2 * k + 1) as f64;
                sum += contrib;
                if contrib.abs() < 1e-18 * sum.abs() {
                    break;
                }
            }
            sum * 2.0 / PI.sqrt()
        } else {
            // erfc(x) = exp(-x^2)/sqrt(pi) / (x + (1/2)/(x + (2/2)/(x + (3/2)/(x + ...))))
            // evaluated backwards, which is stable for x >= 2.
            let mut tail = 0.0;
            for k in (1..=200).rev() {
                tail = (k as f64 / 2.0) / (x + tail);
            }
            1.0 - (-x * x).exp() / PI.sqrt() / (x + tail)
        }
    }

    #[test]
    fn erf_matches_series_and_continued_fraction_reference() {
        let mut x = -6.0;
        while x <= 6.0 {
            let want = erf_reference(x);
            let got = erf(x);
            let tol = 1e-14 * want.abs().max(1e-300);
            assert!(
                (got - want).abs() <= tol.max(1e-16),
                "erf({x}): got {got}, reference {want}"
            );
            x += 0.0625;
        }
    }

    #[test]
    fn erf_known_values() {
        assert_eq!(erf(0.0), 0.0);
        assert!((erf(FRAC_1_SQRT_2) - 0.6826894921370859).abs() < 1e-15);
        assert!((erf(1.0) - 0.8427007929497149).abs() < 1e-15);
    }

    #[test]
    fn erf_saturates_beyond_six() {
        assert!((erf(6.5) - 1.0).abs() < 1e-16);
        assert!((erf(-8.0) + 1.0).abs() < 1e-16);
    }

    #[test]
    fn erf_one_sigma_mass_matches_quadrature() {
        // erf(1/sqrt(2)) is the +-1 sigma mass of a standard normal.
        let density = |t: f64| (-0.5 * t * t).exp() / (2.0 * PI).sqrt();
        let tol = ToleranceSpec::default();
        let mass = integrate(density, -1.0, 1.0, &tol).unwrap();
        assert!((mass - erf(FRAC_1_SQRT_2)).abs() < 1e-12);
    }

    #[test]
    fn erfc_complements_erf() {
        for &x in &[-3.0, -0.5, 0.0, 0.7, 2.5] {
            assert!((erfc(x) - (1.0 - erf(x))).abs() < 1e-15);
        }
        // Far tail stays meaningful where 1 - erf underflows to zero.
        assert!(erfc(10.0) > 0.0);
        assert!(erfc(10.0) < 1e-40);
    }

    #[test]
    fn integrate_constant() {
        let tol = ToleranceSpec::default();
        assert!((integrate(|_| 1.0, 0.0, 1.0, &tol).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn integrate_is_additive_over_adjacent_intervals() {
        let tol = ToleranceSpec::default();
        let f = |x: f64| (x.sin() * 3.0).exp();
        let whole = integrate(f, -1.0, 2.0, &tol).unwrap();
        let left = integrate(f, -1.0, 0.3, &tol).unwrap();
        let right = integrate(f, 0.3, 2.0, &tol).unwrap();
        assert!((whole - (left + right)).abs() < 2.0 * tol.abs_tol * 1e3);
    }

    #[test]
    fn integrate_reports_non_convergence_with_estimate() {
        let tol = ToleranceSpec::new(1e-15, 1e-15, 2).unwrap();
        let sharp = |x: f64| (-(x * x) * 1e6).exp();
        match integrate(sharp, -1.0, 1.0, &tol) {
            Err(NumericsError::NonConvergence { estimate, error_bound }) => {
                assert!(estimate.is_finite());
                assert!(error_bound > 0.0);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn integrate_rejects_reversed_interval() {
        let tol = ToleranceSpec::default();
        assert!(matches!(
            integrate(|x| x, 1.0, 0.0, &tol),
            Err(NumericsError::InvalidInterval { .. })
        ));
    }

    #[test]
    fn find_root_linear() {
        let tol = ToleranceSpec::default();
        let root = find_root(|x| x - 1.0, 0.0, 2.0, &tol).unwrap();
        assert!((root - 1.0).abs() < 1e-12);
    }

    #[test]
    fn find_root_rejects_bracket_without_sign_change() {
        let tol = ToleranceSpec::default();
        assert!(matches!(
            find_root(|x| x * x + 1.0, -1.0, 1.0, &tol),
            Err(NumericsError::InvalidBracket { .. })
        ));
    }

    #[test]
    fn minimize_parabola() {
        let tol = ToleranceSpec::default();
        let m = minimize_1d(|x| (x - 2.0) * (x - 2.0), 0.0, 4.0, &tol).unwrap();
        assert!((m.x - 2.0).abs() < 1e-10);
        assert!(m.value < 1e-18);
    }

    #[test]
    fn minimize_is_deterministic() {
        let tol = ToleranceSpec::default();
        let f = |x: f64| x.sin() + 0.1 * x;
        let a = minimize_1d(f, 0.0, 10.0, &tol).unwrap();
        let b = minimize_1d(f, 0.0, 10.0, &tol).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn peaks_of_cosine_squared_wrap_the_seam() {
        // cos^2(x/2) on [0, 2pi) peaks only at x = 0, which straddles the
        // periodic seam.
        let n = 512;
        let samples: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let x = 2.0 * PI * i as f64 / n as f64;
                (x, (x / 2.0).cos().powi(2))
            })
            .collect();
        let peaks = find_local_maxima(&samples, 0.01);
        assert_eq!(peaks.len(), 1);
        assert!(peaks[0].abs() < 1e-12);
    }

    #[test]
    fn peak_prominence_filters_ripples() {
        let n = 1000;
        let samples: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let x = 2.0 * PI * i as f64 / n as f64;
                // One tall fringe plus a ripple far below 1% prominence.
                (x, (-8.0 * (x - PI) * (x - PI)).exp() + 1e-4 * (40.0 * x).sin())
            })
            .collect();
        let range_prom = 0.01;
        let peaks = find_local_maxima(&samples, range_prom);
        assert_eq!(peaks.len(), 1);
        assert!((peaks[0] - PI).abs() < 0.05);
    }

    #[test]
    fn flat_curve_has_no_peaks() {
        let samples: Vec<(f64, f64)> = (0..64).map(|i| (i as f64, 1.0)).collect();
        assert!(find_local_maxima(&samples, 0.0).is_empty());
    }

    #[test]
    fn half_max_width_of_triangle() {
        let samples: Vec<(f64, f64)> = (0..101)
            .map(|i| {
                let x = i as f64 / 100.0;
                (x, 1.0 - (x - 0.5).abs() * 2.0)
            })
            .collect();
        let width = half_max_width(&samples).unwrap();
        assert!((width - 0.5).abs() < 1e-12);
    }

    #[test]
    fn half_max_width_rejects_flat_input() {
        let samples: Vec<(f64, f64)> = (0..10).map(|i| (i as f64, 2.0)).collect();
        assert!(matches!(half_max_width(&samples), Err(NumericsError::DegenerateCurve)));
    }
}
