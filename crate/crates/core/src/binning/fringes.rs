//! Fringe structure of a response curve: peak detection, resolution,
//! visibility and the sensitivity minimum.
//!
//! All scans run on a fixed 4096-point grid over one period with
//! golden-section refinement of every surviving extremum, so results are
//! deterministic for a given scheme and source. Peaks must rise at least 1%
//! of the curve's dynamic range above their surrounding troughs; that
//! suppresses floating-point ripples without hiding the shallow fringes
//! that still matter at the visibility levels of interest.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::math;
use crate::numerics::{self, Minimum, ToleranceSpec};
use crate::quadmodel::CoherentSource;

use super::{Binning, SchemeError};

/// Number of grid points per period used by the fringe scans.
const FRINGE_GRID: usize = 4096;

/// Required peak prominence as a fraction of the curve's dynamic range.
const PROMINENCE_FRACTION: f64 = 0.01;

/// Curves with less dynamic range than this are treated as flat.
const FLATNESS_FLOOR: f64 = 1e-12;

/// A refined point of the response curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub phi: f64,
    pub value: f64,
}

/// Peaks and troughs of one period of a response curve.
///
/// `troughs[j]` is the deepest point between `peaks[j]` and the cyclically
/// next peak. `fringe_visibility[j]` is the contrast of peak `j` against
/// the deeper of its two adjacent troughs, measured relative to the peak:
/// `(peak - trough) / peak`.
#[derive(Debug, Clone, PartialEq)]
pub struct FringePattern {
    pub peaks: Vec<PhasePoint>,
    pub troughs: Vec<PhasePoint>,
    pub fringe_visibility: Vec<f64>,
}

impl FringePattern {
    fn empty() -> Self {
        Self {
            peaks: Vec::new(),
            troughs: Vec::new(),
            fringe_visibility: Vec::new(),
        }
    }
}

/// Minimum and mean per-fringe visibility over one period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Visibility {
    pub min: f64,
    pub mean: f64,
}

fn refine_tol() -> ToleranceSpec {
    ToleranceSpec {
        abs_tol: 1e-9,
        rel_tol: 1e-9,
        max_iterations: 80,
    }
}

/// Locate and refine the fringes of the response curve over `[0, 2 pi)`.
///
/// Returns an empty pattern when the curve is flat to machine precision.
pub fn fringe_pattern<S: Binning>(scheme: &S, source: CoherentSource) -> FringePattern {
    let f = |phi: f64| scheme.response(source, phi);
    let h = 2.0 * PI / FRINGE_GRID as f64;
    let samples: Vec<(f64, f64)> = (0..FRINGE_GRID).map(|i| (h * i as f64, f(h * i as f64))).collect();
    let mut y_min = samples[0].1;
    let mut y_max = samples[0].1;
    for &(_, y) in &samples {
        y_min = y_min.min(y);
        y_max = y_max.max(y);
    }
    if y_max - y_min < FLATNESS_FLOOR {
        return FringePattern::empty();
    }
    let analysis = numerics::peak_analysis(&samples, PROMINENCE_FRACTION * (y_max - y_min));
    if analysis.peaks.is_empty() {
        return FringePattern::empty();
    }
    let tol = refine_tol();
    let refine_max = |x: f64| -> PhasePoint {
        let m = numerics::golden_max(&f, x - h, x + h, &tol);
        PhasePoint { phi: m.x, value: m.value }
    };
    let peaks: Vec<PhasePoint> = analysis.peaks.iter().map(|p| refine_max(p.x)).collect();
    let troughs: Vec<PhasePoint> = analysis
        .troughs
        .iter()
        .map(|t| {
            let m = numerics::minimize_1d(f, t.x - h, t.x + h, &tol).unwrap_or(Minimum {
                x: t.x,
                value: t.y,
            });
            PhasePoint { phi: m.x, value: m.value }
        })
        .collect();
    let m = peaks.len();
    let fringe_visibility = (0..m)
        .map(|j| {
            let left = troughs[(j + m - 1) % m].value;
            let right = troughs[j].value;
            let deepest = left.min(right);
            (peaks[j].value - deepest) / peaks[j].value
        })
        .collect();
    FringePattern {
        peaks,
        troughs,
        fringe_visibility,
    }
}

/// Number of fringes (prominent response maxima) per 2 pi period.
pub fn count_fringes<S: Binning>(scheme: &S, source: CoherentSource) -> usize {
    fringe_pattern(scheme, source).peaks.len()
}

/// Per-fringe visibility over one period; the minimum is the conservative
/// headline figure, the mean is what multi-window trade-off studies quote.
pub fn visibility<S: Binning>(scheme: &S, source: CoherentSource) -> Result<Visibility, SchemeError> {
    let pattern = fringe_pattern(scheme, source);
    if pattern.peaks.is_empty() {
        return Err(SchemeError::NoFringes);
    }
    let mut min = f64::INFINITY;
    let mut sum = 0.0;
    for &v in &pattern.fringe_visibility {
        min = min.min(v);
        sum += v;
    }
    Ok(Visibility {
        min,
        mean: sum / pattern.fringe_visibility.len() as f64,
    })
}

/// Full width at half maximum of the `phi = 0` fringe.
///
/// The half level is `min + (max - min) / 2` over one period; the crossing
/// on the right flank is bisected to 1e-10 radians and doubled (the
/// response is even in `phi`). Coincides with [`super::zero_width_fwhm`]
/// in the small-window, large-`N` regime where the trough level vanishes.
pub fn fwhm<S: Binning>(scheme: &S, source: CoherentSource) -> Result<f64, SchemeError> {
    let f = |phi: f64| scheme.response(source, phi);
    let h = 2.0 * PI / FRINGE_GRID as f64;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    let values: Vec<f64> = (0..FRINGE_GRID).map(|i| f(h * i as f64)).collect();
    for &v in &values {
        y_min = y_min.min(v);
        y_max = y_max.max(v);
    }
    if y_max - y_min < FLATNESS_FLOOR {
        return Err(SchemeError::FlatResponse);
    }
    let half = y_min + 0.5 * (y_max - y_min);
    // Walk down the right flank of the phi = 0 peak to bracket the
    // half-level crossing.
    let mut bracket = None;
    for i in 0..FRINGE_GRID - 1 {
        if values[i] >= half && values[i + 1] < half {
            bracket = Some((h * i as f64, h * (i + 1) as f64));
            break;
        }
    }
    let (lo, hi) = bracket.ok_or(SchemeError::FlatResponse)?;
    let tol = ToleranceSpec {
        abs_tol: 1e-10,
        rel_tol: 1e-10,
        max_iterations: 200,
    };
    let crossing = numerics::find_root(|phi| f(phi) - half, lo, hi, &tol)?;
    Ok(2.0 * crossing)
}

/// Phase and value of the smallest finite sensitivity over one period.
///
/// Searches a coarse grid over `(0, 2 pi)` refined by golden section, plus
/// a dedicated pass over the narrow flank region `phi <~ 30 / sqrt(N)`
/// where the minimum of high-`N` configurations lives between grid points.
pub fn min_sensitivity<S: Binning>(scheme: &S, source: CoherentSource) -> Result<Minimum, SchemeError> {
    let f = |phi: f64| scheme.sensitivity(source, phi);
    let tol = ToleranceSpec {
        abs_tol: 1e-10,
        rel_tol: 1e-10,
        max_iterations: 200,
    };
    let mut best = numerics::minimize_1d(f, 1e-9, 2.0 * PI - 1e-9, &tol)?;
    let n = source.mean_photon_number();
    if n > 0.0 {
        let flank = (30.0 / math::sqrt(n)).min(0.5 * PI);
        if flank > 2e-9 {
            let near = numerics::minimize_1d(f, 1e-9, flank, &tol)?;
            if near.value < best.value {
                best = near;
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binning::{zero_width_fwhm, BinaryScheme, MultiScheme};
    use core::f64::consts::FRAC_PI_2;

    fn source(n: f64) -> CoherentSource {
        CoherentSource::new(n).unwrap()
    }

    #[test]
    fn binary_fringe_count_is_two() {
        for &(a, n) in &[(0.5, 19.0), (0.5, 132.0), (0.2, 4.0)] {
            let s = BinaryScheme::new(a).unwrap();
            assert_eq!(count_fringes(&s, source(n)), 2, "a={a}, N={n}");
        }
    }

    #[test]
    fn binary_peaks_sit_at_zero_and_pi() {
        let s = BinaryScheme::new(0.5).unwrap();
        let pattern = fringe_pattern(&s, source(19.0));
        assert_eq!(pattern.peaks.len(), 2);
        let mut phis: Vec<f64> = pattern.peaks.iter().map(|p| p.phi).collect();
        phis.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!(phis[0].abs() < 1e-3);
        assert!((phis[1] - PI).abs() < 1e-3);
    }

    #[test]
    fn five_window_pattern_has_eight_fringes() {
        let s = MultiScheme::new(0.5, 3.17, 5).unwrap();
        assert_eq!(count_fringes(&s, source(139.0)), 8);
    }

    #[test]
    fn unreachable_outer_windows_leave_two_fringes() {
        // Windows at +-8 while the mean only sweeps +-sqrt(19)/2 ~ 2.18:
        // only the central window's fringes survive.
        let s = MultiScheme::new(0.5, 8.0, 3).unwrap();
        assert_eq!(count_fringes(&s, source(19.0)), 2);
    }

    #[test]
    fn binary_visibility_is_near_unity() {
        let s = BinaryScheme::new(0.5).unwrap();
        let v = visibility(&s, source(19.0)).unwrap();
        assert!(v.min > 0.999, "min visibility = {}", v.min);
        assert!(v.mean >= v.min);
    }

    #[test]
    fn five_window_mean_visibility_clears_95_percent() {
        let s = MultiScheme::new(0.5, 3.17, 5).unwrap();
        let v = visibility(&s, source(139.0)).unwrap();
        assert!(v.mean >= 0.95, "mean visibility = {}", v.mean);
        assert!(v.min < v.mean); // the turning fringes are the weak ones
    }

    #[test]
    fn single_window_visibility_equals_binary() {
        let b = BinaryScheme::new(0.5).unwrap();
        let m = MultiScheme::new(0.5, 3.0, 1).unwrap();
        let src = source(19.0);
        let vb = visibility(&b, src).unwrap();
        let vm = visibility(&m, src).unwrap();
        assert_eq!(vb, vm);
    }

    #[test]
    fn visibility_requires_fringes() {
        // A very wide window accepts everything: flat response.
        let s = BinaryScheme::new(60.0).unwrap();
        assert!(matches!(visibility(&s, source(1e-6)), Err(SchemeError::NoFringes)));
    }

    #[test]
    fn fwhm_matches_zero_width_closed_form_for_narrow_windows() {
        // The closed form assumes the trough level vanishes, which holds
        // once exp(-N/2) is negligible against the half level.
        let s = BinaryScheme::new(1e-6).unwrap();
        for &n in &[40.0, 132.0, 500.0] {
            let numeric = fwhm(&s, source(n)).unwrap();
            let closed = zero_width_fwhm(source(n)).unwrap();
            assert!((numeric - closed).abs() < 1e-6, "N={n}: {numeric} vs {closed}");
        }
    }

    #[test]
    fn fwhm_rejects_flat_curves() {
        let s = BinaryScheme::new(60.0).unwrap();
        assert!(matches!(fwhm(&s, source(1e-6)), Err(SchemeError::FlatResponse)));
    }

    #[test]
    fn finite_window_fringe_is_wider_than_zero_width_limit() {
        let src = source(132.0);
        let finite = fwhm(&BinaryScheme::new(0.5).unwrap(), src).unwrap();
        let limit = zero_width_fwhm(src).unwrap();
        assert!(finite > limit);
        // ... yet still far below the classical limit pi.
        assert!(finite < PI / 4.0);
    }

    #[test]
    fn min_sensitivity_of_unit_window_follows_shot_noise() {
        let n = 1e4;
        let s = BinaryScheme::new(0.5).unwrap();
        let m = min_sensitivity(&s, source(n)).unwrap();
        let coeff = m.value * n.sqrt();
        assert!((1.36..=1.39).contains(&coeff), "coeff = {coeff}");
        assert!(m.x > 0.0 && m.x < FRAC_PI_2);
    }

    #[test]
    fn min_sensitivity_is_deterministic() {
        let s = MultiScheme::new(0.5, 3.17, 5).unwrap();
        let a = min_sensitivity(&s, source(139.0)).unwrap();
        let b = min_sensitivity(&s, source(139.0)).unwrap();
        assert_eq!(a, b);
    }
}
