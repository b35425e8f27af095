//! Closed forms for the zero-width-window limit of the binary scheme, plus
//! a reference expression for the finite-width sensitivity.
//!
//! Narrowing the acceptance window to a point keeps only outcomes with
//! `p = 0`; the response then collapses to `exp(-N sin^2(phi) / 2)`, whose
//! width shrinks as `1 / sqrt(N)` — past the classical resolution limit as
//! soon as `N > 2 ln 2`. The limit is not physically realizable (it costs
//! unbounded energy), so these operations document the asymptotics while
//! the finite-width machinery in the parent module does the real work.

use core::f64::consts::{LN_2, PI, SQRT_2};

use crate::math;
use crate::quadmodel::CoherentSource;

use super::{BinaryScheme, Binning, SchemeError};

/// Smallest mean photon number with a super-resolving zero-width fringe:
/// `2 ln 2`. Below it the fringe is wider than the classical limit pi.
pub const SUPER_RESOLUTION_THRESHOLD: f64 = 2.0 * LN_2;

/// Zero-width limit of the binary response, `exp(-N sin^2(phi) / 2)`.
///
/// Period pi in `phi`, maximum 1 at `phi = 0` and `phi = pi`.
pub fn zero_width_response(source: CoherentSource, phi: f64) -> f64 {
    let s = math::sin(phi);
    math::exp(-0.5 * source.mean_photon_number() * s * s)
}

/// Full width at half maximum of the zero-width fringe,
/// `2 arcsin(sqrt(2 ln 2 / N))`.
///
/// Equals pi exactly at the threshold `N = 2 ln 2` and shrinks as
/// `2 sqrt(2 ln 2 / N)` for large `N`; rejects `N` below the threshold
/// where the half level is never reached.
pub fn zero_width_fwhm(source: CoherentSource) -> Result<f64, SchemeError> {
    let n = source.mean_photon_number();
    if n < SUPER_RESOLUTION_THRESHOLD {
        return Err(SchemeError::BelowThreshold(n));
    }
    let ratio = (SUPER_RESOLUTION_THRESHOLD / n).min(1.0);
    Ok(2.0 * math::asin(math::sqrt(ratio)))
}

/// Minimum sensitivity of the zero-width scheme and the phase where it is
/// attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensitivityMinimum {
    pub delta_phi: f64,
    pub phi: f64,
}

/// Closed-form minimum of the zero-width sensitivity:
///
/// `delta_phi = sqrt( sqrt(pi/2) * (exp((2 + N - sqrt(4 + N^2)) / 4) - sqrt(2/pi)) / (sqrt(4 + N^2) - 2) )`
///
/// attained near `phi = arccos(sqrt(1/2 - 1/N + sqrt(4 + N^2) / (2N)))`.
/// For large `N` the minimum converges to
/// `sqrt((sqrt(e pi / 2) - 1) / N)`, about `1.03 / sqrt(N)` — close to the
/// shot noise limit — while the phase drifts to zero as `N^(-1/2)`.
///
/// The finite-width first-principles sensitivity diverges pointwise as the
/// window shrinks, so this expression is reported alongside (never in place
/// of) the numeric minimum of [`Binning::sensitivity`].
pub fn zero_width_sensitivity_minimum(source: CoherentSource) -> Result<SensitivityMinimum, SchemeError> {
    let n = source.mean_photon_number();
    if n <= 0.0 {
        return Err(SchemeError::InvalidPhotonNumber(n));
    }
    let root = math::sqrt(4.0 + n * n);
    let numerator = math::exp(0.25 * (2.0 + n - root)) - math::sqrt(2.0 / PI);
    let delta_phi = math::sqrt(math::sqrt(0.5 * PI) * numerator / (root - 2.0));

    let arg = 0.5 - 1.0 / n + root / (2.0 * n);
    let arg = if arg < 0.0 {
        return Err(SchemeError::OutOfDomain(arg));
    } else {
        math::sqrt(arg)
    };
    let arg = if arg > 1.0 {
        if arg - 1.0 > 1e-12 {
            return Err(SchemeError::OutOfDomain(arg));
        }
        1.0
    } else {
        arg
    };
    Ok(SensitivityMinimum {
        delta_phi,
        phi: math::acos(arg),
    })
}

/// Reference closed-form expression for the finite-width binary
/// sensitivity:
///
/// `sqrt( pi/2 * exp((2a + sqrt(N) sin phi)^2 (2 - k) k) / (N cos^2 phi (exp(4 a sqrt(N) sin phi) - 1)^2) )`
///
/// with `k = erfc(sqrt(2) g-) + erfc(sqrt(2) g+)` and
/// `g+- = sqrt(2) (a +- sqrt(N) sin(phi) / 2)`.
///
/// Provided verbatim for comparison output only; it does not agree with the
/// first-principles error-propagation form [`Binning::sensitivity`], which
/// is the shipping definition, and it is excluded from every invariant.
pub fn binary_sensitivity_closed_form(scheme: &BinaryScheme, source: CoherentSource, phi: f64) -> f64 {
    let a = scheme.half_width();
    let n = source.mean_photon_number();
    let s = math::sqrt(n) * math::sin(phi);
    let g_plus = SQRT_2 * (a + 0.5 * s);
    let g_minus = SQRT_2 * (a - 0.5 * s);
    let k = math::erfc(SQRT_2 * g_minus) + math::erfc(SQRT_2 * g_plus);
    let edge = 2.0 * a + s;
    let numerator = math::exp(edge * edge * (2.0 - k) * k);
    let c = math::cos(phi);
    let swing = math::exp(4.0 * a * s) - 1.0;
    let denominator = n * c * c * swing * swing;
    if denominator == 0.0 {
        return f64::INFINITY;
    }
    math::sqrt(0.5 * PI * numerator / denominator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadmodel::CoherentSource;
    use core::f64::consts::{FRAC_PI_2, PI};

    fn source(n: f64) -> CoherentSource {
        CoherentSource::new(n).unwrap()
    }

    #[test]
    fn zero_width_response_basics() {
        assert_eq!(zero_width_response(source(19.0), 0.0), 1.0);
        // At the threshold the quarter-period response is exactly one half.
        let r = zero_width_response(source(SUPER_RESOLUTION_THRESHOLD), FRAC_PI_2);
        assert!((r - 0.5).abs() < 1e-15);
        let n = 19.0;
        let phi = 0.4f64;
        let want = (-0.5 * n * phi.sin() * phi.sin()).exp();
        assert_eq!(zero_width_response(source(n), phi), want);
    }

    #[test]
    fn zero_width_response_has_period_pi() {
        let src = source(7.0);
        for i in 0..32 {
            let phi = -2.0 + 0.21 * i as f64;
            let a = zero_width_response(src, phi);
            let b = zero_width_response(src, phi + PI);
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn fwhm_is_pi_at_threshold() {
        let w = zero_width_fwhm(source(SUPER_RESOLUTION_THRESHOLD)).unwrap();
        assert!((w - PI).abs() < 1e-12);
    }

    #[test]
    fn fwhm_rejects_sub_threshold_sources() {
        assert!(matches!(
            zero_width_fwhm(source(1.0)),
            Err(SchemeError::BelowThreshold(_))
        ));
    }

    #[test]
    fn fwhm_narrows_with_photon_number() {
        let mut last = zero_width_fwhm(source(2.0)).unwrap();
        for &n in &[4.0, 8.0, 32.0, 132.0, 1024.0, 1e6] {
            let w = zero_width_fwhm(source(n)).unwrap();
            assert!(w < last, "fwhm must shrink: N={n}");
            last = w;
        }
    }

    #[test]
    fn fwhm_below_pi_exactly_when_super_resolving() {
        assert!(zero_width_fwhm(source(SUPER_RESOLUTION_THRESHOLD + 1e-9)).unwrap() < PI);
        assert!(zero_width_fwhm(source(1.3862)).is_err());
    }

    #[test]
    fn fwhm_scaling_constant_at_large_n() {
        // fwhm * sqrt(N) -> 2 sqrt(2 ln 2) = 2.35482...
        let n = 1e8;
        let w = zero_width_fwhm(source(n)).unwrap();
        assert!((w * n.sqrt() - 2.0 * (2.0 * LN_2).sqrt()).abs() < 1e-4);
    }

    #[test]
    fn minimum_sensitivity_reaches_snl_coefficient() {
        let n = 1e8;
        let m = zero_width_sensitivity_minimum(source(n)).unwrap();
        let coeff = m.delta_phi * n.sqrt();
        // Large-N constant sqrt(sqrt(e pi / 2) - 1) = 1.03265...
        assert!((coeff - 1.0329).abs() / 1.0329 < 1e-3, "coeff = {coeff}");
        assert!((coeff - (((core::f64::consts::E * PI / 2.0).sqrt() - 1.0).sqrt())).abs() < 1e-6);
    }

    #[test]
    fn minimum_phase_drifts_to_zero_as_inverse_sqrt() {
        let ns = [1e3, 1e4, 1e5];
        let phis: alloc::vec::Vec<f64> = ns
            .iter()
            .map(|&n| zero_width_sensitivity_minimum(source(n)).unwrap().phi)
            .collect();
        // Log-log slope over the decade pair.
        let slope = (phis[2].ln() - phis[0].ln()) / (ns[2].ln() - ns[0].ln());
        assert!((slope + 0.5).abs() < 0.02, "slope = {slope}");
    }

    #[test]
    fn minimum_sensitivity_finite_at_small_n() {
        let m = zero_width_sensitivity_minimum(source(4.0)).unwrap();
        assert!(m.delta_phi.is_finite() && m.delta_phi > 0.0);
        assert!(m.phi.is_finite() && m.phi > 0.0);
        // Regression lock on the verified evaluation at N = 4.
        assert!((m.delta_phi - 0.581630412911223).abs() < 1e-12);
        assert!((m.phi - 0.452278447151191).abs() < 1e-12);
    }

    #[test]
    fn minimum_sensitivity_rejects_zero_photons() {
        assert!(zero_width_sensitivity_minimum(source(0.0)).is_err());
    }

    #[test]
    fn closed_form_sensitivity_diverges_at_stationary_phases() {
        let s = BinaryScheme::new(0.5).unwrap();
        assert_eq!(binary_sensitivity_closed_form(&s, source(100.0), 0.0), f64::INFINITY);
        // At the quarter period cos(phi) rounds to ~6e-17, not zero, so the
        // expression blows up without reaching the exact-zero branch.
        assert!(binary_sensitivity_closed_form(&s, source(100.0), FRAC_PI_2) > 1e3);
    }

    #[test]
    fn closed_form_sensitivity_is_finite_between_extremes() {
        let s = BinaryScheme::new(0.5).unwrap();
        let v = binary_sensitivity_closed_form(&s, source(100.0), 0.3);
        assert!(v.is_finite() && v > 0.0);
    }
}
