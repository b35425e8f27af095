//! Property-based invariants of the analytic layer.

use proptest::prelude::*;
use std::f64::consts::PI;

use superfringe_core::binning::{zero_width_fwhm, BinaryScheme, Binning, MultiScheme, SUPER_RESOLUTION_THRESHOLD};
use superfringe_core::numerics::erf;
use superfringe_core::quadmodel::{bin_probability, output_mean_p};
use superfringe_core::CoherentSource;

fn photon_numbers() -> impl Strategy<Value = f64> {
    prop_oneof![0.0..10.0, 10.0..1e4]
}

fn phases() -> impl Strategy<Value = f64> {
    -PI..PI
}

fn half_widths() -> impl Strategy<Value = f64> {
    0.05..1.5
}

proptest! {
    #[test]
    fn response_is_periodic(n in photon_numbers(), phi in phases(), a in half_widths()) {
        let source = CoherentSource::new(n).unwrap();
        let scheme = BinaryScheme::new(a).unwrap();
        let here = scheme.response(source, phi);
        let there = scheme.response(source, phi + 2.0 * PI);
        prop_assert!((here - there).abs() <= 1e-12 * here.max(1.0));
    }

    #[test]
    fn response_is_even(n in photon_numbers(), phi in phases(), a in half_widths()) {
        let source = CoherentSource::new(n).unwrap();
        let scheme = BinaryScheme::new(a).unwrap();
        prop_assert!((scheme.response(source, phi) - scheme.response(source, -phi)).abs() <= 1e-14);
    }

    #[test]
    fn binary_response_reflects_about_half_period(n in 0.0..200.0f64, phi in 0.0..PI, a in half_widths()) {
        let source = CoherentSource::new(n).unwrap();
        let scheme = BinaryScheme::new(a).unwrap();
        let here = scheme.response(source, phi);
        let mirrored = scheme.response(source, PI - phi);
        prop_assert!((here - mirrored).abs() <= 1e-11 * here.max(1.0));
    }

    #[test]
    fn mean_is_odd_and_bounded(n in photon_numbers(), phi in phases()) {
        let source = CoherentSource::new(n).unwrap();
        prop_assert_eq!(output_mean_p(source, phi), -output_mean_p(source, -phi));
        prop_assert!(output_mean_p(source, phi).abs() <= 0.5 * n.sqrt() + 1e-12);
    }

    #[test]
    fn window_mass_is_additive(
        n in photon_numbers(),
        phi in phases(),
        lo in -4.0..4.0f64,
        mid_frac in 0.0..1.0f64,
        width in 0.0..5.0f64,
    ) {
        let source = CoherentSource::new(n).unwrap();
        let hi = lo + width;
        let mid = lo + mid_frac * width;
        let left = bin_probability(lo, mid, source, phi).unwrap();
        let right = bin_probability(mid, hi, source, phi).unwrap();
        let whole = bin_probability(lo, hi, source, phi).unwrap();
        prop_assert!((left + right - whole).abs() <= 1e-14);
    }

    #[test]
    fn erf_is_odd_monotone_and_bounded(x in -5.0..5.0f64, dx in 1e-6..1.0f64) {
        // Strict monotonicity and |erf| < 1 hold in f64 up to the
        // saturation point near x = 5.86; beyond it the value rounds to
        // exactly +-1 (covered by the saturation unit test).
        prop_assert_eq!(erf(-x), -erf(x));
        prop_assert!(erf(x) < erf(x + dx));
        prop_assert!(erf(x).abs() < 1.0);
    }

    #[test]
    fn response_lies_in_the_scaled_unit_interval(
        n in photon_numbers(),
        phi in phases(),
        a in half_widths(),
        extra in 0.05..6.0f64,
        bins in 0usize..4,
    ) {
        let source = CoherentSource::new(n).unwrap();
        let scheme = MultiScheme::new(a, 2.0 * a + extra, 2 * bins + 1).unwrap();
        let r = scheme.response(source, phi);
        // Positive except where the windows sit so many sigma from the mean
        // that the Gaussian mass underflows f64 entirely.
        prop_assert!(r >= 0.0);
        prop_assert!(r <= scheme.lambda0() * (1.0 + 1e-12));
        prop_assert!(scheme.variance(source, phi) >= 0.0);
        if n <= 400.0 {
            prop_assert!(r > 0.0);
        }
    }

    #[test]
    fn single_window_comb_is_the_binary_scheme(
        n in photon_numbers(),
        phi in phases(),
        a in half_widths(),
        spacing_extra in 0.05..4.0f64,
    ) {
        let source = CoherentSource::new(n).unwrap();
        let binary = BinaryScheme::new(a).unwrap();
        let comb = MultiScheme::new(a, 2.0 * a + spacing_extra, 1).unwrap();
        prop_assert_eq!(binary.response(source, phi), comb.response(source, phi));
        prop_assert_eq!(binary.variance(source, phi), comb.variance(source, phi));
        prop_assert_eq!(binary.sensitivity(source, phi), comb.sensitivity(source, phi));
    }

    #[test]
    fn sensitivity_ignores_eigenvalue_rescaling(
        n in 1.0..500.0f64,
        phi in 0.05..1.5f64,
        a in half_widths(),
        scale in 0.1..10.0f64,
    ) {
        let source = CoherentSource::new(n).unwrap();
        let scheme = BinaryScheme::new(a).unwrap();
        let sens = scheme.sensitivity(source, phi);
        prop_assume!(sens.is_finite());
        let scaled_var = scale * scale * scheme.variance(source, phi);
        let scaled_slope = scale * scheme.response_derivative(source, phi);
        let alt = scaled_var.sqrt() / scaled_slope.abs();
        prop_assert!(((alt - sens) / sens).abs() < 1e-10);
    }

    #[test]
    fn super_resolving_widths_stay_below_the_classical_limit(n in 1.3862943611198906f64..1e6) {
        prop_assume!(n > SUPER_RESOLUTION_THRESHOLD);
        let w = zero_width_fwhm(CoherentSource::new(n).unwrap()).unwrap();
        prop_assert!(w > 0.0);
        prop_assert!(w <= PI);
    }

    #[test]
    fn zero_width_fwhm_decreases_with_photon_number(
        n in 1.5f64..1e5,
        factor in 1.01..10.0f64,
    ) {
        let narrow = zero_width_fwhm(CoherentSource::new(n * factor).unwrap()).unwrap();
        let wide = zero_width_fwhm(CoherentSource::new(n).unwrap()).unwrap();
        prop_assert!(narrow < wide);
    }
}
