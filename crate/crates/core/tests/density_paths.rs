//! Cross-checks of the three averaging routes against a literal
//! time-ordered evaluation of the same double integral.
//!
//! The production window route keeps the radial integral outermost; here
//! the order is actually swapped: the sampler-weighted pointwise density is
//! integrated over time, panel by panel, resolving the fastest band
//! oscillation. Feasible only for small bands, which is exactly why it
//! lives in a test and not in the library.

use qilab_core::density::EnergyDensityModel;
use qilab_core::quadrature::{self, QuadratureConfig};
use qilab_core::sampling::SamplingFunction;
use qilab_core::squeeze::SqueezeProfile;
use std::f64::consts::PI;

fn small_band_model() -> (EnergyDensityModel, f64) {
    let uv = 6.0;
    let sampler = SamplingFunction::two_sided_exponential(1.0, 1.0).unwrap();
    let profile = SqueezeProfile::band(1.5, uv, sampler.clone()).unwrap();
    (
        EnergyDensityModel::new(profile, sampler, QuadratureConfig::default()).unwrap(),
        uv,
    )
}

// ∫ s(t)·⟨T₀₀(0,t)⟩ dt over [-window, window], outer integral in time.
fn literal_time_average(m: &EnergyDensityModel, window: f64, uv: f64) -> (f64, f64) {
    let panel = PI / (2.0 * uv);
    let n = ((2.0 * window) / panel).ceil() as usize;
    let cfg = QuadratureConfig {
        rel_tol: 1e-9,
        abs_tol: 1e-12,
        ..QuadratureConfig::default()
    };
    let h = 2.0 * window / n as f64;
    let mut value = 0.0;
    let mut err = 0.0;
    for i in 0..n {
        let a = -window + h * i as f64;
        let r = quadrature::integrate(
            |t| m.sampler().eval(t) * m.density_at(t).unwrap().value,
            a,
            a + h,
            &cfg,
        )
        .unwrap();
        value += r.value;
        err += r.error_estimate;
    }
    (value, err)
}

#[test]
fn literal_time_order_agrees_with_all_routes() {
    let (m, uv) = small_band_model();
    let window = 30.0;

    let exact = m.average_exact().unwrap();
    let generic = m.average_generic().unwrap();
    let windowed = m.average_time_domain(window).unwrap();
    let (literal, literal_err) = literal_time_average(&m, window, uv);

    assert!(exact.value < 0.0);

    // The pointwise densities feeding the literal route carry their own
    // quadrature noise at the 1e-10 relative level; allow for it on top of
    // the reported panel errors.
    let noise_allowance = 5e-9;
    let pairs = [
        ("exact/generic", exact.value, generic.value, 3.0 * (exact.error_estimate + generic.error_estimate)),
        ("exact/windowed", exact.value, windowed.value, 3.0 * (exact.error_estimate + windowed.error_estimate)),
        (
            "exact/literal",
            exact.value,
            literal,
            3.0 * (exact.error_estimate + literal_err) + noise_allowance,
        ),
        (
            "windowed/literal",
            windowed.value,
            literal,
            3.0 * (windowed.error_estimate + literal_err) + noise_allowance,
        ),
    ];
    for (name, x, y, bound) in pairs {
        assert!(
            (x - y).abs() <= bound,
            "{name}: |{x} - {y}| = {} > {bound}",
            (x - y).abs()
        );
    }
}
