//! Shared test oracles, built only on the sampler's time-domain values and
//! the quadrature engine; no closed-form transform appears anywhere here.
#![allow(dead_code)]

use num_complex::Complex64;
use qilab_core::quadrature::{self, QuadratureConfig};
use qilab_core::sampling::SamplingFunction;

/// Numeric ŝ(ω) = ∫ s(t) e^{-iωt} dt by direct time quadrature.
///
/// The two-sided exponential branches are integrated over [0, 60/λ], which
/// bounds the discarded tail below 1e-26·A. When many oscillation periods
/// fit under the decay, plain panel summation cancels to a tiny fraction
/// of the integrand mass and f64 round-off would swamp the value; the
/// branch identity s(t + π/ω) = e^{-λπ/ω} s(t) folds consecutive
/// half-periods analytically, so only the even half-period panels are
/// summed and the cancellation never happens numerically.
pub fn numeric_transform(s: &SamplingFunction, omega: f64) -> Complex64 {
    match *s {
        SamplingFunction::TwoSidedExponential { lambda1, lambda2 } => {
            let a = lambda1 * lambda2 / (lambda1 + lambda2);
            // t < 0 branch, substituted to u = -t: A e^{-λ₁u} e^{+iωu}.
            let re1 = exp_branch(lambda1, omega, Trig::Cos);
            let im1 = exp_branch(lambda1, omega, Trig::Sin);
            // t ≥ 0 branch: A e^{-λ₂t} e^{-iωt}.
            let re2 = exp_branch(lambda2, omega, Trig::Cos);
            let im2 = exp_branch(lambda2, omega, Trig::Sin);
            Complex64::new(a * (re1 + re2), a * (im1 - im2))
        }
        SamplingFunction::Lorentzian { t0 } => {
            // Algebraic tail: truncating at X leaves O(t₀/(π X² ω)).
            let x = 1e5 * t0;
            whole_line(s, omega, x)
        }
        SamplingFunction::Gaussian { tau } => whole_line(s, omega, 14.0 * tau),
    }
}

enum Trig {
    Cos,
    Sin,
}

// ∫₀^∞ e^{-λt}·trig(ωt) dt, numerically.
fn exp_branch(lambda: f64, omega: f64, trig: Trig) -> f64 {
    let t_max = 60.0 / lambda;
    let w = omega.abs();
    let sign = match trig {
        Trig::Cos => 1.0,
        Trig::Sin => omega.signum(),
    };
    let f = |t: f64| {
        let phase = w * t;
        (-lambda * t).exp()
            * match trig {
                Trig::Cos => phase.cos(),
                Trig::Sin => phase.sin(),
            }
    };

    if w * t_max <= 100.0 {
        let cfg = QuadratureConfig {
            rel_tol: 1e-13,
            abs_tol: 1e-15 / lambda,
            ..QuadratureConfig::default()
        };
        let r = quadrature::integrate_oscillatory(|t| (-lambda * t).exp(), w, 0.0, t_max, &cfg)
            .unwrap();
        return sign
            * match trig {
                Trig::Cos => r.value,
                Trig::Sin => {
                    // Re-run with the sine phase as a plain integrand; the
                    // oscillatory entry point is cosine-shaped.
                    quadrature::integrate(f, 0.0, t_max, &cfg).unwrap().value
                }
            };
    }

    // Many periods under the decay. Two exact self-similarity facts about
    // the exponential branch keep f64 viable where plain panel summation
    // would cancel below the round-off and phase-rounding floors:
    //   s(t + π/ω) = -e^{-λπ/ω} s(t)·trig-flip pairs consecutive
    //     half-periods into a (1 - e^{-λπ/ω}) prefactor, and
    //   v_{2m} = e^{-2mλπ/ω} v₀ reduces every even half-period panel to
    //     the first one, whose phase stays in [0, π] where cos/sin carry
    //     no argument-reduction error.
    // Only v₀ is quadrature; the decay series is summed term by term.
    let h = std::f64::consts::PI / w;
    let factor = -(-lambda * h).exp_m1();
    let base = quadrature::gauss_kronrod_15(f, 0.0, 0.5 * h).value
        + quadrature::gauss_kronrod_15(f, 0.5 * h, h).value;
    let q = (-2.0 * lambda * h).exp();
    let mut weight = 1.0f64;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    while weight > 1e-26 {
        let v = weight * base;
        let t = sum + v;
        comp += if sum.abs() >= v.abs() {
            (sum - t) + v
        } else {
            (v - t) + sum
        };
        sum = t;
        weight *= q;
    }
    sign * factor * (sum + comp)
}

// Brute-force ∫_{-x}^{x} s(t) e^{-iωt} dt for the smooth whole-line samplers.
fn whole_line(s: &SamplingFunction, omega: f64, x: f64) -> Complex64 {
    let cfg = QuadratureConfig {
        rel_tol: 1e-12,
        abs_tol: 1e-13,
        breakpoints: vec![0.0],
        ..QuadratureConfig::default()
    };
    let w = omega.abs();
    let re = quadrature::integrate_oscillatory(|t| s.eval(t), w, -x, x, &cfg)
        .unwrap()
        .value;
    // s is even for these variants, so the sine part vanishes identically.
    Complex64::new(re, 0.0)
}
