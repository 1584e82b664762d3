//! Time-domain sampling functions and their frequency transforms.
//!
//! A sampling function is a peaked, non-negative weight s(t) whose time
//! integral is one. The averaging integrals downstream only ever need the
//! transform ŝ(ω) = ∫ s(t) e^{-iωt} dt evaluated at ω = 2|k|, but the
//! frequency argument is kept general so the module is testable on its own.
//!
//! The two-sided exponential is the window of interest; the Lorentzian and
//! Gaussian are comparison samplers and take no part in the band-profile
//! construction.

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SamplingError {
    #[error("sampler parameter {name} must be positive and finite (got {value})")]
    NonPositiveParameter { name: &'static str, value: f64 },
}

/// A normalized, non-negative weight over time.
///
/// Invariants: s(t) ≥ 0 everywhere, ∫ s(t) dt = 1. For the two-sided
/// exponential the amplitude A = λ₁λ₂/(λ₁+λ₂) is derived on demand and
/// never stored.
#[derive(Debug, Clone, PartialEq)]
pub enum SamplingFunction {
    /// s(t) = A e^{λ₁ t} for t < 0 and A e^{-λ₂ t} for t ≥ 0,
    /// with A = λ₁λ₂/(λ₁+λ₂). Both branches meet at s(0) = A.
    TwoSidedExponential { lambda1: f64, lambda2: f64 },
    /// s(t) = t₀ / [π (t² + t₀²)].
    Lorentzian { t0: f64 },
    /// s(t) = exp(-t²/2τ²) / (τ √(2π)).
    Gaussian { tau: f64 },
}

fn require_positive(name: &'static str, value: f64) -> Result<(), SamplingError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(SamplingError::NonPositiveParameter { name, value })
    }
}

impl SamplingFunction {
    pub fn two_sided_exponential(lambda1: f64, lambda2: f64) -> Result<Self, SamplingError> {
        require_positive("lambda1", lambda1)?;
        require_positive("lambda2", lambda2)?;
        Ok(Self::TwoSidedExponential { lambda1, lambda2 })
    }

    pub fn lorentzian(t0: f64) -> Result<Self, SamplingError> {
        require_positive("t0", t0)?;
        Ok(Self::Lorentzian { t0 })
    }

    pub fn gaussian(tau: f64) -> Result<Self, SamplingError> {
        require_positive("tau", tau)?;
        Ok(Self::Gaussian { tau })
    }

    pub fn validate(&self) -> Result<(), SamplingError> {
        match *self {
            Self::TwoSidedExponential { lambda1, lambda2 } => {
                require_positive("lambda1", lambda1)?;
                require_positive("lambda2", lambda2)
            }
            Self::Lorentzian { t0 } => require_positive("t0", t0),
            Self::Gaussian { tau } => require_positive("tau", tau),
        }
    }

    /// s(t). Total on valid parameters; continuous at t = 0 for every
    /// variant (both exponential branches equal A there).
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            Self::TwoSidedExponential { lambda1, lambda2 } => {
                let a = lambda1 * lambda2 / (lambda1 + lambda2);
                if t < 0.0 {
                    a * (lambda1 * t).exp()
                } else {
                    a * (-lambda2 * t).exp()
                }
            }
            Self::Lorentzian { t0 } => t0 / (PI * (t * t + t0 * t0)),
            Self::Gaussian { tau } => {
                let x = t / tau;
                (-0.5 * x * x).exp() / (tau * (2.0 * PI).sqrt())
            }
        }
    }

    /// Closed-form transform ŝ(ω) = ∫ s(t) e^{-iωt} dt.
    ///
    /// For the two-sided exponential this is
    /// A [(λ₁ + iω)/(λ₁² + ω²) + (λ₂ − iω)/(λ₂² + ω²)]; the imaginary
    /// parts cancel when λ₁ = λ₂. ŝ(0) = 1 for every variant and
    /// |ŝ(ω)| ≤ 1 since s is a unit-mass non-negative weight.
    pub fn transform(&self, omega: f64) -> Complex64 {
        match *self {
            Self::TwoSidedExponential { lambda1, lambda2 } => {
                let a = lambda1 * lambda2 / (lambda1 + lambda2);
                let d1 = lambda1 * lambda1 + omega * omega;
                let d2 = lambda2 * lambda2 + omega * omega;
                Complex64::new(
                    a * (lambda1 / d1 + lambda2 / d2),
                    a * (omega / d1 - omega / d2),
                )
            }
            Self::Lorentzian { t0 } => Complex64::new((-t0 * omega.abs()).exp(), 0.0),
            Self::Gaussian { tau } => {
                let x = tau * omega;
                Complex64::new((-0.5 * x * x).exp(), 0.0)
            }
        }
    }

    /// Re ŝ(ω). For the two-sided exponential this is the bracket
    /// A [λ₁/(λ₁² + ω²) + λ₂/(λ₂² + ω²)] that the averaging integral and
    /// the band profile consume at ω = 2|k|.
    pub fn transform_real(&self, omega: f64) -> f64 {
        match *self {
            Self::TwoSidedExponential { lambda1, lambda2 } => {
                let a = lambda1 * lambda2 / (lambda1 + lambda2);
                let d1 = lambda1 * lambda1 + omega * omega;
                let d2 = lambda2 * lambda2 + omega * omega;
                a * (lambda1 / d1 + lambda2 / d2)
            }
            _ => self.transform(omega).re,
        }
    }

    /// Upper bound on the mass outside [-w, w], ∫_{|t|>w} s(t) dt.
    ///
    /// Exact for the exponential and Lorentzian variants; a Chernoff bound
    /// for the Gaussian. Used to decide whether a finite averaging window
    /// is wide enough.
    pub fn tail_mass(&self, half_width: f64) -> f64 {
        match *self {
            Self::TwoSidedExponential { lambda1, lambda2 } => {
                let a = lambda1 * lambda2 / (lambda1 + lambda2);
                a * ((-lambda1 * half_width).exp() / lambda1
                    + (-lambda2 * half_width).exp() / lambda2)
            }
            Self::Lorentzian { t0 } => 2.0 / PI * (t0 / half_width).atan(),
            Self::Gaussian { tau } => {
                let x = half_width / tau;
                (-0.5 * x * x).exp()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn two_sided(l1: f64, l2: f64) -> SamplingFunction {
        SamplingFunction::two_sided_exponential(l1, l2).unwrap()
    }

    #[test]
    fn rejects_nonpositive_parameters() {
        assert!(SamplingFunction::two_sided_exponential(0.0, 1.0).is_err());
        assert!(SamplingFunction::two_sided_exponential(1.0, -2.0).is_err());
        assert!(SamplingFunction::lorentzian(f64::NAN).is_err());
        assert!(SamplingFunction::gaussian(f64::INFINITY).is_err());
    }

    #[test]
    fn two_sided_peak_is_amplitude() {
        // A = (1·1)/(1+1) = 1/2 and both branches meet there.
        let s = two_sided(1.0, 1.0);
        assert_relative_eq!(s.eval(0.0), 0.5, max_relative = 1e-15);
        assert_relative_eq!(s.eval(-1e-12), 0.5, max_relative = 1e-9);
    }

    #[test]
    fn two_sided_negative_branch() {
        // A = 2/3, branch t < 0: A e^{λ₁ t}.
        let s = two_sided(1.0, 2.0);
        assert_relative_eq!(s.eval(-1.0), (2.0 / 3.0) * (-1.0f64).exp(), max_relative = 1e-14);
        assert_abs_diff_eq!(s.eval(-1.0), 0.245253, epsilon = 1e-6);
    }

    #[test]
    fn decays_at_large_times() {
        for s in [
            two_sided(1.0, 2.0),
            SamplingFunction::lorentzian(1.0).unwrap(),
            SamplingFunction::gaussian(1.0).unwrap(),
        ] {
            assert!(s.eval(1e8) < 1e-12);
            assert!(s.eval(-1e8) < 1e-12);
        }
    }

    #[test]
    fn transform_at_zero_is_unity() {
        for s in [
            two_sided(0.37, 4.2),
            SamplingFunction::lorentzian(2.5).unwrap(),
            SamplingFunction::gaussian(0.8).unwrap(),
        ] {
            let v = s.transform(0.0);
            assert_abs_diff_eq!(v.re, 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn equal_rates_transform_is_real() {
        // A [1/5 + 1/5] = 0.2 with the imaginary parts cancelling.
        let v = two_sided(1.0, 1.0).transform(2.0);
        assert_relative_eq!(v.re, 0.2, max_relative = 1e-14);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-16);
        assert_relative_eq!(two_sided(1.0, 1.0).transform_real(2.0), 0.2, max_relative = 1e-14);
    }

    #[test]
    fn transform_real_matches_real_part() {
        // Deterministic pseudo-random sweep over (λ₁, λ₂, ω).
        let mut x = 0.734_f64;
        let mut next = move || {
            x = (x * 997.0 + 0.123).fract();
            x
        };
        for _ in 0..100 {
            let s = two_sided(0.1 + 9.9 * next(), 0.1 + 9.9 * next(), );
            let omega = 1e3 * next();
            assert_relative_eq!(s.transform_real(omega), s.transform(omega).re, max_relative = 1e-15);
        }
    }

    proptest! {
        #[test]
        fn hermitian_symmetry(l1 in 0.1f64..10.0, l2 in 0.1f64..10.0, omega in -1e3f64..1e3) {
            let s = two_sided(l1, l2);
            let plus = s.transform(omega);
            let minus = s.transform(-omega);
            prop_assert!((minus - plus.conj()).norm() <= 1e-15 * (1.0 + plus.norm()));
        }

        #[test]
        fn transform_magnitude_bounded(l1 in 0.1f64..10.0, l2 in 0.1f64..10.0, omega in 0.0f64..1e4) {
            let s = two_sided(l1, l2);
            prop_assert!(s.transform(omega).norm() <= 1.0 + 1e-12);
        }

        #[test]
        fn tail_mass_decreases(l1 in 0.1f64..10.0, l2 in 0.1f64..10.0, w in 1.0f64..50.0) {
            let s = two_sided(l1, l2);
            prop_assert!(s.tail_mass(2.0 * w) <= s.tail_mass(w));
        }
    }
}
