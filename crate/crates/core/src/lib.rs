//! Numerical laboratory for weighted time-averages of the quantum energy
//! density carried by squeezed vacuum states of a massless scalar field in
//! four-dimensional flat spacetime.
//!
//! The pieces, bottom up:
//!
//! * [`sampling`] — normalized time weights s(t) and their closed-form
//!   frequency transforms ŝ(ω).
//! * [`squeeze`] — per-mode squeeze strength profiles g(k), including the
//!   band-limited profile tied to the sampler transform.
//! * [`quadrature`] — adaptive Gauss–Kronrod integration with mandatory
//!   breakpoints, log-spaced seeding and oscillation-aware panel caps.
//! * [`fock`] — dense-matrix oracle on a truncated Fock space that
//!   brute-force checks the squeeze-operator algebra behind the analytic
//!   expectation values.
//! * [`density`] — pointwise energy density and its sampled averages along
//!   three independent routes (closed-form bracket, generic transform,
//!   windowed time domain).
//! * [`sweep`] — UV-cutoff sweeps, log-slope fits and the divergence
//!   verdict: the average decreases without bound as the cutoff grows, so
//!   no finite lower bound exists for the two-sided exponential sampler.
//!
//! Natural units ħ = c = 1 throughout; energy densities carry wavenumber⁴.

pub mod density;
pub mod fock;
pub mod quadrature;
pub mod sampling;
pub mod squeeze;
pub mod sweep;

pub use density::{DensityError, DensityValue, EnergyDensityModel};
pub use quadrature::{QuadratureConfig, QuadratureError, QuadratureResult};
pub use sampling::{SamplingError, SamplingFunction};
pub use squeeze::{ProfileError, SqueezeProfile};
pub use sweep::{LogSlopeFit, SweepError, SweepPoint, SweepReport};
