//! Flat key=value experiment configuration.
//!
//! Keys:
//!   sampler.kind           two-sided-exp | lorentzian | gaussian
//!   sampler.lambda1        decay rate for t < 0        (two-sided-exp)
//!   sampler.lambda2        decay rate for t ≥ 0        (two-sided-exp)
//!   sampler.t0             width                       (lorentzian)
//!   sampler.tau            width                       (gaussian)
//!   profile.kind           zero | band | constant-band
//!   profile.w              lower (IR) cutoff           (banded profiles)
//!   profile.lambda_uv      upper (UV) cutoff           (banded profiles)
//!   profile.g0             constant squeeze            (constant-band)
//!   sweep.grid             comma-separated UV cutoffs
//!   quad.rel_tol           relative tolerance          (default 1e-10)
//!   quad.abs_tol           absolute floor              (default 1e-14)
//!   quad.max_subdivisions  panel budget                (default 1000000)
//!   verdict.tol            slope-agreement tolerance   (default 0.02)
//!
//! Lines starting with '#' and blank lines are ignored; later duplicates
//! win; command-line flags override file keys. Serialization is canonical
//! (fixed key order, shortest round-tripping number format), and the
//! config hash in every CSV header is the SHA-256 of that serialization.

use qilab_core::quadrature::QuadratureConfig;
use qilab_core::sampling::SamplingFunction;
use qilab_core::squeeze::SqueezeProfile;
use sha2::{Digest, Sha256};

/// Configuration error with the offending field path in the message.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}
impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentConfig {
    pub sampler_kind: Option<String>,
    pub lambda1: Option<f64>,
    pub lambda2: Option<f64>,
    pub t0: Option<f64>,
    pub tau: Option<f64>,
    pub profile_kind: Option<String>,
    pub w: Option<f64>,
    pub lambda_uv: Option<f64>,
    pub g0: Option<f64>,
    pub grid: Option<Vec<f64>>,
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub max_subdivisions: Option<usize>,
    pub verdict_tol: Option<f64>,
}

fn parse_f64(key: &str, value: &str) -> Result<f64, ConfigError> {
    value
        .parse::<f64>()
        .map_err(|_| ConfigError(format!("{key}: not a number: {value:?}")))
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return err(format!("line {}: expected key = value", lineno + 1));
            };
            let (key, value) = (key.trim(), value.trim());
            cfg.set(key, value)?;
        }
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "sampler.kind" => self.sampler_kind = Some(value.to_string()),
            "sampler.lambda1" => self.lambda1 = Some(parse_f64(key, value)?),
            "sampler.lambda2" => self.lambda2 = Some(parse_f64(key, value)?),
            "sampler.t0" => self.t0 = Some(parse_f64(key, value)?),
            "sampler.tau" => self.tau = Some(parse_f64(key, value)?),
            "profile.kind" => self.profile_kind = Some(value.to_string()),
            "profile.w" => self.w = Some(parse_f64(key, value)?),
            "profile.lambda_uv" => self.lambda_uv = Some(parse_f64(key, value)?),
            "profile.g0" => self.g0 = Some(parse_f64(key, value)?),
            "sweep.grid" => {
                let mut grid = Vec::new();
                for part in value.split(',') {
                    grid.push(parse_f64(key, part.trim())?);
                }
                if grid.is_empty() {
                    return err("sweep.grid: empty grid");
                }
                self.grid = Some(grid);
            }
            "quad.rel_tol" => self.rel_tol = Some(parse_f64(key, value)?),
            "quad.abs_tol" => self.abs_tol = Some(parse_f64(key, value)?),
            "quad.max_subdivisions" => {
                self.max_subdivisions = Some(
                    value
                        .parse::<usize>()
                        .map_err(|_| ConfigError(format!("{key}: not a count: {value:?}")))?,
                )
            }
            "verdict.tol" => self.verdict_tol = Some(parse_f64(key, value)?),
            other => return err(format!("unknown key: {other}")),
        }
        Ok(())
    }

    /// Canonical serialization: fixed key order, round-tripping numbers.
    pub fn to_canonical(&self) -> String {
        let mut out = String::new();
        let mut push = |key: &str, value: Option<String>| {
            if let Some(v) = value {
                out.push_str(key);
                out.push_str(" = ");
                out.push_str(&v);
                out.push('\n');
            }
        };
        push("sampler.kind", self.sampler_kind.clone());
        push("sampler.lambda1", self.lambda1.map(|v| v.to_string()));
        push("sampler.lambda2", self.lambda2.map(|v| v.to_string()));
        push("sampler.t0", self.t0.map(|v| v.to_string()));
        push("sampler.tau", self.tau.map(|v| v.to_string()));
        push("profile.kind", self.profile_kind.clone());
        push("profile.w", self.w.map(|v| v.to_string()));
        push("profile.lambda_uv", self.lambda_uv.map(|v| v.to_string()));
        push("profile.g0", self.g0.map(|v| v.to_string()));
        push(
            "sweep.grid",
            self.grid.as_ref().map(|g| {
                g.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            }),
        );
        push("quad.rel_tol", self.rel_tol.map(|v| v.to_string()));
        push("quad.abs_tol", self.abs_tol.map(|v| v.to_string()));
        push(
            "quad.max_subdivisions",
            self.max_subdivisions.map(|v| v.to_string()),
        );
        push("verdict.tol", self.verdict_tol.map(|v| v.to_string()));
        out
    }

    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_canonical().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn sampler(&self) -> Result<SamplingFunction, ConfigError> {
        let kind = self
            .sampler_kind
            .as_deref()
            .ok_or_else(|| ConfigError("sampler.kind: missing".into()))?;
        let check = |name: &str, v: Option<f64>| -> Result<f64, ConfigError> {
            let v = v.ok_or_else(|| ConfigError(format!("{name}: missing")))?;
            if v.is_finite() && v > 0.0 {
                Ok(v)
            } else {
                err(format!("{name}: must be positive (got {v})"))
            }
        };
        match kind {
            "two-sided-exp" => {
                let l1 = check("sampler.lambda1", self.lambda1)?;
                let l2 = check("sampler.lambda2", self.lambda2)?;
                SamplingFunction::two_sided_exponential(l1, l2)
                    .map_err(|e| ConfigError(format!("sampler: {e}")))
            }
            "lorentzian" => {
                let t0 = check("sampler.t0", self.t0)?;
                SamplingFunction::lorentzian(t0).map_err(|e| ConfigError(format!("sampler: {e}")))
            }
            "gaussian" => {
                let tau = check("sampler.tau", self.tau)?;
                SamplingFunction::gaussian(tau).map_err(|e| ConfigError(format!("sampler: {e}")))
            }
            other => err(format!(
                "sampler.kind: unknown kind {other:?} (want two-sided-exp, lorentzian or gaussian)"
            )),
        }
    }

    pub fn profile(&self, sampler: &SamplingFunction) -> Result<SqueezeProfile, ConfigError> {
        let kind = self
            .profile_kind
            .as_deref()
            .ok_or_else(|| ConfigError("profile.kind: missing".into()))?;
        let cutoffs = || -> Result<(f64, f64), ConfigError> {
            let w = self
                .w
                .ok_or_else(|| ConfigError("profile.w: missing".into()))?;
            let uv = self
                .lambda_uv
                .ok_or_else(|| ConfigError("profile.lambda_uv: missing".into()))?;
            if !(w.is_finite() && uv.is_finite() && 0.0 < w && w < uv) {
                return err(format!("profile.w/profile.lambda_uv: need 0 < w < lambda_uv (got {w}, {uv})"));
            }
            Ok((w, uv))
        };
        match kind {
            "zero" => Ok(SqueezeProfile::Zero),
            "band" => {
                let (w, uv) = cutoffs()?;
                SqueezeProfile::band(w, uv, sampler.clone())
                    .map_err(|e| ConfigError(format!("profile: {e}")))
            }
            "constant-band" => {
                let (w, uv) = cutoffs()?;
                let g0 = self
                    .g0
                    .ok_or_else(|| ConfigError("profile.g0: missing".into()))?;
                SqueezeProfile::constant_band(w, uv, g0)
                    .map_err(|e| ConfigError(format!("profile: {e}")))
            }
            other => err(format!(
                "profile.kind: unknown kind {other:?} (want zero, band or constant-band)"
            )),
        }
    }

    pub fn quadrature(&self) -> Result<QuadratureConfig, ConfigError> {
        let mut quad = QuadratureConfig::default();
        if let Some(v) = self.rel_tol {
            quad.rel_tol = v;
        }
        if let Some(v) = self.abs_tol {
            quad.abs_tol = v;
        }
        if let Some(v) = self.max_subdivisions {
            quad.max_subdivisions = v;
        }
        quad.validate()
            .map_err(|e| ConfigError(format!("quad: {e}")))?;
        Ok(quad)
    }

    pub fn verdict_tolerance(&self) -> Result<f64, ConfigError> {
        let tol = self
            .verdict_tol
            .unwrap_or(qilab_core::sweep::DEFAULT_VERDICT_TOLERANCE);
        if tol.is_finite() && tol > 0.0 {
            Ok(tol)
        } else {
            err(format!("verdict.tol: must be positive (got {tol})"))
        }
    }
}
