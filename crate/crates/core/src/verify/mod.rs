//! Verification suites and their machine-readable reports.
//!
//! Each suite returns a [`Report`] of named [`Check`]s. A check carries the
//! relation it tests as plain text (`anchor`), the measured residual and the
//! tolerance it was held to.

mod suites;

pub use suites::{
    algebra_suite, coherent_alpha_grid, coherent_suite, conventions_suite, correspondence_suite, decay_suite,
    eigenfunction_suite, nonlocal_suite, normalization_suite, run_primary_suites, spectrum_suite, verify,
};

use serde::Serialize;

use crate::fock::AdjointSign;
use crate::{Error, Result};

/// Environment variable holding the seed for randomized `α` samples.
pub const SEED_VAR: &str = "IWQM_SEED";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    /// `None` when the computation itself failed (see `detail`).
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    /// Tolerance was widened to a truncation allowance.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub adjusted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.into(),
            residual: Some(residual),
            tolerance,
            pass: residual.is_finite() && residual <= tolerance,
            adjusted: false,
            detail: None,
        }
    }

    /// A check whose residual could not be computed.
    pub fn failed(name: impl Into<String>, anchor: impl Into<String>, tolerance: f64, err: &Error) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.into(),
            residual: None,
            tolerance,
            pass: false,
            adjusted: false,
            detail: Some(err.to_string()),
        }
    }

    pub fn from_result(name: impl Into<String>, anchor: impl Into<String>, residual: Result<f64>, tolerance: f64) -> Self {
        match residual {
            Ok(r) => Self::new(name, anchor, r, tolerance),
            Err(e) => Self::failed(name, anchor, tolerance, &e),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    /// A pass/fail outcome with no meaningful magnitude.
    pub fn boolean(name: impl Into<String>, anchor: impl Into<String>, ok: bool) -> Self {
        Self::new(name, anchor, if ok { 0.0 } else { 1.0 }, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    pub fn new(suite: impl Into<String>, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self {
            suite: suite.into(),
            checks,
            pass,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Outcome of `verify`: the primary suites under the configured adjoint sign
/// plus the convention checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verification {
    pub config: RunConfig,
    pub suites: Vec<Report>,
    /// Label of the single bra coherent series that passes, if exactly one does.
    pub bra_coherent_series: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunConfig {
    /// Fock truncation for the algebra and coherent suites.
    pub nmax: usize,
    pub omega: f64,
    /// Tolerance for checks whose nominal level is `1e−10`.
    pub tol: f64,
    #[serde(serialize_with = "sigma_text")]
    pub sigma: AdjointSign,
    /// Refuse truncation allowances instead of widening tolerances.
    pub strict: bool,
    pub seed: u64,
}

fn sigma_text<S: serde::Serializer>(sign: &AdjointSign, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&sign.to_string())
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            nmax: 64,
            omega: 1.0,
            tol: 1e-10,
            sigma: AdjointSign::default(),
            strict: false,
            seed: 0,
        }
    }
}

impl RunConfig {
    /// Truncations below this have tolerances widened (or fail under `strict`).
    pub const NOMINAL_MIN_NMAX: usize = 8;
    /// Hard floor: the SU(1,1) checks need four levels.
    pub const MIN_NMAX: usize = 4;

    pub fn validate(&self) -> Result<()> {
        crate::check_omega(self.omega)?;
        if self.nmax < Self::MIN_NMAX {
            return Err(Error::InvalidDimension {
                dim: self.nmax,
                min: Self::MIN_NMAX,
            });
        }
        if self.tol.is_nan() || self.tol <= 0.0 || !self.tol.is_finite() {
            return Err(Error::InvalidArgument(format!("tolerance must be positive, got {}", self.tol)));
        }
        Ok(())
    }

    pub fn with_sigma(self, sigma: AdjointSign) -> Self {
        Self { sigma, ..self }
    }
}

/// Seed from [`SEED_VAR`], defaulting to zero.
pub fn seed_from_env() -> Result<u64> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("{SEED_VAR} must be an unsigned integer, got {s:?}"))),
        Err(_) => Ok(0),
    }
}
