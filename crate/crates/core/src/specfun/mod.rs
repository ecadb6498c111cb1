//! High-precision Γ, log Γ, polygamma and ζ evaluation with explicit error
//! targets.
//!
//! All evaluators take a [`PrecisionConfig`]; they compute internally with
//! [`PrecisionConfig::working_bits`] and round results to
//! `precision_bits`. Principal branches are used throughout.

mod gamma;
mod zeta;

use thiserror::Error;

pub use gamma::{digamma_jet, gamma, gamma_deriv, log_gamma};
pub use zeta::{functional_eq_residual, zeta, zeta_jet};

use crate::complex::{ComplexHP, PrecisionConfig};
use crate::diffpoly::DiffPolyError;
use crate::mp::Real;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecError {
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },
    #[error("{what}: error target not reachable within the series limits")]
    PrecisionUnreachable { what: &'static str },
    #[error("{0} overflows the exponent range")]
    Overflow(&'static str),
    #[error("invalid precision configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    DiffPoly(#[from] DiffPolyError),
}

/// Extra bits of headroom requested from the series beyond the target.
const SERIES_SLACK_BITS: f64 = 6.0;

fn check_config(cfg: &PrecisionConfig) -> Result<(), SpecError> {
    cfg.validate().map_err(SpecError::InvalidConfig)
}

/// `true` when `z` lies within the error target of `n`.
fn near_integer(z: &ComplexHP, n: i64, cfg: &PrecisionConfig) -> bool {
    let d = z.distance(&ComplexHP::from_i64(n, z.precision()));
    d.log2_abs() <= cfg.target_log2()
}

/// Nearest integer to `Re z` if `z` sits on a non-positive integer.
fn nonpositive_integer(z: &ComplexHP, cfg: &PrecisionConfig) -> Option<i64> {
    let n = z.re().to_f64().round();
    if n > 0.0 || !n.is_finite() {
        return None;
    }
    let n = n as i64;
    near_integer(z, n, cfg).then_some(n)
}

fn pole(function: &'static str, z: &ComplexHP) -> SpecError {
    SpecError::Pole {
        function,
        at: z.to_string(),
    }
}

/// Bits requested from a series so that the result meets the target.
fn bits_needed(cfg: &PrecisionConfig) -> f64 {
    -cfg.target_log2() + SERIES_SLACK_BITS
}

fn ln_2pi(prec: u32) -> Real {
    Real::pi(prec).mul_i64(2).ln()
}
