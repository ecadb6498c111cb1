//! Large-|z| behaviour of the digamma jet: the correction terms `ε_n`,
//! the limits of `f'/f²` and `f''/(f f')`, and the modulus of `Γ` on the
//! line `Re z = 3/4`.
//!
//! `ε_n` is defined through `Γ⁽ⁿ⁾/Γ = fⁿ [1 + (f'/f²)(c_n + ε_n)]`. It is
//! computed from the exact remainder `R_n - fⁿ - c_n f^{n-2} f'`, so the
//! cancellation between `R_n` and `fⁿ` happens symbolically.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexHP, PrecisionConfig};
use crate::diffpoly::{c_coefficient, gamma_log_ratio, DiffPoly, DiffPolyError, JetExponents};
use crate::mp::Real;
use crate::specfun::{digamma_jet, log_gamma, SpecError};

/// Smallest modulus accepted by the ε and H evaluators.
pub const MIN_MODULUS: f64 = 10.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsymError {
    #[error("{at} lies outside the sector |z| >= 10, |arg z| <= pi/2")]
    Sector { at: String },
    #[error("division by a value below the precision floor at {at}")]
    DivisionNearZero { at: String },
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    DiffPoly(#[from] DiffPolyError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticReport {
    pub n: u32,
    #[serde(rename = "points")]
    pub sample_points: Vec<ComplexHP>,
    pub measured: Vec<ComplexHP>,
    pub predicted: Vec<ComplexHP>,
    pub ratios: Vec<ComplexHP>,
    pub converging: bool,
}

fn check_sector(z: &ComplexHP) -> Result<(), AsymError> {
    let r = z.abs().to_f64();
    let arg = z.arg().to_f64();
    if r < MIN_MODULUS || arg.abs() > std::f64::consts::FRAC_PI_2 {
        return Err(AsymError::Sector { at: z.to_string() });
    }
    Ok(())
}

fn below_floor(v: &ComplexHP, cfg: &PrecisionConfig) -> bool {
    v.abs().log2_abs() <= cfg.target_log2()
}

/// `R_n - fⁿ - c_n f^{n-2} f'` as an exact differential polynomial.
pub fn epsilon_remainder(n: u32) -> Result<DiffPoly, DiffPolyError> {
    let mut rest = gamma_log_ratio(n)?;
    rest = &rest - &DiffPoly::monomial(1, JetExponents::new([(0, n)]));
    if n >= 2 {
        let c = c_coefficient(n)?;
        rest = &rest - &DiffPoly::monomial(c, JetExponents::new([(0, n - 2), (1, 1)]));
    }
    Ok(rest)
}

/// `ε_n(z) = ((Γ⁽ⁿ⁾/Γ)/fⁿ - 1) f²/f' - c_n`.
pub fn epsilon_n(z: &ComplexHP, n: u32, cfg: &PrecisionConfig) -> Result<ComplexHP, AsymError> {
    if n == 0 {
        return Err(AsymError::Domain("epsilon_n needs n >= 1".into()));
    }
    check_sector(z)?;
    let wide = cfg.at_precision(cfg.precision_bits + 32);
    let jet = digamma_jet(z, (n as usize).max(2) - 1, &wide)?;
    let (f, f1) = (&jet[0], &jet[1]);
    if below_floor(f1, cfg) || below_floor(f, cfg) {
        return Err(AsymError::DivisionNearZero { at: z.to_string() });
    }
    let rest = epsilon_remainder(n)?;
    if rest.is_zero() {
        return Ok(ComplexHP::zero(cfg.precision_bits));
    }
    let num = rest.evaluate(&jet)?;
    // divide by f^{n-2} f'
    let den = f.powi(n as i64 - 2) * f1;
    Ok((num / den).rounded(cfg.precision_bits))
}

/// `K_n = -n(n-1)(n-2)/6`, the constant in `ε_n ~ K_n/(z log z)`.
pub fn epsilon_leading(n: u32) -> BigRational {
    let n = BigInt::from(n);
    let k: BigInt = -(&n * (&n - 1u32) * (&n - 2u32));
    BigRational::new(k, BigInt::from(6))
}

fn rational_to_complex(r: &BigRational, prec: u32) -> ComplexHP {
    let num = ComplexHP::from_bigint(r.numer(), prec);
    let den = ComplexHP::from_bigint(r.denom(), prec);
    num / den
}

/// `ε_n` along `zs` against `K_n/(z log z)`.
///
/// `converging` holds when `|ratio - 1|` and `|ε_n|` are both
/// non-increasing along `zs` and the last `|ratio - 1|` is below 0.3.
/// When `K_n = 0` a sample whose measured value is below the error target
/// gets ratio 1.
pub fn verify_epsilon(
    n: u32,
    zs: &[ComplexHP],
    cfg: &PrecisionConfig,
) -> Result<AsymptoticReport, AsymError> {
    for w in zs.windows(2) {
        if w[0].abs() > w[1].abs() {
            return Err(AsymError::Domain("sample points must be sorted by modulus".into()));
        }
    }
    let prec = cfg.precision_bits;
    let k = epsilon_leading(n);
    let kc = rational_to_complex(&k, prec);
    let mut measured = Vec::with_capacity(zs.len());
    let mut predicted = Vec::with_capacity(zs.len());
    let mut ratios = Vec::with_capacity(zs.len());
    for z in zs {
        let eps = epsilon_n(z, n, cfg)?;
        let pred = &kc / &(z * &z.ln());
        let ratio = if pred.is_zero() {
            if below_floor(&eps, cfg) || eps.is_zero() {
                ComplexHP::one(prec)
            } else {
                eps.clone()
            }
        } else {
            &eps / &pred
        };
        measured.push(eps);
        predicted.push(pred);
        ratios.push(ratio);
    }
    let deviation: Vec<f64> = ratios
        .iter()
        .map(|r| r.add_i64(-1).abs().to_f64())
        .collect();
    let sizes: Vec<f64> = measured.iter().map(|m| m.abs().to_f64()).collect();
    let converging = deviation.windows(2).all(|w| w[1] <= w[0])
        && sizes.windows(2).all(|w| w[1] <= w[0])
        && deviation.last().is_some_and(|d| *d < 0.3);
    Ok(AsymptoticReport {
        n,
        sample_points: zs.to_vec(),
        measured,
        predicted,
        ratios,
        converging,
    })
}

/// `(H z (log z)², (f''/(f f')) z log z)` with `H = f'/f²`; both tend to
/// `(1, -1)`.
pub fn h_limits(z: &ComplexHP, cfg: &PrecisionConfig) -> Result<(ComplexHP, ComplexHP), AsymError> {
    check_sector(z)?;
    let wide = cfg.at_precision(cfg.precision_bits + 32);
    let jet = digamma_jet(z, 2, &wide)?;
    let (f, f1, f2) = (&jet[0], &jet[1], &jet[2]);
    if below_floor(f1, cfg) || below_floor(f, cfg) {
        return Err(AsymError::DivisionNearZero { at: z.to_string() });
    }
    let log = z.rounded(wide.precision_bits).ln();
    let zl = z * &log;
    let h = (f1 / &(f * f)) * &zl * &log;
    let g = (f2 / &(f * f1)) * &zl;
    Ok((h.rounded(cfg.precision_bits), g.rounded(cfg.precision_bits)))
}

/// `|Γ(3/4 + iy)| / (e^{-πy/2} y^{1/4} √(2π))`, formed from `Re log Γ` so
/// that nothing underflows.
pub fn stirling_modulus_ratio(y: f64, cfg: &PrecisionConfig) -> Result<Real, AsymError> {
    if !(y >= 1.0 && y.is_finite()) {
        return Err(AsymError::Domain(format!("y = {y} must be at least 1")));
    }
    let wide = cfg.at_precision(cfg.precision_bits + 16);
    let wp = wide.precision_bits;
    let yr = Real::with_f64(y, wp);
    let z = ComplexHP::new(Real::with_f64(0.75, wp), yr.clone());
    let lg = log_gamma(&z, &wide)?;
    let pi = Real::pi(wp);
    let log_ref = (-(&pi * &yr).mul_pow2(-1)) + yr.ln().mul_pow2(-2) + pi.mul_i64(2).ln().mul_pow2(-1);
    Ok((lg.re() - &log_ref).exp().rounded(cfg.precision_bits))
}
