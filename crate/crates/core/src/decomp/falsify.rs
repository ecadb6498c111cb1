//! Numeric evidence that a candidate `P` does not vanish along
//! `z = 3/4 + iy`: the lowest nonzero homogeneous part is evaluated and
//! compared against its predicted leading growth.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::rearrange::{b_hat, envelope, first_nonzero_b};
use super::{homogeneous_parts, DecompError, PolySpec};
use crate::complex::{ComplexHP, PrecisionConfig};
use crate::diffpoly::gamma_log_ratio;
use crate::mp::Real;
use crate::specfun::{digamma_jet, gamma, gamma_deriv, zeta_jet};

/// Random `u` vectors added to the curve samples when locating `(q₀, t₀)`.
pub const RANDOM_U_SAMPLES: usize = 8;

/// Real part of the sampling line.
pub const LINE_RE: f64 = 0.75;

const BAND: (f64, f64) = (0.25, 4.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    NonvanishingEvidence,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct DominanceSample {
    pub y: f64,
    /// `|P_{p₀}(ζ…; 1, Γ⁽ⁿ⁾/Γ, Γ⁽ˡ⁾/Γ)(3/4 + iy)|`
    pub measured: Real,
    /// `|b_{q₀,t₀}(γ(y))| · envelope`
    pub predicted: Real,
    pub ratio: Real,
}

#[derive(Debug, Clone, Serialize)]
pub struct DominanceReport {
    pub p0: u64,
    pub q0: u64,
    pub t0: u64,
    /// `b_{q₀,t₀}` at the last curve sample.
    pub b_hat_value: ComplexHP,
    pub samples: Vec<DominanceSample>,
    pub verdict: Verdict,
}

fn line_point(y: f64, prec: u32) -> ComplexHP {
    ComplexHP::from_f64(LINE_RE, y, prec)
}

fn monomial_value(
    u_exp: &[u32],
    lambda: &super::LambdaTriple,
    u: &[ComplexHP],
    v: &[ComplexHP; 3],
) -> ComplexHP {
    let prec = v[0].precision();
    let mut acc = ComplexHP::one(prec);
    for (k, &e) in u_exp.iter().enumerate() {
        if e > 0 {
            acc = &acc * &u[k].powi(e as i64);
        }
    }
    for (x, e) in v.iter().zip([lambda.l0, lambda.ln, lambda.ll]) {
        if e > 0 {
            acc = &acc * &x.powi(e as i64);
        }
    }
    acc
}

fn substitute(p: &PolySpec, u: &[ComplexHP], v: &[ComplexHP; 3]) -> ComplexHP {
    let mut acc = ComplexHP::zero(v[0].precision());
    for ((e, l), c) in p.terms() {
        acc = &acc + &(c * &monomial_value(e, l, u, v));
    }
    acc
}

/// `P(ζ, …, ζ⁽ᵐ⁾; Γ, Γ⁽ⁿ⁾, Γ⁽ˡ⁾)(z)`.
pub fn evaluate_p(p: &PolySpec, z: &ComplexHP, cfg: &PrecisionConfig) -> Result<ComplexHP, DecompError> {
    let spec = p.spec();
    let u = zeta_jet(z, spec.m as usize, cfg)?;
    let v = [gamma(z, cfg)?, gamma_deriv(z, spec.n, cfg)?, gamma_deriv(z, spec.l, cfg)?];
    Ok(substitute(p, &u, &v))
}

/// ζ-jet and `(1, Γ⁽ⁿ⁾/Γ, Γ⁽ˡ⁾/Γ)` at `z`.
fn ratio_inputs(
    p: &PolySpec,
    z: &ComplexHP,
    cfg: &PrecisionConfig,
) -> Result<(Vec<ComplexHP>, [ComplexHP; 3]), DecompError> {
    let spec = p.spec();
    let u = zeta_jet(z, spec.m as usize, cfg)?;
    let jet = digamma_jet(z, spec.l as usize - 1, cfg)?;
    let rn = gamma_log_ratio(spec.n).map_err(crate::specfun::SpecError::from)?;
    let rl = gamma_log_ratio(spec.l).map_err(crate::specfun::SpecError::from)?;
    let eval = |r: &crate::diffpoly::DiffPoly| {
        r.evaluate(&jet).map_err(|e| DecompError::Spec(e.into()))
    };
    let v = [ComplexHP::one(cfg.precision_bits), eval(&rn)?, eval(&rl)?];
    Ok((u, v))
}

/// `P(ζ, …, ζ⁽ᵐ⁾; 1, Γ⁽ⁿ⁾/Γ, Γ⁽ˡ⁾/Γ)(z)`; for a part homogeneous in `|λ|`
/// this is `P_p(…; Γ, Γ⁽ⁿ⁾, Γ⁽ˡ⁾)/Γ^p` without forming `Γ`.
pub fn evaluate_ratio_form(
    p: &PolySpec,
    z: &ComplexHP,
    cfg: &PrecisionConfig,
) -> Result<ComplexHP, DecompError> {
    let (u, v) = ratio_inputs(p, z, cfg)?;
    Ok(substitute(p, &u, &v))
}

/// `γ(y) = (ζ, …, ζ⁽ᵐ⁾)(3/4 + iy)` for each `y`, followed by
/// [`RANDOM_U_SAMPLES`] seeded vectors with entries in `[-2, 2] + [-2, 2]i`.
pub fn u_samples(
    m: u32,
    ys: &[f64],
    seed: u64,
    cfg: &PrecisionConfig,
) -> Result<Vec<Vec<ComplexHP>>, DecompError> {
    let prec = cfg.precision_bits;
    let mut out: Vec<Vec<ComplexHP>> = ys
        .par_iter()
        .map(|&y| zeta_jet(&line_point(y, prec), m as usize, cfg))
        .collect::<Result<_, _>>()?;
    out.extend(random_vectors(m, seed, prec));
    Ok(out)
}

fn random_vectors(m: u32, seed: u64, prec: u32) -> Vec<Vec<ComplexHP>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..RANDOM_U_SAMPLES)
        .map(|_| {
            (0..=m)
                .map(|_| {
                    let re = rng.random_range(-2.0..2.0);
                    let im = rng.random_range(-2.0..2.0);
                    ComplexHP::from_f64(re, im, prec)
                })
                .collect()
        })
        .collect()
}

/// Compares `|P_{p₀}|` on `3/4 + iy` with `|b_{q₀,t₀}| · |log z|^{q₀-2t₀}/|z|^{t₀}`.
///
/// `p₀` is the smallest `|λ|` with a nonzero part. The verdict is
/// `NonvanishingEvidence` when every ratio in the trailing half of the
/// samples lies in `[0.25, 4]`. This is evidence, never proof.
pub fn falsify(
    p: &PolySpec,
    ys: &[f64],
    cfg: &PrecisionConfig,
    seed: u64,
) -> Result<DominanceReport, DecompError> {
    if p.is_zero() {
        return Err(DecompError::ZeroSpec);
    }
    if ys.is_empty() {
        return Err(DecompError::Domain("no sample heights given".into()));
    }
    if ys.windows(2).any(|w| w[1] < w[0]) || ys[0] < 5.0 || ys.iter().any(|y| !y.is_finite()) {
        return Err(DecompError::Domain(
            "sample heights must be sorted, finite and at least 5".into(),
        ));
    }
    let parts = homogeneous_parts(p);
    let (&p0, pp) = parts.iter().next().expect("nonzero polynomial has a part");
    let prec = cfg.precision_bits;
    let m = p.spec().m;

    let evaluated: Vec<(Vec<ComplexHP>, ComplexHP)> = ys
        .par_iter()
        .map(|&y| {
            let z = line_point(y, prec);
            let (u, v) = ratio_inputs(pp, &z, cfg)?;
            let value = substitute(pp, &u, &v);
            Ok((u, value))
        })
        .collect::<Result<_, DecompError>>()?;

    let mut samples_u: Vec<Vec<ComplexHP>> = evaluated.iter().map(|(u, _)| u.clone()).collect();
    samples_u.extend(random_vectors(m, seed, prec));
    let (q0, t0) = first_nonzero_b(pp, &samples_u).ok_or(DecompError::AllZeroCoefficients)?;

    let mut samples = Vec::with_capacity(ys.len());
    let mut last_b = ComplexHP::zero(prec);
    for (&y, (u, value)) in ys.iter().zip(&evaluated) {
        let b = b_hat(pp, q0, t0, u);
        let env = envelope(q0, t0, &line_point(y, prec))?;
        let predicted = &b.abs() * &env;
        let measured = value.abs();
        let ratio = &measured / &predicted;
        samples.push(DominanceSample {
            y,
            measured,
            predicted,
            ratio,
        });
        last_b = b;
    }
    let trailing = &samples[samples.len() / 2..];
    let verdict = if trailing
        .iter()
        .map(|s| s.ratio.to_f64())
        .all(|r| r.is_finite() && (BAND.0..=BAND.1).contains(&r))
    {
        Verdict::NonvanishingEvidence
    } else {
        Verdict::Inconclusive
    };
    Ok(DominanceReport {
        p0,
        q0,
        t0,
        b_hat_value: last_b,
        samples,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{LambdaTriple, VarSpec};

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::new(128)
    }

    #[test]
    fn evaluate_examples() {
        let s = VarSpec::new(0, 1, 2).unwrap();
        let v0 = PolySpec::v(s, LambdaTriple::new(1, 0, 0), 128);
        let at5 = evaluate_p(&v0, &ComplexHP::from_i64(5, 128), &cfg()).unwrap();
        assert!(at5.distance(&ComplexHP::from_i64(24, 128)).log2_abs() < -100.0);

        let u0 = PolySpec::u(s, 0, 128);
        let at2 = evaluate_p(&u0, &ComplexHP::from_i64(2, 128), &cfg()).unwrap();
        let pi = Real::pi(128);
        let z2 = ComplexHP::from_real((&pi * &pi).div_i64(6));
        assert!(at2.distance(&z2).log2_abs() < -100.0);
    }

    #[test]
    fn pure_gamma_term_has_unit_ratio() {
        let s = VarSpec::new(0, 1, 2).unwrap();
        let v0 = PolySpec::v(s, LambdaTriple::new(1, 0, 0), 128);
        let ys: Vec<f64> = (1..=4).map(|k| 10.0 * k as f64).collect();
        let report = falsify(&v0, &ys, &cfg(), 0).unwrap();
        assert_eq!((report.p0, report.q0, report.t0), (1, 0, 0));
        assert!(report.samples.iter().all(|s| (s.ratio.to_f64() - 1.0).abs() < 1e-30));
        assert_eq!(report.verdict, Verdict::NonvanishingEvidence);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        let s = VarSpec::new(0, 1, 2).unwrap();
        let v0u0 = PolySpec::v(s, LambdaTriple::new(1, 0, 0), 128).mul(&PolySpec::u(s, 0, 128));
        assert_eq!(
            falsify(&v0u0.sub(&v0u0), &[10.0], &cfg(), 0).unwrap_err(),
            DecompError::ZeroSpec
        );
    }

    #[test]
    fn seeded_samples_are_reproducible() {
        let a = u_samples(1, &[10.0], 7, &cfg()).unwrap();
        let b = u_samples(1, &[10.0], 7, &cfg()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 1 + RANDOM_U_SAMPLES);
        let c = u_samples(1, &[10.0], 8, &cfg()).unwrap();
        assert_ne!(a[1], c[1]);
    }
}
