//! Sampling the curve `γ(y) = (ζ, ζ', …, ζ⁽ᵐ⁾)(x + iy)` and searching it for
//! close approaches to a target vector in `ℂ^{m+1}`.
//!
//! Universality says the curve is dense for `1/2 < x < 1`; a finite scan
//! can only report how close it got.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::complex::{ComplexHP, PrecisionConfig};
use crate::mp::Real;
use crate::specfun::{zeta_jet, SpecError};

pub const DEFAULT_X: f64 = 0.75;
pub const DEFAULT_STEP: f64 = 0.05;
/// Largest derivative order accepted.
pub const MAX_ORDER: u32 = 6;

const GOLDEN_ITERATIONS: usize = 60;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VoroninError {
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveSample {
    pub y: f64,
    pub values: Vec<ComplexHP>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproachResult {
    pub best_y: f64,
    pub distance: Real,
    pub samples_scanned: usize,
    pub range: (f64, f64),
}

fn check_params(m: u32, x: f64) -> Result<(), VoroninError> {
    if !(x > 0.5 && x < 1.0) {
        return Err(VoroninError::Domain(format!("x = {x} must lie strictly between 1/2 and 1")));
    }
    if m > MAX_ORDER {
        return Err(VoroninError::Domain(format!("m = {m} exceeds {MAX_ORDER}")));
    }
    Ok(())
}

/// `γ(y)` at abscissa `x`.
pub fn gamma_curve(y: f64, m: u32, x: f64, cfg: &PrecisionConfig) -> Result<CurveSample, VoroninError> {
    check_params(m, x)?;
    if !y.is_finite() {
        return Err(VoroninError::Domain(format!("y = {y} is not finite")));
    }
    let s = ComplexHP::from_f64(x, y, cfg.precision_bits);
    Ok(CurveSample {
        y,
        values: zeta_jet(&s, m as usize, cfg)?,
    })
}

/// Euclidean distance in `ℂ^{m+1}`.
pub fn curve_distance(values: &[ComplexHP], target: &[ComplexHP]) -> Real {
    let prec = values.first().map_or(128, ComplexHP::precision);
    let mut acc = Real::new(prec);
    for (v, t) in values.iter().zip(target) {
        acc = acc + (v - t).norm_sqr();
    }
    acc.sqrt()
}

struct Probe<'a> {
    target: &'a [ComplexHP],
    m: u32,
    x: f64,
    cfg: &'a PrecisionConfig,
}

impl Probe<'_> {
    fn distance(&self, y: f64) -> Result<Real, VoroninError> {
        let sample = gamma_curve(y, self.m, self.x, self.cfg)?;
        Ok(curve_distance(&sample.values, self.target))
    }

    /// Distances at each grid point, in grid order.
    fn scan(&self, ys: &[f64]) -> Result<Vec<Real>, VoroninError> {
        ys.par_iter().map(|&y| self.distance(y)).collect()
    }

    /// Golden-section search on `[a, b]`, returning the best point seen.
    fn refine(&self, a: f64, b: f64, start: (f64, Real)) -> Result<(f64, Real), VoroninError> {
        let mut best = start;
        if b <= a {
            return Ok(best);
        }
        let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
        let (mut a, mut b) = (a, b);
        let mut c = b - inv_phi * (b - a);
        let mut d = a + inv_phi * (b - a);
        let mut fc = self.distance(c)?;
        let mut fd = self.distance(d)?;
        for _ in 0..GOLDEN_ITERATIONS {
            for (y, f) in [(c, &fc), (d, &fd)] {
                if *f < best.1 || (*f == best.1 && y < best.0) {
                    best = (y, f.clone());
                }
            }
            if b - a <= 1e-13 * b.abs().max(1.0) {
                break;
            }
            if fc <= fd {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = self.distance(c)?;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = self.distance(d)?;
            }
        }
        Ok(best)
    }
}

fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    (0..count).map(|i| lo + i as f64 * step).filter(|&y| y <= hi).collect()
}

fn check_range(range: (f64, f64), step: f64) -> Result<(), VoroninError> {
    if !(range.0.is_finite() && range.1.is_finite() && range.0 <= range.1) {
        return Err(VoroninError::Domain(format!("bad range {}:{}", range.0, range.1)));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(VoroninError::Domain(format!("step {step} must be positive")));
    }
    Ok(())
}

fn check_target(target: &[ComplexHP], m: u32) -> Result<(), VoroninError> {
    if target.len() != m as usize + 1 {
        return Err(VoroninError::Domain(format!(
            "target has {} entries but m = {m} needs {}",
            target.len(),
            m + 1
        )));
    }
    Ok(())
}

/// Smallest index of the minimum; ties go to the smaller `y`.
fn argmin(values: &[Real]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v < values[best] {
            best = i;
        }
    }
    best
}

/// Grid scan of `range` with spacing `step`, then one golden-section pass
/// over the grid cells either side of the best point.
pub fn nearest_approach(
    target: &[ComplexHP],
    range: (f64, f64),
    step: f64,
    m: u32,
    x: f64,
    cfg: &PrecisionConfig,
) -> Result<ApproachResult, VoroninError> {
    check_params(m, x)?;
    check_target(target, m)?;
    check_range(range, step)?;
    let probe = Probe { target, m, x, cfg };
    let ys = grid(range.0, range.1, step);
    let dist = probe.scan(&ys)?;
    let i = argmin(&dist);
    let (a, b) = ((ys[i] - step).max(range.0), (ys[i] + step).min(range.1));
    let (best_y, distance) = probe.refine(a, b, (ys[i], dist[i].clone()))?;
    Ok(ApproachResult {
        best_y,
        distance,
        samples_scanned: ys.len(),
        range,
    })
}

/// [`nearest_approach`] over nested, growing ranges. The grid of the
/// outermost range is evaluated once; each range keeps the better of its
/// own refined minimum and the previous range's result, so the distances
/// never increase.
pub fn density_trend(
    target: &[ComplexHP],
    ranges: &[(f64, f64)],
    step: f64,
    m: u32,
    x: f64,
    cfg: &PrecisionConfig,
) -> Result<Vec<ApproachResult>, VoroninError> {
    check_params(m, x)?;
    check_target(target, m)?;
    let Some(outer) = ranges.last().copied() else {
        return Ok(Vec::new());
    };
    for r in ranges {
        check_range(*r, step)?;
    }
    for w in ranges.windows(2) {
        if w[1].0 > w[0].0 || w[1].1 < w[0].1 {
            return Err(VoroninError::Domain("ranges must be nested and growing".into()));
        }
    }
    let probe = Probe { target, m, x, cfg };
    let ys = grid(outer.0, outer.1, step);
    let dist = probe.scan(&ys)?;

    let mut out: Vec<ApproachResult> = Vec::with_capacity(ranges.len());
    for &range in ranges {
        let inside: Vec<usize> = (0..ys.len())
            .filter(|&i| ys[i] >= range.0 && ys[i] <= range.1)
            .collect();
        let mut result = if let Some(&first) = inside.first() {
            let mut i = first;
            for &k in &inside {
                if dist[k] < dist[i] {
                    i = k;
                }
            }
            let (a, b) = ((ys[i] - step).max(range.0), (ys[i] + step).min(range.1));
            let (best_y, distance) = probe.refine(a, b, (ys[i], dist[i].clone()))?;
            ApproachResult {
                best_y,
                distance,
                samples_scanned: inside.len(),
                range,
            }
        } else {
            // range narrower than the outer grid spacing
            let d = probe.distance(range.0)?;
            ApproachResult {
                best_y: range.0,
                distance: d,
                samples_scanned: 1,
                range,
            }
        };
        if let Some(prev) = out.last() {
            if prev.distance < result.distance {
                result.best_y = prev.best_y;
                result.distance = prev.distance.clone();
            }
        }
        out.push(result);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::new(128)
    }

    #[test]
    fn real_axis_sample() {
        let s = gamma_curve(0.0, 1, 0.75, &cfg()).unwrap();
        let (re, im) = s.values[0].to_f64();
        assert!((re + 3.441).abs() < 1e-3 && im == 0.0, "{re}");
        let reference = Real::with_f64(0.75, 128).mpfr_zeta();
        assert!((s.values[0].re() - &reference).abs().log2_abs() < -110.0);
        assert!(s.values[1].im().is_zero());
    }

    #[test]
    fn domain_checks() {
        assert!(matches!(gamma_curve(1.0, 0, 0.4, &cfg()), Err(VoroninError::Domain(_))));
        assert!(matches!(gamma_curve(1.0, 0, 1.0, &cfg()), Err(VoroninError::Domain(_))));
        assert!(matches!(gamma_curve(1.0, 7, 0.75, &cfg()), Err(VoroninError::Domain(_))));
        let t = vec![ComplexHP::one(128)];
        assert!(nearest_approach(&t, (0.0, 1.0), 0.1, 1, 0.75, &cfg()).is_err());
        assert!(nearest_approach(&t, (2.0, 1.0), 0.1, 0, 0.75, &cfg()).is_err());
    }

    #[test]
    fn conjugate_symmetry() {
        let a = gamma_curve(17.3, 2, 0.75, &cfg()).unwrap();
        let b = gamma_curve(-17.3, 2, 0.75, &cfg()).unwrap();
        for (x, y) in a.values.iter().zip(&b.values) {
            assert!(x.distance(&y.conj()).log2_abs() < -110.0);
        }
    }

    #[test]
    fn degenerate_range_scans_once() {
        let t = vec![ComplexHP::one(128)];
        let r = nearest_approach(&t, (3.0, 3.0), 0.05, 0, 0.75, &cfg()).unwrap();
        assert_eq!(r.samples_scanned, 1);
        assert_eq!(r.best_y, 3.0);
        let direct = gamma_curve(3.0, 0, 0.75, &cfg()).unwrap();
        assert_eq!(r.distance, curve_distance(&direct.values, &t));
    }

    #[test]
    fn self_approach_on_grid() {
        let target = gamma_curve(14.0, 1, 0.75, &cfg()).unwrap().values;
        let r = nearest_approach(&target, (10.0, 18.0), 0.5, 1, 0.75, &cfg()).unwrap();
        assert!(r.distance.to_f64() < 1e-6);
        assert!((r.best_y - 14.0).abs() < 1e-6);
    }

    #[test]
    fn nested_minima_do_not_increase() {
        let target = vec![ComplexHP::from_f64(0.5, 0.0, 128)];
        let trend = density_trend(&target, &[(0.0, 5.0), (0.0, 12.0), (0.0, 30.0)], 0.25, 0, 0.75, &cfg())
            .unwrap();
        assert_eq!(trend.len(), 3);
        for w in trend.windows(2) {
            assert!(w[1].distance <= w[0].distance);
        }
        let single = density_trend(&target, &[(0.0, 5.0)], 0.25, 0, 0.75, &cfg()).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].samples_scanned, 21);
    }
}
