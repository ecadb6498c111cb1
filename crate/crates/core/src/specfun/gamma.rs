//! log Γ, Γ, polygamma jets and Γ⁽ⁿ⁾ via the Stirling series with argument
//! shifting.

use crate::bernoulli::even_bernoulli_real;
use crate::complex::{ComplexHP, PrecisionConfig};
use crate::diffpoly::gamma_log_ratio;
use crate::mp::Real;

use super::{bits_needed, check_config, ln_2pi, nonpositive_integer, pole, SpecError};

/// Largest `Re log Γ` accepted before `exp` is reported as overflowing.
const MAX_LOG_MAGNITUDE: f64 = 1.0e8;

/// Shift radius doubling is abandoned beyond this point.
const MAX_SHIFT_RADIUS: f64 = 1.0e6;

/// Minimum real part required of the shifted argument before the
/// asymptotic series is summed.
fn initial_radius(cfg: &PrecisionConfig) -> f64 {
    cfg.shift_threshold.max(0.12 * bits_needed(cfg) + 2.0)
}

fn shift_count(z: &ComplexHP, radius: f64) -> usize {
    let re = z.re().to_f64();
    if re >= radius {
        0
    } else {
        (radius - re).ceil() as usize
    }
}

/// `-2 log₂ cos(θ/2)` for `θ = arg w`: per-power growth of the classical
/// remainder bound `sec^{2K}(θ/2)` away from the positive real axis.
fn sector_penalty(w: &ComplexHP) -> f64 {
    let theta = w.arg().to_f64();
    -2.0 * (theta / 2.0).cos().log2()
}

/// Outcome of summing an asymptotic series at a fixed shifted argument.
enum Series {
    Converged(ComplexHP),
    /// Terms started growing before reaching the target; shift further.
    Diverging,
}

/// Sums `Σ_{k≥1} coeff(k) · B_{2k} · w^{-(2k + offset)}` until the first
/// omitted term, inflated by the sector penalty, is below the target.
fn bernoulli_tail(
    w: &ComplexHP,
    offset: i64,
    coeff: impl Fn(usize, u32) -> Real,
    cfg: &PrecisionConfig,
) -> Result<Series, SpecError> {
    let wp = w.precision();
    let inv = w.recip();
    let inv2 = &inv * &inv;
    let mut pow = inv.powi(2 + offset);
    let penalty = sector_penalty(w);
    let goal = cfg.target_log2() - super::SERIES_SLACK_BITS;
    let mut table = even_bernoulli_real(64, wp);
    let mut sum = ComplexHP::zero(wp);
    let mut prev_mag = f64::INFINITY;
    for k in 1..=cfg.max_series_terms {
        if k > table.len() {
            table = even_bernoulli_real(2 * table.len(), wp);
        }
        let term = pow.scale(&(&table[k - 1] * &coeff(k, wp)));
        let mag = term.abs().log2_abs();
        if mag + (2 * k) as f64 * penalty < goal {
            return Ok(Series::Converged(sum));
        }
        if mag > prev_mag {
            return Ok(Series::Diverging);
        }
        prev_mag = mag;
        sum = &sum + &term;
        pow = &pow * &inv2;
    }
    Err(SpecError::PrecisionUnreachable { what: "Stirling series" })
}

/// Runs `eval` at `z + N` for growing `N` until the series converges.
fn with_shift<T>(
    z: &ComplexHP,
    cfg: &PrecisionConfig,
    what: &'static str,
    mut eval: impl FnMut(&ComplexHP, usize) -> Result<Option<T>, SpecError>,
) -> Result<T, SpecError> {
    let mut radius = initial_radius(cfg);
    while radius <= MAX_SHIFT_RADIUS {
        let n = shift_count(z, radius);
        let w = z.add_i64(n as i64);
        if let Some(out) = eval(&w, n)? {
            return Ok(out);
        }
        radius *= 2.0;
    }
    Err(SpecError::PrecisionUnreachable { what })
}

/// Principal branch of `log Γ(z)`.
///
/// Uses `log Γ(w) = (w - ½) log w - w + ½ log 2π + Σ B_{2k}/(2k(2k-1) w^{2k-1})`
/// at `w = z + N` and `log Γ(z) = log Γ(w) - Σ_{j<N} log(z + j)`. For
/// `Re z ≤ 0` the result is the continuation along that recurrence.
pub fn log_gamma(z: &ComplexHP, cfg: &PrecisionConfig) -> Result<ComplexHP, SpecError> {
    check_config(cfg)?;
    if nonpositive_integer(z, cfg).is_some() {
        return Err(pole("log_gamma", z));
    }
    let wp = cfg.working_bits() + 16;
    let z = z.rounded(wp);
    let value = with_shift(&z, cfg, "log_gamma", |w, n| {
        let tail = match bernoulli_tail(
            w,
            -1,
            |k, p| {
                let k = k as i64;
                Real::with_i64(1, p).div_i64(2 * k * (2 * k - 1))
            },
            cfg,
        )? {
            Series::Converged(t) => t,
            Series::Diverging => return Ok(None),
        };
        let half = Real::with_f64(0.5, wp);
        let main = &(&w.add_real(&-&half) * &w.ln()) - w;
        let mut acc = main.add_real(&ln_2pi(wp).mul_pow2(-1)) + tail;
        for j in 0..n {
            acc = &acc - &z.add_i64(j as i64).ln();
        }
        Ok(Some(acc))
    })?;
    Ok(value.rounded(cfg.precision_bits))
}

/// `Γ(z) = exp(log Γ(z))`.
pub fn gamma(z: &ComplexHP, cfg: &PrecisionConfig) -> Result<ComplexHP, SpecError> {
    let wide = PrecisionConfig {
        precision_bits: cfg.precision_bits + 16,
        ..cfg.clone()
    };
    let lg = log_gamma(z, &wide)?;
    if lg.re().to_f64() > MAX_LOG_MAGNITUDE {
        return Err(SpecError::Overflow("gamma"));
    }
    let g = lg.exp();
    if !g.is_finite() {
        return Err(SpecError::Overflow("gamma"));
    }
    Ok(g.rounded(cfg.precision_bits))
}

/// `(ψ(z), ψ'(z), …, ψ⁽ⁿᵐᵃˣ⁾(z))`.
///
/// At the shifted point `w`:
/// `ψ(w) = log w - 1/(2w) - Σ B_{2k}/(2k w^{2k})` and, for `m ≥ 1`,
/// `ψ⁽ᵐ⁾(w) = (-1)^{m+1} [(m-1)!/w^m + m!/(2w^{m+1}) + Σ B_{2k} (2k+m-1)!/(2k)! w^{-(2k+m)}]`;
/// then `ψ⁽ᵐ⁾(z) = ψ⁽ᵐ⁾(w) - (-1)^m m! Σ_{j<N} (z+j)^{-(m+1)}`.
pub fn digamma_jet(
    z: &ComplexHP,
    n_max: usize,
    cfg: &PrecisionConfig,
) -> Result<Vec<ComplexHP>, SpecError> {
    check_config(cfg)?;
    if nonpositive_integer(z, cfg).is_some() {
        return Err(pole("digamma", z));
    }
    // m! growth in the derivative orders eats into the absolute target
    let extra: u32 = (1..=n_max as u32).map(|m| (m as f64).log2().ceil() as u32).sum();
    let wp = cfg.working_bits() + 16 + extra;
    let z = z.rounded(wp);
    let jet = with_shift(&z, cfg, "digamma_jet", |w, n| {
        let mut values = Vec::with_capacity(n_max + 1);
        for m in 0..=n_max {
            let coeff = |k: usize, p: u32| -> Real {
                if m == 0 {
                    return Real::with_i64(1, p).div_i64(2 * k as i64);
                }
                // (2k+m-1)!/(2k)! = (2k+1)(2k+2)…(2k+m-1)
                let mut c = Real::with_i64(1, p);
                for i in 1..m {
                    c = c.mul_i64((2 * k + i) as i64);
                }
                c
            };
            let tail = match bernoulli_tail(w, m as i64, coeff, cfg)? {
                Series::Converged(t) => t,
                Series::Diverging => return Ok(None),
            };
            let inv = w.recip();
            let value = if m == 0 {
                &(&w.ln() - &inv.div_i64(2)) - &tail
            } else {
                let fact_m1 = factorial(m - 1, wp);
                let fact_m = factorial(m, wp);
                let lead = inv.powi(m as i64).scale(&fact_m1)
                    + inv.powi(m as i64 + 1).scale(&fact_m.mul_pow2(-1));
                let s = &lead + &tail;
                if m % 2 == 1 {
                    s
                } else {
                    -s
                }
            };
            values.push(value);
        }
        // undo the shift
        let mut corrections = vec![ComplexHP::zero(wp); n_max + 1];
        for j in 0..n {
            let inv = z.add_i64(j as i64).recip();
            let mut p = inv.clone();
            for corr in corrections.iter_mut() {
                *corr = &*corr + &p;
                p = &p * &inv;
            }
        }
        for (m, (v, corr)) in values.iter_mut().zip(&corrections).enumerate() {
            let scaled = corr.scale(&factorial(m, wp));
            *v = if m % 2 == 0 { &*v - &scaled } else { &*v + &scaled };
        }
        Ok(Some(values))
    })?;
    Ok(jet.into_iter().map(|v| v.rounded(cfg.precision_bits)).collect())
}

/// `Γ⁽ⁿ⁾(z) = Γ(z) · R_n(ψ(z), ψ'(z), …, ψ⁽ⁿ⁻¹⁾(z))`.
pub fn gamma_deriv(z: &ComplexHP, n: u32, cfg: &PrecisionConfig) -> Result<ComplexHP, SpecError> {
    let g = gamma(z, cfg)?;
    if n == 0 {
        return Ok(g);
    }
    let ratio = gamma_log_ratio(n)?;
    let wide = PrecisionConfig {
        precision_bits: cfg.precision_bits + 16,
        ..cfg.clone()
    };
    let jet = digamma_jet(z, n as usize - 1, &wide)?;
    let value = ratio.evaluate(&jet)?;
    Ok((&g.rounded(wide.precision_bits) * &value).rounded(cfg.precision_bits))
}

pub(crate) fn factorial(n: usize, prec: u32) -> Real {
    let mut f = Real::with_i64(1, prec);
    for i in 2..=n {
        f = f.mul_i64(i as i64);
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(bits: u32) -> PrecisionConfig {
        PrecisionConfig::new(bits)
    }

    fn c(re: f64, im: f64) -> ComplexHP {
        ComplexHP::from_f64(re, im, 256)
    }

    fn close(a: &ComplexHP, b: &ComplexHP, log2_tol: f64) -> bool {
        a.distance(b).log2_abs() < log2_tol
    }

    #[test]
    fn log_gamma_classical_values() {
        let cfg = cfg(256);
        let at1 = log_gamma(&c(1.0, 0.0), &cfg).unwrap();
        assert!(at1.abs().log2_abs() < -240.0);
        let at_half = log_gamma(&c(0.5, 0.0), &cfg).unwrap();
        let expected = Real::pi(256).ln().mul_pow2(-1);
        assert!(close(&at_half, &ComplexHP::from_real(expected), -240.0));
    }

    #[test]
    fn gamma_classical_values() {
        let cfg = cfg(256);
        let g5 = gamma(&c(5.0, 0.0), &cfg).unwrap();
        assert!(close(&g5, &ComplexHP::from_i64(24, 256), -240.0));
        let g_half = gamma(&c(0.5, 0.0), &cfg).unwrap();
        let sqrt_pi = ComplexHP::from_real(Real::pi(256).sqrt());
        assert!(close(&g_half, &sqrt_pi, -240.0));
        // MPFR's independent real Γ
        let g34 = gamma(&c(0.75, 0.0), &cfg).unwrap();
        let reference = Real::with_f64(0.75, 256).mpfr_gamma();
        assert!(close(&g34, &ComplexHP::from_real(reference), -240.0));
        assert!(g34.re().to_decimal_string().starts_with("1.2254167024"));
    }

    #[test]
    fn poles_are_rejected() {
        let cfg = cfg(128);
        for n in [0.0, -1.0, -7.0] {
            assert!(matches!(
                log_gamma(&ComplexHP::from_f64(n, 0.0, 128), &cfg),
                Err(SpecError::Pole { .. })
            ));
            assert!(matches!(
                digamma_jet(&ComplexHP::from_f64(n, 0.0, 128), 2, &cfg),
                Err(SpecError::Pole { .. })
            ));
        }
        // near but not on a pole is fine
        assert!(gamma(&ComplexHP::from_f64(-1.5, 0.0, 128), &cfg).is_ok());
    }

    #[test]
    fn negative_real_axis_uses_recurrence() {
        let cfg = cfg(128);
        // Γ(-1/2) = -2√π
        let g = gamma(&ComplexHP::from_f64(-0.5, 0.0, 128), &cfg).unwrap();
        let expected = Real::pi(128).sqrt().mul_i64(-2);
        assert!(close(&g, &ComplexHP::from_real(expected), -110.0));
    }

    #[test]
    fn digamma_at_one_is_minus_euler() {
        let cfg = cfg(256);
        let jet = digamma_jet(&c(1.0, 0.0), 0, &cfg).unwrap();
        assert_eq!(jet.len(), 1);
        let expected = -Real::euler_gamma(256);
        assert!(close(&jet[0], &ComplexHP::from_real(expected), -240.0));
    }

    #[test]
    fn polygamma_at_one_is_zeta() {
        // ψ⁽ᵐ⁾(1) = (-1)^{m+1} m! ζ(m+1)
        let cfg = cfg(200);
        let jet = digamma_jet(&ComplexHP::from_f64(1.0, 0.0, 200), 6, &cfg).unwrap();
        for m in 1..=6usize {
            let z = Real::with_i64(m as i64 + 1, 256).mpfr_zeta();
            let mut expected = z * factorial(m, 256);
            if m % 2 == 0 {
                expected = -expected;
            }
            assert!(
                close(&jet[m], &ComplexHP::from_real(expected), -180.0),
                "m = {m}"
            );
        }
    }

    #[test]
    fn digamma_large_argument_matches_stirling_form() {
        let cfg = cfg(128);
        let z = 1.0e6;
        let psi = digamma_jet(&ComplexHP::from_f64(z, 0.0, 128), 0, &cfg).unwrap();
        let approx = Real::with_f64(z, 128).ln() - Real::with_f64(0.5 / z, 128);
        assert!((psi[0].re() - &approx).abs().to_f64() < 1e-12);

        let z = 1.0e4;
        let jet = digamma_jet(&ComplexHP::from_f64(z, 0.0, 128), 1, &cfg).unwrap();
        assert!((jet[1].re().to_f64() * z - 1.0).abs() < 1e-3);
    }

    #[test]
    fn gamma_deriv_examples() {
        let cfg = cfg(256);
        let g1 = gamma_deriv(&c(1.0, 0.0), 1, &cfg).unwrap();
        assert!(close(&g1, &ComplexHP::from_real(-Real::euler_gamma(256)), -240.0));

        let z5 = c(5.0, 0.0);
        let jet = digamma_jet(&z5, 1, &cfg).unwrap();
        let expected = (&jet[1] + &(&jet[0] * &jet[0])).mul_i64(24);
        let g2 = gamma_deriv(&z5, 2, &cfg).unwrap();
        assert!(close(&g2, &expected, -236.0));

        let g0 = gamma_deriv(&z5, 0, &cfg).unwrap();
        assert!(close(&g0, &ComplexHP::from_i64(24, 256), -240.0));
    }

    #[test]
    fn recurrence_on_complex_grid() {
        let cfg = cfg(128);
        for (re, im) in [(0.5, 0.0), (0.75, 3.0), (1.3, -17.0), (2.0, 50.0), (0.9, 33.3)] {
            let z = ComplexHP::from_f64(re, im, 128);
            let lhs = gamma(&z.add_i64(1), &cfg).unwrap();
            let rhs = &z * &gamma(&z, &cfg).unwrap();
            let scale = lhs.abs().log2_abs().max(0.0);
            assert!(close(&lhs, &rhs, cfg.target_log2() + 4.0 + scale), "z = {z}");
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]

        #[test]
        fn recurrence_on_random_points(re in 0.5f64..2.0, im in -50.0f64..50.0) {
            let cfg = cfg(128);
            let z = ComplexHP::from_f64(re, im, 128);
            let lhs = gamma(&z.add_i64(1), &cfg).unwrap();
            let rhs = &z * &gamma(&z, &cfg).unwrap();
            let budget = cfg.target_log2() + 10f64.log2();
            proptest::prop_assert!(lhs.distance(&rhs).log2_abs() < budget, "z = {}", z);
        }

        #[test]
        fn digamma_is_log_derivative(re in 0.5f64..20.0, im in -40.0f64..40.0) {
            let cfg = cfg(128);
            let z = ComplexHP::from_f64(re, im, 128);
            let h = Real::with_f64(1e-8, 128);
            let up = log_gamma(&z.add_real(&h), &cfg).unwrap();
            let down = log_gamma(&z.add_real(&-&h), &cfg).unwrap();
            let fd = (up - down).scale(&h.mul_i64(2).powi(-1));
            let psi = &digamma_jet(&z, 0, &cfg).unwrap()[0];
            let rel = fd.distance(psi).to_f64() / psi.abs().to_f64().max(1e-300);
            proptest::prop_assert!(rel < 1e-6, "z = {}: {}", z, rel);
        }
    }
}
