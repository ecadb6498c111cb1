//! ζ and its s-derivatives by termwise-differentiated Euler–Maclaurin
//! summation, and the functional-equation residual.
//!
//! Derivatives are carried as truncated Taylor series in an increment `h`
//! of the argument, so `ζ(s + h) = Σ_k ζ⁽ᵏ⁾(s) hᵏ / k!` falls out of the same
//! summation as `ζ(s)`.

use crate::bernoulli::even_bernoulli_real;
use crate::complex::{ComplexHP, PrecisionConfig};
use crate::mp::Real;

use super::gamma::{factorial, gamma};
use super::{bits_needed, check_config, near_integer, nonpositive_integer, pole, SpecError};

const MAX_CUTOFF: usize = 1 << 22;

/// Truncated power series `Σ_{j ≤ order} c_j h^j`.
#[derive(Clone)]
struct Taylor(Vec<ComplexHP>);

impl Taylor {
    fn zero(order: usize, prec: u32) -> Self {
        Taylor(vec![ComplexHP::zero(prec); order + 1])
    }

    fn order(&self) -> usize {
        self.0.len() - 1
    }

    fn add_assign(&mut self, other: &Taylor) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a = &*a + b;
        }
    }

    fn scale(&self, c: &ComplexHP) -> Taylor {
        Taylor(self.0.iter().map(|a| a * c).collect())
    }

    /// `(a + h) · self`
    fn mul_linear(&self, a: &ComplexHP) -> Taylor {
        let mut out = Vec::with_capacity(self.0.len());
        for j in 0..self.0.len() {
            let mut v = &self.0[j] * a;
            if j > 0 {
                v = &v + &self.0[j - 1];
            }
            out.push(v);
        }
        Taylor(out)
    }

    fn mul(&self, other: &Taylor) -> Taylor {
        let prec = self.0[0].precision();
        let mut out = Taylor::zero(self.order(), prec);
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate().take(self.0.len() - i) {
                out.0[i + j] = &out.0[i + j] + &(a * b);
            }
        }
        out
    }

    /// `max_j log₂(|c_j| · j!)`, the size of the largest derivative encoded.
    fn derivative_log2(&self) -> f64 {
        let mut fact = 0.0f64;
        let mut best = f64::NEG_INFINITY;
        for (j, c) in self.0.iter().enumerate() {
            if j > 1 {
                fact += (j as f64).log2();
            }
            best = best.max(c.abs().log2_abs() + fact);
        }
        best
    }
}

/// `(ζ(s), ζ'(s), …, ζ⁽ᵐᵐᵃˣ⁾(s))`.
///
/// Euler–Maclaurin at cutoff `N`:
/// `ζ(s) = Σ_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
///        + Σ_k B_{2k}/(2k)! · s(s+1)…(s+2k-2) · N^{-s-2k+1}`,
/// differentiated termwise in `s`. `N` starts at
/// `max(20, |Im s|/2, 0.12·bits)` and doubles if the correction series
/// stops decreasing before the target is met.
pub fn zeta_jet(
    s: &ComplexHP,
    m_max: usize,
    cfg: &PrecisionConfig,
) -> Result<Vec<ComplexHP>, SpecError> {
    check_config(cfg)?;
    if near_integer(s, 1, cfg) {
        return Err(pole("zeta", s));
    }
    let wp = cfg.working_bits() + 32 + 4 * m_max as u32;
    let s = s.rounded(wp);
    let t = s.im().to_f64().abs();
    let mut cutoff = 20usize
        .max((t / 2.0).ceil() as usize + 1)
        .max((0.12 * bits_needed(cfg)).ceil() as usize + 2);
    while cutoff <= MAX_CUTOFF {
        if let Some(series) = euler_maclaurin(&s, m_max, cutoff, cfg)? {
            return Ok(series
                .0
                .iter()
                .enumerate()
                .map(|(k, c)| c.scale(&factorial(k, wp)).rounded(cfg.precision_bits))
                .collect());
        }
        cutoff *= 2;
    }
    Err(SpecError::PrecisionUnreachable { what: "zeta_jet" })
}

pub fn zeta(s: &ComplexHP, cfg: &PrecisionConfig) -> Result<ComplexHP, SpecError> {
    Ok(zeta_jet(s, 0, cfg)?.remove(0))
}

/// Taylor coefficients of `ζ(s + h)` at one cutoff; `None` when the
/// correction series diverges before meeting the target.
fn euler_maclaurin(
    s: &ComplexHP,
    order: usize,
    cutoff: usize,
    cfg: &PrecisionConfig,
) -> Result<Option<Taylor>, SpecError> {
    let wp = s.precision();
    let neg_s = -s;

    // Σ_{n<N} n^{-s-h} = Σ n^{-s} Σ_j (-ln n)^j h^j / j!
    let mut total = Taylor::zero(order, wp);
    for n in 1..cutoff {
        let ln_n = Real::with_i64(n as i64, wp).ln();
        let base = neg_s.scale(&ln_n).exp();
        let mut p = Real::with_i64(1, wp);
        for (j, slot) in total.0.iter_mut().enumerate() {
            *slot = &*slot + &base.scale(&p);
            p = (&p * &ln_n).div_i64(-(j as i64 + 1));
        }
    }

    let big_n = Real::with_i64(cutoff as i64, wp);
    let ln_big_n = big_n.ln();
    let n_pow_neg_s = neg_s.scale(&ln_big_n).exp();

    // bracket G(h); the common factor N^{-h} is applied at the end
    let mut bracket = Taylor::zero(order, wp);
    let s_minus_1 = s.add_i64(-1);
    let inv = s_minus_1.recip();
    let mut coeff = n_pow_neg_s.scale(&big_n) * &inv;
    for (j, slot) in bracket.0.iter_mut().enumerate() {
        // N^{1-s} (-1)^j / (s-1)^{j+1}
        *slot = if j % 2 == 0 { coeff.clone() } else { -&coeff };
        coeff = &coeff * &inv;
    }
    bracket.0[0] = &bracket.0[0] + &n_pow_neg_s.div_i64(2);

    let goal = cfg.target_log2() - super::SERIES_SLACK_BITS;
    let amplification = order as f64 * (1.0 + ln_big_n.to_f64()).log2();
    let sigma = s.re().to_f64();
    let s_abs = s.abs().to_f64();

    let mut rising = Taylor::zero(order, wp);
    rising.0[0] = s.clone();
    if order >= 1 {
        rising.0[1] = ComplexHP::one(wp);
    }
    let inv_n2 = (&big_n * &big_n).powi(-1);
    let mut n_pow = n_pow_neg_s.scale(&big_n.powi(-1));
    let mut fact_2k = Real::with_i64(2, wp);
    let mut table = even_bernoulli_real(64, wp);
    let mut prev = f64::INFINITY;
    let mut converged = false;
    for k in 1..=cfg.max_series_terms {
        if k > table.len() {
            table = even_bernoulli_real(2 * table.len(), wp);
        }
        let scale = n_pow.scale(&(&table[k - 1] / &fact_2k));
        let term = rising.scale(&scale);
        let remainder_factor =
            ((s_abs + 2.0 * k as f64 + 1.0) / (sigma + 2.0 * k as f64 + 1.0).max(1.0)).log2();
        let mag = term.derivative_log2() + amplification + remainder_factor;
        if mag < goal || term.0.iter().all(ComplexHP::is_zero) {
            converged = true;
            break;
        }
        if mag > prev {
            return Ok(None);
        }
        prev = mag;
        bracket.add_assign(&term);
        let kk = 2 * k as i64;
        rising = rising.mul_linear(&s.add_i64(kk - 1)).mul_linear(&s.add_i64(kk));
        n_pow = n_pow.scale(&inv_n2);
        fact_2k = fact_2k.mul_i64((kk + 1) * (kk + 2));
    }
    if !converged {
        return Err(SpecError::PrecisionUnreachable { what: "Euler-Maclaurin" });
    }

    // N^{-h} = Σ_j (-ln N)^j h^j / j!
    let mut decay = Taylor::zero(order, wp);
    let mut p = Real::with_i64(1, wp);
    for (j, slot) in decay.0.iter_mut().enumerate() {
        *slot = ComplexHP::from_real(p.clone());
        p = (&p * &ln_big_n).div_i64(-(j as i64 + 1));
    }
    total.add_assign(&bracket.mul(&decay));
    Ok(Some(total))
}

/// `|ζ(1 - z) - 2^{1-z} π^{-z} cos(πz/2) Γ(z) ζ(z)|`.
pub fn functional_eq_residual(z: &ComplexHP, cfg: &PrecisionConfig) -> Result<Real, SpecError> {
    check_config(cfg)?;
    if near_integer(z, 1, cfg) || nonpositive_integer(z, cfg).is_some() {
        return Err(pole("functional equation", z));
    }
    let wide = PrecisionConfig {
        precision_bits: cfg.precision_bits + 16,
        ..cfg.clone()
    };
    let wp = wide.precision_bits;
    let z = z.rounded(wp);
    let one_minus_z = (-&z).add_i64(1);
    let lhs = zeta(&one_minus_z, &wide)?;

    let ln2 = Real::with_i64(2, wp).ln();
    let pi = Real::pi(wp);
    let two_pow = one_minus_z.scale(&ln2).exp();
    let pi_pow = (-&z).scale(&pi.ln()).exp();
    let cos = z.scale(&pi.mul_pow2(-1)).cos();
    let rhs = two_pow * pi_pow * cos * gamma(&z, &wide)? * zeta(&z, &wide)?;
    Ok((&lhs - &rhs).abs().rounded(cfg.precision_bits))
}
