//! The rearrangement `P_p(…; 1, Γ⁽ⁿ⁾/Γ, Γ⁽ˡ⁾/Γ) = Σ_q f^q Σ_t b_{q,t} H^t`
//! in the limit where the `ε` corrections vanish.
//!
//! With `Γ⁽ᵏ⁾/Γ ≈ fᵏ (1 + c_k H)`, a monomial `v_n^{λ_n} v_l^{λ_l}` becomes
//! `f^q (1 + c_n H)^{λ_n} (1 + c_l H)^{λ_l}`, so `b_{q,t}` collects
//! `a_λ(u) Σ_{i+i'=t} C(λ_n,i) c_nⁱ C(λ_l,i') c_l^{i'}` over `|λ|* = q`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{DecompError, LambdaTriple, PolySpec, VarSpec};
use crate::complex::ComplexHP;
use crate::mp::Real;

/// A `b` value counts as nonzero above this modulus.
pub const NONZERO_FLOOR: f64 = 1e-30;

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

fn c_n(k: u32) -> BigInt {
    BigInt::from(k) * BigInt::from(k.saturating_sub(1)) / 2
}

/// Coefficient of `H^t` in `(1 + c_n H)^{λ_n} (1 + c_l H)^{λ_l}`.
pub fn b_weight(lambda: &LambdaTriple, t: u64, spec: &VarSpec) -> BigInt {
    let (cn, cl) = (c_n(spec.n), c_n(spec.l));
    let mut acc = BigInt::zero();
    for i in 0..=t.min(lambda.ln as u64) {
        let i2 = t - i;
        if i2 > lambda.ll as u64 {
            continue;
        }
        let (i, i2) = (i as u32, i2 as u32);
        acc += binomial(lambda.ln, i) * num_traits::pow(cn.clone(), i as usize) * binomial(lambda.ll, i2)
            * num_traits::pow(cl.clone(), i2 as usize);
    }
    acc
}

/// `M`: the largest `|λ|*` present.
pub fn max_q(pp: &PolySpec) -> u64 {
    pp.lambdas().iter().map(|l| l.weighted(pp.spec())).max().unwrap_or(0)
}

/// `N`: the largest `|λ|**` present.
pub fn max_j(pp: &PolySpec) -> u64 {
    pp.lambdas().iter().map(LambdaTriple::derivative_count).max().unwrap_or(0)
}

/// `b_{q,t}(u)` at `ε = 0`. Indices with no matching `λ` contribute zero.
pub fn b_hat(pp: &PolySpec, q: u64, t: u64, u: &[ComplexHP]) -> ComplexHP {
    let spec = pp.spec();
    assert_eq!(u.len(), spec.m as usize + 1, "u has wrong length");
    let prec = u.first().map_or(128, ComplexHP::precision);
    let mut acc = ComplexHP::zero(prec);
    for lambda in pp.lambdas() {
        if lambda.weighted(spec) != q {
            continue;
        }
        let w = b_weight(&lambda, t, spec);
        if w.is_zero() {
            continue;
        }
        acc = &acc + &(pp.a_lambda(&lambda, u) * ComplexHP::from_bigint(&w, prec));
    }
    acc
}

/// First nonzero `b_{q,t}` scanning `t` upward and, within each `t`, `q`
/// downward from `M`. A value is nonzero when any sample exceeds
/// [`NONZERO_FLOOR`].
pub fn first_nonzero_b(pp: &PolySpec, samples: &[Vec<ComplexHP>]) -> Option<(u64, u64)> {
    let (big_m, big_n) = (max_q(pp), max_j(pp));
    for t in 0..=big_n {
        for q in (0..=big_m).rev() {
            if samples
                .iter()
                .any(|u| b_hat(pp, q, t, u).abs().to_f64() > NONZERO_FLOOR)
            {
                return Some((q, t));
            }
        }
    }
    None
}

pub fn first_nonzero_b_at(pp: &PolySpec, u: &[ComplexHP]) -> Option<(u64, u64)> {
    first_nonzero_b(pp, &[u.to_vec()])
}

/// `|log z|^{q₀-2t₀} / |z|^{t₀}`.
pub fn envelope(q0: u64, t0: u64, z: &ComplexHP) -> Result<Real, DecompError> {
    let r = z.abs();
    if r.to_f64() <= 1.0 {
        return Err(DecompError::Domain(format!("envelope needs |z| > 1, got {z}")));
    }
    let log = z.ln().abs();
    Ok(log.powi(q0 as i64 - 2 * t0 as i64) / r.powi(t0 as i64))
}
