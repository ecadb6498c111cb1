//! Oracles shared by the integration tests. None of them call into the
//! code paths they are used to check.

#![allow(dead_code)]

use gzlab::complex::ComplexHP;
use gzlab::mp::Real;

/// Number of set partitions of `{0..n}`, by enumerating restricted-growth
/// strings.
pub fn bell_by_partitions(n: usize) -> u64 {
    fn go(pos: usize, n: usize, max: usize) -> u64 {
        if pos == n {
            return 1;
        }
        (0..=max + 1).map(|b| go(pos + 1, n, max.max(b))).sum()
    }
    if n == 0 {
        return 1;
    }
    // first element always opens block 0
    go(1, n, 0)
}

/// Bell numbers `B_0..=B_n` from the Bell triangle.
pub fn bell_triangle(n: usize) -> Vec<u64> {
    let mut out = vec![1u64];
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for v in &row {
            let last = *next.last().unwrap();
            next.push(last + v);
        }
        out.push(next[0]);
        row = next;
    }
    out.truncate(n + 1);
    out
}

/// `ζ(s)` through Borwein's alternating-series acceleration of `η(s)`,
/// `ζ = η / (1 - 2^{1-s})`, with `terms` terms.
pub fn zeta_borwein(s: &ComplexHP, terms: usize, prec: u32) -> ComplexHP {
    let wp = prec + 3 * terms as u32 + 32;
    let s = s.rounded(wp);
    let n = terms as i64;
    // d_k = n Σ_{i≤k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    let mut d = Vec::with_capacity(terms + 1);
    let mut term = Real::with_i64(1, wp).div_i64(n); // i = 0: (n-1)!/n! = 1/n
    let mut acc = Real::new(wp);
    for i in 0..=n {
        if i > 0 {
            // ratio of consecutive summands
            term = term.mul_i64((n + i - 1) * 4 * (n - i + 1)).div_i64((2 * i - 1) * 2 * i);
        }
        acc = acc + &term;
        d.push(acc.mul_i64(n));
    }
    let dn = d[terms].clone();
    let mut sum = ComplexHP::zero(wp);
    for k in 0..terms {
        let ln = Real::with_i64(k as i64 + 1, wp).ln();
        let p = (-&s).scale(&ln).exp();
        let w = (&d[k] - &dn).mul_i64(if k % 2 == 0 { 1 } else { -1 });
        sum = sum + p.scale(&w);
    }
    let eta = -(sum.scale(&dn.clone().powi(-1)));
    let ln2 = Real::with_i64(2, wp).ln();
    let factor = ComplexHP::one(wp) - (-&s).add_i64(1).scale(&ln2).exp();
    (eta / factor).rounded(prec)
}

/// Derivatives `0..=kmax` of `g` at `s` by the trapezoid rule on the circle
/// of radius `r` with `points` nodes.
pub fn cauchy_derivatives(
    g: impl Fn(&ComplexHP) -> ComplexHP,
    s: &ComplexHP,
    kmax: u32,
    r: f64,
    points: usize,
    prec: u32,
) -> Vec<ComplexHP> {
    let two_pi = Real::pi(prec).mul_i64(2);
    let radius = Real::with_f64(r, prec);
    let nodes: Vec<(ComplexHP, ComplexHP)> = (0..points)
        .map(|j| {
            let theta = (&two_pi * &Real::with_i64(j as i64, prec)).div_i64(points as i64);
            let unit = ComplexHP::new(Real::new(prec), theta).exp();
            let value = g(&(s + &unit.scale(&radius)));
            (unit, value)
        })
        .collect();
    let mut fact = Real::with_i64(1, prec);
    (0..=kmax as i64)
        .map(|k| {
            if k > 1 {
                fact = fact.mul_i64(k);
            }
            let mut acc = ComplexHP::zero(prec);
            for (unit, value) in &nodes {
                acc = acc + value * &unit.powi(-k);
            }
            acc.scale(&(&fact / &radius.powi(k))).div_i64(points as i64)
        })
        .collect()
}

/// `ψ(z) = log z - 1/(2z) - ∫₀^∞ ([u] - u + 1/2)/(u + z)² du`, with each
/// unit interval of the integral done in closed form and the tail after
/// `cut` intervals replaced by its leading term `1/(12 (cut + z - 1/2)²)`.
pub fn digamma_by_integral(z: &ComplexHP, cut: usize) -> ComplexHP {
    let prec = z.precision();
    let mut integral = ComplexHP::zero(prec);
    for k in 0..cut {
        let a = z.add_i64(k as i64);
        let a1 = a.add_i64(1);
        // ∫₀¹ (1/2 - s)/(a + s)² ds
        let piece = (&a + &ComplexHP::from_f64(0.5, 0.0, prec)) * (a.recip() - a1.recip()) - (a1 / &a).ln();
        integral = integral + piece;
    }
    let shifted = z.add_i64(cut as i64) - ComplexHP::from_f64(0.5, 0.0, prec);
    integral = integral + (&shifted * &shifted).recip().div_i64(12);
    z.ln() - z.recip().div_i64(2) - integral
}

/// `B_0..=B_n` by the Akiyama–Tanigawa transform (with `B_1 = +1/2`).
pub fn bernoulli_numbers(n: usize) -> Vec<num_rational::BigRational> {
    use num_rational::BigRational;
    let mut a: Vec<BigRational> = Vec::with_capacity(n + 1);
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(BigRational::new(1.into(), (m as i64 + 1).into()));
        for j in (1..=m).rev() {
            a[j - 1] = (&a[j - 1] - &a[j]) * BigRational::from_integer((j as i64).into());
        }
        out.push(a[0].clone());
    }
    out
}

fn cached_bernoulli(n: usize) -> Vec<num_rational::BigRational> {
    use std::sync::Mutex;
    static CACHE: Mutex<Vec<num_rational::BigRational>> = Mutex::new(Vec::new());
    let mut cache = CACHE.lock().unwrap();
    if cache.len() <= n {
        *cache = bernoulli_numbers(n.max(160));
    }
    cache[..=n].to_vec()
}

/// `log Γ(z)` from the Stirling series with `terms` Bernoulli corrections,
/// after shifting `z` up by `shift`. Branch as the sum of principal logs.
pub fn log_gamma_stirling(z: &ComplexHP, shift: usize, terms: usize) -> ComplexHP {
    let prec = z.precision();
    let bern = cached_bernoulli(2 * terms);
    let w = z.add_i64(shift as i64);
    let half = ComplexHP::from_f64(0.5, 0.0, prec);
    let ln2pi = Real::pi(prec).mul_i64(2).ln().mul_pow2(-1);
    let mut acc = (&w - &half) * w.ln() - &w;
    acc = acc.add_real(&ln2pi);
    let w2 = &w * &w;
    let mut wpow = w.clone();
    for k in 1..=terms {
        let b = &bern[2 * k];
        let num = ComplexHP::from_bigint(b.numer(), prec);
        let den = ComplexHP::from_bigint(&(b.denom() * num_bigint::BigInt::from(2 * k * (2 * k - 1))), prec);
        acc = acc + num / (den * &wpow);
        wpow = &wpow * &w2;
    }
    for k in 0..shift {
        acc = acc - z.add_i64(k as i64).ln();
    }
    acc
}
