//! Exact even-index Bernoulli numbers, grown on demand and cached.
//!
//! `B_{2k}` comes from the integer tangent numbers `T_k` through
//! `B_{2k} = (-1)^{k-1} 2k T_k / (2^{2k} (2^{2k} - 1))`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::mp::Real;

fn exact_cache() -> &'static RwLock<Vec<BigRational>> {
    static CACHE: OnceLock<RwLock<Vec<BigRational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(Vec::new()))
}

fn real_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<Real>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Real>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Tangent numbers `T_1..=T_n` (1, 2, 16, 272, ...).
fn tangent_numbers(n: usize) -> Vec<BigInt> {
    let mut t = vec![BigInt::zero(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = BigInt::one();
    for k in 2..=n {
        t[k] = &t[k - 1] * BigInt::from(k - 1);
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = &t[j - 1] * BigInt::from(j - k) + &t[j] * BigInt::from(j - k + 2);
        }
    }
    t
}

fn compute(count: usize) -> Vec<BigRational> {
    let t = tangent_numbers(count);
    (1..=count)
        .map(|k| {
            let four_k = BigInt::one() << (2 * k);
            let num = BigInt::from(2 * k) * &t[k];
            let den = &four_k * (&four_k - BigInt::one());
            let b = BigRational::new(num, den);
            if k % 2 == 1 {
                b
            } else {
                -b
            }
        })
        .collect()
}

/// `[B_2, B_4, …, B_{2·count}]` as exact rationals.
pub fn even_bernoulli(count: usize) -> Vec<BigRational> {
    {
        let cache = exact_cache().read().unwrap();
        if cache.len() >= count {
            return cache[..count].to_vec();
        }
    }
    let mut cache = exact_cache().write().unwrap();
    if cache.len() < count {
        // grow geometrically; the tangent recurrence is quadratic in the size
        let target = count.max(2 * cache.len()).max(64);
        *cache = compute(target);
    }
    cache[..count].to_vec()
}

/// `B_{2k}` for `k ≥ 1`.
pub fn bernoulli_2k(k: usize) -> BigRational {
    assert!(k >= 1, "index must be positive");
    even_bernoulli(k)[k - 1].clone()
}

/// `[B_2, …, B_{2·count}]` rounded to `prec` bits; shared between callers.
pub fn even_bernoulli_real(count: usize, prec: u32) -> Arc<Vec<Real>> {
    if let Some(v) = real_cache().lock().unwrap().get(&prec) {
        if v.len() >= count {
            return Arc::clone(v);
        }
    }
    let target = count.max(64);
    let exact = even_bernoulli(target);
    let reals: Vec<Real> = exact
        .iter()
        .map(|b| {
            let num = Real::parse(&b.numer().to_string(), prec).unwrap();
            let den = Real::parse(&b.denom().to_string(), prec).unwrap();
            num / den
        })
        .collect();
    let arc = Arc::new(reals);
    real_cache().lock().unwrap().insert(prec, Arc::clone(&arc));
    arc
}

#[cfg(test)]
mod tests {
    use super::*;

    /// All Bernoulli numbers `B_0..=B_n` from `Σ_{k=0}^{m} C(m+1,k) B_k = 0`.
    fn bernoulli_by_recurrence(n: usize) -> Vec<BigRational> {
        let mut b = vec![BigRational::one()];
        for m in 1..=n {
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one(); // C(m+1, k)
            for (k, bk) in b.iter().enumerate() {
                acc += BigRational::from_integer(binom.clone()) * bk;
                binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
            }
            // binom is now C(m+1, m)
            b.push(-acc / BigRational::from_integer(binom));
        }
        b
    }

    #[test]
    fn known_values() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(bernoulli_2k(1), r(1, 6));
        assert_eq!(bernoulli_2k(2), r(-1, 30));
        assert_eq!(bernoulli_2k(3), r(1, 42));
        assert_eq!(bernoulli_2k(6), r(-691, 2730));
        assert_eq!(bernoulli_2k(7), r(7, 6));
    }

    #[test]
    fn agrees_with_defining_recurrence() {
        let reference = bernoulli_by_recurrence(64);
        let fast = even_bernoulli(32);
        for k in 1..=32 {
            assert_eq!(fast[k - 1], reference[2 * k], "B_{}", 2 * k);
        }
        // odd indices beyond 1 vanish in the reference
        assert!(reference.iter().skip(3).step_by(2).all(|b| b.is_zero()));
    }

    #[test]
    fn grows_past_initial_cache() {
        let big = even_bernoulli(150);
        assert_eq!(big.len(), 150);
        assert_eq!(big[5], bernoulli_2k(6));
        let reals = even_bernoulli_real(150, 256);
        assert!((reals[0].to_f64() - 1.0 / 6.0).abs() < 1e-16);
    }
}
