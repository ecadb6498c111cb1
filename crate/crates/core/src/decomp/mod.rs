//! Candidate polynomials `P(u₀,…,u_m; v₀, v_n, v_l)` in the values of ζ and
//! its derivatives (`u_k`) and of `Γ, Γ⁽ⁿ⁾, Γ⁽ˡ⁾` (`v₀, v_n, v_l`), their
//! triple-index gradings, and the growth analysis along `Re z = 3/4`.
//!
//! A monomial `v₀^{λ₀} v_n^{λ_n} v_l^{λ_l}` carries three gradings:
//! `p = λ₀+λ_n+λ_l`, `q = nλ_n + lλ_l` and `j = λ_n+λ_l`. For fixed
//! `(p, q, j)` at most one `λ` exists because the system matrix has
//! determinant `n - l`.

mod falsify;
mod rearrange;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::asym::AsymError;
use crate::complex::ComplexHP;
use crate::specfun::SpecError;

pub use falsify::{
    evaluate_p, evaluate_ratio_form, falsify, u_samples, DominanceReport, DominanceSample,
    Verdict, RANDOM_U_SAMPLES,
};
pub use rearrange::{
    b_hat, b_weight, envelope, first_nonzero_b, first_nonzero_b_at, max_j, max_q, NONZERO_FLOOR,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DecompError {
    #[error("no index triple has gradings (p, q, j) = ({p}, {q}, {j})")]
    NoSuchIndex { p: i64, q: i64, j: i64 },
    #[error("invalid variable specification: {0}")]
    InvalidSpec(String),
    #[error("the polynomial is identically zero")]
    ZeroSpec,
    #[error("every b coefficient vanishes at all u samples")]
    AllZeroCoefficients,
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Asym(#[from] AsymError),
}

/// Exponents of `v₀, v_n, v_l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct LambdaTriple {
    pub l0: u32,
    pub ln: u32,
    pub ll: u32,
}

impl LambdaTriple {
    pub fn new(l0: u32, ln: u32, ll: u32) -> Self {
        LambdaTriple { l0, ln, ll }
    }

    /// `|λ|`
    pub fn total(&self) -> u64 {
        self.l0 as u64 + self.ln as u64 + self.ll as u64
    }

    /// `|λ|* = n λ_n + l λ_l`
    pub fn weighted(&self, spec: &VarSpec) -> u64 {
        spec.n as u64 * self.ln as u64 + spec.l as u64 * self.ll as u64
    }

    /// `|λ|** = λ_n + λ_l`
    pub fn derivative_count(&self) -> u64 {
        self.ln as u64 + self.ll as u64
    }
}

/// Highest ζ-derivative `m` and the Γ-derivative orders `1 ≤ n < l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarSpec {
    pub m: u32,
    pub n: u32,
    pub l: u32,
}

impl VarSpec {
    pub fn new(m: u32, n: u32, l: u32) -> Result<Self, DecompError> {
        if n < 1 || n >= l {
            return Err(DecompError::InvalidSpec(format!(
                "need 1 <= n < l, got n = {n}, l = {l}"
            )));
        }
        Ok(VarSpec { m, n, l })
    }

    /// Rows `(1 1 1)`, `(0 n l)`, `(0 1 1)` mapping `λ` to `(p, q, j)`.
    pub fn matrix_b(&self) -> [[i64; 3]; 3] {
        [[1, 1, 1], [0, self.n as i64, self.l as i64], [0, 1, 1]]
    }
}

/// Determinant of a 3×3 integer matrix by cofactor expansion.
pub fn det3(b: &[[i64; 3]; 3]) -> i64 {
    b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0])
}

/// `det B`, always `n - l`.
pub fn det_b(spec: &VarSpec) -> i64 {
    det3(&spec.matrix_b())
}

/// `(|λ|, |λ|*, |λ|**)`.
pub fn gradings(lambda: &LambdaTriple, spec: &VarSpec) -> (u64, u64, u64) {
    (lambda.total(), lambda.weighted(spec), lambda.derivative_count())
}

/// The unique `λ` with gradings `(p, q, j)`, by Cramer's rule:
/// `λ_l = (q - n j)/(l - n)`, `λ_n = j - λ_l`, `λ₀ = p - j`.
pub fn lambda_from_pqj(p: i64, q: i64, j: i64, spec: &VarSpec) -> Result<LambdaTriple, DecompError> {
    let none = DecompError::NoSuchIndex { p, q, j };
    let (n, l) = (spec.n as i64, spec.l as i64);
    let num = q - n * j;
    let den = l - n;
    if num < 0 || num % den != 0 {
        return Err(none);
    }
    let ll = num / den;
    let ln = j - ll;
    let l0 = p - j;
    if ln < 0 || l0 < 0 {
        return Err(none);
    }
    let fit = |v: i64| u32::try_from(v).map_err(|_| none.clone());
    Ok(LambdaTriple::new(fit(l0)?, fit(ln)?, fit(ll)?))
}

/// Key of a term: exponents of `u₀..u_m` and of `v₀, v_n, v_l`.
pub type TermKey = (Vec<u32>, LambdaTriple);

/// Polynomial with constant complex coefficients; zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySpec {
    spec: VarSpec,
    terms: BTreeMap<TermKey, ComplexHP>,
}

impl PolySpec {
    pub fn zero(spec: VarSpec) -> Self {
        PolySpec {
            spec,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(spec: VarSpec, c: ComplexHP) -> Self {
        let mut p = PolySpec::zero(spec);
        p.add_term(vec![0; spec.m as usize + 1], LambdaTriple::default(), c);
        p
    }

    /// `u_k`; `k` must not exceed `m`.
    pub fn u(spec: VarSpec, k: u32, prec: u32) -> Self {
        let mut u = vec![0; spec.m as usize + 1];
        u[k as usize] = 1;
        let mut p = PolySpec::zero(spec);
        p.add_term(u, LambdaTriple::default(), ComplexHP::one(prec));
        p
    }

    pub fn v(spec: VarSpec, lambda: LambdaTriple, prec: u32) -> Self {
        let mut p = PolySpec::zero(spec);
        p.add_term(vec![0; spec.m as usize + 1], lambda, ComplexHP::one(prec));
        p
    }

    pub fn spec(&self) -> &VarSpec {
        &self.spec
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &ComplexHP)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · u^e · v^λ`, merging with an existing term.
    pub fn add_term(&mut self, u: Vec<u32>, lambda: LambdaTriple, c: ComplexHP) {
        assert_eq!(u.len(), self.spec.m as usize + 1, "u exponent vector has wrong length");
        let key = (u, lambda);
        let sum = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    /// Distinct `λ` appearing in the polynomial.
    pub fn lambdas(&self) -> Vec<LambdaTriple> {
        let mut out: Vec<_> = self.terms.keys().map(|(_, l)| *l).collect();
        out.sort();
        out.dedup();
        out
    }

    /// `a_λ(u) = Σ c · u^e` over the terms carrying `λ`.
    pub fn a_lambda(&self, lambda: &LambdaTriple, u: &[ComplexHP]) -> ComplexHP {
        let prec = u.first().map_or(128, ComplexHP::precision);
        let mut acc = ComplexHP::zero(prec);
        for ((e, l), c) in &self.terms {
            if l == lambda {
                acc = &acc + &(c * &u_monomial(e, u));
            }
        }
        acc
    }

    pub fn add(&self, other: &PolySpec) -> PolySpec {
        self.check_same(other);
        let mut out = self.clone();
        for ((u, l), c) in &other.terms {
            out.add_term(u.clone(), *l, c.clone());
        }
        out
    }

    pub fn neg(&self) -> PolySpec {
        PolySpec {
            spec: self.spec,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &PolySpec) -> PolySpec {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PolySpec) -> PolySpec {
        self.check_same(other);
        let mut out = PolySpec::zero(self.spec);
        for ((ua, la), ca) in &self.terms {
            for ((ub, lb), cb) in &other.terms {
                let u = ua.iter().zip(ub).map(|(a, b)| a + b).collect();
                let l = LambdaTriple::new(la.l0 + lb.l0, la.ln + lb.ln, la.ll + lb.ll);
                out.add_term(u, l, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> PolySpec {
        let prec = self.terms.values().next().map_or(128, ComplexHP::precision);
        let mut out = PolySpec::constant(self.spec, ComplexHP::one(prec));
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    fn check_same(&self, other: &PolySpec) {
        assert_eq!(self.spec, other.spec, "polynomials over different variable sets");
    }
}

fn u_monomial(e: &[u32], u: &[ComplexHP]) -> ComplexHP {
    let prec = u.first().map_or(128, ComplexHP::precision);
    let mut acc = ComplexHP::one(prec);
    for (k, &ek) in e.iter().enumerate() {
        if ek > 0 {
            acc = &acc * &u[k].powi(ek as i64);
        }
    }
    acc
}

/// Split by `|λ|`. Summing the parts gives back the input.
pub fn homogeneous_parts(p: &PolySpec) -> BTreeMap<u64, PolySpec> {
    let mut out: BTreeMap<u64, PolySpec> = BTreeMap::new();
    for ((u, l), c) in p.terms() {
        out.entry(l.total())
            .or_insert_with(|| PolySpec::zero(p.spec))
            .add_term(u.clone(), *l, c.clone());
    }
    out
}

impl fmt::Display for PolySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((u, l), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (k, &e) in u.iter().enumerate() {
                write_power(f, &format!("u{k}"), e)?;
            }
            write_power(f, "v0", l.l0)?;
            write_power(f, "vn", l.ln)?;
            write_power(f, "vl", l.ll)?;
        }
        Ok(())
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, name: &str, e: u32) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, "*{name}"),
        _ => write!(f, "*{name}^{e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(m: u32, n: u32, l: u32) -> VarSpec {
        VarSpec::new(m, n, l).unwrap()
    }

    #[test]
    fn grading_examples() {
        assert_eq!(gradings(&LambdaTriple::new(0, 0, 0), &spec(0, 1, 3)), (0, 0, 0));
        assert_eq!(gradings(&LambdaTriple::new(1, 1, 1), &spec(0, 1, 3)), (3, 4, 2));
        assert_eq!(gradings(&LambdaTriple::new(2, 0, 1), &spec(0, 2, 5)), (3, 5, 1));
    }

    #[test]
    fn cramer_inversion_examples() {
        let s = spec(0, 1, 3);
        assert_eq!(lambda_from_pqj(3, 4, 2, &s).unwrap(), LambdaTriple::new(1, 1, 1));
        assert!(matches!(
            lambda_from_pqj(3, 5, 2, &s),
            Err(DecompError::NoSuchIndex { .. })
        ));
        assert_eq!(det_b(&s), -2);
    }

    #[test]
    fn spec_requires_n_below_l() {
        assert!(VarSpec::new(0, 3, 3).is_err());
        assert!(VarSpec::new(0, 0, 3).is_err());
    }

    #[test]
    fn parts_by_total_degree() {
        let s = spec(0, 1, 3);
        let one = |l| PolySpec::v(s, l, 64);
        let p = one(LambdaTriple::new(1, 0, 0)).add(&one(LambdaTriple::new(0, 1, 1)));
        let parts = homogeneous_parts(&p);
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![1, 2]);
        let c = PolySpec::constant(s, ComplexHP::from_i64(5, 64));
        let parts = homogeneous_parts(&c);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&0], c);
    }

    #[test]
    fn cancellation_leaves_zero() {
        let s = spec(1, 1, 2);
        let v0u0 = PolySpec::v(s, LambdaTriple::new(1, 0, 0), 64).mul(&PolySpec::u(s, 0, 64));
        assert!(v0u0.sub(&v0u0).is_zero());
    }

    #[test]
    fn round_trip_over_box() {
        for l in 2..=6u32 {
            for n in 1..l {
                let s = spec(0, n, l);
                for l0 in 0..=6 {
                    for ln in 0..=6 {
                        for ll in 0..=6 {
                            let lam = LambdaTriple::new(l0, ln, ll);
                            let (p, q, j) = gradings(&lam, &s);
                            assert_eq!(lambda_from_pqj(p as i64, q as i64, j as i64, &s).unwrap(), lam);
                        }
                    }
                }
            }
        }
    }

    fn arb_polyspec() -> impl proptest::strategy::Strategy<Value = PolySpec> {
        use proptest::prelude::*;
        let term = (prop::collection::vec(0u32..3, 2), 0u32..3, 0u32..3, 0u32..3, -4i64..4);
        prop::collection::vec(term, 0..6).prop_map(|terms| {
            let s = spec(1, 1, 3);
            let mut p = PolySpec::zero(s);
            for (u, l0, ln, ll, c) in terms {
                p.add_term(u, LambdaTriple::new(l0, ln, ll), ComplexHP::from_i64(c, 64));
            }
            p
        })
    }

    proptest::proptest! {
        #[test]
        fn arithmetic_keeps_invariants(a in arb_polyspec(), b in arb_polyspec()) {
            for p in [a.add(&b), a.sub(&b), a.mul(&b), a.pow(2)] {
                proptest::prop_assert!(p.terms().all(|(_, c)| !c.is_zero() && c.is_finite()));
            }
            proptest::prop_assert!(a.sub(&a).is_zero());
            proptest::prop_assert_eq!(a.add(&b), b.add(&a));
            let parts = homogeneous_parts(&a);
            let mut rebuilt = PolySpec::zero(*a.spec());
            for (p, part) in &parts {
                proptest::prop_assert!(part.lambdas().iter().all(|l| l.total() == *p));
                rebuilt = rebuilt.add(part);
            }
            proptest::prop_assert_eq!(rebuilt, a);
        }

        #[test]
        fn gradings_invert(l0 in 0u32..40, ln in 0u32..40, ll in 0u32..40, n in 1u32..9, gap in 1u32..9) {
            let s = spec(0, n, n + gap);
            let lam = LambdaTriple::new(l0, ln, ll);
            let (p, q, j) = gradings(&lam, &s);
            proptest::prop_assert_eq!(lambda_from_pqj(p as i64, q as i64, j as i64, &s), Ok(lam));
        }
    }
}
