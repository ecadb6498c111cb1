//! Exact differential polynomials in the jet variables `f, f', f'', ...` of the
//! digamma function `f = Γ'/Γ`.
//!
//! The central object is [`gamma_log_ratio`], the polynomial `R_n` with
//! `Γ⁽ⁿ⁾ = Γ · R_n(f, f', …)`, built from `R_0 = 1` and
//! `R_{n+1} = R_n' + R_n · f`.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::complex::ComplexHP;

/// Default cap on `n` for [`gamma_log_ratio`].
pub const DEFAULT_RATIO_LIMIT: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiffPolyError {
    #[error("order {n} exceeds the configured limit {limit}")]
    LimitExceeded { n: u32, limit: u32 },
    #[error("jet has {len} entries but the polynomial uses f^({order})")]
    MissingJetValue { order: u32, len: usize },
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

/// Exponent map of a jet monomial: sorted `(k, e_k)` pairs, `e_k > 0`, for the
/// variable `f⁽ᵏ⁾`. The empty map is the constant monomial.
///
/// Ordering is by weight `Σ e_k (k+1)`, then by total degree, then by the
/// dense exponent vector `(e_0, e_1, …)` with larger exponents first. This
/// reproduces the customary display `f''' + 4*f*f'' + 3*f'^2 + 6*f^2*f' + f^4`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct JetExponents(Vec<(u32, u32)>);

impl JetExponents {
    pub fn constant() -> Self {
        JetExponents(Vec::new())
    }

    /// `f⁽ᵏ⁾`
    pub fn var(k: u32) -> Self {
        JetExponents(vec![(k, 1)])
    }

    /// Builds an exponent map from arbitrary pairs; repeated orders are summed
    /// and zero exponents dropped.
    pub fn new(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (k, e) in pairs {
            *map.entry(k).or_insert(0u32) += e;
        }
        JetExponents(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn is_constant(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, k: u32) -> u32 {
        match self.0.binary_search_by_key(&k, |&(kk, _)| kk) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    /// `Σ_k e_k (k+1)`
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&(k, e)| e as u64 * (k as u64 + 1)).sum()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&(_, e)| e as u64).sum()
    }

    /// Exponent of the order-0 variable `f`.
    pub fn f_degree(&self) -> u32 {
        self.exponent(0)
    }

    pub fn max_order(&self) -> Option<u32> {
        self.0.last().map(|&(k, _)| k)
    }

    fn product(&self, other: &JetExponents) -> JetExponents {
        JetExponents::new(self.0.iter().chain(other.0.iter()).copied())
    }
}

impl Ord for JetExponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| {
                let top = self.max_order().max(other.max_order()).unwrap_or(0);
                for k in 0..=top {
                    match other.exponent(k).cmp(&self.exponent(k)) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for JetExponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A single term `c · Π (f⁽ᵏ⁾)^{e_k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetMonomial {
    pub exponents: JetExponents,
    pub coefficient: BigInt,
}

impl JetMonomial {
    pub fn weight(&self) -> u64 {
        self.exponents.weight()
    }

    pub fn f_degree(&self) -> u32 {
        self.exponents.f_degree()
    }
}

/// Integer-coefficient polynomial in the jet variables, kept in canonical
/// order with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffPoly {
    terms: BTreeMap<JetExponents, BigInt>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly::default()
    }

    pub fn one() -> Self {
        DiffPoly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        DiffPoly::monomial(c, JetExponents::constant())
    }

    /// The jet variable `f⁽ᵏ⁾`.
    pub fn var(k: u32) -> Self {
        DiffPoly::monomial(1, JetExponents::var(k))
    }

    pub fn monomial(c: impl Into<BigInt>, exponents: JetExponents) -> Self {
        let mut p = DiffPoly::zero();
        p.add_term(exponents, c.into());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (JetExponents, BigInt)>) -> Self {
        let mut p = DiffPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exponents: JetExponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&JetExponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> Vec<JetMonomial> {
        self.terms
            .iter()
            .map(|(e, c)| JetMonomial {
                exponents: e.clone(),
                coefficient: c.clone(),
            })
            .collect()
    }

    pub fn coefficient(&self, exponents: &JetExponents) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    /// Highest derivative order occurring, `None` for constants and zero.
    pub fn max_order(&self) -> Option<u32> {
        self.terms.keys().filter_map(|e| e.max_order()).max()
    }

    /// `Some(w)` when every monomial has weight `w`; `None` for mixed weights.
    /// The zero polynomial is homogeneous of weight 0.
    pub fn homogeneous_weight(&self) -> Option<u64> {
        let mut weights = self.terms.keys().map(JetExponents::weight);
        let first = weights.next().unwrap_or(0);
        weights.all(|w| w == first).then_some(first)
    }

    /// Formal derivative with `d f⁽ᵏ⁾ = f⁽ᵏ⁺¹⁾` and the Leibniz rule.
    pub fn differentiate(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (exps, c) in &self.terms {
            for &(k, e) in exps.pairs() {
                let lowered = exps
                    .pairs()
                    .iter()
                    .map(|&(kk, ee)| if kk == k { (kk, ee - 1) } else { (kk, ee) })
                    .chain(std::iter::once((k + 1, 1)));
                out.add_term(JetExponents::new(lowered), c * BigInt::from(e));
            }
        }
        out
    }

    /// Sum of all coefficients, i.e. the value at `f⁽ᵏ⁾ = 1` for every `k`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitutes `f⁽ᵏ⁾ ← jet[k]`.
    pub fn evaluate(&self, jet: &[ComplexHP]) -> Result<ComplexHP, DiffPolyError> {
        if let Some(order) = self.max_order() {
            if order as usize >= jet.len() {
                return Err(DiffPolyError::MissingJetValue {
                    order,
                    len: jet.len(),
                });
            }
        }
        let prec = jet
            .iter()
            .map(ComplexHP::precision)
            .max()
            .unwrap_or(crate::complex::DEFAULT_PRECISION);
        let mut powers: Vec<Vec<ComplexHP>> = vec![Vec::new(); jet.len()];
        let mut acc = ComplexHP::zero(prec);
        for (exps, c) in &self.terms {
            let mut term = ComplexHP::from_bigint(c, prec);
            for &(k, e) in exps.pairs() {
                let table = &mut powers[k as usize];
                if table.is_empty() {
                    table.push(ComplexHP::one(prec));
                }
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * &jet[k as usize];
                    table.push(next);
                }
                term = &term * &table[e as usize];
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        self + &(-rhs)
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.product(eb), ca * cb);
            }
        }
        out
    }
}

/// Memo table for `R_n = Γ⁽ⁿ⁾/Γ`. Contents are deterministic, so sharing one
/// table between threads is safe.
#[derive(Debug)]
pub struct GammaRatioTable {
    limit: u32,
    memo: RwLock<Vec<DiffPoly>>,
}

impl GammaRatioTable {
    pub fn new(limit: u32) -> Self {
        GammaRatioTable {
            limit,
            memo: RwLock::new(vec![DiffPoly::one()]),
        }
    }

    pub fn limit(&self) -> u32 {
        self.limit
    }

    pub fn get(&self, n: u32) -> Result<DiffPoly, DiffPolyError> {
        if n > self.limit {
            return Err(DiffPolyError::LimitExceeded {
                n,
                limit: self.limit,
            });
        }
        if let Some(p) = self.memo.read().unwrap().get(n as usize) {
            return Ok(p.clone());
        }
        let mut memo = self.memo.write().unwrap();
        let f = DiffPoly::var(0);
        while memo.len() <= n as usize {
            let prev = memo.last().unwrap();
            let next = &prev.differentiate() + &(prev * &f);
            memo.push(next);
        }
        Ok(memo[n as usize].clone())
    }

    /// Coefficient of `f^{n-2} f'` in `R_n`; 0 for `n < 2`.
    pub fn c_coefficient(&self, n: u32) -> Result<BigInt, DiffPolyError> {
        let r = self.get(n)?;
        if n < 2 {
            return Ok(BigInt::zero());
        }
        Ok(r.coefficient(&JetExponents::new([(0, n - 2), (1, 1)])))
    }
}

fn default_table() -> &'static GammaRatioTable {
    static TABLE: OnceLock<GammaRatioTable> = OnceLock::new();
    TABLE.get_or_init(|| GammaRatioTable::new(DEFAULT_RATIO_LIMIT))
}

/// `R_n` with `Γ⁽ⁿ⁾ = Γ · R_n(f, f', …)`, memoized up to [`DEFAULT_RATIO_LIMIT`].
pub fn gamma_log_ratio(n: u32) -> Result<DiffPoly, DiffPolyError> {
    default_table().get(n)
}

/// Coefficient of `f^{n-2} f'` in `R_n`, equal to `n(n-1)/2`.
pub fn c_coefficient(n: u32) -> Result<BigInt, DiffPolyError> {
    default_table().c_coefficient(n)
}

// ---------------------------------------------------------------------------
// rendering and parsing

fn write_var(out: &mut fmt::Formatter<'_>, k: u32) -> fmt::Result {
    match k {
        0 => write!(out, "f"),
        1 => write!(out, "f'"),
        2 => write!(out, "f''"),
        3 => write!(out, "f'''"),
        _ => write!(out, "f^({k})"),
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        for (i, (exps, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(out, "-")?,
                (0, false) => {}
                (_, true) => write!(out, " - ")?,
                (_, false) => write!(out, " + ")?,
            }
            let mag = c.abs();
            let mut first = true;
            if exps.is_constant() || !mag.is_one() {
                write!(out, "{mag}")?;
                first = false;
            }
            for &(k, e) in exps.pairs() {
                if !first {
                    write!(out, "*")?;
                }
                first = false;
                write_var(out, k)?;
                if e > 1 {
                    write!(out, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_at(&self, off: usize) -> Option<u8> {
        self.src.get(self.pos + off).copied()
    }

    fn error(&self, message: impl Into<String>) -> DiffPolyError {
        DiffPolyError::Parse {
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), DiffPolyError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", b as char)))
        }
    }

    fn uint(&mut self) -> Result<BigInt, DiffPolyError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an unsigned integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn small_uint(&mut self) -> Result<u32, DiffPolyError> {
        let col = self.pos;
        let v = self.uint()?;
        v.to_u32().ok_or_else(|| DiffPolyError::Parse {
            column: col + 1,
            message: "integer too large".into(),
        })
    }

    /// `f`, `f'`, `f''`, `f'''`, `f^(k)`, optionally followed by `^e`.
    fn factor(&mut self) -> Result<(u32, u32), DiffPolyError> {
        self.expect(b'f')?;
        let mut order = 0;
        if self.peek() == Some(b'^') && self.peek_at(1) == Some(b'(') {
            self.pos += 2;
            order = self.small_uint()?;
            self.expect(b')')?;
        } else {
            while self.peek() == Some(b'\'') {
                order += 1;
                self.pos += 1;
            }
            if order > 3 {
                return Err(self.error("use f^(k) for derivative orders above 3"));
            }
        }
        let mut exp = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            exp = self.small_uint()?;
        }
        Ok((order, exp))
    }

    fn term(&mut self) -> Result<(JetExponents, BigInt), DiffPolyError> {
        self.skip_ws();
        let mut coeff = BigInt::one();
        let mut pairs = Vec::new();
        if matches!(self.peek(), Some(b'0'..=b'9')) {
            coeff = self.uint()?;
        } else {
            pairs.push(self.factor()?);
        }
        loop {
            self.skip_ws();
            if self.peek() != Some(b'*') {
                break;
            }
            self.pos += 1;
            self.skip_ws();
            pairs.push(self.factor()?);
        }
        Ok((JetExponents::new(pairs), coeff))
    }
}

impl FromStr for DiffPoly {
    type Err = DiffPolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor {
            src: s.as_bytes(),
            pos: 0,
        };
        let mut poly = DiffPoly::zero();
        cur.skip_ws();
        let mut sign = BigInt::one();
        if cur.peek() == Some(b'-') {
            sign = -sign;
            cur.pos += 1;
        }
        loop {
            let (e, c) = cur.term()?;
            poly.add_term(e, c * &sign);
            cur.skip_ws();
            match cur.peek() {
                None => break,
                Some(b'+') => sign = BigInt::one(),
                Some(b'-') => sign = -BigInt::one(),
                Some(_) => return Err(cur.error("expected '+', '-' or end of input")),
            }
            cur.pos += 1;
        }
        Ok(poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> DiffPoly {
        s.parse().unwrap()
    }

    /// Bell numbers by enumerating restricted growth strings (set partitions).
    fn bell_by_enumeration(n: usize) -> u64 {
        fn rec(pos: usize, n: usize, max: usize) -> u64 {
            if pos == n {
                return 1;
            }
            (0..=max + 1).map(|b| rec(pos + 1, n, max.max(b))).sum()
        }
        if n == 0 {
            1
        } else {
            // first element always opens block 0
            rec(1, n, 0)
        }
    }

    #[test]
    fn differentiate_examples() {
        assert_eq!(p("f^2").differentiate(), p("2*f*f'"));
        assert_eq!(DiffPoly::one().differentiate(), DiffPoly::zero());
        assert_eq!(p("f' + f^2").differentiate(), p("f'' + 2*f*f'"));
    }

    #[test]
    fn gamma_log_ratio_rows() {
        assert_eq!(gamma_log_ratio(0).unwrap(), DiffPoly::one());
        assert_eq!(gamma_log_ratio(1).unwrap(), p("f"));
        assert_eq!(gamma_log_ratio(2).unwrap(), p("f' + f^2"));
        assert_eq!(gamma_log_ratio(3).unwrap(), p("f'' + 3*f*f' + f^3"));
        assert_eq!(
            gamma_log_ratio(4).unwrap(),
            p("f''' + 4*f*f'' + 3*f'^2 + 6*f^2*f' + f^4")
        );
        assert_eq!(
            gamma_log_ratio(5).unwrap(),
            p("f^(4) + 5*f*f''' + 10*f'*f'' + 10*f^2*f'' + 15*f*f'^2 + 10*f^3*f' + f^5")
        );
    }

    #[test]
    fn render_matches_display_order() {
        assert_eq!(
            gamma_log_ratio(4).unwrap().to_string(),
            "f''' + 4*f*f'' + 3*f'^2 + 6*f^2*f' + f^4"
        );
        assert_eq!(
            gamma_log_ratio(5).unwrap().to_string(),
            "f^(4) + 5*f*f''' + 10*f'*f'' + 10*f^2*f'' + 15*f*f'^2 + 10*f^3*f' + f^5"
        );
        assert_eq!(gamma_log_ratio(0).unwrap().to_string(), "1");
        assert_eq!(DiffPoly::zero().to_string(), "0");
        assert_eq!(p("-f + 3").to_string(), "3 - f");
    }

    #[test]
    fn limit_is_enforced() {
        let table = GammaRatioTable::new(5);
        assert!(table.get(5).is_ok());
        assert_eq!(
            table.get(6),
            Err(DiffPolyError::LimitExceeded { n: 6, limit: 5 })
        );
        assert!(matches!(
            gamma_log_ratio(100_000),
            Err(DiffPolyError::LimitExceeded { .. })
        ));
    }

    #[test]
    fn c_coefficient_examples() {
        assert_eq!(c_coefficient(1).unwrap(), BigInt::from(0));
        assert_eq!(c_coefficient(4).unwrap(), BigInt::from(6));
        assert_eq!(c_coefficient(9).unwrap(), BigInt::from(36));
    }

    #[test]
    fn coefficient_sum_is_bell() {
        assert_eq!(gamma_log_ratio(3).unwrap().coefficient_sum(), BigInt::from(5));
        assert_eq!(gamma_log_ratio(5).unwrap().coefficient_sum(), BigInt::from(52));
        assert_eq!(DiffPoly::one().coefficient_sum(), BigInt::from(1));
        for n in 0..=10u32 {
            assert_eq!(
                gamma_log_ratio(n).unwrap().coefficient_sum(),
                BigInt::from(bell_by_enumeration(n as usize)),
                "n = {n}"
            );
        }
    }

    #[test]
    fn ladder_structure_up_to_twelve() {
        for n in 0..=12u32 {
            let r = gamma_log_ratio(n).unwrap();
            assert_eq!(r.homogeneous_weight(), Some(n as u64));
            assert!(r.terms().all(|(_, c)| c.is_positive()));
            assert_eq!(
                r.coefficient(&JetExponents::new([(0, n)])),
                BigInt::one(),
                "leading f^n in R_{n}"
            );
            if n >= 1 {
                assert_eq!(
                    c_coefficient(n).unwrap(),
                    BigInt::from(n * (n - 1) / 2)
                );
            }
        }
    }

    #[test]
    fn evaluate_examples() {
        let prec = 128;
        let jet = |vals: &[i64]| -> Vec<ComplexHP> {
            vals.iter().map(|&v| ComplexHP::from_f64(v as f64, 0.0, prec)).collect()
        };
        let r2 = gamma_log_ratio(2).unwrap();
        assert_eq!(r2.evaluate(&jet(&[2, 3])).unwrap().to_f64(), (7.0, 0.0));
        let r0 = gamma_log_ratio(0).unwrap();
        assert_eq!(r0.evaluate(&jet(&[5])).unwrap().to_f64(), (1.0, 0.0));
        assert_eq!(r0.evaluate(&[]).unwrap().to_f64(), (1.0, 0.0));
        let r4 = gamma_log_ratio(4).unwrap();
        assert_eq!(r4.evaluate(&jet(&[1, 1, 1, 1])).unwrap().to_f64(), (15.0, 0.0));
        assert_eq!(
            r4.evaluate(&jet(&[1, 1])),
            Err(DiffPolyError::MissingJetValue { order: 3, len: 2 })
        );
    }

    #[test]
    fn parse_errors_carry_columns() {
        match "f + g".parse::<DiffPoly>() {
            Err(DiffPolyError::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!("f''''".parse::<DiffPoly>().is_err());
        assert!("f^(4)^2".parse::<DiffPoly>().is_ok());
    }

    fn arb_poly(max_weight: u64) -> impl Strategy<Value = DiffPoly> {
        let term = (
            prop::collection::vec((0u32..6, 1u32..4), 0..4),
            -20i64..20,
        );
        prop::collection::vec(term, 0..6).prop_map(move |terms| {
            DiffPoly::from_terms(
                terms
                    .into_iter()
                    .map(|(pairs, c)| (JetExponents::new(pairs), BigInt::from(c)))
                    .filter(|(e, _)| e.weight() <= max_weight),
            )
        })
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(poly in arb_poly(20)) {
            let text = poly.to_string();
            let back: DiffPoly = text.parse().unwrap();
            prop_assert_eq!(&back, &poly);
            prop_assert_eq!(back.to_string(), text);
        }

        #[test]
        fn derivative_raises_weight_by_one(poly in arb_poly(20)) {
            // restrict to a single weight to get a homogeneous input
            let w = poly.terms().next().map(|(e, _)| e.weight()).unwrap_or(0);
            let homog = DiffPoly::from_terms(
                poly.terms().filter(|(e, _)| e.weight() == w).map(|(e, c)| (e.clone(), c.clone())),
            );
            let d = homog.differentiate();
            prop_assert!(d.terms().all(|(e, _)| e.weight() == w + 1));
        }

        #[test]
        fn derivation_is_leibniz(a in arb_poly(10), b in arb_poly(10)) {
            let lhs = (&a * &b).differentiate();
            let rhs = &(&a.differentiate() * &b) + &(&a * &b.differentiate());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
