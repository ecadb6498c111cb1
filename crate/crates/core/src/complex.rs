//! High-precision complex numbers and precision configuration.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::mp::Real;

pub const DEFAULT_PRECISION: u32 = 128;

/// Extra bits carried internally by the series evaluators.
pub const GUARD_BITS: u32 = 64;

/// Error targets and series limits shared by every analytic evaluation.
#[derive(Clone, Debug)]
pub struct PrecisionConfig {
    pub precision_bits: u32,
    /// Absolute error target; must be at least `2^(1 - precision_bits)`.
    pub target_abs_error: Real,
    pub max_series_terms: usize,
    /// Minimum modulus before an asymptotic series is applied.
    pub shift_threshold: f64,
}

impl PrecisionConfig {
    /// Defaults: target `2^(10 - bits)`, shift threshold 16, 20 000 terms.
    pub fn new(precision_bits: u32) -> Self {
        let precision_bits = precision_bits.max(16);
        PrecisionConfig {
            precision_bits,
            target_abs_error: Real::with_i64(1, 64).mul_pow2(10 - precision_bits as i64),
            max_series_terms: 20_000,
            shift_threshold: 16.0,
        }
    }

    pub fn with_target_log2(mut self, log2: i64) -> Self {
        self.target_abs_error = Real::with_i64(1, 64).mul_pow2(log2);
        self
    }

    pub fn target_log2(&self) -> f64 {
        self.target_abs_error.log2_abs()
    }

    /// Precision used inside series evaluations.
    pub fn working_bits(&self) -> u32 {
        self.precision_bits + GUARD_BITS
    }

    /// Same settings at a different precision, with the error target scaled
    /// to keep the same number of bits of headroom.
    pub fn at_precision(&self, bits: u32) -> Self {
        let headroom = self.target_log2() + self.precision_bits as f64;
        PrecisionConfig {
            precision_bits: bits,
            target_abs_error: Real::with_i64(1, 64)
                .mul_pow2(headroom.round() as i64 - bits as i64),
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.precision_bits < 16 {
            return Err("precision_bits must be at least 16".into());
        }
        if self.target_log2() < 1.0 - self.precision_bits as f64 {
            return Err("target_abs_error below 2^(1 - precision_bits)".into());
        }
        if self.shift_threshold < 8.0 {
            return Err("shift_threshold must be at least 8".into());
        }
        if self.max_series_terms == 0 {
            return Err("max_series_terms must be positive".into());
        }
        Ok(())
    }
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig::new(DEFAULT_PRECISION)
    }
}

/// Complex number with MPFR real and imaginary parts of equal precision.
#[derive(Clone, PartialEq)]
pub struct ComplexHP {
    re: Real,
    im: Real,
}

impl ComplexHP {
    pub fn new(re: Real, im: Real) -> Self {
        let prec = re.prec().max(im.prec());
        ComplexHP {
            re: if re.prec() == prec { re } else { re.rounded(prec) },
            im: if im.prec() == prec { im } else { im.rounded(prec) },
        }
    }

    pub fn from_real(re: Real) -> Self {
        let prec = re.prec();
        ComplexHP {
            re,
            im: Real::new(prec),
        }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        ComplexHP {
            re: Real::with_f64(re, prec),
            im: Real::with_f64(im, prec),
        }
    }

    pub fn from_i64(re: i64, prec: u32) -> Self {
        ComplexHP::from_real(Real::with_i64(re, prec))
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        let re = Real::parse(&v.to_string(), prec).expect("integer literal");
        ComplexHP::from_real(re)
    }

    pub fn zero(prec: u32) -> Self {
        ComplexHP::from_i64(0, prec)
    }

    pub fn one(prec: u32) -> Self {
        ComplexHP::from_i64(1, prec)
    }

    pub fn i(prec: u32) -> Self {
        ComplexHP::new(Real::new(prec), Real::with_i64(1, prec))
    }

    pub fn re(&self) -> &Real {
        &self.re
    }

    pub fn im(&self) -> &Real {
        &self.im
    }

    pub fn precision(&self) -> u32 {
        self.re.prec()
    }

    pub fn rounded(&self, prec: u32) -> Self {
        ComplexHP {
            re: self.re.rounded(prec),
            im: self.im.rounded(prec),
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexHP {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Modulus.
    pub fn abs(&self) -> Real {
        self.re.hypot(&self.im)
    }

    /// Principal argument in `(-π, π]`.
    pub fn arg(&self) -> Real {
        self.im.atan2(&self.re)
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        ComplexHP {
            re: self.abs().ln(),
            im: self.arg(),
        }
    }

    pub fn exp(&self) -> Self {
        let scale = self.re.exp();
        let (s, c) = self.im.sin_cos();
        ComplexHP {
            re: &scale * &c,
            im: &scale * &s,
        }
    }

    pub fn cos(&self) -> Self {
        let (s, c) = self.re.sin_cos();
        let ep = self.im.exp();
        let em = (-&self.im).exp();
        let cosh = (&ep + &em).mul_pow2(-1);
        let sinh = (&ep - &em).mul_pow2(-1);
        ComplexHP {
            re: &c * &cosh,
            im: -(&s * &sinh),
        }
    }

    pub fn sin(&self) -> Self {
        let (s, c) = self.re.sin_cos();
        let ep = self.im.exp();
        let em = (-&self.im).exp();
        let cosh = (&ep + &em).mul_pow2(-1);
        let sinh = (&ep - &em).mul_pow2(-1);
        ComplexHP {
            re: &s * &cosh,
            im: &c * &sinh,
        }
    }

    pub fn recip(&self) -> Self {
        ComplexHP::one(self.precision()) / self
    }

    /// Integer power by repeated squaring; negative `n` inverts.
    pub fn powi(&self, n: i64) -> Self {
        let prec = self.precision();
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = ComplexHP::one(prec);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Principal power `exp(w · ln self)`.
    pub fn pow(&self, w: &ComplexHP) -> Self {
        (w * &self.ln()).exp()
    }

    pub fn scale(&self, k: &Real) -> Self {
        ComplexHP {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        ComplexHP {
            re: self.re.mul_i64(k),
            im: self.im.mul_i64(k),
        }
    }

    pub fn div_i64(&self, k: i64) -> Self {
        ComplexHP {
            re: self.re.div_i64(k),
            im: self.im.div_i64(k),
        }
    }

    pub fn add_i64(&self, k: i64) -> Self {
        ComplexHP {
            re: self.re.add_i64(k),
            im: self.im.clone(),
        }
    }

    pub fn add_real(&self, k: &Real) -> Self {
        ComplexHP {
            re: &self.re + k,
            im: self.im.clone(),
        }
    }

    /// `|self - other|`
    pub fn distance(&self, other: &ComplexHP) -> Real {
        (self - other).abs()
    }

    /// Parses `a`, `a+bi`, `a-bi`, `bi`, `i` with decimal `a`, `b`.
    pub fn parse(text: &str, prec: u32) -> Option<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return None;
        }
        let Some(body) = t.strip_suffix('i') else {
            return Real::parse(&t, prec).map(ComplexHP::from_real);
        };
        // find the sign separating real and imaginary parts (not an exponent sign)
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            if (bytes[idx] == b'+' || bytes[idx] == b'-')
                && !matches!(bytes[idx - 1], b'e' | b'E')
            {
                split = Some(idx);
                break;
            }
        }
        let imag = |s: &str| -> Option<Real> {
            match s {
                "" | "+" => Some(Real::with_i64(1, prec)),
                "-" => Some(Real::with_i64(-1, prec)),
                _ => Real::parse(s, prec),
            }
        };
        match split {
            Some(idx) => {
                let re = Real::parse(&body[..idx], prec)?;
                let im = imag(&body[idx..])?;
                Some(ComplexHP::new(re, im))
            }
            None => Some(ComplexHP::new(Real::new(prec), imag(body)?)),
        }
    }
}

impl fmt::Debug for ComplexHP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re, self.im)
    }
}

impl fmt::Display for ComplexHP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_sign_negative() {
            write!(f, "{}-{}i", self.re, self.im.abs())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl From<Real> for ComplexHP {
    fn from(re: Real) -> Self {
        ComplexHP::from_real(re)
    }
}

impl Add<&ComplexHP> for &ComplexHP {
    type Output = ComplexHP;
    fn add(self, rhs: &ComplexHP) -> ComplexHP {
        ComplexHP {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub<&ComplexHP> for &ComplexHP {
    type Output = ComplexHP;
    fn sub(self, rhs: &ComplexHP) -> ComplexHP {
        ComplexHP {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul<&ComplexHP> for &ComplexHP {
    type Output = ComplexHP;
    fn mul(self, rhs: &ComplexHP) -> ComplexHP {
        ComplexHP {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div<&ComplexHP> for &ComplexHP {
    type Output = ComplexHP;
    fn div(self, rhs: &ComplexHP) -> ComplexHP {
        let d = rhs.norm_sqr();
        ComplexHP {
            re: (&self.re * &rhs.re + &self.im * &rhs.im) / &d,
            im: (&self.im * &rhs.re - &self.re * &rhs.im) / &d,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<ComplexHP> for ComplexHP {
            type Output = ComplexHP;
            fn $method(self, rhs: ComplexHP) -> ComplexHP {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&ComplexHP> for ComplexHP {
            type Output = ComplexHP;
            fn $method(self, rhs: &ComplexHP) -> ComplexHP {
                (&self).$method(rhs)
            }
        }
        impl $tr<ComplexHP> for &ComplexHP {
            type Output = ComplexHP;
            fn $method(self, rhs: ComplexHP) -> ComplexHP {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for &ComplexHP {
    type Output = ComplexHP;
    fn neg(self) -> ComplexHP {
        ComplexHP {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for ComplexHP {
    type Output = ComplexHP;
    fn neg(self) -> ComplexHP {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct WireComplex {
    re: String,
    im: String,
    bits: u32,
}

impl Serialize for ComplexHP {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        WireComplex {
            re: self.re.to_decimal_string(),
            im: self.im.to_decimal_string(),
            bits: self.precision(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexHP {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = WireComplex::deserialize(deserializer)?;
        let parse = |s: &str| {
            Real::parse(s, wire.bits)
                .ok_or_else(|| serde::de::Error::custom(format!("bad decimal string {s:?}")))
        };
        Ok(ComplexHP::new(parse(&wire.re)?, parse(&wire.im)?))
    }
}
