//! Safe owned wrapper around an MPFR floating-point number.
//!
//! Every operation rounds to nearest. Binary operations produce a result
//! whose precision is the larger of the two operand precisions.

use std::cmp::Ordering;
use std::ffi::{CStr, CString};
use std::fmt;
use std::mem::MaybeUninit;
use std::ops::{Add, Div, Mul, Neg, Sub};

use gmp_mpfr_sys::mpfr::{self, mpfr_t, rnd_t};

const RND: rnd_t = rnd_t::RNDN;

/// Smallest precision MPFR accepts is 1 bit; keep a sane floor.
pub const MIN_PRECISION: u32 = 8;

pub struct Real {
    raw: mpfr_t,
}

// The limb buffer is uniquely owned by the wrapper.
unsafe impl Send for Real {}
unsafe impl Sync for Real {}

impl Real {
    /// Zero at the given precision.
    pub fn new(prec: u32) -> Real {
        let prec = prec.max(MIN_PRECISION);
        unsafe {
            let mut raw = MaybeUninit::<mpfr_t>::uninit();
            mpfr::init2(raw.as_mut_ptr(), prec as mpfr::prec_t);
            let mut raw = raw.assume_init();
            mpfr::set_zero(&mut raw, 1);
            Real { raw }
        }
    }

    pub fn with_f64(v: f64, prec: u32) -> Real {
        let mut r = Real::new(prec);
        unsafe { mpfr::set_d(&mut r.raw, v, RND) };
        r
    }

    pub fn with_i64(v: i64, prec: u32) -> Real {
        let mut r = Real::new(prec);
        unsafe { mpfr::set_si(&mut r.raw, v as _, RND) };
        r
    }

    /// Parses a decimal literal such as `-1.25e-3`. Returns `None` on any
    /// trailing garbage.
    pub fn parse(text: &str, prec: u32) -> Option<Real> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return None;
        }
        let c = CString::new(trimmed).ok()?;
        let mut r = Real::new(prec);
        let status = unsafe { mpfr::set_str(&mut r.raw, c.as_ptr(), 10, RND) };
        (status == 0).then_some(r)
    }

    pub fn pi(prec: u32) -> Real {
        let mut r = Real::new(prec);
        unsafe { mpfr::const_pi(&mut r.raw, RND) };
        r
    }

    /// Euler's constant γ.
    pub fn euler_gamma(prec: u32) -> Real {
        let mut r = Real::new(prec);
        unsafe { mpfr::const_euler(&mut r.raw, RND) };
        r
    }

    pub fn prec(&self) -> u32 {
        unsafe { mpfr::get_prec(&self.raw) as u32 }
    }

    /// Copy rounded (or widened) to `prec` bits.
    pub fn rounded(&self, prec: u32) -> Real {
        let mut r = Real::new(prec);
        unsafe { mpfr::set(&mut r.raw, &self.raw, RND) };
        r
    }

    fn unary(&self, op: unsafe extern "C" fn(*mut mpfr_t, *const mpfr_t, rnd_t) -> i32) -> Real {
        let mut r = Real::new(self.prec());
        unsafe { op(&mut r.raw, &self.raw, RND) };
        r
    }

    fn binary(
        &self,
        other: &Real,
        op: unsafe extern "C" fn(*mut mpfr_t, *const mpfr_t, *const mpfr_t, rnd_t) -> i32,
    ) -> Real {
        let mut r = Real::new(self.prec().max(other.prec()));
        unsafe { op(&mut r.raw, &self.raw, &other.raw, RND) };
        r
    }

    pub fn sqrt(&self) -> Real {
        self.unary(mpfr::sqrt)
    }

    pub fn exp(&self) -> Real {
        self.unary(mpfr::exp)
    }

    /// Natural logarithm.
    pub fn ln(&self) -> Real {
        self.unary(mpfr::log)
    }

    pub fn sin(&self) -> Real {
        self.unary(mpfr::sin)
    }

    pub fn cos(&self) -> Real {
        self.unary(mpfr::cos)
    }

    pub fn sin_cos(&self) -> (Real, Real) {
        let mut s = Real::new(self.prec());
        let mut c = Real::new(self.prec());
        unsafe { mpfr::sin_cos(&mut s.raw, &mut c.raw, &self.raw, RND) };
        (s, c)
    }

    pub fn abs(&self) -> Real {
        let mut r = self.clone();
        if self.is_sign_negative() {
            unsafe { mpfr::neg(&mut r.raw, &self.raw, RND) };
        }
        r
    }

    /// `sqrt(self² + other²)` without intermediate overflow.
    pub fn hypot(&self, other: &Real) -> Real {
        self.binary(other, mpfr::hypot)
    }

    /// `atan2(self, x)`, i.e. the argument of `x + i·self`.
    pub fn atan2(&self, x: &Real) -> Real {
        self.binary(x, mpfr::atan2)
    }

    pub fn pow(&self, exponent: &Real) -> Real {
        self.binary(exponent, mpfr::pow)
    }

    pub fn powi(&self, n: i64) -> Real {
        let mut r = Real::new(self.prec());
        unsafe { mpfr::pow_si(&mut r.raw, &self.raw, n as _, RND) };
        r
    }

    /// `self · 2ⁿ`, exact.
    pub fn mul_pow2(&self, n: i64) -> Real {
        let mut r = Real::new(self.prec());
        unsafe { mpfr::mul_2si(&mut r.raw, &self.raw, n as _, RND) };
        r
    }

    pub fn mul_i64(&self, n: i64) -> Real {
        let mut r = Real::new(self.prec());
        unsafe { mpfr::mul_si(&mut r.raw, &self.raw, n as _, RND) };
        r
    }

    pub fn div_i64(&self, n: i64) -> Real {
        let mut r = Real::new(self.prec());
        unsafe { mpfr::div_si(&mut r.raw, &self.raw, n as _, RND) };
        r
    }

    pub fn add_i64(&self, n: i64) -> Real {
        let mut r = Real::new(self.prec());
        unsafe { mpfr::add_si(&mut r.raw, &self.raw, n as _, RND) };
        r
    }

    pub fn to_f64(&self) -> f64 {
        unsafe { mpfr::get_d(&self.raw, RND) }
    }

    pub fn is_zero(&self) -> bool {
        unsafe { mpfr::zero_p(&self.raw) != 0 }
    }

    pub fn is_finite(&self) -> bool {
        unsafe { mpfr::number_p(&self.raw) != 0 }
    }

    pub fn is_sign_negative(&self) -> bool {
        unsafe { mpfr::sgn(&self.raw) < 0 }
    }

    /// Approximate `log₂|self|`, valid far outside the `f64` exponent range.
    /// `-∞` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        if !self.is_finite() {
            return f64::INFINITY;
        }
        let exp = unsafe { mpfr::get_exp(&self.raw) } as f64;
        let mantissa = self.mul_pow2(-(exp as i64)).to_f64().abs();
        exp + mantissa.log2()
    }

    /// Decimal scientific notation with as many digits as needed to
    /// round-trip at this precision, e.g. `1.6449340668482264365e0`.
    pub fn to_decimal_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        if !self.is_finite() {
            return if unsafe { mpfr::nan_p(&self.raw) } != 0 {
                "nan".to_string()
            } else if self.is_sign_negative() {
                "-inf".to_string()
            } else {
                "inf".to_string()
            };
        }
        let mut exp: mpfr::exp_t = 0;
        let digits = unsafe {
            let ptr = mpfr::get_str(std::ptr::null_mut(), &mut exp, 10, 0, &self.raw, RND);
            let s = CStr::from_ptr(ptr).to_string_lossy().into_owned();
            mpfr::free_str(ptr);
            s
        };
        let (sign, digits) = match digits.strip_prefix('-') {
            Some(rest) => ("-", rest.to_string()),
            None => ("", digits),
        };
        let digits = digits.trim_end_matches('0');
        let digits = if digits.is_empty() { "0" } else { digits };
        let (head, tail) = digits.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{}", exp - 1)
        } else {
            format!("{sign}{head}.{tail}e{}", exp - 1)
        }
    }

    /// MPFR's own Γ for real arguments; used as an independent reference.
    pub fn mpfr_gamma(&self) -> Real {
        self.unary(mpfr::gamma)
    }

    /// MPFR's own ψ for real arguments; used as an independent reference.
    pub fn mpfr_digamma(&self) -> Real {
        self.unary(mpfr::digamma)
    }

    /// MPFR's own ζ for real arguments; used as an independent reference.
    pub fn mpfr_zeta(&self) -> Real {
        self.unary(mpfr::zeta)
    }

    pub fn max(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Clone for Real {
    fn clone(&self) -> Real {
        self.rounded(self.prec())
    }
}

impl Drop for Real {
    fn drop(&mut self) {
        unsafe { mpfr::clear(&mut self.raw) }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string())
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string())
    }
}

/// Serialized as its decimal string.
impl serde::Serialize for Real {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_decimal_string())
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Real) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Real) -> Option<Ordering> {
        unsafe {
            if mpfr::nan_p(&self.raw) != 0 || mpfr::nan_p(&other.raw) != 0 {
                return None;
            }
            Some(mpfr::cmp(&self.raw, &other.raw).cmp(&0))
        }
    }
}

macro_rules! real_binop {
    ($tr:ident, $method:ident, $ffi:path) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                self.binary(rhs, $ffi)
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.binary(&rhs, $ffi)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                self.binary(rhs, $ffi)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.binary(&rhs, $ffi)
            }
        }
    };
}

real_binop!(Add, add, mpfr::add);
real_binop!(Sub, sub, mpfr::sub);
real_binop!(Mul, mul, mpfr::mul);
real_binop!(Div, div, mpfr::div);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        self.unary(mpfr::neg)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        self.unary(mpfr::neg)
    }
}
