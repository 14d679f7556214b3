//! Scalar backends: exact rationals and binary64.

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub type Q = BigRational;
pub type CQ = Complex<BigRational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    Exact,
    Float,
}

impl FromStr for ScalarMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(ScalarMode::Exact),
            "float" => Ok(ScalarMode::Float),
            other => Err(format!("unknown scalar mode `{other}`")),
        }
    }
}

/// Relative tolerance used by float-mode predicates (collinearity, closure).
pub const FLOAT_REL_TOL: f64 = 1e-9;

pub trait Scalar:
    Clone + Debug + PartialEq + PartialOrd + Num + std::ops::Neg<Output = Self> + Send + Sync + 'static
{
    const MODE: ScalarMode;

    fn from_rational(q: &Q) -> Self;
    fn to_f64(&self) -> f64;
    fn parse(s: &str) -> Option<Self>;
    fn render(&self) -> String;

    /// True when `self` is zero up to the backend tolerance, `scale` being the
    /// magnitude of the quantities that produced it.
    fn negligible(&self, scale: f64) -> bool;

    /// Exact rational value (the binary value for floats).
    fn to_rational(&self) -> Q;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Q::from_integer(BigInt::from(n)))
    }

    fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(&Q::new(BigInt::from(p), BigInt::from(q)))
    }

    /// Sign after discarding negligible values: -1, 0 or 1.
    fn sign_tol(&self, scale: f64) -> i8 {
        if self.negligible(scale) {
            0
        } else if *self > Self::zero() {
            1
        } else {
            -1
        }
    }

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Scalar for Q {
    const MODE: ScalarMode = ScalarMode::Exact;

    fn from_rational(q: &Q) -> Self {
        q.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Q {
        self.clone()
    }

    fn parse(s: &str) -> Option<Self> {
        parse_rational(s)
    }

    fn render(&self) -> String {
        self.to_string()
    }

    fn negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }
}

impl Scalar for f64 {
    const MODE: ScalarMode = ScalarMode::Float;

    fn from_rational(q: &Q) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Q {
        Q::from_f64(*self).unwrap_or_else(Q::zero)
    }

    fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.contains('/') {
            return parse_rational(s).map(|q| Self::from_rational(&q));
        }
        s.parse::<f64>().ok().filter(|x| x.is_finite())
    }

    fn render(&self) -> String {
        format!("{self}")
    }

    fn negligible(&self, scale: f64) -> bool {
        self.abs() <= FLOAT_REL_TOL * scale.max(f64::MIN_POSITIVE)
    }
}

/// Parses `p`, `p/q` or a finite decimal such as `-1.25` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Q::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let negative = int.starts_with('-');
        let int_abs = int.trim_start_matches(['-', '+']);
        let int_abs = if int_abs.is_empty() { "0" } else { int_abs };
        let whole = BigInt::from_str(int_abs).ok()?;
        let digits = BigInt::from_str(frac).ok()?;
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let mut value = Q::new(whole * &denom + digits, denom);
        if negative {
            value = -value;
        }
        return Some(value);
    }
    BigInt::from_str(s).ok().map(Q::from_integer)
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(p: i64, d: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(d))
}

pub fn cq(re: Q, im: Q) -> CQ {
    Complex::new(re, im)
}

pub fn cross<S: Scalar>(a: &Complex<S>, b: &Complex<S>) -> S {
    a.re.clone() * b.im.clone() - a.im.clone() * b.re.clone()
}

pub fn dot<S: Scalar>(a: &Complex<S>, b: &Complex<S>) -> S {
    a.re.clone() * b.re.clone() + a.im.clone() * b.im.clone()
}

pub fn norm_f64<S: Scalar>(a: &Complex<S>) -> f64 {
    a.re.to_f64().hypot(a.im.to_f64())
}

pub fn scale_c<S: Scalar>(a: &Complex<S>, k: &S) -> Complex<S> {
    Complex::new(a.re.clone() * k.clone(), a.im.clone() * k.clone())
}

pub fn to_cf64<S: Scalar>(a: &Complex<S>) -> Complex<f64> {
    Complex::new(a.re.to_f64(), a.im.to_f64())
}

pub fn convert_c<S: Scalar, T: Scalar>(a: &Complex<S>) -> Complex<T> {
    Complex::new(
        T::from_rational(&a.re.to_rational()),
        T::from_rational(&a.im.to_rational()),
    )
}
