//! Arithmetic backends shared by the gauges and the transport solver.
//!
//! Two backends exist: `f64` and [`BigRational`]. Every generic routine in
//! the crate is written once against [`Scalar`]; the rational backend turns
//! tolerances into exact zero comparisons.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::gauges::{CostSpec, Gauge, GaugeError};

/// Numeric backend for costs, masses and potentials.
pub trait Scalar: Clone + fmt::Debug + fmt::Display + PartialOrd + Num + Signed + Send + Sync + 'static {
    /// True when arithmetic is exact and tolerances collapse to zero.
    const EXACT: bool;

    /// Lift a double. The rational backend reads the shortest round-trip
    /// decimal expansion, so `0.1` becomes `1/10`.
    fn from_decimal(x: f64) -> Self;

    fn from_ratio(r: &BigRational) -> Self;

    fn to_f64(&self) -> f64;

    /// `rel * (1 + scale)` for floating point, zero for exact arithmetic.
    fn tolerance(scale: f64, rel: f64) -> Self;

    fn gauge(g: &Gauge, x: &[Self]) -> Result<Self, GaugeError>;

    /// `g(y - x)^p` in this backend.
    fn cost(spec: &CostSpec, x: &[Self], y: &[Self]) -> Result<Self, GaugeError>;

    fn to_repr(&self) -> ScalarRepr;

    fn from_repr(repr: &ScalarRepr) -> Result<Self, ParseScalarError>;

    fn sq_dist(x: &[Self], y: &[Self]) -> Self {
        x.iter().zip(y).fold(Self::zero(), |acc, (a, b)| {
            let d = b.clone() - a.clone();
            acc + d.clone() * d
        })
    }

    fn lift(coords: &[f64]) -> Vec<Self> {
        coords.iter().map(|&c| Self::from_decimal(c)).collect()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_decimal(x: f64) -> Self {
        x
    }

    fn from_ratio(r: &BigRational) -> Self {
        ratio_to_f64(r)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn tolerance(scale: f64, rel: f64) -> Self {
        rel * (1.0 + scale.abs())
    }

    fn gauge(g: &Gauge, x: &[f64]) -> Result<Self, GaugeError> {
        g.eval(x)
    }

    fn cost(spec: &CostSpec, x: &[f64], y: &[f64]) -> Result<Self, GaugeError> {
        spec.eval(x, y)
    }

    fn to_repr(&self) -> ScalarRepr {
        ScalarRepr::Number(*self)
    }

    fn from_repr(repr: &ScalarRepr) -> Result<Self, ParseScalarError> {
        match repr {
            ScalarRepr::Number(x) => Ok(*x),
            ScalarRepr::Text(s) => parse_ratio(s).map(|r| ratio_to_f64(&r)),
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_decimal(x: f64) -> Self {
        decimal_to_ratio(x).expect("finite coordinate")
    }

    fn from_ratio(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }

    fn tolerance(_scale: f64, _rel: f64) -> Self {
        BigRational::zero()
    }

    fn gauge(g: &Gauge, x: &[Self]) -> Result<Self, GaugeError> {
        g.eval_exact(x)
    }

    fn cost(spec: &CostSpec, x: &[Self], y: &[Self]) -> Result<Self, GaugeError> {
        spec.eval_exact(x, y)
    }

    fn to_repr(&self) -> ScalarRepr {
        ScalarRepr::Text(format!("{}/{}", self.numer(), self.denom()))
    }

    fn from_repr(repr: &ScalarRepr) -> Result<Self, ParseScalarError> {
        match repr {
            ScalarRepr::Number(x) => decimal_to_ratio(*x),
            ScalarRepr::Text(s) => parse_ratio(s),
        }
    }
}

/// JSON form of a scalar: a plain number in float mode, a `"num/den"`
/// string in rational mode. Both forms are accepted on input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Number(f64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("cannot parse {input:?} as an exact scalar")]
pub struct ParseScalarError {
    pub input: String,
}

/// Nearest double to a big rational. Falls back to a scaled division when
/// numerator or denominator overflow `f64`.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000) as usize;
    let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Exact rational value of the shortest decimal that round-trips to `x`.
pub fn decimal_to_ratio(x: f64) -> Result<BigRational, ParseScalarError> {
    if !x.is_finite() {
        return Err(ParseScalarError { input: x.to_string() });
    }
    parse_decimal(&format!("{x}"))
}

fn parse_decimal(s: &str) -> Result<BigRational, ParseScalarError> {
    let err = || ParseScalarError { input: s.to_string() };
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(pos) => (&body[..pos], body[pos + 1..].parse::<i32>().map_err(|_| err())?),
        None => (body, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let numer = BigInt::from_str(&digits).map_err(|_| err())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        value = -value;
    }
    Ok(value)
}

/// Parses `"p/q"`, an integer, or a decimal literal.
pub fn parse_ratio(s: &str) -> Result<BigRational, ParseScalarError> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let err = || ParseScalarError { input: s.to_string() };
            let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
        None => parse_decimal(s),
    }
}

/// Integer power by squaring; used for exact `t^p` with integral `p`.
pub fn pow_int<S: Scalar>(base: &S, exp: u32) -> S {
    let mut result = S::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b.clone();
        }
        e >>= 1;
        if e > 0 {
            b = b.clone() * b;
        }
    }
    result
}

pub(crate) fn min_of<S: Scalar>(a: S, b: S) -> S {
    if b < a {
        b
    } else {
        a
    }
}

pub(crate) fn one_over<S: Scalar>(n: usize) -> S {
    S::one() / S::from_ratio(&BigRational::from_integer(BigInt::from(n)))
}
