use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{Gauge, GaugeDescriptor, GaugeError};
use crate::scalar::pow_int;

/// The cost `c(x, y) = g(y - x)^p` with `p > 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CostSpecRepr", into = "CostSpecRepr")]
pub struct CostSpec {
    gauge: Gauge,
    p: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CostSpecRepr {
    gauge: GaugeDescriptor,
    p: f64,
}

impl TryFrom<CostSpecRepr> for CostSpec {
    type Error = GaugeError;

    fn try_from(r: CostSpecRepr) -> Result<Self, Self::Error> {
        CostSpec::new(Gauge::try_from(r.gauge)?, r.p)
    }
}

impl From<CostSpec> for CostSpecRepr {
    fn from(c: CostSpec) -> Self {
        CostSpecRepr { gauge: c.gauge.descriptor(), p: c.p }
    }
}

impl CostSpec {
    pub fn new(gauge: Gauge, p: f64) -> Result<Self, GaugeError> {
        if !(p.is_finite() && p > 1.0) {
            return Err(GaugeError::InvalidParameter(format!("cost exponent must be finite and > 1, got {p}")));
        }
        Ok(CostSpec { gauge, p })
    }

    pub fn gauge(&self) -> &Gauge {
        &self.gauge
    }

    pub fn exponent(&self) -> f64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.gauge.dim()
    }

    fn integral_exponent(&self) -> Option<u32> {
        (self.p.fract() == 0.0 && self.p <= u32::MAX as f64).then_some(self.p as u32)
    }

    /// Exact evaluation needs a rational gauge and an integral exponent.
    pub fn supports_exact(&self) -> bool {
        self.gauge.supports_exact() && self.integral_exponent().is_some()
    }

    /// `t^p` on the gauge value.
    pub fn power(&self, t: f64) -> f64 {
        match self.integral_exponent() {
            Some(k) if k <= i32::MAX as u32 => t.powi(k as i32),
            _ => t.powf(self.p),
        }
    }

    /// `h(d) = g(d)^p`, the cost as a function of the displacement.
    pub fn eval_displacement(&self, d: &[f64]) -> Result<f64, GaugeError> {
        self.gauge.eval(d).map(|g| self.power(g))
    }

    pub fn eval(&self, x: &[f64], y: &[f64]) -> Result<f64, GaugeError> {
        if x.len() != y.len() {
            return Err(GaugeError::DimensionMismatch { expected: x.len(), got: y.len() });
        }
        let d: Vec<f64> = x.iter().zip(y).map(|(a, b)| b - a).collect();
        self.eval_displacement(&d)
    }

    pub fn eval_exact(&self, x: &[BigRational], y: &[BigRational]) -> Result<BigRational, GaugeError> {
        if x.len() != y.len() {
            return Err(GaugeError::DimensionMismatch { expected: x.len(), got: y.len() });
        }
        let k = self.integral_exponent().ok_or(GaugeError::ExactUnsupported("non-integral exponent"))?;
        let d: Vec<BigRational> = x.iter().zip(y).map(|(a, b)| b - a).collect();
        self.gauge.eval_exact(&d).map(|g| pow_int(&g, k))
    }
}
