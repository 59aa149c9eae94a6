use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::SolveError;
use crate::point::Point;
use crate::scalar::{decimal_to_ratio, ratio_to_f64, Scalar, ScalarRepr};

/// Finitely supported probability measure with distinct atoms.
///
/// Weights are stored exactly. Decimal inputs are read through their
/// shortest decimal expansion, and `"p/q"` strings are accepted in JSON.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    points: Vec<Point>,
    weights: Vec<BigRational>,
}

const FLOAT_MASS_TOL: f64 = 1e-12;

impl DiscreteMeasure {
    pub fn new(points: Vec<Point>, weights: Vec<f64>) -> Result<Self, SolveError> {
        let exact = weights
            .iter()
            .map(|&w| decimal_to_ratio(w).map_err(|e| SolveError::InvalidMeasure(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_exact(points, exact)
    }

    pub fn from_exact(points: Vec<Point>, weights: Vec<BigRational>) -> Result<Self, SolveError> {
        if points.is_empty() {
            return Err(SolveError::InvalidMeasure("measure has no atoms".into()));
        }
        if points.len() != weights.len() {
            return Err(SolveError::InvalidMeasure(format!("{} points but {} weights", points.len(), weights.len())));
        }
        let dim = points[0].dim();
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(SolveError::DimensionMismatch { expected: dim, got: p.dim() });
        }
        if let Some(k) = weights.iter().position(|w| !w.is_positive()) {
            return Err(SolveError::InvalidMeasure(format!("weight {k} is not positive")));
        }
        let mut seen = HashSet::with_capacity(points.len());
        for (k, p) in points.iter().enumerate() {
            // -0.0 and 0.0 are the same atom.
            let key: Vec<u64> = p.iter().map(|c| (c + 0.0).to_bits()).collect();
            if !seen.insert(key) {
                return Err(SolveError::InvalidMeasure(format!("atom {k} at {p} is repeated")));
            }
        }
        let total: BigRational = weights.iter().sum();
        if (ratio_to_f64(&total) - 1.0).abs() > FLOAT_MASS_TOL {
            return Err(SolveError::InvalidMeasure(format!("weights sum to {}, not 1", ratio_to_f64(&total))));
        }
        Ok(DiscreteMeasure { points, weights })
    }

    /// Equal weights `1/n`.
    pub fn uniform(points: Vec<Point>) -> Result<Self, SolveError> {
        let n = points.len();
        if n == 0 {
            return Err(SolveError::InvalidMeasure("measure has no atoms".into()));
        }
        let w = BigRational::new(BigInt::one(), BigInt::from(n));
        Self::from_exact(points, vec![w; n])
    }

    /// Weights proportional to `masses`, renormalised exactly.
    pub fn normalized(points: Vec<Point>, masses: &[f64]) -> Result<Self, SolveError> {
        let exact = masses
            .iter()
            .map(|&w| decimal_to_ratio(w).map_err(|e| SolveError::InvalidMeasure(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let total: BigRational = exact.iter().sum();
        if total.is_zero() {
            return Err(SolveError::InvalidMeasure("total mass is zero".into()));
        }
        Self::from_exact(points, exact.into_iter().map(|w| w / &total).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn weights_f64(&self) -> Vec<f64> {
        self.weights.iter().map(ratio_to_f64).collect()
    }

    pub fn weights_as<S: Scalar>(&self) -> Vec<S> {
        self.weights.iter().map(S::from_ratio).collect()
    }

    /// Exact total mass; equal to one up to the float-input tolerance.
    pub fn total(&self) -> BigRational {
        self.weights.iter().sum()
    }

    pub fn is_uniform(&self) -> bool {
        self.weights.iter().all(|w| *w == self.weights[0])
    }

    pub fn translate(&self, by: &[f64]) -> Result<Self, SolveError> {
        if by.len() != self.dim() {
            return Err(SolveError::DimensionMismatch { expected: self.dim(), got: by.len() });
        }
        let points = self.points.iter().map(|p| p.translate(by)).collect();
        Self::from_exact(points, self.weights.clone())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureRepr {
    points: Vec<Point>,
    weights: Vec<ScalarRepr>,
}

impl Serialize for DiscreteMeasure {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MeasureRepr { points: self.points.clone(), weights: self.weights.iter().map(|w| w.to_repr()).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiscreteMeasure {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = MeasureRepr::deserialize(d)?;
        let weights =
            repr.weights.iter().map(BigRational::from_repr).collect::<Result<Vec<_>, _>>().map_err(D::Error::custom)?;
        DiscreteMeasure::from_exact(repr.points, weights).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pt;

    #[test]
    fn validation() {
        assert!(DiscreteMeasure::new(vec![], vec![]).is_err());
        assert!(DiscreteMeasure::new(vec![pt![0]], vec![0.5, 0.5]).is_err());
        assert!(DiscreteMeasure::new(vec![pt![0], pt![0]], vec![0.5, 0.5]).is_err());
        assert!(DiscreteMeasure::new(vec![pt![0.0], pt![-0.0]], vec![0.5, 0.5]).is_err());
        assert!(DiscreteMeasure::new(vec![pt![0], pt![1]], vec![1.0, 0.0]).is_err());
        assert!(DiscreteMeasure::new(vec![pt![0], pt![1]], vec![0.6, 0.6]).is_err());
        assert!(DiscreteMeasure::new(vec![pt![0], pt![1, 2]], vec![0.5, 0.5]).is_err());
        let m = DiscreteMeasure::new(vec![pt![0], pt![1]], vec![0.25, 0.75]).unwrap();
        assert_eq!(m.total(), BigRational::one());
    }

    #[test]
    fn uniform_is_exact() {
        let m = DiscreteMeasure::uniform(vec![pt![0], pt![1], pt![2]]).unwrap();
        assert_eq!(m.total(), BigRational::one());
        assert!(m.is_uniform());
    }

    #[test]
    fn json_accepts_fractions() {
        let m: DiscreteMeasure =
            serde_json::from_str(r#"{"points": [[0], [1], [2]], "weights": ["1/3", "1/3", "1/3"]}"#).unwrap();
        assert_eq!(m.total(), BigRational::one());
        assert!(serde_json::from_str::<DiscreteMeasure>(r#"{"points": [[0]], "weights": [2]}"#).is_err());
    }

    #[test]
    fn normalizes_exactly() {
        let m = DiscreteMeasure::normalized(vec![pt![0], pt![1], pt![2]], &[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(m.weights()[0], BigRational::new(1.into(), 3.into()));
    }
}
