use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

/// A point (or displacement) of `R^N` with finite coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point(Vec<f64>);

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PointError {
    #[error("a point needs at least one coordinate")]
    Empty,
    #[error("coordinate {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self, PointError> {
        if coords.is_empty() {
            return Err(PointError::Empty);
        }
        if let Some((index, &value)) = coords.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            return Err(PointError::NonFinite { index, value });
        }
        Ok(Point(coords))
    }

    pub fn zeros(dim: usize) -> Self {
        Point(vec![0.0; dim.max(1)])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// `other - self`.
    pub fn displacement_to(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }

    pub fn translate(&self, by: &[f64]) -> Point {
        Point(self.0.iter().zip(by).map(|(a, b)| a + b).collect())
    }

    pub fn sq_dist(&self, other: &Point) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| (b - a) * (b - a)).sum()
    }
}

impl Deref for Point {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = PointError;

    fn try_from(v: Vec<f64>) -> Result<Self, Self::Error> {
        Point::new(v)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Shorthand for building points in tests and examples; panics on
/// non-finite input.
#[macro_export]
macro_rules! pt {
    ($($c:expr),+ $(,)?) => {
        $crate::Point::new(vec![$($c as f64),+]).expect("finite coordinates")
    };
}
