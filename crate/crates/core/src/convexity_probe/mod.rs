//! Numerical probes for strict convexity along segments and for the
//! cylinder-like property of a convex gauge.
//!
//! Both probes produce evidence, not proofs: a witness says the defining
//! inequalities held on a finite, deterministic sample.

mod bulk;
mod cylinder;
mod sampling;

use serde::Serialize;

pub use bulk::{probe_all_equal_level_pairs, BulkFailure, BulkReport};
pub use cylinder::{
    cylinder_like_probe, CylinderViolation, CylinderWitness, ProbeConfig, ProbeOutcome, Side, WitnessBasis,
};
pub use sampling::ball_samples;

use crate::gauges::{CostSpec, Gauge, GaugeError};

/// Default relative tolerance of the midpoint test.
pub const DEFAULT_STRICT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ProbeError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("the segment endpoints coincide")]
    Diagonal,
    #[error("level mismatch: g(xbar) = {gx}, g(ybar) = {gy}")]
    LevelMismatch { gx: f64, gy: f64 },
    #[error("function is not convex on the segment (midpoint gap {gap})")]
    NotConvex { gap: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Gauge(#[from] GaugeError),
}

/// A real-valued convex function that the probes can evaluate.
pub trait ConvexFn {
    fn dim(&self) -> usize;
    fn value(&self, x: &[f64]) -> Result<f64, GaugeError>;
}

impl ConvexFn for Gauge {
    fn dim(&self) -> usize {
        Gauge::dim(self)
    }

    fn value(&self, x: &[f64]) -> Result<f64, GaugeError> {
        self.eval(x)
    }
}

/// The cost as a function of the displacement, `d ↦ g(d)^p`.
impl ConvexFn for CostSpec {
    fn dim(&self) -> usize {
        CostSpec::dim(self)
    }

    fn value(&self, d: &[f64]) -> Result<f64, GaugeError> {
        self.eval_displacement(d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StrictConvexityVerdict {
    pub is_strict: bool,
    /// `(h(x) + h(y)) / 2 - h((x + y) / 2)`.
    pub midpoint_gap: f64,
    /// Absolute tolerance applied to the gap.
    pub tolerance: f64,
}

/// Decides whether `h` is strictly convex on the segment `[x, y]`.
///
/// For convex `h` the gap at the midpoint vanishes exactly when `h` is
/// affine on the whole segment, so one evaluation settles the question.
/// `rel_tol` is scaled by `max(|h(x)|, |h(y)|, 1)`.
pub fn strict_on_segment<H: ConvexFn + ?Sized>(
    h: &H,
    x: &[f64],
    y: &[f64],
    rel_tol: f64,
) -> Result<StrictConvexityVerdict, ProbeError> {
    for p in [x, y] {
        if p.len() != h.dim() {
            return Err(GaugeError::DimensionMismatch { expected: h.dim(), got: p.len() }.into());
        }
    }
    if !(rel_tol.is_finite() && rel_tol >= 0.0) {
        return Err(ProbeError::Input(format!("tolerance must be non-negative, got {rel_tol}")));
    }
    if x == y {
        return Err(ProbeError::Diagonal);
    }
    let hx = h.value(x)?;
    let hy = h.value(y)?;
    let mid: Vec<f64> = x.iter().zip(y).map(|(a, b)| 0.5 * (a + b)).collect();
    let gap = 0.5 * hx + 0.5 * hy - h.value(&mid)?;
    let tolerance = rel_tol * hx.abs().max(hy.abs()).max(1.0);
    if gap < -tolerance {
        return Err(ProbeError::NotConvex { gap });
    }
    Ok(StrictConvexityVerdict { is_strict: gap > tolerance, midpoint_gap: gap, tolerance })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_face_of_linf() {
        let g = Gauge::linf(2).unwrap();
        let v = strict_on_segment(&g, &[1.0, 0.0], &[1.0, 0.5], DEFAULT_STRICT_TOL).unwrap();
        assert!(!v.is_strict);
        assert_eq!(v.midpoint_gap, 0.0);
    }

    #[test]
    fn euclidean_off_rays() {
        let g = Gauge::euclidean(2).unwrap();
        let v = strict_on_segment(&g, &[1.0, 0.0], &[0.0, 1.0], DEFAULT_STRICT_TOL).unwrap();
        assert!(v.is_strict);
        assert!((v.midpoint_gap - (1.0 - 0.5f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn abs_inner_constant_on_segment() {
        let g = Gauge::abs_inner(vec![1.0, 0.0]).unwrap();
        assert!(!strict_on_segment(&g, &[1.0, 0.0], &[1.0, 5.0], DEFAULT_STRICT_TOL).unwrap().is_strict);
    }

    #[test]
    fn diagonal_and_dimension_errors() {
        let g = Gauge::linf(2).unwrap();
        assert_eq!(strict_on_segment(&g, &[1.0, 0.0], &[1.0, 0.0], 1e-9), Err(ProbeError::Diagonal));
        assert!(matches!(strict_on_segment(&g, &[1.0], &[1.0, 0.0], 1e-9), Err(ProbeError::Gauge(_))));
        assert!(strict_on_segment(&g, &[1.0, 0.0], &[0.0, 1.0], -1.0).is_err());
    }

    #[test]
    fn cost_slice_sees_flat_displacements() {
        let linf = CostSpec::new(Gauge::linf(2).unwrap(), 2.0).unwrap();
        assert!(!strict_on_segment(&linf, &[2.0, 0.0], &[2.0, 1.0], 1e-9).unwrap().is_strict);
        let eu = CostSpec::new(Gauge::euclidean(2).unwrap(), 2.0).unwrap();
        let v = strict_on_segment(&eu, &[2.0, 0.0], &[2.0, 1.0], 1e-9).unwrap();
        assert!(v.is_strict);
        assert!((v.midpoint_gap - 0.25).abs() < 1e-12);
    }
}
