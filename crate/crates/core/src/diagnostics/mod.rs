//! Structural checks on transport plans.
//!
//! Every check works on a [`PlanSupport`], which pairs each arc of a plan
//! with the coordinates of its endpoints. Values are evaluated in `f64`.

mod monotonicity;
mod refinement;
mod split;

pub use monotonicity::{
    check_cyclical_monotonicity, check_pairwise_double_monotonicity, MonotonicityReport, Violation, ViolationKind,
    DEFAULT_MAX_CYCLE_LEN, DEFAULT_SUBSET_CAP, MAX_RECORDED_VIOLATIONS,
};
pub use refinement::{
    refinement_csv, refinement_experiment, Density, ExperimentError, Generator, MarginalSpec, RefinementRow,
};
pub use split::{split_report, SplitReport, DEFAULT_MASS_TOL};

use crate::lexot::{DiscreteMeasure, SolveError, TransportPlan};
use crate::point::Point;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct SupportArc {
    pub source: usize,
    pub target: usize,
    pub x: Point,
    pub y: Point,
    pub mass: f64,
}

/// Arcs of a plan with endpoint coordinates and `f64` masses.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanSupport {
    arcs: Vec<SupportArc>,
    row_mass: Vec<f64>,
}

impl PlanSupport {
    pub fn new<S: Scalar>(
        plan: &TransportPlan<S>,
        mu: &DiscreteMeasure,
        nu: &DiscreteMeasure,
    ) -> Result<Self, SolveError> {
        if plan.sources() != mu.len() || plan.targets() != nu.len() {
            return Err(SolveError::InvalidPlan(format!(
                "plan is {} x {} but the measures have {} and {} atoms",
                plan.sources(),
                plan.targets(),
                mu.len(),
                nu.len()
            )));
        }
        if mu.dim() != nu.dim() {
            return Err(SolveError::DimensionMismatch { expected: mu.dim(), got: nu.dim() });
        }
        let arcs: Vec<SupportArc> = plan
            .arcs()
            .iter()
            .map(|a| SupportArc {
                source: a.source,
                target: a.target,
                x: mu.points()[a.source].clone(),
                y: nu.points()[a.target].clone(),
                mass: a.mass.to_f64(),
            })
            .collect();
        let row_mass = plan.row_sums().iter().map(Scalar::to_f64).collect();
        Ok(PlanSupport { arcs, row_mass })
    }

    pub fn arcs(&self) -> &[SupportArc] {
        &self.arcs
    }

    pub fn row_mass(&self) -> &[f64] {
        &self.row_mass
    }

    pub fn dim(&self) -> Option<usize> {
        self.arcs.first().map(|a| a.x.dim())
    }
}
