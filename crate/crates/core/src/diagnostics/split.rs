use serde::{Deserialize, Serialize};

use super::PlanSupport;
use crate::convexity_probe::{strict_on_segment, DEFAULT_STRICT_TOL};
use crate::gauges::CostSpec;

/// Relative share of a row's mass below which an arc is ignored.
pub const DEFAULT_MASS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitReport {
    /// Total source mass on rows with two or more arcs.
    pub split_mass: f64,
    pub split_rows: Vec<usize>,
    /// Split rows with two displacements `y - x` on which the cost is
    /// strictly convex.
    pub strict_pair_rows: Vec<usize>,
    pub mass_tol: f64,
}

impl SplitReport {
    pub fn is_map(&self) -> bool {
        self.split_rows.is_empty()
    }
}

/// Finds the rows of a plan that send mass to more than one target, and
/// which of them split across displacements where `d ↦ g(d)^p` is strictly
/// convex. Arcs carrying less than `mass_tol` times their row's mass are
/// ignored.
pub fn split_report(support: &PlanSupport, spec: &CostSpec, mass_tol: f64) -> SplitReport {
    let rows = support.row_mass();
    let mut displacements: Vec<Vec<Vec<f64>>> = vec![Vec::new(); rows.len()];
    for a in support.arcs() {
        if a.mass > mass_tol * rows[a.source] {
            displacements[a.source].push(a.x.displacement_to(&a.y).into_inner());
        }
    }
    let mut report = SplitReport { split_mass: 0.0, split_rows: Vec::new(), strict_pair_rows: Vec::new(), mass_tol };
    for (row, ds) in displacements.iter().enumerate() {
        if ds.len() < 2 {
            continue;
        }
        report.split_mass += rows[row];
        report.split_rows.push(row);
        let strict = ds.iter().enumerate().any(|(k, d)| {
            ds[k + 1..].iter().any(|e| strict_on_segment(spec, d, e, DEFAULT_STRICT_TOL).is_ok_and(|v| v.is_strict))
        });
        if strict {
            report.strict_pair_rows.push(row);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauges::Gauge;
    use crate::lexot::{DiscreteMeasure, PlanArc, TransportPlan};
    use crate::pt;

    fn one_to_two(gauge: Gauge) -> SplitReport {
        let spec = CostSpec::new(gauge, 2.0).unwrap();
        let mu = DiscreteMeasure::uniform(vec![pt![0, 0]]).unwrap();
        let nu = DiscreteMeasure::uniform(vec![pt![2, 0], pt![2, 1]]).unwrap();
        let plan = TransportPlan::from_arcs(
            1,
            2,
            vec![PlanArc { source: 0, target: 0, mass: 0.5 }, PlanArc { source: 0, target: 1, mass: 0.5 }],
        )
        .unwrap();
        split_report(&PlanSupport::new(&plan, &mu, &nu).unwrap(), &spec, DEFAULT_MASS_TOL)
    }

    #[test]
    fn flat_face_split_is_not_strict() {
        let r = one_to_two(Gauge::linf(2).unwrap());
        assert_eq!(r.split_mass, 1.0);
        assert_eq!(r.split_rows, vec![0]);
        assert!(r.strict_pair_rows.is_empty());
    }

    #[test]
    fn euclidean_split_is_strict() {
        let r = one_to_two(Gauge::euclidean(2).unwrap());
        assert_eq!(r.strict_pair_rows, vec![0]);
    }

    #[test]
    fn permutation_is_a_map() {
        let spec = CostSpec::new(Gauge::linf(1).unwrap(), 2.0).unwrap();
        let mu = DiscreteMeasure::uniform(vec![pt![0], pt![1]]).unwrap();
        let plan = TransportPlan::from_permutation(&[1, 0], 0.5).unwrap();
        let r = split_report(&PlanSupport::new(&plan, &mu, &mu).unwrap(), &spec, DEFAULT_MASS_TOL);
        assert!(r.is_map());
        assert_eq!(r.split_mass, 0.0);
    }

    #[test]
    fn tiny_arcs_are_ignored() {
        let spec = CostSpec::new(Gauge::linf(1).unwrap(), 2.0).unwrap();
        let mu = DiscreteMeasure::uniform(vec![pt![0]]).unwrap();
        let nu = DiscreteMeasure::new(vec![pt![1], pt![2]], vec![0.9999999999999, 0.0000000000001]).unwrap();
        let plan = TransportPlan::from_arcs(
            1,
            2,
            vec![
                PlanArc { source: 0, target: 0, mass: 0.9999999999999 },
                PlanArc { source: 0, target: 1, mass: 0.0000000000001 },
            ],
        )
        .unwrap();
        let r = split_report(&PlanSupport::new(&plan, &mu, &nu).unwrap(), &spec, DEFAULT_MASS_TOL);
        assert!(r.is_map());
    }
}
