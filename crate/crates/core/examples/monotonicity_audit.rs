//! Pairwise double monotonicity and cyclical monotonicity on good and bad
//! plans. Violations carry their points and replay exactly.

use branching_ot::diagnostics::{
    check_cyclical_monotonicity, check_pairwise_double_monotonicity, split_report, PlanSupport, DEFAULT_MASS_TOL,
};
use branching_ot::lexot::{DiscreteMeasure, TransportPlan};
use branching_ot::{pt, CostSpec, Gauge};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let linf = CostSpec::new(Gauge::linf(2)?, 2.0)?;
    let mu = DiscreteMeasure::uniform(vec![pt![0, 0], pt![0, 1]])?;
    let nu = DiscreteMeasure::uniform(vec![pt![2, 0], pt![2, 1]])?;
    for (name, perm) in [("straight", [0, 1]), ("crossing", [1, 0])] {
        let plan = TransportPlan::from_permutation(&perm, 0.5)?;
        let support = PlanSupport::new(&plan, &mu, &nu)?;
        let r = check_pairwise_double_monotonicity(&support, &linf, 1e-9);
        println!("{name}: passed={} violations={}", r.passed(), r.violation_count);
        for v in &r.first_violations {
            println!("  {:?}: lhs {} > rhs {} (replay {:?})", v.kind, v.lhs, v.rhs, v.replay(&linf)?);
        }
    }

    let eu = CostSpec::new(Gauge::euclidean(1)?, 2.0)?;
    let a = DiscreteMeasure::uniform(vec![pt![0], pt![1]])?;
    let b = DiscreteMeasure::uniform(vec![pt![2], pt![3]])?;
    let swapped = TransportPlan::from_permutation(&[1, 0], 0.5)?;
    let support = PlanSupport::new(&swapped, &a, &b)?;
    let r = check_cyclical_monotonicity(&support, &eu, 3, 20_000, 0, 1e-9);
    println!("swapped 1D plan: {}", serde_json::to_string(&r)?);

    let split = split_report(&support, &eu, DEFAULT_MASS_TOL);
    println!("swapped 1D plan is a map: {}", split.is_map());
    Ok(())
}
