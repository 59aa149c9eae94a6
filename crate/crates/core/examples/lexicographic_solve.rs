//! Two-stage solve on the 2x2 square under L-infinity: every coupling is
//! primary-optimal, the secondary stage picks the straight matching.

use branching_ot::lexot::{
    adversarial_primary_plan, build_cost_matrices, solve_lexicographic, solve_lexicographic_tables, DiscreteMeasure,
};
use branching_ot::{pt, CostSpec, Gauge};
use num_rational::BigRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = CostSpec::new(Gauge::linf(2)?, 2.0)?;
    let mu = DiscreteMeasure::uniform(vec![pt![0, 0], pt![0, 1]])?;
    let nu = DiscreteMeasure::uniform(vec![pt![2, 0], pt![2, 1]])?;

    let exact = solve_lexicographic::<BigRational>(&spec, &mu, &nu)?;
    println!("rational: primary {} secondary {}", exact.primary_value, exact.secondary_value);
    println!("optimal face {:?}", exact.optimal_face.arcs());
    for a in exact.plan.arcs() {
        println!("  {} -> {} : {}", a.source, a.target, a.mass);
    }

    let (c, d) = build_cost_matrices::<f64>(&spec, &mu, &nu)?;
    let (a, b) = (mu.weights_f64(), nu.weights_f64());
    let float = solve_lexicographic_tables(&c, &d, &a, &b)?;
    let adversarial = adversarial_primary_plan(&float, &d, &a, &b)?;
    println!(
        "adversarial plan: primary {} secondary {} arcs {}",
        adversarial.objective(&c),
        adversarial.objective(&d),
        adversarial.arcs().len()
    );
    println!("{}", serde_json::to_string_pretty(&float.to_repr())?);
    Ok(())
}
