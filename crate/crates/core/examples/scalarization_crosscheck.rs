//! Solves `c + λ d²` for shrinking λ and watches the plans settle on the
//! lexicographic one.

use branching_ot::lexot::{scalarization_crosscheck, DiscreteMeasure};
use branching_ot::{pt, CostSpec, Gauge};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = CostSpec::new(Gauge::linf(2)?, 2.0)?;
    // large λ prefers the matching that is closest in d², which is not primary-optimal
    let mu = DiscreteMeasure::uniform(vec![pt![1, 3], pt![0, 3], pt![2, 1]])?;
    let nu = DiscreteMeasure::uniform(vec![pt![5, 3], pt![4, 3], pt![4, 0]])?;
    let r = scalarization_crosscheck::<f64>(&spec, &mu, &nu, &[10.0, 1.0, 0.1, 1e-3, 1e-6])?;
    println!("lexicographic: primary {} secondary {}", r.lexicographic_primary, r.lexicographic_secondary);
    for e in &r.entries {
        println!(
            "lambda {:>7}: primary {:.6} secondary {:.6} matches {}",
            e.lambda, e.primary_value, e.secondary_value, e.matches_lexicographic
        );
    }
    println!("stabilized: {}", r.stabilized);
    Ok(())
}
