//! Midpoint test for strict convexity along segments, for gauges and for
//! the cost as a function of the displacement.

use branching_ot::convexity_probe::{strict_on_segment, DEFAULT_STRICT_TOL};
use branching_ot::{CostSpec, Gauge};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let linf = Gauge::linf(2)?;
    let eu = Gauge::euclidean(2)?;
    let segments = [([1.0, 0.0], [1.0, 0.5]), ([1.0, 0.0], [0.0, 1.0]), ([1.0, 1.0], [2.0, 2.0])];
    for (x, y) in &segments {
        let a = strict_on_segment(&linf, x, y, DEFAULT_STRICT_TOL)?;
        let b = strict_on_segment(&eu, x, y, DEFAULT_STRICT_TOL)?;
        println!(
            "{x:?} -- {y:?}: linf strict={} (gap {:.3e}), euclidean strict={} (gap {:.3e})",
            a.is_strict, a.midpoint_gap, b.is_strict, b.midpoint_gap
        );
    }

    // displacements (2,0) and (2,1) from the square instance
    for (name, g) in [("linf", linf), ("euclidean", eu)] {
        let h = CostSpec::new(g, 2.0)?;
        let v = strict_on_segment(&h, &[2.0, 0.0], &[2.0, 1.0], DEFAULT_STRICT_TOL)?;
        println!("g^2 for {name}: strict on displacements = {}", v.is_strict);
    }
    Ok(())
}
