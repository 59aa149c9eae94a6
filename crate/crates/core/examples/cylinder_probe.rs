//! Cylinder-like probe on seeded equal-level pairs of three branching
//! norms, plus one pair in detail.

use branching_ot::convexity_probe::{cylinder_like_probe, probe_all_equal_level_pairs, ProbeConfig};
use branching_ot::Gauge;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ProbeConfig::default();
    let gauges = [
        ("linf", Gauge::linf(2)?),
        ("crystalline", Gauge::crystalline(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]])?),
        ("cylinder3", Gauge::cylinder3()),
    ];
    for (name, g) in &gauges {
        let r = probe_all_equal_level_pairs(g, 1.0, 50, 2024, &cfg)?;
        println!(
            "{name:12} pairs={} witnesses={} (refined {}) violations={}",
            r.trials, r.witnesses, r.refined_witnesses, r.violations
        );
    }

    let out = cylinder_like_probe(&gauges[0].1, &[1.0, 0.25], &[0.5, 1.0], &cfg)?;
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}
