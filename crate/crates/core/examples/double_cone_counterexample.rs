//! The double cone `sqrt(x^2 + y^2) + |z|` is not cylinder-like: along a
//! generator of its unit sphere no ball radius works, for any step size.

use branching_ot::convexity_probe::{cylinder_like_probe, probe_all_equal_level_pairs, ProbeConfig, ProbeOutcome};
use branching_ot::Gauge;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = Gauge::double_cone3();
    let xbar = [2.0 / 3.0, 0.0, 1.0 / 3.0];
    let ybar = [1.0 / 3.0, 0.0, 2.0 / 3.0];
    for eps in [1e-1, 1e-2, 1e-3] {
        let cfg = ProbeConfig { eps_grid: vec![eps], ..ProbeConfig::default() };
        match cylinder_like_probe(&g, &xbar, &ybar, &cfg)? {
            ProbeOutcome::Violation(v) => {
                println!("eps={eps:e}: violated on the {:?} side at {:?}, g rises by {:.3e}", v.side, v.point, v.margin)
            }
            ProbeOutcome::Witness(w) => println!("eps={eps:e}: unexpected witness {w:?}"),
        }
    }

    let r = probe_all_equal_level_pairs(&g, 1.0, 200, 0, &ProbeConfig::default())?;
    println!("random level-set pairs: {} witnesses, {} violations", r.witnesses, r.violations);
    if let Some(f) = r.failures.first() {
        println!("first failing pair: {:?} / {:?}", f.xbar, f.ybar);
    }
    Ok(())
}
