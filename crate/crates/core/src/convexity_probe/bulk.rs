use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cylinder::{cylinder_like_probe, CylinderViolation, ProbeConfig, ProbeOutcome, WitnessBasis};
use super::ProbeError;
use crate::gauges::Gauge;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BulkFailure {
    pub trial: usize,
    pub xbar: Vec<f64>,
    pub ybar: Vec<f64>,
    pub violation: CylinderViolation,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BulkReport {
    pub level: f64,
    pub trials: usize,
    pub seed: u64,
    pub witnesses: usize,
    /// Witnesses that needed `δ` below the grid.
    pub refined_witnesses: usize,
    pub violations: usize,
    pub failures: Vec<BulkFailure>,
}

/// Half of the directions come from the integer lattice `{-2, ..., 2}^N`, so
/// pairs sharing a flat piece of the level set turn up with positive
/// probability; the rest are uniform in the cube.
fn direction(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let d: Vec<f64> = if rng.gen_bool(0.5) {
            (0..dim).map(|_| rng.gen_range(-2i32..=2) as f64).collect()
        } else {
            (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()
        };
        if d.iter().any(|c| *c != 0.0) {
            return d;
        }
    }
}

fn on_level(g: &Gauge, level: f64, d: Vec<f64>) -> Vec<f64> {
    let s = level / g.eval_unchecked(&d);
    d.into_iter().map(|c| c * s).collect()
}

/// Runs [`cylinder_like_probe`] on `trials` seeded pairs from the level set
/// `{g = level}`.
pub fn probe_all_equal_level_pairs(
    g: &Gauge,
    level: f64,
    trials: usize,
    seed: u64,
    cfg: &ProbeConfig,
) -> Result<BulkReport, ProbeError> {
    if !(level.is_finite() && level > 0.0) {
        return Err(ProbeError::Input(format!("level must be positive, got {level}")));
    }
    if !g.is_norm() {
        return Err(ProbeError::Unsupported("level sets are unbounded for a degenerate gauge".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report =
        BulkReport { level, trials, seed, witnesses: 0, refined_witnesses: 0, violations: 0, failures: Vec::new() };
    for trial in 0..trials {
        let (xbar, ybar) = loop {
            let x = on_level(g, level, direction(&mut rng, g.dim()));
            let y = on_level(g, level, direction(&mut rng, g.dim()));
            if x != y {
                break (x, y);
            }
        };
        match cylinder_like_probe(g, &xbar, &ybar, cfg)? {
            ProbeOutcome::Witness(w) => {
                report.witnesses += 1;
                if w.basis == WitnessBasis::StrictRefinement {
                    report.refined_witnesses += 1;
                }
            }
            ProbeOutcome::Violation(violation) => {
                report.violations += 1;
                report.failures.push(BulkFailure { trial, xbar, ybar, violation });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_gauge_is_unsupported() {
        let g = Gauge::abs_inner(vec![1.0, 0.0]).unwrap();
        assert!(matches!(
            probe_all_equal_level_pairs(&g, 1.0, 3, 0, &ProbeConfig::default()),
            Err(ProbeError::Unsupported(_))
        ));
    }

    #[test]
    fn linf_plane_has_no_violations() {
        let g = Gauge::linf(2).unwrap();
        let r = probe_all_equal_level_pairs(&g, 1.0, 30, 7, &ProbeConfig::default()).unwrap();
        assert_eq!(r.violations, 0, "{:?}", r.failures);
        assert_eq!(r.witnesses, 30);
    }
}
