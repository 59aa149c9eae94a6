use serde::{Deserialize, Serialize};

use super::sampling::ball_samples;
use super::{strict_on_segment, ProbeError, DEFAULT_STRICT_TOL};
use crate::gauges::Gauge;

/// Grids and tolerances of the cylinder-like probe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProbeConfig {
    pub eps_grid: Vec<f64>,
    pub delta_grid: Vec<f64>,
    /// Points sampled in each ball, centre included.
    pub samples: usize,
    /// Slack allowed in the sampled inequalities.
    pub tol: f64,
    /// Allowed `|g(xbar) - g(ybar)|`.
    pub level_tol: f64,
    /// Smallest radius tried when refining a strictly convex pair.
    pub min_delta: f64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            eps_grid: vec![1e-1, 1e-2, 1e-3],
            delta_grid: vec![1e-1, 1e-2],
            samples: 256,
            tol: 1e-12,
            level_tol: 1e-9,
            min_delta: 1e-12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessBasis {
    /// Held at a grid point `(ε, δ)`.
    Grid,
    /// The pair is strictly convex; `δ` was found by halving below the grid.
    StrictRefinement,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CylinderWitness {
    pub epsilon: f64,
    pub delta: f64,
    pub basis: WitnessBasis,
    pub samples_checked: usize,
    /// Largest `g(shifted) - g(point)` seen; non-positive up to `tol`.
    pub worst_increase: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `g(x - ε(xbar - ybar)) <= g(x)` near `xbar`.
    Source,
    /// `g(y + ε(xbar - ybar)) <= g(y)` near `ybar`.
    Target,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CylinderViolation {
    pub epsilon: f64,
    pub delta: f64,
    pub side: Side,
    pub point: Vec<f64>,
    pub g_point: f64,
    pub g_shifted: f64,
    /// `g_shifted - g_point`.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ProbeOutcome {
    Witness(CylinderWitness),
    /// No grid point passed; this is the largest violation seen.
    Violation(CylinderViolation),
}

impl ProbeOutcome {
    pub fn is_witness(&self) -> bool {
        matches!(self, ProbeOutcome::Witness(_))
    }
}

fn sorted_desc(grid: &[f64], name: &str) -> Result<Vec<f64>, ProbeError> {
    if grid.is_empty() {
        return Err(ProbeError::Input(format!("{name} grid is empty")));
    }
    if let Some(bad) = grid.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(ProbeError::Input(format!("{name} grid contains {bad}")));
    }
    let mut g = grid.to_vec();
    g.sort_by(|a, b| b.total_cmp(a));
    g.dedup();
    Ok(g)
}

enum Check {
    Pass { worst: f64, samples: usize },
    Fail(CylinderViolation),
}

fn check(g: &Gauge, xbar: &[f64], ybar: &[f64], v: &[f64], eps: f64, delta: f64, cfg: &ProbeConfig) -> Check {
    let mut worst = f64::NEG_INFINITY;
    let mut worst_violation: Option<CylinderViolation> = None;
    let mut samples = 0;
    for (side, center, sign) in [(Side::Source, xbar, -1.0), (Side::Target, ybar, 1.0)] {
        for p in ball_samples(center, delta, cfg.samples) {
            let shifted: Vec<f64> = p.iter().zip(v).map(|(c, d)| c + sign * eps * d).collect();
            let gp = g.eval_unchecked(&p);
            let gs = g.eval_unchecked(&shifted);
            let margin = gs - gp;
            samples += 1;
            worst = worst.max(margin);
            if margin > cfg.tol && worst_violation.as_ref().is_none_or(|w| margin > w.margin) {
                worst_violation =
                    Some(CylinderViolation { epsilon: eps, delta, side, point: p, g_point: gp, g_shifted: gs, margin });
            }
        }
    }
    match worst_violation {
        Some(v) => Check::Fail(v),
        None => Check::Pass { worst, samples },
    }
}

/// Probes the cylinder-like inequalities of `g` at the equal-level pair
/// `(xbar, ybar)`: for some `ε` and `δ`, `g(x - ε v̄) <= g(x)` on
/// `B_δ(xbar)` and `g(y + ε v̄) <= g(y)` on `B_δ(ybar)`, with
/// `v̄ = xbar - ybar`.
///
/// Grid points are tried with `ε` and then `δ` descending. A pair on which
/// `g` is strictly convex is additionally refined by halving `δ` below the
/// grid, since such pairs always admit a small enough ball.
pub fn cylinder_like_probe(
    g: &Gauge,
    xbar: &[f64],
    ybar: &[f64],
    cfg: &ProbeConfig,
) -> Result<ProbeOutcome, ProbeError> {
    for p in [xbar, ybar] {
        if p.len() != g.dim() {
            return Err(crate::gauges::GaugeError::DimensionMismatch { expected: g.dim(), got: p.len() }.into());
        }
        if p.iter().any(|c| !c.is_finite()) {
            return Err(ProbeError::Input("non-finite coordinate".into()));
        }
    }
    if xbar == ybar {
        return Err(ProbeError::Diagonal);
    }
    if cfg.samples == 0 {
        return Err(ProbeError::Input("samples must be positive".into()));
    }
    if !(cfg.tol >= 0.0 && cfg.level_tol >= 0.0 && cfg.min_delta > 0.0) {
        return Err(ProbeError::Input("tolerances must be non-negative and min_delta positive".into()));
    }
    let eps_grid = sorted_desc(&cfg.eps_grid, "epsilon")?;
    let delta_grid = sorted_desc(&cfg.delta_grid, "delta")?;
    let gx = g.eval(xbar)?;
    let gy = g.eval(ybar)?;
    if (gx - gy).abs() > cfg.level_tol {
        return Err(ProbeError::LevelMismatch { gx, gy });
    }
    let v: Vec<f64> = xbar.iter().zip(ybar).map(|(a, b)| a - b).collect();

    let mut worst: Option<CylinderViolation> = None;
    let mut keep_worst = |f: CylinderViolation| {
        if worst.as_ref().is_none_or(|w| f.margin > w.margin) {
            worst = Some(f);
        }
    };
    for &eps in &eps_grid {
        for &delta in &delta_grid {
            match check(g, xbar, ybar, &v, eps, delta, cfg) {
                Check::Pass { worst, samples } => {
                    return Ok(ProbeOutcome::Witness(CylinderWitness {
                        epsilon: eps,
                        delta,
                        basis: WitnessBasis::Grid,
                        samples_checked: samples,
                        worst_increase: worst,
                    }))
                }
                Check::Fail(f) => keep_worst(f),
            }
        }
    }

    if strict_on_segment(g, xbar, ybar, DEFAULT_STRICT_TOL)?.is_strict {
        let smallest = *delta_grid.last().expect("grid is non-empty");
        for &eps in &eps_grid {
            let mut delta = smallest / 2.0;
            while delta >= cfg.min_delta {
                match check(g, xbar, ybar, &v, eps, delta, cfg) {
                    Check::Pass { worst, samples } => {
                        return Ok(ProbeOutcome::Witness(CylinderWitness {
                            epsilon: eps,
                            delta,
                            basis: WitnessBasis::StrictRefinement,
                            samples_checked: samples,
                            worst_increase: worst,
                        }))
                    }
                    Check::Fail(_) => delta /= 2.0,
                }
            }
        }
    }
    Ok(ProbeOutcome::Violation(worst.expect("every grid point failed")))
}
