use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{PlanSupport, SupportArc};
use crate::gauges::{CostSpec, GaugeError};

pub const DEFAULT_MAX_CYCLE_LEN: usize = 3;
pub const DEFAULT_SUBSET_CAP: usize = 20_000;
/// Violations kept in a report; the total is always counted.
pub const MAX_RECORDED_VIOLATIONS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// The plan's arcs cost more than a rearrangement of their targets.
    PrimaryCycle,
    /// Primary costs tie on a pair but the squared distances do not.
    SecondaryPair,
}

/// One failed inequality, stored with enough data to re-evaluate it.
///
/// `lhs` sums the cost over `(sources[k], targets[k])`; `rhs` over
/// `(sources[k], targets[(k + 1) % len])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub sources: Vec<usize>,
    pub targets: Vec<usize>,
    pub xs: Vec<Vec<f64>>,
    pub ys: Vec<Vec<f64>>,
    pub lhs: f64,
    pub rhs: f64,
}

impl Violation {
    /// Recomputes `(lhs, rhs)` from the stored points.
    pub fn replay(&self, spec: &CostSpec) -> Result<(f64, f64), GaugeError> {
        let len = self.xs.len();
        let cost = |x: &[f64], y: &[f64]| -> Result<f64, GaugeError> {
            match self.kind {
                ViolationKind::PrimaryCycle => spec.eval(x, y),
                ViolationKind::SecondaryPair => Ok(sq_dist(x, y)),
            }
        };
        let mut lhs = 0.0;
        let mut rhs = 0.0;
        for k in 0..len {
            lhs += cost(&self.xs[k], &self.ys[k])?;
            rhs += cost(&self.xs[k], &self.ys[(k + 1) % len])?;
        }
        Ok((lhs, rhs))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub pairs_checked: usize,
    pub cycles_checked: usize,
    pub violation_count: usize,
    /// Canonically sorted, at most [`MAX_RECORDED_VIOLATIONS`].
    pub first_violations: Vec<Violation>,
    /// Largest `lhs - rhs` over all checks; `None` when nothing was checked.
    pub max_slack: Option<f64>,
    pub tol: f64,
}

impl MonotonicityReport {
    fn new(tol: f64) -> Self {
        MonotonicityReport {
            pairs_checked: 0,
            cycles_checked: 0,
            violation_count: 0,
            first_violations: Vec::new(),
            max_slack: None,
            tol,
        }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    fn observe(&mut self, lhs: f64, rhs: f64) -> bool {
        let slack = lhs - rhs;
        self.max_slack = Some(self.max_slack.map_or(slack, |s| s.max(slack)));
        slack > self.tol
    }

    fn record(&mut self, v: Violation) {
        self.violation_count += 1;
        self.first_violations.push(v);
    }

    fn finish(mut self) -> Self {
        self.first_violations.sort_by(|a, b| {
            (a.kind, &a.sources, &a.targets).cmp(&(b.kind, &b.sources, &b.targets)).then(a.lhs.total_cmp(&b.lhs))
        });
        self.first_violations.truncate(MAX_RECORDED_VIOLATIONS);
        self
    }
}

fn sq_dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum()
}

fn cost(spec: &CostSpec, x: &[f64], y: &[f64]) -> f64 {
    spec.eval(x, y).unwrap_or(f64::NAN)
}

fn violation(kind: ViolationKind, arcs: &[&SupportArc], lhs: f64, rhs: f64) -> Violation {
    Violation {
        kind,
        sources: arcs.iter().map(|a| a.source).collect(),
        targets: arcs.iter().map(|a| a.target).collect(),
        xs: arcs.iter().map(|a| a.x.coords().to_vec()).collect(),
        ys: arcs.iter().map(|a| a.y.coords().to_vec()).collect(),
        lhs,
        rhs,
    }
}

/// Checks every pair of arcs with distinct endpoints for
/// `c(x,y) + c(x',y') <= c(x,y') + c(x',y)`, and, where the two sides agree
/// within `tol`, the same inequality for the squared Euclidean distance.
pub fn check_pairwise_double_monotonicity(support: &PlanSupport, spec: &CostSpec, tol: f64) -> MonotonicityReport {
    let mut report = MonotonicityReport::new(tol);
    let arcs = support.arcs();
    for (p, q) in arcs.iter().tuple_combinations() {
        if p.source == q.source || p.target == q.target {
            continue;
        }
        report.pairs_checked += 1;
        let lhs = cost(spec, &p.x, &p.y) + cost(spec, &q.x, &q.y);
        let rhs = cost(spec, &p.x, &q.y) + cost(spec, &q.x, &p.y);
        if report.observe(lhs, rhs) {
            report.record(violation(ViolationKind::PrimaryCycle, &[p, q], lhs, rhs));
        } else if (lhs - rhs).abs() <= tol {
            let lhs2 = sq_dist(&p.x, &p.y) + sq_dist(&q.x, &q.y);
            let rhs2 = sq_dist(&p.x, &q.y) + sq_dist(&q.x, &p.y);
            if lhs2 - rhs2 > tol {
                report.record(violation(ViolationKind::SecondaryPair, &[p, q], lhs2, rhs2));
            }
        }
    }
    report.finish()
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// Checks c-cyclical monotonicity on arc subsets of size `2..=max_cycle_len`.
///
/// For each size, all subsets are enumerated when there are at most
/// `subset_cap` of them; otherwise `subset_cap` subsets are drawn with the
/// seeded generator. Every cyclic rearrangement of targets within a subset
/// is compared against the plan.
pub fn check_cyclical_monotonicity(
    support: &PlanSupport,
    spec: &CostSpec,
    max_cycle_len: usize,
    subset_cap: usize,
    seed: u64,
    tol: f64,
) -> MonotonicityReport {
    let mut report = MonotonicityReport::new(tol);
    let arcs = support.arcs();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 2..=max_cycle_len.min(arcs.len()) {
        let subsets: Vec<Vec<usize>> = if binomial(arcs.len(), k) <= subset_cap as u128 {
            (0..arcs.len()).combinations(k).collect()
        } else {
            (0..subset_cap)
                .map(|_| {
                    let mut s = sample(&mut rng, arcs.len(), k).into_vec();
                    s.sort_unstable();
                    s
                })
                .collect()
        };
        for subset in subsets {
            check_subset(arcs, &subset, spec, &mut report);
        }
    }
    report.finish()
}

/// Every cyclic order of the subset, each checked once: the first arc stays
/// in front and the rest are permuted.
fn check_subset(arcs: &[SupportArc], subset: &[usize], spec: &CostSpec, report: &mut MonotonicityReport) {
    let lhs: f64 = subset.iter().map(|&i| cost(spec, &arcs[i].x, &arcs[i].y)).sum();
    for rest in subset[1..].iter().copied().permutations(subset.len() - 1) {
        let order: Vec<&SupportArc> = std::iter::once(subset[0]).chain(rest).map(|i| &arcs[i]).collect();
        if order.iter().map(|a| a.source).all_unique() && order.iter().map(|a| a.target).all_unique() {
            report.cycles_checked += 1;
            let rhs: f64 = (0..order.len()).map(|t| cost(spec, &order[t].x, &order[(t + 1) % order.len()].y)).sum();
            if report.observe(lhs, rhs) {
                report.record(violation(ViolationKind::PrimaryCycle, &order, lhs, rhs));
            }
        }
    }
}
