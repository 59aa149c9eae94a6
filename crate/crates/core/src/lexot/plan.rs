use serde::{Deserialize, Serialize};

use super::{CostTable, SolveError};
use crate::scalar::{Scalar, ScalarRepr};

/// One arc of a plan: `mass` units from source `source` to target `target`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanArc<S> {
    pub source: usize,
    pub target: usize,
    pub mass: S,
}

/// Coupling between an `m`-atom source and an `n`-atom target measure,
/// stored by support. Arcs are sorted by `(source, target)` and unique.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportPlan<S> {
    m: usize,
    n: usize,
    arcs: Vec<PlanArc<S>>,
}

impl<S: Scalar> TransportPlan<S> {
    /// Builds a plan from arbitrary arcs; duplicates are merged and
    /// non-positive masses dropped.
    pub fn from_arcs(m: usize, n: usize, arcs: impl IntoIterator<Item = PlanArc<S>>) -> Result<Self, SolveError> {
        let mut arcs: Vec<PlanArc<S>> = arcs.into_iter().collect();
        if let Some(a) = arcs.iter().find(|a| a.source >= m || a.target >= n) {
            return Err(SolveError::InvalidPlan(format!("arc ({}, {}) outside a {m} x {n} plan", a.source, a.target)));
        }
        arcs.sort_by_key(|a| (a.source, a.target));
        let mut merged: Vec<PlanArc<S>> = Vec::with_capacity(arcs.len());
        for a in arcs {
            match merged.last_mut() {
                Some(last) if last.source == a.source && last.target == a.target => {
                    last.mass = last.mass.clone() + a.mass;
                }
                _ => merged.push(a),
            }
        }
        merged.retain(|a| a.mass > S::zero());
        Ok(TransportPlan { m, n, arcs: merged })
    }

    /// The plan that sends source `i` entirely to target `perm[i]`.
    pub fn from_permutation(perm: &[usize], mass: S) -> Result<Self, SolveError> {
        let n = perm.len();
        Self::from_arcs(
            n,
            n,
            perm.iter().enumerate().map(|(i, &j)| PlanArc { source: i, target: j, mass: mass.clone() }),
        )
    }

    pub fn sources(&self) -> usize {
        self.m
    }

    pub fn targets(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[PlanArc<S>] {
        &self.arcs
    }

    pub fn row_sums(&self) -> Vec<S> {
        let mut rows = vec![S::zero(); self.m];
        for a in &self.arcs {
            rows[a.source] = rows[a.source].clone() + a.mass.clone();
        }
        rows
    }

    pub fn col_sums(&self) -> Vec<S> {
        let mut cols = vec![S::zero(); self.n];
        for a in &self.arcs {
            cols[a.target] = cols[a.target].clone() + a.mass.clone();
        }
        cols
    }

    /// Largest marginal violation over both sides.
    pub fn marginal_error(&self, a: &[S], b: &[S]) -> S {
        let mut worst = S::zero();
        for (got, want) in self.row_sums().iter().zip(a).chain(self.col_sums().iter().zip(b)) {
            let e = (got.clone() - want.clone()).abs();
            if e > worst {
                worst = e;
            }
        }
        worst
    }

    pub fn objective(&self, costs: &CostTable<S>) -> S {
        self.arcs.iter().fold(S::zero(), |acc, a| acc + costs.get(a.source, a.target).clone() * a.mass.clone())
    }

    /// `target[i]` when every source row has exactly one arc.
    pub fn as_map(&self) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.m];
        for a in &self.arcs {
            if map[a.source] != usize::MAX {
                return None;
            }
            map[a.source] = a.target;
        }
        map.iter().all(|&t| t != usize::MAX).then_some(map)
    }

    /// `(1 - t) * self + t * other`.
    pub fn mix(&self, other: &Self, t: &S) -> Result<Self, SolveError> {
        if self.m != other.m || self.n != other.n {
            return Err(SolveError::InvalidPlan("mixing plans of different shapes".into()));
        }
        let keep = S::one() - t.clone();
        let arcs = self
            .arcs
            .iter()
            .map(|a| PlanArc { mass: a.mass.clone() * keep.clone(), ..a.clone() })
            .chain(other.arcs.iter().map(|a| PlanArc { mass: a.mass.clone() * t.clone(), ..a.clone() }));
        Self::from_arcs(self.m, self.n, arcs)
    }

    /// Same support and masses within `tol`.
    pub fn same_as(&self, other: &Self, tol: &S) -> bool {
        self.m == other.m
            && self.n == other.n
            && self.arcs.len() == other.arcs.len()
            && self.arcs.iter().zip(&other.arcs).all(|(a, b)| {
                a.source == b.source && a.target == b.target && (a.mass.clone() - b.mass.clone()).abs() <= *tol
            })
    }

    pub fn to_f64(&self) -> TransportPlan<f64> {
        TransportPlan {
            m: self.m,
            n: self.n,
            arcs: self
                .arcs
                .iter()
                .map(|a| PlanArc { source: a.source, target: a.target, mass: a.mass.to_f64() })
                .collect(),
        }
    }

    pub fn to_repr(&self) -> PlanRepr {
        PlanRepr {
            sources: self.m,
            targets: self.n,
            arcs: self
                .arcs
                .iter()
                .map(|a| ArcRepr { source: a.source, target: a.target, mass: a.mass.to_repr() })
                .collect(),
        }
    }

    pub fn from_repr(repr: &PlanRepr) -> Result<Self, SolveError> {
        let arcs = repr
            .arcs
            .iter()
            .map(|a| {
                S::from_repr(&a.mass)
                    .map(|mass| PlanArc { source: a.source, target: a.target, mass })
                    .map_err(|e| SolveError::InvalidPlan(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(a) = arcs.iter().find(|a| a.mass <= S::zero()) {
            return Err(SolveError::InvalidPlan(format!("arc ({}, {}) has non-positive mass", a.source, a.target)));
        }
        Self::from_arcs(repr.sources, repr.targets, arcs)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcRepr {
    pub source: usize,
    pub target: usize,
    pub mass: ScalarRepr,
}

/// JSON shape of a plan, shared by solution files and `verify` input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanRepr {
    pub sources: usize,
    pub targets: usize,
    pub arcs: Vec<ArcRepr>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_and_sorts() {
        let p = TransportPlan::from_arcs(
            2,
            2,
            vec![
                PlanArc { source: 1, target: 0, mass: 0.25 },
                PlanArc { source: 0, target: 1, mass: 0.25 },
                PlanArc { source: 1, target: 0, mass: 0.25 },
                PlanArc { source: 0, target: 0, mass: 0.0 },
                PlanArc { source: 0, target: 1, mass: 0.25 },
            ],
        )
        .unwrap();
        assert_eq!(p.arcs().len(), 2);
        assert_eq!(p.arcs()[0], PlanArc { source: 0, target: 1, mass: 0.5 });
        assert_eq!(p.as_map(), Some(vec![1, 0]));
        assert!(TransportPlan::from_arcs(1, 1, vec![PlanArc { source: 0, target: 3, mass: 1.0 }]).is_err());
    }

    #[test]
    fn mixing_two_permutations_splits_rows() {
        let id = TransportPlan::from_permutation(&[0, 1], 0.5).unwrap();
        let swap = TransportPlan::from_permutation(&[1, 0], 0.5).unwrap();
        let mid = id.mix(&swap, &0.5).unwrap();
        assert_eq!(mid.arcs().len(), 4);
        assert_eq!(mid.as_map(), None);
        assert_eq!(mid.marginal_error(&[0.5, 0.5], &[0.5, 0.5]), 0.0);
    }
}
