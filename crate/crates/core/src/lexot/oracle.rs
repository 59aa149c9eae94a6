//! Brute-force reference for uniform `n × n` instances.
//!
//! With equal weights `1/n` on both sides the couplings form a scaled
//! Birkhoff polytope whose vertices are permutation matrices, so both
//! stages of the lexicographic problem attain their optimum at a
//! permutation. The oracle enumerates all `n!` of them and evaluates the
//! costs directly from the points, sharing nothing with the simplex path.

use itertools::Itertools;

use super::{DiscreteMeasure, SolveError};
use crate::gauges::CostSpec;
use crate::scalar::{one_over, Scalar};

pub const MAX_ORACLE_ATOMS: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleOutcome<S> {
    pub primary_value: S,
    /// Smallest secondary value among primary-optimal permutations.
    pub secondary_value: S,
    /// All primary-optimal permutations, in lexicographic order.
    pub primary_optimal: Vec<Vec<usize>>,
    /// Primary-optimal permutations that also minimise the secondary cost.
    pub lex_optimal: Vec<Vec<usize>>,
}

pub fn oracle_lex_permutations<S: Scalar>(
    spec: &CostSpec,
    mu: &DiscreteMeasure,
    nu: &DiscreteMeasure,
) -> Result<OracleOutcome<S>, SolveError> {
    let n = mu.len();
    if nu.len() != n {
        return Err(SolveError::Unsupported(format!("oracle needs n = m, got {n} and {}", nu.len())));
    }
    if n > MAX_ORACLE_ATOMS {
        return Err(SolveError::Unsupported(format!("oracle enumerates at most {MAX_ORACLE_ATOMS} atoms, got {n}")));
    }
    if !mu.is_uniform() || !nu.is_uniform() {
        return Err(SolveError::Unsupported("oracle needs uniform weights".into()));
    }
    if mu.dim() != spec.dim() || nu.dim() != spec.dim() {
        return Err(SolveError::DimensionMismatch { expected: spec.dim(), got: mu.dim().max(nu.dim()) });
    }
    let xs: Vec<Vec<S>> = mu.points().iter().map(|p| S::lift(p)).collect();
    let ys: Vec<Vec<S>> = nu.points().iter().map(|p| S::lift(p)).collect();

    let mut cost = Vec::with_capacity(n);
    let mut dist = Vec::with_capacity(n);
    for x in &xs {
        cost.push(ys.iter().map(|y| S::cost(spec, x, y)).collect::<Result<Vec<_>, _>>()?);
        dist.push(ys.iter().map(|y| S::sq_dist(x, y)).collect::<Vec<_>>());
    }

    let mut scored = Vec::new();
    for perm in (0..n).permutations(n) {
        let mut c = S::zero();
        let mut d = S::zero();
        for (i, &j) in perm.iter().enumerate() {
            c = c + cost[i][j].clone();
            d = d + dist[i][j].clone();
        }
        scored.push((perm, c, d));
    }

    let best_c = scored.iter().map(|(_, c, _)| c.clone()).reduce(crate::scalar::min_of).expect("n >= 1");
    let c_tol = S::tolerance(best_c.to_f64(), 1e-9);
    let winners: Vec<_> = scored.into_iter().filter(|(_, c, _)| c.clone() - best_c.clone() <= c_tol).collect();
    let best_d = winners.iter().map(|(_, _, d)| d.clone()).reduce(crate::scalar::min_of).expect("non-empty");
    let d_tol = S::tolerance(best_d.to_f64(), 1e-9);
    let lex_optimal =
        winners.iter().filter(|(_, _, d)| d.clone() - best_d.clone() <= d_tol).map(|(p, _, _)| p.clone()).collect();

    let w: S = one_over(n);
    Ok(OracleOutcome {
        primary_value: best_c * w.clone(),
        secondary_value: best_d * w,
        primary_optimal: winners.into_iter().map(|(p, _, _)| p).collect(),
        lex_optimal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauges::Gauge;
    use crate::pt;
    use num_rational::BigRational;

    #[test]
    fn square_instance_has_two_primary_winners() {
        let spec = CostSpec::new(Gauge::linf(2).unwrap(), 2.0).unwrap();
        let mu = DiscreteMeasure::uniform(vec![pt![0, 0], pt![0, 1]]).unwrap();
        let nu = DiscreteMeasure::uniform(vec![pt![2, 0], pt![2, 1]]).unwrap();
        let out = oracle_lex_permutations::<BigRational>(&spec, &mu, &nu).unwrap();
        assert_eq!(out.primary_optimal, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(out.lex_optimal, vec![vec![0, 1]]);
        assert_eq!(out.primary_value, BigRational::from_integer(4.into()));
        assert_eq!(out.secondary_value, BigRational::from_integer(4.into()));
    }

    #[test]
    fn rejects_out_of_scope_inputs() {
        let spec = CostSpec::new(Gauge::linf(1).unwrap(), 2.0).unwrap();
        let two = DiscreteMeasure::uniform(vec![pt![0], pt![1]]).unwrap();
        let three = DiscreteMeasure::uniform(vec![pt![0], pt![1], pt![2]]).unwrap();
        let skewed = DiscreteMeasure::new(vec![pt![0], pt![1]], vec![0.25, 0.75]).unwrap();
        let nine = DiscreteMeasure::uniform((0..9).map(|k| pt![k]).collect()).unwrap();
        assert!(oracle_lex_permutations::<f64>(&spec, &two, &three).is_err());
        assert!(oracle_lex_permutations::<f64>(&spec, &two, &skewed).is_err());
        assert!(oracle_lex_permutations::<f64>(&spec, &nine, &nine).is_err());
    }
}
