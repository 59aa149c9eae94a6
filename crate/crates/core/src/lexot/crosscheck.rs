//! Single-objective cross-check of the two-stage method.
//!
//! For small `λ > 0` the minimiser of `c + λ d²` lies on the primary optimal
//! face and minimises `d²` there, so the plans for a decreasing sequence of
//! `λ` should settle on the lexicographic plan.

use super::{build_cost_matrices, solve_lexicographic_tables, solve_primary, DiscreteMeasure, SolveError};
use crate::gauges::CostSpec;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct CrosscheckEntry<S> {
    pub lambda: f64,
    pub matches_lexicographic: bool,
    pub primary_value: S,
    pub secondary_value: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrosscheckReport<S> {
    pub lexicographic_primary: S,
    pub lexicographic_secondary: S,
    pub entries: Vec<CrosscheckEntry<S>>,
    /// The smallest `λ` reproduces the lexicographic plan.
    pub stabilized: bool,
}

pub fn scalarization_crosscheck<S: Scalar>(
    spec: &CostSpec,
    mu: &DiscreteMeasure,
    nu: &DiscreteMeasure,
    lambdas: &[f64],
) -> Result<CrosscheckReport<S>, SolveError> {
    if lambdas.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
        return Err(SolveError::Unsupported("λ values must be positive and finite".into()));
    }
    if lambdas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(SolveError::Unsupported("λ values must be strictly decreasing".into()));
    }
    let (c, d) = build_cost_matrices::<S>(spec, mu, nu)?;
    let (a, b) = (mu.weights_as::<S>(), nu.weights_as::<S>());
    let lex = solve_lexicographic_tables(&c, &d, &a, &b)?;
    let mass_tol = S::tolerance(0.0, 1e-9);

    let mut entries = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let combined = c.combine(&d, &S::from_decimal(lambda));
        let sol = solve_primary(&combined, &a, &b)?;
        entries.push(CrosscheckEntry {
            lambda,
            matches_lexicographic: sol.plan.same_as(&lex.plan, &mass_tol),
            primary_value: sol.plan.objective(&c),
            secondary_value: sol.plan.objective(&d),
        });
    }
    let stabilized = entries.last().is_some_and(|e| e.matches_lexicographic);
    Ok(CrosscheckReport {
        lexicographic_primary: lex.primary_value,
        lexicographic_secondary: lex.secondary_value,
        entries,
        stabilized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauges::Gauge;
    use crate::pt;
    use num_rational::BigRational;

    #[test]
    fn lambda_list_is_validated() {
        let spec = CostSpec::new(Gauge::linf(1).unwrap(), 2.0).unwrap();
        let mu = DiscreteMeasure::uniform(vec![pt![0], pt![1]]).unwrap();
        assert!(scalarization_crosscheck::<f64>(&spec, &mu, &mu, &[0.1, 0.2]).is_err());
        assert!(scalarization_crosscheck::<f64>(&spec, &mu, &mu, &[0.0]).is_err());
        let report = scalarization_crosscheck::<BigRational>(&spec, &mu, &mu, &[0.1, 0.01]).unwrap();
        assert!(report.stabilized);
    }
}
