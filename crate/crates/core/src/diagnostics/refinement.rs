use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{split_report, PlanSupport, DEFAULT_MASS_TOL};
use crate::gauges::CostSpec;
use crate::lexot::{
    adversarial_primary_plan, build_cost_matrices, solve_lexicographic_tables, DiscreteMeasure, Mode, SolveError,
};
use crate::point::Point;
use crate::scalar::Scalar;

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("invalid experiment: {0}")]
    Input(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Densities on the unit cube, up to normalisation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Density {
    Uniform,
    /// `1 + x_1`.
    Ramp,
}

impl Density {
    pub fn value(self, x: &[f64]) -> f64 {
        match self {
            Density::Uniform => 1.0,
            Density::Ramp => 1.0 + x[0],
        }
    }

    fn sup(self) -> f64 {
        match self {
            Density::Uniform => 1.0,
            Density::Ramp => 2.0,
        }
    }
}

/// How `n` atoms are drawn from a density on `[0,1]^dim`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Generator {
    /// Midpoints of the `k^dim = n` grid, weighted by the density.
    Grid { dim: usize, density: Density },
    /// `n` seeded draws by rejection, equal weights.
    Iid { dim: usize, density: Density },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarginalSpec {
    pub generator: Generator,
    /// Shift applied to every atom after sampling.
    #[serde(default)]
    pub translate: Option<Vec<f64>>,
}

fn grid_side(n: usize, dim: usize) -> Option<usize> {
    let k = (n as f64).powf(1.0 / dim as f64).round() as usize;
    (k.checked_pow(dim as u32) == Some(n)).then_some(k)
}

impl MarginalSpec {
    pub fn dim(&self) -> usize {
        match self.generator {
            Generator::Grid { dim, .. } | Generator::Iid { dim, .. } => dim,
        }
    }

    /// Draws `n` atoms; `rng` is only used by the iid generator.
    pub fn sample(&self, n: usize, rng: &mut ChaCha8Rng) -> Result<DiscreteMeasure, ExperimentError> {
        let dim = self.dim();
        if dim == 0 || n == 0 {
            return Err(ExperimentError::Input("dimension and size must be positive".into()));
        }
        let measure = match self.generator {
            Generator::Grid { density, .. } => {
                let k = grid_side(n, dim)
                    .ok_or_else(|| ExperimentError::Input(format!("{n} is not a perfect power of {dim}")))?;
                let points: Vec<Point> = (0..n)
                    .map(|mut idx| {
                        let mut coords: Vec<f64> = (0..dim)
                            .map(|_| {
                                let c = idx % k;
                                idx /= k;
                                (c as f64 + 0.5) / k as f64
                            })
                            .collect();
                        coords.reverse();
                        Point::new(coords).expect("grid coordinates are finite")
                    })
                    .collect();
                if density == Density::Uniform {
                    DiscreteMeasure::uniform(points)?
                } else {
                    let masses: Vec<f64> = points.iter().map(|p| density.value(p)).collect();
                    DiscreteMeasure::normalized(points, &masses)?
                }
            }
            Generator::Iid { density, .. } => {
                let mut points = Vec::with_capacity(n);
                while points.len() < n {
                    let x: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>()).collect();
                    if rng.gen::<f64>() * density.sup() < density.value(&x) {
                        points.push(Point::new(x).expect("samples are finite"));
                    }
                }
                DiscreteMeasure::uniform(points)?
            }
        };
        match &self.translate {
            Some(t) => Ok(measure.translate(t)?),
            None => Ok(measure),
        }
    }
}

/// One level of a refinement sweep. Column order is fixed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefinementRow {
    pub n: usize,
    pub split_mass_secondary: f64,
    pub split_mass_adversarial: f64,
    pub primary_value: f64,
    pub secondary_value: f64,
}

fn run_level<S: Scalar>(
    spec: &CostSpec,
    mu: &DiscreteMeasure,
    nu: &DiscreteMeasure,
) -> Result<RefinementRow, ExperimentError> {
    let (primary, secondary) = build_cost_matrices::<S>(spec, mu, nu)?;
    let (a, b) = (mu.weights_as::<S>(), nu.weights_as::<S>());
    let solution = solve_lexicographic_tables(&primary, &secondary, &a, &b)?;
    let adversarial = adversarial_primary_plan(&solution, &secondary, &a, &b)?;
    let split = |plan| -> Result<f64, ExperimentError> {
        Ok(split_report(&PlanSupport::new(plan, mu, nu)?, spec, DEFAULT_MASS_TOL).split_mass)
    };
    Ok(RefinementRow {
        n: mu.len(),
        split_mass_secondary: split(&solution.plan)?,
        split_mass_adversarial: split(&adversarial)?,
        primary_value: solution.primary_value.to_f64(),
        secondary_value: solution.secondary_value.to_f64(),
    })
}

/// Solves one instance per size in `sizes` and records how much source
/// mass the secondary plan and the adversarial primary-optimal plan split.
///
/// Level `k` draws `μ` from stream `2k` and `ν` from stream `2k + 1` of the
/// seeded generator, so rows do not depend on the other sizes requested.
pub fn refinement_experiment(
    mu: &MarginalSpec,
    nu: &MarginalSpec,
    sizes: &[usize],
    spec: &CostSpec,
    seed: u64,
    mode: Mode,
) -> Result<Vec<RefinementRow>, ExperimentError> {
    if mu.dim() != spec.dim() || nu.dim() != spec.dim() {
        return Err(ExperimentError::Input(format!(
            "marginal dimensions {} and {} do not match the cost dimension {}",
            mu.dim(),
            nu.dim(),
            spec.dim()
        )));
    }
    sizes
        .iter()
        .enumerate()
        .map(|(level, &n)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(2 * level as u64);
            let m = mu.sample(n, &mut rng)?;
            rng.set_stream(2 * level as u64 + 1);
            let v = nu.sample(n, &mut rng)?;
            match mode {
                Mode::Float => run_level::<f64>(spec, &m, &v),
                Mode::Rational => run_level::<BigRational>(spec, &m, &v),
            }
        })
        .collect()
}

/// CSV with a header row.
pub fn refinement_csv(rows: &[RefinementRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv output is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauges::Gauge;

    fn grid(translate: Option<Vec<f64>>) -> MarginalSpec {
        MarginalSpec { generator: Generator::Grid { dim: 2, density: Density::Uniform }, translate }
    }

    #[test]
    fn grid_points_and_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let m = grid(None).sample(4, &mut rng).unwrap();
        let pts: Vec<Vec<f64>> = m.points().iter().map(|p| p.coords().to_vec()).collect();
        assert_eq!(pts, vec![vec![0.25, 0.25], vec![0.25, 0.75], vec![0.75, 0.25], vec![0.75, 0.75]]);
        assert!(grid(None).sample(5, &mut rng).is_err());
        let ramp = MarginalSpec { generator: Generator::Grid { dim: 1, density: Density::Ramp }, translate: None };
        let m = ramp.sample(2, &mut rng).unwrap();
        assert!(m.weights()[1] > m.weights()[0]);
    }

    #[test]
    fn iid_is_seeded() {
        let spec = MarginalSpec { generator: Generator::Iid { dim: 2, density: Density::Ramp }, translate: None };
        let a = spec.sample(10, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let b = spec.sample(10, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn identical_marginals_split_nothing() {
        let spec = CostSpec::new(Gauge::linf(2).unwrap(), 2.0).unwrap();
        let rows = refinement_experiment(&grid(None), &grid(None), &[4, 9], &spec, 0, Mode::Float).unwrap();
        assert_eq!(rows.len(), 2);
        for r in rows {
            assert_eq!((r.split_mass_secondary, r.split_mass_adversarial, r.primary_value), (0.0, 0.0, 0.0));
        }
    }

    #[test]
    fn translated_grid_under_linf() {
        let spec = CostSpec::new(Gauge::linf(2).unwrap(), 2.0).unwrap();
        let rows = refinement_experiment(&grid(None), &grid(Some(vec![2.0, 0.0])), &[4, 16], &spec, 0, Mode::Rational)
            .unwrap();
        for r in &rows {
            assert_eq!(r.split_mass_secondary, 0.0);
            assert!(r.split_mass_adversarial > 0.0);
            assert_eq!(r.primary_value, 4.0);
            assert_eq!(r.secondary_value, 4.0);
        }
        let csv = refinement_csv(&rows);
        assert_eq!(
            csv.lines().next(),
            Some("n,split_mass_secondary,split_mass_adversarial,primary_value,secondary_value")
        );
        assert_eq!(csv.lines().count(), 3);
    }
}
