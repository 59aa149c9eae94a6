//! Grid refinement under L-infinity with the target translated by (2, 0):
//! the secondary plan stays a map, a primary-optimal plan need not.

use branching_ot::diagnostics::{refinement_csv, refinement_experiment, Density, Generator, MarginalSpec};
use branching_ot::lexot::Mode;
use branching_ot::{CostSpec, Gauge};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = |translate| MarginalSpec { generator: Generator::Grid { dim: 2, density: Density::Uniform }, translate };
    let sizes: Vec<usize> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let sizes = if sizes.is_empty() { vec![16, 64] } else { sizes };

    for (name, gauge) in [("linf", Gauge::linf(2)?), ("euclidean", Gauge::euclidean(2)?)] {
        let spec = CostSpec::new(gauge, 2.0)?;
        let rows = refinement_experiment(&grid(None), &grid(Some(vec![2.0, 0.0])), &sizes, &spec, 0, Mode::Float)?;
        println!("# {name}");
        print!("{}", refinement_csv(&rows));
    }

    let ramp = MarginalSpec { generator: Generator::Iid { dim: 2, density: Density::Ramp }, translate: None };
    let spec = CostSpec::new(Gauge::linf(2)?, 2.0)?;
    let rows = refinement_experiment(&ramp, &grid(None), &[16], &spec, 7, Mode::Float)?;
    println!("# iid ramp -> grid");
    print!("{}", refinement_csv(&rows));
    Ok(())
}
