//! Compares the simplex against brute force over permutations on seeded
//! random instances.

use branching_ot::lexot::{oracle_lex_permutations, solve_lexicographic, DiscreteMeasure};
use branching_ot::{CostSpec, Gauge, Point};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cloud(rng: &mut ChaCha8Rng, n: usize) -> DiscreteMeasure {
    let pts = (0..n).map(|_| Point::new(vec![rng.gen(), rng.gen()]).unwrap()).collect();
    DiscreteMeasure::uniform(pts).unwrap()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let spec = CostSpec::new(Gauge::crystalline(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]])?, 2.0)?;
    for n in 2..=6 {
        let (mu, nu) = (cloud(&mut rng, n), cloud(&mut rng, n));
        let lp = solve_lexicographic::<BigRational>(&spec, &mu, &nu)?;
        let bf = oracle_lex_permutations::<BigRational>(&spec, &mu, &nu)?;
        let map = lp.plan.as_map().expect("vertex of the Birkhoff polytope");
        println!(
            "n={n}: values agree {} / {}, plan among lex-optimal permutations: {}",
            lp.primary_value == bf.primary_value,
            lp.secondary_value == bf.secondary_value,
            bf.lex_optimal.contains(&map)
        );
    }
    Ok(())
}
