//! Builds every gauge kind, evaluates it at a few points and prints its
//! JSON descriptor.

use branching_ot::{CostSpec, Gauge};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let crystalline = Gauge::crystalline(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]])?;
    // max(|x_3|, |(x_1, x_2)|_inf) built from pieces
    let stacked = Gauge::make_max(
        Gauge::make_projected(Gauge::linf(2)?, vec![0, 1], 3)?,
        Gauge::abs_inner(vec![0.0, 0.0, 1.0])?,
    )?;
    let zoo = vec![
        ("euclidean", Gauge::euclidean(2)?, vec![3.0, 4.0]),
        ("l1", Gauge::l1(2)?, vec![3.0, -4.0]),
        ("linf", Gauge::linf(2)?, vec![3.0, -4.0]),
        ("p=3", Gauge::pnorm(2, 3.0)?, vec![1.0, 1.0]),
        ("crystalline", crystalline, vec![1.0, -1.0]),
        ("cylinder3", Gauge::cylinder3(), vec![3.0, 4.0, -2.0]),
        ("doublecone3", Gauge::double_cone3(), vec![3.0, 4.0, -2.0]),
        ("stacked", stacked, vec![0.5, -2.0, 1.0]),
        ("abs_inner", Gauge::abs_inner(vec![1.0, 2.0])?, vec![1.0, 1.0]),
    ];
    for (name, g, x) in &zoo {
        println!("{name:12} g({x:?}) = {:<8} norm={} exact={}", g.eval(x)?, g.is_norm(), g.supports_exact());
    }

    let json = serde_json::to_string(&zoo[7].1)?;
    println!("stacked descriptor: {json}");
    let back: Gauge = serde_json::from_str(&json)?;
    assert_eq!(back.eval(&[0.5, -2.0, 1.0])?, 2.0);

    let cost = CostSpec::new(Gauge::linf(2)?, 2.0)?;
    println!("c((0,0), (2,1)) = {}", cost.eval(&[0.0, 0.0], &[2.0, 1.0])?);
    Ok(())
}
