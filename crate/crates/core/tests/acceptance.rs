//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::time::{Duration, Instant};

use branching_ot::convexity_probe::{
    cylinder_like_probe, probe_all_equal_level_pairs, strict_on_segment, ProbeConfig, ProbeOutcome, DEFAULT_STRICT_TOL,
};
use branching_ot::diagnostics::{
    check_cyclical_monotonicity, check_pairwise_double_monotonicity, refinement_experiment, split_report, Density,
    Generator, MarginalSpec, PlanSupport, DEFAULT_MASS_TOL, DEFAULT_SUBSET_CAP,
};
use branching_ot::lexot::{
    adversarial_primary_plan, build_cost_matrices, oracle_lex_permutations, solve_lexicographic,
    solve_lexicographic_tables, DiscreteMeasure, LexSolution, Mode, TransportPlan,
};
use branching_ot::{pt, CostSpec, Gauge, Point, Scalar};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn cloud(rng: &mut ChaCha8Rng, n: usize) -> DiscreteMeasure {
    let pts = (0..n).map(|_| Point::new(vec![rng.gen(), rng.gen()]).unwrap()).collect();
    DiscreteMeasure::uniform(pts).unwrap()
}

fn gauge(k: usize) -> Gauge {
    match k {
        0 => Gauge::linf(2).unwrap(),
        1 => Gauge::crystalline(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap(),
        _ => Gauge::euclidean(2).unwrap(),
    }
}

struct Case {
    spec: CostSpec,
    mu: DiscreteMeasure,
    nu: DiscreteMeasure,
}

/// The 200 seeded instances shared by criteria 1-4.
fn criterion_one_cases() -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    (0..200)
        .map(|i| {
            let n = 2 + i % 6;
            let p = [1.5, 2.0, 3.0][(i / 6) % 3];
            let spec = CostSpec::new(gauge((i / 18) % 3), p).unwrap();
            Case { spec, mu: cloud(&mut rng, n), nu: cloud(&mut rng, n) }
        })
        .collect()
}

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Either arithmetic, reduced to what the criteria need.
struct Solved {
    plan: TransportPlan<f64>,
    primary_plan: TransportPlan<f64>,
    map: Option<Vec<usize>>,
}

fn solve_and_compare<S: Scalar>(c: &Case, exact: bool) -> Result<Solved, String> {
    let sol: LexSolution<S> = solve_lexicographic(&c.spec, &c.mu, &c.nu).map_err(|e| e.to_string())?;
    let oracle = oracle_lex_permutations::<S>(&c.spec, &c.mu, &c.nu).map_err(|e| e.to_string())?;
    let values_ok = if exact {
        sol.primary_value == oracle.primary_value && sol.secondary_value == oracle.secondary_value
    } else {
        rel_close(sol.primary_value.to_f64(), oracle.primary_value.to_f64())
            && rel_close(sol.secondary_value.to_f64(), oracle.secondary_value.to_f64())
    };
    if !values_ok {
        return Err(format!(
            "values {} / {} vs oracle {} / {}",
            sol.primary_value, sol.secondary_value, oracle.primary_value, oracle.secondary_value
        ));
    }
    let map = sol.plan.as_map();
    if !map.as_ref().is_some_and(|m| oracle.lex_optimal.contains(m)) {
        return Err(format!("plan {map:?} is not among {:?}", oracle.lex_optimal));
    }
    Ok(Solved { plan: sol.plan.to_f64(), primary_plan: sol.primary_plan.to_f64(), map })
}

fn solve_case(c: &Case) -> Result<(Solved, bool), String> {
    if c.spec.supports_exact() {
        solve_and_compare::<BigRational>(c, true).map(|s| (s, true))
    } else {
        solve_and_compare::<f64>(c, false).map(|s| (s, false))
    }
}

fn criterion_1(cases: &[Case], solved: &[Solved], exact_count: usize, elapsed: Duration) -> Check {
    if elapsed > Duration::from_secs(60) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{} instances match the oracle ({exact_count} exact), {elapsed:.2?}", cases.len().min(solved.len())))
}

fn square() -> (CostSpec, DiscreteMeasure, DiscreteMeasure) {
    let spec = CostSpec::new(Gauge::linf(2).unwrap(), 2.0).unwrap();
    let mu = DiscreteMeasure::uniform(vec![pt![0, 0], pt![0, 1]]).unwrap();
    let nu = DiscreteMeasure::uniform(vec![pt![2, 0], pt![2, 1]]).unwrap();
    (spec, mu, nu)
}

fn criterion_2(cases: &[Case], solved: &[Solved]) -> Check {
    for (k, (c, s)) in cases.iter().zip(solved).enumerate() {
        let support = PlanSupport::new(&s.plan, &c.mu, &c.nu).map_err(|e| e.to_string())?;
        let r = split_report(&support, &c.spec, DEFAULT_MASS_TOL);
        if r.split_mass != 0.0 || s.map.is_none() {
            return Err(format!("instance {k}: secondary split mass {}", r.split_mass));
        }
    }
    let (spec, mu, nu) = square();
    let (cost, d2) = build_cost_matrices::<BigRational>(&spec, &mu, &nu).map_err(|e| e.to_string())?;
    let (a, b) = (mu.weights_as::<BigRational>(), nu.weights_as::<BigRational>());
    let sol = solve_lexicographic_tables(&cost, &d2, &a, &b).map_err(|e| e.to_string())?;
    let adv = adversarial_primary_plan(&sol, &d2, &a, &b).map_err(|e| e.to_string())?;
    if adv.objective(&cost) != sol.primary_value {
        return Err("adversarial plan is not primary-optimal".into());
    }
    let r = split_report(&PlanSupport::new(&adv, &mu, &nu).unwrap(), &spec, DEFAULT_MASS_TOL);
    if r.split_mass <= 0.0 {
        return Err("adversarial 2x2 plan does not split".into());
    }
    Ok(format!("secondary split_mass 0 on {} instances; adversarial 2x2 split_mass {}", cases.len(), r.split_mass))
}

fn criterion_3(cases: &[Case], solved: &[Solved]) -> Check {
    for (k, (c, s)) in cases.iter().zip(solved).enumerate() {
        let support = PlanSupport::new(&s.plan, &c.mu, &c.nu).unwrap();
        let r = check_pairwise_double_monotonicity(&support, &c.spec, 1e-9);
        if !r.passed() {
            return Err(format!("instance {k}: {:?}", r.first_violations.first()));
        }
    }
    let (spec, mu, nu) = square();
    let crossing = TransportPlan::from_permutation(&[1, 0], 0.5).unwrap();
    let r = check_pairwise_double_monotonicity(&PlanSupport::new(&crossing, &mu, &nu).unwrap(), &spec, 1e-9);
    match r.first_violations.as_slice() {
        [v] if v.lhs == 10.0 && v.rhs == 8.0 && v.replay(&spec) == Ok((10.0, 8.0)) => {
            Ok(format!("{} plans pass; crossing 2x2 rejected with lhs=10, rhs=8", cases.len()))
        }
        other => Err(format!("crossing plan report: {other:?}")),
    }
}

fn criterion_4(cases: &[Case], solved: &[Solved]) -> Check {
    for (k, (c, s)) in cases.iter().zip(solved).enumerate() {
        let support = PlanSupport::new(&s.primary_plan, &c.mu, &c.nu).unwrap();
        let r = check_cyclical_monotonicity(&support, &c.spec, 3, DEFAULT_SUBSET_CAP, k as u64, 1e-9);
        if !r.passed() {
            return Err(format!("instance {k}: {:?}", r.first_violations.first()));
        }
    }
    let spec = CostSpec::new(Gauge::euclidean(1).unwrap(), 2.0).unwrap();
    let mu = DiscreteMeasure::uniform(vec![pt![0], pt![1]]).unwrap();
    let nu = DiscreteMeasure::uniform(vec![pt![2], pt![3]]).unwrap();
    let swapped = TransportPlan::from_permutation(&[1, 0], 0.5).unwrap();
    let r = check_cyclical_monotonicity(&PlanSupport::new(&swapped, &mu, &nu).unwrap(), &spec, 3, 20_000, 0, 1e-9);
    match r.first_violations.as_slice() {
        [v] if v.sources.len() == 2 => Ok(format!(
            "{} primary plans pass at length 3; swapped 1D plan rejected at length 2 ({} > {})",
            cases.len(),
            v.lhs,
            v.rhs
        )),
        other => Err(format!("swapped plan report: {other:?}")),
    }
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let cfg = ProbeConfig::default();
    let mut summary = Vec::new();
    for (name, g) in [("linf", gauge(0)), ("crystalline", gauge(1)), ("cylinder3", Gauge::cylinder3())] {
        let r = probe_all_equal_level_pairs(&g, 1.0, 50, 7, &cfg).map_err(|e| e.to_string())?;
        if r.witnesses != 50 || r.violations != 0 {
            return Err(format!("{name}: {} witnesses, {} violations", r.witnesses, r.violations));
        }
        summary.push(format!("{name} 50/50"));
    }
    let xbar = [2.0 / 3.0, 0.0, 1.0 / 3.0];
    let ybar = [1.0 / 3.0, 0.0, 2.0 / 3.0];
    for eps in [1e-1, 1e-2, 1e-3] {
        let cfg = ProbeConfig { eps_grid: vec![eps], ..ProbeConfig::default() };
        match cylinder_like_probe(&Gauge::double_cone3(), &xbar, &ybar, &cfg).map_err(|e| e.to_string())? {
            ProbeOutcome::Violation(_) => {}
            ProbeOutcome::Witness(w) => return Err(format!("double cone witness at eps={eps}: {w:?}")),
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(30) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{}; double cone violated at eps 1e-1, 1e-2, 1e-3; {elapsed:.2?}", summary.join(", ")))
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let spec = CostSpec::new(Gauge::euclidean(2).unwrap(), 2.0).unwrap();
    let mut strict_pairs = 0;
    for k in 0..50 {
        let n = 2 + k % 6;
        let (mu, nu) = (cloud(&mut rng, n), cloud(&mut rng, n));
        let oracle = oracle_lex_permutations::<f64>(&spec, &mu, &nu).map_err(|e| e.to_string())?;
        if oracle.primary_optimal.len() != 1 {
            return Err(format!("instance {k}: {} primary-optimal permutations", oracle.primary_optimal.len()));
        }
        let sol = solve_lexicographic::<f64>(&spec, &mu, &nu).map_err(|e| e.to_string())?;
        if sol.plan.as_map().as_ref() != Some(&oracle.primary_optimal[0]) {
            return Err(format!("instance {k}: secondary plan differs from the unique optimum"));
        }
        for x in mu.points() {
            let ds: Vec<Point> = nu.points().iter().map(|y| x.displacement_to(y)).collect();
            for (i, d) in ds.iter().enumerate() {
                for e in &ds[i + 1..] {
                    let cross = d[0] * e[1] - d[1] * e[0];
                    if cross.abs() <= 1e-12 * (d.sq_dist(&Point::zeros(2)) + e.sq_dist(&Point::zeros(2))) {
                        continue;
                    }
                    let v = strict_on_segment(&spec, d, e, DEFAULT_STRICT_TOL).map_err(|e| e.to_string())?;
                    if !v.is_strict {
                        return Err(format!("instance {k}: {d} -- {e} not strict"));
                    }
                    strict_pairs += 1;
                }
            }
        }
    }
    Ok(format!("50 unique optima reproduced; {strict_pairs} non-collinear displacement pairs strict"))
}

fn criterion_7() -> Check {
    let start = Instant::now();
    let spec = CostSpec::new(Gauge::linf(2).unwrap(), 2.0).unwrap();
    let grid = |translate| MarginalSpec { generator: Generator::Grid { dim: 2, density: Density::Uniform }, translate };
    let rows = refinement_experiment(&grid(None), &grid(Some(vec![2.0, 0.0])), &[16, 64, 256], &spec, 0, Mode::Float)
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    for r in &rows {
        if r.split_mass_secondary != 0.0 || r.split_mass_adversarial < 0.2 {
            return Err(format!("n={}: {r:?}", r.n));
        }
    }
    if elapsed > Duration::from_secs(300) {
        return Err(format!("took {elapsed:?}"));
    }
    let adv: Vec<String> = rows.iter().map(|r| format!("n={} adv={}", r.n, r.split_mass_adversarial)).collect();
    Ok(format!("secondary split 0 at every level; {}; {elapsed:.2?}", adv.join(", ")))
}

fn main() {
    let cases = criterion_one_cases();
    let start = Instant::now();
    let mut solved = Vec::with_capacity(cases.len());
    let mut exact_count = 0;
    let mut first_error = None;
    for (k, c) in cases.iter().enumerate() {
        match solve_case(c) {
            Ok((s, exact)) => {
                exact_count += usize::from(exact);
                solved.push(s);
            }
            Err(e) => {
                first_error = Some(format!("instance {k}: {e}"));
                break;
            }
        }
    }
    let c1 = match first_error {
        Some(e) => Err(e),
        None => criterion_1(&cases, &solved, exact_count, start.elapsed()),
    };
    let complete = solved.len() == cases.len();
    let needs_c1 = |f: &dyn Fn() -> Check| if complete { f() } else { Err("criterion 1 did not complete".into()) };

    let results: Vec<(usize, Check)> = vec![
        (1, c1),
        (2, needs_c1(&|| criterion_2(&cases, &solved))),
        (3, needs_c1(&|| criterion_3(&cases, &solved))),
        (4, needs_c1(&|| criterion_4(&cases, &solved))),
        (5, criterion_5()),
        (6, criterion_6()),
        (7, criterion_7()),
    ];
    let mut failed = 0;
    for (k, r) in &results {
        match r {
            Ok(msg) => println!("criterion {k}: PASS - {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {k}: FAIL - {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
