use branching_ot::gauges::GaugeDescriptor;
use branching_ot::{CostSpec, Gauge, GaugeError};
use num_rational::BigRational;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn crystalline() -> Gauge {
    Gauge::crystalline(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap()
}

#[test]
fn frozen_values() {
    let cases: Vec<(Gauge, Vec<f64>, f64)> = vec![
        (Gauge::linf(2).unwrap(), vec![3.0, -4.0], 4.0),
        (Gauge::l1(3).unwrap(), vec![1.0, -2.0, 3.0], 6.0),
        (Gauge::euclidean(2).unwrap(), vec![3.0, 4.0], 5.0),
        (crystalline(), vec![1.0, -1.0], 1.0),
        (crystalline(), vec![1.0, 2.0], 3.0),
        (Gauge::cylinder3(), vec![3.0, 4.0, -7.0], 7.0),
        (Gauge::cylinder3(), vec![3.0, 4.0, 1.0], 5.0),
        (Gauge::double_cone3(), vec![3.0, 4.0, -2.0], 7.0),
        (Gauge::abs_inner(vec![1.0, 2.0]).unwrap(), vec![3.0, -1.0], 1.0),
    ];
    for (g, x, want) in cases {
        assert_eq!(g.eval(&x).unwrap(), want, "{} at {x:?}", g.kind());
    }
}

#[test]
fn descriptors_from_json() {
    let json = r#"{"kind": "max", "params": {
        "left": {"kind": "projected", "params": {"inner": {"kind": "pnorm", "params": {"dim": 2, "p": 2}}, "coords": [0, 1], "dim": 3}},
        "right": {"kind": "absinner", "params": {"v": [0, 0, 1]}}
    }}"#;
    let g: Gauge = serde_json::from_str(json).unwrap();
    assert_eq!(g.dim(), 3);
    assert!(g.is_norm());
    assert_eq!(g.eval(&[3.0, 4.0, 6.0]).unwrap(), 6.0);
    assert_eq!(g.eval(&[3.0, 4.0, 1.0]).unwrap(), 5.0);

    let d: GaugeDescriptor = serde_json::from_str(r#"{"kind": "cylinder3"}"#).unwrap();
    assert_eq!(Gauge::try_from(d).unwrap().dim(), 3);

    for bad in [
        r#"{"kind": "linf", "params": {"dim": 0}}"#,
        r#"{"kind": "nope"}"#,
        r#"{"kind": "linf", "params": {"dim": 2, "extra": 1}}"#,
        r#"{"kind": "crystalline", "params": {"vectors": [[1, 0]]}}"#,
        r#"{"kind": "projected", "params": {"inner": {"kind": "linf", "params": {"dim": 2}}, "coords": [0, 5], "dim": 3}}"#,
    ] {
        assert!(serde_json::from_str::<Gauge>(bad).is_err(), "{bad}");
    }
}

#[test]
fn exact_evaluation() {
    let g = crystalline();
    assert_eq!(g.eval_exact(&[q(1, 3), q(1, 3)]).unwrap(), q(2, 3));
    assert!(matches!(
        Gauge::euclidean(2).unwrap().eval_exact(&[q(1, 1), q(0, 1)]),
        Err(GaugeError::ExactUnsupported(_))
    ));
    let spec = CostSpec::new(g, 3.0).unwrap();
    assert!(spec.supports_exact());
    assert_eq!(spec.eval_exact(&[q(0, 1), q(0, 1)], &[q(1, 2), q(0, 1)]).unwrap(), q(1, 8));
    assert!(!CostSpec::new(Gauge::linf(2).unwrap(), 1.5).unwrap().supports_exact());
}

#[test]
fn cost_spec_json_and_validation() {
    let spec: CostSpec = serde_json::from_str(r#"{"gauge": {"kind": "linf", "params": {"dim": 2}}, "p": 2}"#).unwrap();
    assert_eq!(spec.eval(&[0.0, 0.0], &[2.0, 1.0]).unwrap(), 4.0);
    assert!(CostSpec::new(Gauge::linf(2).unwrap(), 1.0).is_err());
    assert!(spec.eval(&[0.0], &[2.0, 1.0]).is_err());
}

fn gauge_strategy() -> impl Strategy<Value = Gauge> {
    prop_oneof![
        Just(Gauge::linf(2).unwrap()),
        Just(Gauge::l1(2).unwrap()),
        Just(Gauge::euclidean(2).unwrap()),
        Just(Gauge::pnorm(2, 3.0).unwrap()),
        Just(crystalline()),
    ]
}

proptest! {
    #[test]
    fn norm_axioms(g in gauge_strategy(), x in prop::array::uniform2(-10.0f64..10.0), y in prop::array::uniform2(-10.0f64..10.0), t in 0.0f64..5.0) {
        let gx = g.eval(&x).unwrap();
        let gy = g.eval(&y).unwrap();
        let sum = [x[0] + y[0], x[1] + y[1]];
        prop_assert!(g.eval(&sum).unwrap() <= gx + gy + 1e-9);
        prop_assert!((g.eval(&[t * x[0], t * x[1]]).unwrap() - t * gx).abs() <= 1e-9 * (1.0 + t * gx));
        prop_assert!(gx >= 0.0);
        prop_assert_eq!(g.eval(&[-x[0], -x[1]]).unwrap(), gx);
    }

    #[test]
    fn descriptor_round_trip(g in gauge_strategy(), x in prop::array::uniform2(-10.0f64..10.0)) {
        let back: Gauge = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        prop_assert_eq!(back.eval(&x).unwrap(), g.eval(&x).unwrap());
    }

    #[test]
    fn exact_matches_float(a in -50i64..50, b in -50i64..50, d in 1i64..20) {
        for g in [Gauge::linf(2).unwrap(), Gauge::l1(2).unwrap(), crystalline()] {
            let exact = g.eval_exact(&[q(a, d), q(b, d)]).unwrap();
            let float = g.eval(&[a as f64 / d as f64, b as f64 / d as f64]).unwrap();
            prop_assert!((float - branching_ot::scalar::ratio_to_f64(&exact)).abs() <= 1e-12 * (1.0 + float));
        }
    }
}
