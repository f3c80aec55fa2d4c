mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use tangent_count::conic::{PointConfig, StrataSet};
use tangent_count::curve::{whitney_index, winding_index, ClosedCurve, CurveSpec, ImmersedCurve};
use tangent_count::fti::{alternating_sum, preset_spec, sign_tuples, Functional};
use tangent_count::invariant::{evaluate, formula_n};
use tangent_count::io::Scenario;
use tangent_count::kernel::{Pt, Tol};
use tangent_count::tangency::{audit_general_position, line_tangencies, signed_count};

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn indices_match_oracles(seed in any::<u64>(), px in -1.6f64..1.6, py in -1.6f64..1.6) {
        let tol = Tol::default();
        let c = random_curve(&mut ChaCha8Rng::seed_from_u64(seed), &tol);
        let p = Pt::new(px, py);
        prop_assert_eq!(whitney_index(&c, &tol).unwrap(), whitney_oracle(&c));
        if let Ok(w) = winding_index(&c, p, &tol) {
            prop_assert_eq!(w, winding_oracle(&c, p));
        }
    }

    #[test]
    fn reversal_negates_indices(seed in any::<u64>()) {
        let tol = Tol::default();
        let c = random_curve(&mut ChaCha8Rng::seed_from_u64(seed), &tol);
        let r = c.reversed();
        prop_assert_eq!(whitney_index(&r, &tol).unwrap(), -whitney_index(&c, &tol).unwrap());
        prop_assert_eq!(winding_index(&r, Pt::new(9.0, 9.0), &tol).unwrap(), 0);
    }

    #[test]
    fn line_count_is_translation_invariant(seed in any::<u64>(), dx in -5.0f64..5.0, dy in -5.0f64..5.0) {
        let tol = Tol::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_curve(&mut rng, &tol);
        let p = random_point(&mut rng, 1.6);
        let v = Pt::new(dx, dy);
        let moved = c.translated(v);
        let generic = |c: &dyn ClosedCurve, p: Pt| {
            audit_general_position(&PointConfig::new(1, vec![p]), &StrataSet::toy(p), c, &tol).ok
        };
        prop_assume!(generic(&c, p) && generic(&moved, p + v));
        let a = signed_count(&line_tangencies(p, &c, &tol).unwrap());
        let b = signed_count(&line_tangencies(p + v, &moved, &tol).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn two_sided_count_on_random_quads(seed in any::<u64>()) {
        let tol = Tol::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_quad(&mut rng, 1.5);
        let c = random_curve(&mut rng, &tol);
        match evaluate(&PointConfig::new(2, q.to_vec()), None, &c, &tol) {
            Ok(r) => {
                prop_assert_eq!(r.n_enum, Some(r.n_formula));
                prop_assert_eq!(r.n_formula, conic_formula_oracle(&q, &c));
            }
            Err(e) => {
                prop_assert!(e.is_general_position_failure(), "{}", e);
                prop_assume!(false);
            }
        }
    }

    #[test]
    fn formula_is_even(seed in any::<u64>()) {
        let tol = Tol::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_curve(&mut rng, &tol);
        let p = random_point(&mut rng, 1.6);
        if let Ok(n) = formula_n(&StrataSet::toy(p), &c, &tol) {
            prop_assert_eq!(n % 2, 0);
        }
    }

    #[test]
    fn curve_spec_round_trips(seed in any::<u64>()) {
        let tol = Tol::default();
        let c = random_curve(&mut ChaCha8Rng::seed_from_u64(seed), &tol);
        let spec = CurveSpec::from(&c);
        let text = serde_json::to_string(&spec).unwrap();
        let back: CurveSpec = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &spec);
        let rebuilt = back.build().unwrap();
        for i in 0..16 {
            let t = i as f64 / 16.0;
            prop_assert!(rebuilt.point(t).dist(c.point(t)) < 1e-12);
        }
    }
}

#[test]
fn constant_functional_sums_to_zero() {
    let tol = Tol::default();
    let spec = preset_spec("two-kink").unwrap().prepare(&tol).unwrap();
    let s = alternating_sum(&spec, |_| Ok(7)).unwrap();
    assert_eq!(s.sum, 0);
    assert_eq!(s.terms.len(), sign_tuples(2).len());
    let s = tangent_count::fti::functional_sum(&spec, &Functional::Constant { value: 3 }, &tol)
        .unwrap();
    assert_eq!(s.sum, 0);
}

#[test]
fn scenario_round_trip() {
    let path =
        std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("presets/wall_crossing_d2.json");
    let s = Scenario::load(&path).unwrap();
    let text = serde_json::to_string(&s).unwrap();
    assert_eq!(Scenario::from_json(&text).unwrap(), s);
}

#[test]
fn circle_spec_matches_constructor() {
    let a = CurveSpec::Circle {
        center: Pt::new(1.0, 2.0),
        radius: 0.5,
        turns: -2,
        phase: 0.3,
    }
    .build()
    .unwrap();
    let b = ImmersedCurve::circle_with_phase(Pt::new(1.0, 2.0), 0.5, -2, 0.3).unwrap();
    assert_eq!(a, b);
}
