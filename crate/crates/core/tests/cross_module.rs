//! Consistency between the Weierstrass pipeline, the collision calculus and
//! the lattice layer.

use miranda::collision::{collide, CollisionInput};
use miranda::kodaira::{FiberKind, FiberType};
use miranda::logsurface::{mmp_drive, MmpStatus};
use miranda::rational::int;
use miranda::weierstrass::{
    analyze, blow_up_chart, discriminant, parse_poly, BivariatePoly, Chart, WeierstrassError,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn pole_orders_add_at_crossings() {
    for b1 in 1..=4u32 {
        for b2 in 1..=4u32 {
            // 4a^3 + 27b^2 = 27 m (4 + m) with m = s^b1 t^b2
            let a = parse_poly("-3").unwrap();
            let b = parse_poly(&format!("2 + s^{b1}*t^{b2}")).unwrap();
            let r = analyze(&a, &b, 8).unwrap();
            assert_eq!(r.blowups(), 0);
            let types: Vec<FiberType> = r.divisors.iter().map(|d| d.fiber_type).collect();
            assert!(types.contains(&FiberType::new(FiberKind::I(b1))));
            assert!(types.contains(&FiberType::new(FiberKind::I(b2))));
            let c = r.collisions.iter().find(|c| c.location.contains("(0, 0)")).unwrap();
            let o = c.outcome.as_ref().unwrap();
            let order = blow_up_chart(&discriminant(&a, &b), Chart::SOverT).unwrap().exceptional_order;
            assert_eq!(order, b1 + b2);
            assert_eq!(o.gamma_pole, order);
            let direct = collide(&CollisionInput::section(FiberKind::I(b1), FiberKind::I(b2))).unwrap();
            assert_eq!(direct.gamma_type, FiberType::new(FiberKind::I(b1 + b2)));
            assert_eq!(&direct, o);
        }
    }
}

#[test]
fn exceptional_towers_contract_back() {
    for (a, b) in [("s", "t"), ("t", "s^3"), ("s^2", "t^3 + s^5")] {
        let r = match analyze(&parse_poly(a).unwrap(), &parse_poly(b).unwrap(), 16) {
            Ok(r) => r,
            Err(e) => panic!("{a}, {b}: {e}"),
        };
        assert!(r.snc && r.lambda_pullback_holds(), "{a}, {b}");
        let (surface, lambda) = r.surface();
        let out = mmp_drive(&surface, &lambda).unwrap();
        assert_eq!(out.steps.len(), r.blowups(), "{a}, {b}");
        assert!(out.steps.iter().all(|s| s.log_canonical_degree < int(0)));
        assert_eq!(out.status, MmpStatus::Minimal);
    }
}

fn random_poly(rng: &mut ChaCha8Rng) -> BivariatePoly {
    let n = rng.gen_range(1..5);
    BivariatePoly::from_terms((0..n).map(|_| {
        let i = rng.gen_range(0..=3);
        let j = rng.gen_range(0..=3 - i);
        ((i, j), int(rng.gen_range(-3..=3)))
    }))
}

#[test]
fn random_models_resolve_or_fail_cleanly() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let (mut ok, mut refused) = (0, 0);
    for _ in 0..60 {
        let (a, b) = (random_poly(&mut rng), random_poly(&mut rng));
        match analyze(&a, &b, 12) {
            Ok(r) => {
                assert!(r.snc, "{a}, {b}");
                assert!(r.lambda_pullback_holds(), "{a}, {b}");
                ok += 1;
            }
            Err(
                WeierstrassError::DegenerateFibration
                | WeierstrassError::IrrationalCenter(_)
                | WeierstrassError::BudgetExhausted { .. }
                | WeierstrassError::NonMinimalModel { .. },
            ) => refused += 1,
            Err(e) => panic!("{a}, {b}: {e}"),
        }
    }
    // refusals are legitimate for dense random input; resolutions must still occur
    assert!(ok >= 6 && ok + refused == 60, "{ok} resolved, {refused} refused");
}
