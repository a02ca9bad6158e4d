mod common;

use lucascert::hyperdata::{validate_factorial_system, FactorialRatioSystem, HyperSystem};
use lucascert::rational::angle;
use lucascert::stepfun::{dwork_iter, dwork_map, iota, landau_eval, xi_eval, StepFunError};
use lucascert::{int, rat, Rational};
use num_integer::Integer;
use proptest::prelude::*;

fn apery() -> FactorialRatioSystem {
    validate_factorial_system(
        vec![vec![2, 1], vec![1, 1]],
        vec![vec![1, 0], vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]],
        2,
    )
    .unwrap()
}

fn hyper(alpha: &[Rational], beta: &[Rational]) -> HyperSystem {
    HyperSystem::univariate(alpha, beta).unwrap()
}

#[test]
fn angle_examples() {
    assert_eq!(angle(&rat(10, 3)), rat(1, 3));
    assert_eq!(angle(&int(1)), int(1));
    assert_eq!(angle(&rat(-1, 4)), rat(3, 4));
    assert_eq!(angle(&int(0)), int(1));
}

#[test]
fn dwork_examples() {
    assert_eq!(dwork_map(5, &rat(1, 3)).unwrap(), rat(2, 3));
    for p in [2, 3, 5, 7, 11, 101] {
        assert_eq!(dwork_map(p, &int(1)).unwrap(), int(1));
    }
    assert!(matches!(dwork_map(7, &rat(2, 7)), Err(StepFunError::PDividesDenominator { .. })));
}

#[test]
fn iota_examples() {
    assert_eq!(iota(41, 1, 35).unwrap(), 6);
    assert_eq!(iota(7, 3, 1).unwrap(), 1);
    assert_eq!(iota(5, 1, 6).unwrap(), 5);
    assert!(iota(5, 1, 10).is_err());
}

#[test]
fn xi_examples() {
    let ap = apery().to_hyper();
    assert_eq!(xi_eval(&ap, 1, &[rat(1, 2), rat(1, 2)]).unwrap(), 2);
    // reduced form floor(2x+y) + floor(x+y) on the unit box
    for i in 0..8 {
        for j in 0..8 {
            let (x, y) = (rat(i, 8), rat(j, 8));
            let reduced = (int(2) * &x + &y).floor() + (&x + &y).floor();
            assert_eq!(int(xi_eval(&ap, 1, &[x, y]).unwrap()), reduced);
        }
    }
    let s = hyper(&[rat(1, 2), rat(1, 2)], &[rat(2, 3), int(1)]);
    assert_eq!(xi_eval(&s, 5, &[rat(1, 3)]).unwrap(), -1);
    assert_eq!(xi_eval(&s, 1, &[int(0)]).unwrap(), 0);
    assert_eq!(xi_eval(&ap, 1, &[int(0), int(0)]).unwrap(), 0);
    assert!(xi_eval(&s, 2, &[int(0)]).is_err());
}

#[test]
fn landau_examples() {
    let s = FactorialRatioSystem::univariate(&[4], &[2, 1, 1]).unwrap();
    assert_eq!(landau_eval(&s, &[rat(1, 4)]).unwrap(), 1);
    assert_eq!(landau_eval(&s, &[int(0)]).unwrap(), 0);
    let t = FactorialRatioSystem::univariate(&[10], &[5, 3, 1, 1]).unwrap();
    assert_eq!(landau_eval(&t, &[rat(1, 3)]).unwrap(), 1);
    assert_eq!(landau_eval(&apery(), &[int(0), int(0)]).unwrap(), 0);
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-200i64..200, 1i64..40).prop_map(|(n, d)| rat(n, d))
}

fn unit_param() -> impl Strategy<Value = Rational> {
    (1i64..30).prop_flat_map(|d| (1..=d).prop_map(move |n| rat(n, d)))
}

proptest! {
    #[test]
    fn angle_is_periodic_and_in_unit_interval(x in small_rational(), n in -50i64..50) {
        let a = angle(&x);
        prop_assert!(a > int(0) && a <= int(1));
        prop_assert!((&a - &x).is_integer());
        prop_assert_eq!(angle(&(&x + int(n))), a);
    }

    #[test]
    fn dwork_map_is_angle_of_iota_multiple(alpha in unit_param(), p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41])) {
        let d: u64 = alpha.denom().try_into().unwrap();
        prop_assume!(!d.is_multiple_of(p));
        let got = dwork_map(p, &alpha).unwrap();
        // defining property, checked directly
        let t = int(p as i64) * &got - &alpha;
        prop_assert!(t.is_integer() && t >= int(0) && t < int(p as i64));
        let i = iota(p, 1, d).unwrap();
        prop_assert_eq!(got, angle(&(int(i as i64) * &alpha)));
    }

    #[test]
    fn dwork_orbit_closes_after_order(alpha in unit_param(), p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])) {
        let d: u64 = alpha.denom().try_into().unwrap();
        prop_assume!(d.gcd(&p) == 1);
        let k = (1..=d as u32).find(|&k| lucascert::rational::pow_mod(p, k as u64, d) == 1 % d).unwrap();
        prop_assert_eq!(dwork_iter(p, k, &alpha).unwrap(), alpha);
    }

    #[test]
    fn xi_is_periodic_for_balanced_systems(
        i in 0usize..64, x in prop::collection::vec(0i64..60, 3), z in prop::collection::vec(-3i64..4, 3)
    ) {
        let systems = common::corpus_systems();
        let (_, sys) = &systems[i % systems.len()];
        prop_assume!(sys.is_balanced());
        let d = sys.d_alpha_beta();
        let units: Vec<u64> = (1..=d).filter(|a| a.gcd(&d) == 1).collect();
        let a = units[i % units.len()];
        let pt: Vec<Rational> = x[..sys.dim()].iter().map(|&n| rat(n, 60)).collect();
        let shifted: Vec<Rational> = pt.iter().zip(&z).map(|(v, s)| v + int(*s)).collect();
        prop_assert_eq!(xi_eval(sys, a, &pt).unwrap(), xi_eval(sys, a, &shifted).unwrap());
    }
}

#[test]
fn landau_matches_xi_on_all_ones_embedding() {
    use lucascert::cli::corpus::corpus;
    use lucascert::cli::Problem;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut systems: Vec<FactorialRatioSystem> = corpus()
        .iter()
        .filter_map(|e| match &e.document.problem {
            Problem::Factorial { system } => Some(system.clone()),
            Problem::Specialization { source, .. } => match source.as_ref() {
                Problem::Factorial { system } => Some(system.clone()),
                _ => None,
            },
            _ => None,
        })
        .filter(|s| s.is_balanced())
        .collect();
    systems.dedup();
    assert!(systems.len() >= 5);
    for sys in &systems {
        let h = sys.to_hyper();
        for _ in 0..1000 {
            let x: Vec<Rational> = (0..sys.dim()).map(|_| rat(rng.gen_range(-40..80), rng.gen_range(1..25))).collect();
            assert_eq!(landau_eval(sys, &x).unwrap(), xi_eval(&h, 1, &x).unwrap(), "{sys:?} at {x:?}");
        }
    }
}
