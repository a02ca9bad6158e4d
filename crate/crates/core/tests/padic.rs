mod common;

use common::vp_exact;
use lucascert::hyperdata::{validate_factorial_system, HyperSystem};
use lucascert::padic::{
    dwork_closed_form, truncation_depth, vp_factorial, vp_pochhammer, vp_quv, vp_quv_to_depth, PadicError,
};
use lucascert::sequences::{pochhammer, q_uv};
use lucascert::stepfun::dwork_iter;
use lucascert::{int, rat, Rational};
use proptest::prelude::*;

fn apery() -> HyperSystem {
    validate_factorial_system(
        vec![vec![2, 1], vec![1, 1]],
        vec![vec![1, 0], vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]],
        2,
    )
    .unwrap()
    .to_hyper()
}

#[test]
fn factorial_valuations() {
    assert_eq!(vp_factorial(10, 5).unwrap(), 2);
    assert_eq!(vp_factorial(0, 7).unwrap(), 0);
    assert_eq!(vp_factorial(25, 5).unwrap(), 6);
    assert!(matches!(vp_factorial(10, 4), Err(PadicError::NotPrime(4))));
}

#[test]
fn pochhammer_valuations() {
    assert_eq!(vp_pochhammer(&rat(1, 3), 7, 5).unwrap(), 1);
    assert_eq!(vp_exact(&pochhammer(&rat(1, 3), 7), 5), 1);
    // (2/3)(5/3) = 10/9
    assert_eq!(vp_pochhammer(&rat(2, 3), 2, 5).unwrap(), 1);
    assert_eq!(vp_exact(&pochhammer(&rat(2, 3), 2), 5), 1);
    assert!(matches!(vp_pochhammer(&rat(1, 3), 4, 3), Err(PadicError::BadPrime { .. })));
    for p in [2, 3, 5, 7, 11] {
        for n in 0..=10_000 {
            assert_eq!(vp_pochhammer(&int(1), n, p).unwrap(), vp_factorial(n, p).unwrap());
        }
    }
}

#[test]
fn quv_valuations() {
    assert_eq!(vp_quv(&apery(), &[1, 0], 2).unwrap(), 1);
    assert_eq!(vp_quv(&apery(), &[0, 0], 3).unwrap(), 0);
    let s = HyperSystem::univariate(&[rat(1, 2), rat(1, 2)], &[rat(2, 3), int(1)]).unwrap();
    assert_eq!(vp_quv(&s, &[2], 5).unwrap(), -1);
    assert_eq!(vp_quv(&s, &[0], 5).unwrap(), 0);
    assert!(matches!(vp_quv(&s, &[2], 3), Err(PadicError::BadPrime { p: 3, d: 6 })));
    let unbalanced = HyperSystem::univariate(&[rat(1, 2)], &[int(1), int(1)]).unwrap();
    assert!(matches!(vp_quv(&unbalanced, &[2], 5), Err(PadicError::NotBalanced)));
}

#[test]
fn quv_matches_factorization_on_corpus() {
    let mut checked = 0;
    for (id, sys) in common::corpus_systems() {
        if !sys.is_balanced() {
            continue;
        }
        let side = if sys.dim() == 1 { 60 } else { 12 };
        let d = sys.d_alpha_beta();
        for p in [2u64, 3, 5, 7, 11, 13].into_iter().filter(|p| d % p != 0) {
            let mut n = vec![0u64; sys.dim()];
            loop {
                let q = q_uv(&sys, &n);
                assert_eq!(vp_quv(&sys, &n, p).unwrap(), vp_exact(&q, p), "{id} p={p} n={n:?}");
                checked += 1;
                let Some(i) = n.iter().rposition(|&x| x + 1 < side) else { break };
                n[i] += 1;
                n[i + 1..].iter_mut().for_each(|x| *x = 0);
            }
        }
    }
    assert!(checked > 10_000);
}

/// A prime and a fraction in (0,1] whose denominator it does not divide.
fn unit_fraction_coprime_to_prime(max_den: i64) -> impl Strategy<Value = (u64, Rational)> {
    (prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]), 1..max_den).prop_flat_map(|(p, d)| {
        let d = if d % p as i64 == 0 { d + 1 } else { d };
        (Just(p), (1..=d).prop_map(move |n| rat(n, d)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn deeper_truncation_is_stable(i in 0usize..64, n in prop::collection::vec(0u64..400, 3), p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 17, 19])) {
        let systems: Vec<_> = common::corpus_systems().into_iter().filter(|(_, s)| s.is_balanced()).collect();
        let (_, sys) = &systems[i % systems.len()];
        prop_assume!(sys.d_alpha_beta() % p != 0);
        let n = &n[..sys.dim()];
        let depth = truncation_depth(sys, n, p);
        let base = vp_quv(sys, n, p).unwrap();
        prop_assert_eq!(vp_quv_to_depth(sys, n, p, depth + 3).unwrap(), base);
    }

    #[test]
    fn dwork_iterates_have_closed_form((p, alpha) in unit_fraction_coprime_to_prime(40), l in 1u32..4) {
        prop_assert_eq!(dwork_iter(p, l, &alpha).unwrap(), dwork_closed_form(&alpha, p, l).unwrap());
    }

    #[test]
    fn pochhammer_valuation_matches_factorization((p, alpha) in unit_fraction_coprime_to_prime(30), m in 0u64..120) {
        prop_assert_eq!(vp_pochhammer(&alpha, m, p).unwrap() as i64, vp_exact(&pochhammer(&alpha, m), p));
    }
}
