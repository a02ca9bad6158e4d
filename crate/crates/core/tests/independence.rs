mod common;

use common::{binomial, delannoy, franel, rationals};
use lucascert::certifier::certify_factorial;
use lucascert::hyperdata::{FactorialRatioSystem, HyperSystem};
use lucascert::independence::{
    asymptotic_profile, detect_rational, exponent_candidates, find_monomial_relation, independence_verdict,
    mcintosh_profile, mcintosh_sum, series_pow_product, Backing, Growth, IndependenceError, Outcome, ProfileSubject,
    Rule, SearchParams, TruncatedSeries, VerdictEntry,
};
use lucascert::rational::ln_abs_bigint;
use lucascert::sequences::{q_ef, CoefficientStream};
use lucascert::{int, rat, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn series(xs: Vec<Rational>) -> TruncatedSeries {
    TruncatedSeries::new(xs)
}

fn literal(xs: Vec<Rational>) -> CoefficientStream {
    CoefficientStream::literal(xs)
}

fn factorial(e: &[u32], f: &[u32]) -> FactorialRatioSystem {
    FactorialRatioSystem::univariate(e, f).unwrap()
}

fn entry(id: &str, e: &[u32], f: &[u32]) -> VerdictEntry {
    let sys = factorial(e, f);
    VerdictEntry {
        id: id.into(),
        certificate: certify_factorial(&sys).unwrap().certificate().cloned(),
        profile: Some(asymptotic_profile(ProfileSubject::Factorial(&sys)).unwrap()),
        factorial: Some(sys.clone()),
        stream: CoefficientStream::factorial(&sys),
    }
}

/// Independent product of two truncated series.
fn mul(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

#[test]
fn pow_product_examples() {
    let one_plus_x = series(vec![int(1), int(1), int(0), int(0)]);
    let r = series_pow_product(&[(one_plus_x.clone(), 1), (one_plus_x, -1)], 4).unwrap();
    assert_eq!(r.coeffs, vec![int(1), int(0), int(0), int(0)]);

    let cb = series(rationals((0..10).map(|n| binomial(2 * n, n))));
    let sq = series_pow_product(&[(cb, 2)], 10).unwrap();
    assert_eq!(sq.coeffs, (0..10).map(|n| int(4i64.pow(n))).collect::<Vec<_>>());

    assert_eq!(series_pow_product(&[], 5).unwrap().coeffs, vec![int(1), int(0), int(0), int(0), int(0)]);
    // orders cap the result
    let short = series(vec![int(1), int(2), int(3)]);
    assert_eq!(series_pow_product(&[(short, 1)], 10).unwrap().order(), 3);
    let bad = series(vec![int(2), int(1)]);
    assert!(matches!(series_pow_product(&[(bad, -1)], 2), Err(IndependenceError::ConstantTermNotOne)));
}

#[test]
fn rational_detection_examples() {
    let geo = series((0..30).map(|n| int(2i64.pow(n))).collect());
    let r = detect_rational(&geo, 1).unwrap().unwrap();
    assert_eq!((r.num, r.den), (vec![int(1)], vec![int(1), int(-2)]));
    let ones = series(vec![int(1); 30]);
    let r = detect_rational(&ones, 1).unwrap().unwrap();
    assert_eq!((r.num, r.den), (vec![int(1)], vec![int(1), int(-1)]));
    let cb = series(rationals((0..60).map(|n| binomial(2 * n, n))));
    assert_eq!(detect_rational(&cb, 8).unwrap(), None);
    assert!(matches!(detect_rational(&cb, 30), Err(IndependenceError::OrderTooSmall { order: 60, needed: 78 })));
}

#[test]
fn relation_search_examples() {
    let cb = literal(rationals((0..200).map(|n| binomial(2 * n, n))));
    let r = find_monomial_relation(&[cb], 3, 5, 200).unwrap().unwrap();
    assert_eq!(r.exponents, vec![2]);
    assert_eq!((r.fraction.num, r.fraction.den), (vec![int(1)], vec![int(1), int(-4)]));

    let del = literal(rationals((0..200).map(delannoy)));
    let r = find_monomial_relation(&[del], 3, 5, 200).unwrap().unwrap();
    assert_eq!(r.exponents, vec![2]);
    assert_eq!((r.fraction.num, r.fraction.den), (vec![int(1)], vec![int(1), int(-6), int(1)]));

    let fr = literal(rationals((0..60).map(franel)));
    assert_eq!(find_monomial_relation(&[fr], 3, 10, 60).unwrap(), None);
    assert!(matches!(find_monomial_relation(&[], 3, 5, 60), Err(IndependenceError::NoStreams)));
}

#[test]
fn exponent_enumeration_order() {
    let c = exponent_candidates(2, 2);
    let norm = |v: &Vec<i64>| v.iter().map(|x| x.abs()).max().unwrap();
    assert!(c.windows(2).all(|w| norm(&w[0]) < norm(&w[1]) || (norm(&w[0]) == norm(&w[1]) && w[0] < w[1])));
    assert!(c.iter().all(|v| v.iter().find(|&&x| x != 0).unwrap() > &0 && v.iter().sum::<i64>().abs() <= 2));
    assert_eq!(c[0], vec![0, 1]);
    assert!(c.contains(&vec![2, 0]) && c.contains(&vec![1, -1]) && !c.contains(&vec![2, 1]));
}

#[test]
fn relations_follow_stream_permutations() {
    let pool = [
        literal(rationals((0..60).map(|n| binomial(2 * n, n)))),
        literal(rationals((0..60).map(delannoy))),
        literal((0..60).map(|n| int(3i64.pow(n / 2) * if n % 2 == 0 { 1 } else { 0 })).collect()),
    ];
    for i in 0..pool.len() {
        for j in 0..pool.len() {
            if i == j {
                continue;
            }
            let Some(r) = find_monomial_relation(&[pool[i].clone(), pool[j].clone()], 2, 6, 60).unwrap() else { continue };
            let swapped = [(pool[j].clone(), r.exponents[1]), (pool[i].clone(), r.exponents[0])];
            let factors: Vec<(TruncatedSeries, i64)> =
                swapped.iter().map(|(s, e)| (TruncatedSeries::from_stream(s, 60).unwrap(), *e)).collect();
            let g = series_pow_product(&factors, 60).unwrap();
            let back = detect_rational(&g, 6).unwrap().expect("permuted relation holds");
            assert_eq!(back, r.fraction);
        }
    }
}

#[test]
fn asymptotic_examples() {
    let p = asymptotic_profile(ProfileSubject::Factorial(&factorial(&[4], &[2, 1, 1]))).unwrap();
    assert_eq!(p.growth, Growth::Exact(int(64)));
    assert_eq!(p.theta, int(-1));
    assert!(p.log_singularity && p.in_w);
    let p = asymptotic_profile(ProfileSubject::Factorial(&factorial(&[2], &[1, 1]))).unwrap();
    assert_eq!((p.growth, p.theta.clone()), (Growth::Exact(int(4)), rat(-1, 2)));
    assert!(!p.in_w && !p.log_singularity);
    let h = HyperSystem::univariate(&[rat(1, 5), rat(4, 5)], &[int(1), int(1)]).unwrap();
    let p = asymptotic_profile(ProfileSubject::Hypergeometric(&h)).unwrap();
    assert_eq!((p.growth, p.theta), (Growth::Exact(int(1)), int(-1)));
    assert!(matches!(
        asymptotic_profile(ProfileSubject::Factorial(&factorial(&[3], &[1, 1]))),
        Err(IndependenceError::NotBalanced)
    ));
}

#[test]
fn mcintosh_examples() {
    let m = mcintosh_profile(0, &[2]).unwrap();
    assert!((m.lambda - 0.5).abs() < 1e-10 && (m.mu - 4.0).abs() < 1e-10 && (m.nu - 4.0).abs() < 1e-10, "{m:?}");
    let m = mcintosh_profile(0, &[6]).unwrap();
    assert!((m.lambda - 0.5).abs() < 1e-10 && (m.mu - 64.0).abs() < 1e-8 && (m.nu - 12.0).abs() < 1e-8, "{m:?}");
    let m = mcintosh_profile(1, &[2, 2]).unwrap();
    assert!((m.lambda - 2f64.sqrt() / 2.0).abs() < 1e-8);
    assert!((m.mu - (1.0 + 2f64.sqrt()).powi(4)).abs() < 1e-6);
    assert!(mcintosh_profile(1, &[2]).is_err());
}

#[test]
fn mcintosh_matches_exact_central_binomial() {
    let m = mcintosh_profile(0, &[2]).unwrap();
    let n = 500u64;
    let s = mcintosh_sum(&[2], n);
    assert_eq!(s, binomial(2 * n, n));
    let ln_approx = (n as f64 + 0.5) * m.mu.ln() - 0.5 * (m.nu * 2.0 * std::f64::consts::PI * m.lambda * n as f64).ln();
    let rel = (ln_abs_bigint(&s) - ln_approx).exp() - 1.0;
    assert!(rel.abs() < 0.01, "{rel}");
}

#[test]
fn growth_constants_match_ratio_test_on_corpus() {
    use lucascert::cli::Problem;
    let mut seen = 0;
    for e in lucascert::cli::corpus::corpus() {
        let Problem::Factorial { system } = &e.document.problem else { continue };
        if system.dim() != 1 {
            continue;
        }
        let p = asymptotic_profile(ProfileSubject::Factorial(system)).unwrap();
        let ratio = lucascert::independence::ratio_f64(&q_ef(system, &[501]), &q_ef(system, &[500]));
        let c = p.growth.to_f64();
        assert!(((ratio - c) / c).abs() < 0.01, "{}: {ratio} vs {c}", e.id);
        seen += 1;
    }
    assert!(seen >= 5);
}

#[test]
fn verdict_examples() {
    let es = [entry("r2", &[2, 2], &[1, 1, 1, 1]), entry("r3", &[2, 2, 2], &[1; 6]), entry("r4", &[2, 2, 2, 2], &[1; 8])];
    let v = independence_verdict(&es, SearchParams::default()).unwrap();
    assert_eq!(v.outcome, Outcome::Independent { rule: Rule::R1, via: None });
    assert!(v.premises.iter().all(|p| matches!(p.backing, Backing::Certificate | Backing::Profile)));

    let pair = [entry("a", &[4], &[2, 1, 1]), entry("b", &[2, 2, 2], &[1; 6])];
    let v = independence_verdict(&pair, SearchParams::default()).unwrap();
    assert!(matches!(v.outcome, Outcome::Independent { rule: Rule::R3, .. }));

    let single = [entry("cb", &[2], &[1, 1])];
    let v = independence_verdict(&single, SearchParams { dmax: 3, height: 5, order: 60 }).unwrap();
    match v.outcome {
        Outcome::Dependent { relation } => assert_eq!(relation.exponents, vec![2]),
        other => panic!("{other:?}"),
    }

    let mut bare = entry("x", &[2], &[1, 1]);
    bare.certificate = None;
    assert!(matches!(independence_verdict(&[bare], SearchParams::default()), Err(IndependenceError::Uncertified(_))));
    assert!(matches!(independence_verdict(&[], SearchParams::default()), Err(IndependenceError::NoStreams)));
}

#[test]
fn verdict_without_rule_is_search_based() {
    // C(2n,n) has theta = -1/2, so it is outside W and no rule applies
    let es = [entry("cb", &[2], &[1, 1]), entry("t", &[3], &[1, 1, 1])];
    let v = independence_verdict(&es, SearchParams { dmax: 2, height: 6, order: 60 }).unwrap();
    match v.outcome {
        Outcome::Dependent { relation } => assert_eq!(relation.exponents, vec![2, 0]),
        Outcome::Independent { .. } => panic!("no rule applies to entries outside W"),
        Outcome::Inconclusive { .. } => panic!("cb^2 is rational"),
    }
    let unknown: Vec<_> = v.premises.iter().filter(|p| p.statement.starts_with("W unknown")).collect();
    assert_eq!(unknown.len(), 1);
    assert_eq!(unknown[0].entries, ["cb"]);
    assert_eq!(unknown[0].backing, Backing::Profile);
}

fn poly(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..6, 0..=max_deg)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn detected_fractions_reproduce_the_series(num in poly(4), den_tail in poly(3)) {
        let n = 40;
        let mut den = vec![1i64];
        den.extend(den_tail);
        let mut numr: Vec<Rational> = num.iter().map(|&c| int(c)).collect();
        numr.resize(n, Rational::zero());
        // g = num / den by long division
        let denr: Vec<Rational> = den.iter().map(|&c| int(c)).collect();
        let mut g = vec![Rational::zero(); n];
        for i in 0..n {
            let mut acc = numr[i].clone();
            for j in 1..denr.len().min(i + 1) {
                acc -= &denr[j] * &g[i - j];
            }
            g[i] = acc;
        }
        let r = detect_rational(&series(g.clone()), 4).unwrap();
        let r = r.expect("num/den has height at most 4");
        prop_assert_eq!(&r.den[0], &Rational::one());
        let prod = mul(&r.den, &g, n);
        for (i, c) in prod.iter().enumerate() {
            prop_assert_eq!(c, &r.num.get(i).cloned().unwrap_or_else(Rational::zero));
        }
    }
}
