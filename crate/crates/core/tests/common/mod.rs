//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use lucascert::cli::corpus::corpus;
use lucascert::hyperdata::HyperSystem;
use lucascert::stepfun::{RegionSpec, StepFunctionSpec};
use lucascert::{int, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// v_p of a nonzero integer by repeated division.
pub fn vp_int(n: &BigInt, p: u64) -> i64 {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn vp_exact(r: &Rational, p: u64) -> i64 {
    vp_int(r.numer(), p) - vp_int(r.denom(), p)
}

/// Hypergeometric systems of the corpus, with their ids.
pub fn corpus_systems() -> Vec<(String, HyperSystem)> {
    corpus().iter().filter_map(|e| e.document.problem.hyper_system().map(|s| (e.id.clone(), s))).collect()
}

fn floor_frac_points(lo: &Rational, hi: &Rational, step_lines: &[(Rational, Rational)]) -> Vec<Rational> {
    // points on [lo, hi]: every breakpoint c/w in range, plus midpoints
    let mut pts: Vec<Rational> = vec![lo.clone(), hi.clone()];
    for (c, w) in step_lines {
        let y = c / w;
        if &y >= lo && &y <= hi {
            pts.push(y);
        }
    }
    pts.sort();
    pts.dedup();
    let mids: Vec<Rational> = pts.windows(2).map(|w| (&w[0] + &w[1]) / int(2)).collect();
    pts.extend(mids);
    pts
}

/// Lines `w.x = c` cutting the closed unit box, for every integer shift of every term and constraint.
fn arrangement(f: &StepFunctionSpec, region: &RegionSpec) -> Vec<(Vec<i64>, Rational)> {
    let mut lines = Vec::new();
    for t in &f.terms {
        let lo: i64 = t.weights.iter().filter(|&&w| w < 0).sum();
        let hi: i64 = t.weights.iter().filter(|&&w| w > 0).sum();
        let base = t.offset.floor().to_integer().to_i64().unwrap();
        for k in (lo - base - 1)..=(hi - base + 1) {
            lines.push((t.weights.clone(), &t.offset + int(k)));
        }
    }
    for h in &region.constraints {
        lines.push((h.weights.clone(), h.bound.clone()));
    }
    for i in 0..f.dim {
        for c in [0, 1] {
            let mut w = vec![0; f.dim];
            w[i] = 1;
            lines.push((w, int(c)));
        }
    }
    lines
}

/// Minimum of `f` over `region` by evaluating at one point of every cell of the arrangement (d <= 2).
pub fn brute_force_minimum(f: &StepFunctionSpec, region: &RegionSpec) -> Option<i64> {
    let lines = arrangement(f, region);
    let mut best: Option<i64> = None;
    let mut visit = |x: &[Rational]| {
        if region.contains(x) {
            let v = f.eval(x);
            best = Some(best.map_or(v, |b| b.min(v)));
        }
    };
    match f.dim {
        1 => {
            let bps: Vec<(Rational, Rational)> = lines.iter().map(|(w, c)| (c.clone(), int(w[0]))).collect();
            for x in floor_frac_points(&int(0), &int(1), &bps) {
                visit(&[x]);
            }
        }
        2 => {
            // vertex abscissae, then a vertical sweep through each of them and each slab between them
            let mut xs: Vec<Rational> = Vec::new();
            for (i, (a, c)) in lines.iter().enumerate() {
                if a[1] == 0 {
                    xs.push(c / int(a[0]));
                    continue;
                }
                for (b, e) in &lines[i + 1..] {
                    let det = a[0] * b[1] - a[1] * b[0];
                    if det != 0 {
                        xs.push((c * int(b[1]) - e * int(a[1])) / int(det));
                    }
                }
            }
            xs.retain(|x| x >= &int(0) && x <= &int(1));
            xs.push(int(0));
            xs.sort();
            xs.dedup();
            let mids: Vec<Rational> = xs.windows(2).map(|w| (&w[0] + &w[1]) / int(2)).collect();
            xs.extend(mids);
            for x0 in xs {
                let bps: Vec<(Rational, Rational)> = lines
                    .iter()
                    .filter(|(w, _)| w[1] != 0)
                    .map(|(w, c)| (c - int(w[0]) * &x0, int(w[1])))
                    .collect();
                for y in floor_frac_points(&int(0), &int(1), &bps) {
                    visit(&[x0.clone(), y]);
                }
            }
        }
        _ => panic!("brute force only for d <= 2"),
    }
    best
}

pub fn apery_b(n: u64) -> BigInt {
    (0..=n).map(|k| binomial(n, k).pow(2) * binomial(n + k, k)).sum()
}

pub fn apery_a(n: u64) -> BigInt {
    (0..=n).map(|k| (binomial(n, k) * binomial(n + k, k)).pow(2)).sum()
}

pub fn franel(n: u64) -> BigInt {
    (0..=n).map(|k| binomial(n, k).pow(3)).sum()
}

pub fn delannoy(n: u64) -> BigInt {
    (0..=n).map(|k| binomial(n, k) * binomial(n + k, k)).sum()
}

pub fn rationals(xs: impl IntoIterator<Item = BigInt>) -> Vec<Rational> {
    xs.into_iter().map(Rational::from_integer).collect()
}

