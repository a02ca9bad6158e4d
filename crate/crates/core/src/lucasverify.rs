//! Brute-force checks of Lucas-type congruences.
//!
//! - [`verify_pk_lucas`]: `a(v + m p^k) = a(v) a(m) mod p` on a box of indices
//! - [`series_congruence_check`]: `f = A f(x^{p^k}) mod p` up to a given order
//! - [`dwork_lemma_check`]: `Q(a + mp) in Q(a) Q_{Du,Dv}(m) (1 + p Z_(p))`

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::hyperdata::HyperSystem;
use crate::rational::{int, is_prime, rational_mod, Rational};
use crate::sequences::{q_uv, CoefficientStream, SequenceError};
use crate::stepfun::{dwork_map, iota, RegionSpec, StepFunError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LucasError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p^k overflows")]
    TooLarge,
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    StepFunction(#[from] StepFunError),
    #[error("a/p lies in D^iota(p)")]
    PreconditionRegion,
    #[error("p = {p} must exceed d_ab = {d}")]
    BadPrime { p: u64, d: u64 },
    #[error("system is not balanced")]
    NotBalanced,
    #[error("index {a:?} must have {dim} entries below p")]
    BadIndex { a: Vec<u64>, dim: usize },
}

/// Which `v` in `{0..p^k-1}^d` are checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum VSelection {
    /// Every `v` with coordinates `<= v_max` (default: all of them).
    Full { v_max: Option<u64> },
    /// `count` distinct `v` drawn with a seeded generator.
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LucasBox {
    pub v: VSelection,
    pub m_max: u64,
}

impl LucasBox {
    pub fn full(m_max: u64) -> Self {
        LucasBox { v: VSelection::Full { v_max: None }, m_max }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub v: Vec<u64>,
    pub m: Vec<u64>,
    /// `a(v + m p^k) mod p`
    pub lhs: u64,
    /// `a(v) a(m) mod p`
    pub rhs: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LucasVerdict {
    Pass,
    Fail,
    NotPIntegral,
}

/// Stored lists are truncated to this length; the counts are exact.
pub const LIST_CAP: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LucasReport {
    pub p: u64,
    pub k: u32,
    #[serde(rename = "box")]
    pub bounds: LucasBox,
    pub checked: u64,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    pub integrality_failure_count: u64,
    pub integrality_failures: Vec<Vec<u64>>,
    pub verdict: LucasVerdict,
}

fn odometer(dim: usize, limit: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; dim];
    loop {
        out.push(cur.clone());
        let mut i = dim;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < limit {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
        }
    }
}

fn checked_pk(p: u64, k: u32) -> Result<u64, LucasError> {
    if !is_prime(p) {
        return Err(LucasError::NotPrime(p));
    }
    p.checked_pow(k).ok_or(LucasError::TooLarge)
}

pub fn verify_pk_lucas(stream: &CoefficientStream, p: u64, k: u32, bounds: &LucasBox) -> Result<LucasReport, LucasError> {
    let pk = checked_pk(p, k)?;
    let d = stream.arity();
    let vs: Vec<Vec<u64>> = match &bounds.v {
        VSelection::Full { v_max } => odometer(d, v_max.map_or(pk - 1, |x| x.min(pk - 1))),
        VSelection::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            if (pk as f64).powi(d as i32) <= (*count as f64) * 4.0 {
                let mut all = odometer(d, pk - 1);
                all.shuffle(&mut rng);
                all.truncate(*count);
                all.sort();
                all
            } else {
                use rand::Rng;
                let mut set = std::collections::BTreeSet::new();
                while set.len() < *count {
                    set.insert((0..d).map(|_| rng.gen_range(0..pk)).collect::<Vec<u64>>());
                }
                set.into_iter().collect()
            }
        }
    };
    let ms = odometer(d, bounds.m_max);
    let am: Vec<Result<u64, ()>> = ms.par_iter().map(|m| stream.coeff_mod(m, p)).collect();
    let per_v: Vec<(Vec<Violation>, Vec<Vec<u64>>, u64)> = vs
        .par_iter()
        .map(|v| {
            let mut viol = Vec::new();
            let mut bad = Vec::new();
            let mut checked = 0;
            let av = stream.coeff_mod(v, p);
            if av.is_err() {
                bad.push(v.clone());
            }
            for (m, amv) in ms.iter().zip(&am) {
                let n: Vec<u64> = v.iter().zip(m).map(|(&vi, &mi)| vi + mi * pk).collect();
                let an = stream.coeff_mod(&n, p);
                checked += 1;
                match (an, av, amv) {
                    (Ok(x), Ok(y), Ok(z)) => {
                        let rhs = (y as u128 * *z as u128 % p as u128) as u64;
                        if x != rhs {
                            viol.push(Violation { v: v.clone(), m: m.clone(), lhs: x, rhs });
                        }
                    }
                    (Err(()), _, _) => bad.push(n),
                    _ => {}
                }
            }
            (viol, bad, checked)
        })
        .collect();
    let mut violations = Vec::new();
    let mut failures: Vec<Vec<u64>> = am
        .iter()
        .zip(&ms)
        .filter(|(r, _)| r.is_err())
        .map(|(_, m)| m.clone())
        .collect();
    let mut checked = 0;
    for (v, b, c) in per_v {
        violations.extend(v);
        failures.extend(b);
        checked += c;
    }
    violations.sort();
    failures.sort();
    failures.dedup();
    let verdict = if !failures.is_empty() {
        LucasVerdict::NotPIntegral
    } else if !violations.is_empty() {
        LucasVerdict::Fail
    } else {
        LucasVerdict::Pass
    };
    let (vc, fc) = (violations.len() as u64, failures.len() as u64);
    violations.truncate(LIST_CAP);
    failures.truncate(LIST_CAP);
    Ok(LucasReport {
        p,
        k,
        bounds: bounds.clone(),
        checked,
        violation_count: vc,
        violations,
        integrality_failure_count: fc,
        integrality_failures: failures,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesCheck {
    pub p: u64,
    pub k: u32,
    pub order: usize,
    pub first_mismatch: Option<usize>,
    pub holds: bool,
}

/// Compares `f` with `A(x) f(x^{p^k})` modulo `p` and `x^order`, `A = sum_{v<p^k} a(v) x^v`.
pub fn series_congruence_check(stream: &CoefficientStream, p: u64, k: u32, order: usize) -> Result<SeriesCheck, LucasError> {
    let pk = checked_pk(p, k)? as usize;
    let f = stream.prefix_mod(order, p)?;
    let a = &f[..pk.min(order)];
    let mut prod = vec![0u64; order];
    for (m, &fm) in f.iter().enumerate() {
        let base = m * pk;
        if base >= order {
            break;
        }
        if fm == 0 {
            continue;
        }
        for (v, &av) in a.iter().enumerate() {
            if base + v >= order {
                break;
            }
            prod[base + v] = (prod[base + v] + (av as u128 * fm as u128 % p as u128) as u64) % p;
        }
    }
    let first_mismatch = (0..order).find(|&i| prod[i] != f[i]);
    Ok(SeriesCheck { p, k, order, first_mismatch, holds: first_mismatch.is_none() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DworkReport {
    pub p: u64,
    pub a: Vec<u64>,
    pub m_max: u64,
    pub checked: u64,
    pub failures: Vec<Vec<u64>>,
    pub holds: bool,
}

pub fn dwork_lemma_check(sys: &HyperSystem, p: u64, a: &[u64], m_max: u64) -> Result<DworkReport, LucasError> {
    if !is_prime(p) {
        return Err(LucasError::NotPrime(p));
    }
    let d = sys.d_alpha_beta();
    if p <= d {
        return Err(LucasError::BadPrime { p, d });
    }
    if !sys.is_balanced() {
        return Err(LucasError::NotBalanced);
    }
    if a.len() != sys.dim() || a.iter().any(|&x| x >= p) {
        return Err(LucasError::BadIndex { a: a.to_vec(), dim: sys.dim() });
    }
    let region = RegionSpec::d_region(sys, iota(p, 1, d)?)?;
    let point: Vec<Rational> = a.iter().map(|&x| int(x as i64) / int(p as i64)).collect();
    if region.contains(&point) {
        return Err(LucasError::PreconditionRegion);
    }
    let mut err = None;
    let dsys = sys.map_params(|x| {
        dwork_map(p, x).unwrap_or_else(|e| {
            err = Some(e);
            x.clone()
        })
    });
    if let Some(e) = err {
        return Err(e.into());
    }
    let qa = q_uv(sys, a);
    let ms = odometer(sys.dim(), m_max);
    let failures: Vec<Vec<u64>> = ms
        .par_iter()
        .filter(|m| {
            let n: Vec<u64> = a.iter().zip(m.iter()).map(|(&ai, &mi)| ai + mi * p).collect();
            let ratio = q_uv(sys, &n) / (&qa * q_uv(&dsys, m));
            rational_mod(&(ratio - int(1)), p) != Some(0)
        })
        .cloned()
        .collect();
    Ok(DworkReport {
        p,
        a: a.to_vec(),
        m_max,
        checked: ms.len() as u64,
        holds: failures.is_empty(),
        failures,
    })
}
