//! Exact minimisation of a step function over a region of `[0,1)^d`.
//!
//! One variable: enumerate breakpoints and the open intervals between them.
//! Several variables: branch and bound over the floor values `m_t` of every term; each node
//! is a polytope `m_t + c_t <= w_t.x < m_t + 1 + c_t` whose strict feasibility is decided by
//! an exact LP maximising a common slack.
//!
//! The reported witness is the lexicographically smallest vertex of the arrangement that
//! attains the minimum, or an interior point of a minimising cell when no vertex does.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::lp::{maximize, LpOutcome};
use crate::rational::{floor_i64, int, serde_rational_vec, Rational};
use crate::stepfun::{HalfSpace, RegionMode, RegionSpec, StepFunctionSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("region is empty")]
    RegionEmpty,
    #[error("step function has dimension {function}, region has dimension {region}")]
    DimensionMismatch { function: usize, region: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct EngineStats {
    pub nodes: u64,
    pub lp_calls: u64,
    pub vertices: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepMinimum {
    pub value: i64,
    #[serde(with = "serde_rational_vec")]
    pub witness: Vec<Rational>,
    pub stats: EngineStats,
}

/// Above this many plane combinations the vertex pass is skipped.
const VERTEX_SCAN_LIMIT: u64 = 400_000;

#[derive(Debug, Clone)]
struct Term {
    weights: Vec<i64>,
    offset: Rational,
    coef: i64,
    lo: i64,
    hi: i64,
}

/// `a.x <= b`, or `<` when strict.
#[derive(Debug, Clone)]
struct Lin {
    a: Vec<Rational>,
    b: Rational,
    strict: bool,
}

fn merged_terms(f: &StepFunctionSpec) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::new();
    for t in &f.terms {
        if let Some(x) = out.iter_mut().find(|x| x.weights == t.weights && x.offset == t.offset) {
            x.coef += t.coef;
        } else {
            let minv: i64 = t.weights.iter().filter(|&&w| w < 0).sum();
            let maxv: i64 = t.weights.iter().filter(|&&w| w > 0).sum();
            // w.x ranges over [minv, maxv) on the box
            let lo = floor_i64(&(int(minv) - &t.offset));
            let hi = (int(maxv) - &t.offset).ceil().to_integer().try_into().unwrap_or(i64::MAX) - 1;
            out.push(Term { weights: t.weights.clone(), offset: t.offset.clone(), coef: t.coef, lo, hi });
        }
    }
    out.retain(|t| t.coef != 0);
    out
}

fn ge(h: &HalfSpace) -> Lin {
    // w.x >= b  <=>  -w.x <= -b
    Lin { a: h.weights.iter().map(|&w| int(-w)).collect(), b: -h.bound.clone(), strict: h.strict }
}

fn lt(h: &HalfSpace) -> Lin {
    // complement of w.x >= b (or > b)
    Lin { a: h.weights.iter().map(|&w| int(w)).collect(), b: h.bound.clone(), strict: !h.strict }
}

pub fn min_step_on_region(f: &StepFunctionSpec, region: &RegionSpec) -> Result<StepMinimum, EngineError> {
    if f.dim != region.dim {
        return Err(EngineError::DimensionMismatch { function: f.dim, region: region.dim });
    }
    let terms = merged_terms(f);
    let mut res = if f.dim <= 1 {
        min_univariate(f, &terms, region)?
    } else {
        let mut s = Search::new(f, &terms);
        for piece in pieces(region) {
            s.run(piece);
        }
        let (value, witness) = s.best.ok_or(EngineError::RegionEmpty)?;
        let mut res = StepMinimum { value, witness, stats: s.stats };
        if let Some(v) = vertex_witness(f, &terms, region, value, &mut res.stats) {
            res.witness = v;
        }
        res
    };
    res.stats.nodes = res.stats.nodes.max(1);
    Ok(res)
}

/// Disjoint pieces whose union is the region.
fn pieces(region: &RegionSpec) -> Vec<Vec<Lin>> {
    match region.mode {
        RegionMode::All => vec![region.constraints.iter().map(ge).collect()],
        RegionMode::Any => (0..region.constraints.len())
            .map(|i| {
                let mut v: Vec<Lin> = region.constraints[..i].iter().map(lt).collect();
                v.push(ge(&region.constraints[i]));
                v
            })
            .collect(),
    }
}

fn min_univariate(f: &StepFunctionSpec, terms: &[Term], region: &RegionSpec) -> Result<StepMinimum, EngineError> {
    let mut stats = EngineStats::default();
    if f.dim == 0 {
        if !region.contains(&[]) {
            return Err(EngineError::RegionEmpty);
        }
        return Ok(StepMinimum { value: f.constant, witness: vec![], stats });
    }
    let zero = Rational::zero();
    let one = Rational::one();
    let mut pts = vec![zero.clone()];
    for t in terms {
        let w = t.weights[0];
        if w == 0 {
            continue;
        }
        for m in t.lo..=t.hi + 1 {
            let x = (int(m) + &t.offset) / int(w);
            if x > zero && x < one {
                pts.push(x);
            }
        }
    }
    for h in &region.constraints {
        if h.weights[0] != 0 {
            let x = &h.bound / int(h.weights[0]);
            if x > zero && x < one {
                pts.push(x);
            }
        }
    }
    pts.sort();
    pts.dedup();
    let mut best_vertex: Option<(i64, Rational)> = None;
    let mut best_open: Option<(i64, Rational)> = None;
    for (i, p) in pts.iter().enumerate() {
        let next = pts.get(i + 1).unwrap_or(&one);
        let mid = (p + next) / int(2);
        stats.vertices += 1;
        for (x, slot) in [(p.clone(), &mut best_vertex), (mid, &mut best_open)] {
            let xs = [x];
            if !region.contains(&xs) {
                continue;
            }
            let v = f.eval(&xs);
            if slot.as_ref().is_none_or(|(b, _)| v < *b) {
                let [x] = xs;
                *slot = Some((v, x));
            }
        }
    }
    let (value, witness) = match (best_vertex, best_open) {
        (None, None) => return Err(EngineError::RegionEmpty),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        // the open interval right of a vertex never beats that vertex on its own, but the
        // minimum may only be attained inside an interval
        (Some(a), Some(b)) => {
            if b.0 < a.0 {
                b
            } else {
                a
            }
        }
    };
    Ok(StepMinimum { value, witness: vec![witness], stats })
}

struct Search<'a> {
    f: &'a StepFunctionSpec,
    terms: &'a [Term],
    order: Vec<usize>,
    /// minimal contribution of terms `order[depth..]`
    suffix_min: Vec<i64>,
    best: Option<(i64, Vec<Rational>)>,
    stats: EngineStats,
}

impl<'a> Search<'a> {
    fn new(f: &'a StepFunctionSpec, terms: &'a [Term]) -> Self {
        let mut order: Vec<usize> = (0..terms.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(terms[i].coef.abs() * (terms[i].hi - terms[i].lo)));
        let mut suffix_min = vec![0i64; order.len() + 1];
        for d in (0..order.len()).rev() {
            let t = &terms[order[d]];
            suffix_min[d] = suffix_min[d + 1] + (t.coef * t.lo).min(t.coef * t.hi);
        }
        Search { f, terms, order, suffix_min, best: None, stats: EngineStats::default() }
    }

    fn run(&mut self, mut cons: Vec<Lin>) {
        self.recurse(0, &mut cons, 0);
    }

    fn feasible_point(&mut self, cons: &[Lin]) -> Option<Vec<Rational>> {
        self.stats.lp_calls += 1;
        let d = self.f.dim;
        let mut a = Vec::with_capacity(cons.len() + d + 1);
        let mut b = Vec::with_capacity(cons.len() + d + 1);
        let slack = |strict: bool| if strict { Rational::one() } else { Rational::zero() };
        for c in cons {
            let mut row = c.a.clone();
            row.push(slack(c.strict));
            a.push(row);
            b.push(c.b.clone());
        }
        for i in 0..d {
            let mut row = vec![Rational::zero(); d + 1];
            row[i] = Rational::one();
            row[d] = Rational::one();
            a.push(row);
            b.push(Rational::one());
        }
        let mut row = vec![Rational::zero(); d + 1];
        row[d] = Rational::one();
        a.push(row);
        b.push(Rational::one());
        let mut c = vec![Rational::zero(); d + 1];
        c[d] = Rational::one();
        match maximize(&c, &a, &b) {
            LpOutcome::Optimal { value, mut x } if value.is_positive() => {
                x.truncate(d);
                Some(x)
            }
            _ => None,
        }
    }

    fn recurse(&mut self, depth: usize, cons: &mut Vec<Lin>, partial: i64) {
        self.stats.nodes += 1;
        let bound = partial + self.suffix_min[depth] + self.f.constant;
        if let Some((b, _)) = &self.best {
            if bound >= *b {
                return;
            }
        }
        let Some(x) = self.feasible_point(cons) else { return };
        let val = self.f.eval(&x);
        if self.best.as_ref().is_none_or(|(b, _)| val < *b) {
            self.best = Some((val, x));
        }
        if depth == self.order.len() {
            return;
        }
        let t = &self.terms[self.order[depth]];
        let values: Vec<i64> = if t.coef > 0 { (t.lo..=t.hi).collect() } else { (t.lo..=t.hi).rev().collect() };
        let (coef, w, off) = (t.coef, t.weights.clone(), t.offset.clone());
        for m in values {
            let child_partial = partial + coef * m;
            if let Some((b, _)) = &self.best {
                if child_partial + self.suffix_min[depth + 1] + self.f.constant >= *b {
                    break;
                }
            }
            let wr: Vec<Rational> = w.iter().map(|&x| int(x)).collect();
            // m + c <= w.x
            cons.push(Lin { a: wr.iter().map(|x| -x).collect(), b: -(int(m) + &off), strict: false });
            // w.x < m + 1 + c
            cons.push(Lin { a: wr, b: int(m + 1) + &off, strict: true });
            self.recurse(depth + 1, cons, child_partial);
            cons.pop();
            cons.pop();
        }
    }
}

/// Lexicographically smallest arrangement vertex in the region attaining `value`.
fn vertex_witness(
    f: &StepFunctionSpec,
    terms: &[Term],
    region: &RegionSpec,
    value: i64,
    stats: &mut EngineStats,
) -> Option<Vec<Rational>> {
    let d = f.dim;
    let mut planes: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let mut push = |a: Vec<Rational>, b: Rational| {
        let lead = a.iter().find(|x| !x.is_zero()).cloned();
        if let Some(lead) = lead {
            let a: Vec<Rational> = a.iter().map(|x| x / &lead).collect();
            let b = b / lead;
            if !planes.iter().any(|(pa, pb)| pa == &a && pb == &b) {
                planes.push((a, b));
            }
        }
    };
    for i in 0..d {
        let mut a = vec![Rational::zero(); d];
        a[i] = Rational::one();
        push(a, Rational::zero());
    }
    for t in terms {
        for m in t.lo + 1..=t.hi {
            push(t.weights.iter().map(|&w| int(w)).collect(), int(m) + &t.offset);
        }
    }
    for h in &region.constraints {
        push(h.weights.iter().map(|&w| int(w)).collect(), h.bound.clone());
    }
    let combos = binomial(planes.len() as u64, d as u64);
    if combos > VERTEX_SCAN_LIMIT {
        return None;
    }
    let mut best: Option<Vec<Rational>> = None;
    let mut idx: Vec<usize> = (0..d).collect();
    if planes.len() < d {
        return None;
    }
    loop {
        stats.vertices += 1;
        if let Some(x) = solve_planes(&planes, &idx) {
            if best.as_ref().is_none_or(|b| &x < b) && region.contains(&x) && f.eval(&x) == value {
                best = Some(x);
            }
        }
        // next combination
        let mut i = d;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if idx[i] < planes.len() - d + i {
                idx[i] += 1;
                for j in i + 1..d {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn solve_planes(planes: &[(Vec<Rational>, Rational)], idx: &[usize]) -> Option<Vec<Rational>> {
    let d = idx.len();
    let mut m: Vec<Vec<Rational>> = idx
        .iter()
        .map(|&i| {
            let mut row = planes[i].0.clone();
            row.push(planes[i].1.clone());
            row
        })
        .collect();
    for col in 0..d {
        let piv = (col..d).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = Rational::one() / &m[col][col];
        for j in col..=d {
            m[col][j] = &m[col][j] * &inv;
        }
        for r in 0..d {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in col..=d {
                    let delta = &factor * &m[col][j];
                    m[r][j] = &m[r][j] - delta;
                }
            }
        }
    }
    let x: Vec<Rational> = m.into_iter().map(|row| row[d].clone()).collect();
    if x.iter().any(|v| v.is_negative() || v >= &Rational::one()) {
        return None;
    }
    Some(x)
}
