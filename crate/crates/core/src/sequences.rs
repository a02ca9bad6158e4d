//! Exact coefficient streams.
//!
//! A [`CoefficientStream`] is a cheap-to-clone handle on a lazily evaluated, memoised
//! multivariate sequence of rationals. Streams come from hypergeometric or factorial
//! systems, specializations, closure operations, algebraic roots or literal lists, and
//! remember how they were built in their [`Provenance`].

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::hyperdata::{FactorialRatioSystem, HyperSystem};
use crate::rational::{
    format_rational, int, mod_inverse, pow_mod, rational_mod, serde_rational_vec, vp_bigint, Rational,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SequenceError {
    #[error("coefficient {0} is not p-integral")]
    NotPIntegral(usize),
    #[error("operation expects arity {expected}, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("rational function must have constant term 1")]
    ConstantTermNotOne,
    #[error("specialization weights must be positive")]
    ZeroWeight,
    #[error("root index must be positive and the sign must be +1 or -1")]
    BadExponent,
}

/// `(x)_m = x (x+1) ... (x+m-1)`.
pub fn pochhammer(x: &Rational, m: u64) -> Rational {
    (0..m).fold(Rational::one(), |acc, j| acc * (x + int(j as i64)))
}

/// `Q_{u,v}(n) = prod (alpha_i)_{e_i.n} / prod (beta_j)_{f_j.n}`.
pub fn q_uv(sys: &HyperSystem, n: &[u64]) -> Rational {
    let num = sys.u().iter().fold(Rational::one(), |acc, p| acc * pochhammer(&p.param, p.weight(n)));
    let den = sys.v().iter().fold(Rational::one(), |acc, p| acc * pochhammer(&p.param, p.weight(n)));
    num / den
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `Q_{e,f}(n) = prod (e_i.n)! / prod (f_j.n)!`.
pub fn q_ef(sys: &FactorialRatioSystem, n: &[u64]) -> Rational {
    let dot = |v: &Vec<u32>| v.iter().zip(n).map(|(&e, &k)| e as u64 * k).sum::<u64>();
    let num = sys.e().iter().fold(BigInt::one(), |acc, v| acc * factorial(dot(v)));
    let den = sys.f().iter().fold(BigInt::one(), |acc, v| acc * factorial(dot(v)));
    Rational::new(num, den)
}

/// Sparse polynomial in `arity` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    pub arity: usize,
    pub terms: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    pub fn new(arity: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut map = BTreeMap::new();
        for (k, v) in terms {
            assert_eq!(k.len(), arity, "monomial arity");
            let e = map.entry(k).or_insert_with(Rational::zero);
            *e += v;
        }
        map.retain(|_, v: &mut Rational| !v.is_zero());
        Polynomial { arity, terms: map }
    }

    pub fn univariate(coeffs: &[Rational]) -> Self {
        Polynomial::new(1, coeffs.iter().enumerate().map(|(i, c)| (vec![i as u32], c.clone())))
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&vec![0; self.arity]).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|k| k.iter().sum::<u32>() as usize).max().unwrap_or(0)
    }

    fn scaled(&self, c: &Rational) -> Polynomial {
        Polynomial { arity: self.arity, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    fn homogeneous(&self, deg: usize) -> Comp {
        self.terms
            .iter()
            .filter(|(k, _)| k.iter().sum::<u32>() as usize == deg)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (k, v) in &self.terms {
            seq.serialize_element(&(k, format_rational(v)))?;
        }
        seq.end()
    }
}

/// How a stream was built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum Provenance {
    Hypergeometric { system: HyperSystem },
    Factorial { system: FactorialRatioSystem },
    Specialization {
        w: Vec<u64>,
        #[serde(with = "serde_rational_vec")]
        b: Vec<Rational>,
        input: Box<Provenance>,
    },
    IdentifyVars { i: usize, j: usize, input: Box<Provenance> },
    OuterProduct { left: Box<Provenance>, right: Box<Provenance> },
    Hadamard { left: Box<Provenance>, right: Box<Provenance> },
    Diagonal { input: Box<Provenance> },
    AlgebraicRoot {
        num: Polynomial,
        den: Polynomial,
        a: u32,
        sign: i8,
    },
    Literal {
        #[serde(with = "serde_rational_vec")]
        coefficients: Vec<Rational>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureOp {
    /// Merge variables `i < j` into variable `i`.
    IdentifyVars { i: usize, j: usize },
    OuterProduct,
    Hadamard,
    Diagonal,
}

type Comp = BTreeMap<Vec<u32>, Rational>;

/// Prefix products `prod_{j<m} (a + j b)` for `alpha = a/b`, grown on demand.
struct PochMemo {
    a: BigInt,
    b: BigInt,
    prefix: Mutex<Vec<BigInt>>,
    /// per prime: valuation and unit part of each prefix product
    modp: Mutex<HashMap<u64, ModTable>>,
}

/// `a mod p`, `b mod p`, then valuation and unit part of each prefix product.
struct ModTable {
    a: u64,
    b: u64,
    vals: Vec<u32>,
    units: Vec<u64>,
}

impl PochMemo {
    fn new(alpha: &Rational) -> Self {
        PochMemo {
            a: alpha.numer().clone(),
            b: alpha.denom().clone(),
            prefix: Mutex::new(vec![BigInt::one()]),
            modp: Mutex::new(HashMap::new()),
        }
    }

    /// Numerator product; `(alpha)_m = prod / b^m`.
    fn product(&self, m: u64) -> BigInt {
        let m = m as usize;
        let mut pre = self.prefix.lock().unwrap();
        while pre.len() <= m {
            let j = pre.len() - 1;
            let next = pre.last().unwrap() * (&self.a + &self.b * BigInt::from(j));
            pre.push(next);
        }
        pre[m].clone()
    }

    /// `(v_p, unit mod p, b mod p)` of the numerator product; `p` must not divide `b`.
    fn product_mod(&self, m: u64, p: u64) -> (u32, u64, u64) {
        let m = m as usize;
        let mut all = self.modp.lock().unwrap();
        let pb = BigInt::from(p);
        let t = all.entry(p).or_insert_with(|| ModTable {
            a: self.a.mod_floor(&pb).to_u64().unwrap(),
            b: self.b.mod_floor(&pb).to_u64().unwrap(),
            vals: vec![0],
            units: vec![1 % p],
        });
        while t.vals.len() <= m {
            let j = (t.vals.len() - 1) as u64;
            let (mut v, mut u) = (*t.vals.last().unwrap(), *t.units.last().unwrap());
            let factor_mod = (t.a as u128 + t.b as u128 * j as u128) % p as u128;
            if factor_mod == 0 {
                let factor = &self.a + &self.b * BigInt::from(j);
                let e = vp_bigint(&factor, p);
                let unit = factor / pb.pow(e as u32);
                v += e as u32;
                u = (u as u128 * unit.mod_floor(&pb).to_u64().unwrap() as u128 % p as u128) as u64;
            } else {
                u = (u as u128 * factor_mod % p as u128) as u64;
            }
            t.vals.push(v);
            t.units.push(u);
        }
        (t.vals[m], t.units[m], t.b)
    }
}

struct HyperEval {
    sys: HyperSystem,
    /// memo index for every u pair followed by every v pair
    slots: Vec<usize>,
    memos: Vec<PochMemo>,
    d: u64,
}

impl HyperEval {
    fn new(sys: HyperSystem) -> Self {
        let mut params: Vec<Rational> = Vec::new();
        let mut slots = Vec::new();
        for p in sys.pairs() {
            let idx = params.iter().position(|x| x == &p.param).unwrap_or_else(|| {
                params.push(p.param.clone());
                params.len() - 1
            });
            slots.push(idx);
        }
        let memos = params.iter().map(PochMemo::new).collect();
        let d = sys.d_alpha_beta();
        HyperEval { sys, slots, memos, d }
    }

    fn weights(&self, n: &[u64]) -> Vec<u64> {
        self.sys.pairs().map(|p| p.weight(n)).collect()
    }

    fn coeff(&self, n: &[u64]) -> Rational {
        let ws = self.weights(n);
        let r = self.sys.u().len();
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (k, (&w, &slot)) in ws.iter().zip(&self.slots).enumerate() {
            let memo = &self.memos[slot];
            let prod = memo.product(w);
            let bpow = memo.b.pow(w as u32);
            if k < r {
                num *= prod;
                den *= bpow;
            } else {
                den *= prod;
                num *= bpow;
            }
        }
        let (q, r) = num.div_rem(&den);
        if r.is_zero() {
            return Rational::from_integer(q);
        }
        Rational::new(num, den)
    }

    fn coeff_mod(&self, n: &[u64], p: u64) -> Option<Result<u64, ()>> {
        if self.d.is_multiple_of(p) {
            return None;
        }
        let ws = self.weights(n);
        let r = self.sys.u().len();
        let mut val: i64 = 0;
        let (mut num, mut den) = (1u64 % p, 1u64 % p);
        let mulm = |x: u64, y: u64| (x as u128 * y as u128 % p as u128) as u64;
        for (k, (&w, &slot)) in ws.iter().zip(&self.slots).enumerate() {
            let memo = &self.memos[slot];
            let (v, u, b) = memo.product_mod(w, p);
            let bpow = pow_mod(b, w, p);
            if k < r {
                val += v as i64;
                num = mulm(num, u);
                den = mulm(den, bpow);
            } else {
                val -= v as i64;
                den = mulm(den, u);
                num = mulm(num, bpow);
            }
        }
        Some(if val < 0 {
            Err(())
        } else if val > 0 {
            Ok(0)
        } else {
            Ok(mulm(num, mod_inverse(den, p).expect("unit")))
        })
    }
}

struct RootEval {
    num: Polynomial,
    den: Polynomial,
    q: Rational,
    /// homogeneous components of num^q and den^{-q}
    comps: Mutex<(Vec<Comp>, Vec<Comp>)>,
}

impl RootEval {
    /// Components of `P^q` with `P(0) = 1`: `n G_n = sum_j (q j - (n - j)) P_j G_{n-j}`.
    fn extend(p: &Polynomial, q: &Rational, g: &mut Vec<Comp>, upto: usize) {
        if g.is_empty() {
            g.push(BTreeMap::from([(vec![0; p.arity], Rational::one())]));
        }
        let deg = p.degree();
        while g.len() <= upto {
            let n = g.len();
            let mut acc: Comp = BTreeMap::new();
            for j in 1..=deg.min(n) {
                let pj = p.homogeneous(j);
                if pj.is_empty() {
                    continue;
                }
                let factor = q * int(j as i64) - int((n - j) as i64);
                if factor.is_zero() {
                    continue;
                }
                for (mp, cp) in &pj {
                    for (mg, cg) in &g[n - j] {
                        let key: Vec<u32> = mp.iter().zip(mg).map(|(a, b)| a + b).collect();
                        let e = acc.entry(key).or_insert_with(Rational::zero);
                        *e += &factor * cp * cg;
                    }
                }
            }
            let inv_n = Rational::new(BigInt::one(), BigInt::from(n));
            acc.retain(|_, v| !v.is_zero());
            g.push(acc.into_iter().map(|(k, v)| (k, v * &inv_n)).collect());
        }
    }

    fn coeff(&self, n: &[u64]) -> Rational {
        let total: usize = n.iter().sum::<u64>() as usize;
        let mut guard = self.comps.lock().unwrap();
        let (a, b) = &mut *guard;
        Self::extend(&self.num, &self.q, a, total);
        Self::extend(&self.den, &(-self.q.clone()), b, total);
        let mut sum = Rational::zero();
        for i in 0..=total {
            for (ma, ca) in &a[i] {
                if ma.iter().zip(n).any(|(&x, &y)| x as u64 > y) {
                    continue;
                }
                let rest: Vec<u32> = ma.iter().zip(n).map(|(&x, &y)| (y - x as u64) as u32).collect();
                if let Some(cb) = b[total - i].get(&rest) {
                    sum += ca * cb;
                }
            }
        }
        sum
    }
}

enum Kind {
    Hyper(HyperEval),
    Specialized { input: CoefficientStream, w: Vec<u64>, b: Vec<Rational> },
    IdentifyVars { input: CoefficientStream, i: usize, j: usize },
    Outer(CoefficientStream, CoefficientStream),
    Hadamard(CoefficientStream, CoefficientStream),
    Diagonal(CoefficientStream),
    Root(RootEval),
    Literal(Vec<Rational>),
}

struct Node {
    arity: usize,
    provenance: Provenance,
    kind: Kind,
    memo: Mutex<HashMap<Vec<u64>, Rational>>,
}

/// Lazily evaluated exact coefficients `a(n)`, `n` in `N^arity`.
#[derive(Clone)]
pub struct CoefficientStream {
    node: Arc<Node>,
}

impl std::fmt::Debug for CoefficientStream {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CoefficientStream")
            .field("arity", &self.node.arity)
            .field("provenance", &self.node.provenance)
            .finish()
    }
}

impl CoefficientStream {
    fn build(arity: usize, provenance: Provenance, kind: Kind) -> Self {
        CoefficientStream { node: Arc::new(Node { arity, provenance, kind, memo: Mutex::new(HashMap::new()) }) }
    }

    pub fn hypergeometric(sys: &HyperSystem) -> Self {
        Self::build(
            sys.dim(),
            Provenance::Hypergeometric { system: sys.clone() },
            Kind::Hyper(HyperEval::new(sys.clone())),
        )
    }

    pub fn factorial(sys: &FactorialRatioSystem) -> Self {
        Self::build(
            sys.dim(),
            Provenance::Factorial { system: sys.clone() },
            Kind::Hyper(HyperEval::new(sys.to_hyper())),
        )
    }

    /// Finite list; coefficients past the end are zero.
    pub fn literal(coefficients: Vec<Rational>) -> Self {
        Self::build(
            1,
            Provenance::Literal { coefficients: coefficients.clone() },
            Kind::Literal(coefficients),
        )
    }

    pub fn arity(&self) -> usize {
        self.node.arity
    }

    pub fn provenance(&self) -> &Provenance {
        &self.node.provenance
    }

    /// `f(b_1 x^{w_1}, ..., b_d x^{w_d})`.
    pub fn specialize(&self, w: &[u64], b: &[Rational]) -> Result<Self, SequenceError> {
        for len in [w.len(), b.len()] {
            if len != self.arity() {
                return Err(SequenceError::ArityMismatch { expected: self.arity(), found: len });
            }
        }
        if w.contains(&0) {
            return Err(SequenceError::ZeroWeight);
        }
        Ok(Self::build(
            1,
            Provenance::Specialization {
                w: w.to_vec(),
                b: b.to_vec(),
                input: Box::new(self.provenance().clone()),
            },
            Kind::Specialized { input: self.clone(), w: w.to_vec(), b: b.to_vec() },
        ))
    }

    pub fn coeff(&self, n: &[u64]) -> Rational {
        assert_eq!(n.len(), self.arity(), "index arity");
        if let Kind::Hyper(h) = &self.node.kind {
            return h.coeff(n);
        }
        if let Some(v) = self.node.memo.lock().unwrap().get(n) {
            return v.clone();
        }
        let v = self.compute(n);
        self.node.memo.lock().unwrap().insert(n.to_vec(), v.clone());
        v
    }

    fn compute(&self, n: &[u64]) -> Rational {
        match &self.node.kind {
            Kind::Hyper(h) => h.coeff(n),
            Kind::Specialized { input, w, b } => {
                let mut sum = Rational::zero();
                for_each_composition(w, n[0], &mut |k| {
                    let c = input.coeff(k);
                    if !c.is_zero() {
                        sum += c * monomial(b, k);
                    }
                });
                sum
            }
            Kind::IdentifyVars { input, i, j } => {
                let mut sum = Rational::zero();
                for s in 0..=n[*i] {
                    sum += input.coeff(&split_index(n, *i, *j, s));
                }
                sum
            }
            Kind::Outer(a, b) => {
                let (l, r) = n.split_at(a.arity());
                a.coeff(l) * b.coeff(r)
            }
            Kind::Hadamard(a, b) => a.coeff(n) * b.coeff(n),
            Kind::Diagonal(a) => a.coeff(&vec![n[0]; a.arity()]),
            Kind::Root(r) => r.coeff(n),
            Kind::Literal(v) => v.get(n[0] as usize).cloned().unwrap_or_else(Rational::zero),
        }
    }

    /// `a(n) mod p`, erroring when `p` divides the reduced denominator.
    pub fn coeff_mod(&self, n: &[u64], p: u64) -> Result<u64, ()> {
        let fast = match &self.node.kind {
            Kind::Hyper(h) => h.coeff_mod(n, p),
            Kind::Specialized { input, w, b } => {
                let bm: Option<Vec<u64>> = b.iter().map(|x| rational_mod(x, p)).collect();
                bm.and_then(|bm| {
                    // powers b_i^e mod p for e <= n / w_i
                    let pows: Vec<Vec<u64>> = bm
                        .iter()
                        .zip(w)
                        .map(|(&bi, &wi)| {
                            let mut t = vec![1 % p];
                            for _ in 0..n[0] / wi {
                                t.push((*t.last().unwrap() as u128 * bi as u128 % p as u128) as u64);
                            }
                            t
                        })
                        .collect();
                    let mut acc = Some(0u64);
                    for_each_composition(w, n[0], &mut |k| {
                        if let Some(s) = acc {
                            acc = input.coeff_mod(k, p).ok().map(|c| {
                                let mono = k.iter().zip(&pows).fold(c, |m, (&e, t)| {
                                    (m as u128 * t[e as usize] as u128 % p as u128) as u64
                                });
                                (s + mono) % p
                            });
                        }
                    });
                    acc.map(Ok)
                })
            }
            Kind::Hadamard(a, b) => match (a.coeff_mod(n, p), b.coeff_mod(n, p)) {
                (Ok(x), Ok(y)) => Some(Ok((x as u128 * y as u128 % p as u128) as u64)),
                _ => None,
            },
            Kind::Outer(a, b) => {
                let (l, r) = n.split_at(a.arity());
                match (a.coeff_mod(l, p), b.coeff_mod(r, p)) {
                    (Ok(x), Ok(y)) => Some(Ok((x as u128 * y as u128 % p as u128) as u64)),
                    _ => None,
                }
            }
            Kind::Diagonal(a) => Some(a.coeff_mod(&vec![n[0]; a.arity()], p)),
            _ => None,
        };
        match fast {
            Some(r) => r,
            None => rational_mod(&self.coeff(n), p).ok_or(()),
        }
    }

    /// First `len` coefficients of a univariate stream.
    pub fn prefix(&self, len: usize) -> Result<Vec<Rational>, SequenceError> {
        self.require_univariate()?;
        Ok((0..len as u64).map(|i| self.coeff(&[i])).collect())
    }

    pub fn prefix_mod(&self, len: usize, p: u64) -> Result<Vec<u64>, SequenceError> {
        self.require_univariate()?;
        (0..len).map(|i| self.coeff_mod(&[i as u64], p).map_err(|_| SequenceError::NotPIntegral(i))).collect()
    }

    fn require_univariate(&self) -> Result<(), SequenceError> {
        if self.arity() != 1 {
            return Err(SequenceError::ArityMismatch { expected: 1, found: self.arity() });
        }
        Ok(())
    }
}

/// `n` with variable `j` re-inserted: position `i` gets `s`, position `j` gets `n_i - s`.
fn split_index(n: &[u64], i: usize, j: usize, s: u64) -> Vec<u64> {
    let mut out = n.to_vec();
    out.insert(j, n[i] - s);
    out[i] = s;
    out
}

fn monomial(b: &[Rational], k: &[u64]) -> Rational {
    b.iter().zip(k).fold(Rational::one(), |acc, (bi, &e)| acc * num_traits::pow(bi.clone(), e as usize))
}

/// Calls `f` on every `k` in `N^d` with `w.k = m`, in lexicographic order.
pub fn for_each_composition(w: &[u64], m: u64, f: &mut dyn FnMut(&[u64])) {
    fn rec(w: &[u64], rest: u64, k: &mut Vec<u64>, f: &mut dyn FnMut(&[u64])) {
        let i = k.len();
        if i == w.len() {
            if rest == 0 {
                f(k);
            }
            return;
        }
        for c in 0..=rest / w[i] {
            k.push(c);
            rec(w, rest - c * w[i], k, f);
            k.pop();
        }
    }
    rec(w, m, &mut Vec::with_capacity(w.len()), f)
}

pub fn specialize_stream(sys: &HyperSystem, w: &[u64], b: &[Rational]) -> Result<CoefficientStream, SequenceError> {
    CoefficientStream::hypergeometric(sys).specialize(w, b)
}

pub fn closure_transform(op: ClosureOp, inputs: &[CoefficientStream]) -> Result<CoefficientStream, SequenceError> {
    let want = |k: usize| {
        if inputs.len() != k {
            Err(SequenceError::ArityMismatch { expected: k, found: inputs.len() })
        } else {
            Ok(())
        }
    };
    match op {
        ClosureOp::IdentifyVars { i, j } => {
            want(1)?;
            let s = &inputs[0];
            if !(i < j && j < s.arity()) {
                return Err(SequenceError::ArityMismatch { expected: j + 1, found: s.arity() });
            }
            Ok(CoefficientStream::build(
                s.arity() - 1,
                Provenance::IdentifyVars { i, j, input: Box::new(s.provenance().clone()) },
                Kind::IdentifyVars { input: s.clone(), i, j },
            ))
        }
        ClosureOp::OuterProduct => {
            want(2)?;
            let (a, b) = (&inputs[0], &inputs[1]);
            Ok(CoefficientStream::build(
                a.arity() + b.arity(),
                Provenance::OuterProduct {
                    left: Box::new(a.provenance().clone()),
                    right: Box::new(b.provenance().clone()),
                },
                Kind::Outer(a.clone(), b.clone()),
            ))
        }
        ClosureOp::Hadamard => {
            want(2)?;
            let (a, b) = (&inputs[0], &inputs[1]);
            if a.arity() != b.arity() {
                return Err(SequenceError::ArityMismatch { expected: a.arity(), found: b.arity() });
            }
            Ok(CoefficientStream::build(
                a.arity(),
                Provenance::Hadamard {
                    left: Box::new(a.provenance().clone()),
                    right: Box::new(b.provenance().clone()),
                },
                Kind::Hadamard(a.clone(), b.clone()),
            ))
        }
        ClosureOp::Diagonal => {
            want(1)?;
            let s = &inputs[0];
            Ok(CoefficientStream::build(
                1,
                Provenance::Diagonal { input: Box::new(s.provenance().clone()) },
                Kind::Diagonal(s.clone()),
            ))
        }
    }
}

/// Power series of `(num/den)^{sign/a}` with `num(0)/den(0) = 1`.
pub fn algebraic_root_stream(
    num: &Polynomial,
    den: &Polynomial,
    a: u32,
    sign: i8,
) -> Result<CoefficientStream, SequenceError> {
    if a == 0 || (sign != 1 && sign != -1) {
        return Err(SequenceError::BadExponent);
    }
    if num.arity != den.arity {
        return Err(SequenceError::ArityMismatch { expected: num.arity, found: den.arity });
    }
    let (c0, d0) = (num.constant_term(), den.constant_term());
    if c0.is_zero() || c0 != d0 {
        return Err(SequenceError::ConstantTermNotOne);
    }
    let inv = Rational::one() / c0;
    let (n1, d1) = (num.scaled(&inv), den.scaled(&inv));
    let q = Rational::new(BigInt::from(sign), BigInt::from(a));
    Ok(CoefficientStream::build(
        num.arity,
        Provenance::AlgebraicRoot { num: num.clone(), den: den.clone(), a, sign },
        Kind::Root(RootEval { num: n1, den: d1, q, comps: Mutex::new((vec![], vec![])) }),
    ))
}

pub fn reduce_mod_p(prefix: &[Rational], p: u64) -> Result<Vec<u64>, SequenceError> {
    prefix
        .iter()
        .enumerate()
        .map(|(i, r)| rational_mod(r, p).ok_or(SequenceError::NotPIntegral(i)))
        .collect()
}

/// JSON array of `"num/den"` strings.
pub fn prefix_json(prefix: &[Rational]) -> serde_json::Value {
    serde_json::Value::Array(prefix.iter().map(|r| serde_json::Value::String(format_rational(r))).collect())
}
