//! Algebraic (in)dependence of coefficient streams.
//!
//! - truncated power series over `Q` and over prime fields
//! - rational-function detection through linear recurrences (Berlekamp-Massey)
//! - bounded search for monomial relations `prod f_i^{a_i} = rational function`
//! - asymptotic profiles and McIntosh's constants for binomial sums
//! - verdict rules combining certificates and profiles

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::certifier::{Certificate, PrimeSpec};
use crate::hyperdata::{FactorialRatioSystem, HyperSystem};
use crate::rational::{format_rational, int, serde_rational, serde_rational_vec, Rational};
use crate::sequences::CoefficientStream;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IndependenceError {
    #[error("series order {order} is below 2H + 18 = {needed}")]
    OrderTooSmall { order: usize, needed: usize },
    #[error("negative power of a series whose constant term is not 1")]
    ConstantTermNotOne,
    #[error("no sign change of the saddle equation on (0, 1)")]
    NoSignChange,
    #[error("certificates share no infinite prime family")]
    NoCommonPrimeFamily,
    #[error("entry {0} has no certificate")]
    Uncertified(String),
    #[error("profile needs a balanced system")]
    NotBalanced,
    #[error("profile needs a univariate system with unit exponents")]
    UnsupportedSubject,
    #[error("streams must be univariate")]
    NotUnivariate,
    #[error("empty stream list")]
    NoStreams,
}

/// Minimal field interface for the series routines.
pub trait Field: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Residue modulo the prime `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp<const P: u64>(pub u64);

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn add(&self, o: &Self) -> Self {
        Fp(((self.0 as u128 + o.0 as u128) % P as u128) as u64)
    }
    fn sub(&self, o: &Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - o.0 as u128) % P as u128) as u64)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp((self.0 as u128 * o.0 as u128 % P as u128) as u64)
    }
    fn inv(&self) -> Self {
        Fp(crate::rational::pow_mod(self.0, P - 2, P))
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

/// Two large primes used to reject candidates before exact arithmetic.
pub const FILTER_PRIME_1: u64 = 2_305_843_009_213_693_951;
pub const FILTER_PRIME_2: u64 = 1_000_000_007;

fn series_mul<F: Field>(a: &[F], b: &[F], n: usize) -> Vec<F> {
    let mut out = vec![F::zero(); n];
    for (i, ai) in a.iter().enumerate().take(n) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            out[i + j] = out[i + j].add(&ai.mul(bj));
        }
    }
    out
}

fn series_inv<F: Field>(a: &[F], n: usize) -> Vec<F> {
    let inv0 = a[0].inv();
    let mut out: Vec<F> = Vec::with_capacity(n);
    out.push(inv0.clone());
    for k in 1..n {
        let mut s = F::zero();
        for i in 1..=k.min(a.len() - 1) {
            s = s.add(&a[i].mul(&out[k - i]));
        }
        out.push(F::zero().sub(&s.mul(&inv0)));
    }
    out
}

fn series_pow<F: Field>(a: &[F], e: i64, n: usize) -> Vec<F> {
    let base = if e < 0 { series_inv(a, n) } else { a[..n.min(a.len())].to_vec() };
    let mut out = vec![F::one()];
    out.resize(n, F::zero());
    for _ in 0..e.unsigned_abs() {
        out = series_mul(&out, &base, n);
    }
    out
}

fn pow_product<F: Field>(factors: &[(&[F], i64)], n: usize) -> Vec<F> {
    let mut out = vec![F::one()];
    out.resize(n, F::zero());
    for (f, e) in factors {
        if *e != 0 {
            out = series_mul(&out, &series_pow(f, *e, n), n);
        }
    }
    out
}

/// Exact power series known modulo `x^order`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruncatedSeries {
    #[serde(with = "serde_rational_vec")]
    pub coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        TruncatedSeries { coeffs }
    }

    pub fn from_stream(s: &CoefficientStream, order: usize) -> Result<Self, IndependenceError> {
        Ok(TruncatedSeries::new(s.prefix(order).map_err(|_| IndependenceError::NotUnivariate)?))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }
}

/// `prod f_i^{a_i}` modulo `x^order`, capped by the operand orders.
pub fn series_pow_product(factors: &[(TruncatedSeries, i64)], order: usize) -> Result<TruncatedSeries, IndependenceError> {
    let n = factors.iter().map(|(f, _)| f.order()).fold(order, usize::min);
    for (f, e) in factors {
        if *e < 0 && f.coeffs.first() != Some(&<Rational as One>::one()) {
            return Err(IndependenceError::ConstantTermNotOne);
        }
        if f.coeffs.is_empty() && *e != 0 {
            return Err(IndependenceError::ConstantTermNotOne);
        }
    }
    if n == 0 {
        return Ok(TruncatedSeries::new(vec![]));
    }
    let refs: Vec<(&[Rational], i64)> = factors.iter().map(|(f, e)| (f.coeffs.as_slice(), *e)).collect();
    Ok(TruncatedSeries::new(pow_product(&refs, n)))
}

/// Shortest linear recurrence: returns `(L, C)` with `C(0) = 1` and `deg C <= L`.
pub fn berlekamp_massey<F: Field>(s: &[F]) -> (usize, Vec<F>) {
    let mut c = vec![F::one()];
    let mut b = vec![F::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bb = F::one();
    for n in 0..s.len() {
        let mut d = s[n].clone();
        for i in 1..=l.min(c.len() - 1) {
            d = d.add(&c[i].mul(&s[n - i]));
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = d.mul(&bb.inv());
        let t = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, F::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + m] = c[i + m].sub(&coef.mul(bi));
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = t;
            bb = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.resize(l + 1, F::zero());
    (l, c)
}

fn trim<F: Field>(mut v: Vec<F>) -> Vec<F> {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
    v
}

/// Height of the smallest fraction matching the series, if at most `h`.
fn rational_height<F: Field>(g: &[F], h: usize) -> Option<usize> {
    let (l, _) = berlekamp_massey(&g[1..]);
    (l <= h).then_some(l)
}

fn detect_generic<F: Field>(g: &[F], h: usize) -> Option<(Vec<F>, Vec<F>)> {
    let n = g.len();
    let (l, den) = berlekamp_massey(&g[1..]);
    if l > h {
        return None;
    }
    let prod = series_mul(&den, g, n);
    if prod[l + 1..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some((trim(prod[..=l].to_vec()), trim(den)))
}

fn check_height(order: usize, h: usize) -> Result<(), IndependenceError> {
    let needed = 2 * h + 2 + 16;
    if order < needed {
        return Err(IndependenceError::OrderTooSmall { order, needed });
    }
    Ok(())
}

/// `num / den` with `den(0) = 1`, coefficients from degree 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalFunction {
    #[serde(with = "serde_rational_vec")]
    pub num: Vec<Rational>,
    #[serde(with = "serde_rational_vec")]
    pub den: Vec<Rational>,
}

impl RationalFunction {
    pub fn height(&self) -> usize {
        (self.num.len().max(self.den.len())).saturating_sub(1)
    }

    /// `num - den * g` vanishes through the order of `g`.
    pub fn matches(&self, g: &TruncatedSeries) -> bool {
        let n = g.order();
        let prod = series_mul(&self.den, &g.coeffs, n);
        (0..n).all(|i| prod[i] == self.num.get(i).cloned().unwrap_or_else(<Rational as Zero>::zero))
    }
}

/// `(A, B)` with `A = B g` modulo `x^N`, heights at most `h`, or `None`.
pub fn detect_rational(g: &TruncatedSeries, h: usize) -> Result<Option<RationalFunction>, IndependenceError> {
    check_height(g.order(), h)?;
    Ok(detect_generic(&g.coeffs, h).map(|(num, den)| RationalFunction { num, den }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialRelation {
    pub exponents: Vec<i64>,
    pub fraction: RationalFunction,
    pub verified_order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchParams {
    pub dmax: u32,
    pub height: usize,
    pub order: usize,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams { dmax: 3, height: 40, order: 400 }
    }
}

/// Exponent vectors by max-norm shell, then lexicographically; first nonzero entry positive.
pub fn exponent_candidates(n: usize, dmax: u32) -> Vec<Vec<i64>> {
    let d = dmax as i64;
    let mut out = Vec::new();
    for s in 1..=d {
        let mut cur = vec![-s; n];
        loop {
            let maxnorm = cur.iter().map(|x| x.abs()).max().unwrap_or(0);
            let first = cur.iter().find(|&&x| x != 0);
            if maxnorm == s && first.is_some_and(|&x| x > 0) && cur.iter().sum::<i64>().abs() <= d {
                out.push(cur.clone());
            }
            let mut i = n;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if cur[i] < s {
                    cur[i] += 1;
                    break;
                }
                cur[i] = -s;
            }
            if i == 0 && cur.iter().all(|&x| x == -s) {
                break;
            }
        }
    }
    out
}

fn mod_prefix<const P: u64>(s: &CoefficientStream, n: usize) -> Option<Vec<Fp<P>>> {
    s.prefix_mod(n, P).ok().map(|v| v.into_iter().map(Fp).collect())
}

fn passes_filter<const P: u64>(prefixes: &Option<Vec<Vec<Fp<P>>>>, exps: &[i64], n: usize, h: usize) -> bool {
    let Some(pre) = prefixes else { return true };
    if exps.iter().zip(pre).any(|(&e, f)| e < 0 && f[0] != Fp(1)) {
        return true;
    }
    let refs: Vec<(&[Fp<P>], i64)> = pre.iter().zip(exps).map(|(f, &e)| (f.as_slice(), e)).collect();
    rational_height(&pow_product(&refs, n), h).is_some()
}

/// First exponent vector (in enumeration order) whose monomial is a rational function of
/// height at most `h` through order `n`.
///
/// Two large primes reject candidates cheaply; anything that survives is decided exactly.
pub fn find_monomial_relation(
    streams: &[CoefficientStream],
    dmax: u32,
    h: usize,
    n: usize,
) -> Result<Option<MonomialRelation>, IndependenceError> {
    if streams.is_empty() {
        return Err(IndependenceError::NoStreams);
    }
    if streams.iter().any(|s| s.arity() != 1) {
        return Err(IndependenceError::NotUnivariate);
    }
    check_height(n, h)?;
    let p1: Option<Vec<Vec<Fp<FILTER_PRIME_1>>>> = streams.iter().map(|s| mod_prefix(s, n)).collect();
    let p2: Option<Vec<Vec<Fp<FILTER_PRIME_2>>>> = streams.iter().map(|s| mod_prefix(s, n)).collect();
    let mut exact: Option<Vec<TruncatedSeries>> = None;
    for exps in exponent_candidates(streams.len(), dmax) {
        if !passes_filter(&p1, &exps, n, h) || !passes_filter(&p2, &exps, n, h) {
            continue;
        }
        if exact.is_none() {
            exact = Some(streams.iter().map(|s| TruncatedSeries::from_stream(s, n)).collect::<Result<_, _>>()?);
        }
        let series = exact.as_ref().unwrap();
        let factors: Vec<(TruncatedSeries, i64)> = series.iter().cloned().zip(exps.iter().copied()).collect();
        let g = match series_pow_product(&factors, n) {
            Ok(g) => g,
            Err(IndependenceError::ConstantTermNotOne) => continue,
            Err(e) => return Err(e),
        };
        if let Some(fraction) = detect_rational(&g, h)? {
            if fraction.matches(&g) {
                return Ok(Some(MonomialRelation { exponents: exps, fraction, verified_order: g.order() }));
            }
        }
    }
    Ok(None)
}

/// Exact when known, otherwise a floating-point approximation.
#[derive(Debug, Clone, PartialEq)]
pub enum Growth {
    Exact(Rational),
    Numeric(f64),
}

impl Growth {
    pub fn to_f64(&self) -> f64 {
        match self {
            Growth::Exact(r) => crate::rational::ln_rational(r).exp(),
            Growth::Numeric(x) => *x,
        }
    }

    /// `Some(true)` when provably equal, `Some(false)` when provably or numerically distinct.
    pub fn same_as(&self, other: &Growth) -> Option<bool> {
        match (self, other) {
            (Growth::Exact(a), Growth::Exact(b)) => Some(a == b),
            _ => {
                let (a, b) = (self.to_f64(), other.to_f64());
                if (a - b).abs() > 1e-6 * a.abs().max(b.abs()) {
                    Some(false)
                } else {
                    None
                }
            }
        }
    }
}

impl Serialize for Growth {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Growth::Exact(r) => s.serialize_str(&format_rational(r)),
            Growth::Numeric(x) => s.serialize_f64(*x),
        }
    }
}

/// `a(n) ~ K C^n n^theta`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticProfile {
    pub growth: Growth,
    #[serde(with = "serde_rational")]
    pub theta: Rational,
    pub log_singularity: bool,
    pub nonnegative: bool,
    /// Nonnegative coefficients and `theta <= -1`, so the series converges on its circle.
    pub in_w: bool,
}

impl AsymptoticProfile {
    fn new(growth: Growth, theta: Rational, nonnegative: bool) -> Self {
        AsymptoticProfile {
            log_singularity: theta == int(-1),
            in_w: nonnegative && theta <= int(-1),
            growth,
            theta,
            nonnegative,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum ProfileSubject<'a> {
    Factorial(&'a FactorialRatioSystem),
    Hypergeometric(&'a HyperSystem),
    McIntosh { m: usize, r: &'a [u32] },
}

pub fn asymptotic_profile(subject: ProfileSubject<'_>) -> Result<AsymptoticProfile, IndependenceError> {
    match subject {
        ProfileSubject::Factorial(sys) => {
            if sys.dim() != 1 {
                return Err(IndependenceError::UnsupportedSubject);
            }
            if !sys.is_balanced() {
                return Err(IndependenceError::NotBalanced);
            }
            let c = sys.growth_constant().map_err(|_| IndependenceError::UnsupportedSubject)?;
            let theta = Rational::new((sys.e().len() as i64 - sys.f().len() as i64).into(), 2.into());
            Ok(AsymptoticProfile::new(Growth::Exact(c), theta, true))
        }
        ProfileSubject::Hypergeometric(sys) => {
            let unit = sys.pairs().all(|p| p.exps == [1]);
            if sys.dim() != 1 || !unit {
                return Err(IndependenceError::UnsupportedSubject);
            }
            if sys.u().len() != sys.v().len() {
                return Err(IndependenceError::NotBalanced);
            }
            let sa = sys.u().iter().fold(<Rational as Zero>::zero(), |acc, p| acc + &p.param);
            let sb = sys.v().iter().fold(<Rational as Zero>::zero(), |acc, p| acc + &p.param);
            Ok(AsymptoticProfile::new(Growth::Exact(int(1)), sa - sb, true))
        }
        ProfileSubject::McIntosh { m, r } => {
            let mc = mcintosh_profile(m, r)?;
            let total: u32 = r.iter().sum();
            let theta = Rational::new((1 - total as i64).into(), 2.into());
            Ok(AsymptoticProfile::new(Growth::Numeric(mc.mu), theta, true))
        }
    }
}

/// `S(n) ~ mu^{n+1/2} / sqrt(nu (2 pi lambda n)^{r-1})` for `S(n) = sum_k prod_j C(n+jk, k)^{r_j}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McIntoshProfile {
    pub lambda: f64,
    pub mu: f64,
    pub nu: f64,
    pub residual: f64,
}

fn saddle(r: &[u32], lam: f64) -> f64 {
    r.iter()
        .enumerate()
        .map(|(j, &rj)| {
            let j = j as f64;
            rj as f64 * (j * (1.0 + j * lam).ln() - lam.ln() - (j - 1.0) * (1.0 + j * lam - lam).ln())
        })
        .sum()
}

pub fn mcintosh_profile(m: usize, r: &[u32]) -> Result<McIntoshProfile, IndependenceError> {
    if r.len() != m + 1 || r.iter().all(|&x| x == 0) {
        return Err(IndependenceError::UnsupportedSubject);
    }
    let (mut lo, mut hi) = (1e-12, 1.0 - 1e-12);
    let (flo, fhi) = (saddle(r, lo), saddle(r, hi));
    if flo.signum() == fhi.signum() {
        return Err(IndependenceError::NoSignChange);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if saddle(r, mid).signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lam = 0.5 * (lo + hi);
    let mu = r
        .iter()
        .enumerate()
        .map(|(j, &rj)| ((1.0 + j as f64 * lam) / (1.0 + j as f64 * lam - lam)).powi(rj as i32))
        .product();
    let nu = r
        .iter()
        .enumerate()
        .map(|(j, &rj)| rj as f64 / ((1.0 + j as f64 * lam - lam) * (1.0 + j as f64 * lam)))
        .sum();
    Ok(McIntoshProfile { lambda: lam, mu, nu, residual: saddle(r, lam).abs() })
}

/// `S(n) = sum_k prod_j C(n + jk, k)^{r_j}`.
pub fn mcintosh_sum(r: &[u32], n: u64) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    let binom = |a: u64, b: u64| -> BigInt {
        (0..b).fold(BigInt::one(), |acc, i| acc * BigInt::from(a - i) / BigInt::from(i + 1))
    };
    let mut total = BigInt::zero();
    for k in 0..=n {
        let mut t = BigInt::one();
        for (j, &rj) in r.iter().enumerate() {
            t *= num_traits::pow(binom(n + j as u64 * k, k), rj as usize);
        }
        total += t;
    }
    total
}

/// One input of [`independence_verdict`].
#[derive(Debug, Clone)]
pub struct VerdictEntry {
    pub id: String,
    pub certificate: Option<Certificate>,
    pub profile: Option<AsymptoticProfile>,
    /// Set for univariate factorial ratios, enabling the factorial pair rule.
    pub factorial: Option<FactorialRatioSystem>,
    pub stream: CoefficientStream,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backing {
    Certificate,
    Profile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Premise {
    pub backing: Backing,
    pub entries: Vec<String>,
    pub statement: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule {
    /// distinct radii, all in W
    R1,
    /// common radius, one logarithmic singularity, one finite limit
    R2,
    /// factorial pair with `v - u = 2` and `v - u >= 3`
    R3,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    Independent { rule: Rule, via: Option<Rule> },
    Dependent { relation: MonomialRelation },
    Inconclusive { searched: SearchParams, candidates: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub common_primes: PrimeSpec,
    pub premises: Vec<Premise>,
}

fn premise(backing: Backing, entries: &[&VerdictEntry], statement: String) -> Premise {
    Premise { backing, entries: entries.iter().map(|e| e.id.clone()).collect(), statement }
}

fn fmt_theta(t: &Rational) -> String {
    if t.denom().is_one() {
        t.numer().to_string()
    } else {
        format!("{}/{}", t.numer(), t.denom())
    }
}

fn profile_premises(es: &[&VerdictEntry]) -> Vec<Premise> {
    es.iter()
        .map(|e| {
            let p = e.profile.as_ref().unwrap();
            premise(
                Backing::Profile,
                &[e],
                format!("nonnegative coefficients, theta = {}, hence in W", fmt_theta(&p.theta)),
            )
        })
        .collect()
}

fn all_primes_certified(e: &VerdictEntry) -> bool {
    e.certificate.as_ref().is_some_and(|c| c.primes.modulus == 1 && c.claim_k == 1)
}

/// `(u, v)` = number of factorials upstairs and downstairs.
fn factorial_counts(e: &VerdictEntry) -> Option<(i64, i64)> {
    e.factorial.as_ref().filter(|s| s.dim() == 1).map(|s| (s.e().len() as i64, s.f().len() as i64))
}

pub fn independence_verdict(entries: &[VerdictEntry], search: SearchParams) -> Result<Verdict, IndependenceError> {
    if entries.is_empty() {
        return Err(IndependenceError::NoStreams);
    }
    let mut common = PrimeSpec::all_primes();
    for e in entries {
        let c = e.certificate.as_ref().ok_or_else(|| IndependenceError::Uncertified(e.id.clone()))?;
        common = common.intersect(&c.primes);
    }
    if !common.is_infinite() {
        return Err(IndependenceError::NoCommonPrimeFamily);
    }
    let refs: Vec<&VerdictEntry> = entries.iter().collect();
    let mut premises: Vec<Premise> = entries
        .iter()
        .map(|e| premise(Backing::Certificate, &[e], e.certificate.as_ref().unwrap().claim()))
        .collect();
    premises.push(premise(
        Backing::Certificate,
        &refs,
        format!("common prime family is infinite: {}", common.describe()),
    ));
    let all_w = entries.iter().all(|e| e.profile.as_ref().is_some_and(|p| p.in_w));
    let distinct = |a: &VerdictEntry, b: &VerdictEntry| {
        a.profile.as_ref().unwrap().growth.same_as(&b.profile.as_ref().unwrap().growth) == Some(false)
    };
    let pairwise_distinct = all_w
        && (0..entries.len()).all(|i| (i + 1..entries.len()).all(|j| distinct(&entries[i], &entries[j])));
    if pairwise_distinct {
        premises.extend(profile_premises(&refs));
        premises.push(premise(Backing::Profile, &refs, "growth constants pairwise distinct".into()));
        return Ok(Verdict { outcome: Outcome::Independent { rule: Rule::R1, via: None }, common_primes: common, premises });
    }
    if entries.len() == 2 {
        let (a, b) = (&entries[0], &entries[1]);
        if let (Some((u1, v1)), Some((u2, v2))) = (factorial_counts(a), factorial_counts(b)) {
            let shape = (v1 - u1 == 2 && v2 - u2 >= 3) || (v2 - u2 == 2 && v1 - u1 >= 3);
            if shape && all_primes_certified(a) && all_primes_certified(b) && all_w {
                premises.extend(profile_premises(&refs));
                let via = if distinct(a, b) {
                    premises.push(premise(Backing::Profile, &refs, "growth constants distinct".into()));
                    Rule::R1
                } else {
                    premises.push(premise(
                        Backing::Profile,
                        &refs,
                        "equal growth constants; theta = -1 gives a logarithmic singularity, theta <= -3/2 a finite limit"
                            .into(),
                    ));
                    Rule::R2
                };
                return Ok(Verdict {
                    outcome: Outcome::Independent { rule: Rule::R3, via: Some(via) },
                    common_primes: common,
                    premises,
                });
            }
        }
        if all_w {
            let (pa, pb) = (a.profile.as_ref().unwrap(), b.profile.as_ref().unwrap());
            let same = pa.growth.same_as(&pb.growth) == Some(true);
            let minus_one = int(-1);
            let split = (pa.theta == minus_one && pb.theta < minus_one) || (pb.theta == minus_one && pa.theta < minus_one);
            if same && split {
                premises.extend(profile_premises(&refs));
                premises.push(premise(
                    Backing::Profile,
                    &refs,
                    "equal growth constants; one logarithmic singularity, one finite limit \
                     (theta = -1 read as c C^n / n, valid for factorial and hypergeometric profiles)"
                        .into(),
                ));
                return Ok(Verdict { outcome: Outcome::Independent { rule: Rule::R2, via: None }, common_primes: common, premises });
            }
        }
    }
    for e in entries.iter().filter(|e| !e.profile.as_ref().is_some_and(|p| p.in_w)) {
        premises.push(premise(Backing::Profile, &[e], "W unknown: sufficient condition not met, R1 blocked".into()));
    }
    let streams: Vec<CoefficientStream> = entries.iter().map(|e| e.stream.clone()).collect();
    let outcome = match find_monomial_relation(&streams, search.dmax, search.height, search.order)? {
        Some(relation) => Outcome::Dependent { relation },
        None => Outcome::Inconclusive {
            searched: search,
            candidates: exponent_candidates(entries.len(), search.dmax).len(),
        },
    };
    Ok(Verdict { outcome, common_primes: common, premises })
}

/// Ratio `a(n+1)/a(n)` as a float, for growth checks.
pub fn ratio_f64(a: &Rational, b: &Rational) -> f64 {
    let r = a / b;
    if r.is_negative() {
        -crate::rational::ln_rational(&-r).exp()
    } else {
        crate::rational::ln_rational(&r).exp()
    }
}
