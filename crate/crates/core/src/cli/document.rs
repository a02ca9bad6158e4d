//! Problem documents: JSON in, validated domain objects out, and back.
//!
//! Parsing goes through a loose serde layer (`RawDocument`, rationals kept as strings) so that
//! every failure can be reported with a JSON pointer.

use serde::{Deserialize, Serialize};

use crate::hyperdata::{
    validate_factorial_system, validate_hyper_system, FactorialRatioSystem, HyperDataError, HyperSystem, ParamPair,
    Side,
};
use crate::independence::SearchParams;
use crate::rational::{format_rational, parse_rational, Rational, RationalParseError};
use crate::sequences::{algebraic_root_stream, closure_transform, ClosureOp, CoefficientStream, Polynomial, SequenceError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocumentError {
    #[error("schema error at '{pointer}': {message}")]
    Schema { pointer: String, message: String },
    #[error("bad rational at '{pointer}': {source}")]
    Rational { pointer: String, source: RationalParseError },
    #[error("invalid system at '{pointer}': {source}")]
    Data { pointer: String, source: HyperDataError },
    #[error("invalid stream at '{pointer}': {source}")]
    Stream { pointer: String, source: SequenceError },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl DocumentError {
    pub fn pointer(&self) -> Option<&str> {
        match self {
            DocumentError::Schema { pointer, .. }
            | DocumentError::Rational { pointer, .. }
            | DocumentError::Data { pointer, .. }
            | DocumentError::Stream { pointer, .. } => Some(pointer),
            DocumentError::Io { .. } => None,
        }
    }
}

fn schema(pointer: &str, message: impl Into<String>) -> DocumentError {
    DocumentError::Schema { pointer: pointer.to_string(), message: message.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DocKind {
    Hypergeometric,
    Factorial,
    Specialization,
    Stream,
    Independence,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPair {
    pub param: String,
    pub exps: Vec<u32>,
}

/// Exponent vector, or a bare integer for one variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawExps {
    Scalar(u32),
    Vector(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTerm {
    pub exps: Vec<u32>,
    pub coef: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StreamOp {
    Problem,
    Literal,
    Hadamard,
    Outer,
    Diagonal,
    Identify,
    Specialize,
    Root,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawStream {
    pub op: StreamOp,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub args: Option<Vec<RawStream>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub problem: Option<Box<RawDocument>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub num: Option<Vec<RawTerm>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<Vec<RawTerm>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEntry {
    pub id: String,
    pub problem: RawDocument,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyRequest {
    pub primes: Vec<u64>,
    #[serde(default = "one_u32")]
    pub k: u32,
    #[serde(default = "default_m_max")]
    pub m_max: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_max: Option<u64>,
}

fn one_u32() -> u32 {
    1
}

fn default_m_max() -> u64 {
    20
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuationQuery {
    pub p: u64,
    pub n: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSearch {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dmax: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
}

/// Wire form of a problem document. Which fields are required depends on `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub kind: DocKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<RawPair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<RawPair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<Vec<RawExps>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<RawExps>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<Box<RawDocument>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stream: Option<RawStream>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<RawEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyRequest>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub queries: Option<Vec<ValuationQuery>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<RawSearch>,
}

impl RawDocument {
    fn empty(kind: DocKind) -> Self {
        RawDocument {
            id: None,
            kind,
            alpha: None,
            beta: None,
            dim: None,
            u: None,
            v: None,
            e: None,
            f: None,
            source: None,
            w: None,
            b: None,
            subgroup: None,
            stream: None,
            entries: None,
            verify: None,
            queries: None,
            search: None,
        }
    }
}

/// Validated document.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemDocument {
    pub id: Option<String>,
    pub problem: Problem,
    pub checks: Checks,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Checks {
    pub verify: Option<VerifyRequest>,
    pub queries: Vec<ValuationQuery>,
    pub search: Option<SearchParams>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Problem {
    Hypergeometric { system: HyperSystem, subgroup: Option<Vec<u64>> },
    Factorial { system: FactorialRatioSystem },
    /// `source` is hypergeometric or factorial.
    Specialization { source: Box<Problem>, w: Vec<u64>, b: Vec<Rational>, subgroup: Option<Vec<u64>> },
    Stream { stream: StreamExpr },
    Independence { entries: Vec<(String, Problem)> },
}

#[derive(Debug, Clone, PartialEq)]
pub enum StreamExpr {
    Problem(Box<Problem>),
    Literal(Vec<Rational>),
    Hadamard(Box<StreamExpr>, Box<StreamExpr>),
    Outer(Box<StreamExpr>, Box<StreamExpr>),
    Diagonal(Box<StreamExpr>),
    Identify { input: Box<StreamExpr>, i: usize, j: usize },
    Specialize { input: Box<StreamExpr>, w: Vec<u64>, b: Vec<Rational> },
    Root { num: Polynomial, den: Polynomial, root: u32, sign: i8 },
}

impl Problem {
    pub fn kind(&self) -> DocKind {
        match self {
            Problem::Hypergeometric { .. } => DocKind::Hypergeometric,
            Problem::Factorial { .. } => DocKind::Factorial,
            Problem::Specialization { .. } => DocKind::Specialization,
            Problem::Stream { .. } => DocKind::Stream,
            Problem::Independence { .. } => DocKind::Independence,
        }
    }

    /// Hypergeometric system underlying the problem, if any.
    pub fn hyper_system(&self) -> Option<HyperSystem> {
        match self {
            Problem::Hypergeometric { system, .. } => Some(system.clone()),
            Problem::Factorial { system } => Some(system.to_hyper()),
            Problem::Specialization { source, .. } => source.hyper_system(),
            _ => None,
        }
    }

    pub fn stream(&self) -> Result<CoefficientStream, SequenceError> {
        match self {
            Problem::Hypergeometric { system, .. } => Ok(CoefficientStream::hypergeometric(system)),
            Problem::Factorial { system } => Ok(CoefficientStream::factorial(system)),
            Problem::Specialization { source, w, b, .. } => source.stream()?.specialize(w, b),
            Problem::Stream { stream } => stream.build(),
            Problem::Independence { .. } => Err(SequenceError::ArityMismatch { expected: 1, found: 0 }),
        }
    }
}

impl StreamExpr {
    pub fn build(&self) -> Result<CoefficientStream, SequenceError> {
        let pair = |a: &StreamExpr, b: &StreamExpr| Ok::<_, SequenceError>(vec![a.build()?, b.build()?]);
        match self {
            StreamExpr::Problem(p) => p.stream(),
            StreamExpr::Literal(c) => Ok(CoefficientStream::literal(c.clone())),
            StreamExpr::Hadamard(a, b) => closure_transform(ClosureOp::Hadamard, &pair(a, b)?),
            StreamExpr::Outer(a, b) => closure_transform(ClosureOp::OuterProduct, &pair(a, b)?),
            StreamExpr::Diagonal(a) => closure_transform(ClosureOp::Diagonal, &[a.build()?]),
            StreamExpr::Identify { input, i, j } => {
                closure_transform(ClosureOp::IdentifyVars { i: *i, j: *j }, &[input.build()?])
            }
            StreamExpr::Specialize { input, w, b } => input.build()?.specialize(w, b),
            StreamExpr::Root { num, den, root, sign } => algebraic_root_stream(num, den, *root, *sign),
        }
    }
}

fn child(ptr: &str, key: impl std::fmt::Display) -> String {
    format!("{ptr}/{key}")
}

fn required<'a, T>(v: &'a Option<T>, ptr: &str, key: &str) -> Result<&'a T, DocumentError> {
    v.as_ref().ok_or_else(|| schema(ptr, format!("missing field `{key}`")))
}

fn forbid<T>(v: &Option<T>, ptr: &str, key: &str) -> Result<(), DocumentError> {
    if v.is_some() {
        return Err(schema(&child(ptr, key), format!("field `{key}` is not allowed here")));
    }
    Ok(())
}

fn rationals(xs: &[String], ptr: &str) -> Result<Vec<Rational>, DocumentError> {
    xs.iter()
        .enumerate()
        .map(|(i, s)| parse_rational(s).map_err(|source| DocumentError::Rational { pointer: child(ptr, i), source }))
        .collect()
}

fn hyper_error(raw: &RawDocument, ptr: &str, e: HyperDataError) -> DocumentError {
    let pointer = match &e {
        HyperDataError::ParamOutOfRange { side, index, .. } => {
            let univariate = raw.alpha.is_some();
            match (side, univariate) {
                (Side::U, true) => child(&child(ptr, "alpha"), index),
                (Side::V, true) => child(&child(ptr, "beta"), index),
                (Side::U, false) => child(&child(&child(ptr, "u"), index), "param"),
                (Side::V, false) => child(&child(&child(ptr, "v"), index), "param"),
            }
        }
        HyperDataError::EmptySide(Side::U) if raw.e.is_some() => child(ptr, "e"),
        HyperDataError::EmptySide(Side::V) if raw.f.is_some() => child(ptr, "f"),
        _ => ptr.to_string(),
    };
    DocumentError::Data { pointer, source: e }
}

fn exps_list(xs: &[RawExps], dim: usize, ptr: &str) -> Result<Vec<Vec<u32>>, DocumentError> {
    xs.iter()
        .enumerate()
        .map(|(i, x)| {
            let v = match x {
                RawExps::Scalar(s) => vec![*s],
                RawExps::Vector(v) => v.clone(),
            };
            if v.len() != dim {
                return Err(schema(&child(ptr, i), format!("expected {dim} exponents, found {}", v.len())));
            }
            Ok(v)
        })
        .collect()
}

fn hyper_from_raw(raw: &RawDocument, ptr: &str) -> Result<HyperSystem, DocumentError> {
    if let Some(alpha) = &raw.alpha {
        for key in ["u", "v", "dim"] {
            let present = match key {
                "u" => raw.u.is_some(),
                "v" => raw.v.is_some(),
                _ => raw.dim.is_some_and(|d| d != 1),
            };
            if present {
                return Err(schema(&child(ptr, key), "use either alpha/beta or dim/u/v"));
            }
        }
        let beta = required(&raw.beta, ptr, "beta")?;
        let a = rationals(alpha, &child(ptr, "alpha"))?;
        let b = rationals(beta, &child(ptr, "beta"))?;
        return HyperSystem::univariate(&a, &b).map_err(|e| hyper_error(raw, ptr, e));
    }
    let dim = *required(&raw.dim, ptr, "dim")?;
    let mut sides = Vec::new();
    for (key, pairs) in [("u", required(&raw.u, ptr, "u")?), ("v", required(&raw.v, ptr, "v")?)] {
        let p = child(ptr, key);
        let mut out = Vec::new();
        for (i, rp) in pairs.iter().enumerate() {
            let q = child(&p, i);
            let param = parse_rational(&rp.param)
                .map_err(|source| DocumentError::Rational { pointer: child(&q, "param"), source })?;
            if rp.exps.len() != dim {
                return Err(schema(&child(&q, "exps"), format!("expected {dim} exponents, found {}", rp.exps.len())));
            }
            out.push(ParamPair::new(param, rp.exps.clone()));
        }
        sides.push(out);
    }
    let v = sides.pop().unwrap();
    let u = sides.pop().unwrap();
    validate_hyper_system(u, v, dim).map_err(|e| hyper_error(raw, ptr, e))
}

fn factorial_from_raw(raw: &RawDocument, ptr: &str) -> Result<FactorialRatioSystem, DocumentError> {
    let dim = raw.dim.unwrap_or(1);
    let e = exps_list(required(&raw.e, ptr, "e")?, dim, &child(ptr, "e"))?;
    let f = exps_list(required(&raw.f, ptr, "f")?, dim, &child(ptr, "f"))?;
    validate_factorial_system(e, f, dim).map_err(|err| hyper_error(raw, ptr, err))
}

fn no_checks(raw: &RawDocument, ptr: &str) -> Result<(), DocumentError> {
    forbid(&raw.verify, ptr, "verify")?;
    forbid(&raw.queries, ptr, "queries")?;
    forbid(&raw.search, ptr, "search")
}

fn problem_from_raw(raw: &RawDocument, ptr: &str) -> Result<Problem, DocumentError> {
    let own = |keys: &[&str]| -> Result<(), DocumentError> {
        let present: [(&str, bool); 12] = [
            ("alpha", raw.alpha.is_some()),
            ("beta", raw.beta.is_some()),
            ("u", raw.u.is_some()),
            ("v", raw.v.is_some()),
            ("e", raw.e.is_some()),
            ("f", raw.f.is_some()),
            ("source", raw.source.is_some()),
            ("w", raw.w.is_some()),
            ("b", raw.b.is_some()),
            ("subgroup", raw.subgroup.is_some()),
            ("stream", raw.stream.is_some()),
            ("entries", raw.entries.is_some()),
        ];
        for (k, on) in present {
            if on && !keys.contains(&k) {
                return Err(schema(&child(ptr, k), format!("field `{k}` is not allowed for this kind")));
            }
        }
        Ok(())
    };
    match raw.kind {
        DocKind::Hypergeometric => {
            own(&["alpha", "beta", "u", "v", "subgroup"])?;
            Ok(Problem::Hypergeometric { system: hyper_from_raw(raw, ptr)?, subgroup: raw.subgroup.clone() })
        }
        DocKind::Factorial => {
            own(&["e", "f"])?;
            Ok(Problem::Factorial { system: factorial_from_raw(raw, ptr)? })
        }
        DocKind::Specialization => {
            own(&["source", "w", "b", "subgroup"])?;
            let sp = child(ptr, "source");
            let src = required(&raw.source, ptr, "source")?;
            no_checks(src, &sp)?;
            let source = problem_from_raw(src, &sp)?;
            if !matches!(source, Problem::Hypergeometric { .. } | Problem::Factorial { .. }) {
                return Err(schema(&child(&sp, "kind"), "source must be hypergeometric or factorial"));
            }
            if let Problem::Hypergeometric { subgroup: Some(_), .. } = source {
                return Err(schema(&child(&sp, "subgroup"), "put the subgroup on the specialization"));
            }
            let dim = source.hyper_system().unwrap().dim();
            let w = required(&raw.w, ptr, "w")?.clone();
            let b = rationals(required(&raw.b, ptr, "b")?, &child(ptr, "b"))?;
            for (key, len) in [("w", w.len()), ("b", b.len())] {
                if len != dim {
                    return Err(schema(&child(ptr, key), format!("expected {dim} entries, found {len}")));
                }
            }
            if let Some(i) = w.iter().position(|&x| x == 0) {
                return Err(schema(&child(&child(ptr, "w"), i), "weights must be positive"));
            }
            Ok(Problem::Specialization { source: Box::new(source), w, b, subgroup: raw.subgroup.clone() })
        }
        DocKind::Stream => {
            own(&["stream"])?;
            let s = required(&raw.stream, ptr, "stream")?;
            let stream = stream_from_raw(s, &child(ptr, "stream"))?;
            stream.build().map_err(|source| DocumentError::Stream { pointer: child(ptr, "stream"), source })?;
            Ok(Problem::Stream { stream })
        }
        DocKind::Independence => {
            own(&["entries"])?;
            let es = required(&raw.entries, ptr, "entries")?;
            if es.is_empty() {
                return Err(schema(&child(ptr, "entries"), "at least one entry"));
            }
            let mut out = Vec::new();
            for (i, e) in es.iter().enumerate() {
                let p = child(&child(&child(ptr, "entries"), i), "problem");
                no_checks(&e.problem, &p)?;
                if e.problem.kind == DocKind::Independence {
                    return Err(schema(&child(&p, "kind"), "entries cannot nest"));
                }
                let prob = problem_from_raw(&e.problem, &p)?;
                let s = prob.stream().map_err(|source| DocumentError::Stream { pointer: p.clone(), source })?;
                if s.arity() != 1 {
                    return Err(schema(&p, "entry streams must be univariate"));
                }
                out.push((e.id.clone(), prob));
            }
            Ok(Problem::Independence { entries: out })
        }
    }
}

fn terms_to_poly(ts: &[RawTerm], ptr: &str) -> Result<Polynomial, DocumentError> {
    let arity = ts.first().map(|t| t.exps.len()).ok_or_else(|| schema(ptr, "polynomial needs a term"))?;
    let mut out = Vec::new();
    for (i, t) in ts.iter().enumerate() {
        let q = child(ptr, i);
        if t.exps.len() != arity {
            return Err(schema(&child(&q, "exps"), format!("expected {arity} exponents")));
        }
        let c = parse_rational(&t.coef).map_err(|source| DocumentError::Rational { pointer: child(&q, "coef"), source })?;
        out.push((t.exps.clone(), c));
    }
    Ok(Polynomial::new(arity, out))
}

fn stream_from_raw(s: &RawStream, ptr: &str) -> Result<StreamExpr, DocumentError> {
    let args = |n: usize| -> Result<Vec<StreamExpr>, DocumentError> {
        let a = required(&s.args, ptr, "args")?;
        if a.len() != n {
            return Err(schema(&child(ptr, "args"), format!("expected {n} arguments, found {}", a.len())));
        }
        a.iter().enumerate().map(|(i, x)| stream_from_raw(x, &child(&child(ptr, "args"), i))).collect()
    };
    let mut it;
    Ok(match s.op {
        StreamOp::Problem => {
            let p = required(&s.problem, ptr, "problem")?;
            let pp = child(ptr, "problem");
            no_checks(p, &pp)?;
            if matches!(p.kind, DocKind::Independence) {
                return Err(schema(&child(&pp, "kind"), "independence documents carry no stream"));
            }
            StreamExpr::Problem(Box::new(problem_from_raw(p, &pp)?))
        }
        StreamOp::Literal => {
            StreamExpr::Literal(rationals(required(&s.coefficients, ptr, "coefficients")?, &child(ptr, "coefficients"))?)
        }
        StreamOp::Hadamard | StreamOp::Outer => {
            it = args(2)?.into_iter();
            let (a, b) = (Box::new(it.next().unwrap()), Box::new(it.next().unwrap()));
            if s.op == StreamOp::Hadamard {
                StreamExpr::Hadamard(a, b)
            } else {
                StreamExpr::Outer(a, b)
            }
        }
        StreamOp::Diagonal => StreamExpr::Diagonal(Box::new(args(1)?.pop().unwrap())),
        StreamOp::Identify => StreamExpr::Identify {
            input: Box::new(args(1)?.pop().unwrap()),
            i: *required(&s.i, ptr, "i")?,
            j: *required(&s.j, ptr, "j")?,
        },
        StreamOp::Specialize => StreamExpr::Specialize {
            input: Box::new(args(1)?.pop().unwrap()),
            w: required(&s.w, ptr, "w")?.clone(),
            b: rationals(required(&s.b, ptr, "b")?, &child(ptr, "b"))?,
        },
        StreamOp::Root => StreamExpr::Root {
            num: terms_to_poly(required(&s.num, ptr, "num")?, &child(ptr, "num"))?,
            den: terms_to_poly(required(&s.den, ptr, "den")?, &child(ptr, "den"))?,
            root: *required(&s.root, ptr, "root")?,
            sign: s.sign.unwrap_or(1),
        },
    })
}

impl ProblemDocument {
    pub fn from_raw(raw: &RawDocument) -> Result<Self, DocumentError> {
        let problem = problem_from_raw(raw, "")?;
        let search = raw.search.map(|s| {
            let d = SearchParams::default();
            SearchParams {
                dmax: s.dmax.unwrap_or(d.dmax),
                height: s.height.unwrap_or(d.height),
                order: s.order.unwrap_or(d.order),
            }
        });
        if let Some(v) = &raw.verify {
            if v.primes.is_empty() {
                return Err(schema("/verify/primes", "at least one prime"));
            }
        }
        Ok(ProblemDocument {
            id: raw.id.clone(),
            problem,
            checks: Checks { verify: raw.verify.clone(), queries: raw.queries.clone().unwrap_or_default(), search },
        })
    }

    pub fn to_raw(&self) -> RawDocument {
        let mut raw = problem_to_raw(&self.problem);
        raw.id = self.id.clone();
        raw.verify = self.checks.verify.clone();
        raw.queries = (!self.checks.queries.is_empty()).then(|| self.checks.queries.clone());
        raw.search = self
            .checks
            .search
            .map(|s| RawSearch { dmax: Some(s.dmax), height: Some(s.height), order: Some(s.order) });
        raw
    }
}

fn strings(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(format_rational).collect()
}

fn raw_pairs(ps: &[ParamPair]) -> Vec<RawPair> {
    ps.iter().map(|p| RawPair { param: format_rational(&p.param), exps: p.exps.clone() }).collect()
}

fn raw_exps(xs: &[Vec<u32>], dim: usize) -> Vec<RawExps> {
    xs.iter().map(|v| if dim == 1 { RawExps::Scalar(v[0]) } else { RawExps::Vector(v.clone()) }).collect()
}

fn problem_to_raw(p: &Problem) -> RawDocument {
    let mut raw = RawDocument::empty(p.kind());
    match p {
        Problem::Hypergeometric { system, subgroup } => {
            if system.dim() == 1 && system.pairs().all(|q| q.exps == [1]) {
                raw.alpha = Some(system.u().iter().map(|q| format_rational(&q.param)).collect());
                raw.beta = Some(system.v().iter().map(|q| format_rational(&q.param)).collect());
            } else {
                raw.dim = Some(system.dim());
                raw.u = Some(raw_pairs(system.u()));
                raw.v = Some(raw_pairs(system.v()));
            }
            raw.subgroup = subgroup.clone();
        }
        Problem::Factorial { system } => {
            if system.dim() != 1 {
                raw.dim = Some(system.dim());
            }
            raw.e = Some(raw_exps(system.e(), system.dim()));
            raw.f = Some(raw_exps(system.f(), system.dim()));
        }
        Problem::Specialization { source, w, b, subgroup } => {
            raw.source = Some(Box::new(problem_to_raw(source)));
            raw.w = Some(w.clone());
            raw.b = Some(strings(b));
            raw.subgroup = subgroup.clone();
        }
        Problem::Stream { stream } => raw.stream = Some(stream_to_raw(stream)),
        Problem::Independence { entries } => {
            raw.entries =
                Some(entries.iter().map(|(id, p)| RawEntry { id: id.clone(), problem: problem_to_raw(p) }).collect());
        }
    }
    raw
}

fn poly_terms(p: &Polynomial) -> Vec<RawTerm> {
    p.terms.iter().map(|(k, v)| RawTerm { exps: k.clone(), coef: format_rational(v) }).collect()
}

fn stream_to_raw(s: &StreamExpr) -> RawStream {
    let mut raw = RawStream {
        op: StreamOp::Literal,
        args: None,
        problem: None,
        coefficients: None,
        w: None,
        b: None,
        i: None,
        j: None,
        num: None,
        den: None,
        root: None,
        sign: None,
    };
    match s {
        StreamExpr::Problem(p) => {
            raw.op = StreamOp::Problem;
            raw.problem = Some(Box::new(problem_to_raw(p)));
        }
        StreamExpr::Literal(c) => raw.coefficients = Some(strings(c)),
        StreamExpr::Hadamard(a, b) | StreamExpr::Outer(a, b) => {
            raw.op = if matches!(s, StreamExpr::Hadamard(..)) { StreamOp::Hadamard } else { StreamOp::Outer };
            raw.args = Some(vec![stream_to_raw(a), stream_to_raw(b)]);
        }
        StreamExpr::Diagonal(a) => {
            raw.op = StreamOp::Diagonal;
            raw.args = Some(vec![stream_to_raw(a)]);
        }
        StreamExpr::Identify { input, i, j } => {
            raw.op = StreamOp::Identify;
            raw.args = Some(vec![stream_to_raw(input)]);
            raw.i = Some(*i);
            raw.j = Some(*j);
        }
        StreamExpr::Specialize { input, w, b } => {
            raw.op = StreamOp::Specialize;
            raw.args = Some(vec![stream_to_raw(input)]);
            raw.w = Some(w.clone());
            raw.b = Some(strings(b));
        }
        StreamExpr::Root { num, den, root, sign } => {
            raw.op = StreamOp::Root;
            raw.num = Some(poly_terms(num));
            raw.den = Some(poly_terms(den));
            raw.root = Some(*root);
            raw.sign = Some(*sign);
        }
    }
    raw
}

/// JSON pointer for a serde path.
fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => out.push_str(&format!("/{}", key.replace('~', "~0").replace('/', "~1"))),
            Segment::Enum { variant } => out.push_str(&format!("/{variant}")),
            Segment::Unknown => {}
        }
    }
    out
}

/// Deserialize any type, reporting failures with a JSON pointer.
pub fn from_json_text<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, DocumentError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| DocumentError::Schema {
        pointer: pointer_of(e.path()),
        message: e.inner().to_string(),
    })?;
    de.end().map_err(|e| schema("", e.to_string()))?;
    Ok(value)
}

pub fn parse_problem(text: &str) -> Result<ProblemDocument, DocumentError> {
    let raw: RawDocument = from_json_text(text)?;
    ProblemDocument::from_raw(&raw)
}

pub fn read_problem(path: &std::path::Path) -> Result<ProblemDocument, DocumentError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| DocumentError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_problem(&text)
}

/// Canonical JSON text of a document.
pub fn emit_problem(doc: &ProblemDocument) -> String {
    serde_json::to_string_pretty(&doc.to_raw()).expect("documents serialize")
}

/// Canonical JSON text of any report: pretty, struct field order, trailing newline.
pub fn emit_report<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
