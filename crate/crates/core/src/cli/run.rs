//! Command execution: one validated document plus flags in, exit status and JSON report out.

use serde::Serialize;
use serde_json::{json, Value};

use super::cache::Cache;
use super::document::{emit_problem, Problem, ProblemDocument};
use crate::certifier::{
    certify_factorial, certify_hypergeometric, certify_specialization, maximal_subgroup, Certificate, CertifierError,
    FactorialVerdict, SubgroupSet,
};
use crate::hyperdata::{d_alpha_beta, factorial_to_hypergeometric, HyperSystem};
use crate::independence::{
    asymptotic_profile, find_monomial_relation, independence_verdict, Outcome, ProfileSubject,
    SearchParams, VerdictEntry,
};
use crate::lucasverify::{verify_pk_lucas, LucasBox, LucasVerdict, VSelection};
use crate::padic::vp_quv;
use crate::sequences::prefix_json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Translate,
    Certify,
    Verify,
    Valuation,
    Coeffs,
    RelationSearch,
    Verdict,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Translate => "translate",
            Command::Certify => "certify",
            Command::Verify => "verify",
            Command::Valuation => "valuation",
            Command::Coeffs => "coeffs",
            Command::RelationSearch => "relation-search",
            Command::Verdict => "verdict",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExitStatus {
    /// claim holds, certificate emitted
    Ok = 0,
    /// check failed, with a witness
    Failed = 1,
    Inconclusive = 2,
    /// usage or input error
    Usage = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn from_code(c: i64) -> Option<Self> {
        Some(match c {
            0 => ExitStatus::Ok,
            1 => ExitStatus::Failed,
            2 => ExitStatus::Inconclusive,
            3 => ExitStatus::Usage,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct Flags {
    pub p: Vec<u64>,
    pub k: Option<u32>,
    pub v_max: Option<u64>,
    pub m_max: Option<u64>,
    pub order: Option<usize>,
    pub height: Option<usize>,
    pub dmax: Option<u32>,
    pub cache: Option<Cache>,
}

impl Flags {
    /// Flag values that change results, for the cache key.
    fn fingerprint(&self) -> String {
        format!(
            "p={:?};k={:?};v={:?};m={:?};o={:?};h={:?};d={:?}",
            self.p, self.k, self.v_max, self.m_max, self.order, self.height, self.dmax
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub status: ExitStatus,
    pub report: Value,
    /// One human-readable line.
    pub summary: String,
    pub cached: bool,
}

impl CommandOutput {
    fn new(status: ExitStatus, report: Value, summary: impl Into<String>) -> Self {
        CommandOutput { status, report, summary: summary.into(), cached: false }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        let m = message.into();
        CommandOutput::new(ExitStatus::Usage, json!({ "error": m }), format!("error: {m}"))
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

pub fn run_command(cmd: Command, doc: &ProblemDocument, flags: &Flags) -> CommandOutput {
    let cacheable = matches!(cmd, Command::Certify | Command::Verdict);
    let key = Cache::key(&[cmd.name(), &emit_problem(doc), &flags.fingerprint()]);
    if let (true, Some(cache)) = (cacheable, &flags.cache) {
        if let Some(hit) = cache.get(&key).and_then(|t| serde_json::from_str::<Value>(&t).ok()) {
            let status = hit["exit"].as_i64().and_then(ExitStatus::from_code);
            if let (Some(status), Some(summary)) = (status, hit["summary"].as_str()) {
                return CommandOutput { status, report: hit["report"].clone(), summary: summary.to_string(), cached: true };
            }
        }
    }
    let out = match cmd {
        Command::Translate => translate(doc),
        Command::Certify => certify(&doc.problem),
        Command::Verify => verify(doc, flags),
        Command::Valuation => valuation(doc, flags),
        Command::Coeffs => coeffs(doc, flags),
        Command::RelationSearch => relation_search(doc, flags),
        Command::Verdict => verdict(doc, flags),
    };
    if let (true, Some(cache)) = (cacheable, &flags.cache) {
        if out.status != ExitStatus::Usage {
            let env = json!({ "exit": out.status.code(), "summary": out.summary, "report": out.report });
            // the cache is advisory; a failed write only costs a recomputation
            let _ = cache.put(&key, &serde_json::to_string_pretty(&env).unwrap());
        }
    }
    out
}

fn translate(doc: &ProblemDocument) -> CommandOutput {
    let Problem::Factorial { system } = &doc.problem else {
        return CommandOutput::usage("translate needs a factorial document");
    };
    match factorial_to_hypergeometric(system) {
        Ok(t) => {
            let summary = format!(
                "alpha = ({}), beta = ({}), C = {}",
                join_rationals(&t.alpha),
                join_rationals(&t.beta),
                crate::rational::format_rational(&t.c)
            );
            CommandOutput::new(ExitStatus::Ok, to_value(&t), summary)
        }
        Err(e) => CommandOutput::usage(e.to_string()),
    }
}

fn join_rationals(xs: &[crate::Rational]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// Certificate for any certifiable problem, or the failing evidence.
pub enum CertifyResult {
    Certified { certificate: Certificate, extra: Value },
    Failed { report: Value, conclusive: bool },
    Error(String),
}

fn failure_report(e: &CertifierError) -> Option<Value> {
    Some(match e {
        CertifierError::CheckFailed { a, minimum, witness } => {
            json!({ "outcome": "check_failed", "residue": a, "minimum": minimum, "witness": witness })
        }
        CertifierError::BaseCaseFails { minimum, witness } => {
            json!({ "outcome": "check_failed", "residue": 1, "minimum": minimum, "witness": witness })
        }
        CertifierError::NotInN { a, minimum, witness } => {
            json!({ "outcome": "not_in_n", "residue": a, "minimum": minimum, "witness": witness })
        }
        _ => return None,
    })
}

fn certify_hyper(system: &HyperSystem, subgroup: &Option<Vec<u64>>) -> Result<(Certificate, Value), CertifierError> {
    match subgroup {
        Some(a) => Ok((certify_hypergeometric(system, &SubgroupSet::new(d_alpha_beta(system), a))?, json!({}))),
        None => {
            let search = maximal_subgroup(system)?;
            let cert = certify_hypergeometric(system, &search.subgroup)?;
            Ok((cert, json!({ "residue_minima": search.minima })))
        }
    }
}

pub fn certify_problem(problem: &Problem) -> CertifyResult {
    let wrap = |r: Result<(Certificate, Value), CertifierError>, conclusive: bool| match r {
        Ok((certificate, extra)) => CertifyResult::Certified { certificate, extra },
        Err(e) => match failure_report(&e) {
            Some(report) => CertifyResult::Failed { report, conclusive },
            None => CertifyResult::Error(e.to_string()),
        },
    };
    match problem {
        Problem::Hypergeometric { system, subgroup } => wrap(certify_hyper(system, subgroup), system.dim() == 1),
        Problem::Factorial { system } => match certify_factorial(system) {
            Ok(FactorialVerdict::Certified { certificate }) => CertifyResult::Certified { certificate, extra: json!({}) },
            Ok(FactorialVerdict::NoCertificate { failure }) => CertifyResult::Failed {
                conclusive: failure.conclusive,
                report: json!({ "outcome": "no_certificate", "failure": failure }),
            },
            Err(e) => CertifyResult::Error(e.to_string()),
        },
        Problem::Specialization { source, w, b, subgroup } => {
            let sys = source.hyper_system().expect("validated source");
            let a = SubgroupSet::new(d_alpha_beta(&sys), subgroup.as_deref().unwrap_or(&[1]));
            wrap(certify_specialization(&sys, &a, w, b).map(|c| (c, json!({}))), false)
        }
        Problem::Stream { .. } | Problem::Independence { .. } => {
            CertifyResult::Error("certify needs a hypergeometric, factorial or specialization document".into())
        }
    }
}

fn certify(problem: &Problem) -> CommandOutput {
    match certify_problem(problem) {
        CertifyResult::Certified { certificate, extra } => {
            let claim = certificate.claim();
            let mut report = json!({ "outcome": "certified", "claim": claim, "certificate": certificate });
            if let (Value::Object(m), Value::Object(x)) = (&mut report, extra) {
                m.extend(x);
            }
            CommandOutput::new(ExitStatus::Ok, report, format!("certified: {claim}"))
        }
        CertifyResult::Failed { report, conclusive } => {
            let status = if conclusive { ExitStatus::Failed } else { ExitStatus::Inconclusive };
            let summary = format!("no certificate ({})", if conclusive { "criterion fails" } else { "criterion is only sufficient here" });
            CommandOutput::new(status, report, summary)
        }
        CertifyResult::Error(m) => CommandOutput::usage(m),
    }
}

fn verify(doc: &ProblemDocument, flags: &Flags) -> CommandOutput {
    let req = doc.checks.verify.as_ref();
    let primes = if flags.p.is_empty() { req.map(|r| r.primes.clone()).unwrap_or_default() } else { flags.p.clone() };
    if primes.is_empty() {
        return CommandOutput::usage("verify needs --p or a `verify` block");
    }
    let k = flags.k.or(req.map(|r| r.k)).unwrap_or(1);
    let m_max = flags.m_max.or(req.map(|r| r.m_max)).unwrap_or(20);
    let v_max = flags.v_max.or(req.and_then(|r| r.v_max));
    let stream = match doc.problem.stream() {
        Ok(s) => s,
        Err(e) => return CommandOutput::usage(e.to_string()),
    };
    let bounds = LucasBox { v: VSelection::Full { v_max }, m_max };
    let mut reports = Vec::new();
    for p in primes {
        match verify_pk_lucas(&stream, p, k, &bounds) {
            Ok(r) => reports.push(r),
            Err(e) => return CommandOutput::usage(e.to_string()),
        }
    }
    let failed: Vec<&crate::lucasverify::LucasReport> = reports.iter().filter(|r| r.verdict != LucasVerdict::Pass).collect();
    let status = if failed.is_empty() { ExitStatus::Ok } else { ExitStatus::Failed };
    let summary = if failed.is_empty() {
        format!("pass: p^{k}-Lucas congruences hold on the box for {} prime(s)", reports.len())
    } else {
        let r = failed[0];
        match r.verdict {
            LucasVerdict::NotPIntegral => {
                format!("fail at p = {}: not p-integral at n = {:?}", r.p, r.integrality_failures.first().unwrap_or(&vec![]))
            }
            _ => format!("fail at p = {}: {} violation(s), first {:?}", r.p, r.violation_count, r.violations.first()),
        }
    };
    CommandOutput::new(status, json!({ "reports": reports }), summary)
}

fn valuation(doc: &ProblemDocument, flags: &Flags) -> CommandOutput {
    let Some(sys) = doc.problem.hyper_system() else {
        return CommandOutput::usage("valuation needs a hypergeometric, factorial or specialization document");
    };
    if doc.checks.queries.is_empty() {
        return CommandOutput::usage("valuation needs a `queries` list");
    }
    let mut rows = Vec::new();
    for q in &doc.checks.queries {
        let primes = if flags.p.is_empty() { vec![q.p] } else { flags.p.clone() };
        if q.n.len() != sys.dim() {
            return CommandOutput::usage(format!("query index {:?} has the wrong length", q.n));
        }
        for p in primes {
            match vp_quv(&sys, &q.n, p) {
                Ok(v) => rows.push(json!({ "p": p, "n": q.n, "valuation": v })),
                Err(e) => return CommandOutput::usage(e.to_string()),
            }
        }
    }
    let summary = format!("{} valuation(s)", rows.len());
    CommandOutput::new(ExitStatus::Ok, json!({ "valuations": rows }), summary)
}

fn coeffs(doc: &ProblemDocument, flags: &Flags) -> CommandOutput {
    let n = flags.order.unwrap_or(20);
    let stream = match doc.problem.stream() {
        Ok(s) => s,
        Err(e) => return CommandOutput::usage(e.to_string()),
    };
    match stream.prefix(n) {
        Ok(c) => {
            let shown: Vec<String> = c.iter().take(8).map(|x| x.to_string()).collect();
            let summary = format!("{}{}", shown.join(", "), if c.len() > 8 { ", ..." } else { "" });
            CommandOutput::new(ExitStatus::Ok, json!({ "order": n, "coefficients": prefix_json(&c) }), summary)
        }
        Err(e) => CommandOutput::usage(e.to_string()),
    }
}

fn search_params(doc: &ProblemDocument, flags: &Flags) -> SearchParams {
    let base = doc.checks.search.unwrap_or_default();
    SearchParams {
        dmax: flags.dmax.unwrap_or(base.dmax),
        height: flags.height.unwrap_or(base.height),
        order: flags.order.unwrap_or(base.order),
    }
}

fn relation_search(doc: &ProblemDocument, flags: &Flags) -> CommandOutput {
    let params = search_params(doc, flags);
    let problems: Vec<&Problem> = match &doc.problem {
        Problem::Independence { entries } => entries.iter().map(|(_, p)| p).collect(),
        p => vec![p],
    };
    let mut streams = Vec::new();
    for p in problems {
        match p.stream() {
            Ok(s) => streams.push(s),
            Err(e) => return CommandOutput::usage(e.to_string()),
        }
    }
    match find_monomial_relation(&streams, params.dmax, params.height, params.order) {
        Ok(Some(rel)) => {
            let summary = format!("relation with exponents {:?}, fraction of height {}", rel.exponents, rel.fraction.height());
            CommandOutput::new(ExitStatus::Ok, json!({ "outcome": "relation", "search": params, "relation": rel }), summary)
        }
        Ok(None) => CommandOutput::new(
            ExitStatus::Inconclusive,
            json!({ "outcome": "none", "search": params }),
            format!("no relation with dmax = {}, H = {}, N = {}", params.dmax, params.height, params.order),
        ),
        Err(e) => CommandOutput::usage(e.to_string()),
    }
}

/// Certificate, profile and stream for one verdict entry.
pub fn verdict_entry(id: &str, problem: &Problem) -> Result<VerdictEntry, String> {
    let stream = problem.stream().map_err(|e| e.to_string())?;
    let certificate = match certify_problem(problem) {
        CertifyResult::Certified { certificate, .. } => Some(certificate),
        _ => None,
    };
    let (profile, factorial) = match problem {
        Problem::Factorial { system } if system.dim() == 1 => {
            (asymptotic_profile(ProfileSubject::Factorial(system)).ok(), Some(system.clone()))
        }
        Problem::Hypergeometric { system, .. } => (asymptotic_profile(ProfileSubject::Hypergeometric(system)).ok(), None),
        _ => (None, None),
    };
    Ok(VerdictEntry { id: id.to_string(), certificate, profile, factorial, stream })
}

fn verdict(doc: &ProblemDocument, flags: &Flags) -> CommandOutput {
    let Problem::Independence { entries } = &doc.problem else {
        return CommandOutput::usage("verdict needs an independence document");
    };
    let mut ves = Vec::new();
    for (id, p) in entries {
        match verdict_entry(id, p) {
            Ok(e) => ves.push(e),
            Err(m) => return CommandOutput::usage(m),
        }
    }
    match independence_verdict(&ves, search_params(doc, flags)) {
        Ok(v) => {
            let (status, summary) = match &v.outcome {
                Outcome::Independent { rule, via } => (
                    ExitStatus::Ok,
                    match via {
                        Some(r) => format!("independent by {rule:?} (via {r:?})"),
                        None => format!("independent by {rule:?}"),
                    },
                ),
                Outcome::Dependent { relation } => {
                    (ExitStatus::Ok, format!("dependent: monomial relation with exponents {:?}", relation.exponents))
                }
                Outcome::Inconclusive { .. } => (ExitStatus::Inconclusive, "inconclusive: search exhausted".to_string()),
            };
            CommandOutput::new(status, to_value(&v), summary)
        }
        // a missing certificate or an empty prime family violates the verdict's precondition
        Err(e) => CommandOutput::usage(e.to_string()),
    }
}
