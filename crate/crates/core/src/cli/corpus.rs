//! Vendored example corpus and its expectation checks.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::document::{from_json_text, DocumentError, ProblemDocument, RawDocument};
use super::run::{certify_problem, CertifyResult};
use crate::hyperdata::factorial_to_hypergeometric;
use crate::rational::parse_rational;

const FILES: [(&str, &str); 4] = [
    ("factorial.json", include_str!("../../corpus/factorial.json")),
    ("hypergeometric.json", include_str!("../../corpus/hypergeometric.json")),
    ("bivariate.json", include_str!("../../corpus/bivariate.json")),
    ("aesz.json", include_str!("../../corpus/aesz.json")),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedTranslation {
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
}

/// What running an entry must produce. Absent fields are not checked.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primes: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oeis: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translation: Option<ExpectedTranslation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCorpusEntry {
    pub id: String,
    /// Where the expected values come from: `oeis`, `binomial-sum`, `direct-sum`, `breakpoint-scan`.
    pub basis: String,
    pub document: RawDocument,
    pub expect: Expectation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEntry {
    pub id: String,
    pub basis: String,
    pub raw: RawDocument,
    pub document: ProblemDocument,
    pub expect: Expectation,
}

fn load() -> Result<Vec<CorpusEntry>, DocumentError> {
    let mut out = Vec::new();
    for (name, text) in FILES {
        let raws: Vec<RawCorpusEntry> = from_json_text(text).map_err(|e| match e {
            DocumentError::Schema { pointer, message } => {
                DocumentError::Schema { pointer: format!("{name}#{pointer}"), message }
            }
            other => other,
        })?;
        for r in raws {
            let document = ProblemDocument::from_raw(&r.document)?;
            out.push(CorpusEntry { id: r.id, basis: r.basis, raw: r.document, document, expect: r.expect });
        }
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}

/// All entries, sorted by id. Panics if the vendored files are malformed, which the test suite rules out.
pub fn corpus() -> &'static [CorpusEntry] {
    static C: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    C.get_or_init(|| load().expect("vendored corpus is valid"))
}

pub fn entry(id: &str) -> Option<&'static CorpusEntry> {
    corpus().iter().find(|e| e.id == id)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryOutcome {
    pub id: String,
    pub ok: bool,
    pub checks: Vec<CheckOutcome>,
}

fn check(name: &str, ok: bool, detail: String) -> CheckOutcome {
    CheckOutcome { check: name.to_string(), ok, detail }
}

pub fn run_entry(e: &CorpusEntry) -> EntryOutcome {
    let mut checks = Vec::new();
    let x = &e.expect;
    if let Some(want) = x.certified {
        match certify_problem(&e.document.problem) {
            CertifyResult::Certified { certificate, .. } => {
                checks.push(check("certified", want, certificate.claim()));
                if let Some(p) = &x.primes {
                    let got = certificate.primes.describe();
                    checks.push(check("primes", &got == p, got));
                }
                if let Some(k) = x.k {
                    checks.push(check("k", certificate.claim_k == k, certificate.claim_k.to_string()));
                }
                if let Some(a) = &x.subgroup {
                    let got = &certificate.subgroup.elements;
                    checks.push(check("subgroup", got == a, format!("{got:?}")));
                }
            }
            CertifyResult::Failed { report, .. } => checks.push(check("certified", !want, report.to_string())),
            CertifyResult::Error(m) => checks.push(check("certified", false, m)),
        }
    }
    if let Some(cs) = &x.coefficients {
        let detail;
        let ok = match e.document.problem.stream().map(|s| s.prefix(cs.len())) {
            Ok(Ok(got)) => {
                let want: Result<Vec<_>, _> = cs.iter().map(|c| parse_rational(c)).collect();
                detail = format!("{} coefficients", cs.len());
                want.is_ok_and(|w| w == got)
            }
            Ok(Err(err)) | Err(err) => {
                detail = err.to_string();
                false
            }
        };
        checks.push(check("coefficients", ok, detail));
    }
    if let Some(t) = &x.translation {
        let ok = match &e.document.problem {
            super::document::Problem::Factorial { system } => factorial_to_hypergeometric(system).is_ok_and(|got| {
                let parse = |v: &[String]| v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>();
                parse(&t.alpha).is_ok_and(|a| a == got.alpha) && parse(&t.beta).is_ok_and(|b| b == got.beta)
            }),
            _ => false,
        };
        checks.push(check("translation", ok, String::new()));
    }
    EntryOutcome { id: e.id.clone(), ok: checks.iter().all(|c| c.ok), checks }
}

/// Runs the selected entries (all when `ids` is empty) concurrently; results are ordered by id.
pub fn run_corpus(ids: &[String]) -> Result<Vec<EntryOutcome>, String> {
    let selected: Vec<&CorpusEntry> = if ids.is_empty() {
        corpus().iter().collect()
    } else {
        ids.iter().map(|id| entry(id).ok_or_else(|| format!("unknown corpus entry {id:?}"))).collect::<Result<_, _>>()?
    };
    let mut out: Vec<EntryOutcome> = selected.par_iter().map(|e| run_entry(e)).collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}
