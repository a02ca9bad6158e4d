//! Certificates for Lucas-type congruences.
//!
//! A certificate records a subgroup `A` of `(Z/d_ab)^x`, the minima of `xi_a` over the
//! relevant regions for every `a` in `A`, and the resulting prime family.

use std::collections::BTreeSet;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

pub use crate::engine::{min_step_on_region, EngineError, EngineStats, StepMinimum};
use crate::hyperdata::{FactorialRatioSystem, HyperDataError, HyperSystem};
use crate::rational::{is_prime, lcm_u64, serde_rational_vec, Rational};
use crate::stepfun::{RegionSpec, StepFunError, StepFunctionSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertifierError {
    #[error(transparent)]
    Data(#[from] HyperDataError),
    #[error(transparent)]
    StepFunction(#[from] StepFunError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("{elements:?} is not a subgroup of the units modulo {modulus}")]
    NotSubgroup { modulus: u64, elements: Vec<u64> },
    #[error("xi_{a} reaches {minimum} on D^{a} at {witness:?}")]
    CheckFailed { a: u64, minimum: i64, witness: Vec<String> },
    #[error("xi_1 reaches {minimum} on D^1 at {witness:?}")]
    BaseCaseFails { minimum: i64, witness: Vec<String> },
    #[error("xi_{a} reaches {minimum} on w.x >= 1 at {witness:?}")]
    NotInN { a: u64, minimum: i64, witness: Vec<String> },
    #[error("specialization has {found} entries, system has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

fn fmt_point(x: &[Rational]) -> Vec<String> {
    x.iter().map(crate::rational::format_rational).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupSet {
    pub modulus: u64,
    pub elements: Vec<u64>,
}

impl SubgroupSet {
    pub fn new(modulus: u64, elements: &[u64]) -> Self {
        let set: BTreeSet<u64> = elements.iter().map(|&a| canonical(a, modulus)).collect();
        SubgroupSet { modulus, elements: set.into_iter().collect() }
    }

    pub fn trivial(modulus: u64) -> Self {
        SubgroupSet::new(modulus, &[1])
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_subgroup(&self) -> bool {
        let m = self.modulus;
        !self.elements.is_empty()
            && self.elements.iter().all(|a| a.gcd(&m) == 1)
            && self.elements.contains(&canonical(1, m))
            && self
                .elements
                .iter()
                .all(|&a| self.elements.iter().all(|&b| self.elements.contains(&canonical(a * b, m))))
    }
}

/// Representative in `{1..m}`.
fn canonical(a: u64, m: u64) -> u64 {
    let r = a % m;
    if r == 0 {
        m
    } else {
        r
    }
}

/// Primes `p` with `p = r mod modulus` for some listed `r`, `p > lower_bound`, `p` not excluded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeSpec {
    pub modulus: u64,
    pub residues: Vec<u64>,
    pub lower_bound: u64,
    pub excluded: Vec<u64>,
}

impl PrimeSpec {
    pub fn all_primes() -> Self {
        PrimeSpec { modulus: 1, residues: vec![1], lower_bound: 1, excluded: vec![] }
    }

    pub fn contains(&self, p: u64) -> bool {
        is_prime(p)
            && p > self.lower_bound
            && !self.excluded.contains(&p)
            && self.residues.iter().any(|&r| p % self.modulus == r % self.modulus)
    }

    /// Family of primes lying in both; residues combine on the lcm of the moduli.
    pub fn intersect(&self, other: &PrimeSpec) -> PrimeSpec {
        let l = lcm_u64(self.modulus, other.modulus);
        let hits = |spec: &PrimeSpec, r: u64| spec.residues.iter().any(|&s| r % spec.modulus == s % spec.modulus);
        let residues = (1..=l).filter(|&r| r.gcd(&l) == 1 && hits(self, r) && hits(other, r)).collect();
        let mut excluded: Vec<u64> = self.excluded.iter().chain(&other.excluded).copied().collect();
        excluded.sort();
        excluded.dedup();
        PrimeSpec { modulus: l, residues, lower_bound: self.lower_bound.max(other.lower_bound), excluded }
    }

    /// Some residue class coprime to the modulus survives, so by Dirichlet the family is infinite.
    pub fn is_infinite(&self) -> bool {
        self.residues.iter().any(|r| r.gcd(&self.modulus) == 1)
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if self.modulus > 1 {
            let rs: Vec<String> = self.residues.iter().map(|r| r.to_string()).collect();
            parts.push(format!("p = {} mod {}", rs.join(" or "), self.modulus));
        }
        if self.lower_bound > 1 {
            parts.push(format!("p > {}", self.lower_bound));
        }
        if !self.excluded.is_empty() {
            let xs: Vec<String> = self.excluded.iter().map(|r| r.to_string()).collect();
            parts.push(format!("p not in {{{}}}", xs.join(", ")));
        }
        if parts.is_empty() {
            "all primes".into()
        } else {
            parts.join(", ")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueEvidence {
    pub a: u64,
    pub region: String,
    pub minimum: i64,
    #[serde(with = "serde_rational_vec")]
    pub witness: Vec<Rational>,
}

impl ResidueEvidence {
    fn new(a: u64, region: String, m: &StepMinimum) -> Self {
        ResidueEvidence { a, region, minimum: m.value, witness: m.witness.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Subject {
    Hypergeometric { system: HyperSystem },
    Factorial { system: FactorialRatioSystem },
    Specialization {
        system: HyperSystem,
        w: Vec<u64>,
        #[serde(with = "serde_rational_vec")]
        b: Vec<Rational>,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Audit {
    pub engine: String,
    pub nodes: u64,
    pub lp_calls: u64,
    pub vertices: u64,
}

impl Audit {
    fn add(&mut self, s: &EngineStats) {
        if self.engine.is_empty() {
            self.engine = "floor-assignment branch and bound, exact LP".into();
        }
        self.nodes += s.nodes;
        self.lp_calls += s.lp_calls;
        self.vertices += s.vertices;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub subject: Subject,
    pub claim_k: u32,
    pub primes: PrimeSpec,
    pub subgroup: SubgroupSet,
    pub evidence: Vec<ResidueEvidence>,
    pub audit: Audit,
}

impl Certificate {
    /// The statement certified: `p^k`-Lucas for every prime in the family.
    pub fn claim(&self) -> String {
        let k = if self.claim_k == 1 { "p".to_string() } else { format!("p^{}", self.claim_k) };
        format!("{k}-Lucas property for {}", self.primes.describe())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupSearch {
    pub subgroup: SubgroupSet,
    /// Minimum of `xi_a` over `D^a` for every unit `a`.
    pub minima: Vec<ResidueEvidence>,
}

fn residue_minimum(sys: &HyperSystem, a: u64) -> Result<StepMinimum, CertifierError> {
    let f = StepFunctionSpec::xi(sys, a)?;
    let region = RegionSpec::d_region(sys, a)?;
    Ok(min_step_on_region(&f, &region)?)
}

fn closure(gens: &BTreeSet<u64>, m: u64) -> BTreeSet<u64> {
    let mut set: BTreeSet<u64> = BTreeSet::from([canonical(1, m)]);
    loop {
        let next: BTreeSet<u64> = set
            .iter()
            .flat_map(|&a| gens.iter().map(move |&g| canonical(a * g, m)))
            .chain(set.iter().copied())
            .collect();
        if next.len() == set.len() {
            return set;
        }
        set = next;
    }
}

pub fn maximal_subgroup(sys: &HyperSystem) -> Result<SubgroupSearch, CertifierError> {
    sys.require_balanced()?;
    let d = sys.d_alpha_beta();
    let units: Vec<u64> = (1..=d).filter(|a| a.gcd(&d) == 1).collect();
    let results: Vec<Result<StepMinimum, CertifierError>> =
        units.par_iter().map(|&a| residue_minimum(sys, a)).collect();
    let mut minima = Vec::with_capacity(units.len());
    for (&a, r) in units.iter().zip(results) {
        minima.push(ResidueEvidence::new(a, format!("D^{a}"), &r?));
    }
    let good: BTreeSet<u64> = minima.iter().filter(|e| e.minimum >= 1).map(|e| e.a).collect();
    let one = canonical(1, d);
    if !good.contains(&one) {
        let e = minima.iter().find(|e| e.a == one).unwrap();
        return Err(CertifierError::BaseCaseFails { minimum: e.minimum, witness: fmt_point(&e.witness) });
    }
    // every subgroup inside `good` is reachable by adding one generator at a time
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut frontier = vec![BTreeSet::from([one])];
    let mut best: Vec<u64> = vec![one];
    while let Some(h) = frontier.pop() {
        for &g in good.iter().filter(|g| !h.contains(g)) {
            let mut gens = h.clone();
            gens.insert(g);
            let c = closure(&gens, d);
            if !c.is_subset(&good) {
                continue;
            }
            let key: Vec<u64> = c.iter().copied().collect();
            if seen.insert(key.clone()) {
                if key.len() > best.len() || (key.len() == best.len() && key < best) {
                    best = key;
                }
                frontier.push(c);
            }
        }
    }
    Ok(SubgroupSearch { subgroup: SubgroupSet { modulus: d, elements: best }, minima })
}

fn check_subgroup(sys: &HyperSystem, a: &SubgroupSet) -> Result<(), CertifierError> {
    let d = sys.d_alpha_beta();
    let set = SubgroupSet::new(d, &a.elements);
    if !a.modulus.is_multiple_of(d) && !d.is_multiple_of(a.modulus) || !set.is_subgroup() {
        return Err(CertifierError::NotSubgroup { modulus: d, elements: a.elements.clone() });
    }
    Ok(())
}

pub fn certify_hypergeometric(sys: &HyperSystem, a_set: &SubgroupSet) -> Result<Certificate, CertifierError> {
    sys.require_balanced()?;
    check_subgroup(sys, a_set)?;
    let d = sys.d_alpha_beta();
    let subgroup = SubgroupSet::new(d, &a_set.elements);
    let mut audit = Audit::default();
    let mut evidence = Vec::new();
    for &a in &subgroup.elements {
        let m = residue_minimum(sys, a)?;
        audit.add(&m.stats);
        if m.value < 1 {
            return Err(CertifierError::CheckFailed { a, minimum: m.value, witness: fmt_point(&m.witness) });
        }
        evidence.push(ResidueEvidence::new(a, format!("D^{a}"), &m));
    }
    Ok(Certificate {
        subject: Subject::Hypergeometric { system: sys.clone() },
        claim_k: subgroup.order() as u32,
        primes: PrimeSpec { modulus: d, residues: subgroup.elements.clone(), lower_bound: d, excluded: vec![] },
        subgroup,
        evidence,
        audit,
    })
}

/// Primes dividing some denominator of `b`.
fn denominator_primes(b: &[Rational]) -> Vec<u64> {
    let mut out = BTreeSet::new();
    for r in b {
        let mut n = crate::rational::denom_u64(r);
        let mut q = 2;
        while n > 1 {
            if n.is_multiple_of(q) {
                out.insert(q);
                n /= q;
            } else {
                q += 1;
            }
        }
    }
    out.into_iter().collect()
}

pub fn certify_specialization(
    sys: &HyperSystem,
    a_set: &SubgroupSet,
    w: &[u64],
    b: &[Rational],
) -> Result<Certificate, CertifierError> {
    for len in [w.len(), b.len()] {
        if len != sys.dim() {
            return Err(CertifierError::DimensionMismatch { expected: sys.dim(), found: len });
        }
    }
    let mut cert = certify_hypergeometric(sys, a_set)?;
    let region = RegionSpec::specialization(w);
    for &a in &cert.subgroup.elements.clone() {
        let f = StepFunctionSpec::xi(sys, a)?;
        let m = min_step_on_region(&f, &region)?;
        cert.audit.add(&m.stats);
        if m.value < 1 {
            return Err(CertifierError::NotInN { a, minimum: m.value, witness: fmt_point(&m.witness) });
        }
        cert.evidence.push(ResidueEvidence::new(a, "w.x >= 1".into(), &m));
    }
    cert.primes.excluded = denominator_primes(b);
    cert.subject = Subject::Specialization { system: sys.clone(), w: w.to_vec(), b: b.to_vec() };
    Ok(cert)
}

/// Why a factorial system got no certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorialFailure {
    pub minimum: i64,
    #[serde(with = "serde_rational_vec")]
    pub witness: Vec<Rational>,
    pub landau_integral: bool,
    pub landau_minimum: i64,
    #[serde(with = "serde_rational_vec")]
    pub landau_witness: Vec<Rational>,
    /// Univariate systems: failing the criterion disproves the Lucas property for some prime.
    /// Several variables: the criterion is only sufficient, so the outcome is inconclusive.
    pub conclusive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FactorialVerdict {
    Certified { certificate: Certificate },
    NoCertificate { failure: FactorialFailure },
}

impl FactorialVerdict {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            FactorialVerdict::Certified { certificate } => Some(certificate),
            FactorialVerdict::NoCertificate { .. } => None,
        }
    }
}

pub fn certify_factorial(sys: &FactorialRatioSystem) -> Result<FactorialVerdict, CertifierError> {
    let hyper = sys.to_hyper();
    hyper.require_balanced()?;
    let delta = StepFunctionSpec::landau(sys);
    let region = if sys.dim() == 1 {
        RegionSpec::at_least(1, vec![1], sys.m_ef()?)
    } else {
        RegionSpec::d_region(&hyper, 1)?
    };
    let m = min_step_on_region(&delta, &region)?;
    let mut audit = Audit::default();
    audit.add(&m.stats);
    if m.value >= 1 {
        return Ok(FactorialVerdict::Certified {
            certificate: Certificate {
                subject: Subject::Factorial { system: sys.clone() },
                claim_k: 1,
                primes: PrimeSpec::all_primes(),
                subgroup: SubgroupSet::trivial(1),
                evidence: vec![ResidueEvidence::new(1, if sys.dim() == 1 { "[m_ef, 1)".into() } else { "D^1".into() }, &m)],
                audit,
            },
        });
    }
    // by periodicity the closed box adds nothing for balanced systems
    let whole = min_step_on_region(&delta, &RegionSpec::whole(sys.dim()))?;
    Ok(FactorialVerdict::NoCertificate {
        failure: FactorialFailure {
            minimum: m.value,
            witness: m.witness,
            landau_integral: whole.value >= 0,
            landau_minimum: whole.value,
            landau_witness: whole.witness,
            conclusive: sys.dim() == 1,
        },
    })
}
