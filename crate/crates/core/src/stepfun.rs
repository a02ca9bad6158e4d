//! Step functions built from floors, the Dwork map and the regions they are minimised on.
//!
//! - `xi_a(x) = sum floor(e_i.x - <a alpha_i>) - sum floor(f_j.x - <a beta_j>) + r - s`
//! - Landau's `Delta(x) = sum floor(e_i.x) - sum floor(f_j.x)`, which is `xi_1` of the
//!   all-ones embedding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::hyperdata::{rational_dot, FactorialRatioSystem, HyperSystem};
use crate::rational::{floor_i64, int, mod_inverse, pow_mod, serde_rational, Rational};

pub use crate::rational::angle;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StepFunError {
    #[error("{p} divides the denominator of {value}")]
    PDividesDenominator { p: u64, value: String },
    #[error("{p} is not coprime to {m}")]
    NotCoprime { p: u64, m: u64 },
    #[error("residue {a} is not a unit modulo {modulus}")]
    NotCoprimeResidue { a: u64, modulus: u64 },
    #[error("point has {found} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// `D_p(alpha)`: the unique `(alpha + k)/p` in `Z_(p)` with `k` in `{0..p-1}`.
pub fn dwork_map(p: u64, alpha: &Rational) -> Result<Rational, StepFunError> {
    let pb = BigInt::from(p);
    let den = alpha.denom().mod_floor(&pb).to_u64().unwrap();
    let inv = mod_inverse(den, p).ok_or_else(|| StepFunError::PDividesDenominator {
        p,
        value: crate::rational::format_rational(alpha),
    })?;
    let num = alpha.numer().mod_floor(&pb).to_u64().unwrap();
    // k = -num * den^{-1} mod p
    let k = (p - (num as u128 * inv as u128 % p as u128) as u64) % p;
    Ok((alpha + int(k as i64)) / int(p as i64))
}

pub fn dwork_iter(p: u64, l: u32, alpha: &Rational) -> Result<Rational, StepFunError> {
    let mut x = alpha.clone();
    for _ in 0..l {
        x = dwork_map(p, &x)?;
    }
    Ok(x)
}

/// `iota` in `{1..m}` with `iota * p^l = 1 mod m`.
pub fn iota(p: u64, l: u32, m: u64) -> Result<u64, StepFunError> {
    if m == 1 {
        return Ok(1);
    }
    let pl = pow_mod(p, l as u64, m);
    let inv = mod_inverse(pl, m).ok_or(StepFunError::NotCoprime { p, m })?;
    Ok(if inv == 0 { m } else { inv })
}

/// `coef * floor(weights.x - offset)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepTerm {
    pub weights: Vec<i64>,
    #[serde(with = "serde_rational")]
    pub offset: Rational,
    pub coef: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepFunctionSpec {
    pub dim: usize,
    pub terms: Vec<StepTerm>,
    pub constant: i64,
}

impl StepFunctionSpec {
    pub fn eval(&self, x: &[Rational]) -> i64 {
        debug_assert_eq!(x.len(), self.dim);
        self.terms
            .iter()
            .map(|t| t.coef * floor_i64(&(rational_dot(&t.weights, x) - &t.offset)))
            .sum::<i64>()
            + self.constant
    }

    /// `xi_a` for the system; `a` is taken modulo `d_ab`.
    pub fn xi(sys: &HyperSystem, a: u64) -> Result<Self, StepFunError> {
        let a = canonical_residue(sys, a)?;
        let ar = int(a as i64);
        let term = |p: &crate::hyperdata::ParamPair, coef| StepTerm {
            weights: p.exps.iter().map(|&e| e as i64).collect(),
            offset: angle(&(&ar * &p.param)),
            coef,
        };
        let mut terms: Vec<StepTerm> = sys.u().iter().map(|p| term(p, 1)).collect();
        terms.extend(sys.v().iter().map(|p| term(p, -1)));
        Ok(StepFunctionSpec {
            dim: sys.dim(),
            terms,
            constant: sys.u().len() as i64 - sys.v().len() as i64,
        })
    }

    pub fn landau(sys: &FactorialRatioSystem) -> Self {
        StepFunctionSpec::xi(&sys.to_hyper(), 1).expect("1 is always a unit")
    }
}

/// Residue representative in `{1..d_ab}`, checked to be a unit.
pub fn canonical_residue(sys: &HyperSystem, a: u64) -> Result<u64, StepFunError> {
    let d = sys.d_alpha_beta();
    let r = a % d;
    let r = if r == 0 { d } else { r };
    if r.gcd(&d) != 1 {
        return Err(StepFunError::NotCoprimeResidue { a, modulus: d });
    }
    Ok(r)
}

pub fn xi_eval(sys: &HyperSystem, a: u64, x: &[Rational]) -> Result<i64, StepFunError> {
    check_dim(sys.dim(), x)?;
    Ok(StepFunctionSpec::xi(sys, a)?.eval(x))
}

pub fn landau_eval(sys: &FactorialRatioSystem, x: &[Rational]) -> Result<i64, StepFunError> {
    check_dim(sys.dim(), x)?;
    let dot = |v: &Vec<u32>| {
        let w: Vec<i64> = v.iter().map(|&e| e as i64).collect();
        floor_i64(&rational_dot(&w, x))
    };
    Ok(sys.e().iter().map(dot).sum::<i64>() - sys.f().iter().map(dot).sum::<i64>())
}

fn check_dim(expected: usize, x: &[Rational]) -> Result<(), StepFunError> {
    if x.len() != expected {
        return Err(StepFunError::DimensionMismatch { expected, found: x.len() });
    }
    Ok(())
}

/// `weights.x >= bound`, or `>` when `strict`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalfSpace {
    pub weights: Vec<i64>,
    #[serde(with = "serde_rational")]
    pub bound: Rational,
    pub strict: bool,
}

impl HalfSpace {
    pub fn at_least(weights: Vec<i64>, bound: Rational) -> Self {
        HalfSpace { weights, bound, strict: false }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        let v = rational_dot(&self.weights, x);
        if self.strict {
            v > self.bound
        } else {
            v >= self.bound
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionMode {
    /// Intersection of the half-spaces.
    All,
    /// Union of the half-spaces.
    Any,
}

/// A subset of the half-open unit box `[0,1)^dim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionSpec {
    pub dim: usize,
    pub mode: RegionMode,
    pub constraints: Vec<HalfSpace>,
}

impl RegionSpec {
    pub fn whole(dim: usize) -> Self {
        RegionSpec { dim, mode: RegionMode::All, constraints: vec![] }
    }

    /// `D^a`: some `e.x >= <a gamma>` over all pairs of the system.
    pub fn d_region(sys: &HyperSystem, a: u64) -> Result<Self, StepFunError> {
        let a = canonical_residue(sys, a)?;
        let mut constraints: Vec<HalfSpace> = Vec::new();
        for p in sys.pairs() {
            let h = HalfSpace::at_least(
                p.exps.iter().map(|&e| e as i64).collect(),
                angle(&(int(a as i64) * &p.param)),
            );
            if !constraints.contains(&h) {
                constraints.push(h);
            }
        }
        Ok(RegionSpec { dim: sys.dim(), mode: RegionMode::Any, constraints })
    }

    /// `{x : w.x >= 1}`.
    pub fn specialization(w: &[u64]) -> Self {
        RegionSpec {
            dim: w.len(),
            mode: RegionMode::All,
            constraints: vec![HalfSpace::at_least(w.iter().map(|&x| x as i64).collect(), int(1))],
        }
    }

    pub fn at_least(dim: usize, weights: Vec<i64>, bound: Rational) -> Self {
        RegionSpec { dim, mode: RegionMode::All, constraints: vec![HalfSpace::at_least(weights, bound)] }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        if x.len() != self.dim || x.iter().any(|xi| xi < &Rational::zero() || xi >= &int(1)) {
            return false;
        }
        match self.mode {
            RegionMode::All => self.constraints.iter().all(|h| h.contains(x)),
            RegionMode::Any => self.constraints.iter().any(|h| h.contains(x)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn dwork_examples() {
        assert_eq!(dwork_map(5, &rat(1, 3)).unwrap(), rat(2, 3));
        assert_eq!(dwork_map(7, &int(1)).unwrap(), int(1));
        assert!(matches!(dwork_map(7, &rat(2, 7)), Err(StepFunError::PDividesDenominator { .. })));
    }

    #[test]
    fn iota_examples() {
        assert_eq!(iota(41, 1, 35).unwrap(), 6);
        assert_eq!(iota(7, 3, 1).unwrap(), 1);
        assert_eq!(iota(5, 1, 6).unwrap(), 5);
        assert!(iota(5, 1, 10).is_err());
    }
}
