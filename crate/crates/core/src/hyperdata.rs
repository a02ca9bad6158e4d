//! Parameter systems: hypergeometric pairs `(alpha, e)` and factorial-ratio vectors.
//!
//! - [`HyperSystem`] holds validated `u` (numerator) and `v` (denominator) pairs.
//! - [`FactorialRatioSystem`] holds the exponent vectors of `prod (e_i.n)! / prod (f_j.n)!`.
//! - [`factorial_to_hypergeometric`] rewrites a univariate factorial ratio as `C^n` times
//!   a ratio of Pochhammer symbols.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::rational::{denom_u64, int, lcm_u64, rat, serde_rational, serde_rational_vec, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HyperDataError {
    #[error("parameter {value} at {side}[{index}] is outside (0, 1]")]
    ParamOutOfRange { side: Side, index: usize, value: String },
    #[error("vector at {side}[{index}] has length {found}, expected {expected}")]
    DimensionMismatch { side: Side, index: usize, expected: usize, found: usize },
    #[error("vector at {side}[{index}] is zero")]
    ZeroExponentVector { side: Side, index: usize },
    #[error("vector {vector:?} occurs on both sides")]
    NotDisjoint { vector: Vec<u32> },
    #[error("side {0} is empty")]
    EmptySide(Side),
    #[error("system has dimension {0}, expected 1")]
    NotUnivariate(usize),
    #[error("exponent sums differ: {left:?} vs {right:?}")]
    NotBalanced { left: Vec<u64>, right: Vec<u64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    U,
    V,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::U => "u",
            Side::V => "v",
        })
    }
}

/// One factor `(gamma)_{e.n}` of a hypergeometric term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ParamPair {
    #[serde(with = "serde_rational")]
    pub param: Rational,
    pub exps: Vec<u32>,
}

impl ParamPair {
    pub fn new(param: Rational, exps: Vec<u32>) -> Self {
        ParamPair { param, exps }
    }

    pub fn dot(&self, x: &[Rational]) -> Rational {
        self.exps
            .iter()
            .zip(x)
            .fold(Rational::zero(), |acc, (&e, xi)| acc + xi * Rational::from_integer(e.into()))
    }

    pub fn weight(&self, n: &[u64]) -> u64 {
        self.exps.iter().zip(n).map(|(&e, &k)| e as u64 * k).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HyperSystem {
    dim: usize,
    u: Vec<ParamPair>,
    v: Vec<ParamPair>,
}

fn check_vector(side: Side, index: usize, exps: &[u32], dim: usize) -> Result<(), HyperDataError> {
    if exps.len() != dim {
        return Err(HyperDataError::DimensionMismatch {
            side,
            index,
            expected: dim,
            found: exps.len(),
        });
    }
    if exps.iter().all(|&e| e == 0) {
        return Err(HyperDataError::ZeroExponentVector { side, index });
    }
    Ok(())
}

pub fn validate_hyper_system(
    u: Vec<ParamPair>,
    v: Vec<ParamPair>,
    dim: usize,
) -> Result<HyperSystem, HyperDataError> {
    for (side, list) in [(Side::U, &u), (Side::V, &v)] {
        for (index, pair) in list.iter().enumerate() {
            if !pair.param.is_positive() || pair.param > Rational::one() {
                return Err(HyperDataError::ParamOutOfRange {
                    side,
                    index,
                    value: crate::rational::format_rational(&pair.param),
                });
            }
            check_vector(side, index, &pair.exps, dim)?;
        }
    }
    Ok(HyperSystem { dim, u, v })
}

impl HyperSystem {
    /// Univariate system `prod (alpha_i)_n / prod (beta_j)_n`.
    pub fn univariate(alpha: &[Rational], beta: &[Rational]) -> Result<Self, HyperDataError> {
        let pairs = |xs: &[Rational]| xs.iter().map(|a| ParamPair::new(a.clone(), vec![1])).collect();
        validate_hyper_system(pairs(alpha), pairs(beta), 1)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn u(&self) -> &[ParamPair] {
        &self.u
    }

    pub fn v(&self) -> &[ParamPair] {
        &self.v
    }

    pub fn pairs(&self) -> impl Iterator<Item = &ParamPair> {
        self.u.iter().chain(self.v.iter())
    }

    pub fn exponent_sums(&self) -> (Vec<u64>, Vec<u64>) {
        let sum = |list: &[ParamPair]| {
            let mut s = vec![0u64; self.dim];
            for p in list {
                for (acc, &e) in s.iter_mut().zip(&p.exps) {
                    *acc += e as u64;
                }
            }
            s
        };
        (sum(&self.u), sum(&self.v))
    }

    pub fn is_balanced(&self) -> bool {
        let (a, b) = self.exponent_sums();
        a == b
    }

    pub fn require_balanced(&self) -> Result<(), HyperDataError> {
        let (left, right) = self.exponent_sums();
        if left != right {
            return Err(HyperDataError::NotBalanced { left, right });
        }
        Ok(())
    }

    /// Least common multiple of all parameter denominators.
    pub fn d_alpha_beta(&self) -> u64 {
        self.pairs().fold(1, |acc, p| lcm_u64(acc, denom_u64(&p.param)))
    }

    pub fn max_weight(&self) -> u64 {
        self.pairs()
            .flat_map(|p| p.exps.iter().copied())
            .max()
            .unwrap_or(1) as u64
    }

    /// Same vectors with every parameter replaced by `f(param)`.
    pub fn map_params(&self, mut f: impl FnMut(&Rational) -> Rational) -> HyperSystem {
        let map = |list: &[ParamPair], f: &mut dyn FnMut(&Rational) -> Rational| {
            list.iter().map(|p| ParamPair::new(f(&p.param), p.exps.clone())).collect()
        };
        HyperSystem {
            dim: self.dim,
            u: map(&self.u, &mut f),
            v: map(&self.v, &mut f),
        }
    }
}

/// Exponent vectors of `prod (e_i.n)! / prod (f_j.n)!`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FactorialRatioSystem {
    dim: usize,
    e: Vec<Vec<u32>>,
    f: Vec<Vec<u32>>,
}

pub fn validate_factorial_system(
    e: Vec<Vec<u32>>,
    f: Vec<Vec<u32>>,
    dim: usize,
) -> Result<FactorialRatioSystem, HyperDataError> {
    if e.is_empty() {
        return Err(HyperDataError::EmptySide(Side::U));
    }
    if f.is_empty() {
        return Err(HyperDataError::EmptySide(Side::V));
    }
    for (side, list) in [(Side::U, &e), (Side::V, &f)] {
        for (index, vec) in list.iter().enumerate() {
            check_vector(side, index, vec, dim)?;
        }
    }
    if let Some(shared) = e.iter().find(|x| f.contains(x)) {
        return Err(HyperDataError::NotDisjoint { vector: shared.clone() });
    }
    Ok(FactorialRatioSystem { dim, e, f })
}

impl FactorialRatioSystem {
    /// Univariate system from scalar lists.
    pub fn univariate(e: &[u32], f: &[u32]) -> Result<Self, HyperDataError> {
        validate_factorial_system(
            e.iter().map(|&x| vec![x]).collect(),
            f.iter().map(|&x| vec![x]).collect(),
            1,
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn e(&self) -> &[Vec<u32>] {
        &self.e
    }

    pub fn f(&self) -> &[Vec<u32>] {
        &self.f
    }

    pub fn is_balanced(&self) -> bool {
        self.to_hyper().is_balanced()
    }

    /// The same series written with every parameter equal to 1.
    pub fn to_hyper(&self) -> HyperSystem {
        let pairs = |list: &[Vec<u32>]| list.iter().map(|x| ParamPair::new(Rational::one(), x.clone())).collect();
        HyperSystem {
            dim: self.dim,
            u: pairs(&self.e),
            v: pairs(&self.f),
        }
    }

    fn scalars(&self) -> Result<(Vec<u32>, Vec<u32>), HyperDataError> {
        if self.dim != 1 {
            return Err(HyperDataError::NotUnivariate(self.dim));
        }
        Ok((self.e.iter().map(|x| x[0]).collect(), self.f.iter().map(|x| x[0]).collect()))
    }

    /// `C = prod e^e / prod f^f` (univariate only).
    pub fn growth_constant(&self) -> Result<Rational, HyperDataError> {
        let (e, f) = self.scalars()?;
        let pw = |x: u32| Rational::from_integer(num_bigint::BigInt::from(x).pow(x));
        let num = e.iter().fold(Rational::one(), |acc, &x| acc * pw(x));
        let den = f.iter().fold(Rational::one(), |acc, &x| acc * pw(x));
        Ok(num / den)
    }

    /// `m_ef = 1 / max entry` (univariate only).
    pub fn m_ef(&self) -> Result<Rational, HyperDataError> {
        let (e, f) = self.scalars()?;
        let max = e.iter().chain(&f).copied().max().unwrap();
        Ok(rat(1, max as i64))
    }
}

/// Result of [`factorial_to_hypergeometric`]: the ratio equals `c^n * prod (alpha)_n / prod (beta)_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HyperTranslation {
    #[serde(with = "serde_rational_vec")]
    pub alpha: Vec<Rational>,
    #[serde(with = "serde_rational_vec")]
    pub beta: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub c: Rational,
}

impl HyperTranslation {
    pub fn system(&self) -> HyperSystem {
        HyperSystem::univariate(&self.alpha, &self.beta).expect("translated parameters lie in (0,1]")
    }
}

pub fn factorial_to_hypergeometric(sys: &FactorialRatioSystem) -> Result<HyperTranslation, HyperDataError> {
    let (e, f) = sys.scalars()?;
    let (se, sf): (u64, u64) = (e.iter().map(|&x| x as u64).sum(), f.iter().map(|&x| x as u64).sum());
    if se != sf {
        return Err(HyperDataError::NotBalanced { left: vec![se], right: vec![sf] });
    }
    // (en)! = e^{en} prod_{j=1}^{e} (j/e)_n
    let expand = |list: &[u32]| {
        let mut out: Vec<Rational> = list
            .iter()
            .flat_map(|&x| (1..=x).map(move |j| rat(j as i64, x as i64)))
            .collect();
        out.sort();
        out
    };
    let (a, b) = (expand(&e), expand(&f));
    // multiset difference on sorted lists
    let (mut alpha, mut beta) = (Vec::new(), Vec::new());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            alpha.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            beta.push(b[j].clone());
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    Ok(HyperTranslation {
        alpha,
        beta,
        c: sys.growth_constant()?,
    })
}

pub fn d_alpha_beta(sys: &HyperSystem) -> u64 {
    sys.d_alpha_beta()
}

/// Unit vector helper used by the corpus and tests.
pub fn unit(dim: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

pub(crate) fn rational_dot(w: &[i64], x: &[Rational]) -> Rational {
    w.iter().zip(x).fold(Rational::zero(), |acc, (&wi, xi)| acc + xi * int(wi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range() {
        let err = HyperSystem::univariate(&[rat(3, 2)], &[int(1)]).unwrap_err();
        assert!(matches!(err, HyperDataError::ParamOutOfRange { index: 0, .. }));
    }

    #[test]
    fn rejects_shape_errors() {
        let e = validate_hyper_system(vec![ParamPair::new(int(1), vec![1, 0])], vec![ParamPair::new(int(1), vec![1])], 2);
        assert!(matches!(e, Err(HyperDataError::DimensionMismatch { side: Side::V, .. })));
        let e = validate_hyper_system(vec![ParamPair::new(int(1), vec![0, 0])], vec![], 2);
        assert!(matches!(e, Err(HyperDataError::ZeroExponentVector { .. })));
        assert!(matches!(FactorialRatioSystem::univariate(&[2], &[2]), Err(HyperDataError::NotDisjoint { .. })));
        assert!(matches!(FactorialRatioSystem::univariate(&[2], &[]), Err(HyperDataError::EmptySide(Side::V))));
    }

    #[test]
    fn translation_of_two_one_one() {
        let t = factorial_to_hypergeometric(&FactorialRatioSystem::univariate(&[2], &[1, 1]).unwrap()).unwrap();
        assert_eq!(t.alpha, vec![rat(1, 2)]);
        assert_eq!(t.beta, vec![int(1)]);
        assert_eq!(t.c, int(4));
    }
}
