//! p-adic valuations of factorials, Pochhammer symbols and `Q_{u,v}(n)`.
//!
//! All three use digit-sum style formulas; none of them factors the value itself.

use crate::hyperdata::HyperSystem;
use crate::rational::{angle, floor_i64, int, Rational};
use crate::stepfun::{dwork_iter, iota, StepFunError, StepFunctionSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PadicError {
    #[error("{p} divides d_ab = {d}")]
    BadPrime { p: u64, d: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("system is not balanced")]
    NotBalanced,
    #[error(transparent)]
    StepFunction(#[from] StepFunError),
}

fn check_prime(p: u64) -> Result<(), PadicError> {
    if !crate::rational::is_prime(p) {
        return Err(PadicError::NotPrime(p));
    }
    Ok(())
}

/// Legendre: `v_p(n!) = sum_l floor(n / p^l)`.
pub fn vp_factorial(n: u64, p: u64) -> Result<u64, PadicError> {
    check_prime(p)?;
    let mut s = 0;
    let mut q = n / p;
    while q > 0 {
        s += q;
        q /= p;
    }
    Ok(s)
}

/// `v_p((alpha)_m)` for `alpha` in `(0,1]` with `p` not dividing its denominator.
pub fn vp_pochhammer(alpha: &Rational, m: u64, p: u64) -> Result<u64, PadicError> {
    check_prime(p)?;
    let den = crate::rational::denom_u64(alpha);
    if den.is_multiple_of(p) {
        return Err(PadicError::BadPrime { p, d: den });
    }
    // terms vanish once p^l > m * den
    let mut total: i64 = 0;
    let mut pl: u128 = p as u128;
    let mut l = 1u32;
    while pl <= m as u128 * den as u128 {
        let d = dwork_iter(p, l, alpha)?;
        let x = Rational::new((m as i64).into(), (pl as i64).into());
        total += floor_i64(&(x - d)) + 1;
        pl *= p as u128;
        l += 1;
    }
    Ok(total as u64)
}

/// Truncation depth `floor(log_p(max_weight * max(n) * d_ab)) + 2`.
pub fn truncation_depth(sys: &HyperSystem, n: &[u64], p: u64) -> u32 {
    let bound = sys.max_weight() as u128 * (*n.iter().max().unwrap_or(&0)).max(1) as u128 * sys.d_alpha_beta() as u128;
    let mut l = 0;
    let mut pl: u128 = p as u128;
    while pl <= bound {
        pl *= p as u128;
        l += 1;
    }
    l + 2
}

/// `v_p(Q_{u,v}(n)) = sum_l xi_{iota(p^l)}(n / p^l)` for balanced systems.
pub fn vp_quv(sys: &HyperSystem, n: &[u64], p: u64) -> Result<i64, PadicError> {
    vp_quv_to_depth(sys, n, p, truncation_depth(sys, n, p))
}

pub fn vp_quv_to_depth(sys: &HyperSystem, n: &[u64], p: u64, depth: u32) -> Result<i64, PadicError> {
    check_prime(p)?;
    let d = sys.d_alpha_beta();
    if d.is_multiple_of(p) {
        return Err(PadicError::BadPrime { p, d });
    }
    if !sys.is_balanced() {
        return Err(PadicError::NotBalanced);
    }
    let mut total = 0;
    let mut pl = int(1);
    for l in 1..=depth {
        pl *= int(p as i64);
        let a = iota(p, l, d)?;
        let f = StepFunctionSpec::xi(sys, a)?;
        let x: Vec<Rational> = n.iter().map(|&k| int(k as i64) / &pl).collect();
        total += f.eval(&x);
    }
    Ok(total)
}

/// `D_p^l(alpha) = <iota(p^l) alpha>` for `alpha` in `(0,1]`; exposed for checking.
pub fn dwork_closed_form(alpha: &Rational, p: u64, l: u32) -> Result<Rational, PadicError> {
    let den = crate::rational::denom_u64(alpha);
    let a = iota(p, l, den)?;
    Ok(angle(&(int(a as i64) * alpha)))
}
