//! Exact rational helpers and the `"num/den"` string encoding used in JSON.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse rational from {input:?}: {reason}")]
pub struct RationalParseError {
    pub input: String,
    pub reason: &'static str,
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    let err = |reason| RationalParseError { input: s.to_string(), reason };
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err("bad numerator"))?;
    let d: BigInt = d.parse().map_err(|_| err("bad denominator"))?;
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

/// Always `num/den`, also for integers, so output is byte-stable.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn floor_i64(r: &Rational) -> i64 {
    r.floor().to_integer().to_i64().expect("floor out of i64 range")
}

/// `<x>`: the representative of `x` modulo 1 lying in (0, 1].
pub fn angle(x: &Rational) -> Rational {
    let f = x - x.floor();
    if f.is_zero() {
        Rational::one()
    } else {
        f
    }
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn denom_u64(r: &Rational) -> u64 {
    r.denom().to_u64().expect("denominator too large")
}

/// Largest `e` with `p^e | n`, for nonzero `n`.
pub fn vp_bigint(n: &BigInt, p: u64) -> u64 {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return e;
        }
        n = q;
        e += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn vp_rational(r: &Rational, p: u64) -> i64 {
    vp_bigint(r.numer(), p) as i64 - vp_bigint(r.denom(), p) as i64
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

/// Reduce a p-integral rational modulo `p`; `None` when `p` divides the denominator.
pub fn rational_mod(r: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = r.denom().mod_floor(&pb).to_u64().unwrap();
    let inv = mod_inverse(d, p)?;
    let n = r.numer().mod_floor(&pb).to_u64().unwrap();
    Some(((n as u128 * inv as u128) % p as u128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Natural log of a nonzero big integer's absolute value, finite for huge inputs.
pub fn ln_abs_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().unwrap().ln();
    }
    let shift = bits - 60;
    let top: BigInt = n.abs() >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn ln_rational(r: &Rational) -> f64 {
    ln_abs_bigint(r.numer()) - ln_abs_bigint(r.denom())
}

pub(crate) mod serde_rational {
    use super::*;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }
}

pub(crate) mod serde_rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&int(5)), "5/1");
    }

    #[test]
    fn angles() {
        assert_eq!(angle(&rat(10, 3)), rat(1, 3));
        assert_eq!(angle(&int(1)), int(1));
        assert_eq!(angle(&rat(-1, 4)), rat(3, 4));
    }

    #[test]
    fn modular() {
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(rational_mod(&rat(1, 2), 5), Some(3));
        assert_eq!(rational_mod(&rat(1, 5), 5), None);
        assert_eq!(vp_rational(&rat(81, 320), 5), -1);
    }
}
