//! Exact rationals and the Koszul sign helpers used throughout.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p/q"` or `"p"`.
pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::ParseRational(s.to_string());
    match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(t).map_err(|_| bad())?)),
    }
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `true` when `(-1)^exp` is negative.
#[inline]
pub fn odd(exp: u32) -> bool {
    exp & 1 == 1
}

/// `out += sign * coeff * v` where `sign` is `-1` iff `neg`.
#[inline]
pub fn axpy(out: &mut [Rational], neg: bool, coeff: &Rational, v: &[Rational]) {
    if coeff.is_zero() {
        return;
    }
    for (o, x) in out.iter_mut().zip(v) {
        if x.is_zero() {
            continue;
        }
        let t = coeff * x;
        if neg {
            *o -= t;
        } else {
            *o += t;
        }
    }
}

/// `out += (-1)^neg * v`.
#[inline]
pub fn add_signed(out: &mut [Rational], neg: bool, v: &[Rational]) {
    for (o, x) in out.iter_mut().zip(v) {
        if x.is_zero() {
            continue;
        }
        if neg {
            *o -= x;
        } else {
            *o += x;
        }
    }
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Serde adapter: a rational as its `"p/q"` string.
pub mod serde_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: a vector of rationals as a list of strings.
pub mod serde_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| parse(s).map_err(serde::de::Error::custom)).collect()
    }
}

/// Serde adapter for `Option<Vec<Rational>>`.
pub mod serde_opt_vec {
    use super::*;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.collect_seq(v.iter().map(format)),
            None => s.serialize_none(),
        }
    }
}
