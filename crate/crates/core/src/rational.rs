//! Exact rational scalars and their fraction-string wire format.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Always `p/q`, denominators included even when 1.
pub fn format(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p/q` or a bare integer `p`, with optional sign on the numerator.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid fraction string {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let numer: BigInt = n.parse().map_err(|_| bad())?;
    let denom: BigInt = d.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(numer, denom))
}

/// `base^exp` for any integer exponent; negative exponents invert.
///
/// Panics if `base` is zero and `exp < 0`.
pub fn pow(base: &Rational, exp: i64) -> Rational {
    let mut result = Rational::one();
    let mut sq = if exp < 0 { base.recip() } else { base.clone() };
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            result *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    result
}

/// All rational `t` with `t^k == c` (`k != 0`). At most two roots (a ± pair for even `k`).
pub fn roots(c: &Rational, k: i64) -> Vec<Rational> {
    assert!(k != 0, "roots of exponent 0 are not a finite set");
    if c.is_zero() {
        return Vec::new();
    }
    let c = if k < 0 { c.recip() } else { c.clone() };
    let n = k.unsigned_abs();
    let Ok(n32) = u32::try_from(n) else {
        return if c.is_one() { vec![Rational::one()] } else { Vec::new() };
    };
    let even = n.is_multiple_of(2);
    if even && c.is_negative() {
        return Vec::new();
    }
    let root_int = |v: &BigInt| -> Option<BigInt> {
        let mag = v.abs();
        let r = mag.nth_root(n32);
        if num_traits::pow(r.clone(), n32 as usize) == mag {
            Some(if v.is_negative() { -r } else { r })
        } else {
            None
        }
    };
    let (Some(p), Some(q)) = (root_int(c.numer()), root_int(c.denom())) else {
        return Vec::new();
    };
    let t = Rational::new(p, q);
    if even && !t.is_zero() {
        let mut v = vec![-t.clone(), t];
        v.sort();
        v
    } else {
        vec![t]
    }
}
