//! Canonical exact rationals.
//!
//! [`Rational`] is `num_rational::BigRational`, which reduces on every
//! construction and keeps the denominator positive, so structural equality
//! and hashing coincide with numeric equality.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Sign as `-1`, `0` or `+1`.
pub fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Serialized form `"num/den"`; the denominator is always written, even when it is 1.
pub fn to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"num/den"` or a bare integer `"num"`.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// Largest power `1/2^j` (j >= 0) for which `pred` holds, searching upward from
/// `j = 0`. Returns `None` when no `j <= max_j` qualifies.
pub(crate) fn largest_dyadic_below(
    max_j: u32,
    mut pred: impl FnMut(&Rational) -> bool,
) -> Option<Rational> {
    let mut r = Rational::one();
    let half = ratio(1, 2);
    for _ in 0..=max_j {
        if pred(&r) {
            return Some(r);
        }
        r *= &half;
    }
    None
}

/// Absolute value of the larger magnitude of a slice (0 for an empty slice).
pub(crate) fn max_abs<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values
        .into_iter()
        .map(|v| v.abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = parse("6/-4").unwrap();
        assert_eq!(to_string(&r), "-3/2");
        assert_eq!(parse("7").unwrap(), int(7));
        assert_eq!(to_string(&int(7)), "7/1");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn dyadic_search() {
        let r = largest_dyadic_below(10, |e| e < &ratio(1, 5)).unwrap();
        assert_eq!(r, ratio(1, 8));
        assert!(largest_dyadic_below(2, |e| e < &ratio(1, 100)).is_none());
    }
}
