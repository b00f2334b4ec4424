//! Exact rationals. Canonical form (positive denominator, reduced) is
//! maintained by `num_rational::BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_arith(a: &Rational, b: &Rational, op: RatOp) -> Result<Rational> {
    Ok(match op {
        RatOp::Add => a + b,
        RatOp::Sub => a - b,
        RatOp::Mul => a * b,
        RatOp::Div => checked_div(a, b)?,
    })
}

pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

pub fn checked_recip(a: &Rational) -> Result<Rational> {
    checked_div(&Rational::one(), a)
}

/// Integer power, negative exponents allowed for nonzero bases.
pub fn pow(a: &Rational, e: i64) -> Result<Rational> {
    if e < 0 {
        return checked_recip(&pow(a, -e)?);
    }
    let mut acc = Rational::one();
    let mut base = a.clone();
    let mut e = e as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    Ok(acc)
}

/// Returns `Some(n)` when `q` is an integer `n ≤ 0`.
pub fn nonpositive_integer(q: &Rational) -> Option<u64> {
    if q.is_integer() && !q.is_positive() {
        let n: BigInt = -q.to_integer();
        u64::try_from(n).ok()
    } else {
        None
    }
}

pub fn is_nonpositive_integer(q: &Rational) -> bool {
    q.is_integer() && !q.is_positive()
}

/// Parses `"num/den"` or a bare integer `"num"`. Decimals are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("expected a rational of the form num/den, got `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = n.parse().map_err(|_| bad())?;
    let den: BigInt = d.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// `"num/den"` with the denominator always present.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Largest `e` with `2^e ≤ |q|` (up to one off); used only for scaling decisions.
pub fn log2_estimate(q: &Rational) -> i64 {
    q.numer().bits() as i64 - q.denom().bits() as i64
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

pub fn floor(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

/// Serde adapter writing rationals as `"num/den"` strings.
pub mod serde_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_examples() {
        assert_eq!(rat_arith(&rat(1, 2), &rat(1, 3), RatOp::Add).unwrap(), rat(5, 6));
        assert_eq!(rat_arith(&rat(3, 6), &int(1), RatOp::Mul).unwrap(), rat(1, 2));
        assert_eq!(rat(3, 6).numer(), &BigInt::from(1));
        assert_eq!(
            rat_arith(&rat(1, 2), &int(0), RatOp::Div),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-192/1").unwrap(), int(-192));
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("17").unwrap(), int(17));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert_eq!(format_rational(&int(3)), "3/1");
    }

    #[test]
    fn powers() {
        assert_eq!(pow(&rat(2, 3), 3).unwrap(), rat(8, 27));
        assert_eq!(pow(&rat(2, 3), -2).unwrap(), rat(9, 4));
        assert!(pow(&int(0), -1).is_err());
        assert_eq!(nonpositive_integer(&int(-3)), Some(3));
        assert_eq!(nonpositive_integer(&int(0)), Some(0));
        assert_eq!(nonpositive_integer(&rat(-1, 2)), None);
    }
}
