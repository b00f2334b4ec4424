//! Binary floating point over `BigInt` mantissas.
//!
//! A value is `mant · 2^exp`. Every operation takes an explicit precision in
//! bits and a rounding direction; the result keeps at most `prec` significant
//! bits. `Round::Down` truncates toward zero, so each result is faithful (off
//! by less than one unit in the last kept place, i.e. relative error below
//! `2^(1-prec)`). `Round::Up` rounds away from zero and is what error-bound
//! bookkeeping uses.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    /// Toward zero.
    Down,
    /// Away from zero.
    Up,
}

#[derive(Clone, PartialEq, Eq)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({:e})", self.to_f64())
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        BigFloat { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_parts(BigInt::from(n), 0)
    }

    /// `mant · 2^exp`, normalized so that zero is unique and the mantissa is odd.
    pub fn from_parts(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        BigFloat { mant: mant >> tz, exp: exp + tz as i64 }
    }

    pub fn pow2(e: i64) -> Self {
        BigFloat { mant: BigInt::one(), exp: e }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn neg(&self) -> Self {
        BigFloat { mant: -&self.mant, exp: self.exp }
    }

    /// Exponent of the leading bit: `2^msb ≤ |x| < 2^(msb+1)`. `None` for zero.
    pub fn msb(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mant.bits() as i64 - 1)
        }
    }

    /// Scales by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        BigFloat { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// Rounds `mant · 2^exp` to `prec` bits. The flag reports whether bits were lost.
    fn round_parts(mant: BigInt, exp: i64, prec: u32, mode: Round) -> (Self, bool) {
        let bits = mant.bits();
        if bits <= prec as u64 {
            return (Self::from_parts(mant, exp), false);
        }
        let shift = bits - prec as u64;
        let neg = mant.is_negative();
        let mag = mant.abs();
        let kept = &mag >> shift;
        let lost = kept.clone() << shift != mag;
        let kept = if lost && mode == Round::Up { kept + 1u32 } else { kept };
        let kept = if neg { -kept } else { kept };
        (Self::from_parts(kept, exp + shift as i64), lost)
    }

    pub fn round(&self, prec: u32, mode: Round) -> Self {
        Self::round_parts(self.mant.clone(), self.exp, prec, mode).0
    }

    /// Exact sum (no rounding).
    pub fn add_exact(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Self::from_parts(a + b, e)
    }

    pub fn mul_exact(&self, other: &Self) -> Self {
        Self::from_parts(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn add(&self, other: &Self, prec: u32, mode: Round) -> Self {
        self.add_flag(other, prec, mode).0
    }

    pub fn add_flag(&self, other: &Self, prec: u32, mode: Round) -> (Self, bool) {
        let s = self.add_exact(other);
        Self::round_parts(s.mant, s.exp, prec, mode)
    }

    pub fn sub(&self, other: &Self, prec: u32, mode: Round) -> Self {
        self.add(&other.neg(), prec, mode)
    }

    pub fn mul(&self, other: &Self, prec: u32, mode: Round) -> Self {
        self.mul_flag(other, prec, mode).0
    }

    pub fn mul_flag(&self, other: &Self, prec: u32, mode: Round) -> (Self, bool) {
        Self::round_parts(&self.mant * &other.mant, self.exp + other.exp, prec, mode)
    }

    /// `num / den` of two integers scaled by `2^exp`, rounded to `prec` bits.
    fn div_ints(num: &BigInt, den: &BigInt, exp: i64, prec: u32, mode: Round) -> (Self, bool) {
        assert!(!den.is_zero(), "BigFloat division by zero");
        if num.is_zero() {
            return (Self::zero(), false);
        }
        let want = prec as i64 + 2 + den.bits() as i64 - num.bits() as i64;
        let s = want.max(0) as u64;
        let scaled = num << s;
        let (q, r) = scaled.div_rem(den);
        let inexact = !r.is_zero();
        let q = if inexact && mode == Round::Up {
            if (num.is_negative()) != (den.is_negative()) {
                q - 1
            } else {
                q + 1
            }
        } else {
            q
        };
        let (v, lost) = Self::round_parts(q, exp - s as i64, prec, mode);
        (v, lost || inexact)
    }

    pub fn div(&self, other: &Self, prec: u32, mode: Round) -> Self {
        self.div_flag(other, prec, mode).0
    }

    pub fn div_flag(&self, other: &Self, prec: u32, mode: Round) -> (Self, bool) {
        Self::div_ints(&self.mant, &other.mant, self.exp - other.exp, prec, mode)
    }

    /// Square root of a nonnegative value.
    pub fn sqrt_flag(&self, prec: u32, mode: Round) -> (Self, bool) {
        assert!(!self.is_negative(), "sqrt of negative BigFloat");
        if self.is_zero() {
            return (Self::zero(), false);
        }
        let want = 2 * prec as i64 + 4 - self.mant.bits() as i64;
        let mut s = want.max(0);
        if (self.exp - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let m = &self.mant << s as u64;
        let r = m.sqrt();
        let inexact = &r * &r != m;
        let r = if inexact && mode == Round::Up { r + 1u32 } else { r };
        let (v, lost) = Self::round_parts(r, (self.exp - s) / 2, prec, mode);
        (v, lost || inexact)
    }

    pub fn from_rational(q: &Rational, prec: u32, mode: Round) -> Self {
        Self::from_rational_flag(q, prec, mode).0
    }

    pub fn from_rational_flag(q: &Rational, prec: u32, mode: Round) -> (Self, bool) {
        Self::div_ints(q.numer(), q.denom(), 0, prec, mode)
    }

    /// The exact dyadic rational this value represents.
    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (&self.mant >> shift as u64).to_f64().unwrap_or(0.0);
        let e = self.exp + shift;
        if e > 2000 {
            return top.signum() * f64::INFINITY;
        }
        if e < -2000 {
            return 0.0;
        }
        top * 2f64.powi(e as i32)
    }

    /// Exact comparison against a rational.
    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        self.to_rational().cmp(q)
    }

    /// Decimal string with exactly `digits` digits after the point, rounded
    /// to nearest.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let ten = BigInt::from(10u32);
        let scale = num_traits::pow(ten, digits);
        let q = self.to_rational() * Rational::from_integer(scale);
        // round half away from zero
        let twice = &q * Rational::from_integer(BigInt::from(2));
        let n = twice.numer().abs();
        let d = twice.denom();
        let r = (n / d + 1u32) / 2u32;
        let neg = q.is_negative() && !r.is_zero();
        let mut s = r.to_string();
        if digits > 0 {
            if s.len() <= digits {
                s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
            }
            let split = s.len() - digits;
            s.insert(split, '.');
        }
        if neg {
            s.insert(0, '-');
        }
        s
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.add_exact(&other.neg()).mant.sign().cmp(&Sign::NoSign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::rat;

    #[test]
    fn rational_conversion_is_faithful() {
        let third = rat(1, 3);
        let v = BigFloat::from_rational(&third, 64, Round::Down);
        let diff = (v.to_rational() - &third).abs();
        assert!(diff <= rat(1, 3) * Rational::new(1.into(), BigInt::one() << 63u32));
        let up = BigFloat::from_rational(&third, 64, Round::Up);
        assert!(up.to_rational() > third);
        assert!(v.to_rational() < third);
    }

    #[test]
    fn exact_values_stay_exact() {
        let (v, inexact) = BigFloat::from_rational_flag(&rat(2, 1), 16, Round::Down);
        assert!(!inexact);
        assert_eq!(v, BigFloat::from_i64(2));
        let (s, inexact) = BigFloat::from_i64(9).sqrt_flag(32, Round::Down);
        assert!(!inexact);
        assert_eq!(s, BigFloat::from_i64(3));
    }

    #[test]
    fn negative_rounding_directions() {
        let v = BigFloat::from_rational(&rat(-1, 3), 20, Round::Down);
        assert!(v.to_rational() > rat(-1, 3));
        let v = BigFloat::from_rational(&rat(-1, 3), 20, Round::Up);
        assert!(v.to_rational() < rat(-1, 3));
    }

    #[test]
    fn decimal_strings() {
        assert_eq!(BigFloat::from_i64(0).to_decimal_string(3), "0.000");
        assert_eq!(BigFloat::from_rational(&rat(1, 4), 10, Round::Down).to_decimal_string(1), "0.3");
        assert_eq!(BigFloat::from_rational(&rat(-5, 4), 10, Round::Down).to_decimal_string(2), "-1.25");
        assert_eq!(BigFloat::from_i64(12).to_decimal_string(0), "12");
    }

    #[test]
    fn ordering() {
        let a = BigFloat::from_rational(&rat(1, 3), 50, Round::Down);
        let b = BigFloat::from_rational(&rat(1, 2), 50, Round::Down);
        assert!(a < b);
        assert!(a.neg() > b.neg());
        assert_eq!(a.cmp_rational(&rat(1, 3)), Ordering::Less);
    }
}
