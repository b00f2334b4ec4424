//! Big-float values carrying a rigorous absolute error bound.
//!
//! The represented quantity lies in `[value - err, value + err]`. Every
//! operation rounds its value faithfully at the working precision and adds
//! the rounding error and the propagated input errors to `err`, always
//! rounding the bound itself upward.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::bigfloat::{BigFloat, Round};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Precision used for error-bound arithmetic.
const ERR_PREC: u32 = 64;

/// Bits of working precision for a request of `digits` decimal digits:
/// `ceil(d·log2 10) + 32` guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    ((digits as f64) * std::f64::consts::LOG2_10).ceil() as u32 + 32
}

/// `10^-digits` as an exact rational.
pub fn tolerance(digits: u32) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10u32), digits as usize))
}

#[derive(Clone)]
pub struct Approx {
    value: BigFloat,
    err: BigFloat,
    prec: u32,
}

impl fmt::Debug for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Approx({} ± {:e}, {} bits)", self.value, self.err.to_f64(), self.prec)
    }
}

fn err_add(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.add(b, ERR_PREC, Round::Up)
}

fn err_mul(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.mul(b, ERR_PREC, Round::Up)
}

impl Approx {
    pub fn new(value: BigFloat, err: BigFloat, prec: u32) -> Self {
        debug_assert!(!err.is_negative());
        Approx { value, err, prec }
    }

    pub fn exact(value: BigFloat, prec: u32) -> Self {
        Approx { value, err: BigFloat::zero(), prec }
    }

    pub fn zero(prec: u32) -> Self {
        Self::exact(BigFloat::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::exact(BigFloat::one(), prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::exact(BigFloat::from_i64(n), prec)
    }

    /// Rounds an exact rational; `err ≤ 2^(1-prec)·|value|` and zero when the
    /// rational is representable.
    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let (value, inexact) = BigFloat::from_rational_flag(q, prec, Round::Down);
        let err = ulp_err(&value, prec, inexact);
        Approx { value, err, prec }
    }

    pub fn value(&self) -> &BigFloat {
        &self.value
    }

    pub fn err(&self) -> &BigFloat {
        &self.err
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(mut self, prec: u32) -> Self {
        self.prec = prec;
        self
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.value.is_zero() && self.err.is_zero()
    }

    /// Widens the error bound by `extra` (e.g. a truncation tail).
    pub fn add_err(&self, extra: &BigFloat) -> Self {
        Approx { value: self.value.clone(), err: err_add(&self.err, &extra.abs()), prec: self.prec }
    }

    pub fn add_err_rational(&self, extra: &Rational) -> Self {
        self.add_err(&BigFloat::from_rational(extra, ERR_PREC, Round::Up))
    }

    /// `|value| + err`, an upper bound on the magnitude.
    pub fn mag_upper(&self) -> BigFloat {
        err_add(&self.value.abs(), &self.err)
    }

    /// `|value| - err` rounded down; may be negative when the ball contains zero.
    pub fn mag_lower(&self) -> BigFloat {
        self.value.abs().sub(&self.err, ERR_PREC, Round::Down)
    }

    /// True when the whole ball is strictly positive.
    pub fn is_positive(&self) -> bool {
        !self.value.is_negative() && self.value > self.err
    }

    /// True when the ball excludes zero.
    pub fn excludes_zero(&self) -> bool {
        self.value.abs() > self.err
    }

    pub fn err_within(&self, bound: &Rational) -> bool {
        self.err.cmp_rational(bound) != std::cmp::Ordering::Greater
    }

    /// True when `err ≤ 10^-digits`.
    pub fn meets_digits(&self, digits: u32) -> bool {
        self.err_within(&tolerance(digits))
    }

    /// True when `q` lies inside the ball.
    pub fn contains_rational(&self, q: &Rational) -> bool {
        let d = self.value.to_rational() - q;
        let d = if d < Rational::zero() { -d } else { d };
        self.err.cmp_rational(&d) != std::cmp::Ordering::Less
    }

    /// True when two balls intersect.
    pub fn overlaps(&self, other: &Approx) -> bool {
        let d = self.value.add_exact(&other.value.neg()).abs();
        d <= self.err.add_exact(&other.err)
    }

    /// `|self.value - other.value|`, exact.
    pub fn abs_diff(&self, other: &Approx) -> BigFloat {
        self.value.add_exact(&other.value.neg()).abs()
    }

    pub fn neg(&self) -> Self {
        Approx { value: self.value.neg(), err: self.err.clone(), prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        Approx { value: self.value.abs(), err: self.err.clone(), prec: self.prec }
    }

    pub fn add(&self, other: &Approx) -> Self {
        let prec = self.prec.max(other.prec);
        let (value, inexact) = self.value.add_flag(&other.value, prec, Round::Down);
        let err = err_add(&err_add(&self.err, &other.err), &ulp_err(&value, prec, inexact));
        Approx { value, err, prec }
    }

    pub fn sub(&self, other: &Approx) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Approx) -> Self {
        let prec = self.prec.max(other.prec);
        let (value, inexact) = self.value.mul_flag(&other.value, prec, Round::Down);
        let mut err = err_mul(&self.value.abs(), &other.err);
        err = err_add(&err, &err_mul(&other.value.abs(), &self.err));
        err = err_add(&err, &err_mul(&self.err, &other.err));
        err = err_add(&err, &ulp_err(&value, prec, inexact));
        Approx { value, err, prec }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn div(&self, other: &Approx) -> Result<Self> {
        let prec = self.prec.max(other.prec);
        if !other.excludes_zero() {
            return Err(Error::DivisionByZero);
        }
        let (value, inexact) = self.value.div_flag(&other.value, prec, Round::Down);
        // |x/y - a/b| ≤ (|a| e_b + |b| e_a) / (|b| (|b| - e_b))
        let b = other.value.abs();
        let num = err_add(
            &err_mul(&self.value.abs(), &other.err),
            &err_mul(&b, &self.err),
        );
        let low = b.sub(&other.err, ERR_PREC, Round::Down);
        let den = b.mul(&low, ERR_PREC, Round::Down);
        let mut err = if num.is_zero() { BigFloat::zero() } else { num.div(&den, ERR_PREC, Round::Up) };
        err = err_add(&err, &ulp_err(&value, prec, inexact));
        Ok(Approx { value, err, prec })
    }

    pub fn recip(&self) -> Result<Self> {
        Approx::one(self.prec).div(self)
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        self.mul(&Approx::from_rational(q, self.prec))
    }

    pub fn add_rational(&self, q: &Rational) -> Self {
        self.add(&Approx::from_rational(q, self.prec))
    }

    pub fn div_rational(&self, q: &Rational) -> Result<Self> {
        self.div(&Approx::from_rational(q, self.prec))
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Approx { value: self.value.mul_pow2(k), err: self.err.mul_pow2(k), prec: self.prec }
    }

    pub fn pow_int(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.pow_int(-n)?.recip();
        }
        let mut acc = Approx::one(self.prec);
        let mut base = self.clone();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.square();
            }
        }
        Ok(acc)
    }

    /// Square root; the ball must be nonnegative.
    pub fn sqrt(&self) -> Result<Self> {
        if self.value.is_zero() && self.err.is_zero() {
            return Ok(self.clone());
        }
        if !self.is_positive() {
            return Err(Error::Domain("sqrt of a value that may be negative".into()));
        }
        let (value, inexact) = self.value.sqrt_flag(self.prec, Round::Down);
        // |√x - √a| ≤ e/√a and the computed root is ≤ √a
        let mut err = if self.err.is_zero() {
            BigFloat::zero()
        } else {
            self.err.div(&value, ERR_PREC, Round::Up)
        };
        err = err_add(&err, &ulp_err(&value, self.prec, inexact));
        Ok(Approx { value, err, prec: self.prec })
    }

    pub fn to_decimal_string(&self, digits: usize) -> String {
        self.value.to_decimal_string(digits)
    }
}

/// One unit in the last place of a `prec`-bit result, or zero when exact.
fn ulp_err(v: &BigFloat, prec: u32, inexact: bool) -> BigFloat {
    match (inexact, v.msb()) {
        (true, Some(m)) => BigFloat::pow2(m + 1 - prec as i64),
        _ => BigFloat::zero(),
    }
}

/// Runs `f` at the working precision for `digits`, doubling the precision
/// until the result's error bound is at most `10^-digits`.
pub fn with_digits<F>(digits: u32, mut f: F) -> Result<Approx>
where
    F: FnMut(u32) -> Result<Approx>,
{
    let mut prec = bits_for_digits(digits);
    for _ in 0..6 {
        let a = f(prec)?;
        if a.meets_digits(digits) {
            return Ok(a);
        }
        prec *= 2;
    }
    Err(Error::Precision(format!("could not reach {digits} digits")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{int, rat};

    #[test]
    fn to_bigfloat_examples() {
        let a = Approx::from_rational(&rat(1, 3), 64);
        assert!(a.contains_rational(&rat(1, 3)));
        assert!(a.err_within(&Rational::new(BigInt::one(), BigInt::one() << 63u32)));
        let two = Approx::from_rational(&int(2), 9);
        assert!(two.err().is_zero());
        let m = Approx::from_rational(&rat(-5, 4), 16);
        assert!(m.err().is_zero());
        let m = Approx::from_rational(&rat(-5, 3), 16);
        assert!(m.contains_rational(&rat(-5, 3)));
        assert!(m.err_within(&(rat(5, 3) * Rational::new(BigInt::one(), BigInt::one() << 15u32))));
    }

    #[test]
    fn arithmetic_encloses_exact_results() {
        let p = 80;
        let a = Approx::from_rational(&rat(1, 3), p);
        let b = Approx::from_rational(&rat(-2, 7), p);
        assert!(a.add(&b).contains_rational(&(rat(1, 3) + rat(-2, 7))));
        assert!(a.sub(&b).contains_rational(&(rat(1, 3) - rat(-2, 7))));
        assert!(a.mul(&b).contains_rational(&(rat(1, 3) * rat(-2, 7))));
        assert!(a.div(&b).unwrap().contains_rational(&(rat(1, 3) / rat(-2, 7))));
        assert!(a.pow_int(5).unwrap().contains_rational(&rat(1, 243)));
        assert!(a.pow_int(-2).unwrap().contains_rational(&int(9)));
    }

    #[test]
    fn sqrt_encloses() {
        let two = Approx::from_i64(2, 100);
        let r = two.sqrt().unwrap();
        let sq = r.square();
        assert!(sq.contains_rational(&int(2)));
        assert!(Approx::from_i64(-1, 10).sqrt().is_err());
    }

    #[test]
    fn division_by_ball_containing_zero() {
        let z = Approx::zero(10).add_err_rational(&rat(1, 100));
        assert_eq!(Approx::one(10).div(&z).unwrap_err(), Error::DivisionByZero);
    }
}
