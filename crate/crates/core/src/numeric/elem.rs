//! Elementary functions on `Approx` and exact rationals.
//!
//! Internal entry points take a working precision in bits; the public
//! [`elem`] wraps them with the digits-driven precision escalation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::approx::{with_digits, Approx};
use super::bigfloat::BigFloat;
use super::rational::{int, rat, Rational};
use crate::error::{Error, Result};

/// Series loops stop once the current power drops below `2^-(prec+GUARD)`.
const GUARD: i64 = 8;

fn below_precision(x: &BigFloat, prec: u32) -> bool {
    match x.msb() {
        None => true,
        Some(m) => m < -(prec as i64) - GUARD,
    }
}

/// `Σ_{j≥0} s^j u^(2j+1)/(2j+1)` with `s = +1` (atanh) or `s = -1` (atan),
/// for `|u| ≤ 1/2`.
fn odd_power_series(u: &Approx, alternating: bool) -> Approx {
    let prec = u.prec();
    let u2 = u.square();
    let mut power = u.clone();
    let mut sum = Approx::zero(prec);
    let mut j: i64 = 0;
    loop {
        if below_precision(&power.mag_upper(), prec) {
            break;
        }
        let term = power.mul_rational(&rat(1, 2 * j + 1));
        sum = if alternating && j % 2 == 1 { sum.sub(&term) } else { sum.add(&term) };
        power = power.mul(&u2);
        j += 1;
    }
    // alternating tail ≤ first omitted term; otherwise geometric with ratio u² ≤ 1/4
    let tail = power.mag_upper();
    let tail = if alternating {
        tail
    } else {
        tail.mul(&BigFloat::from_rational(&rat(4, 3), 64, super::bigfloat::Round::Up), 64, super::bigfloat::Round::Up)
    };
    sum.add_err(&tail)
}

fn atan_recip(n: i64, prec: u32) -> Approx {
    odd_power_series(&Approx::from_rational(&rat(1, n), prec), true)
}

/// π by Machin's formula `16 atan(1/5) − 4 atan(1/239)`.
pub fn pi(prec: u32) -> Approx {
    let p = prec + 16;
    let a = atan_recip(5, p).mul_pow2(4);
    let b = atan_recip(239, p).mul_pow2(2);
    a.sub(&b).with_prec(prec)
}

/// π by the Chudnovsky series, summed exactly in rationals.
///
/// `1/π = 12 Σ (−1)^k (6k)! (13591409 + 545140134k) / ((3k)! (k!)^3 640320^(3k+3/2))`
pub fn pi_chudnovsky(prec: u32) -> Approx {
    let p = prec + 16;
    let c3 = BigInt::from(640320u64).pow(3u32);
    let mut term = Rational::one(); // (6k)!/((3k)!(k!)^3 (−640320^3)^k)
    let mut sum = Rational::zero();
    let mut k: u64 = 0;
    let tail;
    loop {
        let lin = Rational::from_integer(BigInt::from(13591409u64) + BigInt::from(545140134u64) * k);
        let t = &term * &lin;
        // each term gains roughly 47 bits
        if k > 0 && (t.numer().bits() as i64 - t.denom().bits() as i64) < -(p as i64) - GUARD {
            tail = t.abs();
            break;
        }
        sum += &t;
        let k6 = BigInt::from(6 * k);
        let num = (&k6 + 1u32) * (&k6 + 2u32) * (&k6 + 3u32) * (&k6 + 4u32) * (&k6 + 5u32) * (&k6 + 6u32);
        let k3 = BigInt::from(3 * k);
        let kk = BigInt::from(k + 1);
        let den = (&k3 + 1u32) * (&k3 + 2u32) * (&k3 + 3u32) * &kk * &kk * &kk * &c3;
        term = -term * Rational::new(num, den);
        k += 1;
    }
    // alternating with decreasing magnitude: |tail| ≤ first omitted term
    let s = Approx::from_rational(&sum, p).add_err_rational(&tail);
    let sqrt_c = Approx::from_i64(640320, p).sqrt().expect("positive");
    let num = sqrt_c.mul_rational(&int(640320));
    num.div(&s.mul_rational(&int(12))).expect("series sum is positive").with_prec(prec)
}

/// ln 2 = 2 atanh(1/3).
pub fn ln2(prec: u32) -> Approx {
    odd_power_series(&Approx::from_rational(&rat(1, 3), prec + 8), false)
        .mul_pow2(1)
        .with_prec(prec)
}

/// Natural logarithm of a positive rational.
pub fn log_rational(q: &Rational, prec: u32) -> Result<Approx> {
    if !q.is_positive() {
        return Err(Error::Domain(format!("log of nonpositive {q}")));
    }
    if q.is_one() {
        return Ok(Approx::zero(prec));
    }
    let mut s = q.numer().bits() as i64 - q.denom().bits() as i64;
    let mut r = scale_pow2(q, -s);
    let four_thirds = rat(4, 3);
    let two_thirds = rat(2, 3);
    while r > four_thirds {
        s += 1;
        r /= int(2);
    }
    while r < two_thirds {
        s -= 1;
        r *= int(2);
    }
    let p = prec + 16 + 64 - (s.unsigned_abs().leading_zeros());
    let u = (&r - Rational::one()) / (&r + Rational::one());
    let mut out = odd_power_series(&Approx::from_rational(&u, p), false).mul_pow2(1);
    if s != 0 {
        out = out.add(&ln2(p).mul(&Approx::from_i64(s, p)));
    }
    Ok(out.with_prec(prec))
}

fn scale_pow2(q: &Rational, k: i64) -> Rational {
    if k >= 0 {
        q * Rational::from_integer(BigInt::one() << k as u64)
    } else {
        q / Rational::from_integer(BigInt::one() << (-k) as u64)
    }
}

/// Natural logarithm of a ball that is strictly positive.
pub fn log(x: &Approx) -> Result<Approx> {
    if !x.is_positive() {
        return Err(Error::Domain("log of a value that may be nonpositive".into()));
    }
    let centre = log_rational(&x.value().to_rational(), x.prec())?;
    if x.err().is_zero() {
        return Ok(centre);
    }
    // |log(v ± e) − log v| ≤ e / (v − e)
    let low = x.mag_lower();
    let spread = x.err().div(&low, 64, super::bigfloat::Round::Up);
    Ok(centre.add_err(&spread))
}

/// Exponential of a ball.
pub fn exp(x: &Approx) -> Result<Approx> {
    let prec = x.prec();
    if x.is_exact_zero() {
        return Ok(Approx::one(prec));
    }
    let xf = x.to_f64();
    if !xf.is_finite() || xf.abs() > 1e15 {
        return Err(Error::Domain("exp argument out of range".into()));
    }
    let n = (xf / std::f64::consts::LN_2).round() as i64;
    const HALVINGS: i64 = 10;
    let p = prec + HALVINGS as u32 + 24 + (64 - n.unsigned_abs().leading_zeros());
    let x = x.clone().with_prec(p);
    let y = if n == 0 { x } else { x.sub(&ln2(p).mul(&Approx::from_i64(n, p))) };
    let y = y.mul_pow2(-HALVINGS);
    let mut sum = Approx::one(p);
    let mut term = Approx::one(p);
    let mut j: i64 = 1;
    loop {
        term = term.mul(&y).mul_rational(&rat(1, j));
        sum = sum.add(&term);
        if below_precision(&term.mag_upper(), p) {
            break;
        }
        j += 1;
    }
    // |y| < 2^-9, so the remaining terms sum to less than twice the last one
    let mut e = sum.add_err(&term.mag_upper().mul_pow2(1));
    for _ in 0..HALVINGS {
        e = e.square();
    }
    Ok(e.mul_pow2(n).with_prec(prec))
}

/// `x^q = exp(q log x)` for positive `x` and rational `q`.
pub fn pow_rational(x: &Approx, q: &Rational) -> Result<Approx> {
    if q.is_integer() {
        if let Some(n) = q.to_integer().to_i64() {
            return x.pow_int(n);
        }
    }
    let l = log(x)?;
    exp(&l.mul_rational(q))
}

/// `sin θ` and `cos θ` by Taylor series for `|θ| ≤ 1`.
fn sin_cos_series(theta: &Approx, want_sin: bool) -> Approx {
    let prec = theta.prec();
    let t2 = theta.square();
    let (mut term, mut j) = if want_sin { (theta.clone(), 1i64) } else { (Approx::one(prec), 0i64) };
    let mut sum = Approx::zero(prec);
    let mut neg = false;
    loop {
        sum = if neg { sum.sub(&term) } else { sum.add(&term) };
        term = term.mul(&t2).mul_rational(&rat(1, (j + 1) * (j + 2)));
        j += 2;
        neg = !neg;
        if below_precision(&term.mag_upper(), prec) {
            break;
        }
    }
    // alternating, decreasing for |θ| ≤ 1
    sum.add_err(&term.mag_upper())
}

/// Reduces `q` so that `sin(πq) = sign · f(π r)` with `r ∈ [0, 1/4]` and
/// `f` either sin (`false`) or cos (`true`).
fn reduce_sin_pi(q: &Rational) -> (i32, bool, Rational) {
    let two = int(2);
    let mut r = q - &two * Rational::from_integer(q.numer().div_floor(&(q.denom() * 2u32)));
    // r ∈ [0, 2)
    let mut sign = 1;
    if r >= Rational::one() {
        r -= Rational::one();
        sign = -1;
    }
    let half = rat(1, 2);
    if r > half {
        r = Rational::one() - r;
    }
    if r > rat(1, 4) {
        (sign, true, half - r)
    } else {
        (sign, false, r)
    }
}

fn trig_kernel(use_cos: bool, r: &Rational, prec: u32) -> Approx {
    if r.is_zero() {
        return if use_cos { Approx::one(prec) } else { Approx::zero(prec) };
    }
    let p = prec + 8;
    let theta = pi(p).mul_rational(r);
    sin_cos_series(&theta, !use_cos).with_prec(prec)
}

/// `sin(π q)` with exact argument reduction on `q`.
pub fn sin_pi_prec(q: &Rational, prec: u32) -> Approx {
    let (sign, use_cos, r) = reduce_sin_pi(q);
    let v = trig_kernel(use_cos, &r, prec);
    if sign < 0 { v.neg() } else { v }
}

/// `cos(π q) = sin(π (q + 1/2))`.
pub fn cos_pi_prec(q: &Rational, prec: u32) -> Approx {
    sin_pi_prec(&(q + rat(1, 2)), prec)
}

/// `tan(π q)`; `q − 1/2` must not be an integer.
pub fn tan_pi_prec(q: &Rational, prec: u32) -> Result<Approx> {
    if (q - rat(1, 2)).is_integer() {
        return Err(Error::Domain(format!("tan(π·{q}) is a pole")));
    }
    let p = prec + 16;
    let s = sin_pi_prec(q, p);
    let c = cos_pi_prec(q, p);
    Ok(s.div(&c)?.with_prec(prec))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElemFn {
    Sqrt,
    Exp,
    Log,
    PowInt(i64),
    SinPi,
    CosPi,
    TanPi,
}

#[derive(Debug, Clone)]
pub enum ElemArg {
    Exact(Rational),
    Ball(Approx),
}

/// Evaluates an elementary function with `abs_err ≤ 10^-digits`.
///
/// `SinPi`, `CosPi` and `TanPi` take the rational multiplier of π and
/// reject ball arguments.
pub fn elem(f: ElemFn, x: &ElemArg, digits: u32) -> Result<Approx> {
    match (f, x) {
        (ElemFn::Log, ElemArg::Exact(q)) if q.is_one() => return Ok(Approx::zero(64)),
        (ElemFn::SinPi | ElemFn::CosPi | ElemFn::TanPi, ElemArg::Ball(_)) => {
            return Err(Error::Domain("trigonometric functions take an exact multiplier of π".into()))
        }
        _ => {}
    }
    with_digits(digits, |prec| {
        let ball = |p: u32| match x {
            ElemArg::Exact(q) => Approx::from_rational(q, p),
            ElemArg::Ball(a) => a.clone().with_prec(p.max(a.prec())),
        };
        match f {
            ElemFn::Sqrt => ball(prec).sqrt(),
            ElemFn::Exp => exp(&ball(prec)),
            ElemFn::Log => match x {
                ElemArg::Exact(q) => log_rational(q, prec),
                ElemArg::Ball(_) => log(&ball(prec)),
            },
            ElemFn::PowInt(n) => ball(prec).pow_int(n),
            ElemFn::SinPi | ElemFn::CosPi | ElemFn::TanPi => {
                let ElemArg::Exact(q) = x else { unreachable!() };
                match f {
                    ElemFn::SinPi => Ok(sin_pi_prec(q, prec)),
                    ElemFn::CosPi => Ok(cos_pi_prec(q, prec)),
                    _ => tan_pi_prec(q, prec),
                }
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::approx::tolerance;

    // π to 100 digits.
    const PI_100: &str = "3.1415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679";

    fn assert_close(a: &Approx, b: &Approx, digits: u32) {
        let d = a.abs_diff(b);
        assert!(d.cmp_rational(&tolerance(digits)) != std::cmp::Ordering::Greater, "{a:?} vs {b:?}");
    }

    #[test]
    fn pi_two_ways() {
        let prec = 400;
        let a = pi(prec);
        let b = pi_chudnovsky(prec);
        assert!(a.overlaps(&b));
        assert_close(&a, &b, 100);
        assert_eq!(&a.to_decimal_string(105)[..101], &PI_100[..101]);
    }

    #[test]
    fn log_examples() {
        let z = elem(ElemFn::Log, &ElemArg::Exact(int(1)), 30).unwrap();
        assert!(z.is_exact_zero());
        assert!(elem(ElemFn::Log, &ElemArg::Exact(int(0)), 30).is_err());
        assert!(elem(ElemFn::Log, &ElemArg::Exact(int(-3)), 30).is_err());
        // ln 2 = 0.6931471805599453094172321214581765680755...
        let l = log_rational(&int(2), 200).unwrap();
        assert_eq!(l.to_decimal_string(40), "0.6931471805599453094172321214581765680755");
        // log 8 − log 9 = log(8/9)
        let a = log_rational(&rat(8, 9), 200).unwrap();
        let b = log_rational(&int(8), 200).unwrap().sub(&log_rational(&int(9), 200).unwrap());
        assert_close(&a, &b, 50);
        assert!(a.value().is_negative());
    }

    #[test]
    fn sin_pi_examples() {
        let one = elem(ElemFn::SinPi, &ElemArg::Exact(rat(1, 2)), 30).unwrap();
        assert!(one.contains_rational(&int(1)));
        let zero = elem(ElemFn::SinPi, &ElemArg::Exact(int(7)), 30).unwrap();
        assert!(zero.is_exact_zero());
        let half = elem(ElemFn::SinPi, &ElemArg::Exact(rat(1, 6)), 40).unwrap();
        assert!(half.contains_rational(&rat(1, 2)));
        let neg = elem(ElemFn::SinPi, &ElemArg::Exact(rat(-1, 6)), 40).unwrap();
        assert!(neg.contains_rational(&rat(-1, 2)));
    }

    #[test]
    fn tan_pi_third_is_sqrt3() {
        let t = elem(ElemFn::TanPi, &ElemArg::Exact(rat(1, 3)), 50).unwrap();
        // independent: integer square root of 3·10^120
        let s = (BigInt::from(3) * num_traits::pow(BigInt::from(10), 120)).sqrt();
        let s = Rational::new(s, num_traits::pow(BigInt::from(10), 60));
        let d = (t.value().to_rational() - s).abs();
        assert!(d < tolerance(50));
        assert!(elem(ElemFn::TanPi, &ElemArg::Exact(rat(1, 2)), 10).is_err());
        assert!(elem(ElemFn::TanPi, &ElemArg::Exact(rat(-3, 2)), 10).is_err());
    }

    #[test]
    fn exp_log_round_trip() {
        for q in [rat(1, 7), int(10), rat(123456, 7), rat(1, 1000000)] {
            let l = elem(ElemFn::Log, &ElemArg::Exact(q.clone()), 60).unwrap();
            let e = exp(&l.clone().with_prec(260)).unwrap();
            assert!(e.contains_rational(&q), "{q}");
        }
        let e = elem(ElemFn::Exp, &ElemArg::Exact(int(1)), 40).unwrap();
        assert_eq!(e.to_decimal_string(40), "2.7182818284590452353602874713526624977572");
    }

    #[test]
    fn pow_rational_matches_sqrt() {
        let x = Approx::from_rational(&rat(4, 5), 200);
        let a = pow_rational(&x, &rat(1, 2)).unwrap();
        let b = x.sqrt().unwrap();
        assert!(a.overlaps(&b));
        assert_close(&a, &b, 50);
    }
}
