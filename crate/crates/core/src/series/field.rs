//! Scalar domains the series engine evaluates over.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::rational::Rational;

/// Exact field operations; division reports a zero divisor instead of panicking.
pub trait Field: Clone + fmt::Debug {
    fn from_rational(q: &Rational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn divide(&self, other: &Self) -> Result<Self>;
    fn vanishes(&self) -> bool;

    fn zero_value() -> Self {
        Self::from_rational(&Rational::zero())
    }

    fn one_value() -> Self {
        Self::from_rational(&Rational::one())
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    fn powi(&self, e: i32) -> Result<Self> {
        let mut acc = Self::one_value();
        for _ in 0..e.unsigned_abs() {
            acc = acc.times(self);
        }
        if e < 0 {
            Self::one_value().divide(&acc)
        } else {
            Ok(acc)
        }
    }
}

impl Field for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn divide(&self, other: &Self) -> Result<Self> {
        if Zero::is_zero(other) {
            return Err(Error::DivisionByZero);
        }
        Ok(self / other)
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// A fraction kept unreduced. Denominators that divide one another are
/// combined without a gcd, so long products of linear factors stay cheap.
#[derive(Clone, Debug)]
pub struct Fraction {
    num: BigInt,
    den: BigInt,
}

impl Fraction {
    fn new(num: BigInt, den: BigInt) -> Self {
        if den.is_negative() {
            Fraction { num: -num, den: -den }
        } else {
            Fraction { num, den }
        }
    }

    /// `log2 |self|`, up to one.
    pub fn log2_estimate(&self) -> i64 {
        self.num.bits() as i64 - self.den.bits() as i64
    }

    pub fn den_bits(&self) -> u64 {
        self.den.bits()
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.num.clone(), self.den.clone())
    }

    /// Cancels common factors.
    pub fn reduce(&mut self) {
        let g = self.num.gcd(&self.den);
        if !g.is_one() {
            self.num /= &g;
            self.den /= &g;
        }
    }

    /// `other.den / self.den` when it is an integer.
    fn scale_to(&self, other: &Self) -> Option<BigInt> {
        if other.den.bits() < self.den.bits() {
            return None;
        }
        let (q, r) = other.den.div_rem(&self.den);
        r.is_zero().then_some(q)
    }
}

impl Field for Fraction {
    fn from_rational(q: &Rational) -> Self {
        Fraction { num: q.numer().clone(), den: q.denom().clone() }
    }
    fn plus(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Fraction { num: &self.num + &other.num, den: self.den.clone() };
        }
        if let Some(q) = self.scale_to(other) {
            return Fraction { num: &self.num * q + &other.num, den: other.den.clone() };
        }
        if let Some(q) = other.scale_to(self) {
            return Fraction { num: &other.num * q + &self.num, den: self.den.clone() };
        }
        Fraction { num: &self.num * &other.den + &other.num * &self.den, den: &self.den * &other.den }
    }
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }
    fn times(&self, other: &Self) -> Self {
        Fraction { num: &self.num * &other.num, den: &self.den * &other.den }
    }
    fn negate(&self) -> Self {
        Fraction { num: -&self.num, den: self.den.clone() }
    }
    fn divide(&self, other: &Self) -> Result<Self> {
        if other.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Fraction::new(&self.num * &other.den, &self.den * &other.num))
    }
    fn vanishes(&self) -> bool {
        self.num.is_zero()
    }
}

/// First-order dual number `val + der·ε`, `ε² = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dual<T> {
    pub val: T,
    pub der: T,
}

impl<T: Field> Dual<T> {
    pub fn new(val: T, der: T) -> Self {
        Dual { val, der }
    }

    pub fn constant(val: T) -> Self {
        Dual { val, der: T::zero_value() }
    }

    pub fn variable(val: T) -> Self {
        Dual { val, der: T::one_value() }
    }
}

impl<T: Field> Field for Dual<T> {
    fn from_rational(q: &Rational) -> Self {
        Dual::constant(T::from_rational(q))
    }
    fn plus(&self, o: &Self) -> Self {
        Dual::new(self.val.plus(&o.val), self.der.plus(&o.der))
    }
    fn minus(&self, o: &Self) -> Self {
        Dual::new(self.val.minus(&o.val), self.der.minus(&o.der))
    }
    fn times(&self, o: &Self) -> Self {
        Dual::new(self.val.times(&o.val), self.der.times(&o.val).plus(&self.val.times(&o.der)))
    }
    fn negate(&self) -> Self {
        Dual::new(self.val.negate(), self.der.negate())
    }
    fn divide(&self, o: &Self) -> Result<Self> {
        let val = self.val.divide(&o.val)?;
        // (u/v)' = (u' − (u/v)·v')/v
        let der = self.der.minus(&val.times(&o.der)).divide(&o.val)?;
        Ok(Dual::new(val, der))
    }
    fn vanishes(&self) -> bool {
        self.val.vanishes() && self.der.vanishes()
    }
}

/// `(x)_m` over dual numbers; the derivative comes from the product rule.
pub fn dual_pochhammer(x: &Dual<Rational>, m: u64) -> Dual<Rational> {
    let mut acc = Dual::<Rational>::one_value();
    let mut f = x.clone();
    for _ in 0..m {
        acc = acc.times(&f);
        f.val += Rational::one();
    }
    acc
}

/// Dense polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn x() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn add_poly(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let z = Rational::zero();
        Poly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect())
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul_poly(&self, o: &Poly) -> Poly {
        if self.0.is_empty() || o.0.is_empty() {
            return Poly(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// `Σ |c_i| K^(i−deg)`: for `k ≥ K ≥ 1`, `|p(k)| ≤ this · k^deg`.
    fn upper_coefficient(&self, big_k: &Rational) -> Rational {
        let d = self.0.len() as i32 - 1;
        self.0
            .iter()
            .enumerate()
            .map(|(i, c)| c.abs() * big_k.pow(i as i32 - d))
            .sum()
    }

    /// `|lead| − Σ_{i<deg} |c_i| K^(i−deg)`: for `k ≥ K ≥ 1`, `|p(k)| ≥ this · k^deg`.
    fn lower_coefficient(&self, big_k: &Rational) -> Rational {
        let d = self.0.len() as i32 - 1;
        let mut out = self.0[d as usize].abs();
        for (i, c) in self.0.iter().enumerate().take(d as usize) {
            out -= c.abs() * big_k.pow(i as i32 - d);
        }
        out
    }
}

/// Quotient of polynomials; used to bound prefactors for large `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc {
    pub num: Poly,
    pub den: Poly,
}

impl RatFunc {
    pub fn x() -> Self {
        RatFunc { num: Poly::x(), den: Poly::constant(Rational::one()) }
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        Field::divide(&self.num.eval(x), &self.den.eval(x))
    }

    /// `(A, e)` with `|f(k)| ≤ A·k^e` for every real `k ≥ K`, when
    /// `K ≥ 1` is large enough for the denominator to be dominated by
    /// its leading term; `None` otherwise.
    pub fn growth_bound(&self, big_k: &Rational) -> Option<(Rational, i64)> {
        if big_k < &Rational::one() {
            return None;
        }
        let Some(dp) = self.num.degree() else {
            return Some((Rational::zero(), 0));
        };
        let dq = self.den.degree()?;
        let low = self.den.lower_coefficient(big_k);
        if !low.is_positive() {
            return None;
        }
        Some((self.num.upper_coefficient(big_k) / low, dp as i64 - dq as i64))
    }
}

impl Field for RatFunc {
    fn from_rational(q: &Rational) -> Self {
        RatFunc { num: Poly::constant(q.clone()), den: Poly::constant(Rational::one()) }
    }
    fn plus(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RatFunc { num: self.num.add_poly(&o.num), den: self.den.clone() };
        }
        RatFunc {
            num: self.num.mul_poly(&o.den).add_poly(&o.num.mul_poly(&self.den)),
            den: self.den.mul_poly(&o.den),
        }
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }
    fn times(&self, o: &Self) -> Self {
        RatFunc { num: self.num.mul_poly(&o.num), den: self.den.mul_poly(&o.den) }
    }
    fn negate(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn divide(&self, o: &Self) -> Result<Self> {
        if o.num.degree().is_none() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc { num: self.num.mul_poly(&o.den), den: self.den.mul_poly(&o.num) })
    }
    fn vanishes(&self) -> bool {
        self.num.degree().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{int, rat};
    use crate::special::{gen_harmonic, pochhammer};
    use proptest::prelude::*;

    #[test]
    fn dual_pochhammer_examples() {
        // (1+x)_3 at x = 1
        let one_plus_x = Dual::<Rational>::one_value().plus(&Dual::variable(int(1)));
        let d = dual_pochhammer(&one_plus_x, 3);
        assert_eq!((d.val, d.der), (int(24), int(26)));
        let d = dual_pochhammer(&Dual::variable(int(1)), 3);
        assert_eq!((d.val, d.der), (int(6), int(11)));
        let d = dual_pochhammer(&Dual::variable(int(5)), 0);
        assert_eq!((d.val, d.der), (int(1), int(0)));
        let d = dual_pochhammer(&Dual::variable(rat(1, 2)), 2);
        assert_eq!((d.val, d.der), (rat(3, 4), int(2)));
    }

    #[test]
    fn dual_division() {
        // d/dx (x²+1)/x at x = 2 is 1 − 1/x² = 3/4
        let x = Dual::variable(int(2));
        let f = x.times(&x).plus(&Dual::one_value()).divide(&x).unwrap();
        assert_eq!(f.val, rat(5, 2));
        assert_eq!(f.der, rat(3, 4));
        assert!(x.divide(&Dual::zero_value()).is_err());
    }

    #[test]
    fn growth_bound_dominates() {
        // (20k²+8k+1)/(k+3)
        let k = RatFunc::x();
        let num = k.times(&k).times(&RatFunc::from_i64(20)).plus(&k.times(&RatFunc::from_i64(8))).plus(&RatFunc::one_value());
        let f = num.divide(&k.plus(&RatFunc::from_i64(3))).unwrap();
        let (a, e) = f.growth_bound(&int(10)).unwrap();
        assert_eq!(e, 1);
        for kk in [10, 11, 50, 1000] {
            let v = f.eval(&int(kk)).unwrap().abs();
            assert!(v <= &a * int(kk));
        }
        // k − 5 in the denominator is not dominated at K = 2
        let g = RatFunc::one_value().divide(&k.minus(&RatFunc::from_i64(5))).unwrap();
        assert!(g.growth_bound(&int(2)).is_none());
        assert!(g.growth_bound(&int(6)).is_some());
    }

    proptest! {
        #[test]
        fn dual_law(num in -60i64..60, den in 1i64..8, m in 0u64..=50) {
            let x = rat(num, den);
            let d = dual_pochhammer(&Dual::variable(x.clone()), m);
            prop_assert_eq!(&d.val, &pochhammer(&x, m));
            // the law is stated for x off the poles of H_m(x − 1)
            if let Ok(h) = gen_harmonic(m, 1, &(&x - int(1))) {
                prop_assert_eq!(d.der, pochhammer(&x, m) * h);
            }
        }
    }

    #[test]
    fn fraction_keeps_divisible_denominators() {
        let mut s = Fraction::zero_value();
        for i in 1..=20 {
            s = s.plus(&Fraction::one_value().divide(&Fraction::from_i64(i)).unwrap());
        }
        assert_eq!(s.to_rational(), crate::special::harmonic(20));
        assert!(s.den_bits() <= 62);
        s.reduce();
        assert_eq!(s.den_bits(), crate::special::harmonic(20).denom().bits());
    }

    proptest! {
        #[test]
        fn fraction_agrees_with_rational(xs in prop::collection::vec((-50i64..50, 1i64..30), 1..12)) {
            let mut f = Fraction::one_value();
            let mut q = Rational::one();
            for (i, (n, d)) in xs.iter().enumerate() {
                let v = rat(*n, *d);
                let fv = Fraction::from_rational(&v);
                match i % 4 {
                    0 => { f = f.plus(&fv); q += &v; }
                    1 => { f = f.times(&fv); q *= &v; }
                    2 => { f = f.minus(&fv); q -= &v; }
                    _ => match f.divide(&fv) {
                        Ok(r) => { f = r; q /= &v; }
                        Err(_) => prop_assert!(v.is_zero()),
                    },
                }
                prop_assert_eq!(f.to_rational(), q.clone());
                prop_assert!((f.log2_estimate() - log2(&q)).abs() <= 1 || q.is_zero());
            }
        }
    }

    fn log2(q: &Rational) -> i64 {
        crate::numeric::rational::log2_estimate(q)
    }
}
