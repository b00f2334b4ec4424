//! Exact combinatorial quantities: binomials, shifted factorials and
//! generalized harmonic numbers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::rational::{int, pow, Rational};

/// `C(n, k)` by the multiplicative formula; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 1..=k {
        c = c * BigInt::from(n - k + i) / BigInt::from(i);
    }
    c
}

/// Shifted factorial `(x)_m = x (x+1) ⋯ (x+m−1)`, `(x)_0 = 1`.
pub fn pochhammer(x: &Rational, m: u64) -> Rational {
    let mut acc = Rational::one();
    let mut f = x.clone();
    for _ in 0..m {
        acc *= &f;
        f += Rational::one();
    }
    acc
}

/// `H_n^(ℓ)(x) = Σ_{k=1}^n 1/(x+k)^ℓ`.
pub fn gen_harmonic(n: u64, order: u32, x: &Rational) -> Result<Rational> {
    let mut s = Rational::zero();
    let mut t = x.clone();
    for _ in 0..n {
        t += Rational::one();
        if t.is_zero() {
            return Err(Error::Pole(format!("H_{n}^({order})({x}) has the pole x + k = 0")));
        }
        s += pow(&t, -(order as i64))?;
    }
    Ok(s)
}

/// Classical `H_n = H_n^(1)(0)`.
pub fn harmonic(n: u64) -> Rational {
    gen_harmonic(n, 1, &int(0)).expect("no poles at x = 0")
}

/// `H_{mk}^(ℓ)(x)`, the harmonic atom appearing in series weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicKind {
    pub order: u32,
    pub offset: Rational,
    pub multiplier: u32,
}

impl HarmonicKind {
    pub fn new(order: u32, offset: Rational, multiplier: u32) -> Self {
        assert!(order >= 1 && multiplier >= 1);
        HarmonicKind { order, offset, multiplier }
    }

    pub fn at(&self, k: u64) -> Result<Rational> {
        gen_harmonic(self.multiplier as u64 * k, self.order, &self.offset)
    }
}
