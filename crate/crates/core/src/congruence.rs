//! Supercongruences mod p² between binomial sums with Legendre-symbol
//! factors.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Residues modulo `p²` for a prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModRing {
    p: u64,
    m: u64,
}

impl ModRing {
    pub fn new(p: u64) -> Result<ModRing> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        let m = p.checked_mul(p).ok_or_else(|| Error::Domain(format!("{p}² overflows")))?;
        Ok(ModRing { p, m })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn reduce(&self, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(self.m)).to_u64().expect("residue fits")
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.m as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.m as u128) as u64
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.m as u128) as u64
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.m - a % self.m) % self.m
    }

    /// Inverse of a unit; `None` when `p | a`.
    pub fn inv(&self, a: u64) -> Option<u64> {
        let g = (a as i128).extended_gcd(&(self.m as i128));
        (g.gcd == 1).then(|| g.x.rem_euclid(self.m as i128) as u64)
    }
}

/// `(a/p)` by Euler's criterion.
pub fn legendre(a: i64, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not an odd prime")));
    }
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    let mut e = (p - 1) / 2;
    let (mut base, mut acc) = (r as u128, 1u128);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    Ok(if acc == 1 { 1 } else { -1 })
}

/// Integer coefficient sequence summed on both sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Binomials {
    /// `C(2k,k) C(3k,k)`.
    TwoThree,
    /// `C(2k,k) C(4k,2k)`.
    TwoFour,
}

impl Binomials {
    /// Exact terms for `k = 0..n`, by exact ratio updates.
    pub fn terms(self, n: u64) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(n as usize);
        let (mut c2, mut c3, mut c4) = (BigInt::one(), BigInt::one(), BigInt::one());
        for k in 0..n {
            out.push(match self {
                Binomials::TwoThree => &c2 * &c3,
                Binomials::TwoFour => &c2 * &c4,
            });
            let b = |x: u64| BigInt::from(x);
            c2 = c2 * b(2 * k + 1) * b(2 * k + 2) / (b(k + 1) * b(k + 1));
            match self {
                Binomials::TwoThree => {
                    c3 = c3 * b(3 * k + 1) * b(3 * k + 2) * b(3 * k + 3) / (b(k + 1) * b(2 * k + 1) * b(2 * k + 2));
                }
                Binomials::TwoFour => {
                    let d = b(2 * k + 1) * b(2 * k + 2);
                    c4 = c4 * b(4 * k + 1) * b(4 * k + 2) * b(4 * k + 3) * b(4 * k + 4) / (&d * &d);
                }
            }
        }
        out
    }
}

/// Legendre-symbol factor on the right-hand side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symbol {
    /// `(p/3)`.
    POverThree,
    /// `(−2/p)`.
    MinusTwoOverP,
}

impl Symbol {
    pub fn value(self, p: u64) -> Result<i8> {
        match self {
            Symbol::POverThree => legendre(p as i64, 3),
            Symbol::MinusTwoOverP => legendre(-2, p),
        }
    }
}

/// `Σ_{k<p} t_k/lhs_base^k ≡ (symbol) Σ_{k<p} t_k/rhs_base^k (mod p²)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Supercongruence {
    pub which: u8,
    pub binomials: Binomials,
    pub lhs_base: i64,
    pub rhs_base: i64,
    pub symbol: Symbol,
}

pub const SUPERCONGRUENCES: [Supercongruence; 4] = [
    Supercongruence { which: 1, binomials: Binomials::TwoThree, lhs_base: -216, rhs_base: 24, symbol: Symbol::POverThree },
    Supercongruence { which: 2, binomials: Binomials::TwoFour, lhs_base: -192, rhs_base: 48, symbol: Symbol::MinusTwoOverP },
    Supercongruence { which: 3, binomials: Binomials::TwoFour, lhs_base: -4032, rhs_base: 63, symbol: Symbol::MinusTwoOverP },
    Supercongruence { which: 4, binomials: Binomials::TwoFour, lhs_base: 576, rhs_base: 72, symbol: Symbol::MinusTwoOverP },
];

pub fn supercongruence(which: u8) -> Result<&'static Supercongruence> {
    SUPERCONGRUENCES
        .iter()
        .find(|c| c.which == which)
        .ok_or_else(|| Error::Parse(format!("no supercongruence {which}; expected 1..4")))
}

impl fmt::Display for Supercongruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = match self.binomials {
            Binomials::TwoThree => "C(2k,k)C(3k,k)",
            Binomials::TwoFour => "C(2k,k)C(4k,2k)",
        };
        let s = match self.symbol {
            Symbol::POverThree => "(p/3)",
            Symbol::MinusTwoOverP => "(-2/p)",
        };
        write!(f, "sum_{{k<p}} {t}/({})^k = {s} sum_{{k<p}} {t}/{}^k (mod p^2)", self.lhs_base, self.rhs_base)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckResult {
    Holds,
    Fails,
    Inapplicable,
}

impl CheckResult {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckResult::Holds => "holds",
            CheckResult::Fails => "fails",
            CheckResult::Inapplicable => "inapplicable",
        }
    }
}

/// One check with the residues of both sums (absent when inapplicable).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceOutcome {
    pub which: u8,
    pub p: u64,
    pub modulus: u64,
    pub lhs: Option<u64>,
    pub rhs: Option<u64>,
    pub symbol: Option<i8>,
    pub result: CheckResult,
    pub elapsed_ms: u64,
}

fn power_sum(ring: &ModRing, terms: &[BigInt], base: i64) -> Option<u64> {
    let step = ring.inv(ring.from_i64(base))?;
    let mut pow = 1;
    let mut acc = 0;
    for t in terms {
        acc = ring.add(acc, ring.mul(ring.reduce(t), pow));
        pow = ring.mul(pow, step);
    }
    Some(acc)
}

impl Supercongruence {
    pub fn applies(&self, p: u64) -> bool {
        p > 3 && is_prime(p) && self.lhs_base % p as i64 != 0 && self.rhs_base % p as i64 != 0
    }

    pub fn check(&self, p: u64) -> CongruenceOutcome {
        let mut out = CongruenceOutcome { which: self.which, p, modulus: 0, lhs: None, rhs: None, symbol: None, result: CheckResult::Inapplicable, elapsed_ms: 0 };
        if !self.applies(p) {
            return out;
        }
        let start = Instant::now();
        let ring = ModRing::new(p).expect("prime checked");
        let terms = self.binomials.terms(p);
        let lhs = power_sum(&ring, &terms, self.lhs_base).expect("unit base");
        let rhs = power_sum(&ring, &terms, self.rhs_base).expect("unit base");
        let sym = self.symbol.value(p).expect("odd prime");
        let signed = match sym {
            1 => rhs,
            -1 => ring.neg(rhs),
            _ => 0,
        };
        out.modulus = ring.modulus();
        out.lhs = Some(lhs);
        out.rhs = Some(rhs);
        out.symbol = Some(sym);
        out.elapsed_ms = start.elapsed().as_millis() as u64;
        out.result = if lhs == signed { CheckResult::Holds } else { CheckResult::Fails };
        out
    }
}

/// Checks congruence `which` (1..4) at `p`.
pub fn supercongruence_check(which: u8, p: u64) -> Result<CheckResult> {
    Ok(supercongruence(which)?.check(p).result)
}

/// Every applicable `(which, p)` with `p ≤ pmax`, ordered by `p` then
/// `which`. `only` restricts to one congruence.
pub fn scan(pmax: u64, only: Option<u8>) -> Result<Vec<CongruenceOutcome>> {
    let chosen: Vec<&Supercongruence> = match only {
        Some(w) => vec![supercongruence(w)?],
        None => SUPERCONGRUENCES.iter().collect(),
    };
    let jobs: Vec<(u64, &Supercongruence)> = (5..=pmax)
        .filter(|&p| is_prime(p))
        .flat_map(|p| chosen.iter().filter(move |c| c.applies(p)).map(move |c| (p, *c)))
        .collect();
    Ok(jobs.par_iter().map(|(p, c)| c.check(*p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::combinat::binomial;
    use proptest::prelude::*;

    const PRIMES: [u64; 20] = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 199];

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(2, 7).unwrap(), 1);
        assert_eq!(legendre(13, 13).unwrap(), 0);
        assert_eq!(legendre(-2, 5).unwrap(), -1);
        assert!(legendre(3, 9).is_err());
        assert!(legendre(3, 2).is_err());
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(9973) && !is_prime(9971));
    }

    #[test]
    fn modular_inverse() {
        let r = ModRing::new(7).unwrap();
        assert_eq!(r.mul(r.inv(24).unwrap(), 24), 1);
        assert_eq!(r.inv(14), None);
        assert!(ModRing::new(15).is_err());
    }

    #[test]
    fn terms_match_binomials() {
        let a = Binomials::TwoThree.terms(40);
        let b = Binomials::TwoFour.terms(40);
        for k in 0..40u64 {
            assert_eq!(a[k as usize], binomial(2 * k, k) * binomial(3 * k, k));
            assert_eq!(b[k as usize], binomial(2 * k, k) * binomial(4 * k, 2 * k));
        }
    }

    // Residues from an independent big-integer computation.
    #[test]
    fn frozen_residues() {
        let c = SUPERCONGRUENCES[0].check(5);
        assert_eq!((c.lhs, c.rhs, c.symbol, c.result), (Some(20), Some(5), Some(-1), CheckResult::Holds));
        let c = SUPERCONGRUENCES[1].check(11);
        assert_eq!((c.lhs, c.rhs, c.symbol), (Some(110), Some(110), Some(1)));
        let c = SUPERCONGRUENCES[3].check(13);
        assert_eq!((c.lhs, c.rhs, c.symbol, c.result), (Some(137), Some(32), Some(-1), CheckResult::Holds));
    }

    #[test]
    fn applicability() {
        assert_eq!(supercongruence_check(1, 5).unwrap(), CheckResult::Holds);
        assert_eq!(supercongruence_check(2, 3).unwrap(), CheckResult::Inapplicable);
        assert_eq!(supercongruence_check(3, 7).unwrap(), CheckResult::Inapplicable);
        assert_eq!(supercongruence_check(1, 25).unwrap(), CheckResult::Inapplicable);
        assert!(supercongruence_check(5, 7).is_err());
    }

    #[test]
    fn scans() {
        let r = scan(50, None).unwrap();
        assert!(r.iter().all(|c| c.result == CheckResult::Holds));
        assert!(!r.iter().any(|c| c.which == 3 && c.p == 7));
        assert_eq!(scan(5, None).unwrap().len(), 4);
        assert!(scan(4, None).unwrap().is_empty());
        let only: Vec<u64> = scan(20, Some(3)).unwrap().iter().map(|c| c.p).collect();
        assert_eq!(only, vec![5, 11, 13, 17, 19]);
    }

    #[test]
    fn wrong_sign_is_detected() {
        for p in [5u64, 13, 29] {
            let c = SUPERCONGRUENCES[1].check(p);
            let r = ModRing::new(p).unwrap();
            assert_ne!(c.lhs.unwrap(), r.neg(r.mul(c.rhs.unwrap(), r.from_i64(c.symbol.unwrap() as i64))));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn legendre_is_multiplicative(a in -10_000i64..10_000, b in -10_000i64..10_000, i in 0usize..PRIMES.len()) {
            let p = PRIMES[i];
            prop_assert_eq!(legendre(a, p).unwrap() * legendre(b, p).unwrap(), legendre(a * b, p).unwrap());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn reduction_commutes_with_products(i in 0usize..PRIMES.len(), k in 0u64..200) {
            let p = PRIMES[i];
            let k = k % p;
            let r = ModRing::new(p).unwrap();
            let (x, y) = (binomial(2 * k, k), binomial(4 * k, 2 * k));
            prop_assert_eq!(r.mul(r.reduce(&x), r.reduce(&y)), r.reduce(&(&x * &y)));
        }
    }
}
