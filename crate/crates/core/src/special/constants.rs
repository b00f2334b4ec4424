//! Named constants used by closed forms.
//!
//! π, Catalan's G and Γ(1/4) each have a primary and a secondary algorithm
//! that share no code beyond the arithmetic kernel. Catalan's constant never
//! goes through the polygamma evaluator.

use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

use super::combinat::binomial;
use super::gamma::gamma_prec;
use super::polygamma::polygamma_prec;
use crate::error::{Error, Result};
use crate::numeric::approx::{with_digits, Approx};
use crate::numeric::elem;
use crate::numeric::rational::{format_rational, int, is_nonpositive_integer, parse_rational, rat, Rational};

/// Serialized and parsed as its display form, e.g. `pi`, `log(8/9)`,
/// `polygamma(1,1/3)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstantName {
    Pi,
    Catalan,
    GammaQuarter,
    SqrtPi,
    Sqrt(Rational),
    Log(Rational),
    PolygammaValue(u32, Rational),
    GammaValue(Rational),
    SinPi(Rational),
    CosPi(Rational),
    TanPi(Rational),
    /// `base^exponent` for a positive rational base.
    PowRat(Rational, Rational),
}

impl fmt::Display for ConstantName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ConstantName::*;
        let r = format_rational;
        match self {
            Pi => write!(f, "pi"),
            Catalan => write!(f, "catalan"),
            GammaQuarter => write!(f, "gamma_quarter"),
            SqrtPi => write!(f, "sqrt_pi"),
            Sqrt(q) => write!(f, "sqrt({})", r(q)),
            Log(q) => write!(f, "log({})", r(q)),
            PolygammaValue(n, q) => write!(f, "polygamma({n},{})", r(q)),
            GammaValue(q) => write!(f, "gamma({})", r(q)),
            SinPi(q) => write!(f, "sin_pi({})", r(q)),
            CosPi(q) => write!(f, "cos_pi({})", r(q)),
            TanPi(q) => write!(f, "tan_pi({})", r(q)),
            PowRat(b, e) => write!(f, "pow({},{})", r(b), r(e)),
        }
    }
}

impl FromStr for ConstantName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use ConstantName::*;
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown constant `{s}`"));
        match s.to_ascii_lowercase().as_str() {
            "pi" => return Ok(Pi),
            "catalan" | "g" => return Ok(Catalan),
            "gamma_quarter" => return Ok(GammaQuarter),
            "sqrt_pi" => return Ok(SqrtPi),
            _ => {}
        }
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        let args: Vec<&str> = inner.split(',').map(str::trim).collect();
        let one = || -> Result<Rational> {
            match args.as_slice() {
                [a] => parse_rational(a),
                _ => Err(bad()),
            }
        };
        match head.trim() {
            "sqrt" => Ok(Sqrt(one()?)),
            "log" => Ok(Log(one()?)),
            "gamma" => Ok(GammaValue(one()?)),
            "sin_pi" => Ok(SinPi(one()?)),
            "cos_pi" => Ok(CosPi(one()?)),
            "tan_pi" => Ok(TanPi(one()?)),
            "polygamma" => match args.as_slice() {
                [n, q] => Ok(PolygammaValue(n.parse().map_err(|_| bad())?, parse_rational(q)?)),
                _ => Err(bad()),
            },
            "pow" => match args.as_slice() {
                [b, e] => Ok(PowRat(parse_rational(b)?, parse_rational(e)?)),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }
}

impl Serialize for ConstantName {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ConstantName {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

impl ConstantName {
    /// Checks the argument constraints of the variant.
    pub fn check_domain(&self) -> Result<()> {
        use ConstantName::*;
        match self {
            Sqrt(q) if q.is_negative() => Err(Error::Domain(format!("sqrt of negative {q}"))),
            Log(q) if !q.is_positive() => Err(Error::Domain(format!("log of nonpositive {q}"))),
            PowRat(b, _) if !b.is_positive() => {
                Err(Error::Domain(format!("power of nonpositive base {b}")))
            }
            PolygammaValue(_, q) | GammaValue(q) if is_nonpositive_integer(q) => {
                Err(Error::Pole(format!("pole at {q}")))
            }
            TanPi(q) if (q - rat(1, 2)).is_integer() => Err(Error::Domain(format!("tan(π·{q}) is a pole"))),
            _ => Ok(()),
        }
    }

    /// Exact value when one exists without transcendental work.
    pub fn exact_value(&self) -> Option<Rational> {
        use ConstantName::*;
        match self {
            Log(q) if q.is_one() => Some(Rational::zero()),
            Sqrt(q) => {
                let (n, d) = (q.numer().sqrt(), q.denom().sqrt());
                (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
            }
            GammaValue(q) if q.is_integer() && q.is_positive() => {
                let n = q.to_integer();
                let mut acc = BigInt::one();
                let mut i = BigInt::one();
                while i < n {
                    acc *= &i;
                    i += 1;
                }
                Some(Rational::from_integer(acc))
            }
            SinPi(q) if q.is_integer() => Some(Rational::zero()),
            CosPi(q) if (q - rat(1, 2)).is_integer() => Some(Rational::zero()),
            TanPi(q) if q.is_integer() => Some(Rational::zero()),
            PowRat(b, e) if e.is_integer() => {
                let e: i64 = e.to_integer().try_into().ok()?;
                crate::numeric::rational::pow(b, e).ok()
            }
            _ => None,
        }
    }
}

fn cached(slot: &'static OnceLock<Mutex<Option<Approx>>>, prec: u32, f: fn(u32) -> Approx) -> Approx {
    let m = slot.get_or_init(|| Mutex::new(None));
    let mut g = m.lock().expect("constant cache poisoned");
    if let Some(v) = g.as_ref() {
        if v.prec() >= prec {
            return v.clone();
        }
    }
    let v = f(prec);
    *g = Some(v.clone());
    v
}

/// Primary π (Machin), memoized at the highest precision seen.
pub fn pi_prec(prec: u32) -> Approx {
    static SLOT: OnceLock<Mutex<Option<Approx>>> = OnceLock::new();
    cached(&SLOT, prec, elem::pi)
}

/// Secondary π (Chudnovsky).
pub fn pi_secondary(prec: u32) -> Approx {
    elem::pi_chudnovsky(prec)
}

/// Catalan's constant by Broadhurst's rational series
/// `G = (3/2) Σ 16^-k P_k − (1/4) Σ 4096^-k Q_k`.
pub fn catalan_prec(prec: u32) -> Approx {
    static SLOT: OnceLock<Mutex<Option<Approx>>> = OnceLock::new();
    cached(&SLOT, prec, catalan_broadhurst)
}

fn catalan_broadhurst(prec: u32) -> Approx {
    let p = prec + 16;
    let sq = |k: i64, r: i64| rat(1, (8 * k + r) * (8 * k + r));
    // (coefficient, residue) pairs
    let fast = [(rat(1, 1), 1), (rat(-1, 1), 2), (rat(1, 2), 3), (rat(-1, 4), 5), (rat(1, 4), 6), (rat(-1, 8), 7)];
    let slow = [(rat(1, 1), 1), (rat(1, 2), 2), (rat(1, 8), 3), (rat(-1, 64), 5), (rat(-1, 128), 6), (rat(-1, 512), 7)];
    let series = |coeffs: &[(Rational, i64)], base: i64, coeff_sum: i64| {
        let mut s = Rational::zero();
        let mut scale = Rational::one();
        let mut k = 0i64;
        loop {
            // |bracket| ≤ coeff_sum/(8k+1)², and the powers of 1/base shrink geometrically
            let bound = &scale * int(coeff_sum) * sq(k, 1) * rat(base, base - 1);
            if bound.numer().bits() as i64 - (bound.denom().bits() as i64) < -(p as i64) - 8 {
                return (s, bound);
            }
            let bracket: Rational = coeffs.iter().map(|(c, r)| c * sq(k, *r)).sum();
            s += &scale * bracket;
            scale /= int(base);
            k += 1;
        }
    };
    let (a, ta) = series(&fast, 16, 4);
    let (b, tb) = series(&slow, 4096, 2);
    let g = a * rat(3, 2) - b * rat(1, 4);
    let tail = ta * rat(3, 2) + tb * rat(1, 4);
    Approx::from_rational(&g, p).add_err_rational(&tail).with_prec(prec)
}

/// Catalan's constant by Ramanujan's
/// `G = (π/8) log(2+√3) + (3/8) Σ 1/((2n+1)² C(2n,n))`.
pub fn catalan_secondary(prec: u32) -> Approx {
    let p = prec + 16;
    let mut s = Rational::zero();
    let mut n: u64 = 0;
    let tail = loop {
        let t = Rational::new(
            BigInt::one(),
            BigInt::from((2 * n + 1) * (2 * n + 1)) * binomial(2 * n, n),
        );
        if n > 0 && t.numer().bits() as i64 - (t.denom().bits() as i64) < -(p as i64) - 8 {
            // term ratio < 1/4
            break t * rat(4, 3);
        }
        s += t;
        n += 1;
    };
    let sum = Approx::from_rational(&s, p).add_err_rational(&tail);
    let root3 = Approx::from_i64(3, p).sqrt().expect("positive");
    let log_part = elem::log(&root3.add(&Approx::from_i64(2, p))).expect("positive argument");
    let pi = elem::pi_chudnovsky(p);
    pi.mul(&log_part)
        .mul_rational(&rat(1, 8))
        .add(&sum.mul_rational(&rat(3, 8)))
        .with_prec(prec)
}

/// Γ(1/4) from `Γ(1/4)² = (2π)^(3/2) / AGM(1, √2)`.
pub fn gamma_quarter_prec(prec: u32) -> Approx {
    static SLOT: OnceLock<Mutex<Option<Approx>>> = OnceLock::new();
    cached(&SLOT, prec, gamma_quarter_agm)
}

fn gamma_quarter_agm(prec: u32) -> Approx {
    let p = prec + 32;
    let mut a = Approx::one(p);
    let mut b = Approx::from_i64(2, p).sqrt().expect("positive");
    loop {
        let gap = a.abs_diff(&b);
        if gap.msb().map_or(true, |m| m < -(p as i64) - 4) {
            break;
        }
        let next_a = a.add(&b).mul_pow2(-1);
        let next_b = a.mul(&b).sqrt().expect("positive");
        a = next_a;
        b = next_b;
    }
    // the exact means bracket the limit
    let half_gap = a.abs_diff(&b).mul_pow2(-1);
    let agm = a.add(&b).mul_pow2(-1).add_err(&half_gap);
    let two_pi = pi_prec(p).mul_pow2(1);
    let num = two_pi.mul(&two_pi.sqrt().expect("positive"));
    num.div(&agm).expect("agm is positive").sqrt().expect("positive").with_prec(prec)
}

/// Γ(1/4) from the general Stirling-based gamma.
pub fn gamma_quarter_secondary(prec: u32) -> Approx {
    gamma_prec(&rat(1, 4), prec).expect("1/4 is not a pole")
}

/// Value of a constant at working precision `prec`.
pub fn constant_prec(name: &ConstantName, prec: u32) -> Result<Approx> {
    use ConstantName::*;
    name.check_domain()?;
    if let Some(q) = name.exact_value() {
        return Ok(Approx::from_rational(&q, prec));
    }
    match name {
        Pi => Ok(pi_prec(prec)),
        Catalan => Ok(catalan_prec(prec)),
        GammaQuarter => Ok(gamma_quarter_prec(prec)),
        SqrtPi => pi_prec(prec + 4).sqrt(),
        Sqrt(q) => Approx::from_rational(q, prec + 4).sqrt(),
        Log(q) => elem::log_rational(q, prec),
        PolygammaValue(n, q) => polygamma_prec(*n, q, prec),
        GammaValue(q) => gamma_prec(q, prec),
        SinPi(q) => Ok(elem::sin_pi_prec(q, prec)),
        CosPi(q) => Ok(elem::cos_pi_prec(q, prec)),
        TanPi(q) => elem::tan_pi_prec(q, prec),
        PowRat(b, e) => elem::pow_rational(&Approx::from_rational(b, prec + 16), e),
    }
}

/// Value of a constant with `abs_err ≤ 10^-digits`.
pub fn constant(name: &ConstantName, digits: u32) -> Result<Approx> {
    name.check_domain()?;
    if let Some(q) = name.exact_value() {
        if q.is_zero() {
            return Ok(Approx::zero(64));
        }
    }
    with_digits(digits, |prec| constant_prec(name, prec))
}

/// Both algorithms for the constants that have two; `None` otherwise.
pub fn cross_check(name: &ConstantName, digits: u32) -> Option<Result<(Approx, Approx)>> {
    let secondary: fn(u32) -> Approx = match name {
        ConstantName::Pi => pi_secondary,
        ConstantName::Catalan => catalan_secondary,
        ConstantName::GammaQuarter => gamma_quarter_secondary,
        _ => return None,
    };
    Some((|| {
        let a = constant(name, digits)?;
        let b = with_digits(digits, |p| Ok(secondary(p)))?;
        Ok((a, b))
    })())
}
