//! Digamma and polygamma functions at rational arguments.
//!
//! `ψ^(n)(q)` is reduced to `ψ^(n)(q+N)` with the exact recurrence
//! `ψ^(n)(x+1) = ψ^(n)(x) + (−1)^n n!/x^(n+1)`, and the shifted value comes
//! from the Euler–Maclaurin expansion of the defining series:
//!
//! ```text
//! ψ(z)      = log z − 1/(2z) − Σ_j B_{2j} / (2j z^{2j})
//! ψ^(n)(z)  = (−1)^(n+1) [ (n−1)!/z^n + n!/(2 z^(n+1))
//!                          + Σ_j B_{2j} (2j+n−1)! / ((2j)! z^(2j+n)) ]
//! ```
//!
//! Only `log z` is inexact; everything else is an exact rational.

use num_traits::{One, Signed, Zero};

use super::bernoulli::bernoulli;
use super::combinat::pochhammer;
use super::gamma::{asymptotic_threshold, shift_for};
use crate::error::{Error, Result};
use crate::numeric::approx::{with_digits, Approx};
use crate::numeric::elem;
use crate::numeric::rational::{int, is_nonpositive_integer, pow, Rational};

fn factorial(n: u64) -> Rational {
    pochhammer(&int(1), n)
}

fn negligible(x: &Rational, prec: u32) -> bool {
    x.is_zero() || (x.numer().bits() as i64 - x.denom().bits() as i64) < -(prec as i64) - 8
}

/// Exact part of the asymptotic expansion plus a bound on its remainder.
fn asymptotic_rational(n: u32, z: &Rational, prec: u32) -> Result<(Rational, Rational)> {
    let zinv = Rational::one() / z;
    let zinv2 = &zinv * &zinv;
    let n64 = n as u64;
    let mut sum = Rational::zero();
    if n == 0 {
        sum -= &zinv / int(2);
    } else {
        sum += factorial(n64 - 1) * pow(&zinv, n as i64)?;
        sum += factorial(n64) * pow(&zinv, n as i64 + 1)? / int(2);
    }
    let mut zpow = if n == 0 { zinv2.clone() } else { pow(&zinv, 2 + n as i64)? };
    let mut j: u64 = 1;
    let remainder = loop {
        let coeff = if n == 0 {
            bernoulli(2 * j as usize) / int(2 * j as i64)
        } else {
            // (2j+n−1)!/(2j)! = (2j+1)_(n−1)
            bernoulli(2 * j as usize) * pochhammer(&int(2 * j as i64 + 1), n64 - 1)
        };
        let term = coeff * &zpow;
        if negligible(&term, prec) {
            break term.abs();
        }
        if j > 4 * prec as u64 {
            return Err(Error::Precision("Euler–Maclaurin expansion did not converge".into()));
        }
        if n == 0 {
            sum -= term;
        } else {
            sum += term;
        }
        zpow *= &zinv2;
        j += 1;
    };
    if n > 0 && n % 2 == 0 {
        sum = -sum;
    }
    Ok((sum, remainder))
}

/// `ψ^(n)(q)` at working precision `prec`.
pub fn polygamma_prec(n: u32, q: &Rational, prec: u32) -> Result<Approx> {
    if is_nonpositive_integer(q) {
        return Err(Error::Pole(format!("ψ^({n}) has a pole at {q}")));
    }
    let p = prec + 16;
    let shift = shift_for(q, asymptotic_threshold(p) + n as i64);
    let z = q + int(shift as i64);
    let (asym, remainder) = asymptotic_rational(n, &z, p)?;
    // ψ^(n)(q) = ψ^(n)(q+N) − (−1)^n n! Σ_{k<N} 1/(q+k)^(n+1)
    let mut recur = Rational::zero();
    let mut t = q.clone();
    for _ in 0..shift {
        recur += pow(&t, -(n as i64) - 1)?;
        t += Rational::one();
    }
    recur *= factorial(n as u64);
    if n % 2 == 1 {
        recur = -recur;
    }
    let exact = asym - recur;
    let mut out = Approx::from_rational(&exact, p);
    if n == 0 {
        out = out.add(&elem::log_rational(&z, p)?);
    }
    // remainder bounded by the first omitted term; doubled
    Ok(out.add_err_rational(&(remainder * int(2))).with_prec(prec))
}

/// `ψ^(n)(q)` with `abs_err ≤ 10^-digits`.
pub fn polygamma(n: u32, q: &Rational, digits: u32) -> Result<Approx> {
    with_digits(digits, |prec| polygamma_prec(n, q, prec))
}

/// Digamma `ψ(q)`.
pub fn digamma(q: &Rational, digits: u32) -> Result<Approx> {
    polygamma(0, q, digits)
}
