//! Γ at rational arguments: shift upward by an integer, apply Stirling's
//! series for `log Γ` with its remainder bound, and divide by the exact
//! shifted factorial.

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::bernoulli::bernoulli;
use super::combinat::pochhammer;
use crate::error::{Error, Result};
use crate::numeric::approx::{with_digits, Approx};
use crate::numeric::elem;
use crate::numeric::rational::{int, is_nonpositive_integer, Rational};

/// Smallest shifted argument used by the asymptotic expansions at `prec` bits.
/// The optimal truncation error of both series is about `e^(−2πz)`.
pub(crate) fn asymptotic_threshold(prec: u32) -> i64 {
    (prec as f64 * std::f64::consts::LN_2 / (2.0 * std::f64::consts::PI) * 1.25).ceil() as i64 + 8
}

/// Integer shift `N` with `q + N ≥ threshold`.
pub(crate) fn shift_for(q: &Rational, threshold: i64) -> u64 {
    let fl = q.floor().to_integer().to_i64().unwrap_or(i64::MIN / 4);
    (threshold - fl).max(0) as u64
}

fn rational_below(x: &Rational, prec: u32) -> bool {
    x.is_zero() || (x.numer().bits() as i64 - x.denom().bits() as i64) < -(prec as i64) - 8
}

/// `log Γ(z)` for rational `z` above the asymptotic threshold.
pub(crate) fn log_gamma_large(z: &Rational, prec: u32) -> Result<Approx> {
    let p = prec + 16;
    let mut series = Rational::zero();
    let zinv = Rational::one() / z;
    let zinv2 = &zinv * &zinv;
    let mut zpow = zinv.clone(); // z^-(2j-1)
    let mut j = 1usize;
    let remainder = loop {
        let term = bernoulli(2 * j) * &zpow / int((2 * j * (2 * j - 1)) as i64);
        if rational_below(&term, p) {
            break term.abs();
        }
        if j > 4 * p as usize {
            return Err(Error::Precision("Stirling series did not reach the target".into()));
        }
        series += term;
        zpow *= &zinv2;
        j += 1;
    };
    let two_pi = elem::pi(p).mul_pow2(1);
    let log_z = elem::log_rational(z, p)?;
    let half_log_2pi = elem::log(&two_pi)?.mul_pow2(-1);
    let main = log_z
        .mul_rational(&(z - Rational::new(1.into(), 2.into())))
        .sub(&Approx::from_rational(z, p))
        .add(&half_log_2pi)
        .add(&Approx::from_rational(&series, p));
    // remainder bounded by the first omitted term; doubled
    Ok(main.add_err_rational(&(remainder * int(2))).with_prec(prec))
}

/// `Γ(q)` at working precision `prec` (relative accuracy about `2^-prec`).
pub fn gamma_prec(q: &Rational, prec: u32) -> Result<Approx> {
    if is_nonpositive_integer(q) {
        return Err(Error::Pole(format!("Γ has a pole at {q}")));
    }
    if q.is_integer() && q <= &int(30) {
        let n = q.to_integer().to_u64().expect("small positive integer");
        return Ok(Approx::from_rational(&pochhammer(&int(1), n - 1), prec));
    }
    let n = shift_for(q, asymptotic_threshold(prec));
    let z = q + int(n as i64);
    let lg = log_gamma_large(&z, prec + 32)?;
    let extra = lg.to_f64().abs().log2().max(0.0) as u32 + 16;
    let lg = lg.with_prec(prec + 32 + extra);
    let gz = elem::exp(&lg)?;
    gz.div_rational(&pochhammer(q, n)).map(|g| g.with_prec(prec))
}

/// `Γ(q)` with `abs_err ≤ 10^-digits`.
pub fn gamma(q: &Rational, digits: u32) -> Result<Approx> {
    with_digits(digits, |prec| gamma_prec(q, prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::approx::tolerance;
    use crate::numeric::rational::rat;

    #[test]
    fn half_is_sqrt_pi() {
        let g = gamma(&rat(1, 2), 50).unwrap();
        let s = elem::pi(300).sqrt().unwrap();
        assert!(g.abs_diff(&s).cmp_rational(&tolerance(50)).is_le());
    }

    #[test]
    fn functional_equation_at_five_quarters() {
        let a = gamma(&rat(5, 4), 50).unwrap();
        let b = gamma(&rat(1, 4), 55).unwrap().mul_rational(&rat(1, 4));
        assert!(a.abs_diff(&b).cmp_rational(&tolerance(50)).is_le());
    }

    #[test]
    fn reflection_quarter() {
        let prod = gamma(&rat(1, 4), 62).unwrap().mul(&gamma(&rat(3, 4), 62).unwrap());
        let pi_sqrt2 = elem::pi(300).mul(&Approx::from_i64(2, 300).sqrt().unwrap());
        assert!(prod.abs_diff(&pi_sqrt2).cmp_rational(&tolerance(60)).is_le());
    }

    #[test]
    fn poles_and_negative_arguments() {
        assert!(matches!(gamma(&int(0), 10), Err(Error::Pole(_))));
        assert!(matches!(gamma(&int(-3), 10), Err(Error::Pole(_))));
        // Γ(−1/2) = −2√π
        let g = gamma(&rat(-1, 2), 40).unwrap();
        let s = elem::pi(300).sqrt().unwrap().mul_rational(&int(-2));
        assert!(g.abs_diff(&s).cmp_rational(&tolerance(40)).is_le());
        let g = gamma(&int(5), 10).unwrap();
        assert!(g.contains_rational(&int(24)));
    }
}
