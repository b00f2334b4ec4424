//! Verification driver: evaluates both sides and classifies the outcome.

use std::time::Instant;

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::catalog::{catalog, find};
use super::closed::{evaluate_detailed, ClosedForm};
use super::identity::{Identity, Lhs};
use crate::error::{Error, Result};
use crate::numeric::approx::{bits_for_digits, tolerance, Approx};
use crate::numeric::bigfloat::{BigFloat, Round};
use crate::numeric::rational::Rational;
use crate::series::sum::sum_terminating_counted;
use crate::series::{sum_to_digits, Bindings};

/// Extra digits requested of each side so that both error bounds stay
/// below a quarter of the tolerance.
const SIDE_GUARD: u32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Fail,
    DomainError,
    ConvergenceError,
}

impl Status {
    pub fn from_error(e: &Error) -> Status {
        match e {
            Error::Convergence(_) | Error::NonTerminating(_) => Status::ConvergenceError,
            e if e.is_domain() => Status::DomainError,
            _ => Status::Fail,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Fail => "fail",
            Status::DomainError => "domain_error",
            Status::ConvergenceError => "convergence_error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub id: String,
    pub bindings: Bindings,
    pub digits: u32,
    pub lhs: Option<Approx>,
    pub rhs: Option<Approx>,
    /// `|lhs − rhs|` between the computed values.
    pub residual: Option<BigFloat>,
    /// Both sides were computed as exact rationals.
    pub exact: bool,
    pub terms_used: u64,
    pub elapsed_ms: u64,
    pub status: Status,
    pub message: Option<String>,
}

impl VerificationReport {
    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }
}

struct Sides {
    lhs: Approx,
    rhs: Approx,
    residual: BigFloat,
    exact: bool,
    terms: u64,
}

fn rational_ball(q: &Rational, digits: u32) -> Approx {
    Approx::from_rational(q, bits_for_digits(digits) + 16)
}

fn evaluate_series(spec: &crate::series::TermSpec, rhs: &ClosedForm, b: &Bindings, digits: u32) -> Result<Sides> {
    if spec.terminating_index(b)?.is_some() {
        if let Some(r) = rhs.exact(b)? {
            let (l, n) = sum_terminating_counted(spec, b)?;
            let rt = evaluate_detailed(rhs, b, digits)?.terms_used;
            let residual = BigFloat::from_rational(&(&l - &r).abs(), 64, Round::Up);
            return Ok(Sides { lhs: rational_ball(&l, digits), rhs: rational_ball(&r, digits), residual, exact: true, terms: n + rt });
        }
    }
    let d = digits + SIDE_GUARD;
    let (l, r) = rayon::join(|| sum_to_digits(spec, b, d), || evaluate_detailed(rhs, b, d));
    let (l, r) = (l?, r?);
    let residual = l.value.abs_diff(&r.value);
    Ok(Sides { lhs: l.value, rhs: r.value, residual, exact: false, terms: l.terms_used + r.terms_used })
}

/// Step `10^-m` that makes an even `O(h²)` approach land within `10^-digits`.
fn limit_step(digits: u32) -> u32 {
    digits / 2 + 2
}

fn eval_near(expr: &ClosedForm, var: &str, point: &Rational, h: &Rational, b: &Bindings, digits: u32) -> Result<Approx> {
    let mut bb = b.clone();
    bb.insert(var.to_string(), point + h);
    evaluate_detailed(expr, &bb, digits).map(|v| v.value)
}

fn evaluate_limit(expr: &ClosedForm, var: &str, point: &Rational, rhs: &ClosedForm, b: &Bindings, digits: u32) -> Result<Sides> {
    let d = digits + SIDE_GUARD;
    let h = tolerance(limit_step(digits));
    let r = evaluate_detailed(rhs, b, d)?.value;
    let above = eval_near(expr, var, point, &h, b, d)?;
    let below = eval_near(expr, var, point, &-h.clone(), b, d)?;
    let residual = above.abs_diff(&r).max(below.abs_diff(&r));
    let lhs = if above.abs_diff(&r) >= below.abs_diff(&r) { above } else { below };
    Ok(Sides { lhs, rhs: r, residual, exact: false, terms: 0 })
}

/// Verifies one identity at the given bindings (missing parameters take
/// their defaults).
pub fn verify_identity(id: &Identity, given: &Bindings, digits: u32) -> Result<VerificationReport> {
    let b = id.bind(given)?;
    let start = Instant::now();
    let outcome = id.check(&b).and_then(|_| match &id.lhs {
        Lhs::Series(spec) => evaluate_series(spec, &id.rhs, &b, digits),
        Lhs::Limit { expr, var, point } => evaluate_limit(expr, var, point, &id.rhs, &b, digits),
    });
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let mut report = VerificationReport {
        id: id.id.clone(),
        bindings: b,
        digits,
        lhs: None,
        rhs: None,
        residual: None,
        exact: false,
        terms_used: 0,
        elapsed_ms,
        status: Status::Fail,
        message: None,
    };
    match outcome {
        Ok(s) => {
            let tol = tolerance(digits);
            let quarter = &tol / Rational::from_integer(4.into());
            let close = s.residual.cmp_rational(&tol).is_le();
            let tight = s.lhs.err_within(&quarter) && s.rhs.err_within(&quarter);
            report.status = if close && tight { Status::Ok } else { Status::Fail };
            if !tight {
                report.message = Some("error bounds exceed a quarter of the tolerance".into());
            }
            report.lhs = Some(s.lhs);
            report.rhs = Some(s.rhs);
            report.residual = Some(s.residual);
            report.exact = s.exact;
            report.terms_used = s.terms;
        }
        Err(e) => {
            report.status = Status::from_error(&e);
            report.message = Some(e.to_string());
        }
    }
    Ok(report)
}

/// Looks the identity up and verifies it. Unknown ids and parameters are
/// errors; everything else is recorded in the report.
pub fn verify(id: &str, given: &Bindings, digits: u32) -> Result<VerificationReport> {
    verify_identity(find(id)?, given, digits)
}

/// One report per value of `param`, in the order given.
pub fn sweep(id: &str, param: &str, values: &[Rational], digits: u32) -> Result<Vec<VerificationReport>> {
    let ident = find(id)?;
    if !ident.has_param(param) {
        return Err(Error::Parse(format!("`{id}` has no parameter `{param}`")));
    }
    values
        .par_iter()
        .map(|v| verify_identity(ident, &[(param.to_string(), v.clone())].into(), digits))
        .collect()
}

/// Every catalog entry at its default bindings, ordered by id.
pub fn verify_all(digits: u32) -> Vec<VerificationReport> {
    catalog()
        .par_iter()
        .map(|id| verify_identity(id, &Bindings::new(), digits).expect("defaults bind"))
        .collect()
}

/// For a limit identity, `(m, f(p − 10^-m) − L, f(p + 10^-m) − L)` for
/// each `m`, evaluated to `digits` digits.
pub fn limit_errors(id: &str, ms: &[u32], digits: u32) -> Result<Vec<(u32, Approx, Approx)>> {
    let ident = find(id)?;
    let Lhs::Limit { expr, var, point } = &ident.lhs else {
        return Err(Error::Domain(format!("`{id}` is not a limit identity")));
    };
    let b = ident.defaults();
    let target = evaluate_detailed(&ident.rhs, &b, digits + 4)?.value;
    ms.iter()
        .map(|&m| {
            let h = tolerance(m);
            let below = eval_near(expr, var, point, &-h.clone(), &b, digits)?.sub(&target);
            let above = eval_near(expr, var, point, &h, &b, digits)?.sub(&target);
            Ok((m, below, above))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{int, rat};

    fn one(name: &str, v: Rational) -> Bindings {
        [(name.to_string(), v)].into()
    }

    #[test]
    fn theorem_1_1_a() {
        let r = verify("thm1.1-a", &Bindings::new(), 30).unwrap();
        assert_eq!(r.status, Status::Ok, "{r:?}");
    }

    #[test]
    fn outside_region_is_a_convergence_error() {
        let r = verify("thm2-q", &one("x", int(8)), 30).unwrap();
        assert_eq!(r.status, Status::ConvergenceError);
        let r = verify("thm2-o", &one("x", int(16)), 20).unwrap();
        assert_eq!(r.status, Status::ConvergenceError);
    }

    #[test]
    fn dougall_instance_is_exact() {
        let b: Bindings = [("a", rat(1, 2)), ("b", int(-3)), ("c", rat(1, 3)), ("d", rat(1, 5))]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        let r = verify("dougall-5f4", &b, 30).unwrap();
        assert_eq!(r.status, Status::Ok);
        assert!(r.exact);
        assert!(r.residual.unwrap().is_zero());
    }

    #[test]
    fn non_terminating_dougall_rejected() {
        let r = verify("dougall-5f4", &one("b", rat(1, 7)), 20).unwrap();
        assert_eq!(r.status, Status::ConvergenceError);
    }

    #[test]
    fn unknown_names_are_errors() {
        assert!(matches!(verify("nope", &Bindings::new(), 10), Err(Error::UnknownIdentity(_))));
        assert!(matches!(verify("thm2-o", &one("y", int(40)), 10), Err(Error::Parse(_))));
        assert!(sweep("thm2-o", "y", &[int(40)], 10).is_err());
    }

    #[test]
    fn sweep_keeps_order_and_isolates_failures() {
        let r = sweep("thm2-p", "x", &[int(-216), int(27), int(100)], 20).unwrap();
        let s: Vec<Status> = r.iter().map(|r| r.status).collect();
        assert_eq!(s, vec![Status::Ok, Status::ConvergenceError, Status::Ok]);
        assert_eq!(r[2].bindings["x"], int(100));
    }

    #[test]
    fn pole_is_a_domain_error() {
        let r = verify("eq-b", &one("d", rat(3, 2)), 20).unwrap();
        assert_eq!(r.status, Status::DomainError);
    }

    #[test]
    fn limit_identity() {
        let r = verify("lhopital-rule", &Bindings::new(), 20).unwrap();
        assert_eq!(r.status, Status::Ok, "{r:?}");
    }

    #[test]
    fn printed_wei_t_fails_off_the_diagonal() {
        let p = super::super::catalog::wei_t_printed();
        let r = verify_identity(&p, &Bindings::new(), 20).unwrap();
        assert_eq!(r.status, Status::Fail);
        let diag: Bindings = [("a".to_string(), rat(1, 3)), ("b".to_string(), rat(2, 3))].into();
        assert_eq!(verify_identity(&p, &diag, 20).unwrap().status, Status::Ok);
        assert_eq!(verify("wei-t", &Bindings::new(), 20).unwrap().status, Status::Ok);
    }
}
