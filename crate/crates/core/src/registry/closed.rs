//! Closed-form sides of identities: expression trees over rationals,
//! named constants, Γ-ratios and (possibly weighted) series.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::approx::{with_digits, Approx};
use crate::numeric::rational::{is_nonpositive_integer, Rational};
use crate::series::sum::sum_terminating_counted;
use crate::series::{sum_to_digits, Bindings, Expr, TermSpec};
use crate::special::constants::{constant_prec, ConstantName};
use crate::special::{gamma_prec, pochhammer};

/// Constant families; arguments are expressions in the identity's parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConstKind {
    Pi,
    Catalan,
    GammaQuarter,
    SqrtPi,
    Sqrt,
    Log,
    Polygamma(u32),
    Gamma,
    SinPi,
    CosPi,
    TanPi,
    Pow,
}

impl ConstKind {
    fn arity(&self) -> usize {
        use ConstKind::*;
        match self {
            Pi | Catalan | GammaQuarter | SqrtPi => 0,
            Pow => 2,
            _ => 1,
        }
    }

    fn instantiate(&self, args: &[Rational]) -> Result<ConstantName> {
        use ConstKind::*;
        if args.len() != self.arity() {
            return Err(Error::Domain(format!("{self:?} takes {} arguments", self.arity())));
        }
        let a = || args[0].clone();
        let name = match self {
            Pi => ConstantName::Pi,
            Catalan => ConstantName::Catalan,
            GammaQuarter => ConstantName::GammaQuarter,
            SqrtPi => ConstantName::SqrtPi,
            Sqrt => ConstantName::Sqrt(a()),
            Log => ConstantName::Log(a()),
            Polygamma(n) => ConstantName::PolygammaValue(*n, a()),
            Gamma => ConstantName::GammaValue(a()),
            SinPi => ConstantName::SinPi(a()),
            CosPi => ConstantName::CosPi(a()),
            TanPi => ConstantName::TanPi(a()),
            Pow => ConstantName::PowRat(a(), args[1].clone()),
        };
        name.check_domain()?;
        Ok(name)
    }

    fn label(&self) -> String {
        use ConstKind::*;
        match self {
            Pi => "pi".into(),
            Catalan => "G".into(),
            GammaQuarter => "gamma(1/4)".into(),
            SqrtPi => "sqrt(pi)".into(),
            Sqrt => "sqrt".into(),
            Log => "log".into(),
            Polygamma(0) => "psi".into(),
            Polygamma(n) => format!("psi{n}"),
            Gamma => "gamma".into(),
            SinPi => "sin_pi".into(),
            CosPi => "cos_pi".into(),
            TanPi => "tan_pi".into(),
            Pow => "pow".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ClosedForm {
    Rat(Expr),
    Const(ConstKind, Vec<Expr>),
    /// `Π Γ(num_i) / Π Γ(den_j)`.
    GammaRatio { num: Vec<Expr>, den: Vec<Expr> },
    Series(Box<TermSpec>),
    Add(Box<ClosedForm>, Box<ClosedForm>),
    Sub(Box<ClosedForm>, Box<ClosedForm>),
    Mul(Box<ClosedForm>, Box<ClosedForm>),
    Div(Box<ClosedForm>, Box<ClosedForm>),
    Neg(Box<ClosedForm>),
    Pow(Box<ClosedForm>, i32),
}

impl ClosedForm {
    pub fn rat(e: impl Into<Expr>) -> Self {
        ClosedForm::Rat(e.into())
    }

    pub fn pi() -> Self {
        ClosedForm::Const(ConstKind::Pi, vec![])
    }

    pub fn catalan() -> Self {
        ClosedForm::Const(ConstKind::Catalan, vec![])
    }

    pub fn gamma_quarter() -> Self {
        ClosedForm::Const(ConstKind::GammaQuarter, vec![])
    }

    pub fn sqrt_pi() -> Self {
        ClosedForm::Const(ConstKind::SqrtPi, vec![])
    }

    fn unary(kind: ConstKind, e: impl Into<Expr>) -> Self {
        ClosedForm::Const(kind, vec![e.into()])
    }

    pub fn sqrt(e: impl Into<Expr>) -> Self {
        Self::unary(ConstKind::Sqrt, e)
    }

    pub fn log(e: impl Into<Expr>) -> Self {
        Self::unary(ConstKind::Log, e)
    }

    pub fn polygamma(n: u32, e: impl Into<Expr>) -> Self {
        Self::unary(ConstKind::Polygamma(n), e)
    }

    pub fn gamma(e: impl Into<Expr>) -> Self {
        Self::unary(ConstKind::Gamma, e)
    }

    pub fn sin_pi(e: impl Into<Expr>) -> Self {
        Self::unary(ConstKind::SinPi, e)
    }

    pub fn cos_pi(e: impl Into<Expr>) -> Self {
        Self::unary(ConstKind::CosPi, e)
    }

    pub fn tan_pi(e: impl Into<Expr>) -> Self {
        Self::unary(ConstKind::TanPi, e)
    }

    /// `base^exponent` for a positive base.
    pub fn pow(base: impl Into<Expr>, exponent: impl Into<Expr>) -> Self {
        ClosedForm::Const(ConstKind::Pow, vec![base.into(), exponent.into()])
    }

    pub fn gamma_ratio(num: Vec<Expr>, den: Vec<Expr>) -> Self {
        ClosedForm::GammaRatio { num, den }
    }

    pub fn series(spec: TermSpec) -> Self {
        ClosedForm::Series(Box::new(spec))
    }

    pub fn powi(self, e: i32) -> Self {
        ClosedForm::Pow(Box::new(self), e)
    }

    fn children(&self) -> Vec<&ClosedForm> {
        use ClosedForm::*;
        match self {
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => vec![a, b],
            Neg(a) | Pow(a, _) => vec![a],
            _ => vec![],
        }
    }

    pub fn symbols(&self, out: &mut BTreeSet<String>) {
        match self {
            ClosedForm::Rat(e) => e.symbols(out),
            ClosedForm::Const(_, args) => args.iter().for_each(|e| e.symbols(out)),
            ClosedForm::GammaRatio { num, den } => num.iter().chain(den).for_each(|e| e.symbols(out)),
            ClosedForm::Series(s) => out.extend(s.symbols()),
            _ => self.children().into_iter().for_each(|c| c.symbols(out)),
        }
        out.remove("k");
    }

    pub fn contains_series(&self) -> bool {
        matches!(self, ClosedForm::Series(_)) || self.children().into_iter().any(ClosedForm::contains_series)
    }

    /// Whether a constant of this family appears anywhere in the tree.
    pub fn uses_constant(&self, kind: &ConstKind) -> bool {
        matches!(self, ClosedForm::Const(k, _) if k == kind)
            || self.children().into_iter().any(|c| c.uses_constant(kind))
    }

    pub fn series_leaves(&self) -> Vec<&TermSpec> {
        match self {
            ClosedForm::Series(s) => vec![s],
            _ => self.children().into_iter().flat_map(ClosedForm::series_leaves).collect(),
        }
    }

    /// The exact value when every leaf is exact: rational leaves, constants
    /// with exact values, fully paired Γ-ratios and terminating series.
    pub fn exact(&self, b: &Bindings) -> Result<Option<Rational>> {
        Ok(self.exact_counted(b)?.map(|(v, _)| v))
    }

    fn exact_counted(&self, b: &Bindings) -> Result<Option<(Rational, u64)>> {
        use ClosedForm::*;
        let both = |x: &ClosedForm, y: &ClosedForm| -> Result<Option<((Rational, u64), (Rational, u64))>> {
            match x.exact_counted(b)? {
                None => Ok(None),
                Some(l) => Ok(y.exact_counted(b)?.map(|r| (l, r))),
            }
        };
        Ok(match self {
            Rat(e) => Some((e.eval_rational(b)?, 0)),
            Const(kind, args) => {
                let args = args.iter().map(|e| e.eval_rational(b)).collect::<Result<Vec<_>>>()?;
                kind.instantiate(&args)?.exact_value().map(|v| (v, 0))
            }
            GammaRatio { num, den } => {
                let split = split_gamma_ratio(num, den, b)?;
                split.exact().map(|v| (v, 0))
            }
            Series(spec) => match spec.terminating_index(b)? {
                Some(_) => Some(sum_terminating_counted(spec, b)?),
                None => None,
            },
            Add(x, y) => both(x, y)?.map(|((l, n), (r, m))| (l + r, n + m)),
            Sub(x, y) => both(x, y)?.map(|((l, n), (r, m))| (l - r, n + m)),
            Mul(x, y) => both(x, y)?.map(|((l, n), (r, m))| (l * r, n + m)),
            Div(x, y) => match both(x, y)? {
                Some((_, (r, _))) if r.is_zero() => return Err(Error::DivisionByZero),
                Some(((l, n), (r, m))) => Some((l / r, n + m)),
                None => None,
            },
            Neg(x) => x.exact_counted(b)?.map(|(v, n)| (-v, n)),
            Pow(x, e) => match x.exact_counted(b)? {
                Some((v, _)) if v.is_zero() && *e < 0 => return Err(Error::DivisionByZero),
                Some((v, n)) => Some((v.pow(*e), n)),
                None => None,
            },
        })
    }
}

/// A Γ-ratio after cancelling argument pairs that differ by integers.
struct SplitGamma {
    factor: Rational,
    num: Vec<Rational>,
    den: Vec<Rational>,
    /// Some unpaired denominator argument is a pole, so the ratio is 0.
    vanishes: bool,
}

impl SplitGamma {
    fn exact(&self) -> Option<Rational> {
        if self.vanishes {
            return Some(Rational::zero());
        }
        let mut v = self.factor.clone();
        for (args, up) in [(&self.num, true), (&self.den, false)] {
            for q in args {
                let g = ConstantName::GammaValue(q.clone()).exact_value()?;
                v = if up { v * g } else { v / g };
            }
        }
        Some(v)
    }
}

/// Pairs `Γ(x+n)/Γ(x)` into `(x)_n` (or `1/(x+n)_{-n}` for `n < 0`).
fn split_gamma_ratio(num: &[Expr], den: &[Expr], b: &Bindings) -> Result<SplitGamma> {
    let num: Vec<Rational> = num.iter().map(|e| e.eval_rational(b)).collect::<Result<_>>()?;
    let mut den: Vec<Option<Rational>> = den.iter().map(|e| e.eval_rational(b).map(Some)).collect::<Result<_>>()?;
    let mut factor = Rational::one();
    let mut rest = Vec::new();
    for x in num {
        let hit = den.iter().position(|d| d.as_ref().is_some_and(|d| (&x - d).is_integer()));
        match hit {
            Some(j) => {
                let d = den[j].take().expect("present");
                let n = (&x - &d).to_integer();
                let n: u64 = n.magnitude().try_into().map_err(|_| Error::Domain("Γ shift too large".into()))?;
                if x >= d {
                    factor *= pochhammer(&d, n);
                } else {
                    let p = pochhammer(&x, n);
                    if p.is_zero() {
                        return Err(Error::Pole(format!("Γ ratio pole at {x}")));
                    }
                    factor /= p;
                }
            }
            None => rest.push(x),
        }
    }
    let den: Vec<Rational> = den.into_iter().flatten().collect();
    if let Some(p) = rest.iter().find(|q| is_nonpositive_integer(q)) {
        return Err(Error::Pole(format!("Γ pole at {p}")));
    }
    let vanishes = den.iter().any(is_nonpositive_integer);
    Ok(SplitGamma { factor, num: rest, den, vanishes })
}

/// Decimal digits a `prec`-bit evaluation can ask of a series leaf.
fn leaf_digits(prec: u32) -> u32 {
    ((prec.saturating_sub(8)) as f64 * std::f64::consts::LOG10_2) as u32
}

struct Evaluator<'a> {
    b: &'a Bindings,
    sums: HashMap<*const TermSpec, (u32, Approx, u64)>,
}

impl Evaluator<'_> {
    fn eval(&mut self, f: &ClosedForm, prec: u32) -> Result<Approx> {
        use ClosedForm::*;
        Ok(match f {
            Rat(e) => Approx::from_rational(&e.eval_rational(self.b)?, prec),
            Const(kind, args) => {
                let args = args.iter().map(|e| e.eval_rational(self.b)).collect::<Result<Vec<_>>>()?;
                constant_prec(&kind.instantiate(&args)?, prec)?
            }
            GammaRatio { num, den } => {
                let s = split_gamma_ratio(num, den, self.b)?;
                if s.vanishes {
                    return Ok(Approx::zero(prec));
                }
                let p = prec + 8 + 4 * (s.num.len() + s.den.len()) as u32;
                let mut acc = Approx::from_rational(&s.factor, p);
                for q in &s.num {
                    acc = acc.mul(&gamma_prec(q, p)?);
                }
                for q in &s.den {
                    acc = acc.div(&gamma_prec(q, p)?)?;
                }
                acc.with_prec(prec)
            }
            Series(spec) => {
                let digits = leaf_digits(prec);
                let key: *const TermSpec = &**spec;
                if let Some((d, v, _)) = self.sums.get(&key) {
                    if *d >= digits {
                        return Ok(v.clone());
                    }
                }
                let r = sum_to_digits(spec, self.b, digits)?;
                self.sums.insert(key, (digits, r.value.clone(), r.terms_used));
                r.value
            }
            Add(x, y) => self.eval(x, prec)?.add(&self.eval(y, prec)?),
            Sub(x, y) => self.eval(x, prec)?.sub(&self.eval(y, prec)?),
            Mul(x, y) => self.eval(x, prec)?.mul(&self.eval(y, prec)?),
            Div(x, y) => self.eval(x, prec)?.div(&self.eval(y, prec)?)?,
            Neg(x) => self.eval(x, prec)?.neg(),
            Pow(x, e) => self.eval(x, prec)?.pow_int(*e as i64)?,
        })
    }
}

/// Value of a closed form together with the series terms it consumed.
#[derive(Clone, Debug)]
pub struct ClosedValue {
    pub value: Approx,
    pub terms_used: u64,
    /// `Some` when the value was obtained exactly.
    pub exact: Option<Rational>,
}

/// Evaluates with `abs_err ≤ 10^-digits`, exactly when possible.
pub fn evaluate_detailed(f: &ClosedForm, b: &Bindings, digits: u32) -> Result<ClosedValue> {
    if let Some((q, n)) = f.exact_counted(b)? {
        let prec = crate::numeric::approx::bits_for_digits(digits);
        return Ok(ClosedValue { value: Approx::from_rational(&q, prec), terms_used: n, exact: Some(q) });
    }
    let mut ev = Evaluator { b, sums: HashMap::new() };
    let value = with_digits(digits, |prec| ev.eval(f, prec))?;
    let terms_used = ev.sums.values().map(|(_, _, n)| n).sum();
    Ok(ClosedValue { value, terms_used, exact: None })
}

/// Evaluates a closed form with `abs_err ≤ 10^-digits`.
pub fn evaluate_closed_form(f: &ClosedForm, b: &Bindings, digits: u32) -> Result<Approx> {
    Ok(evaluate_detailed(f, b, digits)?.value)
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ClosedForm::*;
        let list = |v: &[Expr]| v.iter().map(|e| format!("gamma({e})")).collect::<Vec<_>>().join("*");
        match self {
            Rat(e) => write!(f, "{e}"),
            Const(kind, args) if args.is_empty() => write!(f, "{}", kind.label()),
            Const(kind, args) => {
                let a: Vec<String> = args.iter().map(|e| e.to_string()).collect();
                write!(f, "{}({})", kind.label(), a.join(", "))
            }
            GammaRatio { num, den } => write!(f, "[{}]/[{}]", list(num), list(den)),
            Series(s) => write!(f, "{s}"),
            Add(x, y) => write!(f, "({x} + {y})"),
            Sub(x, y) => write!(f, "({x} - {y})"),
            Mul(x, y) => write!(f, "{x} * {y}"),
            Div(x, y) => write!(f, "{x} / ({y})"),
            Neg(x) => write!(f, "-({x})"),
            Pow(x, e) => write!(f, "({x})^{e}"),
        }
    }
}

impl From<Expr> for ClosedForm {
    fn from(e: Expr) -> Self {
        ClosedForm::Rat(e)
    }
}

impl From<i64> for ClosedForm {
    fn from(n: i64) -> Self {
        ClosedForm::Rat(n.into())
    }
}

impl From<TermSpec> for ClosedForm {
    fn from(s: TermSpec) -> Self {
        ClosedForm::series(s)
    }
}

macro_rules! closed_binop {
    ($tr:ident, $m:ident, $v:ident) => {
        impl<T: Into<ClosedForm>> ops::$tr<T> for ClosedForm {
            type Output = ClosedForm;
            fn $m(self, o: T) -> ClosedForm {
                ClosedForm::$v(Box::new(self), Box::new(o.into()))
            }
        }
    };
}

closed_binop!(Add, add, Add);
closed_binop!(Sub, sub, Sub);
closed_binop!(Mul, mul, Mul);
closed_binop!(Div, div, Div);

impl ops::Neg for ClosedForm {
    type Output = ClosedForm;
    fn neg(self) -> ClosedForm {
        ClosedForm::Neg(Box::new(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::approx::tolerance;
    use crate::numeric::rational::{int, rat};
    use crate::series::{q, sym};
    use crate::special::polygamma;

    fn none() -> Bindings {
        Bindings::new()
    }

    #[test]
    fn log_ratio_is_additive() {
        let v = evaluate_closed_form(&ClosedForm::log(q(8, 9)), &none(), 40).unwrap();
        assert!(!v.is_positive());
        let w = evaluate_closed_form(&(ClosedForm::log(8) - ClosedForm::log(9)), &none(), 40).unwrap();
        assert!(v.abs_diff(&w).cmp_rational(&tolerance(39)).is_le());
    }

    #[test]
    fn pi_squared_minus_8g_is_trigamma_three_quarters() {
        let f = ClosedForm::pi().powi(2) - ClosedForm::rat(8) * ClosedForm::catalan();
        let v = evaluate_closed_form(&f, &none(), 40).unwrap();
        let psi = polygamma(1, &rat(3, 4), 40).unwrap();
        assert!(v.abs_diff(&psi).cmp_rational(&tolerance(39)).is_le());
        assert!(f.uses_constant(&ConstKind::Catalan));
    }

    #[test]
    fn tan_closed_form() {
        // (1−2d)tan(dπ)/π at d = 1/3 is tan(π/3)/(3π) = √3/(3π)
        let d = sym("d");
        let f = ClosedForm::rat(1 - 2 * d.clone()) * ClosedForm::tan_pi(d) / ClosedForm::pi();
        let b: Bindings = [("d".to_string(), rat(1, 3))].into();
        let v = evaluate_closed_form(&f, &b, 30).unwrap();
        let w = evaluate_closed_form(&(ClosedForm::sqrt(3) / (ClosedForm::rat(3) * ClosedForm::pi())), &none(), 30).unwrap();
        assert!(v.abs_diff(&w).cmp_rational(&tolerance(29)).is_le());
    }

    #[test]
    fn gamma_ratio_pairs_exactly() {
        // Γ(7/2)Γ(1/3)/(Γ(1/2)Γ(10/3)) = (1/2)_3/(1/3)_3
        let f = ClosedForm::gamma_ratio(vec![q(7, 2), q(1, 3)], vec![q(1, 2), q(10, 3)]);
        let expect = pochhammer(&rat(1, 2), 3) / pochhammer(&rat(1, 3), 3);
        assert_eq!(f.exact(&none()).unwrap(), Some(expect));
        // unpaired arguments fall back to numerics
        let g = ClosedForm::gamma_ratio(vec![q(1, 2)], vec![q(1, 3)]);
        assert_eq!(g.exact(&none()).unwrap(), None);
        let v = evaluate_closed_form(&g, &none(), 25).unwrap();
        let w = gamma_prec(&rat(1, 2), 120).unwrap().div(&gamma_prec(&rat(1, 3), 120).unwrap()).unwrap();
        assert!(v.abs_diff(&w).cmp_rational(&tolerance(24)).is_le());
        // 1/Γ at a pole vanishes, Γ at a pole is an error
        let z = ClosedForm::gamma_ratio(vec![q(1, 2)], vec![int(-2).into()]);
        assert_eq!(z.exact(&none()).unwrap(), Some(int(0)));
        let p = ClosedForm::gamma_ratio(vec![int(-2).into()], vec![q(1, 2)]);
        assert!(p.exact(&none()).is_err());
    }

    #[test]
    fn domain_errors_propagate() {
        assert!(evaluate_closed_form(&ClosedForm::log(q(-1, 2)), &none(), 20).is_err());
        assert!(evaluate_closed_form(&ClosedForm::tan_pi(q(1, 2)), &none(), 20).is_err());
        assert!(evaluate_closed_form(&ClosedForm::log(sym("x")), &none(), 20).is_err());
    }

    #[test]
    fn display_is_readable() {
        let f = ClosedForm::rat(q(1, 2)) * ClosedForm::log(sym("x") / (sym("x") - 64));
        assert_eq!(f.to_string(), "1/2 * log(x/(x-64))");
    }
}
