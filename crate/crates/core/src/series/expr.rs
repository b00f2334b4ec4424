//! Small symbolic expressions over rationals, named parameters and the
//! summation index `k`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops;

use num_traits::{Signed, Zero};

use super::field::Field;
use crate::error::{Error, Result};
use crate::numeric::rational::{format_rational, Rational};

pub type Bindings = BTreeMap<String, Rational>;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    Sym(String),
    /// The summation index.
    K,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i32),
}

pub fn num(n: i64) -> Expr {
    Expr::Num(Rational::from_integer(n.into()))
}

pub fn q(n: i64, d: i64) -> Expr {
    Expr::Num(Rational::new(n.into(), d.into()))
}

pub fn sym(name: &str) -> Expr {
    Expr::Sym(name.to_string())
}

pub fn k() -> Expr {
    Expr::K
}

impl From<i64> for Expr {
    fn from(n: i64) -> Self {
        num(n)
    }
}

impl From<&Expr> for Expr {
    fn from(e: &Expr) -> Self {
        e.clone()
    }
}

impl From<Rational> for Expr {
    fn from(r: Rational) -> Self {
        Expr::Num(r)
    }
}

impl Expr {
    pub fn as_num(&self) -> Option<&Rational> {
        match self {
            Expr::Num(r) => Some(r),
            _ => None,
        }
    }

    fn is_num(&self, v: i64) -> bool {
        self.as_num().is_some_and(|r| *r == Rational::from_integer(v.into()))
    }

    pub fn add(self, o: Expr) -> Expr {
        match (&self, &o) {
            (Expr::Num(a), Expr::Num(b)) => Expr::Num(a + b),
            _ if self.is_num(0) => o,
            _ if o.is_num(0) => self,
            _ => Expr::Add(Box::new(self), Box::new(o)),
        }
    }

    pub fn sub(self, o: Expr) -> Expr {
        match (&self, &o) {
            (Expr::Num(a), Expr::Num(b)) => Expr::Num(a - b),
            _ if o.is_num(0) => self,
            _ if self.is_num(0) => o.neg(),
            _ => Expr::Sub(Box::new(self), Box::new(o)),
        }
    }

    pub fn mul(self, o: Expr) -> Expr {
        match (&self, &o) {
            (Expr::Num(a), Expr::Num(b)) => Expr::Num(a * b),
            _ if self.is_num(0) || o.is_num(0) => num(0),
            _ if self.is_num(1) => o,
            _ if o.is_num(1) => self,
            _ if self.is_num(-1) => o.neg(),
            _ if o.is_num(-1) => self.neg(),
            _ => Expr::Mul(Box::new(self), Box::new(o)),
        }
    }

    pub fn div(self, o: Expr) -> Expr {
        match (&self, &o) {
            (Expr::Num(a), Expr::Num(b)) if !b.is_zero() => Expr::Num(a / b),
            _ if o.is_num(1) => self,
            _ if self.is_num(0) && !o.is_num(0) => num(0),
            _ => Expr::Div(Box::new(self), Box::new(o)),
        }
    }

    pub fn neg(self) -> Expr {
        match self {
            Expr::Num(a) => Expr::Num(-a),
            Expr::Neg(e) => *e,
            e => Expr::Neg(Box::new(e)),
        }
    }

    pub fn pow(self, e: i32) -> Expr {
        match (&self, e) {
            (_, 0) => num(1),
            (_, 1) => self,
            (Expr::Num(a), e) if e > 0 || !a.is_zero() => Expr::Num(a.pow(e)),
            _ => Expr::Pow(Box::new(self), e),
        }
    }

    pub fn eval<F: Field>(&self, env: &dyn Fn(&str) -> Result<F>, k: Option<&F>) -> Result<F> {
        Ok(match self {
            Expr::Num(r) => F::from_rational(r),
            Expr::Sym(s) => env(s)?,
            Expr::K => k.cloned().ok_or_else(|| Error::UnboundSymbol("k".into()))?,
            Expr::Add(a, b) => a.eval(env, k)?.plus(&b.eval(env, k)?),
            Expr::Sub(a, b) => a.eval(env, k)?.minus(&b.eval(env, k)?),
            Expr::Mul(a, b) => a.eval(env, k)?.times(&b.eval(env, k)?),
            Expr::Div(a, b) => {
                a.eval(env, k)?.divide(&b.eval(env, k)?).map_err(|_| Error::Pole(format!("{self} has a zero denominator")))?
            }
            Expr::Neg(a) => a.eval(env, k)?.negate(),
            Expr::Pow(a, e) => a
                .eval(env, k)?
                .powi(*e)
                .map_err(|_| Error::Pole(format!("{self} has a zero denominator")))?,
        })
    }

    /// Evaluates with rational bindings and no `k`.
    pub fn eval_rational(&self, b: &Bindings) -> Result<Rational> {
        self.eval::<Rational>(&rational_env(b), None)
    }

    /// Evaluates at a concrete `k`.
    pub fn eval_at(&self, b: &Bindings, kk: u64) -> Result<Rational> {
        let kv = Rational::from_integer(kk.into());
        self.eval::<Rational>(&rational_env(b), Some(&kv))
    }

    /// Symbolic derivative with respect to `s`; `k` is treated as a constant.
    pub fn diff(&self, s: &str) -> Expr {
        match self {
            Expr::Num(_) | Expr::K => num(0),
            Expr::Sym(n) => num(if n == s { 1 } else { 0 }),
            Expr::Add(a, b) => a.diff(s).add(b.diff(s)),
            Expr::Sub(a, b) => a.diff(s).sub(b.diff(s)),
            Expr::Mul(a, b) => a.diff(s).mul((**b).clone()).add((**a).clone().mul(b.diff(s))),
            Expr::Div(a, b) => {
                let top = a.diff(s).mul((**b).clone()).sub((**a).clone().mul(b.diff(s)));
                top.div((**b).clone().pow(2))
            }
            Expr::Neg(a) => a.diff(s).neg(),
            Expr::Pow(a, e) => num(*e as i64).mul((**a).clone().pow(e - 1)).mul(a.diff(s)),
        }
    }

    pub fn symbols(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Sym(s) => {
                out.insert(s.clone());
            }
            Expr::Num(_) | Expr::K => {}
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.symbols(out);
                b.symbols(out);
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.symbols(out),
        }
    }

    pub fn depends_on(&self, s: &str) -> bool {
        let mut set = BTreeSet::new();
        self.symbols(&mut set);
        set.contains(s)
    }

    pub fn has_k(&self) -> bool {
        match self {
            Expr::K => true,
            Expr::Num(_) | Expr::Sym(_) => false,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.has_k() || b.has_k(),
            Expr::Neg(a) | Expr::Pow(a, _) => a.has_k(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(r) if r.is_negative() => 1,
            Expr::Num(r) if !r.is_integer() => 2,
            _ => 5,
        }
    }
}

pub(crate) fn rational_env(b: &Bindings) -> impl Fn(&str) -> Result<Rational> + '_ {
    move |s: &str| b.get(s).cloned().ok_or_else(|| Error::UnboundSymbol(s.to_string()))
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Num(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Expr::Num(r) => write!(f, "{}", format_rational(r)),
            Expr::Sym(s) => write!(f, "{s}"),
            Expr::K => write!(f, "k"),
            Expr::Add(a, b) => {
                wrap(f, a, 1)?;
                write!(f, "+")?;
                wrap(f, b, 1)
            }
            Expr::Sub(a, b) => {
                wrap(f, a, 1)?;
                write!(f, "-")?;
                wrap(f, b, 2)
            }
            Expr::Mul(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "*")?;
                wrap(f, b, 3)
            }
            Expr::Div(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "/")?;
                wrap(f, b, 3)
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, 3)
            }
            Expr::Pow(a, e) => {
                wrap(f, a, 5)?;
                write!(f, "^{e}")
            }
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl ops::$tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, o: Expr) -> Expr {
                Expr::$m(self, o)
            }
        }
        impl ops::$tr<&Expr> for &Expr {
            type Output = Expr;
            fn $m(self, o: &Expr) -> Expr {
                Expr::$m(self.clone(), o.clone())
            }
        }
        impl ops::$tr<&Expr> for Expr {
            type Output = Expr;
            fn $m(self, o: &Expr) -> Expr {
                Expr::$m(self, o.clone())
            }
        }
        impl ops::$tr<Expr> for &Expr {
            type Output = Expr;
            fn $m(self, o: Expr) -> Expr {
                Expr::$m(self.clone(), o)
            }
        }
        impl ops::$tr<i64> for Expr {
            type Output = Expr;
            fn $m(self, o: i64) -> Expr {
                Expr::$m(self, num(o))
            }
        }
        impl ops::$tr<i64> for &Expr {
            type Output = Expr;
            fn $m(self, o: i64) -> Expr {
                Expr::$m(self.clone(), num(o))
            }
        }
        impl ops::$tr<Expr> for i64 {
            type Output = Expr;
            fn $m(self, o: Expr) -> Expr {
                Expr::$m(num(self), o)
            }
        }
        impl ops::$tr<&Expr> for i64 {
            type Output = Expr;
            fn $m(self, o: &Expr) -> Expr {
                Expr::$m(num(self), o.clone())
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(self)
    }
}

impl ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(self.clone())
    }
}
