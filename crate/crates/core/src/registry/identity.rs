//! Identity records, parameters and their constraints.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::closed::ClosedForm;
use crate::error::{Error, Result};
use crate::numeric::rational::{format_rational, nonpositive_integer, parse_rational, serde_str, Rational};
use crate::series::{Bindings, Expr, TermSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityKind {
    SeriesEqClosed,
    SeriesEqSeries,
    /// A limit of a closed form at a point.
    Limit,
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdentityKind::SeriesEqClosed => "series_eq_closed",
            IdentityKind::SeriesEqSeries => "series_eq_series",
            IdentityKind::Limit => "limit",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Lhs {
    Series(TermSpec),
    /// `lim_{var → point} expr`.
    Limit { expr: ClosedForm, var: String, point: Rational },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Param {
    pub name: String,
    /// Binding used when the caller gives none.
    #[serde(with = "serde_str")]
    pub default: Rational,
}

/// Checkable predicate on bound parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum Constraint {
    /// `|e| > bound`, a convergence condition.
    AbsGreater(Expr, Rational),
    /// `|e| < bound`, a convergence condition.
    AbsLess(Expr, Rational),
    /// `e` is a nonpositive integer, so the series terminates.
    Terminating(Expr),
    /// `e` is not a nonpositive integer.
    NotPole(Expr),
    /// `e` is not an integer.
    NotInteger(Expr),
    Nonzero(Expr),
}

impl Constraint {
    /// Convergence violations become [`Error::Convergence`], the rest
    /// [`Error::Domain`].
    pub fn check(&self, b: &Bindings) -> Result<()> {
        let fail_conv = || Err(Error::Convergence(format!("requires {self}")));
        let fail_dom = || Err(Error::Domain(format!("requires {self}")));
        match self {
            Constraint::AbsGreater(e, r) if e.eval_rational(b)?.abs() <= *r => fail_conv(),
            Constraint::AbsLess(e, r) if e.eval_rational(b)?.abs() >= *r => fail_conv(),
            Constraint::Terminating(e) if nonpositive_integer(&e.eval_rational(b)?).is_none() => fail_conv(),
            Constraint::NotPole(e) if nonpositive_integer(&e.eval_rational(b)?).is_some() => fail_dom(),
            Constraint::NotInteger(e) if e.eval_rational(b)?.is_integer() => fail_dom(),
            Constraint::Nonzero(e) if num_traits::Zero::is_zero(&e.eval_rational(b)?) => fail_dom(),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::AbsGreater(e, r) => write!(f, "|{e}| > {r}"),
            Constraint::AbsLess(e, r) => write!(f, "|{e}| < {r}"),
            Constraint::Terminating(e) => write!(f, "{e} in {{0, -1, -2, ...}}"),
            Constraint::NotPole(e) => write!(f, "{e} not in {{0, -1, -2, ...}}"),
            Constraint::NotInteger(e) => write!(f, "{e} not an integer"),
            Constraint::Nonzero(e) => write!(f, "{e} != 0"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Identity {
    pub id: String,
    pub anchor: String,
    pub kind: IdentityKind,
    pub lhs: Lhs,
    pub rhs: ClosedForm,
    pub params: Vec<Param>,
    pub constraints: Vec<Constraint>,
}

impl Identity {
    pub fn free_symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        match &self.lhs {
            Lhs::Series(s) => out.extend(s.symbols()),
            Lhs::Limit { expr, var, .. } => {
                expr.symbols(&mut out);
                out.remove(var);
            }
        }
        self.rhs.symbols(&mut out);
        out
    }

    pub fn has_param(&self, name: &str) -> bool {
        self.params.iter().any(|p| p.name == name)
    }

    pub fn defaults(&self) -> Bindings {
        self.params.iter().map(|p| (p.name.clone(), p.default.clone())).collect()
    }

    /// Defaults overridden by `given`; names that are not parameters are
    /// rejected.
    pub fn bind(&self, given: &Bindings) -> Result<Bindings> {
        if let Some(bad) = given.keys().find(|n| !self.has_param(n)) {
            return Err(Error::Parse(format!("`{}` has no parameter `{bad}`", self.id)));
        }
        let mut b = self.defaults();
        b.extend(given.iter().map(|(k, v)| (k.clone(), v.clone())));
        Ok(b)
    }

    pub fn check(&self, b: &Bindings) -> Result<()> {
        self.constraints.iter().try_for_each(|c| c.check(b))
    }

    pub fn record(&self) -> RegistryRecord {
        let lhs = match &self.lhs {
            Lhs::Series(s) => s.to_string(),
            Lhs::Limit { expr, var, point } => format!("lim_{{{var} -> {}}} {expr}", format_rational(point)),
        };
        RegistryRecord {
            id: self.id.clone(),
            anchor: self.anchor.clone(),
            kind: self.kind,
            params: self.params.clone(),
            constraints: self.constraints.iter().map(|c| c.to_string()).collect(),
            lhs,
            rhs: self.rhs.to_string(),
        }
    }
}

/// Parses `name=num/den`.
pub fn parse_binding(s: &str) -> Result<(String, Rational)> {
    let (name, value) = s.split_once('=').ok_or_else(|| Error::Parse(format!("expected name=num/den, got `{s}`")))?;
    let name = name.trim();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(Error::Parse(format!("bad parameter name in `{s}`")));
    }
    Ok((name.to_string(), parse_rational(value)?))
}

/// Machine-readable form of a registry entry.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegistryRecord {
    pub id: String,
    pub anchor: String,
    pub kind: IdentityKind,
    pub params: Vec<Param>,
    pub constraints: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}
