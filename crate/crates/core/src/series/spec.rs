//! Structured description of a series term
//!
//! `t_k = z^k · Π (p)_{mk}^e · Σ_parts prefactor(k) · Π_combos (c + Σ coef·H)`
//!
//! where each harmonic sum is `H(k) = Σ_{i=1}^{mk} 1 / Π_j (x_j + i)`.
//! Repeating one offset `ℓ` times gives `H_{mk}^{(ℓ)}(x)`; two distinct
//! offsets give sums like `Σ 1/((d−1+i)(−d+i))` without partial fractions.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::expr::{num, Bindings, Expr};
use crate::error::{Error, Result};
use crate::numeric::rational::{nonpositive_integer, Rational};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PochFactor {
    #[serde(serialize_with = "as_text")]
    pub param: Expr,
    pub multiplier: u32,
    /// Positive for numerator factors, negative for denominator factors.
    pub exponent: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HarmonicTerm {
    #[serde(serialize_with = "as_text")]
    pub coef: Expr,
    #[serde(serialize_with = "all_as_text")]
    pub offsets: Vec<Expr>,
    pub multiplier: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HarmonicCombo {
    #[serde(serialize_with = "as_text")]
    pub constant: Expr,
    pub terms: Vec<HarmonicTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightPart {
    #[serde(serialize_with = "as_text")]
    pub prefactor: Expr,
    pub combos: Vec<HarmonicCombo>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TermSpec {
    #[serde(serialize_with = "as_text")]
    pub z: Expr,
    pub factors: Vec<PochFactor>,
    pub parts: Vec<WeightPart>,
}

fn as_text<S: serde::Serializer>(e: &Expr, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(e)
}

fn all_as_text<S: serde::Serializer>(v: &[Expr], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|e| e.to_string()))
}

impl HarmonicTerm {
    /// `coef · H_{mk}^{(order)}(offset)`.
    pub fn generalized(coef: impl Into<Expr>, order: usize, offset: impl Into<Expr>, multiplier: u32) -> Self {
        HarmonicTerm { coef: coef.into(), offsets: vec![offset.into(); order], multiplier }
    }

    /// `coef · H_{mk}`.
    pub fn classical(coef: impl Into<Expr>, multiplier: u32) -> Self {
        Self::generalized(coef, 1, num(0), multiplier)
    }

    /// `coef · Σ_{i=1}^{mk} 1/Π_j(x_j+i)`.
    pub fn product(coef: impl Into<Expr>, offsets: Vec<Expr>, multiplier: u32) -> Self {
        HarmonicTerm { coef: coef.into(), offsets, multiplier }
    }

    /// `d/ds`, as a list of terms of the same shape.
    fn diff(&self, s: &str) -> Vec<HarmonicTerm> {
        let mut out = Vec::new();
        let dc = self.coef.diff(s);
        if dc != num(0) {
            out.push(HarmonicTerm { coef: dc, ..self.clone() });
        }
        for x in &self.offsets {
            let dx = x.diff(s);
            if dx != num(0) {
                let mut offsets = self.offsets.clone();
                offsets.push(x.clone());
                out.push(HarmonicTerm { coef: -(&self.coef * dx), offsets, multiplier: self.multiplier });
            }
        }
        out
    }
}

impl HarmonicCombo {
    pub fn constant(c: impl Into<Expr>) -> Self {
        HarmonicCombo { constant: c.into(), terms: Vec::new() }
    }

    pub fn of(terms: Vec<HarmonicTerm>) -> Self {
        HarmonicCombo { constant: num(0), terms }
    }

    pub fn plus(mut self, c: impl Into<Expr>) -> Self {
        self.constant = self.constant + c.into();
        self
    }

    fn diff(&self, s: &str) -> Option<HarmonicCombo> {
        let constant = self.constant.diff(s);
        let terms: Vec<_> = self.terms.iter().flat_map(|t| t.diff(s)).collect();
        (constant != num(0) || !terms.is_empty()).then_some(HarmonicCombo { constant, terms })
    }
}

impl WeightPart {
    pub fn new(prefactor: impl Into<Expr>) -> Self {
        WeightPart { prefactor: prefactor.into(), combos: Vec::new() }
    }

    pub fn times(mut self, combo: HarmonicCombo) -> Self {
        self.combos.push(combo);
        self
    }
}

impl TermSpec {
    /// `z^k` with unit weight and no Pochhammer factors.
    pub fn new(z: impl Into<Expr>) -> Self {
        TermSpec { z: z.into(), factors: Vec::new(), parts: vec![WeightPart::new(1)] }
    }

    /// Multiplies by `(param)_{mk}^exponent`, merging with an existing equal factor.
    pub fn factor(mut self, param: impl Into<Expr>, multiplier: u32, exponent: i32) -> Self {
        let param = param.into();
        if let Some(f) = self.factors.iter_mut().find(|f| f.param == param && f.multiplier == multiplier) {
            f.exponent += exponent;
        } else {
            self.factors.push(PochFactor { param, multiplier, exponent });
        }
        self.factors.retain(|f| f.exponent != 0);
        self
    }

    pub fn num(self, param: impl Into<Expr>) -> Self {
        self.factor(param, 1, 1)
    }

    pub fn den(self, param: impl Into<Expr>) -> Self {
        self.factor(param, 1, -1)
    }

    pub fn with_parts(mut self, parts: Vec<WeightPart>) -> Self {
        self.parts = parts;
        self
    }

    /// Multiplies every part's prefactor by `p`.
    pub fn scaled(mut self, p: impl Into<Expr>) -> Self {
        let p = p.into();
        for part in &mut self.parts {
            part.prefactor = &p * &part.prefactor;
        }
        self
    }

    /// Same core, single part with the given weight combination.
    pub fn weighted(self, prefactor: impl Into<Expr>, combos: Vec<HarmonicCombo>) -> Self {
        let part = WeightPart { prefactor: prefactor.into(), combos };
        self.with_parts(vec![part])
    }

    pub fn symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.z.symbols(&mut out);
        for f in &self.factors {
            f.param.symbols(&mut out);
        }
        for p in &self.parts {
            p.prefactor.symbols(&mut out);
            for c in &p.combos {
                c.constant.symbols(&mut out);
                for t in &c.terms {
                    t.coef.symbols(&mut out);
                    t.offsets.iter().for_each(|x| x.symbols(&mut out));
                }
            }
        }
        out
    }

    pub fn depends_on(&self, s: &str) -> bool {
        self.symbols().contains(s)
    }

    /// Structural checks: only prefactors may mention `k`.
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::Domain(format!("{what} must not depend on k")));
        if self.z.has_k() {
            return bad("z");
        }
        for f in &self.factors {
            if f.param.has_k() {
                return bad("a Pochhammer parameter");
            }
            if f.multiplier == 0 {
                return Err(Error::Domain("Pochhammer multiplier must be positive".into()));
            }
        }
        for p in &self.parts {
            for c in &p.combos {
                if c.constant.has_k() {
                    return bad("a harmonic constant");
                }
                for t in &c.terms {
                    if t.coef.has_k() || t.offsets.iter().any(Expr::has_k) {
                        return bad("a harmonic term");
                    }
                    if t.multiplier == 0 || t.offsets.is_empty() {
                        return Err(Error::Domain("harmonic sums need order ≥ 1 and multiplier ≥ 1".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Last index with a possibly nonzero term, when some numerator
    /// parameter is a nonpositive integer (or `z = 0`).
    pub fn terminating_index(&self, b: &Bindings) -> Result<Option<u64>> {
        let mut end: Option<u64> = None;
        if self.z.eval_rational(b)?.is_zero() {
            end = Some(0);
        }
        for f in self.factors.iter().filter(|f| f.exponent > 0) {
            if let Some(n) = nonpositive_integer(&f.param.eval_rational(b)?) {
                let last = n / f.multiplier as u64;
                end = Some(end.map_or(last, |e| e.min(last)));
            }
        }
        Ok(end)
    }

    /// Like [`terminating_index`](Self::terminating_index) but ignoring
    /// factors whose parameter moves with `s`.
    pub(crate) fn terminating_index_fixed(&self, b: &Bindings, s: &str) -> Result<Option<u64>> {
        let mut end: Option<u64> = None;
        if !self.z.depends_on(s) && self.z.eval_rational(b)?.is_zero() {
            end = Some(0);
        }
        for f in self.factors.iter().filter(|f| f.exponent > 0 && !f.param.depends_on(s)) {
            if let Some(n) = nonpositive_integer(&f.param.eval_rational(b)?) {
                let last = n / f.multiplier as u64;
                end = Some(end.map_or(last, |e| e.min(last)));
            }
        }
        Ok(end)
    }

    /// The term-wise derivative `d t_k / ds` as another spec with the same
    /// hypergeometric core. The logarithmic derivative of `(p)_{mk}^e` is
    /// `e·p'·H_{mk}(p−1)`, and that of `z^k` is `k·z'/z`.
    pub fn derivative(&self, s: &str) -> TermSpec {
        let log_terms: Vec<HarmonicTerm> = self
            .factors
            .iter()
            .filter_map(|f| {
                let dp = f.param.diff(s);
                (dp != num(0)).then(|| {
                    HarmonicTerm::generalized(num(f.exponent as i64) * dp, 1, &f.param - 1, f.multiplier)
                })
            })
            .collect();
        let dz = self.z.diff(s);
        let mut parts = Vec::new();
        for p in &self.parts {
            if !log_terms.is_empty() {
                let mut combos = vec![HarmonicCombo::of(log_terms.clone())];
                combos.extend(p.combos.iter().cloned());
                parts.push(WeightPart { prefactor: p.prefactor.clone(), combos });
            }
            if dz != num(0) {
                let pref = &p.prefactor * super::expr::k() * (&dz / &self.z);
                parts.push(WeightPart { prefactor: pref, combos: p.combos.clone() });
            }
            let dpref = p.prefactor.diff(s);
            if dpref != num(0) {
                parts.push(WeightPart { prefactor: dpref, combos: p.combos.clone() });
            }
            for (j, c) in p.combos.iter().enumerate() {
                if let Some(dc) = c.diff(s) {
                    let mut combos = p.combos.clone();
                    combos[j] = dc;
                    parts.push(WeightPart { prefactor: p.prefactor.clone(), combos });
                }
            }
        }
        TermSpec { z: self.z.clone(), factors: self.factors.clone(), parts }
    }

    /// Number of linear factors in the term ratio, numerator and denominator.
    pub fn degree_balance(&self) -> (u64, u64) {
        let mut n = 0;
        let mut d = 0;
        for f in &self.factors {
            let c = f.multiplier as u64 * f.exponent.unsigned_abs() as u64;
            if f.exponent > 0 {
                n += c;
            } else {
                d += c;
            }
        }
        (n, d)
    }

    /// `lim |t_{k+1}/t_k|` when the factor counts balance.
    pub fn asymptotic_ratio(&self, b: &Bindings) -> Result<Option<Rational>> {
        let (n, d) = self.degree_balance();
        if n != d {
            return Ok(None);
        }
        let mut r = self.z.eval_rational(b)?.abs();
        for f in &self.factors {
            let m = Rational::from_integer((f.multiplier as i64).into());
            r *= m.pow(f.multiplier as i32 * f.exponent);
        }
        Ok(Some(r))
    }
}

impl fmt::Display for HarmonicTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let offs: Vec<String> = self.offsets.iter().map(|x| x.to_string()).collect();
        let n = if self.multiplier == 1 { "k".to_string() } else { format!("{}k", self.multiplier) };
        write!(f, "({})*H[{n}]({})", self.coef, offs.join("; "))
    }
}

impl fmt::Display for HarmonicCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        if self.constant != num(0) || items.is_empty() {
            items.push(self.constant.to_string());
        }
        write!(f, "[{}]", items.join(" + "))
    }
}

/// Written as `sum_k z^k * (p)_{mk}^e ... * {parts}`; `H[mk](x1; x2)` is
/// `Σ_{i=1}^{mk} 1/((x1+i)(x2+i))`.
impl fmt::Display for TermSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sum_k ({})^k", self.z)?;
        for p in &self.factors {
            let n = if p.multiplier == 1 { "k".to_string() } else { format!("{}k", p.multiplier) };
            write!(f, " * ({})_{{{n}}}", p.param)?;
            if p.exponent != 1 {
                write!(f, "^{}", p.exponent)?;
            }
        }
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|p| {
                let mut s = format!("({})", p.prefactor);
                for c in &p.combos {
                    s.push_str(&format!("*{c}"));
                }
                s
            })
            .collect();
        if parts != ["(1)"] {
            write!(f, " * {{{}}}", parts.join(" + "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{int, rat};
    use crate::series::expr::{k, q, sym};

    fn bailey_like() -> TermSpec {
        let a = sym("a");
        TermSpec::new(q(1, 2)).num(&a).num(1 - &a).den(1).den(sym("b"))
    }

    #[test]
    fn factors_merge() {
        let s = TermSpec::new(1).num(q(1, 2)).num(q(1, 2)).den(1).den(1).den(1).num(1);
        assert_eq!(s.factors.len(), 2);
        assert_eq!(s.factors[0].exponent, 2);
        assert_eq!(s.factors[1].exponent, -2);
        assert_eq!(s.degree_balance(), (2, 2));
    }

    #[test]
    fn terminating_detection() {
        let s = TermSpec::new(1).num(sym("c")).factor(sym("b"), 2, 1).den(1);
        let b: Bindings = [("c".into(), int(-7)), ("b".into(), int(-5))].into();
        assert_eq!(s.terminating_index(&b).unwrap(), Some(2));
        let b: Bindings = [("c".into(), rat(1, 3)), ("b".into(), int(2))].into();
        assert_eq!(s.terminating_index(&b).unwrap(), None);
    }

    #[test]
    fn asymptotic_ratio_of_binomial_forms() {
        // C(2k,k)C(4k,2k)/x^k = (1)_{4k}/((1)_k² (1)_{2k}) / x^k → 64/|x|
        let s = TermSpec::new(1 / sym("x")).factor(1, 4, 1).factor(1, 1, -2).factor(1, 2, -1);
        let b: Bindings = [("x".into(), int(-192))].into();
        assert_eq!(s.asymptotic_ratio(&b).unwrap(), Some(rat(1, 3)));
    }

    #[test]
    fn derivative_structure() {
        let s = bailey_like().weighted(2 * k() + sym("a"), vec![]);
        let d = s.derivative("a");
        // log-derivative part, prefactor part
        assert_eq!(d.parts.len(), 2);
        assert_eq!(d.parts[0].combos[0].terms.len(), 2);
        assert!(bailey_like().derivative("zz").parts.is_empty());
    }

    #[test]
    fn rejects_k_in_core() {
        assert!(TermSpec::new(k()).validate().is_err());
        assert!(bailey_like().validate().is_ok());
    }
}
