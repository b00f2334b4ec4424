//! Term generation and summation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::expr::{rational_env, Bindings, Expr};
use super::field::{Dual, Field, Fraction, Poly, RatFunc};
use super::spec::TermSpec;
use crate::error::{Error, Result};
use crate::numeric::approx::{bits_for_digits, tolerance, Approx};
use crate::numeric::bigfloat::{BigFloat, Round};
use crate::numeric::rational::{log2_estimate, Rational};
use crate::special::pochhammer;

/// Hard stop for slowly converging instances.
const MAX_TERMS: u64 = 200_000;

#[derive(Clone, Debug)]
pub struct SumResult {
    pub value: Approx,
    /// The exact partial sum behind `value`.
    pub partial: Rational,
    pub terms_used: u64,
    /// Rigorous bound on the omitted tail; zero for finite sums.
    pub tail_bound: BigFloat,
    /// True when the sum was finite and `partial` is the exact value.
    pub exact: bool,
}

struct HarmonicState<F> {
    coef: F,
    offsets: Vec<F>,
    multiplier: u64,
    running: F,
}

struct ComboState<F> {
    constant: F,
    terms: Vec<HarmonicState<F>>,
}

impl<F: Field> ComboState<F> {
    fn value(&self) -> F {
        self.terms.iter().fold(self.constant.clone(), |acc, t| acc.plus(&t.coef.times(&t.running)))
    }
}

struct PartState<F> {
    prefactor: Expr,
    combos: Vec<ComboState<F>>,
}

/// Produces `t_0, t_1, …` by exact ratio updates.
pub(crate) struct TermIter<F> {
    env: BTreeMap<String, F>,
    z: F,
    factors: Vec<(F, u64, i32)>,
    parts: Vec<PartState<F>>,
    k: u64,
    core: F,
}

impl<F: Field> TermIter<F> {
    pub(crate) fn new(spec: &TermSpec, env: BTreeMap<String, F>) -> Result<Self> {
        spec.validate()?;
        let lookup = |s: &str| env.get(s).cloned().ok_or_else(|| Error::UnboundSymbol(s.to_string()));
        let ev = |e: &Expr| e.eval::<F>(&lookup, None);
        let z = ev(&spec.z)?;
        let factors = spec
            .factors
            .iter()
            .map(|f| Ok((ev(&f.param)?, f.multiplier as u64, f.exponent)))
            .collect::<Result<Vec<_>>>()?;
        let mut parts = Vec::new();
        for p in &spec.parts {
            let mut combos = Vec::new();
            for c in &p.combos {
                let mut terms = Vec::new();
                for t in &c.terms {
                    terms.push(HarmonicState {
                        coef: ev(&t.coef)?,
                        offsets: t.offsets.iter().map(ev).collect::<Result<_>>()?,
                        multiplier: t.multiplier as u64,
                        running: F::zero_value(),
                    });
                }
                combos.push(ComboState { constant: ev(&c.constant)?, terms });
            }
            parts.push(PartState { prefactor: p.prefactor.clone(), combos });
        }
        Ok(TermIter { env, z, factors, parts, k: 0, core: F::one_value() })
    }

    pub(crate) fn k(&self) -> u64 {
        self.k
    }

    /// `z^k Π (p)_{mk}^e` at the current index.
    pub(crate) fn core(&self) -> &F {
        &self.core
    }

    /// Current value of every harmonic combination, part by part.
    pub(crate) fn combo_values(&self) -> Vec<Vec<F>> {
        self.parts.iter().map(|p| p.combos.iter().map(ComboState::value).collect()).collect()
    }

    /// The weight given precomputed [`Self::combo_values`].
    fn weight_from(&self, combos: &[Vec<F>]) -> Result<F> {
        let lookup = |s: &str| self.env.get(s).cloned().ok_or_else(|| Error::UnboundSymbol(s.to_string()));
        let kv = F::from_rational(&Rational::from_integer(self.k.into()));
        let mut w = F::zero_value();
        for (p, values) in self.parts.iter().zip(combos) {
            let mut v = p.prefactor.eval::<F>(&lookup, Some(&kv)).map_err(|e| at_k(e, self.k))?;
            for c in values {
                v = v.times(c);
            }
            w = w.plus(&v);
        }
        Ok(w)
    }

    pub(crate) fn term(&self) -> Result<F> {
        self.term_from(&self.combo_values())
    }

    pub(crate) fn term_from(&self, combos: &[Vec<F>]) -> Result<F> {
        if self.core.vanishes() {
            return Ok(F::zero_value());
        }
        Ok(self.core.times(&self.weight_from(combos)?))
    }

    pub(crate) fn advance(&mut self) -> Result<()> {
        let k = self.k;
        if !self.core.vanishes() {
            let mut num = self.z.clone();
            let mut den = F::one_value();
            for (p, m, e) in &self.factors {
                for j in 0..*m {
                    let lin = p.plus(&F::from_rational(&Rational::from_integer((m * k + j).into())));
                    for _ in 0..e.unsigned_abs() {
                        if *e > 0 {
                            num = num.times(&lin);
                        } else {
                            den = den.times(&lin);
                        }
                    }
                }
            }
            self.core = self
                .core
                .times(&num)
                .divide(&den)
                .map_err(|_| Error::Pole(format!("a denominator Pochhammer factor vanishes at k = {}", k + 1)))?;
        }
        for part in &mut self.parts {
            for combo in &mut part.combos {
                for t in &mut combo.terms {
                    for i in t.multiplier * k + 1..=t.multiplier * (k + 1) {
                        let iv = F::from_rational(&Rational::from_integer(i.into()));
                        let prod = t.offsets.iter().fold(F::one_value(), |acc, x| acc.times(&x.plus(&iv)));
                        let inc = F::one_value()
                            .divide(&prod)
                            .map_err(|_| Error::Pole(format!("a harmonic sum meets a pole at index {i}")))?;
                        t.running = t.running.plus(&inc);
                    }
                }
            }
        }
        self.k += 1;
        Ok(())
    }
}

fn at_k(e: Error, k: u64) -> Error {
    match e {
        Error::Pole(m) => Error::Pole(format!("{m} at k = {k}")),
        other => other,
    }
}

fn rational_iter(spec: &TermSpec, b: &Bindings) -> Result<TermIter<Rational>> {
    TermIter::new(spec, b.clone())
}

fn dual_iter(spec: &TermSpec, b: &Bindings, wrt: &str) -> Result<TermIter<Dual<Rational>>> {
    let env = b
        .iter()
        .map(|(s, v)| {
            let d = if s == wrt { Dual::variable(v.clone()) } else { Dual::constant(v.clone()) };
            (s.clone(), d)
        })
        .collect();
    TermIter::new(spec, env)
}

/// `t_k`, computed from scratch (no recurrence), for checks and spot values.
pub fn term(spec: &TermSpec, k: u64, b: &Bindings) -> Result<Rational> {
    spec.validate()?;
    let env = rational_env(b);
    let ev = |e: &Expr| e.eval::<Rational>(&env, None);
    let mut core = ev(&spec.z)?.pow(k as i32);
    for f in &spec.factors {
        let p = pochhammer(&ev(&f.param)?, f.multiplier as u64 * k);
        if f.exponent < 0 && p.is_zero() {
            return Err(Error::Pole(format!("a denominator Pochhammer factor vanishes at k = {k}")));
        }
        core *= p.pow(f.exponent);
    }
    if core.is_zero() {
        return Ok(core);
    }
    let kv = Rational::from_integer(k.into());
    let mut w = Rational::zero();
    for p in &spec.parts {
        let mut v = p.prefactor.eval::<Rational>(&env, Some(&kv)).map_err(|e| at_k(e, k))?;
        for c in &p.combos {
            let mut cv = ev(&c.constant)?;
            for t in &c.terms {
                let offs = t.offsets.iter().map(ev).collect::<Result<Vec<_>>>()?;
                let mut h = Rational::zero();
                for i in 1..=t.multiplier as u64 * k {
                    let iv = Rational::from_integer(i.into());
                    let prod: Rational = offs.iter().map(|x| x + &iv).product();
                    if prod.is_zero() {
                        return Err(Error::Pole(format!("a harmonic sum meets a pole at index {i}")));
                    }
                    h += prod.recip();
                }
                cv += ev(&t.coef)? * h;
            }
            v *= cv;
        }
        w += v;
    }
    Ok(core * w)
}

/// Exact value of a finite series (some numerator parameter is a
/// nonpositive integer).
pub fn sum_terminating(spec: &TermSpec, b: &Bindings) -> Result<Rational> {
    Ok(sum_terminating_counted(spec, b)?.0)
}

pub(crate) fn sum_terminating_counted(spec: &TermSpec, b: &Bindings) -> Result<(Rational, u64)> {
    let Some(end) = spec.terminating_index(b)? else {
        return Err(Error::NonTerminating(
            "no numerator parameter is a nonpositive integer; use tolerance mode".into(),
        ));
    };
    let mut it = rational_iter(spec, b)?;
    let mut s = it.term()?;
    while it.k() < end {
        it.advance()?;
        s += it.term()?;
    }
    Ok((s, end + 1))
}

/// Convergence data of the term ratio, fixed once the bindings are known.
struct TailModel {
    /// `|z| Π m_num / Π m_den`.
    scale: Rational,
    /// Normalized linear factors `k + a` of the ratio numerator and denominator, ascending.
    num: Vec<Rational>,
    den: Vec<Rational>,
    prefactors: Vec<RatFunc>,
    /// Per part, per combo: `(|coef|, offsets, m)` of each harmonic term.
    harmonics: Vec<Vec<Vec<(Rational, Vec<Rational>, u64)>>>,
}

impl TailModel {
    fn new(spec: &TermSpec, b: &Bindings) -> Result<Self> {
        let env = rational_env(b);
        let ev = |e: &Expr| e.eval::<Rational>(&env, None);
        let (n_num, n_den) = spec.degree_balance();
        if n_num > n_den {
            return Err(Error::Convergence("terms grow factorially (more numerator than denominator factors)".into()));
        }
        if let Some(r) = spec.asymptotic_ratio(b)? {
            if r >= Rational::one() {
                return Err(Error::Convergence(format!(
                    "asymptotic term ratio {} is not below 1",
                    crate::numeric::rational::format_rational(&r)
                )));
            }
        }
        let mut scale = ev(&spec.z)?.abs();
        let mut num = Vec::new();
        let mut den = Vec::new();
        for f in &spec.factors {
            let p = ev(&f.param)?;
            let m = Rational::from_integer((f.multiplier as i64).into());
            for j in 0..f.multiplier {
                let a = (&p + Rational::from_integer(j.into())) / &m;
                for _ in 0..f.exponent.unsigned_abs() {
                    if f.exponent > 0 {
                        scale *= &m;
                        num.push(a.clone());
                    } else {
                        scale /= &m;
                        den.push(a.clone());
                    }
                }
            }
        }
        num.sort();
        den.sort();
        let renv = |s: &str| b.get(s).map(RatFunc::from_rational).ok_or_else(|| Error::UnboundSymbol(s.to_string()));
        let mut prefactors = Vec::new();
        let mut harmonics = Vec::new();
        for p in &spec.parts {
            prefactors.push(p.prefactor.eval::<RatFunc>(&renv, Some(&RatFunc::x()))?);
            let mut per_combo = Vec::new();
            for c in &p.combos {
                let mut ts = Vec::new();
                for t in &c.terms {
                    let offs = t.offsets.iter().map(ev).collect::<Result<Vec<_>>>()?;
                    ts.push((ev(&t.coef)?.abs(), offs, t.multiplier as u64));
                }
                per_combo.push(ts);
            }
            harmonics.push(per_combo);
        }
        Ok(TailModel { scale, num, den, prefactors, harmonics })
    }

    /// `sup_{k ≥ K} |c_{k+1}/c_k|`, when `K` is past every sign change.
    fn ratio_bound(&self, big_k: &Rational) -> Option<Rational> {
        if self.num.iter().chain(&self.den).any(|a| !(big_k + a).is_positive()) {
            return None;
        }
        let mut r = self.scale.clone();
        for (i, b) in self.den.iter().enumerate() {
            match self.num.get(i) {
                // (k+a)/(k+b) is decreasing when a > b, and below 1 otherwise
                Some(a) if a > b => r *= (big_k + a) / (big_k + b),
                Some(_) => {}
                None => r /= big_k + b,
            }
        }
        Some(r)
    }

    /// Upper bound for `Σ_{n≥0} |t_{K+n}|` given the state at `K`.
    fn tail(&self, k: u64, core: &Rational, combos: &[Vec<Rational>]) -> Option<Rational> {
        if core.is_zero() {
            return Some(Rational::zero());
        }
        let big_k = Rational::from_integer(k.max(1).into());
        let rho = self.ratio_bound(&big_k)?;
        if rho >= Rational::one() {
            return None;
        }
        let mut weight = Poly::new(Vec::new());
        for (pi, pref) in self.prefactors.iter().enumerate() {
            let (a, e) = pref.growth_bound(&big_k)?;
            let mut part = Poly::constant(a * big_k.pow(e as i32));
            let one_plus_n = Poly::new(vec![Rational::one(), Rational::one()]);
            for _ in 0..e.max(0) {
                part = part.mul_poly(&one_plus_n);
            }
            for (ci, terms) in self.harmonics[pi].iter().enumerate() {
                let mut delta = Rational::zero();
                for (c, offs, m) in terms {
                    let first = Rational::from_integer((m * k + 1).into());
                    let mut prod = Rational::one();
                    for x in offs {
                        let v = x + &first;
                        if !v.is_positive() {
                            return None;
                        }
                        prod *= v;
                    }
                    delta += c * Rational::from_integer((*m).into()) / prod;
                }
                part = part.mul_poly(&Poly::new(vec![combos[pi][ci].abs(), delta]));
            }
            weight = weight.add_poly(&part);
        }
        let sums = geometric_moments(&rho, weight.coeffs().len());
        let total: Rational = weight.coeffs().iter().zip(&sums).map(|(c, s)| c * s).sum();
        Some(core.abs() * total)
    }
}

/// `S_i = Σ_{n≥0} n^i ρ^n` for `i < count`, via Eulerian numbers.
fn geometric_moments(rho: &Rational, count: usize) -> Vec<Rational> {
    let one_minus = Rational::one() - rho;
    let mut out = Vec::with_capacity(count);
    // eulerian[j] = A(i, j)
    let mut eulerian: Vec<BigInt> = vec![BigInt::one()];
    for i in 0..count {
        if i == 0 {
            out.push(one_minus.recip());
            continue;
        }
        if i > 1 {
            let mut next = vec![BigInt::zero(); i];
            for j in 0..i {
                let keep = eulerian.get(j).cloned().unwrap_or_default() * BigInt::from(j + 1);
                let shift = if j > 0 { eulerian.get(j - 1).cloned().unwrap_or_default() * BigInt::from(i - j) } else { BigInt::zero() };
                next[j] = keep + shift;
            }
            eulerian = next;
        }
        let poly = Poly::new(eulerian.iter().map(|c| Rational::from_integer(c.clone())).collect());
        out.push(rho * poly.eval(rho) / one_minus.pow(i as i32 + 1));
    }
    out
}

fn round_up(q: &Rational) -> BigFloat {
    BigFloat::from_rational(q, 64, Round::Up)
}

fn finish(partial: Rational, terms_used: u64, tail: Rational, digits: u32, exact: bool) -> SumResult {
    let prec = bits_for_digits(digits) + 16 + log2_estimate(&partial).max(0) as u32;
    let value = Approx::from_rational(&partial, prec).add_err_rational(&tail);
    SumResult { value, partial, terms_used, tail_bound: round_up(&tail), exact }
}

/// Scalars a summation can accumulate in.
trait Accumulator: Field {
    /// `log2 |self|`, up to one.
    fn log2(&self) -> i64;
    fn exact(&self) -> Rational;
    /// Keeps a running sum from outgrowing the terms added to it.
    fn settle(&mut self, _last: &Self) {}
}

impl Accumulator for Rational {
    fn log2(&self) -> i64 {
        log2_estimate(self)
    }
    fn exact(&self) -> Rational {
        self.clone()
    }
}

impl Accumulator for Fraction {
    fn log2(&self) -> i64 {
        self.log2_estimate()
    }
    fn exact(&self) -> Rational {
        self.to_rational()
    }
    fn settle(&mut self, last: &Self) {
        if self.den_bits() > 2 * last.den_bits() + 256 {
            self.reduce();
        }
    }
}

/// Drives a summation; `step` returns the next term and the state at the
/// first omitted index.
fn sum_geometric<F, S>(model: &TailModel, digits: u32, mut step: S) -> Result<(Rational, u64, Rational)>
where
    F: Accumulator,
    S: FnMut() -> Result<(F, u64, F, Vec<Vec<F>>)>,
{
    let budget = tolerance(digits) / Rational::from_integer(2.into());
    let target = log2_estimate(&budget);
    let mut sum = F::zero_value();
    let mut next_check = 0u64;
    loop {
        // state after the call refers to index k, the first omitted term
        let (t, k, core, combos) = step()?;
        sum = sum.plus(&t);
        sum.settle(&t);
        if core.vanishes() {
            return Ok((sum.exact(), k, Rational::zero()));
        }
        if k >= next_check {
            let count = combos.iter().map(Vec::len).sum::<usize>() as u64 + 1;
            let w = combos.iter().flatten().map(F::log2).max().unwrap_or(0).max(0) + count.ilog2() as i64 + 1;
            if core.log2() + w < target {
                let core = core.exact();
                let combos: Vec<Vec<Rational>> = combos.iter().map(|c| c.iter().map(F::exact).collect()).collect();
                if let Some(tail) = model.tail(k, &core, &combos) {
                    if tail <= budget {
                        return Ok((sum.exact(), k, tail));
                    }
                }
                next_check = k + 1 + k / 16;
            }
        }
        if k >= MAX_TERMS {
            return Err(Error::Convergence(format!("no convergence within {MAX_TERMS} terms")));
        }
    }
}

/// Sums to within `10^-digits`; finite series are summed exactly.
pub fn sum_to_digits(spec: &TermSpec, b: &Bindings, digits: u32) -> Result<SumResult> {
    if spec.terminating_index(b)?.is_some() {
        let (s, n) = sum_terminating_counted(spec, b)?;
        return Ok(finish(s, n, Rational::zero(), digits, true));
    }
    let model = TailModel::new(spec, b)?;
    let mut it: TermIter<Fraction> = TermIter::new(spec, b.iter().map(|(s, v)| (s.clone(), Fraction::from_rational(v))).collect())?;
    let mut combos = it.combo_values();
    let (sum, k, tail) = sum_geometric(&model, digits, || {
        let t = it.term_from(&combos)?;
        it.advance()?;
        combos = it.combo_values();
        Ok((t, it.k(), it.core().clone(), combos.clone()))
    })?;
    Ok(finish(sum, k, tail, digits, false))
}

/// Derivative of the sum with respect to `wrt`, within `10^-digits`.
pub fn derivative_series(spec: &TermSpec, b: &Bindings, wrt: &str, digits: u32) -> Result<Approx> {
    Ok(derivative_series_detailed(spec, b, wrt, digits)?.value)
}

/// As [`derivative_series`], keeping the term count and tail bound. Terms
/// come from dual-number evaluation; the tail bound uses the symbolic
/// term-wise derivative, which has the same hypergeometric core.
pub fn derivative_series_detailed(spec: &TermSpec, b: &Bindings, wrt: &str, digits: u32) -> Result<SumResult> {
    if !spec.depends_on(wrt) {
        for s in spec.symbols() {
            if !b.contains_key(&s) {
                return Err(Error::UnboundSymbol(s));
            }
        }
        return Ok(finish(Rational::zero(), 0, Rational::zero(), digits, true));
    }
    if !b.contains_key(wrt) {
        return Err(Error::UnboundSymbol(wrt.to_string()));
    }
    let mut it = dual_iter(spec, b, wrt)?;
    if let Some(end) = spec.terminating_index_fixed(b, wrt)? {
        let mut s = it.term()?.der;
        while it.k() < end {
            it.advance()?;
            s += it.term()?.der;
        }
        return Ok(finish(s, end + 1, Rational::zero(), digits, true));
    }
    let dspec = spec.derivative(wrt);
    let model = TailModel::new(&dspec, b)?;
    let mut shadow = rational_iter(&dspec, b)?;
    let (sum, k, tail) = sum_geometric(&model, digits, || {
        let t = it.term()?.der;
        debug_assert_eq!(t, shadow.term()?);
        it.advance()?;
        shadow.advance()?;
        Ok((t, it.k(), shadow.core().clone(), shadow.combo_values()))
    })?;
    Ok(finish(sum, k, tail, digits, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{int, rat};
    use crate::series::expr::{k, q, sym};
    use crate::series::spec::{HarmonicCombo, HarmonicTerm};
    use crate::special::harmonic;

    fn bind(pairs: &[(&str, Rational)]) -> Bindings {
        pairs.iter().map(|(s, v)| (s.to_string(), v.clone())).collect()
    }

    /// Σ C(2k,k)²/32^k {H^(2)_{2k} − H^(2)_k/4}
    fn squared_central_harmonic() -> TermSpec {
        TermSpec::new(q(1, 32)).factor(1, 2, 2).factor(1, 1, -4).weighted(
            1,
            vec![HarmonicCombo::of(vec![
                HarmonicTerm::generalized(1, 2, 0, 2),
                HarmonicTerm::generalized(q(-1, 4), 2, 0, 1),
            ])],
        )
    }

    #[test]
    fn term_examples() {
        let s = squared_central_harmonic();
        let b = Bindings::new();
        assert_eq!(term(&s, 0, &b).unwrap(), int(0));
        assert_eq!(term(&s, 1, &b).unwrap(), rat(1, 8));
        let g = TermSpec::new(q(-1, 4096)).factor(1, 2, 5).factor(1, 1, -10).weighted(20 * k() * k() + 8 * k() + 1, vec![]);
        assert_eq!(term(&g, 0, &b).unwrap(), int(1));
    }

    #[test]
    fn incremental_matches_direct() {
        let s = squared_central_harmonic();
        let mut it = rational_iter(&s, &Bindings::new()).unwrap();
        for kk in 0..40 {
            assert_eq!(it.term().unwrap(), term(&s, kk, &Bindings::new()).unwrap());
            it.advance().unwrap();
        }
    }

    #[test]
    fn dougall_terminating() {
        let a = sym("a");
        let (bb, c, d) = (sym("b"), sym("c"), sym("d"));
        let s = TermSpec::new(1)
            .num(&a)
            .num(1 + &a / 2)
            .num(&bb)
            .num(&c)
            .num(&d)
            .den(1)
            .den(&a / 2)
            .den(1 + &a - &bb)
            .den(1 + &a - &c)
            .den(1 + &a - &d);
        let b = bind(&[("a", rat(1, 2)), ("b", int(-2)), ("c", rat(1, 3)), ("d", rat(1, 5))]);
        let (a, c, d) = (rat(1, 2), rat(1, 3), rat(1, 5));
        let one = int(1);
        let rhs = pochhammer(&(&one + &a), 2) * pochhammer(&(&one + &a - &c - &d), 2)
            / (pochhammer(&(&one + &a - &c), 2) * pochhammer(&(&one + &a - &d), 2));
        assert_eq!(sum_terminating(&s, &b).unwrap(), rhs);
        let open = bind(&[("a", rat(1, 2)), ("b", rat(-2, 3)), ("c", rat(1, 3)), ("d", rat(1, 5))]);
        assert!(matches!(sum_terminating(&s, &open), Err(Error::NonTerminating(_))));
    }

    #[test]
    fn zero_factor_stops_after_first_term() {
        let s = TermSpec::new(3).num(0).den(1);
        assert_eq!(sum_terminating(&s, &Bindings::new()).unwrap(), int(1));
    }

    fn family_o() -> TermSpec {
        TermSpec::new(16 / sym("x")).factor(q(1, 2), 1, 2).factor(1, 1, -2)
    }

    #[test]
    fn convergence_region() {
        let b = bind(&[("x", int(32))]);
        let r = sum_to_digits(&family_o(), &b, 30).unwrap();
        assert!(r.value.meets_digits(30));
        assert_eq!(family_o().asymptotic_ratio(&b).unwrap(), Some(rat(1, 2)));
        for x in [8, 16, -16] {
            let b = bind(&[("x", int(x))]);
            assert!(matches!(sum_to_digits(&family_o(), &b, 30), Err(Error::Convergence(_))));
        }
    }

    #[test]
    fn geometric_sum_is_enclosed() {
        // Σ (1/3)^k = 3/2 and Σ k (1/3)^k = 3/4
        let s = TermSpec::new(q(1, 3));
        let r = sum_to_digits(&s, &Bindings::new(), 40).unwrap();
        assert!(r.value.contains_rational(&rat(3, 2)));
        let s = TermSpec::new(q(1, 3)).weighted(k(), vec![]);
        let r = sum_to_digits(&s, &Bindings::new(), 40).unwrap();
        assert!(r.value.contains_rational(&rat(3, 4)));
        assert!(r.value.meets_digits(40));
    }

    #[test]
    fn moments_match_brute_force() {
        let rho = rat(2, 5);
        let m = geometric_moments(&rho, 5);
        for (i, s) in m.iter().enumerate() {
            let brute: Rational = (0..400u32).map(|n| Rational::from_integer(BigInt::from(n).pow(i as u32)) * rho.pow(n as i32)).sum();
            assert!((s - brute).abs() < rat(1, 1_000_000_000_000));
        }
    }

    #[test]
    fn derivative_of_geometric_pochhammer() {
        // d/da Σ (a)_k z^k/k! at a = 1 equals Σ z^k H_k
        let s = TermSpec::new(q(1, 2)).num(sym("a")).den(1);
        let b = bind(&[("a", int(1))]);
        let d = derivative_series(&s, &b, "a", 30).unwrap();
        let h = TermSpec::new(q(1, 2)).weighted(1, vec![HarmonicCombo::of(vec![HarmonicTerm::classical(1, 1)])]);
        let direct = sum_to_digits(&h, &Bindings::new(), 30).unwrap().value;
        assert!(d.abs_diff(&direct).cmp_rational(&tolerance(29)).is_le());
        // Σ z^k H_k = −log(1−z)/(1−z) = 2 log 2 at z = 1/2
        let two_log2 = crate::numeric::elem::ln2(128).mul_pow2(1);
        assert!(d.abs_diff(&two_log2).cmp_rational(&tolerance(29)).is_le());
        assert!(derivative_series(&s, &b, "zz", 30).unwrap().is_exact_zero());
    }

    #[test]
    fn harmonic_values_track() {
        let s = TermSpec::new(q(1, 2)).weighted(1, vec![HarmonicCombo::of(vec![HarmonicTerm::classical(1, 3)])]);
        let mut it = rational_iter(&s, &Bindings::new()).unwrap();
        for _ in 0..5 {
            it.advance().unwrap();
        }
        assert_eq!(it.combo_values()[0][0], harmonic(15));
    }
}
