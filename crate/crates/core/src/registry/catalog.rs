//! Compiled-in identity data.

use std::sync::OnceLock;

use super::closed::ClosedForm as C;
use super::identity::{Constraint, Identity, IdentityKind, Lhs, Param};
use crate::error::{Error, Result};
use crate::numeric::rational::{int, rat, Rational};
use crate::series::{k, num, q, sym, Expr, HarmonicCombo, HarmonicTerm, TermSpec, WeightPart};

fn entry(id: &str, anchor: &str, lhs: Lhs, rhs: C, params: &[(&str, Rational)], constraints: Vec<Constraint>) -> Identity {
    let kind = match (&lhs, rhs.contains_series()) {
        (Lhs::Limit { .. }, _) => IdentityKind::Limit,
        (_, true) => IdentityKind::SeriesEqSeries,
        (_, false) => IdentityKind::SeriesEqClosed,
    };
    Identity {
        id: id.to_string(),
        anchor: anchor.to_string(),
        kind,
        lhs,
        rhs,
        params: params.iter().map(|(n, v)| Param { name: n.to_string(), default: v.clone() }).collect(),
        constraints,
    }
}

fn series(id: &str, anchor: &str, lhs: TermSpec, rhs: C, params: &[(&str, Rational)], cs: Vec<Constraint>) -> Identity {
    entry(id, anchor, Lhs::Series(lhs), rhs, params, cs)
}

// C(2k,k) = (1)_{2k}/(1)_k², C(3k,k) = (1)_{3k}/((1)_k(1)_{2k}),
// C(4k,2k) = (1)_{4k}/(1)_{2k}², C(6k,3k) = (1)_{6k}/(1)_{3k}².
fn binom_2k_k(s: TermSpec, power: i32) -> TermSpec {
    s.factor(1, 2, power).factor(1, 1, -2 * power)
}

fn binom_3k_k(s: TermSpec) -> TermSpec {
    s.factor(1, 3, 1).factor(1, 1, -1).factor(1, 2, -1)
}

fn binom_4k_2k(s: TermSpec) -> TermSpec {
    s.factor(1, 4, 1).factor(1, 2, -2)
}

#[cfg(test)]
fn binom_6k_3k(s: TermSpec) -> TermSpec {
    s.factor(1, 6, 1).factor(1, 3, -2)
}

fn h(coef: impl Into<Expr>, m: u32) -> HarmonicTerm {
    HarmonicTerm::classical(coef, m)
}

fn h2(coef: impl Into<Expr>, m: u32) -> HarmonicTerm {
    HarmonicTerm::generalized(coef, 2, 0, m)
}

fn hx(coef: impl Into<Expr>, offset: impl Into<Expr>) -> HarmonicTerm {
    HarmonicTerm::generalized(coef, 1, offset, 1)
}

fn combo(terms: Vec<HarmonicTerm>) -> HarmonicCombo {
    HarmonicCombo::of(terms)
}

/// `Σ core·weight = coef · Σ core`.
fn log_family(id: &str, anchor: &str, core: TermSpec, weight: HarmonicCombo, coef: C, params: &[(&str, Rational)], cs: Vec<Constraint>) -> Identity {
    let lhs = core.clone().weighted(1, vec![weight]);
    series(id, anchor, lhs, coef * C::series(core), params, cs)
}

fn theorem_1_1() -> Vec<Identity> {
    let w3 = || combo(vec![h(3, 3), h(-1, 1)]);
    let w4 = || combo(vec![h(2, 4), h(-1, 2)]);
    let c23 = |x: i64| binom_3k_k(binom_2k_k(TermSpec::new(q(1, x)), 1));
    let c24 = |x: i64| binom_4k_2k(binom_2k_k(TermSpec::new(q(1, x)), 1));
    let half_log = |n, d| C::rat(q(1, 2)) * C::log(q(n, d));
    vec![
        log_family("thm1.1-a", "Theorem 1.1(a): C(2k,k)C(3k,k)/(-216)^k weighted by 3H_{3k}-H_k, log(8/9)", c23(-216), w3(), C::log(q(8, 9)), &[], vec![]),
        log_family("thm1.1-b", "Theorem 1.1(b): C(2k,k)C(4k,2k)/(-192)^k weighted by 2H_{4k}-H_{2k}, (1/2)log(3/4)", c24(-192), w4(), half_log(3, 4), &[], vec![]),
        log_family("thm1.1-c", "Theorem 1.1(c): C(2k,k)C(4k,2k)/(-4032)^k, (1/2)log(63/64)", c24(-4032), w4(), half_log(63, 64), &[], vec![]),
        log_family("thm1.1-d", "Theorem 1.1(d): C(2k,k)C(4k,2k)/72^k, log 3", c24(72), w4(), C::log(3), &[], vec![]),
        log_family("thm1.1-e", "Theorem 1.1(e): C(2k,k)C(4k,2k)/576^k, (1/2)log(9/8)", c24(576), w4(), half_log(9, 8), &[], vec![]),
    ]
}

/// `H^{(2)}_{2k} − H^{(2)}_k/4`.
fn quarter_weight() -> HarmonicCombo {
    combo(vec![h2(1, 2), h2(q(-1, 4), 1)])
}

fn central_32() -> TermSpec {
    binom_2k_k(TermSpec::new(q(1, 32)), 2)
}

fn gamma_quarter_family() -> Vec<Identity> {
    let (pi, g, gq) = (C::pi(), C::catalan(), C::gamma_quarter());
    let thm12_rhs = gq.clone().powi(2) * (pi.clone().powi(2) - C::rat(8) * g.clone())
        / (C::rat(32) * pi.clone() * C::sqrt_pi());
    let gamma_3_4 = pi.clone() * C::sqrt(2) / gq.clone();
    let thm32_rhs = gamma_3_4.powi(2) * (pi.clone().powi(2) + C::rat(8) * g - C::rat(16))
        / (C::rat(4) * pi.clone() * C::sqrt_pi());
    vec![
        series(
            "thm1.2",
            "Theorem 1.2: C(2k,k)^2/32^k {H^(2)_{2k} - H^(2)_k/4} = Gamma(1/4)^2 (pi^2-8G)/(32 pi sqrt(pi))",
            central_32().weighted(1, vec![quarter_weight()]),
            thm12_rhs,
            &[],
            vec![],
        ),
        series(
            "mathematica-2f1",
            "Section 1 motivating series: sum C(2k,k)^2/32^k = Gamma(1/4)^2/(2 pi sqrt(pi))",
            central_32(),
            gq.powi(2) / (C::rat(2) * pi * C::sqrt_pi()),
            &[],
            vec![],
        ),
        series(
            "thm3.2",
            "Theorem 3.2: C(2k,k)^2/(32^k (1+k)) {H^(2)_{2k} - H^(2)_k/4} = Gamma(3/4)^2 (pi^2+8G-16)/(4 pi sqrt(pi))",
            central_32().weighted(1 / (1 + k()), vec![quarter_weight()]),
            thm32_rhs,
            &[],
            vec![],
        ),
    ]
}

fn guillera_family() -> Vec<Identity> {
    let kk = k;
    let p_a = 20 * kk() * kk() + 8 * kk() + 1;
    let p_b = 820 * kk() * kk() + 180 * kk() + 13;
    let core = |z: Expr| binom_2k_k(TermSpec::new(z), 5);
    let za = q(-1, 4096);
    let zb = q(-1, 1 << 20);
    let pi_sq = || C::pi().powi(2);
    let weighted = |z: Expr, p: Expr, a: i64, c: i64| {
        core(z).with_parts(vec![
            WeightPart::new(p).times(combo(vec![h2(a, 2), h2(-3, 1)])),
            WeightPart::new(c),
        ])
    };
    vec![
        series("guillera-a", "Guillera: (20k^2+8k+1) C(2k,k)^5/(-2^12)^k = 8/pi^2", core(za.clone()).weighted(p_a.clone(), vec![]), C::rat(8) / pi_sq(), &[], vec![]),
        series("guillera-b", "Guillera: (820k^2+180k+13) C(2k,k)^5/(-2^20)^k = 128/pi^2", core(zb.clone()).weighted(p_b.clone(), vec![]), C::rat(128) / pi_sq(), &[], vec![]),
        series(
            "thm1.3-a",
            "Theorem 1.3(a): C(2k,k)^5/(-2^12)^k {(20k^2+8k+1)[8H^(2)_{2k}-3H^(2)_k]+4} = 8/3",
            weighted(za, p_a, 8, 4),
            C::rat(q(8, 3)),
            &[],
            vec![],
        ),
        series(
            "thm1.3-b",
            "Theorem 1.3(b): C(2k,k)^5/(-2^20)^k {(820k^2+180k+13)[11H^(2)_{2k}-3H^(2)_k]+43} = 128/3",
            weighted(zb, p_b, 11, 43),
            C::rat(q(128, 3)),
            &[],
            vec![],
        ),
    ]
}

/// Pochhammer form `(s)_k(1−s)_k/(1)_k² · (T/x)^k` of the §2 families.
fn parametric_family() -> Vec<Identity> {
    let x = || sym("x");
    let fam = |id: &str, anchor: &str, s: Rational, t: i64, half: bool, default: i64| {
        let one_minus = Rational::from_integer(1.into()) - &s;
        let core = TermSpec::new(t / x()).num(s.clone()).num(one_minus.clone()).den(1).den(1);
        let weight = if s == rat(1, 2) {
            combo(vec![hx(1, -s.clone())])
        } else {
            let c = if half { q(1, 2) } else { num(1) };
            combo(vec![hx(c.clone(), -s.clone()), hx(c, -one_minus)])
        };
        let log = C::log(x() / (x() - t));
        let coef = if half { C::rat(q(1, 2)) * log } else { log };
        log_family(id, anchor, core, weight, coef, &[("x", int(default))], vec![Constraint::AbsGreater(x(), int(t))])
    };
    vec![
        fam("thm2-o", "Section 2 parametric theorem: C(2k,k)^2/x^k (2H_{2k}-H_k) = (1/2)log(x/(x-16)) sum, |x|>16", rat(1, 2), 16, true, 32),
        fam("thm2-p", "Section 2 parametric theorem: C(2k,k)C(3k,k)/x^k (3H_{3k}-H_k) = log(x/(x-27)) sum, |x|>27", rat(1, 3), 27, false, -216),
        fam("thm2-q", "Section 2 parametric theorem: C(2k,k)C(4k,2k)/x^k (2H_{4k}-H_{2k}) = (1/2)log(x/(x-64)) sum, |x|>64", rat(1, 4), 64, true, -192),
        fam("thm2-r", "Section 2 parametric theorem: C(3k,k)C(6k,3k)/x^k (6H_{6k}-3H_{3k}-2H_{2k}+H_k) = log(x/(x-432)) sum, |x|>432", rat(1, 6), 432, false, 864),
    ]
}

/// `(a)_k(b)_k/((1)_k(c)_k) z^k`.
fn gauss(a: Expr, b: Expr, c: Expr, z: Expr) -> TermSpec {
    TermSpec::new(z).num(a).num(b).den(1).den(c)
}

fn euler_family() -> Vec<Identity> {
    let (a, b, c, x) = (sym("a"), sym("b"), sym("c"), sym("x"));
    let ab = || a.clone() + b.clone();
    let core_s = gauss(a.clone(), b.clone(), ab(), x.clone());
    let core_t = gauss(a.clone(), b.clone(), ab(), 1 / x.clone());
    let euler = series(
        "euler-transform",
        "Euler's transformation: 2F1(a,b;c;x) = (1-x)^(c-a-b) 2F1(c-a,c-b;c;x), |x|<1",
        gauss(a.clone(), b.clone(), c.clone(), x.clone()),
        C::pow(1 - x.clone(), c.clone() - a.clone() - b.clone())
            * C::series(gauss(c.clone() - a.clone(), c.clone() - b.clone(), c.clone(), x.clone())),
        &[("a", rat(1, 3)), ("b", rat(1, 4)), ("c", int(2)), ("x", rat(1, 5))],
        vec![Constraint::AbsLess(x.clone(), int(1)), Constraint::NotPole(c.clone())],
    );
    let wei_s = series(
        "wei-s",
        "The c=a+b case of the differentiated Euler transformation: sum (a)_k(b)_k/((1)_k(a+b)_k) x^k H_k(a-1)",
        core_s.clone().weighted(1, vec![combo(vec![hx(1, a.clone() - 1)])]),
        -(C::log(1 - x.clone()) * C::series(core_s.clone()))
            - C::series(core_s.weighted(1, vec![combo(vec![hx(1, b.clone() - 1)])])),
        &[("a", rat(1, 3)), ("b", rat(1, 2)), ("x", rat(1, 3))],
        vec![Constraint::AbsLess(x.clone(), int(1)), Constraint::NotPole(ab())],
    );
    let wei_t = log_family(
        "wei-t",
        "Replacing x by 1/x in the c=a+b case: (H_k(a-1)+H_k(b-1))/x^k = log(x/(x-1)) sum (a)_k(b)_k/((1)_k(a+b)_k x^k)",
        core_t,
        combo(vec![hx(1, a.clone() - 1), hx(1, b.clone() - 1)]),
        C::log(x.clone() / (x.clone() - 1)),
        &[("a", rat(1, 3)), ("b", rat(1, 2)), ("x", int(3))],
        vec![Constraint::AbsGreater(x, int(1)), Constraint::NotPole(ab())],
    );
    vec![euler, wei_s, wei_t]
}

/// The right-hand side of the `x ↦ 1/x` Euler identity exactly as printed,
/// with `(a)_k(1−a)_k` in place of `(a)_k(b)_k`. It agrees with `wei-t`
/// only when `a + b = 1`; kept outside the catalog for comparison.
pub fn wei_t_printed() -> Identity {
    let mut id = find("wei-t").expect("wei-t is in the catalog").clone();
    let (a, b, x) = (sym("a"), sym("b"), sym("x"));
    let printed = gauss(a.clone(), 1 - a.clone(), a + b, 1 / x.clone());
    id.id = "wei-t-printed".into();
    id.anchor = "Replacing x by 1/x, right-hand side as printed with (a)_k(1-a)_k".into();
    id.rhs = C::log(x.clone() / (x - 1)) * C::series(printed);
    id
}

fn bailey_family() -> Vec<Identity> {
    let (a, b) = (sym("a"), sym("b"));
    let core = |p: Expr| TermSpec::new(q(1, 2)).num(p.clone()).num(1 - p).den(1).den(sym("b"));
    let ratio = |den: Vec<Expr>| C::gamma_ratio(vec![b.clone() / 2, (1 + b.clone()) / 2], den);
    let lower = || vec![(a.clone() + b.clone()) / 2, (1 - a.clone() + b.clone()) / 2];
    let quarter = (1 + 2 * b.clone()) / 4;
    vec![
        series(
            "bailey-2f1",
            "Bailey's 2F1(a,1-a;b;1/2) summation",
            core(a.clone()),
            ratio(lower()),
            &[("a", rat(1, 3)), ("b", int(2))],
            vec![Constraint::NotPole(b.clone())],
        ),
        series(
            "bailey-b",
            "Differentiated Bailey summation: (1/2)^(k-1) ... sum 1/((a-1+i)(-a+i)) = Gamma-ratio (psi((1-a+b)/2)-psi((a+b)/2))/(1-2a)",
            core(a.clone()).weighted(2, vec![combo(vec![HarmonicTerm::product(1, vec![a.clone() - 1, -a.clone()], 1)])]),
            ratio(lower()) * (C::polygamma(0, (1 - a.clone() + b.clone()) / 2) - C::polygamma(0, (a.clone() + b.clone()) / 2))
                / C::rat(1 - 2 * a.clone()),
            &[("a", rat(1, 3)), ("b", int(2))],
            vec![Constraint::NotPole(b.clone()), Constraint::Nonzero(1 - 2 * a)],
        ),
        series(
            "bailey-c",
            "Limit a -> 1/2 of the differentiated Bailey summation: psi'((1+2b)/4) Gamma(b/2)Gamma((1+b)/2)/(16 Gamma((1+2b)/4)^2)",
            core(q(1, 2)).weighted(1, vec![quarter_weight()]),
            ratio(vec![quarter.clone(), quarter.clone()]) * C::polygamma(1, quarter) / C::rat(16),
            &[("b", int(1))],
            vec![Constraint::NotPole(b)],
        ),
    ]
}

struct Five {
    a: Expr,
    b: Expr,
    c: Expr,
    d: Expr,
    e: Expr,
}

fn five() -> Five {
    Five { a: sym("a"), b: sym("b"), c: sym("c"), d: sym("d"), e: sym("e") }
}

fn dougall_family() -> Vec<Identity> {
    let Five { a, b, c, d, .. } = five();
    let one_a = || 1 + a.clone();
    let lhs = TermSpec::new(1)
        .num(a.clone())
        .num(1 + a.clone() / 2)
        .num(b.clone())
        .num(c.clone())
        .num(d.clone())
        .den(1)
        .den(a.clone() / 2)
        .den(one_a() - b.clone())
        .den(one_a() - c.clone())
        .den(one_a() - d.clone());
    let rhs = C::gamma_ratio(
        vec![one_a() - b.clone(), one_a() - c.clone(), one_a() - d.clone(), one_a() - b.clone() - c.clone() - d.clone()],
        vec![one_a(), one_a() - b.clone() - c.clone(), one_a() - b.clone() - d.clone(), one_a() - c.clone() - d.clone()],
    );
    vec![series(
        "dougall-5f4",
        "Dougall's 5F4 summation (terminating instances)",
        lhs,
        rhs,
        &[("a", rat(1, 2)), ("b", int(-3)), ("c", rat(1, 3)), ("d", rat(1, 5))],
        vec![Constraint::Terminating(b), Constraint::NotPole(a / 2)],
    )]
}

/// `Σ (a+2k)(b)_k(c)_k(d)_k(e)_k/((1+a−b)_k(1+a−c)_k(1+a−d)_k(1+a−e)_k)`.
fn well_poised_rhs() -> TermSpec {
    let Five { a, b, c, d, e } = five();
    let s = TermSpec::new(1).num(b.clone()).num(c.clone()).num(d.clone()).num(e.clone());
    let s = s.den(1 + a.clone() - b).den(1 + a.clone() - c).den(1 + a.clone() - d).den(1 + a.clone() - e);
    s.weighted(a + 2 * k(), vec![])
}

/// `Γ(1+a−b)Γ(1+a−c)Γ(1+a−d)Γ(2+a−b−c−d)/(Γ(1+a)Γ(1+a−b−c)Γ(1+a−b−d)Γ(1+a−c−d))`.
fn four_gamma_rhs() -> C {
    let Five { a, b, c, d, .. } = five();
    let o = || 1 + a.clone();
    C::gamma_ratio(
        vec![o() - b.clone(), o() - c.clone(), o() - d.clone(), 2 + a.clone() - b.clone() - c.clone() - d.clone()],
        vec![o(), o() - b.clone() - c.clone(), o() - b.clone() - d.clone(), o() - c - d],
    )
}

fn chu_family() -> Vec<Identity> {
    let Five { a, b, c, d, e } = five();
    let kk = k();
    let s = |x: &Expr| x.clone();
    let one = || num(1);
    // 1 + 2a − b − c − d − e, and friends
    let w = one() + 2 * s(&a) - s(&b) - s(&c) - s(&d) - s(&e);
    let alpha = (one() + 2 * s(&a) - s(&b) - s(&c) - s(&d) + 2 * kk.clone()) * (s(&a) - s(&e) + kk.clone()) / (w.clone() + kk.clone())
        + (one() + s(&a) - s(&b) - s(&c) + kk.clone()) * (one() + s(&a) - s(&b) - s(&d) + kk.clone()) * (s(&e) + kk.clone())
            / ((one() + s(&a) - s(&b) + 2 * kk.clone()) * (w.clone() + kk.clone()));
    let thm9 = TermSpec::new(-1)
        .num(s(&c))
        .num(s(&d))
        .num(s(&e))
        .num(one() + s(&a) - s(&b) - s(&c))
        .num(one() + s(&a) - s(&b) - s(&d))
        .num(one() + s(&a) - s(&b) - s(&e))
        .den(one() + s(&a) - s(&c))
        .den(one() + s(&a) - s(&d))
        .den(one() + s(&a) - s(&e))
        .den(w.clone())
        .factor(one() + s(&a) - s(&b), 2, -1)
        .weighted(alpha, vec![]);

    let beta = kk.clone() * (one() + 2 * s(&a) - s(&b) - s(&c) - s(&d) + 2 * kk.clone()) / s(&a)
        + (s(&a) + kk.clone()) * (one() + s(&a) - s(&b) - s(&c) + kk.clone()) * (one() + s(&a) - s(&b) - s(&d) + kk.clone())
            / (s(&a) * (one() + s(&a) - s(&b) + 2 * kk.clone()));
    let thm9_beta = TermSpec::new(-1)
        .num(s(&a))
        .num(s(&c))
        .num(s(&d))
        .num(one() - s(&b))
        .num(one() + s(&a) - s(&b) - s(&c))
        .num(one() + s(&a) - s(&b) - s(&d))
        .den(1)
        .den(one() + s(&a) - s(&c))
        .den(one() + s(&a) - s(&d))
        .den(2 + s(&a) - s(&b) - s(&c) - s(&d))
        .factor(one() + s(&a) - s(&b), 2, -1)
        .weighted(beta, vec![]);

    let lambda = (one() + 2 * s(&a) - s(&b) - s(&c) - s(&d) + 3 * kk.clone()) * (s(&a) - s(&e) + 2 * kk.clone()) / (w.clone() + 2 * kk.clone())
        + (s(&e) + kk.clone()) * (one() + s(&a) - s(&b) - s(&c) + kk.clone())
            / ((one() + s(&a) - s(&b) + 2 * kk.clone()) * (one() + s(&a) - s(&d) + 2 * kk.clone()))
            * (one() + s(&a) - s(&b) - s(&d) + kk.clone())
            * (one() + s(&a) - s(&c) - s(&d) + kk.clone())
            * (2 + 2 * s(&a) - s(&b) - s(&d) - s(&e) + 3 * kk.clone())
            / ((w.clone() + 2 * kk.clone()) * (w.clone() + 1 + 2 * kk.clone()))
        + (s(&c) + kk.clone()) * (s(&e) + kk.clone()) * (one() + s(&a) - s(&b) - s(&c) + kk.clone()) * (one() + s(&a) - s(&b) - s(&d) + kk.clone())
            / ((one() + s(&a) - s(&b) + 2 * kk.clone())
                * (one() + s(&a) - s(&c) + 2 * kk.clone())
                * (one() + s(&a) - s(&d) + 2 * kk.clone())
                * (one() + s(&a) - s(&e) + 2 * kk.clone()))
            * (one() + s(&a) - s(&b) - s(&e) + kk.clone())
            * (one() + s(&a) - s(&c) - s(&d) + kk.clone())
            * (one() + s(&a) - s(&d) - s(&e) + kk.clone())
            / ((w.clone() + 2 * kk.clone()) * (w.clone() + 1 + 2 * kk.clone()));
    let thm32 = TermSpec::new(-1)
        .num(s(&b))
        .num(s(&c))
        .num(s(&d))
        .num(s(&e))
        .num(one() + s(&a) - s(&b) - s(&c))
        .num(one() + s(&a) - s(&b) - s(&d))
        .num(one() + s(&a) - s(&b) - s(&e))
        .num(one() + s(&a) - s(&c) - s(&d))
        .num(one() + s(&a) - s(&c) - s(&e))
        .num(one() + s(&a) - s(&d) - s(&e))
        .factor(one() + s(&a) - s(&b), 2, -1)
        .factor(one() + s(&a) - s(&c), 2, -1)
        .factor(one() + s(&a) - s(&d), 2, -1)
        .factor(one() + s(&a) - s(&e), 2, -1)
        .factor(w.clone(), 2, -1)
        .weighted(lambda, vec![]);

    let v = 2 + s(&a) - s(&b) - s(&c) - s(&d);
    let theta = 2 * kk.clone() * (one() + 2 * s(&a) - s(&b) - s(&c) - s(&d) + 3 * kk.clone()) / s(&a)
        + (s(&a) + kk.clone()) * (one() + s(&a) - s(&b) - s(&c) + kk.clone()) / (s(&a) * (one() + s(&a) - s(&b) + 2 * kk.clone()))
            * (one() + s(&a) - s(&b) - s(&d) + kk.clone())
            * (one() + s(&a) - s(&c) - s(&d) + kk.clone())
            * (2 + s(&a) - s(&b) - s(&d) + 3 * kk.clone())
            / ((one() + s(&a) - s(&d) + 2 * kk.clone()) * (v.clone() + 2 * kk.clone()))
        + (s(&a) + kk.clone()) * (s(&c) + kk.clone()) * (one() - s(&b) + kk.clone()) * (one() - s(&d) + kk.clone())
            / (s(&a) * (1 + 2 * kk.clone()) * (one() + s(&a) - s(&b) + 2 * kk.clone()) * (one() + s(&a) - s(&c) + 2 * kk.clone()))
            * (one() + s(&a) - s(&b) - s(&c) + kk.clone())
            * (one() + s(&a) - s(&b) - s(&d) + kk.clone())
            * (one() + s(&a) - s(&c) - s(&d) + kk.clone())
            / ((one() + s(&a) - s(&d) + 2 * kk.clone()) * (v.clone() + 2 * kk.clone()));
    let thm32_theta = TermSpec::new(-1)
        .num(s(&a))
        .num(s(&b))
        .num(s(&c))
        .num(s(&d))
        .num(one() - s(&b))
        .num(one() - s(&c))
        .num(one() - s(&d))
        .num(one() + s(&a) - s(&b) - s(&c))
        .num(one() + s(&a) - s(&b) - s(&d))
        .num(one() + s(&a) - s(&c) - s(&d))
        .factor(1, 2, -1)
        .factor(one() + s(&a) - s(&b), 2, -1)
        .factor(one() + s(&a) - s(&c), 2, -1)
        .factor(one() + s(&a) - s(&d), 2, -1)
        .factor(v, 2, -1)
        .weighted(theta, vec![]);

    let five_defaults: &[(&str, Rational)] = &[("a", rat(1, 3)), ("b", rat(2, 7)), ("c", int(-3)), ("d", rat(1, 5)), ("e", rat(3, 11))];
    let four_defaults: &[(&str, Rational)] = &[("a", rat(1, 3)), ("b", rat(2, 7)), ("c", rat(3, 11)), ("d", int(-3))];
    vec![
        series(
            "chu-thm9",
            "Chu's Theorem 9 transformation with alpha_k (terminating instances)",
            thm9,
            C::series(well_poised_rhs()),
            five_defaults,
            vec![Constraint::Terminating(c.clone())],
        ),
        series(
            "chu-thm9-beta",
            "e=a case of Chu's Theorem 9 summed by Dougall, weight beta_k (terminating instances)",
            thm9_beta,
            four_gamma_rhs(),
            four_defaults,
            vec![Constraint::Terminating(d.clone())],
        ),
        series(
            "chu-thm32",
            "Chu's Theorem 32 transformation with lambda_k (terminating instances)",
            thm32,
            C::series(well_poised_rhs()),
            five_defaults,
            vec![Constraint::Terminating(c)],
        ),
        series(
            "chu-thm32-theta",
            "e=a case of Chu's Theorem 32 summed by Dougall, weight theta_k (terminating instances)",
            thm32_theta,
            four_gamma_rhs(),
            four_defaults,
            vec![Constraint::Terminating(d)],
        ),
    ]
}

/// `(1−2d)tan(dπ)/π`.
fn tan_rhs(d: &Expr) -> C {
    C::rat(1 - 2 * d.clone()) * C::tan_pi(d.clone()) / C::pi()
}

/// `sec²(dπ) − (2/π)tan(dπ)/(1−2d)`.
fn sec_rhs(d: &Expr) -> C {
    C::cos_pi(d.clone()).powi(-2) - C::rat(2) * C::tan_pi(d.clone()) / (C::pi() * C::rat(1 - 2 * d.clone()))
}

fn tangent_family() -> Vec<Identity> {
    let d = sym("d");
    let kk = k();
    let half = || q(1, 2);
    let core_b = TermSpec::new(q(-1, 4))
        .num(half())
        .factor(d.clone(), 1, 2)
        .factor(1 - d.clone(), 1, 2)
        .factor(1, 1, -3)
        .den(half() + d.clone())
        .den(q(3, 2) - d.clone());
    let p = d.clone() - d.clone() * d.clone() + 2 * kk.clone() + 5 * kk.clone() * kk.clone();
    let pair = |c: i64, x: Expr, y: Expr, m: u32| HarmonicTerm::product(c, vec![x, y], m);
    let hb = combo(vec![pair(2, d.clone() - 1, -d.clone(), 1), pair(-1, d.clone() - half(), half() - d.clone(), 1)]);
    let eq_c = core_b.clone().with_parts(vec![WeightPart::new(p.clone()).times(hb), WeightPart::new(1)]);

    let core_bb = TermSpec::new(-1)
        .factor(half(), 1, 4)
        .factor(d.clone(), 1, 3)
        .factor(1 - d.clone(), 1, 3)
        .factor(1, 2, -3)
        .factor(half() + d.clone(), 2, -1)
        .factor(q(3, 2) - d.clone(), 2, -1);
    let omega = 2 * kk.clone() * (1 + 6 * kk.clone())
        + (d.clone() + kk.clone()) * (1 - d.clone() + kk.clone()) * (2 - d.clone() + 3 * kk.clone()) / (3 - 2 * d.clone() + 4 * kk.clone())
        + (d.clone() + kk.clone()) * (1 - d.clone() + kk.clone()).pow(3)
            / ((1 + 2 * d.clone() + 4 * kk.clone()) * (3 - 2 * d.clone() + 4 * kk.clone()));
    let hbb = combo(vec![pair(3, d.clone() - 1, -d.clone(), 1), pair(-1, d.clone() - half(), half() - d.clone(), 2)]);
    let d_omega = omega.diff("d") / (1 - 2 * d.clone());
    let eq_cc = core_bb.clone().with_parts(vec![WeightPart::new(omega.clone()).times(hbb), WeightPart::new(d_omega)]);

    let params: &[(&str, Rational)] = &[("d", rat(1, 3))];
    let cs = || vec![Constraint::NotInteger(d.clone() - half())];
    vec![
        series("eq-b", "(a,b,c)=(1/2,1/2,1-d) case of the beta_k summation: (-1/4)^k ... (d-d^2+2k+5k^2) = (1-2d)tan(d pi)/pi", core_b.weighted(p, vec![]), tan_rhs(&d), params, cs()),
        series("eq-c", "Derivative in d of the (d-d^2+2k+5k^2) series divided by 1-2d: sec^2(d pi) - (2/pi)tan(d pi)/(1-2d)", eq_c, sec_rhs(&d), params, cs()),
        series("eq-bb", "(a,b,c)=(1/2,1/2,1-d) case of the theta_k summation, weight Omega_k(d) = (1-2d)tan(d pi)/pi", core_bb.weighted(omega, vec![]), tan_rhs(&d), params, cs()),
        series("eq-cc", "Derivative in d of the Omega_k(d) series divided by 1-2d: sec^2(d pi) - (2/pi)tan(d pi)/(1-2d)", eq_cc, sec_rhs(&d), params, cs()),
        entry(
            "lhopital-rule",
            "L'Hopital limit: sec^2(d pi) - (2/pi)tan(d pi)/(1-2d) -> 2/3 as d -> 1/2",
            Lhs::Limit { expr: sec_rhs(&d), var: "d".into(), point: rat(1, 2) },
            C::rat(q(2, 3)),
            &[],
            vec![],
        ),
    ]
}

/// Every identity, ordered by id.
pub fn catalog() -> &'static [Identity] {
    static CATALOG: OnceLock<Vec<Identity>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut v: Vec<Identity> = [
            theorem_1_1(),
            gamma_quarter_family(),
            guillera_family(),
            parametric_family(),
            euler_family(),
            bailey_family(),
            dougall_family(),
            chu_family(),
            tangent_family(),
        ]
        .into_iter()
        .flatten()
        .collect();
        v.sort_by(|a, b| a.id.cmp(&b.id));
        v
    })
}

pub fn find(id: &str) -> Result<&'static Identity> {
    catalog().iter().find(|i| i.id == id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}
