//! Acceptance criteria 1–12. Each test prints one `PASS`/`FAIL` line to
//! stderr (uncaptured) and fails when its criterion is not met. Tests are
//! serialized so the timing budgets are measured without contention.

use std::io::Write;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use hypersum::congruence::{scan, CheckResult, SUPERCONGRUENCES};
use hypersum::numeric::{int, rat, tolerance, Approx, Rational};
use hypersum::registry::{evaluate_closed_form, find, limit_errors, sweep, verify, ConstKind, Status, VerificationReport};
use hypersum::series::{dual_pochhammer, Bindings, Dual};
use hypersum::special::constants::cross_check;
use hypersum::special::{binomial, constant, gamma, gen_harmonic, pochhammer, polygamma, ConstantName};
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

static SERIAL: Mutex<()> = Mutex::new(());

fn report(n: u32, ok: bool, detail: &str) {
    let line = format!("acceptance {n:>2}: {} {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(ok, "criterion {n} failed: {detail}");
}

fn serial() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

fn bind(pairs: &[(&str, Rational)]) -> Bindings {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// `ok` status with `|lhs − rhs| ≤ 10^-digits`.
fn holds(r: &VerificationReport, digits: u32) -> bool {
    r.status == Status::Ok && r.residual.as_ref().is_some_and(|e| e.cmp_rational(&tolerance(digits)).is_le())
}

fn close(a: &Approx, b: &Approx, digits: u32) -> bool {
    let bound = tolerance(digits);
    let slack = a.err().to_rational() + b.err().to_rational();
    (a.value().to_rational() - b.value().to_rational()).abs_le(&(&bound - &slack).max(Rational::zero())) && slack < bound
}

trait AbsLe {
    fn abs_le(&self, b: &Rational) -> bool;
}

impl AbsLe for Rational {
    fn abs_le(&self, b: &Rational) -> bool {
        num_traits::Signed::abs(self) <= *b
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

#[test]
fn criterion_01_theorem_1_1() {
    let _g = serial();
    let mut ok = true;
    let mut notes = Vec::new();
    for id in ["thm1.1-a", "thm1.1-b", "thm1.1-c", "thm1.1-d", "thm1.1-e"] {
        let (r, t) = timed(|| verify(id, &Bindings::new(), 40).unwrap());
        let pass = holds(&r, 40) && t < Duration::from_secs(5);
        ok &= pass;
        notes.push(format!("{id} {} {}ms {}t", r.status.as_str(), t.as_millis(), r.terms_used));
    }
    report(1, ok, &notes.join(", "));
}

#[test]
fn criterion_02_gamma_quarter_theorems() {
    let _g = serial();
    let mut ok = true;
    let mut notes = Vec::new();
    for id in ["thm1.2", "thm3.2"] {
        let r = verify(id, &Bindings::new(), 40).unwrap();
        ok &= holds(&r, 40);
        notes.push(format!("{id} {}", r.status.as_str()));
    }
    // The Bailey closed form carries no Catalan constant; at b = 1, 2 its
    // series is term-for-term the left side of thm1.2, thm3.2.
    let bailey = find("bailey-c").unwrap();
    ok &= !bailey.rhs.uses_constant(&ConstKind::Catalan);
    for (b, id) in [(1, "thm1.2"), (2, "thm3.2")] {
        let r = verify("bailey-c", &bind(&[("b", int(b))]), 40).unwrap();
        ok &= holds(&r, 40);
        let general = evaluate_closed_form(&bailey.rhs, &bind(&[("b", int(b))]), 42).unwrap();
        let printed = evaluate_closed_form(&find(id).unwrap().rhs, &Bindings::new(), 42).unwrap();
        ok &= close(&general, &printed, 40);
        notes.push(format!("bailey-c(b={b}) {} and matches {id} rhs", r.status.as_str()));
    }
    report(2, ok, &notes.join(", "));
}

#[test]
fn criterion_03_theorem_1_3() {
    let _g = serial();
    let mut ok = true;
    let mut notes = Vec::new();
    for (id, value) in [("thm1.3-a", rat(8, 3)), ("thm1.3-b", rat(128, 3))] {
        ok &= find(id).unwrap().rhs.exact(&Bindings::new()).unwrap() == Some(value);
        let (r, t) = timed(|| verify(id, &Bindings::new(), 40).unwrap());
        ok &= holds(&r, 40) && t < Duration::from_secs(5);
        notes.push(format!("{id} {} {}ms", r.status.as_str(), t.as_millis()));
    }
    report(3, ok, &notes.join(", "));
}

#[test]
fn criterion_04_guillera() {
    let _g = serial();
    let a = verify("guillera-a", &Bindings::new(), 40).unwrap();
    let b = verify("guillera-b", &Bindings::new(), 40).unwrap();
    let ok = holds(&a, 40) && holds(&b, 40);
    report(4, ok, &format!("guillera-a {}, guillera-b {}", a.status.as_str(), b.status.as_str()));
}

#[test]
fn criterion_05_parametric_families() {
    let _g = serial();
    let mut ok = true;
    let mut notes = Vec::new();
    let cases = [("thm2-p", vec![-216], vec!["thm1.1-a"]), ("thm2-q", vec![-192, -4032, 72, 576], vec!["thm1.1-b", "thm1.1-c", "thm1.1-d", "thm1.1-e"])];
    for (fam, xs, thms) in cases {
        let values: Vec<Rational> = xs.iter().map(|&x| int(x)).collect();
        let reports = sweep(fam, "x", &values, 30).unwrap();
        for (r, thm) in reports.iter().zip(thms) {
            let t = verify(thm, &Bindings::new(), 30).unwrap();
            let same = match (&r.lhs, &t.lhs, &r.rhs, &t.rhs) {
                (Some(a), Some(b), Some(c), Some(d)) => close(a, b, 30) && close(c, d, 30),
                _ => false,
            };
            ok &= holds(r, 30) && same;
            notes.push(format!("{fam}(x={}) {} = {thm}", r.bindings["x"], r.status.as_str()));
        }
    }
    for (fam, xs) in [("thm2-o", [-32, 32]), ("thm2-r", [-864, 864])] {
        for r in sweep(fam, "x", &xs.map(int), 30).unwrap() {
            ok &= holds(&r, 30);
            notes.push(format!("{fam}(x={}) {}", r.bindings["x"], r.status.as_str()));
        }
    }
    for (fam, x) in [("thm2-o", 16), ("thm2-p", 27), ("thm2-q", 64), ("thm2-r", 432)] {
        let r = verify(fam, &bind(&[("x", int(x))]), 30).unwrap();
        ok &= r.status == Status::ConvergenceError;
        notes.push(format!("{fam}(x={x}) {}", r.status.as_str()));
    }
    report(5, ok, &notes.join(", "));
}

/// Random rational with denominator ≤ 7.
fn small_rational(rng: &mut StdRng) -> Rational {
    rat(rng.gen_range(-20..=20), rng.gen_range(1..=7))
}

/// Draws bindings until the instance avoids every pole, then requires an
/// exact zero residual.
fn exact_instances(rng: &mut StdRng, id: &str, count: usize, draw: impl Fn(&mut StdRng) -> Bindings) -> (usize, usize) {
    let (mut exact, mut done) = (0, 0);
    while done < count {
        let r = verify(id, &draw(rng), 30).unwrap();
        if r.status == Status::DomainError {
            continue;
        }
        done += 1;
        if r.status == Status::Ok && r.exact && r.residual.as_ref().is_some_and(|e| e.is_zero()) {
            exact += 1;
        }
    }
    (exact, done)
}

#[test]
fn criterion_06_exact_terminating() {
    let _g = serial();
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let start = Instant::now();
    let dougall = exact_instances(&mut rng, "dougall-5f4", 100, |r| {
        let n = -r.gen_range(0..=6);
        bind(&[("a", small_rational(r)), ("b", int(n)), ("c", small_rational(r)), ("d", small_rational(r))])
    });
    let chu = |r: &mut StdRng| {
        let n = -r.gen_range(0..=6);
        bind(&[("a", small_rational(r)), ("b", small_rational(r)), ("c", int(n)), ("d", small_rational(r)), ("e", small_rational(r))])
    };
    let t9 = exact_instances(&mut rng, "chu-thm9", 50, chu);
    let t32 = exact_instances(&mut rng, "chu-thm32", 50, chu);
    let elapsed = start.elapsed();
    let ok = dougall == (100, 100) && t9 == (50, 50) && t32 == (50, 50) && elapsed < Duration::from_secs(60);
    report(6, ok, &format!("dougall {}/100, chu-thm9 {}/50, chu-thm32 {}/50 exact, {}ms", dougall.0, t9.0, t32.0, elapsed.as_millis()));
}

#[test]
fn criterion_07_intermediate_identities() {
    let _g = serial();
    let mut ok = true;
    let mut failed = Vec::new();
    let mut check = |id: &str, b: Bindings, digits: u32| {
        let r = verify(id, &b, digits).unwrap();
        if !holds(&r, digits) {
            ok = false;
            failed.push(format!("{id}{:?}", r.bindings));
        }
    };
    for d in [rat(1, 3), rat(1, 4), rat(1, 5), rat(1, 6), rat(2, 5)] {
        check("eq-b", bind(&[("d", d.clone())]), 30);
        check("eq-c", bind(&[("d", d)]), 30);
    }
    for d in [rat(1, 3), rat(1, 4)] {
        check("eq-bb", bind(&[("d", d.clone())]), 25);
        check("eq-cc", bind(&[("d", d)]), 25);
    }
    for (a, b) in [(rat(1, 3), int(2)), (rat(1, 4), int(3))] {
        check("bailey-b", bind(&[("a", a), ("b", b)]), 25);
    }
    for b in 1..=3 {
        check("bailey-c", bind(&[("b", int(b))]), 25);
    }
    ok &= find("bailey-c").unwrap().rhs.uses_constant(&ConstKind::Polygamma(1));
    let detail = if failed.is_empty() { "eq-b, eq-c x5; eq-bb, eq-cc x2; bailey-b x2; bailey-c x3 all ok".to_string() } else { format!("failed: {}", failed.join(", ")) };
    report(7, ok, &detail);
}

#[test]
fn criterion_08_limit_rate() {
    let _g = serial();
    let ms: Vec<u32> = (3..=8).collect();
    let errs: Vec<f64> = limit_errors("lhopital-rule", &ms, 40)
        .unwrap()
        .iter()
        .map(|(_, below, above)| below.to_f64().abs().max(above.to_f64().abs()))
        .collect();
    let converges = errs.windows(2).all(|w| w[1] < w[0]) && errs.last().is_some_and(|e| *e < 1e-8);
    let ratios: Vec<f64> = errs.windows(2).map(|w| w[1] / w[0]).collect();
    let in_window = ratios.iter().all(|r| (0.05..=0.2).contains(r));
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.3e}")).collect::<Vec<_>>().join(" ");
    report(8, converges && in_window, &format!("errors {} ratios {} (window [0.05, 0.2])", fmt(&errs), fmt(&ratios)));
}

#[test]
fn criterion_09_special_functions() {
    let _g = serial();
    let d = 45;
    let pi2 = constant(&ConstantName::Pi, d).unwrap().square();
    let g8 = constant(&ConstantName::Catalan, d).unwrap().mul_rational(&int(8));
    let t = |q: Rational| polygamma(1, &q, d).unwrap();
    let zero = Approx::zero(200);
    let b = close(&t(rat(1, 4)).sub(&pi2).sub(&g8), &zero, 40);
    let c = close(&t(rat(3, 4)).sub(&pi2).add(&g8), &zero, 40);
    let e = close(&t(rat(5, 4)), &t(rat(1, 4)).add_rational(&int(-16)), 40);
    let mut rng = StdRng::seed_from_u64(0x5eed_0009);
    let mut rec = 0;
    for _ in 0..50 {
        let x = rat(rng.gen_range(1..400), rng.gen_range(1..40));
        let all = (0..=3u32).all(|n| {
            let step = polygamma(n, &(&x + int(1)), 30).unwrap().sub(&polygamma(n, &x, 30).unwrap());
            let fact: i64 = (1..=n as i64).product();
            let sign = if n % 2 == 0 { 1 } else { -1 };
            step.contains_rational(&(int(sign * fact) / hypersum::numeric::rational::pow(&x, n as i64 + 1).unwrap()))
        });
        rec += all as u32;
    }
    let ok = b && c && e && rec == 50;
    report(9, ok, &format!("psi'(1/4)-pi^2-8G {b}, psi'(3/4)-pi^2+8G {c}, psi'(5/4)=psi'(1/4)-16 {e}, recurrence {rec}/50"));
}

#[test]
fn criterion_10_exact_property_suites() {
    let _g = serial();
    let zero = Rational::zero();
    let shifted = |n: u64, x: Rational| gen_harmonic(n, 1, &x).unwrap();
    // Running sums H_{mk} for m = 1, 2, 3, 4, 6 and H_k at the seven offsets.
    let (mut h, mut hx) = ([zero.clone(), zero.clone(), zero.clone(), zero.clone(), zero.clone()], vec![zero.clone(); 7]);
    let ms = [1u64, 2, 3, 4, 6];
    let shifts = [rat(-1, 2), rat(-1, 3), rat(-2, 3), rat(-1, 4), rat(-3, 4), rat(-1, 6), rat(-5, 6)];
    let mut offsets_ok = true;
    for k in 0..=300u64 {
        if k > 0 {
            for (v, m) in h.iter_mut().zip(ms) {
                for i in m * (k - 1) + 1..=m * k {
                    *v += Rational::one() / int(i as i64);
                }
            }
            for (v, s) in hx.iter_mut().zip(&shifts) {
                *v += (s + int(k as i64)).recip();
            }
        }
        let [h1, h2, h3, h4, h6] = &h;
        offsets_ok &= hx[0] == int(2) * h2 - h1
            && &hx[1] + &hx[2] == int(3) * h3 - h1
            && &hx[3] + &hx[4] == int(4) * h4 - int(2) * h2
            && &hx[5] + &hx[6] == int(6) * h6 - int(3) * h3 - int(2) * h2 + h1;
    }
    offsets_ok &= hx[0] == shifted(300, rat(-1, 2));

    let bin = |n: u64, k: u64| Rational::from_integer(binomial(n, k));
    let mut ratios_ok = true;
    let (mut p12, mut p13, mut p23, mut p14, mut p34, mut p16, mut p56, mut p1) =
        (Rational::one(), Rational::one(), Rational::one(), Rational::one(), Rational::one(), Rational::one(), Rational::one(), Rational::one());
    for k in 0..=200u64 {
        let ki = k as i32;
        let one = p1.pow(2);
        let c2 = bin(2 * k, k);
        ratios_ok &= &p12 * &p12 / &one == c2.pow(2) / int(16).pow(ki)
            && &p13 * &p23 / &one == &c2 * bin(3 * k, k) / int(27).pow(ki)
            && &p14 * &p34 / &one == &c2 * bin(4 * k, 2 * k) / int(64).pow(ki)
            && &p16 * &p56 / &one == bin(3 * k, k) * bin(6 * k, 3 * k) / int(432).pow(ki);
        let kr = int(k as i64);
        p12 *= rat(1, 2) + &kr;
        p13 *= rat(1, 3) + &kr;
        p23 *= rat(2, 3) + &kr;
        p14 *= rat(1, 4) + &kr;
        p34 *= rat(3, 4) + &kr;
        p16 *= rat(1, 6) + &kr;
        p56 *= rat(5, 6) + &kr;
        p1 *= int(1) + &kr;
    }

    let mut rng = StdRng::seed_from_u64(0x5eed_0010);
    let mut dual_ok = 0;
    let mut drawn = 0;
    while drawn < 200 {
        let x = rat(rng.gen_range(-60..60), rng.gen_range(1..8));
        let m = rng.gen_range(0..=50u64);
        let Ok(h) = gen_harmonic(m, 1, &(&x - int(1))) else { continue };
        drawn += 1;
        let d = dual_pochhammer(&Dual::variable(x.clone()), m);
        dual_ok += (d.val == pochhammer(&x, m) && d.der == pochhammer(&x, m) * h) as u32;
    }
    let ok = offsets_ok && ratios_ok && dual_ok == 200;
    report(10, ok, &format!("offset relations k<=300 {offsets_ok}, Pochhammer-binomial ratios k<=200 {ratios_ok}, dual law {dual_ok}/200"));
}

#[test]
fn criterion_11_supercongruences() {
    let _g = serial();
    let (out, t) = timed(|| scan(199, None).unwrap());
    let expected: usize = (5..=199u64)
        .filter(|&p| hypersum::congruence::is_prime(p))
        .map(|p| SUPERCONGRUENCES.iter().filter(|c| c.applies(p)).count())
        .sum();
    let holds = out.iter().filter(|c| c.result == CheckResult::Holds).count();
    let ok = holds == out.len() && out.len() == expected && t < Duration::from_secs(30);
    report(11, ok, &format!("{holds}/{} applicable checks hold for 5 <= p <= 199 in {}ms", out.len(), t.as_millis()));
}

#[test]
fn criterion_12_constant_cross_checks() {
    let _g = serial();
    let mut ok = true;
    let mut notes = Vec::new();
    for name in [ConstantName::Pi, ConstantName::Catalan, ConstantName::GammaQuarter] {
        let (a, b) = cross_check(&name, 62).expect("two methods").unwrap();
        let agree = close(&a, &b, 60);
        ok &= agree;
        notes.push(format!("{name} {agree}"));
    }
    let gq = constant(&ConstantName::GammaQuarter, 64).unwrap();
    let g34 = gamma(&rat(3, 4), 64).unwrap();
    let pi = constant(&ConstantName::Pi, 64).unwrap();
    let s2 = constant(&ConstantName::Sqrt(int(2)), 64).unwrap();
    let reflect = close(&gq.mul(&g34), &pi.mul(&s2), 60);
    ok &= reflect;
    notes.push(format!("Gamma(1/4)Gamma(3/4)=pi*sqrt(2) {reflect}"));
    report(12, ok, &notes.join(", "));
}
