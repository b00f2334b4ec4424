//! Terminating summations are exact: both sides reduce to one rational.

use hypersum::numeric::rational::format_rational;
use hypersum::numeric::{int, rat};
use hypersum::registry::verify;
use hypersum::series::{sum_terminating, sym, Bindings, TermSpec};

fn main() -> hypersum::Result<()> {
    let b: Bindings = [("a", rat(1, 2)), ("b", int(-6)), ("c", rat(1, 3)), ("d", rat(2, 7))]
        .into_iter()
        .map(|(s, v)| (s.to_string(), v))
        .collect();
    let r = verify("dougall-5f4", &b, 30)?;
    println!("dougall-5f4 b=-6: {} (exact {}, {} terms)", r.status.as_str(), r.exact, r.terms_used);
    for id in ["chu-thm9", "chu-thm9-beta", "chu-thm32", "chu-thm32-theta"] {
        let r = verify(id, &Bindings::new(), 30)?;
        println!("{id:<16} {} (exact {})", r.status.as_str(), r.exact);
    }

    // Chu-Vandermonde: Σ (-n)_k (b)_k / ((c)_k k!) = (c-b)_n / (c)_n
    let spec = TermSpec::new(1).num(sym("n")).num(sym("b")).den(sym("c")).den(1);
    let b: Bindings = [("n", int(-7)), ("b", rat(2, 3)), ("c", rat(5, 4))].into_iter().map(|(s, v)| (s.to_string(), v)).collect();
    println!("vandermonde n=7: {}", format_rational(&sum_terminating(&spec, &b)?));
    Ok(())
}
