//! Differentiating a series in a parameter with dual numbers.
//!
//! `Σ (a)_k z^k / k! = (1 − z)^{−a}`, so the derivative in `a` is
//! `−log(1 − z)(1 − z)^{−a}`.

use hypersum::numeric::rat;
use hypersum::series::{derivative_series_detailed, sym, Bindings, TermSpec};
use hypersum::special::{constant, ConstantName};

fn main() -> hypersum::Result<()> {
    let spec = TermSpec::new(sym("z")).num(sym("a")).den(1);
    let (a, z) = (rat(1, 2), rat(1, 3));
    let b: Bindings = [("a".to_string(), a.clone()), ("z".to_string(), z.clone())].into();
    let d = derivative_series_detailed(&spec, &b, "a", 40)?;

    let base = rat(1, 1) - &z;
    let log = constant(&ConstantName::Log(base.clone()), 45)?;
    let power = constant(&ConstantName::PowRat(base, -a), 45)?;
    let closed = log.mul(&power).neg();
    println!("series  {} ({} terms)", d.value.to_decimal_string(40), d.terms_used);
    println!("closed  {}", closed.to_decimal_string(40));
    println!("agree   {}", d.value.overlaps(&closed));
    Ok(())
}
