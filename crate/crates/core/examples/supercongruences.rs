//! Truncated binomial sums modulo p² for small primes.

use hypersum::congruence::{legendre, scan, CheckResult, SUPERCONGRUENCES};

fn main() -> hypersum::Result<()> {
    for sc in &SUPERCONGRUENCES {
        println!("({}) {sc}", sc.which);
    }
    println!("(-3/7) = {}, (2/7) = {}", legendre(-3, 7)?, legendre(2, 7)?);
    let out = scan(60, None)?;
    for c in &out {
        println!("({}) p={:<3} {:<5} lhs={:<5} rhs={:<5}", c.which, c.p, c.result.as_str(), c.lhs.unwrap_or_default(), c.rhs.unwrap_or_default());
    }
    let held = out.iter().filter(|c| c.result == CheckResult::Holds).count();
    println!("{held}/{} hold", out.len());
    Ok(())
}
