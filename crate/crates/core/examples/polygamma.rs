//! Trigamma at quarter arguments against `π² ± 8G`.

use hypersum::numeric::rat;
use hypersum::special::{constant, digamma, polygamma, ConstantName};

fn main() -> hypersum::Result<()> {
    let digits = 50;
    let pi2 = constant(&ConstantName::Pi, digits + 5)?.square();
    let g8 = constant(&ConstantName::Catalan, digits + 5)?.mul_rational(&rat(8, 1));
    let quarter = polygamma(1, &rat(1, 4), digits)?;
    let three_quarters = polygamma(1, &rat(3, 4), digits)?;
    println!("psi'(1/4)     {}", quarter.to_decimal_string(digits as usize));
    println!("pi^2 + 8G     {}", pi2.add(&g8).to_decimal_string(digits as usize));
    println!("psi'(3/4)     {}", three_quarters.to_decimal_string(digits as usize));
    println!("pi^2 - 8G     {}", pi2.sub(&g8).to_decimal_string(digits as usize));
    println!("psi(1/2)      {}", digamma(&rat(1, 2), digits)?.to_decimal_string(digits as usize));
    for n in 2..=4 {
        println!("psi^({n})(1/3)  {}", polygamma(n, &rat(1, 3), 30)?.to_decimal_string(30));
    }
    Ok(())
}
