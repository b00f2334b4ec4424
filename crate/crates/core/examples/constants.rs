//! Each constant with two independent algorithms, printed side by side.

use hypersum::special::{constant, cross_check, ConstantName};

fn main() -> hypersum::Result<()> {
    let digits = 60;
    for name in [ConstantName::Pi, ConstantName::Catalan, ConstantName::GammaQuarter] {
        let (a, b) = cross_check(&name, digits).expect("has a second algorithm")?;
        println!("{:<14} {}", name.to_string(), a.to_decimal_string(digits as usize));
        println!("{:<14} {}  agree: {}", "", b.to_decimal_string(digits as usize), a.overlaps(&b));
    }
    for text in ["log(8/9)", "sqrt(2/1)", "gamma(1/3)", "tan_pi(1/5)"] {
        let name: ConstantName = text.parse()?;
        println!("{text:<14} {}", constant(&name, 40)?.to_decimal_string(40));
    }
    Ok(())
}
