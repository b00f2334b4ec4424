//! A limit entry: the error at `p ± 10^-m` shrinks as `m` grows.

use hypersum::registry::{limit_errors, verify};
use hypersum::series::Bindings;

fn main() -> hypersum::Result<()> {
    let r = verify("lhopital-rule", &Bindings::new(), 30)?;
    println!("lhopital-rule: {}", r.status.as_str());
    for (m, below, above) in limit_errors("lhopital-rule", &[3, 4, 5, 6, 7, 8], 40)? {
        println!("m = {m}  {:+.3e}  {:+.3e}", below.to_f64(), above.to_f64());
    }
    Ok(())
}
