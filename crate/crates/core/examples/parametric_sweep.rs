//! One parametric family over several arguments, including ones outside
//! the region of convergence.

use hypersum::numeric::int;
use hypersum::registry::sweep;

fn main() -> hypersum::Result<()> {
    let xs = [-4032, -192, 64, 72, 100, 576].map(int);
    for r in sweep("thm2-q", "x", &xs, 40)? {
        let x = &r.bindings["x"];
        match &r.lhs {
            Some(v) => println!("x = {x:<6} {:<6} {}", r.status.as_str(), v.to_decimal_string(40)),
            None => println!("x = {x:<6} {:<6} {}", r.status.as_str(), r.message.unwrap_or_default()),
        }
    }
    Ok(())
}
