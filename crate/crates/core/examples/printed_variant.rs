//! The `x ↦ 1/x` Euler identity with its right-hand side as printed agrees
//! with the corrected entry only on the diagonal `a + b = 1`.

use hypersum::numeric::{int, rat};
use hypersum::registry::{verify_identity, wei_t_printed};
use hypersum::series::Bindings;

fn main() -> hypersum::Result<()> {
    let printed = wei_t_printed();
    for (a, b) in [(rat(1, 3), rat(1, 2)), (rat(1, 3), rat(2, 3)), (rat(1, 4), rat(3, 4))] {
        let bind: Bindings = [("a".to_string(), a.clone()), ("b".to_string(), b.clone()), ("x".to_string(), int(3))].into();
        let r = verify_identity(&printed, &bind, 30)?;
        let residual = r.residual.map(|e| format!("{:.3e}", e.to_f64())).unwrap_or_default();
        println!("a={a} b={b}: {} residual {residual}", r.status.as_str());
    }
    Ok(())
}
