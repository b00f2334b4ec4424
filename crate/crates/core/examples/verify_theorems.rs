//! Verifies the headline identities at 60 digits.

use hypersum::registry::verify;
use hypersum::series::Bindings;

fn main() -> hypersum::Result<()> {
    let ids = ["thm1.1-a", "thm1.1-b", "thm1.1-c", "thm1.1-d", "thm1.1-e", "thm1.2", "thm1.3-a", "thm1.3-b", "thm3.2"];
    for id in ids {
        let r = verify(id, &Bindings::new(), 60)?;
        let residual = r.residual.as_ref().map(|e| format!("{:.3e}", e.to_f64())).unwrap_or_default();
        println!("{id:<9} {:<6} terms {:>4}  residual {residual}  {} ms", r.status.as_str(), r.terms_used, r.elapsed_ms);
    }
    Ok(())
}
