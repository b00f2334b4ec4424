//! Machine-readable output: verification records and registry entries as
//! JSON lines.

use hypersum::registry::{catalog, verify};
use hypersum::report::ReportRecord;
use hypersum::series::Bindings;

fn main() -> hypersum::Result<()> {
    let rec = ReportRecord::from(&verify("thm2-o", &Bindings::new(), 25)?);
    let line = rec.to_json();
    println!("{line}");
    assert_eq!(ReportRecord::from_json(&line).expect("record parses"), rec);
    for id in catalog().iter().take(3) {
        println!("{}", serde_json::to_string(&id.record()).expect("record serializes"));
    }
    Ok(())
}
