//! Full verification of one family member, as text and JSON.

use foursym::report::{run_verify_with, Format, Options};
use foursym::{Family, FamilySpec};

fn main() -> foursym::Result<()> {
    let spec = FamilySpec::with_kprime(Family::Sp, 1, 2)?;
    let report = run_verify_with(spec, Options { timing: true })?;
    report.emit(Format::Text, &mut std::io::stdout())?;
    println!("passed: {}, failures: {:?}", report.passed(), report.failures());
    let json = report.to_json()?;
    println!("json: {} bytes", json.len());
    Ok(())
}
