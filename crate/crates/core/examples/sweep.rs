//! Verify every family member up to a matrix size.

use foursym::sweep::{sweep, sweep_specs};

fn main() -> foursym::Result<()> {
    let max = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    println!("{} members with k + 2n <= {max}", sweep_specs(max)?.len());
    for r in sweep(max)? {
        let lambda = r.verdicts.einstein_plus.factor.as_ref().map(|x| x.to_string()).unwrap_or("-".into());
        println!("{:<20} lambda {lambda:<6} {}", r.spec.to_string(), if r.passed() { "pass" } else { "FAIL" });
    }
    Ok(())
}
