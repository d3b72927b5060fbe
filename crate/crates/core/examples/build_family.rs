//! Build matrix Lie algebras from each family and check closure.

use foursym::families::{beta_gram, closure_report};
use foursym::{build_family, Family, FamilySpec};

fn main() -> foursym::Result<()> {
    for (family, k, n) in [(Family::Sl, 1, 1), (Family::SoCompact, 1, 2), (Family::USplit, 2, 1), (Family::Sp, 2, 1)] {
        let spec = FamilySpec::new(family, k, n)?;
        let alg = build_family(spec)?;
        let sig = beta_gram(&alg).signature()?;
        println!(
            "{spec}: {}x{} matrices, dim {} (formula {}), closure {:?}, trace form (+{}, -{})",
            alg.m(),
            alg.m(),
            alg.dim(),
            family.dim_formula(),
            closure_report(&alg),
            sig.pos,
            sig.neg
        );
    }
    // sp and u take k = 2k'.
    println!("{}", FamilySpec::new(Family::Sp, 3, 1).unwrap_err());
    Ok(())
}
