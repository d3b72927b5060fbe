//! Integrability of the two almost complex structures.

use foursym::tensors::nijenhuis::nijenhuis_image;
use foursym::{build_family, make_foursym, Family, FamilySpec, Sign};

fn main() -> foursym::Result<()> {
    for (family, k, n) in [(Family::Sl, 1, 1), (Family::SoSplit, 1, 2), (Family::SoCompact, 2, 1), (Family::UCompact, 2, 1)] {
        let data = make_foursym(build_family(FamilySpec::new(family, k, n)?)?)?;
        let plus = nijenhuis_image(&data, Sign::Plus);
        let minus = nijenhuis_image(&data, Sign::Minus);
        println!(
            "{}: dim m {}, image N(j+) {}, image N(j-) {}{}",
            data.alg.spec,
            data.dim_m(),
            plus.dim,
            minus.dim,
            if data.symmetric_mode() { " (symmetric)" } else { "" }
        );
    }
    Ok(())
}
