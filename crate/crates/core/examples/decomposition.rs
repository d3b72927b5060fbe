//! Split an algebra under sigma and label the tangent basis.

use foursym::foursym::Part;
use foursym::{build_family, make_foursym, Family, FamilySpec};

fn main() -> foursym::Result<()> {
    let data = make_foursym(build_family(FamilySpec::new(Family::Sl, 1, 2)?)?)?;
    let d = data.dims();
    println!("g = gsigma + gsigma_m1 + p: {} = {} + {} + {}", d.g, d.gsigma, d.gsigma_m1, d.p);
    println!("symmetric mode: {}", data.symmetric_mode());
    for part in [Part::GSigmaM1, Part::P] {
        let labels: Vec<String> = data.tangent_range(part).map(|t| data.label(t)).collect();
        println!("{part:?}: {}", labels.join(" "));
    }
    for (name, check) in data.invariant_checks() {
        println!("{name:<20} {check:?}");
    }
    Ok(())
}
