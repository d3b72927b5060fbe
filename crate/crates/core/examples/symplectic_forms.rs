//! The invariant 2-form, the two almost complex structures and the metrics they give.

use foursym::{build_family, make_foursym, Family, FamilySpec, Sign};

fn main() -> foursym::Result<()> {
    for family in [Family::SoCompact, Family::SoSplit, Family::Sl] {
        let data = make_foursym(build_family(FamilySpec::new(family, 1, 2)?)?)?;
        let nd = data.nondegeneracy_report();
        println!("{}: omega nondegenerate {}, closed {:?}", data.alg.spec, nd.omega, data.closedness_check());
        for s in Sign::BOTH {
            let sig = data.metric_gram(s)?.signature()?;
            println!(
                "  g{}: signature (+{}, -{}), compatible {:?}",
                s.symbol(),
                sig.pos,
                sig.neg,
                data.compatibility_check(s)
            );
        }
    }
    Ok(())
}
