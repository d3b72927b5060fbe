//! Levi-Civita connections, curvature and the Einstein constant.

use foursym::tensors::curvature::{curvature, curvature_oracle, CurvatureKind};
use foursym::tensors::{einstein_check, ricci_gram};
use foursym::{build_family, make_foursym, Family, FamilySpec, Sign};

fn main() -> foursym::Result<()> {
    let data = make_foursym(build_family(FamilySpec::new(Family::Sl, 2, 1)?)?)?;
    for s in Sign::BOTH {
        let kind = CurvatureKind::levi_civita(s);
        let table = curvature(&data, kind);
        println!("R^{}: matches generic formula {:?}", kind.name(), table.agreement_check(&data, &curvature_oracle(&data, kind)));
        let ric = ricci_gram(&data, s)?;
        let e = einstein_check(&data, s, &ric);
        println!("  Ric = lambda g: {:?}, lambda = {:?}", e.check, e.factor.map(|x| x.to_string()));
    }
    Ok(())
}
