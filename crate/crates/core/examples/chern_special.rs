//! Chern connection of j- and the Chern-Ricci form compared with omega.

use foursym::tensors::connection::{j_parallel_check, Connection};
use foursym::tensors::{chern_ricci_gram, special_check};
use foursym::{build_family, make_foursym, Family, FamilySpec, Sign};

fn main() -> foursym::Result<()> {
    for (family, k, n) in [(Family::Sl, 1, 1), (Family::SoCompact, 2, 2), (Family::Sp, 2, 2)] {
        let data = make_foursym(build_family(FamilySpec::new(family, k, n)?)?)?;
        let chern = Connection::chern(&data);
        println!("{}: chern J- parallel {:?}", data.alg.spec, j_parallel_check(&data, &chern, &data.j_structure(Sign::Minus), "J-"));
        for s in Sign::BOTH {
            let p = special_check(&data, &chern_ricci_gram(&data, s)?);
            println!("  rho(j{}) = c omega: c = {:?}", s.symbol(), p.factor.map(|x| x.to_string()));
        }
    }
    Ok(())
}
