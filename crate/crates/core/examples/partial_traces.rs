//! Traces of operators restricted to one block of the tangent space.

use foursym::foursym::Part;
use foursym::tensors::trace::{block_trace, gm1_operator, gm1_trace_factor, random_admissible};
use foursym::{build_family, make_foursym, Family, FamilySpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> foursym::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for family in [Family::Sl, Family::SoSplit, Family::Sp] {
        let spec = FamilySpec::new(family, 2, 2)?;
        let data = make_foursym(build_family(spec)?)?;
        let d = random_admissible(spec.n, family == Family::Sp, &mut rng);
        let t = block_trace(&data, &gm1_operator(family, spec.k, &d), Part::GSigmaM1)?;
        let factor = gm1_trace_factor(family, spec.n).expect("family has a trace factor");
        println!("{spec}: Tr = {t}, {factor} * tr D = {}", &foursym::linalg::Rational::from_int(factor) * &d.trace()?);
    }
    Ok(())
}
