use rand::Rng;

use crate::error::{Error, Result};
use crate::families::Family;
use crate::foursym::{FourSymData, Part, Vector};
use crate::linalg::{Rational, RationalMatrix};

fn part_name(part: Part) -> &'static str {
    match part {
        Part::GSigma => "gsigma",
        Part::GSigmaM1 => "gsigma_m1",
        Part::P => "p",
    }
}

/// Trace of a matrix operator restricted to one summand of the splitting.
///
/// The operator is applied to each basis matrix of the summand; an image with a component
/// outside the summand (or outside 𝔤) is rejected.
pub fn block_trace(data: &FourSymData, op: &dyn Fn(&RationalMatrix) -> RationalMatrix, part: Part) -> Result<Rational> {
    let range = data.range(part);
    let mut total = Rational::zero();
    for s in range.clone() {
        let image = op(&data.adapted_basis()[s]);
        let coords = data.coords(&image).ok_or(Error::OperatorEscapes(part_name(part)))?;
        if coords.iter().enumerate().any(|(i, x)| !x.is_zero() && !range.contains(&i)) {
            return Err(Error::OperatorEscapes(part_name(part)));
        }
        total += &coords[s];
    }
    Ok(total)
}

/// Σ_{s ∈ part} L(e_s)[s] for a map given on adapted coordinates. No preservation check.
pub(crate) fn partial_trace(data: &FourSymData, part: Part, f: impl Fn(&Vector) -> Vector) -> Rational {
    data.range(part).map(|s| f(&data.unit(s))[s].clone()).sum()
}

/// A random 2n×2n matrix [[d, d'], [−d', d]] commuting with J_2n. With `symmetric`, d is
/// symmetric and d' antisymmetric, so D is symmetric as well.
pub fn random_admissible(n: usize, symmetric: bool, rng: &mut impl Rng) -> RationalMatrix {
    let mut entry = || Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=5));
    let mut d = RationalMatrix::zeros(n, n);
    let mut dp = RationalMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if symmetric && j < i {
                d[(i, j)] = d[(j, i)].clone();
                dp[(i, j)] = -&dp[(j, i)];
            } else if symmetric && i == j {
                d[(i, j)] = entry();
            } else {
                d[(i, j)] = entry();
                dp[(i, j)] = entry();
            }
        }
    }
    let mut out = RationalMatrix::zeros(2 * n, 2 * n);
    out.set_block(0, 0, &d);
    out.set_block(0, n, &dp);
    out.set_block(n, 0, &-&dp);
    out.set_block(n, n, &d);
    out
}

/// The operator on 𝔤^σ₋₁ = {diag(0_k, C)} whose trace the closed forms evaluate:
/// C ↦ CD (gl, sl), DC + C·ᵗD (so), DC + CD (sp, D symmetric). Zero for u, where 𝔤^σ₋₁ = 0.
pub fn gm1_operator(family: Family, k: usize, d: &RationalMatrix) -> impl Fn(&RationalMatrix) -> RationalMatrix + '_ {
    move |x: &RationalMatrix| {
        let size = d.rows();
        let c = x.block(k, k, size, size);
        let image = match family {
            Family::Gl | Family::Sl => c.checked_mul(d).expect("same size"),
            Family::SoCompact | Family::SoSplit => {
                (d * &c).checked_add(&(&c * &d.transpose())).expect("same size")
            }
            Family::Sp => (d * &c).checked_add(&(&c * d)).expect("same size"),
            Family::UCompact | Family::USplit => RationalMatrix::zeros(size, size),
        };
        let mut out = RationalMatrix::zeros(x.rows(), x.cols());
        out.set_block(k, k, &image);
        out
    }
}

/// Closed-form factor f with Tr|_{𝔤^σ₋₁}(operator) = f · Tr D, or `None` where no closed form applies.
pub fn gm1_trace_factor(family: Family, n: usize) -> Option<i64> {
    let n = n as i64;
    match family {
        Family::Sl => Some(n),
        Family::SoCompact | Family::SoSplit => Some(n - 1),
        Family::Sp => Some(n + 1),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_family, Family, FamilySpec};
    use crate::foursym::make_foursym;

    #[test]
    fn identity_trace_is_dimension() {
        let d = make_foursym(build_family(FamilySpec::new(Family::Sl, 1, 2).unwrap()).unwrap()).unwrap();
        for part in [Part::GSigma, Part::GSigmaM1, Part::P] {
            let t = block_trace(&d, &|x| x.clone(), part).unwrap();
            assert_eq!(t, Rational::from_int(d.range(part).len() as i64));
        }
    }

    #[test]
    fn closed_form_factors() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for (f, k, n) in [(Family::Sl, 1, 2), (Family::SoCompact, 1, 3), (Family::SoSplit, 2, 2), (Family::Sp, 2, 2)] {
            let d = make_foursym(build_family(FamilySpec::new(f, k, n).unwrap()).unwrap()).unwrap();
            let dm = random_admissible(n, f == Family::Sp, &mut rng);
            let t = block_trace(&d, &gm1_operator(f, k, &dm), Part::GSigmaM1).unwrap();
            let factor = Rational::from_int(gm1_trace_factor(f, n).unwrap());
            assert_eq!(t, &factor * &dm.trace().unwrap(), "{f}");
        }
    }

    #[test]
    fn escaping_operator_is_rejected() {
        let d = make_foursym(build_family(FamilySpec::new(Family::Sl, 1, 2).unwrap()).unwrap()).unwrap();
        let r = d.rho.clone();
        let err = block_trace(&d, &|x| x.checked_add(&r).unwrap(), Part::P).unwrap_err();
        assert!(matches!(err, Error::OperatorEscapes("p")));
    }
}
