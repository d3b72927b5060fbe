use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{format_tangent, scaled};
use crate::check::Check;
use crate::foursym::{FourSymData, Part, Sign, TangentEndo, Vector};
use crate::linalg::span::independent_subset;
use crate::linalg::{Rational, RationalMatrix};

/// A linear map Ĵ: 𝔤 → 𝔤 with pr∘Ĵ = J∘pr. Any two lifts differ by a map into 𝔤^σ.
#[derive(Debug, Clone)]
pub enum Lift {
    /// J on 𝔪, zero on 𝔤^σ.
    Standard,
    /// Standard plus `extra`, a dim 𝔤^σ × dim 𝔤 matrix with values in 𝔤^σ.
    Extended(RationalMatrix),
}

impl Lift {
    /// A seeded random extension with small rational entries.
    pub fn random(data: &FourSymData, seed: u64) -> Lift {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, d) = (data.offset(), data.d());
        let mut m = RationalMatrix::zeros(a, d);
        for i in 0..a {
            for j in 0..d {
                m[(i, j)] = Rational::new(rng.gen_range(-4..=4), rng.gen_range(1..=3));
            }
        }
        Lift::Extended(m)
    }

    fn apply(&self, data: &FourSymData, j: &TangentEndo, v: &[Rational]) -> Vector {
        let mut out = data.embed(&j.apply(&data.tangent(v)));
        if let Lift::Extended(extra) = self {
            let h = extra.mul_vec(v).expect("extra has dim 𝔤 columns");
            for (i, x) in h.into_iter().enumerate() {
                out[i] += &x;
            }
        }
        out
    }
}

/// π_* Ñ(X, Y) with Ñ(X, Y) = [ĴX, ĴY] − Ĵ[ĴX, Y] − Ĵ[X, ĴY] + Ĵ²[X, Y], brackets taken
/// as matrix commutators. X, Y and the result are 𝔪-coordinates.
pub fn nijenhuis_with_lift(
    data: &FourSymData,
    j: &TangentEndo,
    lift: &Lift,
    x: &[Rational],
    y: &[Rational],
) -> Vec<Rational> {
    let coords = |m: &RationalMatrix| data.coords(m).expect("bracket stays in 𝔤");
    let mat = |v: &[Rational]| data.to_matrix(v);
    let br = |a: &Vector, b: &Vector| coords(&mat(a).bracket(&mat(b)).expect("same size"));
    let jh = |v: &[Rational]| lift.apply(data, j, v);

    let (vx, vy) = (data.embed(x), data.embed(y));
    let (jx, jy) = (jh(&vx), jh(&vy));
    let t1 = br(&jx, &jy);
    let t2 = jh(&br(&jx, &vy));
    let t3 = jh(&br(&vx, &jy));
    let t4 = jh(&jh(&br(&vx, &vy)));
    let total: Vector = (0..data.d()).map(|i| &(&(&t1[i] - &t2[i]) - &t3[i]) + &t4[i]).collect();
    data.tangent(&total)
}

pub fn nijenhuis(data: &FourSymData, j: &TangentEndo, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    nijenhuis_with_lift(data, j, &Lift::Standard, x, y)
}

/// Values on basis pairs `i < j`, row-major.
pub fn nijenhuis_table(data: &FourSymData, j: &TangentEndo, lift: &Lift) -> Vec<((usize, usize), Vec<Rational>)> {
    let dm = data.dim_m();
    let unit = |t: usize| data.tangent(&data.m_unit(t));
    let mut out = Vec::with_capacity(dm * dm.saturating_sub(1) / 2);
    for a in 0..dm {
        for b in a + 1..dm {
            out.push(((a, b), nijenhuis_with_lift(data, j, lift, &unit(a), &unit(b))));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NijenhuisImage {
    pub sign: Sign,
    pub dim: usize,
    /// Independent image vectors in 𝔪-coordinates.
    pub basis: Vec<Vec<Rational>>,
    /// dim span pr[𝔭, 𝔤^σ₋₁], to be compared with dim 𝔭.
    pub p_gm1_dim: usize,
    /// dim span of the 𝔤^σ₋₁-part of [𝔭, 𝔭], to be compared with dim 𝔤^σ₋₁.
    pub pp_gm1_dim: usize,
}

impl NijenhuisImage {
    /// For J⁻ the image is pr[𝔭, 𝔤^σ₋₁] ⊕ pr_{𝔤^σ₋₁}[𝔭, 𝔭]; for J⁺ it is zero.
    pub fn structural_agreement(&self) -> bool {
        match self.sign {
            Sign::Minus => self.dim == self.p_gm1_dim + self.pp_gm1_dim,
            Sign::Plus => self.dim == 0,
        }
    }
}

fn image_of(
    data: &FourSymData,
    sign: Sign,
    table: &[((usize, usize), Vec<Rational>)],
) -> NijenhuisImage {
    let values: Vec<Vec<Rational>> = table.iter().map(|(_, v)| v.clone()).collect();
    let basis: Vec<Vec<Rational>> = independent_subset(&values).into_iter().map(|i| values[i].clone()).collect();

    let mut p_gm1 = Vec::new();
    for y in data.range(Part::P) {
        for x in data.range(Part::GSigmaM1) {
            p_gm1.push(data.tangent(&data.bracket_units(y, x)));
        }
    }
    let mut pp = Vec::new();
    for y1 in data.range(Part::P) {
        for y2 in data.range(Part::P) {
            let v = data.component(&data.bracket_units(y1, y2), Part::GSigmaM1);
            pp.push(data.tangent(&v));
        }
    }
    NijenhuisImage {
        sign,
        dim: basis.len(),
        basis,
        p_gm1_dim: independent_subset(&p_gm1).len(),
        pp_gm1_dim: independent_subset(&pp).len(),
    }
}

pub fn nijenhuis_image(data: &FourSymData, sign: Sign) -> NijenhuisImage {
    let table = nijenhuis_table(data, &data.j_structure(sign), &Lift::Standard);
    image_of(data, sign, &table)
}

/// Everything the report needs from the Nijenhuis tensors, computed once.
#[derive(Debug, Clone)]
pub struct NijenhuisSummary {
    pub plus_zero: Check,
    pub minus_formula: Check,
    pub lift_independence: Check,
    pub plus_image: NijenhuisImage,
    pub minus_image: NijenhuisImage,
    /// Standard-lift values of N^{J⁻} on basis pairs, reused by the torsion check.
    pub minus_table: Vec<((usize, usize), Vec<Rational>)>,
}

pub fn nijenhuis_summary(data: &FourSymData, seed: u64) -> NijenhuisSummary {
    let jp = data.j_structure(Sign::Plus);
    let jm = data.j_structure(Sign::Minus);
    let plus = nijenhuis_table(data, &jp, &Lift::Standard);
    let minus = nijenhuis_table(data, &jm, &Lift::Standard);

    let plus_zero = Check::from_witness(plus.iter().find(|(_, v)| v.iter().any(|x| !x.is_zero())).map(
        |((a, b), v)| format!("N^J+({}, {}) = {}", data.label(*a), data.label(*b), format_tangent(data, v)),
    ));

    let four = Rational::from_int(-4);
    let off = data.offset();
    let minus_formula = Check::from_witness(minus.iter().find_map(|((a, b), v)| {
        let expected = scaled(&data.tangent(&data.bracket_units(off + a, off + b)), &four);
        (*v != expected).then(|| {
            format!(
                "N^J-({}, {}) = {}, expected -4 pr[.,.] = {}",
                data.label(*a),
                data.label(*b),
                format_tangent(data, v),
                format_tangent(data, &expected)
            )
        })
    }));

    let mut lift_witness = None;
    for (sign, j, table) in [(Sign::Plus, &jp, &plus), (Sign::Minus, &jm, &minus)] {
        let other = nijenhuis_table(data, j, &Lift::random(data, seed ^ (sign as u64 + 1)));
        if let Some(((a, b), _)) = table.iter().zip(&other).find(|(l, r)| l.1 != r.1).map(|(l, _)| l) {
            lift_witness = Some(format!(
                "J{}: lifts disagree on ({}, {})",
                sign.symbol(),
                data.label(*a),
                data.label(*b)
            ));
            break;
        }
    }
    let lift_independence = if data.offset() == 0 {
        Check::degenerate("gsigma is zero, every lift is the standard one")
    } else {
        Check::from_witness(lift_witness)
    };

    NijenhuisSummary {
        plus_zero,
        minus_formula,
        lift_independence,
        plus_image: image_of(data, Sign::Plus, &plus),
        minus_image: image_of(data, Sign::Minus, &minus),
        minus_table: minus,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_family, Family, FamilySpec};
    use crate::foursym::make_foursym;

    fn data(f: Family, k: usize, n: usize) -> FourSymData {
        make_foursym(build_family(FamilySpec::new(f, k, n).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn sl3_maximal() {
        let d = data(Family::Sl, 1, 1);
        let img = nijenhuis_image(&d, Sign::Minus);
        assert_eq!(img.dim, 6);
        assert!(img.structural_agreement());
        assert_eq!(nijenhuis_image(&d, Sign::Plus).dim, 0);
    }

    #[test]
    fn u_family_integrable() {
        let d = data(Family::UCompact, 2, 1);
        assert_eq!(nijenhuis_image(&d, Sign::Minus).dim, 0);
    }

    #[test]
    fn so3_degenerate() {
        let d = data(Family::SoCompact, 1, 1);
        assert_eq!(d.dims().gsigma_m1, 0);
        assert_eq!(nijenhuis_image(&d, Sign::Minus).dim, 0);
    }

    #[test]
    fn summary_checks_pass() {
        let d = data(Family::SoSplit, 1, 2);
        let s = nijenhuis_summary(&d, 7);
        assert!(s.plus_zero.is_pass());
        assert!(s.minus_formula.is_pass(), "{:?}", s.minus_formula);
        assert!(s.lift_independence.is_pass());
        assert!(s.minus_image.structural_agreement());
    }

    #[test]
    fn diagonal_vanishes() {
        let d = data(Family::Sp, 2, 1);
        let j = d.j_structure(Sign::Minus);
        for t in 0..d.dim_m() {
            let e = d.tangent(&d.m_unit(t));
            assert!(nijenhuis(&d, &j, &e, &e).iter().all(Rational::is_zero));
        }
    }
}
