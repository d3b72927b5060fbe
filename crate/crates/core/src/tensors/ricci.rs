//! Ricci and Chern–Ricci forms, each computed by two independent routes.

use serde::Serialize;

use super::add_into;
use super::curvature::{curvature, CurvatureKind, CurvatureTable};
use super::trace::partial_trace;
use crate::check::Check;
use crate::error::{Error, Result};
use crate::foursym::{FourSymData, Part, Sign, TangentEndo, Vector};
use crate::linalg::{q, FormKind, GramForm, Rational, RationalMatrix};

/// Ric(eᵢ, eₖ) = Tr[Y ↦ R(eᵢ, Y)eₖ] read off a curvature table.
pub fn ricci_from_curvature(table: &CurvatureTable) -> RationalMatrix {
    let dm = table.dim();
    let mut m = RationalMatrix::zeros(dm, dm);
    for i in 0..dm {
        for k in 0..dm {
            m[(i, k)] = (0..dm).map(|j| table.get(i, j, k)[j].clone()).sum();
        }
    }
    m
}

fn ad(data: &FourSymData, a: usize, v: &Vector) -> Vector {
    data.bracket(&data.unit(a), v)
}

/// ½(I − σ)v.
fn minus_part(data: &FourSymData, v: &Vector) -> Vector {
    let mut out = v.clone();
    add_into(&mut out, &data.sigma(v), &Rational::from_int(-1));
    out.iter().map(|x| x * &q(1, 2)).collect()
}

/// Closed-form partial-trace expressions for Ric^{g±}.
pub fn ricci_closed_form(data: &FourSymData, sign: Sign) -> RationalMatrix {
    let off = data.offset();
    let dm = data.dim_m();
    let plus = sign == Sign::Plus;
    let mut m = RationalMatrix::zeros(dm, dm);
    for i in 0..dm {
        for k in 0..dm {
            let (a, b) = (off + i, off + k);
            let xa = data.part_of_tangent(i) == Part::GSigmaM1;
            let xb = data.part_of_tangent(k) == Part::GSigmaM1;
            m[(i, k)] = match (xa, xb) {
                (true, true) => {
                    let l = |z: &Vector| ad(data, b, &ad(data, a, z));
                    let mut t = partial_trace(data, Part::GSigmaM1, l) + partial_trace(data, Part::P, l);
                    if !plus {
                        let h = data.bracket_units(a, b);
                        t += &(&Rational::from_int(2) * &partial_trace(data, Part::P, |z| data.bracket(&h, z)));
                    }
                    t
                }
                (false, false) => ricci_yy(data, plus, a, b),
                _ => Rational::zero(),
            };
        }
    }
    m
}

fn ricci_yy(data: &FourSymData, plus: bool, y1: usize, y2: usize) -> Rational {
    let s21 = data.sigma(&data.bracket_units(y2, y1));
    let l21 = |z: &Vector| ad(data, y2, &ad(data, y1, z));
    let l12 = |z: &Vector| ad(data, y1, &ad(data, y2, z));
    let ads = |z: &Vector| data.bracket(&s21, z);
    let m12 = |z: &Vector| ad(data, y1, &data.sigma(&ad(data, y2, z)));
    let m21 = |z: &Vector| ad(data, y2, &data.sigma(&ad(data, y1, z)));
    let p_terms = |c: [i64; 4]| {
        partial_trace(data, Part::P, |z| {
            let mut out = data.zero();
            add_into(&mut out, &l21(z), &Rational::from_int(c[0]));
            add_into(&mut out, &ads(z), &Rational::from_int(c[1]));
            add_into(&mut out, &m12(z), &Rational::from_int(c[2]));
            add_into(&mut out, &m21(z), &Rational::from_int(c[3]));
            out
        })
    };
    if plus {
        let g = partial_trace(data, Part::GSigmaM1, |z| minus_part(data, &l21(z)));
        &(&g * &q(1, 2)) + &(&p_terms([1, 1, 1, 2]) * &q(1, 4))
    } else {
        let g = partial_trace(data, Part::GSigmaM1, |z| {
            let mut v = l21(z).iter().map(|x| x * &q(1, 2)).collect::<Vector>();
            add_into(&mut v, &l12(z), &Rational::from_int(-1));
            minus_part(data, &v)
        });
        &g + &(&p_terms([7, -1, -1, -2]) * &q(1, 4))
    }
}

fn first_difference(a: &RationalMatrix, b: &RationalMatrix) -> Option<(usize, usize)> {
    (0..a.rows()).flat_map(|i| (0..a.cols()).map(move |j| (i, j))).find(|&(i, j)| a[(i, j)] != b[(i, j)])
}

fn agree(data: &FourSymData, what: &'static str, a: &RationalMatrix, b: &RationalMatrix) -> Result<()> {
    match first_difference(a, b) {
        None => Ok(()),
        Some((i, j)) => Err(Error::Consistency {
            what,
            witness: format!("({}, {}): {} vs {}", data.label(i), data.label(j), a[(i, j)], b[(i, j)]),
        }),
    }
}

/// Ric^{g±} from a curvature table, checked against the closed forms.
pub fn ricci_gram_with(data: &FourSymData, sign: Sign, table: &CurvatureTable) -> Result<GramForm> {
    let a = ricci_from_curvature(table);
    agree(data, "ricci", &a, &ricci_closed_form(data, sign))?;
    GramForm::symmetric(a)
}

pub fn ricci_gram(data: &FourSymData, sign: Sign) -> Result<GramForm> {
    ricci_gram_with(data, sign, &curvature(data, CurvatureKind::levi_civita(sign)))
}

/// B(JX, JY) = B(X, Y) on all basis pairs.
pub fn hermitian_check(data: &FourSymData, form: &GramForm, j: &TangentEndo) -> Check {
    let jm = j.matrix();
    let pulled = jm.transpose().checked_mul(form.matrix()).and_then(|m| m.checked_mul(jm)).expect("square");
    Check::from_witness(first_difference(&pulled, form.matrix()).map(|(a, b)| {
        format!(
            "Ric(J{0}, J{1}) = {2} but Ric({0}, {1}) = {3}",
            data.label(a),
            data.label(b),
            pulled[(a, b)],
            form.entry(a, b)
        )
    }))
}

/// Tr(J ∘ R(eᵢ, eⱼ)) on all basis pairs.
pub fn trace_j_curvature(table: &CurvatureTable, j: &TangentEndo) -> RationalMatrix {
    let dm = table.dim();
    let jm = j.matrix();
    let mut m = RationalMatrix::zeros(dm, dm);
    for a in 0..dm {
        for b in 0..dm {
            let mut t = Rational::zero();
            for k in 0..dm {
                for (r, x) in table.get(a, b, k).iter().enumerate() {
                    if !x.is_zero() && !jm[(k, r)].is_zero() {
                        t += &(x * &jm[(k, r)]);
                    }
                }
            }
            m[(a, b)] = t;
        }
    }
    m
}

/// Closed forms for ChernRicci^{j⁻}: Tr|_{𝔤^σ₋₁} τ∘ad h − Tr|_𝔭 σ∘ad h with τ = ½ad ρ and
/// h the isotropy part of the pair: [Xᵢ, Xⱼ], 0, or ½(I + σ)[Yᵢ, Yⱼ].
pub fn chern_ricci_closed_form(data: &FourSymData) -> RationalMatrix {
    let off = data.offset();
    let dm = data.dim_m();
    let mut m = RationalMatrix::zeros(dm, dm);
    for i in 0..dm {
        for k in 0..dm {
            let xa = data.part_of_tangent(i) == Part::GSigmaM1;
            let xb = data.part_of_tangent(k) == Part::GSigmaM1;
            let ab = data.bracket_units(off + i, off + k);
            let h = match (xa, xb) {
                (true, true) => ab,
                (false, false) => {
                    let mut h = ab.clone();
                    add_into(&mut h, &data.sigma(&ab), &Rational::one());
                    h.iter().map(|x| x * &q(1, 2)).collect()
                }
                _ => continue,
            };
            let tau = partial_trace(data, Part::GSigmaM1, |z| data.ad_rho(&data.bracket(&h, z)));
            let sig = partial_trace(data, Part::P, |z| data.sigma(&data.bracket(&h, z)));
            m[(i, k)] = &(&tau * &q(1, 2)) - &sig;
        }
    }
    m
}

/// ChernRicci^{j⁻} from the Chern curvature table, checked against the closed forms.
pub fn chern_ricci_minus_with(data: &FourSymData, chern: &CurvatureTable) -> Result<GramForm> {
    let a = trace_j_curvature(chern, &data.j_structure(Sign::Minus));
    agree(data, "chern-ricci j-", &a, &chern_ricci_closed_form(data))?;
    GramForm::antisymmetric(a)
}

/// ChernRicci^{j⁺}(X, Y) = 2Ric^{g⁺}(X, J⁺Y).
pub fn chern_ricci_plus_from(data: &FourSymData, ricci_plus: &GramForm) -> Result<GramForm> {
    let jm = data.j_structure(Sign::Plus);
    let m = ricci_plus.matrix().checked_mul(jm.matrix())?.scale(&Rational::from_int(2));
    GramForm::new(m, FormKind::Antisymmetric)
}

/// As [`chern_ricci_plus_from`], checked against Tr(J⁺ ∘ R^{g⁺}).
pub fn chern_ricci_plus_with(data: &FourSymData, ricci_plus: &GramForm, lc_plus: &CurvatureTable) -> Result<GramForm> {
    let form = chern_ricci_plus_from(data, ricci_plus)?;
    let tr = trace_j_curvature(lc_plus, &data.j_structure(Sign::Plus));
    agree(data, "chern-ricci j+", form.matrix(), &tr)?;
    Ok(form)
}

pub fn chern_ricci_gram(data: &FourSymData, sign: Sign) -> Result<GramForm> {
    match sign {
        Sign::Minus => chern_ricci_minus_with(data, &curvature(data, CurvatureKind::ChernMinus)),
        Sign::Plus => {
            let table = curvature(data, CurvatureKind::LcPlus);
            chern_ricci_plus_with(data, &ricci_gram_with(data, Sign::Plus, &table)?, &table)
        }
    }
}

/// A proportionality verdict `form = factor · reference`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Proportionality {
    #[serde(flatten)]
    pub check: Check,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor: Option<Rational>,
}

impl Proportionality {
    pub fn skipped(reason: impl Into<String>) -> Self {
        Self { check: Check::skipped(reason), factor: None }
    }

    pub fn is_pass(&self) -> bool {
        self.check.is_pass()
    }
}

/// Factor read at the first nonzero entry of `reference`, then verified entrywise.
pub fn proportionality(data: &FourSymData, form: &GramForm, reference: &GramForm, names: (&str, &str)) -> Proportionality {
    let dm = reference.dim();
    let Some(t) = (0..dm * dm).find(|&t| !reference.entry(t / dm, t % dm).is_zero()) else {
        return Proportionality::skipped(format!("{} vanishes identically", names.1));
    };
    let c = form.entry(t / dm, t % dm) / reference.entry(t / dm, t % dm);
    match form.first_mismatch(reference, &c) {
        None => Proportionality { check: Check::pass(), factor: Some(c) },
        Some((i, j)) => Proportionality {
            check: Check::fail(format!(
                "{}({}, {}) = {} but {c} * {}(..) = {}",
                names.0,
                data.label(i),
                data.label(j),
                form.entry(i, j),
                names.1,
                &c * reference.entry(i, j)
            )),
            factor: None,
        },
    }
}

/// Ric^{g±} = λ G±.
pub fn einstein_check(data: &FourSymData, sign: Sign, ricci: &GramForm) -> Proportionality {
    let Ok(g) = data.metric_gram(sign) else {
        return Proportionality::skipped("metric is not symmetric");
    };
    if !g.is_nondegenerate() {
        return Proportionality::skipped("metric is degenerate");
    }
    proportionality(data, ricci, &g, ("Ric", "G"))
}

/// ChernRicci = c Ω̃.
pub fn special_check(data: &FourSymData, chern_ricci: &GramForm) -> Proportionality {
    let omega = data.omega_gram();
    if !omega.is_nondegenerate() {
        return Proportionality::skipped("omega is degenerate");
    }
    proportionality(data, chern_ricci, omega, ("ChernRicci", "omega"))
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
    fn sl12_constants() {
        let d = data(Family::Sl, 1, 2);
        let ric = ricci_gram(&d, Sign::Plus).unwrap();
        let e = einstein_check(&d, Sign::Plus, &ric);
        assert_eq!(e.factor, Some(Rational::from_int(3)), "{e:?}");
        let cr = chern_ricci_gram(&d, Sign::Minus).unwrap();
        assert_eq!(special_check(&d, &cr).factor, Some(Rational::from_int(2)));
    }

    #[test]
    fn both_signs_hermitian() {
        let d = data(Family::SoSplit, 2, 2);
        for s in Sign::BOTH {
            let ric = ricci_gram(&d, s).unwrap();
            assert!(hermitian_check(&d, &ric, &d.j_structure(s)).is_pass());
        }
    }

    #[test]
    fn mixed_block_vanishes() {
        let d = data(Family::Sp, 2, 1);
        let ric = ricci_gram(&d, Sign::Plus).unwrap();
        for x in d.tangent_range(Part::GSigmaM1) {
            for y in d.tangent_range(Part::P) {
                assert!(ric.entry(x, y).is_zero());
            }
        }
    }

    #[test]
    fn jplus_routes_agree() {
        let d = data(Family::Sl, 2, 1);
        assert!(chern_ricci_gram(&d, Sign::Plus).is_ok());
    }
}
