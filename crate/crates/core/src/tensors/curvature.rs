//! Curvature tables on basis triples of 𝔪, from the case-by-case formulas and from the
//! generic homogeneous formula applied to a connection table.

use serde::{Deserialize, Serialize};

use super::connection::{torsion, Connection, PrTable};
use super::{add_into, format_tangent, scaled, sub};
use crate::check::Check;
use crate::foursym::{FourSymData, Part, Sign, TangentEndo, Vector};
use crate::linalg::{q, Rational, RationalMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurvatureKind {
    #[serde(rename = "g+")]
    LcPlus,
    #[serde(rename = "g-")]
    LcMinus,
    #[serde(rename = "chern-")]
    ChernMinus,
}

impl CurvatureKind {
    pub const ALL: [CurvatureKind; 3] = [CurvatureKind::LcPlus, CurvatureKind::LcMinus, CurvatureKind::ChernMinus];

    pub fn levi_civita(sign: Sign) -> Self {
        match sign {
            Sign::Plus => CurvatureKind::LcPlus,
            Sign::Minus => CurvatureKind::LcMinus,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CurvatureKind::LcPlus => "g+",
            CurvatureKind::LcMinus => "g-",
            CurvatureKind::ChernMinus => "chern-",
        }
    }

    /// The connection this curvature belongs to.
    pub fn connection(self, data: &FourSymData) -> Connection {
        match self {
            CurvatureKind::LcPlus => Connection::levi_civita(data, Sign::Plus),
            CurvatureKind::LcMinus => Connection::levi_civita(data, Sign::Minus),
            CurvatureKind::ChernMinus => Connection::chern(data),
        }
    }
}

/// R(eᵢ, eⱼ)eₖ for all basis triples of 𝔪, in 𝔪-coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureTable {
    dim: usize,
    kind: CurvatureKind,
    entries: Vec<Vec<Rational>>,
}

impl CurvatureTable {
    fn from_fn(dim: usize, kind: CurvatureKind, mut f: impl FnMut(usize, usize, usize) -> Vec<Rational>) -> Self {
        let mut entries = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    entries.push(f(i, j, k));
                }
            }
        }
        Self { dim, kind, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> CurvatureKind {
        self.kind
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &[Rational] {
        &self.entries[(i * self.dim + j) * self.dim + k]
    }

    /// R(eᵢ, eⱼ) as an endomorphism of 𝔪.
    pub fn endo(&self, i: usize, j: usize) -> TangentEndo {
        let mut m = RationalMatrix::zeros(self.dim, self.dim);
        for k in 0..self.dim {
            for (r, x) in self.get(i, j, k).iter().enumerate() {
                m[(r, k)] = x.clone();
            }
        }
        TangentEndo::new(m).expect("square")
    }

    /// R(u, v) for arbitrary tangent vectors.
    pub fn endo_of(&self, u: &[Rational], v: &[Rational]) -> TangentEndo {
        let mut m = RationalMatrix::zeros(self.dim, self.dim);
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let s = a * b;
                for k in 0..self.dim {
                    for (r, x) in self.get(i, j, k).iter().enumerate() {
                        if !x.is_zero() {
                            m[(r, k)] += &(x * &s);
                        }
                    }
                }
            }
        }
        TangentEndo::new(m).expect("square")
    }

    /// First triple where the tables differ.
    pub fn first_difference(&self, other: &CurvatureTable) -> Option<(usize, usize, usize)> {
        let d = self.dim;
        (0..d * d * d)
            .find(|&t| self.entries[t] != other.entries[t])
            .map(|t| (t / (d * d), (t / d) % d, t % d))
    }

    pub fn antisymmetry_check(&self, data: &FourSymData) -> Check {
        for i in 0..self.dim {
            for j in i..self.dim {
                for k in 0..self.dim {
                    let (a, b) = (self.get(i, j, k), self.get(j, i, k));
                    if a.iter().zip(b).any(|(x, y)| !(x + y).is_zero()) {
                        return Check::fail(format!(
                            "R({}, {}){} + R({}, {}){} != 0",
                            data.label(i),
                            data.label(j),
                            data.label(k),
                            data.label(j),
                            data.label(i),
                            data.label(k)
                        ));
                    }
                }
            }
        }
        Check::pass()
    }

    /// Exact agreement with another table on every triple.
    pub fn agreement_check(&self, data: &FourSymData, other: &CurvatureTable) -> Check {
        Check::from_witness(self.first_difference(other).map(|(i, j, k)| {
            format!(
                "{} R({}, {}){}: {} vs {}",
                self.kind.name(),
                data.label(i),
                data.label(j),
                data.label(k),
                format_tangent(data, self.get(i, j, k)),
                format_tangent(data, other.get(i, j, k))
            )
        }))
    }
}

fn is_x(data: &FourSymData, t: usize) -> bool {
    data.part_of_tangent(t) == Part::GSigmaM1
}

/// Case-by-case curvature, by the type (X ∈ 𝔤^σ₋₁ or Y ∈ 𝔭) of each slot.
pub fn curvature(data: &FourSymData, kind: CurvatureKind) -> CurvatureTable {
    let off = data.offset();
    let dm = data.dim_m();
    CurvatureTable::from_fn(dm, kind, |i, j, k| {
        let v = match kind {
            CurvatureKind::ChernMinus => chern_case(data, off + i, off + j, off + k),
            CurvatureKind::LcPlus => lc_case(data, Sign::Plus, i, j, k),
            CurvatureKind::LcMinus => lc_case(data, Sign::Minus, i, j, k),
        };
        data.tangent(&data.proj_m(&v))
    })
}

/// [[a, b], c] on adapted indices.
fn bb(data: &FourSymData, a: usize, b: usize, c: usize) -> Vector {
    data.bracket(&data.bracket_units(a, b), &data.unit(c))
}

/// [σ[a, b], c] on adapted indices.
fn sb(data: &FourSymData, a: usize, b: usize, c: usize) -> Vector {
    data.bracket(&data.sigma(&data.bracket_units(a, b)), &data.unit(c))
}

fn combo(terms: &[(Rational, Vector)], len: usize) -> Vector {
    let mut out = vec![Rational::zero(); len];
    for (s, v) in terms {
        add_into(&mut out, v, s);
    }
    out
}

fn lc_case(data: &FourSymData, sign: Sign, i: usize, j: usize, k: usize) -> Vector {
    let (xi, xj, xk) = (is_x(data, i), is_x(data, j), is_x(data, k));
    if !xi && xj {
        let v = lc_case(data, sign, j, i, k);
        return scaled(&v, &Rational::from_int(-1));
    }
    let off = data.offset();
    let (a, b, c) = (off + i, off + j, off + k);
    let d = data.d();
    let r = |n: i64, m: i64| q(n, m);
    let plus = sign == Sign::Plus;
    match (xi, xj, xk) {
        (true, true, true) => scaled(&bb(data, a, b, c), &r(-1, 1)),
        (true, true, false) => scaled(&bb(data, a, b, c), &if plus { r(-1, 1) } else { r(3, 1) }),
        (true, false, true) => {
            if plus {
                scaled(&bb(data, a, b, c), &r(-1, 1))
            } else {
                combo(&[(r(-1, 1), bb(data, a, b, c)), (r(2, 1), bb(data, a, c, b))], d)
            }
        }
        (true, false, false) => {
            if plus {
                scaled(&bb(data, a, b, c), &r(-1, 2))
            } else {
                combo(&[(r(-1, 2), bb(data, a, b, c)), (r(1, 1), bb(data, a, c, b))], d)
            }
        }
        (false, false, true) => scaled(&bb(data, a, b, c), &if plus { r(-1, 2) } else { r(-3, 2) }),
        (false, false, false) => {
            let s = if plus { 1 } else { -1 };
            let first = if plus { r(-1, 4) } else { r(-7, 4) };
            combo(
                &[
                    (first, bb(data, a, b, c)),
                    (r(s, 4), sb(data, c, a, b)),
                    (r(s, 4), sb(data, b, c, a)),
                    (r(-2 * s, 4), sb(data, a, b, c)),
                ],
                d,
            )
        }
        (false, true, _) => unreachable!("handled by antisymmetry"),
    }
}

fn chern_case(data: &FourSymData, a: usize, b: usize, c: usize) -> Vector {
    let off = data.offset();
    match (is_x(data, a - off), is_x(data, b - off)) {
        (true, true) => scaled(&bb(data, a, b, c), &Rational::from_int(-1)),
        (false, false) => {
            let ab = data.bracket_units(a, b);
            let mut h = ab.clone();
            add_into(&mut h, &data.sigma(&ab), &Rational::one());
            scaled(&data.bracket(&h, &data.unit(c)), &q(-1, 2))
        }
        _ => data.zero(),
    }
}

/// Curvature from a connection table and brackets only.
///
/// Levi-Civita: R(A,B)C = ∇(∇(C,B), A) − ∇(∇(C,A), B) + ∇(pr[A,B], C) − pr[[A,B], C].
/// Chern: the same formula corrected by torsion terms. The full bracket in the last term
/// carries the isotropy part of [A, B].
pub fn curvature_oracle(data: &FourSymData, kind: CurvatureKind) -> CurvatureTable {
    let conn = kind.connection(data);
    curvature_from_connection(data, kind, &conn)
}

pub fn curvature_from_connection(data: &FourSymData, kind: CurvatureKind, conn: &Connection) -> CurvatureTable {
    let off = data.offset();
    let dm = data.dim_m();
    let pr = PrTable::new(data);
    let tor = torsion(data, conn);
    let with_torsion = kind == CurvatureKind::ChernMinus;
    let unit = |t: usize| data.tangent(&data.m_unit(t));
    CurvatureTable::from_fn(dm, kind, |i, j, k| {
        let (a, b, c) = (unit(i), unit(j), unit(k));
        let full = data.tangent(&data.proj_m(&bb(data, off + i, off + j, off + k)));
        if with_torsion {
            let nbc = conn.at(j, k);
            let nac = conn.at(i, k);
            let mut out = conn.apply(nbc, &a);
            out = sub(&out, &conn.apply(nac, &b));
            add_into(&mut out, &conn.apply(pr.at(i, j), &c), &Rational::one());
            add_into(&mut out, &conn.apply(pr.at(i, k), &b), &Rational::one());
            out = sub(&out, &conn.apply(pr.at(j, k), &a));
            out = sub(&out, &full);
            add_into(&mut out, &tor.apply(&a, nbc), &Rational::one());
            out = sub(&out, &tor.apply(&b, nac));
            add_into(&mut out, &tor.apply(&b, pr.at(i, k)), &Rational::one());
            sub(&out, &tor.apply(&a, pr.at(j, k)))
        } else {
            let mut out = conn.apply(conn.at(k, j), &a);
            out = sub(&out, &conn.apply(conn.at(k, i), &b));
            add_into(&mut out, &conn.apply(pr.at(i, j), &c), &Rational::one());
            sub(&out, &full)
        }
    })
}

/// R(JA, JB) = R(A, B) as endomorphisms, on all basis pairs.
pub fn j_invariance_check(data: &FourSymData, table: &CurvatureTable, j: &TangentEndo) -> Check {
    let dm = table.dim();
    let cols: Vec<Vec<Rational>> = (0..dm).map(|t| j.apply(&data.tangent(&data.m_unit(t)))).collect();
    for a in 0..dm {
        for b in a + 1..dm {
            if table.endo_of(&cols[a], &cols[b]).matrix() != table.endo(a, b).matrix() {
                return Check::fail(format!(
                    "R(J{0}, J{1}) != R({0}, {1})",
                    data.label(a),
                    data.label(b)
                ));
            }
        }
    }
    Check::pass()
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
    fn case_list_matches_generic_formula() {
        for (f, k, n) in [(Family::Sl, 1, 1), (Family::SoSplit, 1, 2), (Family::Sp, 2, 1), (Family::UCompact, 2, 1)] {
            let d = data(f, k, n);
            for kind in CurvatureKind::ALL {
                let spec = curvature(&d, kind);
                let oracle = curvature_oracle(&d, kind);
                assert!(spec.agreement_check(&d, &oracle).is_pass(), "{f} {kind:?}: {:?}", spec.agreement_check(&d, &oracle));
                assert!(spec.antisymmetry_check(&d).is_pass());
            }
        }
    }

    #[test]
    fn chern_is_minus_isotropy_action() {
        let d = data(Family::Sl, 1, 2);
        let t = curvature(&d, CurvatureKind::ChernMinus);
        let off = d.offset();
        for i in 0..d.dim_m() {
            for j in 0..d.dim_m() {
                for k in 0..d.dim_m() {
                    let ab = d.bracket_units(off + i, off + j);
                    let prab = d.proj_m(&ab);
                    let mut v = d.bracket(&prab, &d.unit(off + k));
                    add_into(&mut v, &d.bracket(&ab, &d.unit(off + k)), &Rational::from_int(-1));
                    assert_eq!(t.get(i, j, k), d.tangent(&d.proj_m(&v)).as_slice());
                }
            }
        }
    }

    #[test]
    fn gplus_curvature_is_j_invariant() {
        let d = data(Family::Sp, 2, 1);
        let t = curvature(&d, CurvatureKind::LcPlus);
        assert!(j_invariance_check(&d, &t, &d.j_structure(Sign::Plus)).is_pass());
    }

    #[test]
    fn zero_on_the_diagonal() {
        let d = data(Family::SoCompact, 2, 2);
        let t = curvature(&d, CurvatureKind::LcMinus);
        for i in 0..d.dim_m() {
            for k in 0..d.dim_m() {
                assert!(t.get(i, i, k).iter().all(Rational::is_zero));
            }
        }
    }
}
