//! Invariant connections on 𝔪, stored by their values on basis pairs.

use super::{add_into, format_tangent, scaled, sub};
use crate::check::Check;
use crate::foursym::{FourSymData, Part, Sign, TangentEndo};
use crate::linalg::{q, GramForm, Rational, RationalMatrix};

/// A bilinear map ∇̃: 𝔪 × 𝔪 → 𝔪, ∇̃(A, B) standing for ∇_{A*}B* at the base point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    dm: usize,
    table: Vec<Vec<Rational>>,
}

impl Connection {
    pub fn from_fn(dm: usize, mut f: impl FnMut(usize, usize) -> Vec<Rational>) -> Self {
        let mut table = Vec::with_capacity(dm * dm);
        for a in 0..dm {
            for b in 0..dm {
                table.push(f(a, b));
            }
        }
        Self { dm, table }
    }

    pub fn dim(&self) -> usize {
        self.dm
    }

    pub fn at(&self, a: usize, b: usize) -> &[Rational] {
        &self.table[a * self.dm + b]
    }

    pub fn apply(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dm];
        for (a, x) in u.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in v.iter().enumerate() {
                if !y.is_zero() {
                    add_into(&mut out, self.at(a, b), &(x * y));
                }
            }
        }
        out
    }

    /// The Levi-Civita connection of G± from the explicit case list.
    pub fn levi_civita(data: &FourSymData, sign: Sign) -> Self {
        let unit = |t: usize| data.tangent(&data.m_unit(t));
        Self::from_fn(data.dim_m(), |a, b| lc_nabla(data, sign, &unit(a), &unit(b)))
    }

    /// Solves the Koszul identity against G±; `None` if the metric is degenerate.
    pub fn koszul(data: &FourSymData, sign: Sign) -> Option<Self> {
        let g = data.metric_gram(sign).ok()?;
        let g_inv = g.matrix().inverse()?;
        let pr = PrTable::new(data);
        let dm = data.dim_m();
        let half = q(1, 2);
        Some(Self::from_fn(dm, |a, b| {
            let rhs: Vec<Rational> = (0..dm)
                .map(|c| {
                    let s = g_eval_unit(&g, pr.at(a, b), c)
                        + g_eval_unit(&g, pr.at(a, c), b)
                        + g_eval_unit(&g, pr.at(b, c), a);
                    &s * &half
                })
                .collect();
            g_inv.mul_vec(&rhs).expect("square")
        }))
    }

    /// ∇̃^{C⁻}(A, B) = pr[A, B].
    pub fn chern(data: &FourSymData) -> Self {
        let pr = PrTable::new(data);
        Self::from_fn(data.dim_m(), |a, b| pr.at(a, b).to_vec())
    }

    /// The Chern connection rebuilt from ∇^{g⁻} and J⁻.
    pub fn chern_via_levi_civita(data: &FourSymData) -> Self {
        let lc = Self::levi_civita(data, Sign::Minus);
        let j = data.j_structure(Sign::Minus);
        let pr = PrTable::new(data);
        let unit = |t: usize| data.tangent(&data.m_unit(t));
        Self::from_fn(data.dim_m(), |a, b| chern_from_parts(&lc, &j, pr.at(a, b), &unit(a), &unit(b)))
    }
}

fn g_eval_unit(g: &GramForm, u: &[Rational], c: usize) -> Rational {
    u.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(s, x)| x * g.entry(s, c))
        .sum()
}

/// pr[e_a, e_b] in 𝔪-coordinates for all basis pairs.
pub(crate) struct PrTable {
    dm: usize,
    table: Vec<Vec<Rational>>,
}

impl PrTable {
    pub(crate) fn new(data: &FourSymData) -> Self {
        let (dm, off) = (data.dim_m(), data.offset());
        let mut table = Vec::with_capacity(dm * dm);
        for a in 0..dm {
            for b in 0..dm {
                table.push(data.tangent(&data.bracket_units(off + a, off + b)));
            }
        }
        Self { dm, table }
    }

    pub(crate) fn at(&self, a: usize, b: usize) -> &[Rational] {
        &self.table[a * self.dm + b]
    }

    pub(crate) fn apply(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dm];
        for (a, x) in u.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in v.iter().enumerate() {
                if !y.is_zero() {
                    add_into(&mut out, self.at(a, b), &(x * y));
                }
            }
        }
        out
    }
}

/// ∇^{g±} on representatives: ∇(X₁, X₂) = 0, ∇(X, Y) = ±[X, Y],
/// ∇(Y, X) = 0 for g⁺ and −2[X, Y] for g⁻, ∇(Y₁, Y₂) = ½ pr[Y₁, Y₂].
pub fn lc_nabla(data: &FourSymData, sign: Sign, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (va, vb) = (data.embed(a), data.embed(b));
    let (xa, ya) = (data.component(&va, Part::GSigmaM1), data.component(&va, Part::P));
    let (xb, yb) = (data.component(&vb, Part::GSigmaM1), data.component(&vb, Part::P));
    let mut out = scaled(&data.bracket(&xa, &yb), &sign.factor());
    if sign == Sign::Minus {
        add_into(&mut out, &data.bracket(&xb, &ya), &Rational::from_int(-2));
    }
    add_into(&mut out, &data.proj_m(&data.bracket(&ya, &yb)), &q(1, 2));
    data.tangent(&out)
}

/// Levi-Civita value from the Koszul identity alone; `None` if G± is degenerate.
pub fn lc_nabla_koszul(data: &FourSymData, sign: Sign, a: &[Rational], b: &[Rational]) -> Option<Vec<Rational>> {
    Connection::koszul(data, sign).map(|c| c.apply(a, b))
}

pub fn chern_nabla_minus(data: &FourSymData, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    data.tangent(&data.proj_m(&data.bracket(&data.embed(a), &data.embed(b))))
}

fn chern_from_parts(
    lc: &Connection,
    j: &TangentEndo,
    pr_ab: &[Rational],
    a: &[Rational],
    b: &[Rational],
) -> Vec<Rational> {
    let half = q(1, 2);
    let mut out = scaled(&lc.apply(a, b), &half);
    add_into(&mut out, pr_ab, &half);
    let twisted = j.apply(&lc.apply(&j.apply(b), a));
    add_into(&mut out, &twisted, &-&half);
    out
}

/// ½∇^{g⁻}(A, B) + ½pr[A, B] − ½J⁻∇^{g⁻}(J⁻B, A).
pub fn chern_nabla_via_levi_civita(data: &FourSymData, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let lc = Connection::levi_civita(data, Sign::Minus);
    let j = data.j_structure(Sign::Minus);
    let pr_ab = chern_nabla_minus(data, a, b);
    chern_from_parts(&lc, &j, &pr_ab, a, b)
}

/// T̃(A, B) = ∇̃(A, B) − ∇̃(B, A) − pr[A, B] on basis pairs.
pub fn torsion(data: &FourSymData, conn: &Connection) -> Connection {
    let pr = PrTable::new(data);
    Connection::from_fn(data.dim_m(), |a, b| sub(&sub(conn.at(a, b), conn.at(b, a)), pr.at(a, b)))
}

pub fn torsion_free_check(data: &FourSymData, conn: &Connection) -> Check {
    let t = torsion(data, conn);
    let dm = data.dim_m();
    for a in 0..dm {
        for b in a + 1..dm {
            if t.at(a, b).iter().any(|x| !x.is_zero()) {
                return Check::fail(format!(
                    "T({}, {}) = {}",
                    data.label(a),
                    data.label(b),
                    format_tangent(data, t.at(a, b))
                ));
            }
        }
    }
    Check::pass()
}

/// 2G(∇(A,B), C) = G(pr[A,B], C) + G(pr[A,C], B) + G(pr[B,C], A) on all basis triples.
pub fn koszul_identity_check(data: &FourSymData, sign: Sign, conn: &Connection) -> Check {
    let Ok(g) = data.metric_gram(sign) else {
        return Check::fail("G is not symmetric");
    };
    let pr = PrTable::new(data);
    let dm = data.dim_m();
    for a in 0..dm {
        for b in 0..dm {
            for c in 0..dm {
                let lhs = &Rational::from_int(2) * &g_eval_unit(&g, conn.at(a, b), c);
                let rhs = g_eval_unit(&g, pr.at(a, b), c) + g_eval_unit(&g, pr.at(a, c), b) + g_eval_unit(&g, pr.at(b, c), a);
                if lhs != rhs {
                    return Check::fail(format!(
                        "Koszul identity fails on ({}, {}, {}): {lhs} vs {rhs}",
                        data.label(a),
                        data.label(b),
                        data.label(c)
                    ));
                }
            }
        }
    }
    Check::pass()
}

/// (∇_A F)(B, C) = F(pr[A,B] − ∇(A,B), C) + F(B, pr[A,C] − ∇(A,C)) vanishes on all triples.
pub fn form_parallel_check(data: &FourSymData, conn: &Connection, form: &GramForm, name: &str) -> Check {
    let pr = PrTable::new(data);
    let dm = data.dim_m();
    let lambda: Vec<Vec<Rational>> =
        (0..dm * dm).map(|t| sub(pr.at(t / dm, t % dm), conn.at(t / dm, t % dm))).collect();
    for a in 0..dm {
        for b in 0..dm {
            for c in 0..dm {
                let v = g_eval_unit(form, &lambda[a * dm + b], c) + g_eval_unit_left(form, b, &lambda[a * dm + c]);
                if !v.is_zero() {
                    return Check::fail(format!(
                        "(∇_{} {name})({}, {}) = {v}",
                        data.label(a),
                        data.label(b),
                        data.label(c)
                    ));
                }
            }
        }
    }
    Check::pass()
}

fn g_eval_unit_left(g: &GramForm, b: usize, u: &[Rational]) -> Rational {
    u.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(s, x)| x * g.entry(b, s))
        .sum()
}

/// (∇_A J)B = (∇(A, JB) − pr[A, JB]) − J(∇(A, B) − pr[A, B]) vanishes on all pairs.
///
/// The naive test ∇(A, JB) = J∇(A, B) is not tensorial on representatives: it drops the
/// pr-bracket terms, which do not commute with J.
pub fn j_parallel_check(data: &FourSymData, conn: &Connection, j: &TangentEndo, name: &str) -> Check {
    let pr = PrTable::new(data);
    let dm = data.dim_m();
    let unit = |t: usize| data.tangent(&data.m_unit(t));
    for a in 0..dm {
        let ea = unit(a);
        for b in 0..dm {
            let eb = unit(b);
            let jb = j.apply(&eb);
            let left = sub(&conn.apply(&ea, &jb), &pr.apply(&ea, &jb));
            let right = j.apply(&sub(conn.at(a, b), pr.at(a, b)));
            let v = sub(&left, &right);
            if v.iter().any(|x| !x.is_zero()) {
                return Check::fail(format!(
                    "(∇_{} {name}){} = {}",
                    data.label(a),
                    data.label(b),
                    format_tangent(data, &v)
                ));
            }
        }
    }
    Check::pass()
}

/// Both connections agree on every basis pair.
pub fn connections_agree(data: &FourSymData, left: &Connection, right: &Connection) -> Check {
    let dm = data.dim_m();
    for a in 0..dm {
        for b in 0..dm {
            if left.at(a, b) != right.at(a, b) {
                return Check::fail(format!(
                    "({}, {}): {} vs {}",
                    data.label(a),
                    data.label(b),
                    format_tangent(data, left.at(a, b)),
                    format_tangent(data, right.at(a, b))
                ));
            }
        }
    }
    Check::pass()
}

/// Chern torsion against the Nijenhuis values: T̃ = ¼·N in the representative frame,
/// where N = −(π_* value), given as `table` on pairs `a < b`.
pub fn chern_torsion_check(data: &FourSymData, chern: &Connection, table: &[((usize, usize), Vec<Rational>)]) -> Check {
    let t = torsion(data, chern);
    let quarter = q(-1, 4);
    for ((a, b), n) in table {
        let expected = scaled(n, &quarter);
        if t.at(*a, *b) != expected.as_slice() {
            return Check::fail(format!(
                "T({}, {}) = {} but N/4 = {}",
                data.label(*a),
                data.label(*b),
                format_tangent(data, t.at(*a, *b)),
                format_tangent(data, &expected)
            ));
        }
    }
    Check::pass()
}

/// The matrix of J as an endomorphism, used by negative controls.
pub fn endo(m: RationalMatrix) -> TangentEndo {
    TangentEndo::new(m).expect("square")
}
