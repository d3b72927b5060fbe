//! The order-four automorphism σ = Ad R, its eigenspace splitting 𝔤 = 𝔤^σ ⊕ 𝔤^σ₋₁ ⊕ 𝔭,
//! the twin structures J± on 𝔪 = 𝔤^σ₋₁ ⊕ 𝔭 and the invariant forms built from ρ.
//!
//! Internally every element of 𝔤 is a coordinate vector in the adapted basis
//! `gsigma ++ gsigma_m1 ++ p`, so the 𝔪-part of a vector is its tail.

use serde::{Deserialize, Serialize};

use crate::check::Check;
use crate::error::{Error, Result};
use crate::families::{trace_gram, AlgebraBasis};
use crate::linalg::span::{independent_subset, CoordinateSolver};
use crate::linalg::{q, FormKind, GramForm, Rational, RationalMatrix};

/// Coordinates over the adapted basis of 𝔤.
pub type Vector = Vec<Rational>;

pub(crate) type Sparse = Vec<(usize, Rational)>;

fn sparse(v: &[Rational]) -> Sparse {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn factor(self) -> Rational {
        match self {
            Sign::Plus => Rational::one(),
            Sign::Minus => Rational::from_int(-1),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// Which summand of the splitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Part {
    #[serde(rename = "gsigma")]
    GSigma,
    #[serde(rename = "gsigma_m1")]
    GSigmaM1,
    #[serde(rename = "p")]
    P,
}

/// An endomorphism of 𝔪 in m_basis coordinates. Column `j` is the image of `e_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentEndo {
    matrix: RationalMatrix,
}

impl TangentEndo {
    pub fn new(matrix: RationalMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(v).expect("endomorphism of 𝔪")
    }

    pub fn then(&self, other: &TangentEndo) -> TangentEndo {
        TangentEndo { matrix: &other.matrix * &self.matrix }
    }

    pub fn squares_to_minus_identity(&self) -> bool {
        let sq = &self.matrix * &self.matrix;
        sq == -&RationalMatrix::identity(self.dim())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub g: usize,
    pub gsigma: usize,
    pub gsigma_m1: usize,
    pub p: usize,
    pub m: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nondegeneracy {
    pub omega: bool,
    pub gprime: bool,
    pub betav: bool,
    pub beta: bool,
}

#[derive(Debug, Clone)]
pub struct FourSymData {
    pub alg: AlgebraBasis,
    pub rho: RationalMatrix,
    pub r: RationalMatrix,
    pub r_inv: RationalMatrix,
    pub gsigma: Vec<RationalMatrix>,
    pub gsigma_m1: Vec<RationalMatrix>,
    pub p: Vec<RationalMatrix>,
    pub m_basis: Vec<RationalMatrix>,
    adapted: Vec<RationalMatrix>,
    solver: CoordinateSolver,
    /// structure[i][j] = [a_i, a_j]
    structure: Vec<Vec<Sparse>>,
    sigma_cols: Vec<Sparse>,
    ad_rho: Vec<Sparse>,
    omega: GramForm,
}

fn project(images: &[[RationalMatrix; 4]], coeffs: [i64; 4], den: i64) -> Vec<RationalMatrix> {
    images
        .iter()
        .map(|im| {
            let mut acc = RationalMatrix::zeros(im[0].rows(), im[0].cols());
            for (c, x) in coeffs.iter().zip(im) {
                if *c != 0 {
                    acc = &acc + &x.scale(&Rational::from_int(*c));
                }
            }
            acc.scale(&q(1, den))
        })
        .collect()
}

fn reduce(vectors: Vec<RationalMatrix>) -> Vec<RationalMatrix> {
    let flat: Vec<Vec<Rational>> = vectors.iter().map(|v| v.entries().to_vec()).collect();
    let keep = independent_subset(&flat);
    keep.into_iter().map(|i| vectors[i].clone()).collect()
}

pub fn make_foursym(alg: AlgebraBasis) -> Result<FourSymData> {
    FourSymData::new(alg)
}

impl FourSymData {
    pub fn new(alg: AlgebraBasis) -> Result<Self> {
        let spec = alg.spec;
        let (rho, r, r_inv) = (spec.rho(), spec.r(), spec.r_inv());
        let alg_solver = alg.solver();
        let sigma_m = |x: &RationalMatrix| x.conjugate(&r, &r_inv).expect("same size");

        let mut images = Vec::with_capacity(alg.dim());
        for (i, x) in alg.basis().iter().enumerate() {
            let s1 = sigma_m(x);
            if alg_solver.matrix_coordinates(&s1).is_none() {
                return Err(Error::Construction(format!("σ maps generator {i} outside the algebra")));
            }
            let s2 = sigma_m(&s1);
            let s3 = sigma_m(&s2);
            images.push([x.clone(), s1, s2, s3]);
        }
        let gsigma = reduce(project(&images, [1, 1, 1, 1], 4));
        let gsigma_m1 = reduce(project(&images, [1, -1, 1, -1], 4));
        let p = reduce(project(&images, [1, 0, -1, 0], 2));
        if gsigma.len() + gsigma_m1.len() + p.len() != alg.dim() {
            return Err(Error::Construction(format!(
                "eigenspace dimensions {} + {} + {} do not add up to {}",
                gsigma.len(),
                gsigma_m1.len(),
                p.len(),
                alg.dim()
            )));
        }
        let m_basis: Vec<RationalMatrix> = gsigma_m1.iter().chain(&p).cloned().collect();
        let adapted: Vec<RationalMatrix> = gsigma.iter().chain(&m_basis).cloned().collect();
        let solver = CoordinateSolver::from_matrices(&adapted)?;
        let d = adapted.len();

        let coords = |x: &RationalMatrix, what: &str| -> Result<Sparse> {
            solver
                .matrix_coordinates(x)
                .map(|c| sparse(&c))
                .ok_or_else(|| Error::Construction(format!("{what} escapes the algebra")))
        };
        let mut structure = vec![vec![Sparse::new(); d]; d];
        for i in 0..d {
            for j in i + 1..d {
                let c = coords(&adapted[i].bracket(&adapted[j])?, "a bracket of generators")?;
                structure[j][i] = c.iter().map(|(k, x)| (*k, -x)).collect();
                structure[i][j] = c;
            }
        }
        let sigma_cols =
            adapted.iter().map(|x| coords(&sigma_m(x), "σ of a generator")).collect::<Result<Vec<_>>>()?;
        let ad_rho = adapted
            .iter()
            .map(|x| coords(&rho.bracket(x).expect("same size"), "[ρ, X]"))
            .collect::<Result<Vec<_>>>()?;
        let omega = GramForm::from_fn(m_basis.len(), FormKind::Antisymmetric, |i, j| {
            rho.trace_of_product(&m_basis[i].bracket(&m_basis[j]).expect("same size")).expect("square")
        })?;

        let data = Self {
            alg,
            rho,
            r,
            r_inv,
            gsigma,
            gsigma_m1,
            p,
            m_basis,
            adapted,
            solver,
            structure,
            sigma_cols,
            ad_rho,
            omega,
        };
        for (what, check) in data.invariant_checks() {
            if let Check::Fail { witness } = check {
                return Err(Error::Consistency { what, witness });
            }
        }
        Ok(data)
    }

    pub fn dims(&self) -> Dims {
        Dims {
            g: self.alg.dim(),
            gsigma: self.gsigma.len(),
            gsigma_m1: self.gsigma_m1.len(),
            p: self.p.len(),
            m: self.m_basis.len(),
        }
    }

    /// Length of 𝔤-coordinate vectors.
    pub fn d(&self) -> usize {
        self.adapted.len()
    }

    /// Offset of 𝔪 inside the adapted basis.
    pub fn offset(&self) -> usize {
        self.gsigma.len()
    }

    pub fn dim_m(&self) -> usize {
        self.m_basis.len()
    }

    /// No 𝔤^σ₋₁: σ² = −Id on all of 𝔪 and J⁺ = J⁻.
    pub fn symmetric_mode(&self) -> bool {
        self.gsigma_m1.is_empty()
    }

    /// Coordinate range of a summand inside 𝔤-vectors.
    pub fn range(&self, part: Part) -> std::ops::Range<usize> {
        let (a, b, c) = (self.gsigma.len(), self.gsigma_m1.len(), self.p.len());
        match part {
            Part::GSigma => 0..a,
            Part::GSigmaM1 => a..a + b,
            Part::P => a + b..a + b + c,
        }
    }

    /// Coordinate range of a summand inside 𝔪-vectors.
    pub fn tangent_range(&self, part: Part) -> std::ops::Range<usize> {
        let r = self.range(part);
        let a = self.offset();
        r.start.saturating_sub(a)..r.end.saturating_sub(a)
    }

    pub fn part_of_tangent(&self, t: usize) -> Part {
        if t < self.gsigma_m1.len() {
            Part::GSigmaM1
        } else {
            Part::P
        }
    }

    /// `X0, X1, …` for 𝔤^σ₋₁ and `Y0, Y1, …` for 𝔭, matching the usual letters.
    pub fn label(&self, t: usize) -> String {
        let b = self.gsigma_m1.len();
        if t < b {
            format!("X{t}")
        } else {
            format!("Y{}", t - b)
        }
    }

    pub fn adapted_basis(&self) -> &[RationalMatrix] {
        &self.adapted
    }

    pub fn coords(&self, x: &RationalMatrix) -> Option<Vector> {
        self.solver.matrix_coordinates(x)
    }

    pub fn to_matrix(&self, v: &[Rational]) -> RationalMatrix {
        crate::linalg::span::combine(v, &self.adapted)
    }

    pub fn unit(&self, i: usize) -> Vector {
        let mut v = vec![Rational::zero(); self.d()];
        v[i] = Rational::one();
        v
    }

    /// The 𝔪 basis element `t` as a 𝔤-vector.
    pub fn m_unit(&self, t: usize) -> Vector {
        self.unit(self.offset() + t)
    }

    pub fn zero(&self) -> Vector {
        vec![Rational::zero(); self.d()]
    }

    pub fn bracket_units(&self, i: usize, j: usize) -> Vector {
        let mut v = self.zero();
        for (k, x) in &self.structure[i][j] {
            v[*k] = x.clone();
        }
        v
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vector {
        let mut out = self.zero();
        let vs = sparse(v);
        for (i, x) in u.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in &vs {
                let c = &self.structure[i][*j];
                if c.is_empty() {
                    continue;
                }
                let f = x * y;
                for (k, z) in c {
                    out[*k] += &(&f * z);
                }
            }
        }
        out
    }

    fn apply_sparse_cols(&self, cols: &[Sparse], v: &[Rational]) -> Vector {
        let mut out = self.zero();
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, z) in &cols[i] {
                out[*k] += &(x * z);
            }
        }
        out
    }

    pub fn sigma(&self, v: &[Rational]) -> Vector {
        self.apply_sparse_cols(&self.sigma_cols, v)
    }

    pub fn ad_rho(&self, v: &[Rational]) -> Vector {
        self.apply_sparse_cols(&self.ad_rho, v)
    }

    /// pr: 𝔤 → 𝔪 parallel to 𝔤^σ, as a 𝔤-vector.
    pub fn proj_m(&self, v: &[Rational]) -> Vector {
        let mut out = v.to_vec();
        for x in out.iter_mut().take(self.offset()) {
            *x = Rational::zero();
        }
        out
    }

    /// Keeps only the coordinates of one summand.
    pub fn component(&self, v: &[Rational], part: Part) -> Vector {
        let r = self.range(part);
        v.iter()
            .enumerate()
            .map(|(i, x)| if r.contains(&i) { x.clone() } else { Rational::zero() })
            .collect()
    }

    /// 𝔪-coordinates of a 𝔤-vector (its 𝔤^σ part is dropped).
    pub fn tangent(&self, v: &[Rational]) -> Vec<Rational> {
        v[self.offset()..].to_vec()
    }

    pub fn embed(&self, t: &[Rational]) -> Vector {
        let mut v = self.zero();
        v[self.offset()..].clone_from_slice(t);
        v
    }

    /// proj_m of a matrix of 𝔤, as a matrix.
    pub fn proj_m_matrix(&self, x: &RationalMatrix) -> Option<RationalMatrix> {
        self.coords(x).map(|c| self.to_matrix(&self.proj_m(&c)))
    }

    /// J± on 𝔪: ±½ ad ρ on 𝔤^σ₋₁ (C ↦ ±J_2n C) and σ on 𝔭.
    pub fn j_structure(&self, sign: Sign) -> TangentEndo {
        let dm = self.dim_m();
        let half = &sign.factor() * &q(1, 2);
        let mut m = RationalMatrix::zeros(dm, dm);
        for t in 0..dm {
            let e = self.m_unit(t);
            let img = match self.part_of_tangent(t) {
                Part::GSigmaM1 => self.ad_rho(&e).iter().map(|x| x * &half).collect(),
                _ => self.sigma(&e),
            };
            for (s, x) in self.tangent(&img).into_iter().enumerate() {
                m[(s, t)] = x;
            }
        }
        TangentEndo { matrix: m }
    }

    /// σ restricted to 𝔪.
    pub fn sigma_endo(&self) -> TangentEndo {
        let dm = self.dim_m();
        let mut m = RationalMatrix::zeros(dm, dm);
        for t in 0..dm {
            for (s, x) in self.tangent(&self.sigma(&self.m_unit(t))).into_iter().enumerate() {
                m[(s, t)] = x;
            }
        }
        TangentEndo { matrix: m }
    }

    /// Ω̃(X, Y) = Tr(ρ[X, Y]) over m_basis.
    pub fn omega_gram(&self) -> &GramForm {
        &self.omega
    }

    /// Ω̃ restricted to 𝔤^σ₋₁.
    pub fn omega_v(&self) -> GramForm {
        self.omega.restrict(0, self.gsigma_m1.len())
    }

    /// Ω̃ restricted to 𝔭.
    pub fn omega_prime(&self) -> GramForm {
        self.omega.restrict(self.gsigma_m1.len(), self.p.len())
    }

    /// g′ = Tr(XY) on 𝔭.
    pub fn gprime_gram(&self) -> GramForm {
        trace_gram(&self.p)
    }

    /// β^v = Tr(XY) on 𝔤^σ₋₁.
    pub fn betav_gram(&self) -> GramForm {
        trace_gram(&self.gsigma_m1)
    }

    pub fn beta_gram(&self) -> GramForm {
        trace_gram(self.alg.basis())
    }

    pub fn nondegeneracy_report(&self) -> Nondegeneracy {
        Nondegeneracy {
            omega: self.omega.is_nondegenerate(),
            gprime: self.gprime_gram().is_nondegenerate(),
            betav: self.betav_gram().is_nondegenerate(),
            beta: self.beta_gram().is_nondegenerate(),
        }
    }

    /// G±(X, Y) = Ω̃(X, J±Y).
    pub fn metric_gram(&self, sign: Sign) -> Result<GramForm> {
        let j = self.j_structure(sign);
        GramForm::symmetric(self.omega.matrix() * j.matrix())
    }

    pub fn compatibility_check(&self, sign: Sign) -> Check {
        self.compatibility_check_endo(&self.j_structure(sign))
    }

    /// Ω̃(JX, JY) = Ω̃(X, Y) for an arbitrary candidate J, which must first square to −Id.
    pub fn compatibility_check_endo(&self, j: &TangentEndo) -> Check {
        let dm = self.dim_m();
        if j.dim() != dm {
            return Check::fail(format!("endomorphism has size {}, 𝔪 has dimension {dm}", j.dim()));
        }
        let sq = j.matrix() * j.matrix();
        for s in 0..dm {
            for t in 0..dm {
                let expected = if s == t { Rational::from_int(-1) } else { Rational::zero() };
                if sq[(s, t)] != expected {
                    return Check::fail(format!(
                        "J^2 != -Id: entry ({}, {}) is {}",
                        self.label(s),
                        self.label(t),
                        sq[(s, t)]
                    ));
                }
            }
        }
        let pulled = &(&j.matrix().transpose() * self.omega.matrix()) * j.matrix();
        for s in 0..dm {
            for t in 0..dm {
                if pulled[(s, t)] != self.omega.matrix()[(s, t)] {
                    return Check::fail(format!(
                        "Ω̃(J{a}, J{b}) = {} but Ω̃({a}, {b}) = {}",
                        pulled[(s, t)],
                        self.omega.matrix()[(s, t)],
                        a = self.label(s),
                        b = self.label(t)
                    ));
                }
            }
        }
        Check::pass()
    }

    pub fn closedness_check(&self) -> Check {
        self.closedness_check_with(&self.omega)
    }

    /// Cyclic sum Ω(pr[X,Y], Z) + Ω(pr[Y,Z], X) + Ω(pr[Z,X], Y) over basis triples of 𝔪,
    /// for any antisymmetric form `omega` on 𝔪.
    pub fn closedness_check_with(&self, omega: &GramForm) -> Check {
        let dm = self.dim_m();
        let a = self.offset();
        let pr = |i: usize, j: usize| self.tangent(&self.bracket_units(a + i, a + j));
        let brackets: Vec<Vec<Vec<Rational>>> = (0..dm).map(|i| (0..dm).map(|j| pr(i, j)).collect()).collect();
        let om = |u: &[Rational], t: usize| -> Rational {
            u.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(s, x)| x * omega.entry(s, t))
                .sum()
        };
        for i in 0..dm {
            for j in i + 1..dm {
                for k in j + 1..dm {
                    let total = om(&brackets[i][j], k) + om(&brackets[j][k], i) + om(&brackets[k][i], j);
                    if !total.is_zero() {
                        return Check::fail(format!(
                            "cyclic sum on ({}, {}, {}) is {total}",
                            self.label(i),
                            self.label(j),
                            self.label(k)
                        ));
                    }
                }
            }
        }
        Check::pass()
    }

    /// σ⁴ = Id and the eigenvalue conditions, on matrices.
    pub fn sigma_order4_check(&self) -> Check {
        let sigma_m = |x: &RationalMatrix| x.conjugate(&self.r, &self.r_inv).expect("same size");
        for (i, x) in self.alg.basis().iter().enumerate() {
            let s4 = sigma_m(&sigma_m(&sigma_m(&sigma_m(x))));
            if s4 != *x {
                return Check::fail(format!("σ^4 moves generator {i}"));
            }
        }
        for (i, x) in self.gsigma.iter().enumerate() {
            if sigma_m(x) != *x {
                return Check::fail(format!("σ does not fix gsigma[{i}]"));
            }
        }
        for (i, x) in self.gsigma_m1.iter().enumerate() {
            if sigma_m(x) != -x {
                return Check::fail(format!("σ != -Id on gsigma_m1[{i}]"));
            }
        }
        for (i, x) in self.p.iter().enumerate() {
            if sigma_m(&sigma_m(x)) != -x {
                return Check::fail(format!("σ^2 != -Id on p[{i}]"));
            }
        }
        Check::pass()
    }

    /// σ[X,Y] = [σX, σY] on every pair of generators.
    pub fn automorphism_check(&self) -> Check {
        let sigma_m = |x: &RationalMatrix| x.conjugate(&self.r, &self.r_inv).expect("same size");
        let b = self.alg.basis();
        let images: Vec<RationalMatrix> = b.iter().map(sigma_m).collect();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                let lhs = sigma_m(&b[i].bracket(&b[j]).expect("same size"));
                let rhs = images[i].bracket(&images[j]).expect("same size");
                if lhs != rhs {
                    return Check::fail(format!("σ[e{i}, e{j}] != [σe{i}, σe{j}]"));
                }
            }
        }
        Check::pass()
    }

    fn sigma_coord_matrix(&self) -> RationalMatrix {
        let d = self.d();
        let mut s = RationalMatrix::zeros(d, d);
        for (j, col) in self.sigma_cols.iter().enumerate() {
            for (i, x) in col {
                s[(i.to_owned(), j)] = x.clone();
            }
        }
        s
    }

    /// P₊₁ + P₋₁ + P_𝔭 = Id, P_a P_b = δ_ab P_a, and pr∘pr = pr with kernel 𝔤^σ.
    pub fn projector_check(&self) -> Check {
        let d = self.d();
        let s = self.sigma_coord_matrix();
        let id = RationalMatrix::identity(d);
        let s2 = &s * &s;
        let s3 = &s2 * &s;
        let p_plus = (&(&(&id + &s) + &s2) + &s3).scale(&q(1, 4));
        let p_minus = (&(&(&id - &s) + &s2) - &s3).scale(&q(1, 4));
        let p_p = (&id - &s2).scale(&q(1, 2));
        let ps = [("P+1", &p_plus), ("P-1", &p_minus), ("Pp", &p_p)];
        if &(&p_plus + &p_minus) + &p_p != id {
            return Check::fail("projectors do not sum to Id");
        }
        for (na, a) in ps {
            for (nb, b) in ps {
                let prod = a * b;
                let ok = if na == nb { prod == *a } else { prod.is_zero() };
                if !ok {
                    return Check::fail(format!("{na}·{nb} has the wrong value"));
                }
            }
        }
        for (part, p) in [(Part::GSigma, &p_plus), (Part::GSigmaM1, &p_minus), (Part::P, &p_p)] {
            for i in 0..d {
                let inside = self.range(part).contains(&i);
                let col: Vec<Rational> = p.column(i);
                let ok = if inside { col == self.unit(i) } else { col.iter().all(Rational::is_zero) };
                if !ok {
                    return Check::fail(format!("projector image of adapted element {i} is off"));
                }
            }
        }
        // pr = Id − P₊₁
        let pr = &id - &p_plus;
        if &pr * &pr != pr {
            return Check::fail("pr is not idempotent");
        }
        for i in self.range(Part::GSigma) {
            if !pr.column(i).iter().all(Rational::is_zero) {
                return Check::fail(format!("pr does not kill gsigma[{i}]"));
            }
        }
        Check::pass()
    }

    /// [𝔤^σ, 𝔤^σ₋₁] ⊆ 𝔤^σ₋₁, [𝔤^σ, 𝔭] ⊆ 𝔭, [𝔤^σ₋₁, 𝔤^σ₋₁] ⊆ 𝔤^σ, [𝔤^σ₋₁, 𝔭] ⊆ 𝔭,
    /// [𝔭, 𝔭] ⊆ 𝔤^σ ⊕ 𝔤^σ₋₁.
    pub fn graded_bracket_check(&self) -> Check {
        use Part::*;
        let rules: [(Part, Part, &[Part]); 6] = [
            (GSigma, GSigma, &[GSigma]),
            (GSigma, GSigmaM1, &[GSigmaM1]),
            (GSigma, P, &[P]),
            (GSigmaM1, GSigmaM1, &[GSigma]),
            (GSigmaM1, P, &[P]),
            (P, P, &[GSigma, GSigmaM1]),
        ];
        for (a, b, allowed) in rules {
            for i in self.range(a) {
                for j in self.range(b) {
                    for (k, _) in &self.structure[i][j] {
                        if !allowed.iter().any(|p| self.range(*p).contains(k)) {
                            return Check::fail(format!(
                                "[{a:?}, {b:?}] leaves its graded slot (adapted {i}, {j})"
                            ));
                        }
                    }
                }
            }
        }
        Check::pass()
    }

    /// J±∘ad h = ad h∘J± on 𝔪 for h ∈ 𝔤^σ, both signs.
    pub fn isotropy_invariance_check(&self) -> Check {
        let dm = self.dim_m();
        for sign in Sign::BOTH {
            let j = self.j_structure(sign);
            for h in self.range(Part::GSigma) {
                let mut ad = RationalMatrix::zeros(dm, dm);
                for t in 0..dm {
                    let img = self.tangent(&self.bracket_units(h, self.offset() + t));
                    for (s, x) in img.into_iter().enumerate() {
                        ad[(s, t)] = x;
                    }
                }
                if &ad * j.matrix() != j.matrix() * &ad {
                    return Check::fail(format!("J{} does not commute with ad gsigma[{h}]", sign.symbol()));
                }
            }
        }
        Check::pass()
    }

    /// Tr(ρ[h, Y]) = 0 for h ∈ 𝔤^σ and Y ∈ 𝔪, and Ω̃ is σ-invariant with 𝔤^σ₋₁ ⟂ 𝔭.
    pub fn omega_invariance_check(&self) -> Check {
        for (i, h) in self.gsigma.iter().enumerate() {
            for (t, y) in self.m_basis.iter().enumerate() {
                let v = self.rho.trace_of_product(&h.bracket(y).expect("same size")).expect("square");
                if !v.is_zero() {
                    return Check::fail(format!("Tr(ρ[gsigma[{i}], {}]) = {v}", self.label(t)));
                }
            }
        }
        let s = self.sigma_endo();
        let pulled = &(&s.matrix().transpose() * self.omega.matrix()) * s.matrix();
        if pulled != *self.omega.matrix() {
            return Check::fail("Ω̃ is not σ-invariant");
        }
        let b = self.gsigma_m1.len();
        for i in 0..b {
            for t in b..self.dim_m() {
                if !self.omega.entry(i, t).is_zero() {
                    return Check::fail(format!("Ω̃({}, {}) != 0", self.label(i), self.label(t)));
                }
            }
        }
        Check::pass()
    }

    /// Ω̃ nondegenerate iff both g′ and β^v are.
    pub fn nondegeneracy_equivalence_check(&self) -> Check {
        let nd = self.nondegeneracy_report();
        if nd.omega == (nd.gprime && nd.betav) {
            Check::pass()
        } else {
            Check::fail(format!("omega={} but gprime={} betav={}", nd.omega, nd.gprime, nd.betav))
        }
    }

    /// Checks run at construction time, named as they appear in reports.
    pub fn invariant_checks(&self) -> Vec<(&'static str, Check)> {
        vec![
            ("sigma_order4", self.sigma_order4_check()),
            ("automorphism", self.automorphism_check()),
            ("projectors", self.projector_check()),
            ("graded_brackets", self.graded_bracket_check()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_family, Family, FamilySpec};

    fn data(f: Family, k: usize, n: usize) -> FourSymData {
        make_foursym(build_family(FamilySpec::new(f, k, n).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn sl3_dims() {
        let d = data(Family::Sl, 1, 1).dims();
        assert_eq!((d.gsigma, d.gsigma_m1, d.p), (2, 2, 4));
    }

    #[test]
    fn u_has_no_gsigma_m1() {
        let d = data(Family::UCompact, 2, 1);
        assert!(d.symmetric_mode());
        assert_eq!(d.j_structure(Sign::Plus), d.j_structure(Sign::Minus));
    }

    #[test]
    fn so5_dims() {
        let d = data(Family::SoCompact, 1, 2).dims();
        assert_eq!((d.gsigma_m1, d.p), (2, 4));
    }

    #[test]
    fn j_squares_to_minus_one() {
        let d = data(Family::Sl, 1, 2);
        for s in Sign::BOTH {
            assert!(d.j_structure(s).squares_to_minus_identity());
        }
    }

    #[test]
    fn twin_structures_differ_on_gsigma_m1_only() {
        let d = data(Family::Sl, 1, 1);
        let (jp, jm) = (d.j_structure(Sign::Plus), d.j_structure(Sign::Minus));
        let b = d.gsigma_m1.len();
        for t in 0..d.dim_m() {
            let (cp, cm) = (jp.matrix().column(t), jm.matrix().column(t));
            if t < b {
                assert_eq!(cp, cm.iter().map(|x| -x).collect::<Vec<_>>());
            } else {
                assert_eq!(cp, cm);
            }
        }
    }

    #[test]
    fn j_on_gsigma_m1_is_left_multiplication_by_rho() {
        let d = data(Family::SoSplit, 1, 2);
        let jp = d.j_structure(Sign::Plus);
        for (t, x) in d.gsigma_m1.iter().enumerate() {
            let img = d.to_matrix(&d.embed(&jp.matrix().column(t)));
            assert_eq!(img, &d.rho * x);
        }
    }

    #[test]
    fn structural_checks_pass() {
        let d = data(Family::Sp, 2, 1);
        for (name, c) in d.invariant_checks() {
            assert!(c.is_pass(), "{name}: {c:?}");
        }
        assert!(d.isotropy_invariance_check().is_pass());
        assert!(d.omega_invariance_check().is_pass());
        assert!(d.closedness_check().is_pass());
        assert!(d.compatibility_check(Sign::Minus).is_pass());
    }

    #[test]
    fn sigma_is_not_compatible_on_m() {
        let d = data(Family::Sl, 1, 1);
        assert!(d.compatibility_check_endo(&d.sigma_endo()).is_fail());
    }

    #[test]
    fn perturbed_omega_is_not_closed() {
        let d = data(Family::Sl, 1, 1);
        let mut m = d.omega_gram().matrix().clone();
        let (i, j) = (0, d.dim_m() - 1);
        m[(i, j)] += &Rational::one();
        m[(j, i)] -= &Rational::one();
        let noisy = GramForm::antisymmetric(m).unwrap();
        assert!(d.closedness_check_with(&noisy).is_fail());
    }
}
