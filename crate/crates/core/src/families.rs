//! Explicit bases for the supported matrix Lie algebras.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::span::{nullspace, CoordinateSolver};
use crate::linalg::{standard_complex, FormKind, GramForm, Rational, RationalMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "gl")]
    Gl,
    #[serde(rename = "sl")]
    Sl,
    #[serde(rename = "so-compact")]
    SoCompact,
    #[serde(rename = "so-split")]
    SoSplit,
    #[serde(rename = "u-compact")]
    UCompact,
    #[serde(rename = "u-split")]
    USplit,
    #[serde(rename = "sp")]
    Sp,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Gl,
        Family::Sl,
        Family::SoCompact,
        Family::SoSplit,
        Family::UCompact,
        Family::USplit,
        Family::Sp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gl => "gl",
            Family::Sl => "sl",
            Family::SoCompact => "so-compact",
            Family::SoSplit => "so-split",
            Family::UCompact => "u-compact",
            Family::USplit => "u-split",
            Family::Sp => "sp",
        }
    }

    /// u and sp need k = 2k′.
    pub fn needs_even_k(self) -> bool {
        matches!(self, Family::UCompact | Family::USplit | Family::Sp)
    }

    pub fn is_so(self) -> bool {
        matches!(self, Family::SoCompact | Family::SoSplit)
    }

    pub fn is_u(self) -> bool {
        matches!(self, Family::UCompact | Family::USplit)
    }

    /// Human-readable dimension formula, m = k + 2n.
    pub fn dim_formula(self) -> &'static str {
        match self {
            Family::Gl => "m^2",
            Family::Sl => "m^2 - 1",
            Family::SoCompact | Family::SoSplit => "m(m-1)/2",
            Family::UCompact | Family::USplit => "(k' + n)^2",
            Family::Sp => "m(m+1)/2",
        }
    }

    pub fn expected_dim(self, k: usize, n: usize) -> usize {
        let m = k + 2 * n;
        match self {
            Family::Gl => m * m,
            Family::Sl => m * m - 1,
            Family::SoCompact | Family::SoSplit => m * (m - 1) / 2,
            Family::UCompact | Family::USplit => (k / 2 + n) * (k / 2 + n),
            Family::Sp => m * (m + 1) / 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown family `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub k: usize,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kprime: Option<usize>,
}

impl FamilySpec {
    pub fn new(family: Family, k: usize, n: usize) -> Result<Self> {
        if k == 0 || n == 0 {
            return Err(Error::InvalidSpec(format!("k and n must be positive (k={k}, n={n})")));
        }
        let kprime = if family.needs_even_k() {
            if !k.is_multiple_of(2) {
                return Err(Error::InvalidSpec(format!("{family} needs an even k = 2k', got k={k}")));
            }
            Some(k / 2)
        } else {
            None
        };
        Ok(Self { family, k, n, kprime })
    }

    /// For u and sp, parameterised by k′ (k = 2k′).
    pub fn with_kprime(family: Family, kprime: usize, n: usize) -> Result<Self> {
        if !family.needs_even_k() {
            return Err(Error::InvalidSpec(format!("{family} takes k, not k'")));
        }
        if kprime == 0 {
            return Err(Error::InvalidSpec("k' must be positive".into()));
        }
        Self::new(family, 2 * kprime, n)
    }

    /// Ambient matrix size k + 2n.
    pub fn m(&self) -> usize {
        self.k + 2 * self.n
    }

    /// diag(0_k, J_2n)
    pub fn rho(&self) -> RationalMatrix {
        RationalMatrix::block_diag(&RationalMatrix::zeros(self.k, self.k), &standard_complex(self.n))
    }

    /// diag(Id_k, J_2n), so that σ = Ad R.
    pub fn r(&self) -> RationalMatrix {
        RationalMatrix::block_diag(&RationalMatrix::identity(self.k), &standard_complex(self.n))
    }

    pub fn r_inv(&self) -> RationalMatrix {
        RationalMatrix::block_diag(&RationalMatrix::identity(self.k), &-&standard_complex(self.n))
    }

    /// Stable file-name stem, e.g. `sl_k1_n2`.
    pub fn slug(&self) -> String {
        format!("{}_k{}_n{}", self.family, self.k, self.n)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kprime {
            Some(kp) => write!(f, "{}(k'={}, n={})", self.family, kp, self.n),
            None => write!(f, "{}(k={}, n={})", self.family, self.k, self.n),
        }
    }
}

/// An ordered, linearly independent list of m×m matrices.
#[derive(Debug, Clone)]
pub struct AlgebraBasis {
    pub spec: FamilySpec,
    basis: Vec<RationalMatrix>,
}

impl AlgebraBasis {
    /// Wraps a user-supplied basis. Only shape and independence are checked here;
    /// closure is a separate report.
    pub fn from_matrices(spec: FamilySpec, basis: Vec<RationalMatrix>) -> Result<Self> {
        let m = spec.m();
        if let Some(b) = basis.iter().find(|b| b.rows() != m || b.cols() != m) {
            return Err(Error::Dimension(format!("{}x{} generator for m={m}", b.rows(), b.cols())));
        }
        CoordinateSolver::from_matrices(&basis)?;
        Ok(Self { spec, basis })
    }

    pub fn basis(&self) -> &[RationalMatrix] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn m(&self) -> usize {
        self.spec.m()
    }

    pub fn solver(&self) -> CoordinateSolver {
        CoordinateSolver::from_matrices(&self.basis).expect("basis checked independent")
    }

    pub fn contains(&self, x: &RationalMatrix) -> bool {
        self.solver().matrix_coordinates(x).is_some()
    }
}

/// Outcome of [`closure_report`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Closure {
    Pass,
    /// Indices of the failing pair; `None` in the first slot stands for ρ.
    Escapes { left: Option<usize>, right: usize },
}

type Linear = dyn Fn(&RationalMatrix) -> RationalMatrix;

fn defining_constraints(spec: &FamilySpec) -> Vec<Box<Linear>> {
    let m = spec.m();
    let (k, n) = (spec.k, spec.n);
    let signature = || {
        let mut eta = RationalMatrix::identity(m);
        for i in k..m {
            eta[(i, i)] = Rational::from_int(-1);
        }
        eta
    };
    let pseudo_antisym = |g: RationalMatrix| -> Box<Linear> {
        Box::new(move |x: &RationalMatrix| &(&x.transpose() * &g) + &(&g * x))
    };
    let commutes_with = |c: RationalMatrix| -> Box<Linear> {
        Box::new(move |x: &RationalMatrix| &(x * &c) - &(&c * x))
    };
    let complex = || RationalMatrix::block_diag(&standard_complex(k / 2), &standard_complex(n));
    match spec.family {
        Family::Gl => vec![],
        Family::Sl => vec![Box::new(|x: &RationalMatrix| {
            RationalMatrix::from_vec(1, 1, vec![x.trace().expect("square")]).expect("1x1")
        })],
        Family::SoCompact => vec![pseudo_antisym(RationalMatrix::identity(m))],
        Family::SoSplit => vec![pseudo_antisym(signature())],
        Family::UCompact => vec![pseudo_antisym(RationalMatrix::identity(m)), commutes_with(complex())],
        Family::USplit => vec![pseudo_antisym(signature()), commutes_with(complex())],
        Family::Sp => {
            // Ω = diag(Ω_2k′, Ω_2n) with Ω_2r = −J_2r
            vec![pseudo_antisym(-&complex())]
        }
    }
}

/// Solves the defining linear constraints over the m² matrix entries. Free variables
/// are taken in row-major (i, j) order, so the basis is reproducible.
pub fn build_family(spec: FamilySpec) -> Result<AlgebraBasis> {
    let spec = FamilySpec::new(spec.family, spec.k, spec.n)?;
    let m = spec.m();
    let constraints = defining_constraints(&spec);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let images: Vec<Vec<RationalMatrix>> = constraints
        .iter()
        .map(|c| (0..m * m).map(|t| c(&RationalMatrix::elementary(m, t / m, t % m))).collect())
        .collect();
    for imgs in &images {
        let len = imgs[0].entries().len();
        for e in 0..len {
            rows.push(imgs.iter().map(|img| img.entries()[e].clone()).collect());
        }
    }
    let basis = nullspace(&rows, m * m)?
        .into_iter()
        .map(|v| RationalMatrix::from_vec(m, m, v))
        .collect::<Result<Vec<_>>>()?;
    let expected = spec.family.expected_dim(spec.k, spec.n);
    if basis.len() != expected {
        return Err(Error::Construction(format!(
            "{spec}: solved dimension {} differs from {expected}",
            basis.len()
        )));
    }
    AlgebraBasis::from_matrices(spec, basis)
}

/// Checks that every bracket of generators, and every [ρ, Xᵢ], stays in the span.
pub fn closure_report(alg: &AlgebraBasis) -> Closure {
    let solver = alg.solver();
    let rho = alg.spec.rho();
    let b = alg.basis();
    for (i, x) in b.iter().enumerate() {
        for (j, y) in b.iter().enumerate().skip(i + 1) {
            if solver.matrix_coordinates(&(x.bracket(y).expect("same shape"))).is_none() {
                return Closure::Escapes { left: Some(i), right: j };
            }
        }
    }
    for (i, x) in b.iter().enumerate() {
        if solver.matrix_coordinates(&rho.bracket(x).expect("same shape")).is_none() {
            return Closure::Escapes { left: None, right: i };
        }
    }
    Closure::Pass
}

/// Trace form Tr(XY) over a list of matrices.
pub fn trace_gram(basis: &[RationalMatrix]) -> GramForm {
    GramForm::from_fn(basis.len(), FormKind::Symmetric, |i, j| {
        basis[i].trace_of_product(&basis[j]).expect("square")
    })
    .expect("trace form is symmetric")
}

pub fn beta_gram(alg: &AlgebraBasis) -> GramForm {
    trace_gram(alg.basis())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(f: Family, k: usize, n: usize) -> FamilySpec {
        FamilySpec::new(f, k, n).unwrap()
    }

    #[test]
    fn dims() {
        assert_eq!(build_family(spec(Family::Sl, 1, 1)).unwrap().dim(), 8);
        assert_eq!(build_family(spec(Family::SoCompact, 1, 2)).unwrap().dim(), 10);
        assert_eq!(build_family(FamilySpec::with_kprime(Family::Sp, 1, 1).unwrap()).unwrap().dim(), 10);
        assert_eq!(build_family(FamilySpec::with_kprime(Family::UCompact, 1, 2).unwrap()).unwrap().dim(), 9);
    }

    #[test]
    fn invalid_specs() {
        assert!(FamilySpec::new(Family::Sl, 0, 1).is_err());
        assert!(FamilySpec::new(Family::Gl, 1, 0).is_err());
        assert!(FamilySpec::new(Family::Sp, 3, 1).is_err());
        assert!(FamilySpec::with_kprime(Family::Sl, 1, 1).is_err());
        assert!("so".parse::<Family>().is_err());
        assert_eq!("u-split".parse::<Family>().unwrap(), Family::USplit);
    }

    #[test]
    fn gl_basis_is_elementary_in_row_major_order() {
        let alg = build_family(spec(Family::Gl, 1, 1)).unwrap();
        for (t, b) in alg.basis().iter().enumerate() {
            assert_eq!(*b, RationalMatrix::elementary(3, t / 3, t % 3));
        }
    }

    #[test]
    fn closure_and_rho() {
        for s in [spec(Family::Sl, 1, 1), FamilySpec::with_kprime(Family::Sp, 1, 1).unwrap()] {
            let alg = build_family(s).unwrap();
            assert_eq!(closure_report(&alg), Closure::Pass);
            assert!(alg.contains(&s.rho()));
        }
    }

    #[test]
    fn broken_basis_has_witness() {
        let alg = build_family(spec(Family::SoCompact, 1, 1)).unwrap();
        let mut b = alg.basis().to_vec();
        b[0] = RationalMatrix::elementary(3, 0, 1);
        let broken = AlgebraBasis::from_matrices(alg.spec, b).unwrap();
        assert!(matches!(closure_report(&broken), Closure::Escapes { .. }));
    }

    #[test]
    fn so3_trace_form_negative_definite() {
        let g = beta_gram(&build_family(spec(Family::SoCompact, 1, 1)).unwrap());
        assert!(g.signature().unwrap().is_negative_definite());
    }
}
