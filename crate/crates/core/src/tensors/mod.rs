//! Invariant tensors at the base point, evaluated on Lie-algebra representatives.
//!
//! Frame convention: a tangent vector is stored through a representative `A ∈ 𝔪`
//! standing for the fundamental field value `A*` with `A*_{p₀} = −π_*A`. Connection and
//! curvature values are therefore representatives too, and even-degree tensors (metrics,
//! Ricci, Chern–Ricci, Ω̃) do not see the sign. The Nijenhuis routine follows the
//! lift formula literally, which lands in the π_* frame; it is converted where
//! compared with torsion.

pub mod connection;
pub mod curvature;
pub mod nijenhuis;
pub mod ricci;
pub mod trace;

pub use connection::{chern_nabla_minus, chern_nabla_via_levi_civita, lc_nabla, lc_nabla_koszul, Connection};
pub use curvature::{curvature, curvature_oracle, CurvatureKind, CurvatureTable};

pub use nijenhuis::{nijenhuis, nijenhuis_image, nijenhuis_with_lift, Lift, NijenhuisImage};
pub use ricci::{chern_ricci_gram, einstein_check, hermitian_check, ricci_gram, special_check, Proportionality};
pub use trace::block_trace;

use crate::foursym::FourSymData;
use crate::linalg::Rational;

/// Renders a tangent vector as `2*X0 - 1/2*Y3`.
pub fn format_tangent(data: &FourSymData, v: &[Rational]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(t, x)| format!("{x}*{}", data.label(t)))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub(crate) fn scaled(v: &[Rational], s: &Rational) -> Vec<Rational> {
    v.iter().map(|x| x * s).collect()
}

pub(crate) fn add_into(acc: &mut [Rational], v: &[Rational], s: &Rational) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(x * s);
        }
    }
}

pub(crate) fn sub(u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}
