#![allow(dead_code)]

use foursym::linalg::{q, Rational};
use foursym::{Family, FamilySpec};

/// The reference grid: (family, k or k', n).
pub fn grid() -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for (k, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        out.push(FamilySpec::new(Family::Sl, k, n).unwrap());
    }
    for f in [Family::SoCompact, Family::SoSplit] {
        for (k, n) in [(1, 2), (2, 2), (1, 1)] {
            out.push(FamilySpec::new(f, k, n).unwrap());
        }
    }
    for f in [Family::UCompact, Family::USplit] {
        for (kp, n) in [(1, 1), (1, 2), (2, 1)] {
            out.push(FamilySpec::with_kprime(f, kp, n).unwrap());
        }
    }
    for (kp, n) in [(1, 1), (1, 2)] {
        out.push(FamilySpec::with_kprime(Family::Sp, kp, n).unwrap());
    }
    out
}

fn int(x: usize) -> i64 {
    x as i64
}

/// Einstein constant of g⁺.
pub fn expected_lambda(s: &FamilySpec) -> Rational {
    let (k, n) = (int(s.k), int(s.n));
    match s.family {
        Family::Sl => Rational::from_int(k + n),
        Family::SoCompact | Family::SoSplit => q(k + n - 1, 2),
        Family::UCompact | Family::USplit => q(k / 2 + n, 2),
        Family::Sp => q(k + n + 1, 2),
        Family::Gl => unreachable!("gl is not in the grid"),
    }
}

/// Chern constant of j⁻.
pub fn expected_c_minus(s: &FamilySpec) -> Option<Rational> {
    let (k, n) = (int(s.k), int(s.n));
    match s.family {
        Family::Sl => Some(Rational::from_int(2 * (n - k))),
        Family::SoCompact | Family::SoSplit => Some(Rational::from_int(n - 1 - k)),
        Family::Sp => Some(Rational::from_int(n + 1 - k)),
        _ => None,
    }
}
