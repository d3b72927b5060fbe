use proptest::prelude::*;

use foursym::families::{beta_gram, closure_report, AlgebraBasis, Closure};
use foursym::linalg::{Rational, RationalMatrix};
use foursym::{build_family, Error, Family, FamilySpec};

fn spec(f: Family, k: usize, n: usize) -> FamilySpec {
    FamilySpec::new(f, k, n).unwrap()
}

#[test]
fn small_dimensions() {
    assert_eq!(build_family(spec(Family::Sl, 1, 1)).unwrap().dim(), 8);
    assert_eq!(build_family(spec(Family::SoCompact, 1, 2)).unwrap().dim(), 10);
    assert_eq!(build_family(FamilySpec::with_kprime(Family::Sp, 1, 1).unwrap()).unwrap().dim(), 10);
}

#[test]
fn dimension_formulas_across_a_sweep() {
    for f in Family::ALL {
        for k in 1..=4 {
            for n in 1..=2 {
                if f.needs_even_k() && k % 2 == 1 {
                    continue;
                }
                let s = spec(f, k, n);
                assert_eq!(build_family(s).unwrap().dim(), f.expected_dim(k, n), "{s}");
            }
        }
    }
}

#[test]
fn invalid_specs_are_input_errors() {
    assert!(matches!(FamilySpec::new(Family::Sp, 3, 1), Err(Error::InvalidSpec(_))));
    assert!(matches!(FamilySpec::new(Family::Sl, 0, 1), Err(Error::InvalidSpec(_))));
    assert!(matches!("so".parse::<Family>(), Err(Error::InvalidSpec(_))));
    assert_eq!("u-split".parse::<Family>().unwrap(), Family::USplit);
}

#[test]
fn closure_holds_for_built_families() {
    assert_eq!(closure_report(&build_family(spec(Family::Sl, 1, 1)).unwrap()), Closure::Pass);
    let sp12 = FamilySpec::with_kprime(Family::Sp, 1, 2).unwrap();
    assert_eq!(closure_report(&build_family(sp12).unwrap()), Closure::Pass);
}

#[test]
fn broken_basis_reports_an_escaping_pair() {
    let s = spec(Family::SoCompact, 1, 1);
    let mut basis = build_family(s).unwrap().basis().to_vec();
    basis[0] = RationalMatrix::elementary(3, 0, 1);
    let broken = AlgebraBasis::from_matrices(s, basis).unwrap();
    assert!(matches!(closure_report(&broken), Closure::Escapes { .. }));
}

#[test]
fn killing_type_forms() {
    assert!(beta_gram(&build_family(spec(Family::Sl, 1, 1)).unwrap()).is_nondegenerate());
    let so3 = beta_gram(&build_family(spec(Family::SoCompact, 1, 1)).unwrap());
    assert!(so3.signature().unwrap().is_negative_definite());
    // so(4) is not simple, yet its trace form is nondegenerate.
    assert!(beta_gram(&build_family(spec(Family::SoCompact, 2, 1)).unwrap()).is_nondegenerate());
}

fn family_cell() -> impl Strategy<Value = FamilySpec> {
    (0usize..7, 1usize..=2, 1usize..=2).prop_map(|(f, k, n)| {
        let family = Family::ALL[f];
        let k = if family.needs_even_k() { 2 * k } else { k };
        FamilySpec::new(family, k, n).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn brackets_of_random_elements_stay_inside(s in family_cell(), seed in prop::collection::vec(-3i64..=3, 12)) {
        let alg = build_family(s).unwrap();
        let b = alg.basis();
        let combo = |off: usize| {
            b.iter().enumerate().fold(RationalMatrix::zeros(alg.m(), alg.m()), |acc, (i, x)| {
                acc.checked_add(&x.scale(&Rational::from_int(seed[(i + off) % seed.len()]))).unwrap()
            })
        };
        let (x, y) = (combo(0), combo(5));
        let z = x.bracket(&y).unwrap();
        prop_assert!(alg.contains(&z));
        prop_assert!(z.trace().unwrap().is_zero());
    }
}
