use foursym::foursym::{Part, TangentEndo};
use foursym::linalg::{GramForm, Rational, RationalMatrix};
use foursym::{build_family, make_foursym, Family, FamilySpec, FourSymData, Sign};

fn data(f: Family, k: usize, n: usize) -> FourSymData {
    make_foursym(build_family(FamilySpec::new(f, k, n).unwrap()).unwrap()).unwrap()
}

fn all_small() -> Vec<FourSymData> {
    let mut out = Vec::new();
    for f in Family::ALL {
        for (k, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            if f.needs_even_k() && k % 2 == 1 {
                continue;
            }
            if k + 2 * n <= 6 {
                out.push(data(f, k, n));
            }
        }
    }
    out
}

#[test]
fn splitting_dimensions() {
    let d = data(Family::Sl, 1, 1).dims();
    assert_eq!((d.gsigma, d.gsigma_m1, d.p), (2, 2, 4));
    assert_eq!(data(Family::UCompact, 2, 1).dims().gsigma_m1, 0);
    let d = data(Family::SoCompact, 1, 2).dims();
    assert_eq!((d.gsigma_m1, d.p), (2, 4));
}

#[test]
fn twin_structures() {
    for d in all_small() {
        let (jp, jm) = (d.j_structure(Sign::Plus), d.j_structure(Sign::Minus));
        assert!(jp.squares_to_minus_identity());
        assert!(jm.squares_to_minus_identity());
        for t in 0..d.dim_m() {
            let e = d.tangent(&d.m_unit(t));
            let (a, b) = (jp.apply(&e), jm.apply(&e));
            match d.part_of_tangent(t) {
                Part::P => assert_eq!(a, b),
                _ => assert_eq!(a, b.iter().map(|x| -x).collect::<Vec<_>>()),
            }
        }
        if d.symmetric_mode() {
            assert_eq!(jp, jm);
        }
    }
}

#[test]
fn omega_properties() {
    for d in all_small() {
        let w = d.omega_gram();
        let sigma = d.sigma_endo();
        for s in 0..d.dim_m() {
            for t in 0..d.dim_m() {
                assert_eq!(w.entry(s, t), &-w.entry(t, s));
                if d.part_of_tangent(s) == Part::GSigmaM1 && d.part_of_tangent(t) == Part::P {
                    assert!(w.entry(s, t).is_zero());
                }
                let (es, et) = (d.tangent(&d.m_unit(s)), d.tangent(&d.m_unit(t)));
                assert_eq!(&w.eval(&sigma.apply(&es), &sigma.apply(&et)), w.entry(s, t));
            }
        }
        assert!(d.closedness_check().is_pass());
        assert!(d.nondegeneracy_equivalence_check().is_pass());
    }
}

#[test]
fn empty_betav_counts_as_nondegenerate() {
    let d = data(Family::USplit, 2, 1);
    assert_eq!(d.betav_gram().dim(), 0);
    assert!(d.nondegeneracy_report().betav);
}

#[test]
fn metrics_and_signatures() {
    let split = data(Family::SoSplit, 1, 2);
    assert!(split.metric_gram(Sign::Minus).unwrap().signature().unwrap().is_positive_definite());
    let compact = data(Family::SoCompact, 1, 2);
    assert!(compact.metric_gram(Sign::Plus).unwrap().signature().unwrap().is_negative_definite());
    for d in [split, compact, data(Family::Sl, 1, 2)] {
        for s in Sign::BOTH {
            let g = d.metric_gram(s).unwrap();
            for x in d.tangent_range(Part::GSigmaM1) {
                for y in d.tangent_range(Part::P) {
                    assert!(g.entry(x, y).is_zero());
                }
            }
        }
    }
}

#[test]
fn compatibility_and_its_negative_control() {
    for d in [data(Family::Sl, 1, 1), data(Family::Sp, 2, 1)] {
        assert!(d.compatibility_check(Sign::Plus).is_pass());
        assert!(d.compatibility_check(Sign::Minus).is_pass());
        // σ squares to +Id on 𝔤^σ₋₁, so it is not an almost complex structure.
        assert!(d.compatibility_check_endo(&d.sigma_endo()).is_fail());
    }
}

#[test]
fn closedness_negative_control() {
    let d = data(Family::Sl, 1, 2);
    let mut m: RationalMatrix = d.omega_gram().matrix().clone();
    let (a, b) = (0, d.dim_m() - 1);
    m[(a, b)] += &Rational::one();
    m[(b, a)] -= &Rational::one();
    let noisy = GramForm::antisymmetric(m).unwrap();
    assert!(d.closedness_check_with(&noisy).is_fail());
}

#[test]
fn construction_checks_pass_everywhere() {
    for d in all_small() {
        for (name, c) in d.invariant_checks() {
            assert!(c.is_pass(), "{} {name}: {c:?}", d.alg.spec);
        }
        assert!(d.isotropy_invariance_check().is_pass());
        assert!(d.omega_invariance_check().is_pass());
    }
}

#[test]
fn endomorphisms_compose_in_column_convention() {
    let a = TangentEndo::new(RationalMatrix::from_i64(&[&[0, -1], &[1, 0]])).unwrap();
    assert!(a.squares_to_minus_identity());
    assert_eq!(a.then(&a).matrix(), &-&RationalMatrix::identity(2));
}
