use transvect::lie::series_certificate;
use transvect::transvection::{
    classify_transvection, codim_one_nilpotent_ideal, transvection_algebra, TransvectionClass,
};
use transvect::{build_model, Case};

fn dims(case: Case, n: usize) -> (usize, usize, bool, bool) {
    let (model, a) = build_model(case, n).unwrap();
    let t = transvection_algebra(&model, &a).unwrap();
    assert!(t.g_closure <= 1e-10, "{case:?}: closure {}", t.g_closure);
    let cert = series_certificate(&t.g).unwrap();
    (t.p1.dim(), t.g.dim(), cert.solvable, cert.abelian)
}

#[test]
fn simple_cases_have_dimension_of_sl_or_su() {
    for n in 2..=4 {
        let expect = (n + 1) * (n + 1) - 1;
        let (p1, g, solvable, _) = dims(Case::Hyperbolic { k: 1.0 }, n);
        assert_eq!((p1, g, solvable), (2 * n, expect, false));
        let (model, a) = build_model(Case::Hyperbolic { k: 1.0 }, n).unwrap();
        let t = transvection_algebra(&model, &a).unwrap();
        assert_eq!(
            classify_transvection(&t, &model).unwrap().class,
            TransvectionClass::SpecialLinear
        );
        for p in [1, 2] {
            let (p1, g, solvable, _) = dims(Case::Elliptic { k: 1.0, p }, n);
            assert_eq!((p1, g, solvable), (2 * n, expect, false), "p={p}");
        }
    }
}

#[test]
fn rank_one_nilpotent_is_abelian() {
    for n in 2..=4 {
        let (p1, g, _, abelian) = dims(Case::Nilpotent { p: 1, q: 1 }, n);
        assert_eq!((p1, g, abelian), (2 * n, 2 * n, true));
    }
}

#[test]
fn rank_two_nilpotent_is_solvable_with_nilpotent_ideal() {
    let (model, a) = build_model(Case::Nilpotent { p: 2, q: 1 }, 2).unwrap();
    let t = transvection_algebra(&model, &a).unwrap();
    assert_eq!(t.g.dim(), 7);
    let class = classify_transvection(&t, &model).unwrap();
    assert_eq!(
        class.class,
        TransvectionClass::SolvableWithNilpotentIdeal { ideal_dim: 6 }
    );
    let ideal = codim_one_nilpotent_ideal(&t.g)
        .unwrap()
        .expect("codimension-one nilpotent ideal");
    assert_eq!(ideal.dim(), 6);
    assert!(series_certificate(&ideal).unwrap().nilpotent);
    assert!(series_certificate(&t.g).unwrap().solvable);
}

#[test]
fn rank_three_nilpotent_is_not_solvable() {
    let (_, _, solvable, _) = dims(Case::Nilpotent { p: 3, q: 2 }, 3);
    assert!(!solvable);
}

#[test]
fn symmetry_at_base_point_is_an_involution_fixing_a() {
    let (model, a) = build_model(Case::Elliptic { k: 2.0, p: 1 }, 3).unwrap();
    let t = transvection_algebra(&model, &a).unwrap();
    assert!(t.sigma_square_residual <= 1e-9);
    assert!(t.sigma_fixes_a_residual <= 1e-9);
    assert_eq!(t.g1.dim(), (model.n + 1) * (model.n + 1));
}
