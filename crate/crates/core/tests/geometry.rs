use proptest::prelude::*;
use transvect::cli::{cmd_verify_geometry, CaseName, RunConfig};
use transvect::geometry::{chart_omega, lift_point, project, symmetry_matrix};
use transvect::linalg::{sup, symplectic_defect};
use transvect::{build_model, exp_ta, sample_sigma, Case, Mat, Verdict};

fn config(case: CaseName, n: usize, p: Option<usize>, q: Option<usize>) -> RunConfig {
    let mut cfg = RunConfig::new(case, n);
    cfg.p = p;
    cfg.q = q;
    cfg.samples = 50;
    cfg
}

#[test]
fn geometry_suite_passes_for_each_case() {
    let runs = [
        config(CaseName::Hyperbolic, 2, None, None),
        config(CaseName::Hyperbolic, 3, None, None),
        config(CaseName::Elliptic, 2, Some(1), None),
        config(CaseName::Elliptic, 2, Some(2), None),
        config(CaseName::Nilpotent, 2, Some(2), Some(1)),
        config(CaseName::Nilpotent, 3, Some(2), Some(2)),
        config(CaseName::Nilpotent, 2, Some(1), Some(1)),
    ];
    for cfg in runs {
        let rep = cmd_verify_geometry(&cfg).unwrap();
        assert_eq!(
            rep.overall(),
            Verdict::Pass,
            "{cfg:?}\n{}",
            rep.render_human()
        );
        for name in ["ricci_type", "curvature_cyclic", "rho_squared_relative"] {
            assert!(rep.entry(name).is_some(), "{name} missing");
        }
    }
}

#[test]
fn corrupted_form_is_caught_with_witness() {
    let mut cfg = config(CaseName::Hyperbolic, 2, None, None);
    cfg.corrupt_omega = true;
    let rep = cmd_verify_geometry(&cfg).unwrap();
    assert_eq!(rep.overall(), Verdict::Fail);
    assert!(!rep.witnesses.is_empty());
}

#[test]
fn darboux_chart_has_constant_form() {
    let (model, a) = build_model(Case::Nilpotent { p: 2, q: 1 }, 3).unwrap();
    let m = 2 * model.n;
    // dy⁰∧dγ in the corners, Ω⁰ on the middle block.
    let mut expected = Mat::zeros(m, m);
    expected[(0, m - 1)] = 1.0;
    expected[(m - 1, 0)] = -1.0;
    let o0 = model.omega0();
    for i in 0..m - 2 {
        for j in 0..m - 2 {
            expected[(i + 1, j + 1)] = o0[(i, j)];
        }
    }
    for pt in sample_sigma(&model, &a, 50, 3).unwrap() {
        let w = chart_omega(&model, &a, &pt.x, 1e-5).unwrap();
        assert!(sup((w - &expected).iter()) <= 1e-8);
    }
}

#[test]
fn projection_round_trips_through_lift() {
    for (case, n) in [
        (Case::Hyperbolic { k: 1.0 }, 2),
        (Case::Elliptic { k: 1.0, p: 1 }, 3),
        (Case::Nilpotent { p: 2, q: 1 }, 2),
    ] {
        let (model, a) = build_model(case, n).unwrap();
        for pt in sample_sigma(&model, &a, 10, 11).unwrap() {
            let cp = project(&model, &a, &pt.x).unwrap();
            let back = project(&model, &a, &lift_point(&model, &a, &cp).unwrap()).unwrap();
            assert!(cp.distance(&back) <= 1e-9, "{case:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ambient_symmetry_is_symplectic_involution(seed in 0u64..10_000, which in 0usize..3) {
        let case = [
            Case::Hyperbolic { k: 1.0 },
            Case::Elliptic { k: 1.0, p: 2 },
            Case::Nilpotent { p: 2, q: 1 },
        ][which];
        let (model, a) = build_model(case, 2).unwrap();
        let x = &sample_sigma(&model, &a, 1, seed).unwrap()[0].x;
        let s = symmetry_matrix(&model, &a, x);
        let d = model.ambient_dim();
        let scale = sup(s.iter()).max(1.0).powi(2);
        prop_assert!(sup((&s * &s - Mat::identity(d, d)).iter()) <= 1e-11 * scale);
        prop_assert!(sup(symplectic_defect(&model.omega, &s).iter()) <= 1e-11 * scale);
        prop_assert!(sup((&s * x - x).iter()) <= 1e-11 * scale);
        prop_assert!(sup((&s * &a.a - &a.a * &s).iter()) <= 1e-11 * scale);
    }

    #[test]
    fn projection_is_constant_on_orbits(seed in 0u64..10_000, t in -3.0f64..3.0) {
        let (model, a) = build_model(Case::Elliptic { k: 1.0, p: 1 }, 2).unwrap();
        let x = &sample_sigma(&model, &a, 1, seed).unwrap()[0].x;
        let c0 = project(&model, &a, x).unwrap();
        let c1 = project(&model, &a, &(exp_ta(&a, t) * x)).unwrap();
        prop_assert!(c0.distance(&c1) <= 1e-9 * c0.coords().norm().max(1.0));
    }
}
