use proptest::prelude::*;
use transvect::geometry::{project, ChartPoint};
use transvect::io::{
    format_candidate, format_chart_point, format_matrix, parse_candidate, parse_chart_point,
    parse_descriptor, parse_matrix,
};
use transvect::transitive::NilpotentCandidate;
use transvect::{build_model, sample_sigma, Case, Error, Mat, Vector};

#[test]
fn descriptors_round_trip_for_all_cases() {
    for case in [
        Case::Hyperbolic { k: 2.5 },
        Case::Elliptic { k: 0.5, p: 2 },
        Case::Nilpotent { p: 3, q: 2 },
    ] {
        let (model, _) = build_model(case, 3).unwrap();
        assert_eq!(parse_descriptor(&model.descriptor()).unwrap(), (case, 3));
    }
}

#[test]
fn parse_errors_carry_line_numbers() {
    match parse_candidate("B = 1 0 ; 0 1\nc = one\n") {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("unexpected {other:?}"),
    }
    assert!(parse_candidate("c = 1\n").is_err());
    assert!(parse_candidate("B = 1 0 ; 0 1\nc = 1\nc = 1\n").is_err());
    assert!(parse_candidate("B = 1 0 ; 0 1\nc = 1\na_tilde = 1 2 3\n").is_err());
}

#[test]
fn missing_b_tilde_is_solved() {
    let cand = parse_candidate("B = 1 0 ; 0 1\nc = 1\na_tilde = 0.5 0.25\n").unwrap();
    let direct = NilpotentCandidate::with_shift(
        Mat::identity(2, 2),
        Vector::from_vec(vec![0.5, 0.25]),
        0.0,
        1.0,
    );
    assert_eq!(cand, direct);
}

#[test]
fn projected_points_round_trip() {
    for case in [
        Case::Hyperbolic { k: 1.0 },
        Case::Elliptic { k: 1.0, p: 1 },
        Case::Nilpotent { p: 2, q: 1 },
    ] {
        let (model, a) = build_model(case, 2).unwrap();
        for pt in sample_sigma(&model, &a, 5, 1).unwrap() {
            let cp: ChartPoint = project(&model, &a, &pt.x).unwrap();
            let back = parse_chart_point(&model, &format_chart_point(&cp)).unwrap();
            assert_eq!(back, cp);
        }
    }
}

proptest! {
    #[test]
    fn matrices_round_trip(rows in 1usize..5, cols in 1usize..5, seed in prop::collection::vec(-1e6f64..1e6, 25)) {
        let m = Mat::from_fn(rows, cols, |i, j| seed[i * 5 + j]);
        prop_assert_eq!(parse_matrix(&format_matrix(&m), 1).unwrap(), m);
    }

    #[test]
    fn candidates_round_trip(
        entries in prop::collection::vec(-10.0f64..10.0, 16),
        a in -5.0f64..5.0,
        c in prop::sample::select(vec![1.0, -1.0]),
    ) {
        let b = Mat::from_fn(4, 4, |i, j| entries[i * 4 + j]);
        let cand = NilpotentCandidate::with_shift(b, Vector::from_vec(entries[..4].to_vec()), a, c);
        prop_assert_eq!(parse_candidate(&format_candidate(&cand)).unwrap(), cand);
    }
}
