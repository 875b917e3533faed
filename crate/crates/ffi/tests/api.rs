use std::ffi::CStr;
use std::ptr;

use transvect_ffi::*;

fn model(case: TvCase, n: usize, p: usize, q: usize) -> *mut TvModel {
    let mut m = ptr::null_mut();
    let status = unsafe { tv_model_new(case, n, 1.0, p, q, &mut m) };
    assert_eq!(status, TvStatus::Ok);
    assert!(!m.is_null());
    m
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(tv_last_error()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn model_accessors_agree_with_the_identities() {
    let m = model(TvCase::Elliptic, 2, 1, 0);
    let (mut r, mut d) = (0usize, 0usize);
    let mut mu = 0.0;
    unsafe {
        assert_eq!(tv_model_dims(m, &mut r, &mut d), TvStatus::Ok);
        assert_eq!(tv_model_mu(m, &mut mu), TvStatus::Ok);
    }
    assert_eq!((r, d), (4, 6));
    assert_eq!(mu, -1.0);
    let mut omega = vec![0.0; d * d];
    let mut a = vec![0.0; d * d];
    unsafe {
        assert_eq!(
            tv_model_omega(m, omega.as_mut_ptr(), omega.len()),
            TvStatus::Ok
        );
        assert_eq!(tv_model_a(m, a.as_mut_ptr(), a.len()), TvStatus::Ok);
    }
    // ᵗAΩ + ΩA = 0 and A² = μ Id, row-major.
    for i in 0..d {
        for j in 0..d {
            let mut sp = 0.0;
            let mut sq = 0.0;
            for l in 0..d {
                sp += a[l * d + i] * omega[l * d + j] + omega[i * d + l] * a[l * d + j];
                sq += a[i * d + l] * a[l * d + j];
            }
            let id = if i == j { mu } else { 0.0 };
            assert!(sp.abs() <= 1e-12 && (sq - id).abs() <= 1e-12);
        }
    }
    unsafe { tv_model_free(m) };
}

#[test]
fn sampled_points_lie_on_sigma_and_project() {
    let m = model(TvCase::Nilpotent, 2, 2, 1);
    let d = 6;
    let mut pts = vec![0.0; 5 * d];
    unsafe {
        assert_eq!(
            tv_sample_sigma(m, 5, 3, pts.as_mut_ptr(), pts.len()),
            TvStatus::Ok
        );
    }
    for x in pts.chunks(d) {
        let (mut s, mut ricci) = (0.0, 1.0);
        let mut coords = [0.0; 8];
        let mut written = 0;
        unsafe {
            assert_eq!(tv_sigma_value(m, x.as_ptr(), d, &mut s), TvStatus::Ok);
            assert_eq!(
                tv_ricci_type_residual(m, x.as_ptr(), d, &mut ricci),
                TvStatus::Ok
            );
            let st = tv_project(
                m,
                x.as_ptr(),
                d,
                coords.as_mut_ptr(),
                coords.len(),
                &mut written,
            );
            assert_eq!(st, TvStatus::Ok);
        }
        assert!((s - 1.0).abs() <= 1e-12);
        assert!(ricci <= 1e-8);
        assert_eq!(written, 4);
    }
    unsafe { tv_model_free(m) };
}

#[test]
fn flow_is_a_one_parameter_group() {
    let m = model(TvCase::Hyperbolic, 2, 0, 0);
    let d = 6;
    let (mut e1, mut e2, mut e3) = (vec![0.0; d * d], vec![0.0; d * d], vec![0.0; d * d]);
    unsafe {
        assert_eq!(tv_exp_ta(m, 0.4, e1.as_mut_ptr(), e1.len()), TvStatus::Ok);
        assert_eq!(tv_exp_ta(m, 0.9, e2.as_mut_ptr(), e2.len()), TvStatus::Ok);
        assert_eq!(tv_exp_ta(m, 1.3, e3.as_mut_ptr(), e3.len()), TvStatus::Ok);
    }
    for i in 0..d {
        for j in 0..d {
            let prod: f64 = (0..d).map(|l| e1[i * d + l] * e2[l * d + j]).sum();
            assert!((prod - e3[i * d + j]).abs() <= 1e-12);
        }
    }
    unsafe { tv_model_free(m) };
}

#[test]
fn reports_carry_verdicts_and_json() {
    let m = model(TvCase::Nilpotent, 2, 2, 1);
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(tv_verify_geometry(m, 10, 0, &mut r), TvStatus::Ok);
        assert_eq!(tv_report_verdict(r), TvVerdict::Pass);
        let json = CStr::from_ptr(tv_report_json(r)).to_str().unwrap();
        assert!(json.contains("\"command\": \"verify-geometry\""));
        tv_report_free(r);

        let mut r = ptr::null_mut();
        assert_eq!(tv_transvection(m, &mut r), TvStatus::Ok);
        assert_eq!(tv_report_verdict(r), TvVerdict::Pass);
        tv_report_free(r);

        let mut r = ptr::null_mut();
        assert_eq!(tv_find_transitive(m, 10, 0, &mut r), TvStatus::Ok);
        assert_eq!(tv_report_verdict(r), TvVerdict::Pass);
        tv_report_free(r);
        tv_model_free(m);
    }
    let h = model(TvCase::Hyperbolic, 2, 0, 0);
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(tv_find_transitive(h, 10, 0, &mut r), TvStatus::Ok);
        assert_eq!(tv_report_verdict(r), TvVerdict::Documented);
        tv_report_free(r);
        tv_model_free(h);
    }
}

#[test]
fn errors_map_to_status_codes() {
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(
            tv_model_new(TvCase::Nilpotent, 2, 1.0, 1, 2, &mut m),
            TvStatus::InvalidArgument
        );
        assert!(m.is_null());
        assert!(last_error().contains("invalid parameter"));
        assert_eq!(
            tv_model_new(TvCase::Hyperbolic, 2, f64::NAN, 0, 0, &mut m),
            TvStatus::InvalidArgument
        );
        assert_eq!(
            tv_model_new(TvCase::Hyperbolic, 2, 1.0, 0, 0, ptr::null_mut()),
            TvStatus::NullPointer
        );
        let mut mu = 0.0;
        assert_eq!(tv_model_mu(ptr::null(), &mut mu), TvStatus::NullPointer);
    }
    let m = model(TvCase::Hyperbolic, 2, 0, 0);
    unsafe {
        let mut small = [0.0; 4];
        assert_eq!(
            tv_model_omega(m, small.as_mut_ptr(), small.len()),
            TvStatus::BufferTooSmall
        );
        let x = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        let mut out = [0.0; 8];
        let mut written = 0;
        let st = tv_project(m, x.as_ptr(), 5, out.as_mut_ptr(), out.len(), &mut written);
        assert_eq!(st, TvStatus::InvalidArgument);
        let mut s = 0.0;
        assert_eq!(tv_sigma_value(m, x.as_ptr(), 6, &mut s), TvStatus::Ok);
        assert!(last_error().is_empty());
        assert_eq!(tv_report_verdict(ptr::null()), TvVerdict::Unknown);
        assert!(tv_report_json(ptr::null()).is_null());
        tv_report_free(ptr::null_mut());
        tv_model_free(m);
        tv_model_free(ptr::null_mut());
    }
}
