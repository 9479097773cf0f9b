use std::ffi::CStr;
use std::ptr;

use qfourier_ffi::*;

fn last_error() -> String {
    let p = qf_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn close(a: QfComplex, re: f64, im: f64, tol: f64) -> bool {
    (a.re - re).abs() < tol && (a.im - im).abs() < tol
}

#[test]
fn indicator_transform_matches_classical() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(qf_function_indicator(0.0, 1.0, &mut f), QfStatus::Ok);
        let mut norm = 0.0;
        assert_eq!(qf_l1_norm(f, &mut norm), QfStatus::Ok);
        assert!((norm - 1.0).abs() < 1e-12);

        let k: f64 = 2.0;
        let (mut v, mut e) = (QfComplex::default(), f64::NAN);
        assert_eq!(
            qf_transform_point(f, 1.0, k, 0.0, &mut v, &mut e),
            QfStatus::Ok
        );
        // (e^{ik} - 1) / (ik)
        assert!(close(v, k.sin() / k, (1.0 - k.cos()) / k, 1e-10));
        assert!(e.is_finite() && e >= 0.0);

        // outside [1, 2) the gate gives exactly zero
        assert_eq!(
            qf_transform_point(f, 2.5, k, 0.0, &mut v, ptr::null_mut()),
            QfStatus::Ok
        );
        assert_eq!((v.re, v.im), (0.0, 0.0));
        qf_function_free(f);
    }
}

#[test]
fn surface_round_trip() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(qf_function_hilhorst(1.0, 2.0, 1.5, &mut f), QfStatus::Ok);
        let k = [-1.0, 0.0, 1.0];
        let q = [1.2, 1.5];
        let mut s = ptr::null_mut();
        assert_eq!(
            qf_surface_new(f, k.as_ptr(), 3, q.as_ptr(), 2, 0.0, &mut s),
            QfStatus::Ok
        );
        let (mut nq, mut nk) = (0, 0);
        assert_eq!(qf_surface_dims(s, &mut nq, &mut nk), QfStatus::Ok);
        assert_eq!((nq, nk), (2, 3));

        let (mut lo, mut hi, mut direct) = (
            QfComplex::default(),
            QfComplex::default(),
            QfComplex::default(),
        );
        assert_eq!(
            qf_surface_value(s, 1, 0, &mut lo, ptr::null_mut()),
            QfStatus::Ok
        );
        assert_eq!(
            qf_surface_value(s, 1, 2, &mut hi, ptr::null_mut()),
            QfStatus::Ok
        );
        assert!(close(lo, hi.re, -hi.im, 1e-12));
        assert_eq!(
            qf_transform_point(f, 1.5, 1.0, 0.0, &mut direct, ptr::null_mut()),
            QfStatus::Ok
        );
        assert_eq!(direct, hi);

        assert_eq!(
            qf_surface_value(s, 2, 0, &mut lo, ptr::null_mut()),
            QfStatus::OutOfRange
        );
        assert!(last_error().contains("outside"));
        qf_surface_free(s);
        qf_function_free(f);
    }
}

#[test]
fn degenerate_pair_through_c_api() {
    unsafe {
        let mut lambda = 0.0;
        assert_eq!(qf_hilhorst_lambda(1.0, 2.0, 1.5, &mut lambda), QfStatus::Ok);
        assert!((lambda - 2f64.sqrt()).abs() < 1e-12);
        let mut f2 = ptr::null_mut();
        assert_eq!(
            qf_function_powerlaw(1.1, 22.0 / 9.0, 2.0, lambda, &mut f2),
            QfStatus::Ok
        );
        for k in [-3.0, 0.5, 4.0] {
            let (mut d, mut v) = (QfComplex::default(), QfComplex::default());
            assert_eq!(
                qf_degenerate_transform(lambda, 1.5, k, &mut d),
                QfStatus::Ok
            );
            assert_eq!(
                qf_transform_point(f2, 1.5, k, 0.0, &mut v, ptr::null_mut()),
                QfStatus::Ok
            );
            assert!(close(v, d.re, d.im, 1e-9), "k = {k}");
        }
        qf_function_free(f2);
    }
}

#[test]
fn closed_form_and_fallback() {
    unsafe {
        let (mut cf, mut quad) = (QfComplex::default(), QfComplex::default());
        let mut f = ptr::null_mut();
        assert_eq!(
            qf_function_powerlaw(1.0, 2.0, 4.0, 1.0, &mut f),
            QfStatus::Ok
        );
        assert_eq!(
            qf_closed_form_transform(1.0, 2.0, 4.0, 1.0, 1.2, 0.7, &mut cf, ptr::null_mut()),
            QfStatus::Ok
        );
        assert_eq!(
            qf_transform_point(f, 1.2, 0.7, 0.0, &mut quad, ptr::null_mut()),
            QfStatus::Ok
        );
        assert!(close(cf, quad.re, quad.im, 1e-7));
        // beta (q - 1) = 1 is the degenerate stratum
        let st = qf_closed_form_transform(1.0, 2.0, 2.0, 1.0, 1.5, 0.7, &mut cf, ptr::null_mut());
        assert_eq!(st, QfStatus::FallbackRequired);
        qf_function_free(f);
    }
}

#[test]
fn special_functions() {
    unsafe {
        let mut v = QfComplex::default();
        assert_eq!(
            qf_q_exponential(QfComplex { re: 0.0, im: 1.0 }, 1.5, &mut v),
            QfStatus::Ok
        );
        assert!(close(v, 0.48, 0.64, 1e-14));
        // the pole of e_q at z = 1/(q - 1)
        assert_eq!(
            qf_q_exponential(QfComplex { re: 2.0, im: 0.0 }, 1.5, &mut v),
            QfStatus::Pole
        );

        assert_eq!(
            qf_hyp2f1(1.0, 1.0, 2.0, QfComplex { re: 0.5, im: 0.0 }, &mut v),
            QfStatus::Ok
        );
        assert!(close(v, 2.0 * 2f64.ln(), 0.0, 1e-13));
        // polynomial: (1 - z)^2 at z = 3, no cut
        let mut e = 0.0;
        assert_eq!(
            qf_hyp2f1_boundary(-2.0, 1.5, 1.5, 3.0, &mut v, &mut e),
            QfStatus::Ok
        );
        assert!(close(v, 4.0, 0.0, 1e-9));
    }
}

#[test]
fn error_reporting() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(
            qf_function_indicator(1.0, 0.0, &mut f),
            QfStatus::InvalidInput
        );
        assert!(f.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(
            qf_function_indicator(0.0, 1.0, ptr::null_mut()),
            QfStatus::NullPointer
        );
        assert_eq!(
            qf_l1_norm(ptr::null(), ptr::null_mut()),
            QfStatus::NullPointer
        );
        assert_eq!(
            qf_function_powerlaw(2.0, 1.0, 2.0, 1.0, &mut f),
            QfStatus::InvalidWindow
        );
        let xs = [0.0, 1.0];
        assert_eq!(
            qf_function_tabulated(xs.as_ptr(), ptr::null(), 2, &mut f),
            QfStatus::NullPointer
        );

        let mut lambda = 0.0;
        assert_eq!(qf_hilhorst_lambda(1.0, 2.0, 1.5, &mut lambda), QfStatus::Ok);
        assert!(qf_last_error_message().is_null());
        qf_function_free(ptr::null_mut());
        qf_surface_free(ptr::null_mut());
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(qf_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/qfourier.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in [
        "qf_transform_point",
        "qf_surface_new",
        "qf_last_error_message",
        "QF_STATUS_OK",
    ] {
        assert!(text.contains(name), "{name}");
    }
    let Ok(status) = std::process::Command::new("cc")
        .args([
            "-std=c99",
            "-Wall",
            "-Werror",
            "-fsyntax-only",
            "-x",
            "c",
            header,
        ])
        .status()
    else {
        eprintln!("no C compiler, skipping syntax check");
        return;
    };
    assert!(status.success());
}
