use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use intranskit_ffi::*;

const RPS: [f64; 9] = [0.0, -1.0, 1.0, 1.0, 0.0, -1.0, -1.0, 1.0, 0.0];

fn matrix(n: usize, values: &[f64]) -> *mut IkMatrix {
    let mut m = ptr::null_mut();
    assert_eq!(
        unsafe { ik_matrix_new(n, values.as_ptr(), 1e-9, &mut m) },
        IkStatus::Ok
    );
    m
}

fn last_error() -> String {
    let p = ik_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn matrix_round_trip() {
    let m = matrix(3, &RPS);
    assert_eq!(unsafe { ik_matrix_size(m) }, 3);
    let mut v = 0.0;
    assert_eq!(unsafe { ik_matrix_get(m, 1, 0, &mut v) }, IkStatus::Ok);
    assert_eq!(v, 1.0);
    assert_eq!(
        unsafe { ik_matrix_get(m, 3, 0, &mut v) },
        IkStatus::InvalidArgument
    );
    unsafe { ik_matrix_free(m) };
}

#[test]
fn errors_are_reported() {
    let mut m = ptr::null_mut();
    let bad = [0.0, 1.0, 1.0, 0.0];
    assert_eq!(
        unsafe { ik_matrix_new(2, bad.as_ptr(), 1e-9, &mut m) },
        IkStatus::AntisymmetryViolation
    );
    assert!(m.is_null());
    assert!(last_error().contains("antisymmetry"));
    assert_eq!(
        unsafe { ik_matrix_new(2, ptr::null(), 1e-9, &mut m) },
        IkStatus::NullPointer
    );
    assert_eq!(unsafe { ik_matrix_size(ptr::null()) }, 0);
    unsafe { ik_matrix_free(ptr::null_mut()) };
}

#[test]
fn rankings_and_classes() {
    let m = matrix(3, &RPS);
    let members = [0usize, 1, 2];
    let mut r = 0.0;
    assert_eq!(
        unsafe { ik_conditional_ranking(m, 0, members.as_ptr(), ptr::null(), 3, &mut r) },
        IkStatus::Ok
    );
    assert_eq!(r, 0.0);
    let (g1, g2) = ([1usize], [0usize]);
    assert_eq!(
        unsafe {
            ik_group_coranking(
                m,
                g1.as_ptr(),
                ptr::null(),
                1,
                g2.as_ptr(),
                ptr::null(),
                1,
                &mut r,
            )
        },
        IkStatus::Ok
    );
    assert_eq!(r, 1.0);
    assert_eq!(
        unsafe { ik_triplet_delta(m, 0, 1, 2, &mut r) },
        IkStatus::Ok
    );
    assert_eq!(r.abs(), 3.0);

    let mut class = IkTripletClass::None;
    assert_eq!(unsafe { ik_classify(m, 1e-12, &mut class) }, IkStatus::Ok);
    assert_eq!(class, IkTripletClass::Strict);

    let mut class_of = [9usize; 3];
    let mut count = 0;
    assert_eq!(
        unsafe { ik_transitive_closure(m, 1e-12, class_of.as_mut_ptr(), &mut count) },
        IkStatus::Ok
    );
    assert_eq!((class_of, count), ([0, 0, 0], 1));

    let (mut rs, mut rss, mut om) = ([0.0; 3], [0.0; 3], -1.0);
    assert_eq!(
        unsafe {
            ik_current_rankings(
                m,
                ptr::null(),
                1e-12,
                rs.as_mut_ptr(),
                rss.as_mut_ptr(),
                &mut om,
            )
        },
        IkStatus::Ok
    );
    assert_eq!(om, 0.0);
    let w = [1.0, 0.0, 1.0];
    assert_eq!(
        unsafe { ik_omega(m, w.as_ptr(), 1e-12, &mut om) },
        IkStatus::DisconnectedSystem
    );
    unsafe { ik_matrix_free(m) };
}

#[test]
fn decomposition_and_absolute_ranking() {
    let m = matrix(3, &[0.0, 0.0, 0.5, 0.0, 0.0, 1.0, -0.5, -1.0, 0.0]);
    let (mut t, mut i) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(
        unsafe { ik_decompose(m, 1e-9, &mut t, &mut i) },
        IkStatus::Ok
    );
    for a in 0..3 {
        for b in 0..3 {
            let (mut x, mut y, mut z) = (0.0, 0.0, 0.0);
            unsafe {
                ik_matrix_get(m, a, b, &mut x);
                ik_matrix_get(t, a, b, &mut y);
                ik_matrix_get(i, a, b, &mut z);
            }
            assert!((x - y - z).abs() < 1e-12);
        }
    }
    let mut values = [0.0; 3];
    assert_eq!(
        unsafe { ik_absolute_ranking(t, 1e-9, values.as_mut_ptr()) },
        IkStatus::Ok
    );
    assert_eq!(
        unsafe { ik_absolute_ranking(m, 1e-9, values.as_mut_ptr()) },
        IkStatus::NotAbsolutelyTransitive
    );
    unsafe {
        ik_matrix_free(t);
        ik_matrix_free(i);
        ik_matrix_free(m);
    }
}

#[test]
fn nash_of_rock_paper_scissors() {
    let m = matrix(3, &RPS);
    let s = [0usize, 1, 2];
    let (mut p1, mut p2, mut v) = ([0.0; 3], [0.0; 3], 1.0);
    let status = unsafe {
        ik_solve_nash(
            m,
            s.as_ptr(),
            3,
            s.as_ptr(),
            3,
            1e-3,
            1_000_000,
            p1.as_mut_ptr(),
            p2.as_mut_ptr(),
            &mut v,
        )
    };
    assert_eq!(status, IkStatus::Ok);
    assert!(p1.iter().chain(&p2).all(|p| (p - 1.0 / 3.0).abs() < 1e-3));
    assert!(v.abs() < 1e-3);
    let status = unsafe {
        ik_solve_nash(
            m,
            s.as_ptr(),
            3,
            s.as_ptr(),
            3,
            1e-3,
            10,
            p1.as_mut_ptr(),
            p2.as_mut_ptr(),
            &mut v,
        )
    };
    assert_eq!(status, IkStatus::NoConvergence);
    unsafe { ik_matrix_free(m) };
}

#[test]
fn scalar_helpers() {
    assert!((ik_gauss_coarsen(1.0, 1.0, 1.0) - 0.8427007929497149).abs() < 1e-12);
    assert_eq!(ik_gauss_coarsen(0.3, 1.0, 0.0), 0.3);
    let mut a = [0.0; 9];
    let mut b = [0.0; 9];
    for i in [1, 3, 8] {
        a[i] = 1.0 / 3.0;
    }
    for i in [2, 4, 6] {
        b[i] = 1.0 / 3.0;
    }
    let mut r = 0.0;
    assert_eq!(
        unsafe { ik_rank_dist_coranking(b.as_ptr(), a.as_ptr(), 9, &mut r) },
        IkStatus::Ok
    );
    assert!((r - 1.0 / 9.0).abs() < 1e-12);
    let version = unsafe { CStr::from_ptr(ik_version()) };
    assert_eq!(version.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn density_step_in_place() {
    let m = matrix(2, &[0.0, -1.0, 1.0, 0.0]);
    let mut f = [0.5, 0.5];
    let p = f.as_mut_ptr();
    assert_eq!(unsafe { ik_density_step(m, p, 0.1, 1.0, p) }, IkStatus::Ok);
    assert!((f[0] - 0.475).abs() < 1e-12 && (f[1] - 0.525).abs() < 1e-12);
    assert_eq!(
        unsafe { ik_density_step(m, p, 10.0, 1.0, p) },
        IkStatus::StepTooLarge
    );
    unsafe { ik_matrix_free(m) };
}

#[test]
fn simulation_steps_deterministically() {
    let cfg = CString::new(r#"{"n": 30, "steps": 5, "seed": 3, "mode": "intransitive"}"#).unwrap();
    let run = || {
        let mut sim = ptr::null_mut();
        assert_eq!(
            unsafe { ik_simulation_new(cfg.as_ptr(), &mut sim) },
            IkStatus::Ok
        );
        let mut rows = vec![IkSeriesRow::default(); 5];
        for r in rows.iter_mut() {
            assert_eq!(unsafe { ik_simulation_step(sim, r) }, IkStatus::Ok);
        }
        unsafe { ik_simulation_free(sim) };
        rows
    };
    let a = run();
    assert_eq!(a, run());
    assert_eq!(a[4].step, 5);

    let bad = CString::new(r#"{"n": 1}"#).unwrap();
    let mut sim = ptr::null_mut();
    assert_eq!(
        unsafe { ik_simulation_new(bad.as_ptr(), &mut sim) },
        IkStatus::InvalidConfig
    );
    let typo = CString::new(r#"{"steps": "x"}"#).unwrap();
    assert_eq!(
        unsafe { ik_simulation_new(typo.as_ptr(), &mut sim) },
        IkStatus::ParseError
    );
}

#[test]
fn csv_loading() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/rps.csv");
    let c = CString::new(path.to_str().unwrap()).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(
        unsafe { ik_matrix_from_csv(c.as_ptr(), 1e-9, &mut m) },
        IkStatus::Ok
    );
    assert_eq!(unsafe { ik_matrix_size(m) }, 3);
    unsafe { ik_matrix_free(m) };
    let missing = CString::new("/nonexistent/matrix.csv").unwrap();
    assert_eq!(
        unsafe { ik_matrix_from_csv(missing.as_ptr(), 1e-9, &mut m) },
        IkStatus::IoError
    );
}

#[test]
fn header_compiles_as_c() {
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", "-I"])
        .arg(&include)
        .arg("-")
        .stdin(std::process::Stdio::piped())
        .spawn()
        .and_then(|mut child| {
            use std::io::Write;
            child
                .stdin
                .take()
                .expect("piped")
                .write_all(b"#include \"intranskit.h\"\nint main(void) { return ik_matrix_size(0) == 0 ? 0 : 1; }\n")?;
            child.wait()
        })
    else {
        eprintln!("no C compiler available; skipping");
        return;
    };
    assert!(status.success());
}
