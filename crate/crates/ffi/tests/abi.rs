use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use comte_ffi::*;

fn owned(s: *mut c_char) -> String {
    let t = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { comte_string_free(s) };
    t
}

fn last_error() -> Option<String> {
    let p = comte_last_error_message();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

fn gauss(code: &str) -> *mut ComteHandle {
    let c = CString::new(code).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { comte_from_gauss(c.as_ptr(), &mut h) }, ComteStatus::Ok);
    h
}

#[test]
fn trefoil_invariants() {
    let h = gauss("O1+U2+O3+U1+O2+U3+");
    unsafe {
        let (mut v, mut a) = (0, 0);
        assert_eq!(comte_counts(h, &mut v, &mut a), ComteStatus::Ok);
        assert_eq!((v, a), (3, 3));
        let mut ok = false;
        assert_eq!(comte_is_valid(h, &mut ok), ComteStatus::Ok);
        assert!(ok);
        let mut s = ptr::null_mut();
        assert_eq!(comte_alexander(h, 1, &mut s), ComteStatus::Ok);
        assert_eq!(owned(s), "t^2 - t + 1");
        assert_eq!(comte_phi_tetrahedron(h, &mut s), ComteStatus::Ok);
        assert_eq!(owned(s), "4 + 12*s");
        assert_eq!(comte_homology(h, 2, false, &mut s), ComteStatus::Ok);
        assert_eq!(owned(s), "H_1 = Z\nH_2 = Z\n");
        assert_eq!(comte_linking(h, &mut s), ComteStatus::Ok);
        assert!(!owned(s).is_empty());

        let name = CString::new("dihedral3").unwrap();
        let mut r = ptr::null_mut();
        assert_eq!(comte_rack_builtin(name.as_ptr(), &mut r), ComteStatus::Ok);
        let mut n = 0;
        assert_eq!(comte_coloring_count(h, r, &mut n), ComteStatus::Ok);
        assert_eq!(n, 9);
        comte_rack_free(r);
        comte_free(h);
    }
    assert_eq!(last_error(), None);
}

#[test]
fn json_round_trip_and_pd() {
    let h = gauss("O1+U2+O3+U1+O2+U3+");
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(comte_to_json(h, &mut s), ComteStatus::Ok);
        let json = CString::new(owned(s)).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(comte_from_json(json.as_ptr(), &mut back), ComteStatus::Ok);
        assert_eq!(comte_to_json(back, &mut s), ComteStatus::Ok);
        assert_eq!(owned(s), json.to_str().unwrap());
        let pd = CString::new("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]").unwrap();
        let mut p = ptr::null_mut();
        assert_eq!(comte_from_pd(pd.as_ptr(), &mut p), ComteStatus::Ok);
        let mut ok = false;
        assert_eq!(comte_is_valid(p, &mut ok), ComteStatus::Ok);
        assert!(ok);
        comte_free(p);
        comte_free(back);
        comte_free(h);
    }
}

#[test]
fn census_counts() {
    let mut n = 0;
    assert_eq!(unsafe { comte_census_count(ComteFamily::Q, 3, &mut n) }, ComteStatus::Ok);
    assert_eq!(n, 70);
    assert_eq!(unsafe { comte_census_count(ComteFamily::R, 2, &mut n) }, ComteStatus::Ok);
    assert!(n > 1);
    assert_eq!(unsafe { comte_census_count(ComteFamily::R, 9, &mut n) }, ComteStatus::Invalid);
    assert!(last_error().is_some());
}

#[test]
fn error_statuses() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(comte_from_json(ptr::null(), &mut h), ComteStatus::NullPointer);
        let bad = CString::new("{not json").unwrap();
        assert_eq!(comte_from_json(bad.as_ptr(), &mut h), ComteStatus::Parse);
        assert!(last_error().unwrap().contains("line"));
        let dangling =
            CString::new(r#"{"vertices": ["a"], "arrows": [{"source": "a", "target": "b", "label": "a"}]}"#).unwrap();
        assert_eq!(comte_from_json(dangling.as_ptr(), &mut h), ComteStatus::Invalid);
        let bytes = [0xffu8, 0];
        assert_eq!(comte_from_gauss(bytes.as_ptr() as *const c_char, &mut h), ComteStatus::InvalidUtf8);
        let g = CString::new("O1+U1-").unwrap();
        assert_ne!(comte_from_gauss(g.as_ptr(), &mut h), ComteStatus::Ok);
        let name = CString::new("nonesuch").unwrap();
        let mut r = ptr::null_mut();
        assert_eq!(comte_rack_builtin(name.as_ptr(), &mut r), ComteStatus::Invalid);
        assert!(r.is_null());
        let t = gauss("O1+U2+O3+U1+O2+U3+");
        assert_eq!(comte_homology(t, 2, true, &mut ptr::null_mut()), ComteStatus::Computation);
        assert_eq!(comte_alexander(t, 0, &mut ptr::null_mut()), ComteStatus::Invalid);
        assert_eq!(comte_counts(ptr::null(), &mut 0, &mut 0), ComteStatus::NullPointer);
        assert_eq!(comte_is_valid(t, ptr::null_mut()), ComteStatus::NullPointer);
        comte_free(t);
        comte_free(ptr::null_mut());
        comte_string_free(ptr::null_mut());
        comte_rack_free(ptr::null_mut());
    }
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn c_program_links() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // tests run from <target>/<profile>/deps
    let profile = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile.join("libcomte_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("comte_c_test");
    let status = Command::new("cc")
        .arg(root.join("tests/smoke.c"))
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "3 3\nt^2 - t + 1\n4 + 12*s\nparse error: yes\n");
}
