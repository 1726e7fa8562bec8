use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use mbqc_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(mbqc_last_error()) }
        .to_str()
        .unwrap()
        .to_owned()
}

fn parse_circuit(text: &str) -> *mut MbqcCircuit {
    let mut out = ptr::null_mut();
    let s = unsafe { mbqc_circuit_parse(c(text).as_ptr(), &mut out) };
    assert_eq!(s, MbqcStatus::Ok, "{}", last_error());
    out
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { mbqc_string_free(p) };
    s
}

#[test]
fn circuit_round_trip_through_handles() {
    let text = "circuit 2 source\nJ 0 1/4\nCZ 0 1\n";
    let h = parse_circuit(text);
    let mut n = 0;
    assert_eq!(unsafe { mbqc_circuit_wires(h, &mut n) }, MbqcStatus::Ok);
    assert_eq!(n, 2);
    let mut d = 0;
    assert_eq!(unsafe { mbqc_circuit_depth(h, &mut d) }, MbqcStatus::Ok);
    assert_eq!(d, 2);
    assert_eq!(take_string(unsafe { mbqc_circuit_serialize(h) }), text);
    unsafe { mbqc_circuit_free(h) };
}

#[test]
fn translate_and_verify() {
    let text = "circuit 3\nJ 0 1/4\nCZ 0 1\nJ 1 1/3\nCZ 1 2\nJ 2 1/2\nJ 0 0\n";
    let h = parse_circuit(text);
    for variant in [MbqcVariant::Direct, MbqcVariant::Cluster] {
        let mut p = ptr::null_mut();
        assert_eq!(
            unsafe { mbqc_circuit_to_pattern(h, variant, &mut p) },
            MbqcStatus::Ok
        );
        let ptext = take_string(unsafe { mbqc_pattern_serialize(p) });
        let mut same = -1;
        let s = unsafe { mbqc_equivalent(c(text).as_ptr(), c(&ptext).as_ptr(), 1e-9, &mut same) };
        assert_eq!(s, MbqcStatus::Ok, "{}", last_error());
        assert_eq!(same, 1);

        let mut circ = ptr::null_mut();
        let s = unsafe { mbqc_pattern_to_circuit(p, MbqcFanIn::Tree, &mut circ) };
        assert_eq!(s, MbqcStatus::Ok, "{}", last_error());
        let ctext = take_string(unsafe { mbqc_circuit_serialize(circ) });
        let s = unsafe { mbqc_equivalent(c(text).as_ptr(), c(&ctext).as_ptr(), 1e-9, &mut same) };
        assert_eq!(s, MbqcStatus::Ok, "{}", last_error());
        assert_eq!(same, 1);
        unsafe {
            mbqc_circuit_free(circ);
            mbqc_pattern_free(p);
        }
    }
    unsafe { mbqc_circuit_free(h) };
}

#[test]
fn parallelize_reports_d_prime() {
    let h = parse_circuit("circuit 1\nJ 0 1/4\nJ 0 0\nJ 0 1/3\n");
    let mut out = ptr::null_mut();
    let mut d_prime = 99;
    assert_eq!(
        unsafe { mbqc_circuit_parallelize(h, &mut out, &mut d_prime) },
        MbqcStatus::Ok
    );
    assert_eq!(d_prime, 1);
    let mut null_ok = ptr::null_mut();
    assert_eq!(
        unsafe { mbqc_circuit_parallelize(h, &mut null_ok, ptr::null_mut()) },
        MbqcStatus::Ok
    );
    unsafe {
        mbqc_circuit_free(out);
        mbqc_circuit_free(null_ok);
        mbqc_circuit_free(h);
    }
}

#[test]
fn pattern_rewrites_and_depths() {
    let text = "pattern V=[0,1,2] I=[0] O=[2]\nN 1\nE 0 1\nM 0 a=1/4\nX 1 s=[0]\nN 2\nE 1 2\nM 1 a=1/3\nX 2 s=[1]\n";
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { mbqc_pattern_parse(c(text).as_ptr(), &mut p) },
        MbqcStatus::Ok
    );

    let mut circ = ptr::null_mut();
    assert_eq!(
        unsafe { mbqc_pattern_to_circuit(p, MbqcFanIn::Linear, &mut circ) },
        MbqcStatus::NotStandard
    );
    assert!(circ.is_null());
    assert!(last_error().contains("standard"));

    let mut std_p = ptr::null_mut();
    assert_eq!(
        unsafe { mbqc_pattern_standardize(p, &mut std_p) },
        MbqcStatus::Ok
    );
    let mut shifted = ptr::null_mut();
    assert_eq!(
        unsafe { mbqc_pattern_shift(std_p, &mut shifted) },
        MbqcStatus::Ok
    );
    let mut simplified = ptr::null_mut();
    assert_eq!(
        unsafe { mbqc_pattern_simplify(shifted, &mut simplified) },
        MbqcStatus::Ok
    );

    let mut d = 0;
    assert_eq!(
        unsafe { mbqc_pattern_quantum_depth(std_p, &mut d) },
        MbqcStatus::Ok
    );
    assert_eq!(d, 3);
    assert_eq!(
        unsafe { mbqc_pattern_characterized_depth(std_p, &mut d) },
        MbqcStatus::Ok
    );
    assert_eq!(d, 3);
    assert_eq!(
        unsafe { mbqc_pattern_flow_depth(std_p, &mut d) },
        MbqcStatus::Ok
    );
    assert_eq!(d, 3);
    unsafe {
        for h in [p, std_p, shifted, simplified] {
            mbqc_pattern_free(h);
        }
    }
}

#[test]
fn errors_are_reported_not_raised() {
    let mut out = ptr::null_mut();
    let s = unsafe { mbqc_circuit_parse(c("circuit 2\nJ 5 1/4\n").as_ptr(), &mut out) };
    assert_eq!(s, MbqcStatus::Parse);
    assert!(out.is_null());
    assert!(last_error().contains("out of range"));

    assert_eq!(
        unsafe { mbqc_circuit_parse(ptr::null(), &mut out) },
        MbqcStatus::NullPointer
    );
    let bytes = [0xffu8, 0];
    assert_eq!(
        unsafe { mbqc_circuit_parse(bytes.as_ptr().cast(), &mut out) },
        MbqcStatus::InvalidUtf8
    );
    let mut d = 0;
    assert_eq!(
        unsafe { mbqc_circuit_depth(ptr::null(), &mut d) },
        MbqcStatus::NullPointer
    );
    assert!(unsafe { mbqc_circuit_serialize(ptr::null()) }.is_null());

    let h = parse_circuit("circuit 2 target\nH 0\n");
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { mbqc_circuit_to_pattern(h, MbqcVariant::Direct, &mut p) },
        MbqcStatus::WrongDialect
    );
    unsafe { mbqc_circuit_free(h) };

    let triangle =
        "pattern V=[0,1,2] I=[0] O=[2]\nN 1\nN 2\nE 0 1\nE 0 2\nE 1 2\nM 0 a=1/4\nM 1 a=1/4\n";
    let mut t = ptr::null_mut();
    assert_eq!(
        unsafe { mbqc_pattern_parse(c(triangle).as_ptr(), &mut t) },
        MbqcStatus::Ok
    );
    assert_eq!(
        unsafe { mbqc_pattern_flow_depth(t, &mut d) },
        MbqcStatus::NoFlow
    );
    unsafe { mbqc_pattern_free(t) };

    unsafe {
        mbqc_circuit_free(ptr::null_mut());
        mbqc_pattern_free(ptr::null_mut());
        mbqc_string_free(ptr::null_mut());
    }
}

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

fn have_cc() -> bool {
    Command::new("cc").arg("--version").output().is_ok()
}

#[test]
fn header_compiles_as_c_and_cpp() {
    if !have_cc() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    for (lang, file) in [("c", "h.c"), ("c++", "h.cpp")] {
        let src = dir.path().join(file);
        std::fs::write(&src, "#include \"mbqc.h\"\nint main(void) { return 0; }\n").unwrap();
        let out = Command::new("cc")
            .args(["-x", lang, "-fsyntax-only", "-Wall", "-Werror", "-I"])
            .arg(&include)
            .arg(&src)
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn c_program_links_and_runs() {
    let lib_dir = target_dir();
    let so = lib_dir.join("libmbqc_ffi.so");
    if !have_cc() || !so.exists() {
        eprintln!("no C compiler or shared library; skipping");
        return;
    }
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let out = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg("-L")
        .arg(&lib_dir)
        .arg(format!("-Wl,-rpath,{}", lib_dir.display()))
        .args(["-lmbqc_ffi", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let run = Command::new(&exe).output().unwrap();
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(
        String::from_utf8_lossy(&run.stdout),
        "depth=2 same=1 parse_error=3 msg=yes\n"
    );
}
