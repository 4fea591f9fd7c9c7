use std::fs;
use std::process::{Command, Output};

use harmconv::harmonic::{shear, Dilatation, TargetDomain};
use harmconv::render::parse_dump;

fn harmconv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harmconv"))
        .args(args)
        .env_remove("HARMCONV_OUT_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn halfplane_square_reports_r_max_squared() {
    let o = harmconv(&["certify", "--theorem", "2", "--n", "2", "--r-max", "0.99"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 16);
    assert!(
        text.lines()
            .all(|l| l.contains("= 0.980100000000") && l.ends_with("PASS")),
        "{text}"
    );
}

#[test]
fn higher_power_witness_found() {
    let o = harmconv(&["certify", "--remark", "1", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let modulus: f64 = text
        .split(")| = ")
        .nth(1)
        .unwrap()
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(modulus > 2.0, "{text}");
}

#[test]
fn zeros_of_halfplane_quadratic() {
    let o = harmconv(&["zeros", "0.5", "0.5", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("zeros inside |z| < 1: 2"));
}

#[test]
fn zeros_accepts_negative_and_complex_coefficients() {
    let o = harmconv(&["zeros", "-2,0.5", "0", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("zeros inside |z| < 1: 0"));
}

#[test]
fn usage_error_exit_code() {
    let o = harmconv(&["certify", "--theorem", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("theorem 9"));
    assert_eq!(harmconv(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn failed_certification_exit_code() {
    let o = harmconv(&["certify", "--theorem", "6", "--a", "-0.8", "--alpha", "2.0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn region_and_slanted_convexity_pass() {
    assert_eq!(
        harmconv(&["certify", "--region", "F1", "--r-max", "0.99"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        harmconv(&["certify", "--region", "F3", "--r-max", "0.99"])
            .status
            .code(),
        Some(0)
    );
    let cfg = tempfile::NamedTempFile::new().unwrap();
    fs::write(cfg.path(), "radii = 20\nangles = 64\n").unwrap();
    let o = harmconv(&[
        "certify",
        "--theorem",
        "1",
        "--config",
        cfg.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("1280 points"));
}

#[test]
fn shear_dump_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.txt");
    let o = harmconv(&[
        "shear",
        "--target",
        "strip:2.0",
        "--dilatation",
        "mobius:-0.3",
        "--order",
        "64",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let back = parse_dump(&fs::read_to_string(&path).unwrap()).unwrap();
    let direct = shear(
        TargetDomain::VerticalStrip { alpha: 2.0 },
        &Dilatation::mobius(-0.3).unwrap(),
        64,
    )
    .unwrap();
    for k in 0..64 {
        assert!((back.h.coeff(k) - direct.h.coeff(k)).norm() <= 1e-12);
        assert!((back.g.coeff(k) - direct.g.coeff(k)).norm() <= 1e-12);
    }
}

#[test]
fn convolve_named_with_f0_matches_fixture() {
    let o = harmconv(&["convolve", "f0", "f1", "--order", "32"]);
    assert_eq!(o.status.code(), Some(0));
    let conv = parse_dump(&stdout(&o)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let o = harmconv(&[
        "examples",
        "--dir",
        dir.path().to_str().unwrap(),
        "--order",
        "32",
    ]);
    assert_eq!(o.status.code(), Some(0));
    for name in ["F1", "F2", "F3"] {
        assert!(dir.path().join(format!("{name}.txt")).exists());
    }
    let fixture = parse_dump(&fs::read_to_string(dir.path().join("F1.txt")).unwrap()).unwrap();
    for k in 0..32 {
        assert!((conv.h.coeff(k) - fixture.h.coeff(k)).norm() <= 1e-12);
        assert!((conv.g.coeff(k) - fixture.g.coeff(k)).norm() <= 1e-12);
    }
}

#[test]
fn render_and_csv_are_deterministic_and_honor_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let run = |svg: &str, csv: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_harmconv"))
            .args([
                "render",
                "--map",
                "F1",
                "--radii",
                "0.3,0.6,0.9",
                "--rays",
                "8",
                "--output",
                svg,
            ])
            .env("HARMCONV_OUT_DIR", dir.path())
            .output()
            .unwrap();
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
        let o = Command::new(env!("CARGO_BIN_EXE_harmconv"))
            .args(["certify", "--theorem", "3", "--csv", csv])
            .env("HARMCONV_OUT_DIR", dir.path())
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
    };
    run("a.svg", "a.csv");
    run("b.svg", "b.csv");
    let a = fs::read(dir.path().join("a.svg")).unwrap();
    assert_eq!(a, fs::read(dir.path().join("b.svg")).unwrap());
    assert_eq!(
        String::from_utf8(a).unwrap().matches("<polyline").count(),
        11
    );
    let csv = fs::read_to_string(dir.path().join("a.csv")).unwrap();
    assert_eq!(csv, fs::read_to_string(dir.path().join("b.csv")).unwrap());
    assert_eq!(csv.lines().count(), 6);
}

#[test]
fn render_rejects_radius_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.svg");
    let o = harmconv(&[
        "render",
        "--map",
        "f0",
        "--radii",
        "0.5,1.0",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
}
