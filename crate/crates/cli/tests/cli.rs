use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;
use yb_cli::{decode, AnyObject, FormatError, Object};
use yb_core::{Rational, TensorMatrix};

fn yb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_yb")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    yb(args).status.code().expect("exit code")
}

fn p(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

fn read_object(path: &str) -> AnyObject {
    decode(&std::fs::read_to_string(Path::new(path)).unwrap()).unwrap()
}

fn q_matrix(obj: AnyObject) -> TensorMatrix<Rational> {
    match obj {
        AnyObject::Q(Object::Matrix(m)) => m.map(|x| x.as_constant().expect("constant entries")),
        other => panic!("expected a rational matrix, got {:?}", other.kind()),
    }
}

#[test]
fn example_sequences() {
    let dir = TempDir::new().unwrap();
    let (r, rs, rep) = (p(&dir, "R.yb"), p(&dir, "Rs.yb"), p(&dir, "rep.yb"));
    assert_eq!(code(&["build", "example1-R", "--n", "3", "--out", &r]), 0);
    assert_eq!(code(&["verify", "ybe", "--constant", "--in", &r]), 0);
    assert_eq!(code(&["build", "baxterize", "--in", &r, "--out", &rs]), 0);
    assert_eq!(code(&["verify", "ybe", "--spectral", "--in", &rs]), 0);
    assert_eq!(code(&["verify", "regularity", "--in", &rs]), 0);
    assert_eq!(code(&["verify", "unitarity", "--in", &rs, "--report", &rep]), 0);
    match read_object(&rep) {
        AnyObject::Q(Object::Report(d)) => {
            assert!(d.report.passed);
            let u = yb_core::Poly::<Rational>::var("u");
            assert_eq!(
                d.report.scalar_factor.unwrap(),
                yb_core::Poly::constant(Rational::from_integer(1.into())) - u.clone() * u
            );
        }
        other => panic!("unexpected {:?}", other.kind()),
    }
}

#[test]
fn failing_verification_writes_a_witness() {
    let dir = TempDir::new().unwrap();
    let (bad, rep) = (p(&dir, "NotASolution.yb"), p(&dir, "report.yb"));
    let e = |i, j| TensorMatrix::<Rational>::unit(2, i, j);
    let m = TensorMatrix::identity(2, 2).add(&e(1, 2).kron(&e(1, 2)).unwrap()).add(&e(2, 1).kron(&e(1, 1)).unwrap());
    std::fs::write(&bad, Object::matrix(&m).encode()).unwrap();
    let out = yb(&["verify", "ybe", "--constant", "--in", &bad, "--report", &rep]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
    match read_object(&rep) {
        AnyObject::Q(Object::Report(d)) => {
            assert!(!d.report.passed);
            assert!(d.report.witness.is_some());
        }
        other => panic!("unexpected {:?}", other.kind()),
    }
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["build", "example1-r"]), 2);
    assert_eq!(code(&["build", "example1-r", "--n", "1"]), 2);
    assert_eq!(code(&["verify", "ybe", "--in", &p(&dir, "missing.yb")]), 2);
    let junk = p(&dir, "junk.yb");
    std::fs::write(&junk, "not json").unwrap();
    assert_eq!(code(&["verify", "cybe", "--in", &junk]), 2);
    assert_eq!(code(&["build", "yangian-so", "--N", "4", "--realization", "sideways"]), 2);
}

#[test]
fn outputs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    for args in [
        vec!["build", "example2", "--N", "4"],
        vec!["build", "example2", "--N", "4", "--realization", "skew"],
        vec!["build", "frobenius-r", "--n", "3"],
        vec!["chain", "hamiltonian", "--sites", "3", "--xi", "2/3"],
        vec!["verify", "cocycle", "--n", "4"],
    ] {
        let (a, b) = (p(&dir, "a.yb"), p(&dir, "b.yb"));
        let flag = if args[0] == "verify" { "--report" } else { "--out" };
        let first = [args.as_slice(), &[flag, a.as_str()]].concat();
        let second = [args.as_slice(), &[flag, b.as_str()]].concat();
        assert_eq!(code(&first), 0, "{args:?}");
        assert_eq!(code(&second), 0, "{args:?}");
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap(), "{args:?}");
        assert_eq!(yb(&args).stdout, yb(&args).stdout);
    }
}

#[test]
fn built_matrices_match_the_library() {
    let out = yb(&["build", "example1-r", "--n", "4", "--xi", "3/5"]);
    assert_eq!(out.status.code(), Some(0));
    let got = q_matrix(decode(std::str::from_utf8(&out.stdout).unwrap()).unwrap());
    let xi = Rational::new(3.into(), 5.into());
    assert_eq!(got, yb_core::solutions::example1_r(4, Some(&xi)).unwrap());
    let out = yb(&["build", "casimir", "--N", "3", "--algebra", "so"]);
    assert_eq!(out.status.code(), Some(0));
    let got = q_matrix(decode(std::str::from_utf8(&out.stdout).unwrap()).unwrap());
    assert_eq!(got.get(0, 0), &Rational::from_integer(1.into()));
}

#[test]
fn non_canonical_rational_is_a_parse_error() {
    let text = Object::matrix(&TensorMatrix::<Rational>::identity(1, 1)).encode().replacen("\"1\"", "\"2/4\"", 1);
    assert!(matches!(decode(&text), Err(FormatError::Parse { .. })));
    let text = Object::matrix(&TensorMatrix::<Rational>::identity(1, 1)).encode().replacen("\"1\"", "\"2/2\"", 1);
    assert!(matches!(decode(&text), Err(FormatError::Parse { .. })));
}

#[test]
fn version_and_shape_errors() {
    let text = Object::matrix(&TensorMatrix::<Rational>::identity(2, 2)).encode();
    let bumped = text.replacen("\"format_version\": 1", "\"format_version\": 9", 1);
    assert!(matches!(decode(&bumped), Err(FormatError::Version(9))));
    let wrong = text.replacen("\"site_dim\": 2", "\"site_dim\": 3", 1);
    assert!(matches!(decode(&wrong), Err(FormatError::Shape(_))));
}

#[test]
fn chain_commands() {
    let dir = TempDir::new().unwrap();
    let (big, rs, h, t) = (p(&dir, "R.yb"), p(&dir, "Rs.yb"), p(&dir, "h.yb"), p(&dir, "t.yb"));
    assert_eq!(code(&["build", "example1-R", "--n", "2", "--xi", "2", "--out", &big]), 0);
    assert_eq!(code(&["build", "baxterize", "--in", &big, "--out", &rs]), 0);
    assert_eq!(code(&["chain", "derive", "--sites", "3", "--in", &rs, "--out", &h]), 0);
    assert_eq!(code(&["chain", "transfer", "--sites", "3", "--in", &rs, "--out", &t]), 0);
    let again = p(&dir, "t2.yb");
    assert_eq!(code(&["chain", "transfer", "--sites", "3", "--in", &rs, "--out", &again]), 0);
    assert_eq!(std::fs::read(&t).unwrap(), std::fs::read(&again).unwrap());
    assert_eq!(code(&["chain", "commute", "--in", &h, "--against", &t]), 0);
    let remark = p(&dir, "remark.yb");
    assert_eq!(code(&["chain", "hamiltonian", "--sites", "3", "--xi", "1", "--boundary", "open", "--out", &remark]), 0);
    assert_eq!(code(&["chain", "commute", "--in", &remark, "--against", &t]), 1);
    let out = yb(&["chain", "calibrate", "--sites", "4", "--tau", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["xi_squared"], "2");
    assert_eq!(v["alpha"], "2");
    assert_eq!(v["beta"], "-4");
}

#[test]
fn suite_single_criterion() {
    let out = yb(&["suite", "--criterion", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("criterion 1 ") && text.contains(": PASS"), "{text}");
}
