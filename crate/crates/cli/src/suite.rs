//! The acceptance criteria as runnable checks, shared by `yb suite`.

use std::path::{Path, PathBuf};

use yb_core::frobenius::{check_cocycle, cocycle_from_functional, example1_pair, r_from_cocycle};
use yb_core::solutions::{
    apply_twist_spectral, baxterize, conjugator_t, example1_big_r, example1_r, example2_solution, jordanian_family,
    proportionality, so_jordanian_data, so_shift, yangian_sl_r, yangian_so_r, Realization,
};
use yb_core::spin_chain::{
    calibrate, check_commutation, derive_hamiltonian, remark_hamiltonian_parts, spin_flip, transfer_matrix, Boundary,
    ChainSpec,
};
use yb_core::tensor::permutation_op;
use yb_core::verify::{
    check_classical_limit, check_cybe, check_unitarity_constant, check_unitarity_spectral, check_ybe_constant,
    check_ybe_spectral_r, CybeMode, GridOptions, VerificationReport, Witness,
};
use yb_core::{Field, Poly, QExt, Rational, Ring, SpectralRMatrix, TensorMatrix};

use crate::format::{decode, AnyObject, ChainDoc, Object, ReportDoc};

/// Outcome detail on success, reason on failure.
pub type CheckResult = Result<String, String>;

pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub check: fn() -> CheckResult,
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, name: "triangular r-matrix and unitary R", check: example1 },
        Criterion { id: 2, name: "baxterization", check: baxterization },
        Criterion { id: 3, name: "fundamental Yangian R-matrices", check: yangians },
        Criterion { id: 4, name: "twisted o(N) solution", check: twisted_so },
        Criterion { id: 5, name: "quasi-Frobenius r-matrix", check: frobenius },
        Criterion { id: 6, name: "rational vs constant CYBE", check: cybe_equivalence },
        Criterion { id: 7, name: "spin chain", check: spin_chain },
        Criterion { id: 8, name: "file format and command line", check: cli },
    ]
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed<F: Field>(
    rep: Result<VerificationReport<F>, yb_core::Error>,
    what: &str,
) -> Result<VerificationReport<F>, String> {
    let rep = rep.map_err(|e| format!("{what}: {e}"))?;
    if rep.passed {
        Ok(rep)
    } else {
        Err(format!("{what}: {:?}", rep.witness))
    }
}

fn err<E: std::fmt::Display>(what: &str) -> impl Fn(E) -> String + '_ {
    move |e| format!("{what}: {e}")
}

fn q(x: i64) -> Rational {
    Rational::from_int(x)
}

fn example1() -> CheckResult {
    for n in 2..=6 {
        let r = example1_r::<Rational>(n, None).map_err(err("example1_r"))?;
        ensure(r.swap_factors().map_err(err("swap"))? == r.neg(), || format!("n={n}: r21 ≠ −r"))?;
        ensure(r.pow(3).is_zero(), || format!("n={n}: r³ ≠ 0"))?;
        passed(check_cybe(&r, None, CybeMode::Constant), &format!("n={n} CYBE"))?;
        let big = example1_big_r::<Rational>(n, None).map_err(err("example1_R"))?;
        let u = passed(check_unitarity_constant(&big), &format!("n={n} unitarity"))?;
        let one = Poly::constant(q(1));
        ensure(u.scalar_factor.as_ref() == Some(&one), || format!("n={n}: R21·R = {:?}·1", u.scalar_factor))?;
        passed(check_ybe_constant(&big), &format!("n={n} YBE"))?;
    }
    Ok("n = 2..6".into())
}

fn baxterization() -> CheckResult {
    for n in 2..=4 {
        let big = example1_big_r::<Rational>(n, None).map_err(err("example1_R"))?;
        let s = baxterize(&big).map_err(err("baxterize"))?;
        passed(check_ybe_spectral_r(&s, GridOptions::default()), &format!("n={n} spectral YBE"))?;
        ensure(s.eval_numerator(&q(0)) == permutation_op(n), || format!("n={n}: R(0) ≠ P"))?;
        let u = passed(check_unitarity_spectral(s.numerator()), &format!("n={n} unitarity"))?;
        let expected = Poly::constant(q(1)) - Poly::monomial("u", 2, q(1));
        ensure(u.scalar_factor.as_ref() == Some(&expected), || format!("n={n}: factor {:?}", u.scalar_factor))?;
    }
    Ok("n = 2..4, unitarity factor (1-u^2)".into())
}

fn yangians() -> CheckResult {
    for n in 2..=4 {
        let r = yangian_sl_r::<Rational>(n).map_err(err("yangian_sl"))?;
        passed(check_ybe_spectral_r(&r, GridOptions::default()), &format!("sl({n})"))?;
    }
    for n in 3..=6 {
        for real in [Realization::Skew, Realization::Antidiag] {
            let r = yangian_so_r::<Rational>(n, real).map_err(err("yangian_so"))?;
            let k = so_shift::<Rational>(n);
            ensure(k.clone() * q(2) == q(n as i64 - 2), || format!("k = {k} for N={n}"))?;
            let den = Poly::constant(k) + Poly::var("u");
            ensure(*r.denominator() == den, || format!("N={n}: denominator {}", r.denominator()))?;
            passed(check_ybe_spectral_r(&r, GridOptions::default()), &format!("o({n}) {}", real.name()))?;
        }
    }
    Ok("sl(2..4), o(3..6) in both realizations".into())
}

fn conjugate_spectral(r: &SpectralRMatrix<QExt>, t: &TensorMatrix<QExt>) -> Result<TensorMatrix<Poly<QExt>>, String> {
    let tt = t.kron(t).map_err(err("T⊗T"))?;
    let inv = tt.matrix().inverse().ok_or("T⊗T singular")?;
    let inv = TensorMatrix::new(t.site_dim(), 2, inv).map_err(err("T⊗T"))?;
    Ok(tt.lift().mul(r.numerator()).mul(&inv.lift()))
}

fn twisted_so() -> CheckResult {
    let mut notes = Vec::new();
    for n in 4..=6 {
        let closed = example2_solution::<Rational>(n, Realization::Antidiag).map_err(err("example2"))?;
        let rep = passed(check_ybe_spectral_r(&closed, GridOptions::default()), &format!("N={n} YBE"))?;
        let data = so_jordanian_data::<Rational>(n, Realization::Antidiag).map_err(err("jordanian"))?;
        let yang = yangian_so_r::<Rational>(n, Realization::Antidiag).map_err(err("yangian_so"))?;
        let twisted = apply_twist_spectral(&yang, &data.f0).map_err(err("twist"))?;
        ensure(twisted.numerator() == closed.numerator() && twisted.denominator() == closed.denominator(), || {
            format!("N={n}: closed form differs from twisted Yangian")
        })?;
        let fam = jordanian_family::<Rational>(n, Realization::Antidiag).map_err(err("family"))?;
        passed(check_classical_limit(&fam, "xi", &data.r0), &format!("N={n} classical limit"))?;
        notes.push(format!("N={n} grid {:?}", rep.grid_size.unwrap_or_default()));
    }
    let t = conjugator_t::<QExt>(4).map_err(err("T"))?;
    let anti = example2_solution::<QExt>(4, Realization::Antidiag).map_err(err("example2"))?;
    let skew = example2_solution::<QExt>(4, Realization::Skew).map_err(err("example2 skew"))?;
    ensure(conjugate_spectral(&anti, &t)? == *skew.numerator(), || "N=4: T⊗T does not map antidiag to skew".into())?;
    ensure(anti.denominator() == skew.denominator(), || "N=4: denominators differ".into())?;
    passed(check_ybe_spectral_r(&skew, GridOptions::default()), "N=4 skew YBE")?;
    Ok(notes.join(", "))
}

fn frobenius() -> CheckResult {
    let mut constant = None;
    for n in 2..=4 {
        let (basis, f) = example1_pair::<Rational>(n).map_err(err("pair"))?;
        ensure(basis.structure_constants().is_some(), || format!("n={n}: not closed"))?;
        let b = cocycle_from_functional(&basis, &f).map_err(err("cocycle"))?;
        let chk = check_cocycle(&basis, &b).map_err(err("check"))?;
        ensure(chk.report.passed, || format!("n={n}: cyclic identity fails at {:?}", chk.report.witness))?;
        ensure(chk.skew, || format!("n={n}: B not skew"))?;
        ensure(chk.nondegenerate(), || format!("n={n}: det B = 0"))?;
        let r = r_from_cocycle(&basis, &b).map_err(err("r0"))?;
        passed(check_cybe(&r, None, CybeMode::Constant), &format!("n={n} CYBE"))?;
        if n == 2 {
            let r1 = example1_r::<Rational>(2, None).map_err(err("example1_r"))?;
            constant = Some(proportionality(&r, &r1).ok_or("n=2: B⁻¹ not proportional to the triangular r")?);
        }
    }
    Ok(format!("n = 2..4; n=2 constant {}", constant.expect("set")))
}

/// Small two-tensors that do not solve the CYBE.
pub fn cybe_non_solutions() -> Vec<TensorMatrix<Rational>> {
    let u = |n, i, j| TensorMatrix::<Rational>::unit(n, i, j);
    let h = u(2, 1, 1).sub(&u(2, 2, 2));
    let he = h.kron(&u(2, 1, 2)).expect("same site");
    let sym = he.add(&he.swap_factors().expect("2 legs"));
    let flip = u(2, 1, 2).kron(&u(2, 2, 1)).expect("same site");
    let skew_flip = flip.sub(&flip.swap_factors().expect("2 legs"));
    let bumped = example1_r::<Rational>(3, None).expect("n=3").add(&u(3, 2, 1).kron(&u(3, 1, 2)).expect("same site"));
    vec![sym, skew_flip, bumped]
}

fn cybe_equivalence() -> CheckResult {
    let mut cases: Vec<(String, TensorMatrix<Rational>, bool)> =
        (2..=5).map(|n| (format!("triangular n={n}"), example1_r(n, None).expect("n ≥ 2"), true)).collect();
    for (k, m) in cybe_non_solutions().into_iter().enumerate() {
        cases.push((format!("non-solution {k}"), m, false));
    }
    for (name, r, expect) in &cases {
        let omega = permutation_op(r.site_dim());
        let c = check_cybe(r, None, CybeMode::Constant).map_err(err("constant"))?.passed;
        let x = check_cybe(r, Some(&omega), CybeMode::Rational).map_err(err("rational"))?.passed;
        ensure(c == *expect, || format!("{name}: constant verdict {c}"))?;
        ensure(c == x, || format!("{name}: constant {c} vs rational {x}"))?;
    }
    Ok(format!("{} cases", cases.len()))
}

fn spin_chain() -> CheckResult {
    let opts = GridOptions::default();
    for l in [3, 4] {
        let parts = remark_hamiltonian_parts::<Rational>(l, Boundary::Periodic).map_err(err("remark"))?;
        ensure(parts.linear.is_zero(), || format!("L={l}: ξ-linear part nonzero"))?;
        for tau in [0, 1, 2] {
            let tag = format!("L={l} τ={tau}");
            let tau = q(tau);
            let spec = ChainSpec::new(l, Boundary::Periodic, tau.clone()).map_err(err("spec"))?;
            let big = example1_big_r(2, Some(&tau)).map_err(err("R"))?;
            let r = baxterize(&big).map_err(err("baxterize"))?;
            let t = transfer_matrix(&r, &spec).map_err(err("transfer"))?;
            passed(check_commutation(&t, &t, opts), &format!("{tag} [t(u), t(v)]"))?;
            let hd = derive_hamiltonian(&r, &spec).map_err(err("derive"))?;
            passed(check_commutation(&hd, &t, opts), &format!("{tag} [H, t(u)]"))?;
            let cal = calibrate(&hd, l).map_err(err("calibrate"))?.ok_or(format!("{tag}: no calibration"))?;
            let remark = parts.with_xi_squared(&cal.xi_squared).map_err(err("remark"))?;
            let flip = spin_flip::<Rational>(l);
            let lhs = hd.scale(&cal.alpha).add(&TensorMatrix::identity(2, l).scale(&cal.beta));
            ensure(flip.mul(&remark).mul(&flip) == lhs, || format!("{tag}: calibrated identity fails"))?;
            let expected = (tau.clone() * tau.clone() / q(2), q(2), q(-(l as i64)));
            ensure((cal.xi_squared.clone(), cal.alpha.clone(), cal.beta.clone()) == expected, || {
                format!("{tag}: solved ξ²={}, α={}, β={}", cal.xi_squared, cal.alpha, cal.beta)
            })?;
        }
    }
    Ok("ξ² = τ²/2, α = 2, β = −L solved for L = 3, 4".into())
}

fn round_trip(obj: AnyObject) -> Result<(), String> {
    let text = obj.encode();
    let back = decode(&text).map_err(|e| format!("{:?}: {e}", obj.kind()))?;
    ensure(back == obj, || format!("{:?}: decoded object differs", obj.kind()))?;
    ensure(back.encode() == text, || format!("{:?}: re-encoding differs", obj.kind()))
}

/// One instance of every exported object kind over both fields.
pub fn sample_objects() -> Result<Vec<AnyObject>, String> {
    let mut out: Vec<AnyObject> = Vec::new();
    let m = |x: &TensorMatrix<Rational>| AnyObject::Q(Object::matrix(x));
    out.push(m(&permutation_op(2)));
    out.push(m(&example1_r(3, Some(&Rational::new(3.into(), 7.into()))).map_err(err("r"))?));
    out.push(m(&example1_big_r(3, None).map_err(err("R"))?));
    out.push(Object::Matrix(jordanian_family::<Rational>(4, Realization::Antidiag).map_err(err("family"))?).into());
    out.push(Object::matrix(&so_jordanian_data::<QExt>(4, Realization::Skew).map_err(err("skew"))?.f0).into());
    let bax = baxterize(&example1_big_r(2, None).map_err(err("R"))?).map_err(err("baxterize"))?;
    out.push(Object::Spectral(bax.clone()).into());
    out.push(Object::Spectral(yangian_so_r::<Rational>(5, Realization::Antidiag).map_err(err("so"))?).into());
    out.push(Object::Spectral(example2_solution::<QExt>(4, Realization::Skew).map_err(err("ex2"))?).into());
    let unit = check_unitarity_spectral(bax.numerator()).map_err(err("unitarity"))?;
    out.push(Object::Report(ReportDoc { site_dim: 2, legs: 2, report: unit }).into());
    let fail = VerificationReport::fail(
        "ybe-spectral",
        Witness { row: 3, col: 5, monomial: (1, 2), value: QExt::new(q(1), q(0), q(-2), q(0)) },
    );
    out.push(Object::Report(ReportDoc { site_dim: 2, legs: 2, report: fail }).into());
    let spec = ChainSpec::<Rational>::periodic(3).map_err(err("spec"))?;
    let t = transfer_matrix(&bax, &spec).map_err(err("transfer"))?;
    out.push(Object::Chain(ChainDoc { boundary: Boundary::Periodic, coefficients: t.coefficients().to_vec() }).into());
    let h = derive_hamiltonian(&bax, &spec).map_err(err("derive"))?;
    out.push(Object::Chain(ChainDoc { boundary: Boundary::Open, coefficients: vec![h] }).into());
    Ok(out)
}

struct ScratchDir(PathBuf);

impl ScratchDir {
    fn new() -> Result<Self, String> {
        use std::sync::atomic::{AtomicUsize, Ordering};
        static COUNTER: AtomicUsize = AtomicUsize::new(0);
        let k = COUNTER.fetch_add(1, Ordering::Relaxed);
        let p = std::env::temp_dir().join(format!("yb-suite-{}-{k}", std::process::id()));
        std::fs::create_dir_all(&p).map_err(err("scratch dir"))?;
        Ok(Self(p))
    }

    fn path(&self, name: &str) -> String {
        self.0.join(name).to_string_lossy().into_owned()
    }
}

impl Drop for ScratchDir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn yb(args: &[&str]) -> i32 {
    let mut out = Vec::new();
    let mut errs = Vec::new();
    crate::run(std::iter::once("yb").chain(args.iter().copied()), &mut out, &mut errs)
}

/// A matrix that fails the constant YBE.
pub fn not_a_solution() -> TensorMatrix<Rational> {
    let u = |i, j| TensorMatrix::<Rational>::unit(2, i, j);
    let he = u(1, 1).sub(&u(2, 2)).kron(&u(1, 2)).expect("same site");
    TensorMatrix::identity(2, 2).add(&he).add(&he.swap_factors().expect("2 legs"))
}

fn expect_exit(args: &[&str], code: i32) -> Result<(), String> {
    let got = yb(args);
    ensure(got == code, || format!("`yb {}` exited {got}, expected {code}", args.join(" ")))
}

fn cli() -> CheckResult {
    let objects = sample_objects()?;
    for o in &objects {
        round_trip(o.clone())?;
    }
    let dir = ScratchDir::new()?;
    let (r, rs, bad, rep) = (dir.path("R.yb"), dir.path("Rs.yb"), dir.path("NotASolution.yb"), dir.path("report.yb"));
    expect_exit(&["build", "example1-R", "--n", "3", "--out", &r], 0)?;
    expect_exit(&["verify", "ybe", "--constant", "--in", &r], 0)?;
    expect_exit(&["build", "baxterize", "--in", &r, "--out", &rs], 0)?;
    expect_exit(&["verify", "ybe", "--spectral", "--in", &rs], 0)?;
    std::fs::write(&bad, Object::matrix(&not_a_solution()).encode()).map_err(err("write"))?;
    expect_exit(&["verify", "ybe", "--constant", "--in", &bad, "--report", &rep], 1)?;
    let text = std::fs::read_to_string(Path::new(&rep)).map_err(err("report"))?;
    match decode(&text).map_err(err("report"))? {
        AnyObject::Q(Object::Report(d)) if !d.report.passed && d.report.witness.is_some() => {}
        _ => return Err("failure report lacks a witness".into()),
    }
    Ok(format!("{} objects round-tripped, 3 command sequences", objects.len()))
}
