//! Argument grammar and command dispatch.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use yb_core::frobenius::{check_cocycle, cocycle_from_functional, example1_pair, r_from_cocycle, CocycleMatrix};
use yb_core::solutions::{
    apply_twist, apply_twist_spectral, baxterize, example1_big_r, example1_r, example2_solution, jordanian_family,
    so_jordanian_data, yangian_sl_r, yangian_so_r, Realization,
};
use yb_core::spin_chain::{
    calibrate, check_commutation, derive_hamiltonian, remark_hamiltonian, transfer_matrix, Boundary, ChainSpec,
};
use yb_core::tensor::{structure_op, StructureKind};
use yb_core::verify::{
    check_classical_limit, check_commutation_coeffs, check_cybe, check_regularity, check_unitarity_constant,
    check_unitarity_spectral, check_ybe_constant, check_ybe_spectral, CybeMode, GridOptions,
};
use yb_core::{Poly, QExt, Rational, SpectralRMatrix, TensorMatrix, VerificationReport};

use crate::format::{decode, AnyObject, ChainDoc, Object, ReportDoc, Scalar};
use crate::suite;

#[derive(Debug, Parser)]
#[command(name = "yb", version, about = "Exact Yang-Baxter constructions and verifiers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a named object and write it as a .yb file.
    Build {
        #[arg(value_enum)]
        object: BuildTarget,
        #[command(flatten)]
        params: Params,
    },
    /// Run a verifier on a .yb file.
    Verify {
        #[arg(value_enum)]
        identity: VerifyTarget,
        #[command(flatten)]
        params: Params,
    },
    /// Spin-chain operators and checks.
    Chain {
        #[arg(value_enum)]
        action: ChainTarget,
        #[command(flatten)]
        params: Params,
    },
    /// Run the acceptance criteria.
    Suite {
        /// Run every criterion.
        #[arg(long)]
        all: bool,
        /// Run a single criterion by number.
        #[arg(long, conflicts_with = "all")]
        criterion: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BuildTarget {
    Permutation,
    #[value(name = "K")]
    K,
    Casimir,
    #[value(name = "example1-r")]
    Example1SmallR,
    #[value(name = "example1-R")]
    Example1BigR,
    Baxterize,
    YangianSl,
    YangianSo,
    Jordanian,
    Example2,
    Twist,
    FrobeniusR,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    Cybe,
    Ybe,
    Unitarity,
    Regularity,
    ClassicalLimit,
    Cocycle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChainTarget {
    Hamiltonian,
    Derive,
    Transfer,
    Commute,
    Calibrate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum BoundaryArg {
    #[default]
    Periodic,
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum RealizationArg {
    Skew,
    #[default]
    Antidiag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum AlgebraArg {
    Sl,
    #[default]
    So,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum PartArg {
    /// `(1 − ξ e⊗h)(1 + ξ h⊗e)` in the variable `xi`.
    #[default]
    Family,
    /// `h⊗e − e⊗h`
    R0,
    /// `1 + h⊗e`
    F0,
}

#[derive(Debug, Clone, Args, Default)]
pub struct Params {
    /// Site dimension of sl(n) objects.
    #[arg(long = "n")]
    pub n: Option<usize>,
    /// Site dimension of o(N) objects.
    #[arg(long = "N")]
    pub big_n: Option<usize>,
    /// Deformation parameter, as an integer or fraction.
    #[arg(long)]
    pub xi: Option<String>,
    /// Twist-side deformation parameter.
    #[arg(long)]
    pub tau: Option<String>,
    #[arg(long)]
    pub sites: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub boundary: BoundaryArg,
    #[arg(long, value_enum, default_value_t)]
    pub realization: RealizationArg,
    /// Casimir flavour for `build casimir`.
    #[arg(long, value_enum, default_value_t)]
    pub algebra: AlgebraArg,
    /// Component for `build jordanian`.
    #[arg(long, value_enum, default_value_t)]
    pub part: PartArg,
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Second operand: the r-matrix for classical-limit, the other operator for commute.
    #[arg(long)]
    pub against: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub grid_margin: usize,
    /// Constant-mode check.
    #[arg(long, conflicts_with_all = ["spectral", "rational"])]
    pub constant: bool,
    /// Spectral-mode YBE.
    #[arg(long)]
    pub spectral: bool,
    /// Rational-mode CYBE with Ω = P.
    #[arg(long)]
    pub rational: bool,
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1; the report has already been written.
    Verification,
    /// Exit 2.
    Usage(String),
}

impl From<yb_core::Error> for Failure {
    fn from(e: yb_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<crate::format::FormatError> for Failure {
    fn from(e: crate::format::FormatError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let mut io = Io { out, err };
    let res = match cli.command {
        Command::Build { object, params } => build(object, &params, &mut io),
        Command::Verify { identity, params } => verify(identity, &params, &mut io),
        Command::Chain { action, params } => chain(action, &params, &mut io),
        Command::Suite { all, criterion } => run_suite(all, criterion, &mut io),
    };
    match res {
        Ok(()) => 0,
        Err(Failure::Verification) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(io.err, "error: {msg}");
            2
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Integer or fraction, not necessarily reduced.
pub fn parse_rational_arg(s: &str) -> Result<Rational, Failure> {
    let bad = || usage(format!("invalid rational {s:?}"));
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
    let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| usage(format!("missing --{flag}")))
}

fn need_path<'a>(v: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path, Failure> {
    v.as_deref().ok_or_else(|| usage(format!("missing --{flag}")))
}

fn read_object(path: &Path) -> Result<AnyObject, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    decode(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(io: &mut Io, path: &Option<PathBuf>, text: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => io.out.write_all(text.as_bytes()).map_err(|e| usage(e.to_string())),
    }
}

fn realization(p: &Params) -> Realization {
    match p.realization {
        RealizationArg::Skew => Realization::Skew,
        RealizationArg::Antidiag => Realization::Antidiag,
    }
}

fn boundary(p: &Params) -> Boundary {
    match p.boundary {
        BoundaryArg::Periodic => Boundary::Periodic,
        BoundaryArg::Open => Boundary::Open,
    }
}

fn optional_rational(s: &Option<String>) -> Result<Option<Rational>, Failure> {
    s.as_deref().map(parse_rational_arg).transpose()
}

fn so_dim(p: &Params) -> Result<usize, Failure> {
    p.big_n.or(p.n).ok_or_else(|| usage("missing --N"))
}

/// Lifts a rational object into `Q(i, √2)`.
pub fn lift_object(o: &Object<Rational>) -> Result<Object<QExt>, Failure> {
    let lift_poly =
        |p: &Poly<Rational>| Poly::from_terms(p.vars(), p.terms().map(|(e, c)| (e, QExt::from_base(c.clone()))));
    Ok(match o {
        Object::Matrix(m) => Object::Matrix(m.map(lift_poly)),
        Object::Spectral(r) => {
            Object::Spectral(SpectralRMatrix::new(r.numerator().map(lift_poly), lift_poly(r.denominator()), r.label())?)
        }
        Object::Chain(c) => Object::Chain(ChainDoc {
            boundary: c.boundary,
            coefficients: c.coefficients.iter().map(|m| m.map(|x| QExt::from_base(x.clone()))).collect(),
        }),
        Object::Report(_) => return Err(usage("reports cannot be lifted")),
    })
}

fn constant_of<F: Scalar>(m: &TensorMatrix<Poly<F>>) -> Result<TensorMatrix<F>, Failure> {
    if !m.variables().is_empty() {
        return Err(usage(format!("expected a constant matrix, found variables {:?}", m.variables())));
    }
    Ok(m.map(|p| p.constant_term()))
}

fn build(target: BuildTarget, p: &Params, io: &mut Io) -> Outcome {
    let obj: AnyObject = match target {
        BuildTarget::Permutation => {
            let n = need(p.n.or(p.big_n), "n")?;
            Object::matrix(&structure_op::<Rational>(StructureKind::P, n, &TensorMatrix::identity(n, 1))?).into()
        }
        BuildTarget::K => {
            let n = so_dim(p)?;
            let form = realization(p).form::<Rational>(n);
            Object::matrix(&structure_op(StructureKind::K, n, &form)?).into()
        }
        BuildTarget::Casimir => {
            let (kind, n) = match p.algebra {
                AlgebraArg::Sl => (StructureKind::CasimirSl, need(p.n.or(p.big_n), "n")?),
                AlgebraArg::So => (StructureKind::CasimirSo, so_dim(p)?),
            };
            let form = realization(p).form::<Rational>(n);
            Object::matrix(&structure_op(kind, n, &form)?).into()
        }
        BuildTarget::Example1SmallR => {
            let xi = optional_rational(&p.xi)?;
            Object::matrix(&example1_r(need(p.n, "n")?, xi.as_ref())?).into()
        }
        BuildTarget::Example1BigR => {
            let xi = optional_rational(&p.xi)?;
            Object::matrix(&example1_big_r(need(p.n, "n")?, xi.as_ref())?).into()
        }
        BuildTarget::Baxterize => match read_object(need_path(&p.input, "in")?)? {
            AnyObject::Q(Object::Matrix(m)) => Object::Spectral(baxterize(&constant_of(&m)?)?).into(),
            AnyObject::Ext(Object::Matrix(m)) => Object::Spectral(baxterize(&constant_of(&m)?)?).into(),
            _ => return Err(usage("baxterize needs a constant matrix")),
        },
        BuildTarget::YangianSl => Object::Spectral(yangian_sl_r::<Rational>(need(p.n, "n")?)?).into(),
        BuildTarget::YangianSo => Object::Spectral(yangian_so_r::<Rational>(so_dim(p)?, realization(p))?).into(),
        BuildTarget::Jordanian => {
            let n = so_dim(p)?;
            match realization(p) {
                Realization::Antidiag => jordanian_part::<Rational>(n, Realization::Antidiag, p.part)?.into(),
                Realization::Skew => jordanian_part::<QExt>(n, Realization::Skew, p.part)?.into(),
            }
        }
        BuildTarget::Example2 => {
            let n = so_dim(p)?;
            match realization(p) {
                Realization::Antidiag => {
                    Object::Spectral(example2_solution::<Rational>(n, Realization::Antidiag)?).into()
                }
                Realization::Skew => Object::Spectral(example2_solution::<QExt>(n, Realization::Skew)?).into(),
            }
        }
        BuildTarget::Twist => {
            let input = read_object(need_path(&p.input, "in")?)?;
            match (realization(p), input) {
                (Realization::Antidiag, AnyObject::Q(o)) => twist_object(&o, Realization::Antidiag)?.into(),
                (Realization::Antidiag, AnyObject::Ext(o)) => twist_object(&o, Realization::Antidiag)?.into(),
                (Realization::Skew, AnyObject::Q(o)) => twist_object(&lift_object(&o)?, Realization::Skew)?.into(),
                (Realization::Skew, AnyObject::Ext(o)) => twist_object(&o, Realization::Skew)?.into(),
            }
        }
        BuildTarget::FrobeniusR => {
            let (basis, f) = example1_pair::<Rational>(need(p.n, "n")?)?;
            let b = cocycle_from_functional(&basis, &f)?;
            Object::matrix(&r_from_cocycle(&basis, &b)?).into()
        }
    };
    emit(io, &p.out, &obj.encode())
}

fn jordanian_part<F: Scalar>(n: usize, r: Realization, part: PartArg) -> Result<Object<F>, Failure> {
    Ok(match part {
        PartArg::Family => Object::Matrix(jordanian_family::<F>(n, r)?),
        PartArg::R0 => Object::matrix(&so_jordanian_data::<F>(n, r)?.r0),
        PartArg::F0 => Object::matrix(&so_jordanian_data::<F>(n, r)?.f0),
    })
}

fn twist_object<F: Scalar>(o: &Object<F>, r: Realization) -> Result<Object<F>, Failure> {
    let n = match o {
        Object::Matrix(m) => m.site_dim(),
        Object::Spectral(s) => s.site_dim(),
        _ => return Err(usage("twist needs a matrix or spectral R-matrix")),
    };
    let f0 = so_jordanian_data::<F>(n, r)?.f0;
    Ok(match o {
        Object::Matrix(m) => Object::matrix(&apply_twist(&constant_of(m)?, &f0)?),
        Object::Spectral(s) => Object::Spectral(apply_twist_spectral(s, &f0)?),
        _ => unreachable!(),
    })
}

fn describe<F: Scalar>(rep: &VerificationReport<F>) -> String {
    let mut s = format!("{}: {}", rep.identity, if rep.passed { "passed" } else { "FAILED" });
    if let Some(w) = &rep.witness {
        s += &format!(" (entry ({}, {}), monomial {:?}, value {})", w.row, w.col, w.monomial, w.value);
    }
    if let Some(f) = &rep.scalar_factor {
        s += &format!(" factor {f}");
    }
    if let Some((a, b)) = rep.grid_size {
        s += &format!(" grid {a}x{b}");
    }
    s
}

fn write_report<F: Scalar>(
    io: &mut Io,
    p: &Params,
    site_dim: usize,
    legs: usize,
    report: VerificationReport<F>,
) -> Outcome {
    let _ = writeln!(io.err, "{}", describe(&report));
    let passed = report.passed;
    let doc: Object<F> = Object::Report(ReportDoc { site_dim, legs, report });
    emit(io, &p.report, &doc.encode())?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn opts(p: &Params) -> GridOptions {
    GridOptions { margin: p.grid_margin }
}

fn verify(target: VerifyTarget, p: &Params, io: &mut Io) -> Outcome {
    if target == VerifyTarget::Cocycle {
        return verify_cocycle(p, io);
    }
    match read_object(need_path(&p.input, "in")?)? {
        AnyObject::Q(o) => verify_object(target, &o, p, io),
        AnyObject::Ext(o) => verify_object(target, &o, p, io),
    }
}

fn verify_object<F: Coerce>(target: VerifyTarget, o: &Object<F>, p: &Params, io: &mut Io) -> Outcome {
    let (site_dim, legs) = match o {
        Object::Matrix(m) => (m.site_dim(), m.legs()),
        Object::Spectral(r) => (r.site_dim(), 2),
        _ => return Err(usage("verifiers need a matrix or spectral R-matrix")),
    };
    let report = match (target, o) {
        (VerifyTarget::Cybe, Object::Matrix(m)) => {
            let r = constant_of(m)?;
            if p.rational {
                let omega = yb_core::tensor::permutation_op::<F>(r.site_dim());
                check_cybe(&r, Some(&omega), CybeMode::Rational)?
            } else {
                check_cybe(&r, None, CybeMode::Constant)?
            }
        }
        (VerifyTarget::Ybe, Object::Matrix(m)) if !p.spectral => check_ybe_constant(&constant_of(m)?)?,
        (VerifyTarget::Ybe, Object::Matrix(m)) => check_ybe_spectral(m, opts(p))?,
        (VerifyTarget::Ybe, Object::Spectral(r)) if !p.constant => check_ybe_spectral(r.numerator(), opts(p))?,
        (VerifyTarget::Unitarity, Object::Matrix(m)) => check_unitarity_constant(&constant_of(m)?)?,
        (VerifyTarget::Unitarity, Object::Spectral(r)) => check_unitarity_spectral(r.numerator())?,
        (VerifyTarget::Regularity, Object::Spectral(r)) => check_regularity(r.numerator())?,
        (VerifyTarget::ClassicalLimit, Object::Matrix(m)) => {
            let vars = m.variables();
            let var = match vars.as_slice() {
                [v] => v.clone(),
                _ => return Err(usage("classical-limit needs a one-parameter family")),
            };
            let r = match F::coerce(read_object(need_path(&p.against, "against")?)?)? {
                Object::Matrix(r) => constant_of(&r)?,
                _ => return Err(usage("--against must be a constant matrix")),
            };
            check_classical_limit(m, &var, &r)?
        }
        (t, _) => return Err(usage(format!("{t:?} does not apply to this {:?} object", o.kind()))),
    };
    write_report(io, p, site_dim, legs, report)
}

/// Moves a decoded object into the field `Self`, lifting rationals if needed.
pub trait Coerce: Scalar {
    fn coerce(o: AnyObject) -> Result<Object<Self>, Failure>;
}

impl Coerce for Rational {
    fn coerce(o: AnyObject) -> Result<Object<Self>, Failure> {
        match o {
            AnyObject::Q(x) => Ok(x),
            AnyObject::Ext(_) => Err(usage("operand has entries outside Q")),
        }
    }
}

impl Coerce for QExt {
    fn coerce(o: AnyObject) -> Result<Object<Self>, Failure> {
        match o {
            AnyObject::Q(x) => lift_object(&x),
            AnyObject::Ext(x) => Ok(x),
        }
    }
}

fn verify_cocycle(p: &Params, io: &mut Io) -> Outcome {
    let (basis, f) = example1_pair::<Rational>(need(p.n, "n")?)?;
    let b = match &p.input {
        None => cocycle_from_functional(&basis, &f)?,
        Some(path) => match read_object(path)? {
            AnyObject::Q(Object::Matrix(m)) => CocycleMatrix::new(constant_of(&m)?.into_matrix())?,
            _ => return Err(usage("cocycle input must be a rational matrix")),
        },
    };
    let chk = check_cocycle(&basis, &b)?;
    let _ = writeln!(
        io.err,
        "skew: {}, determinant: {}, nondegenerate: {}",
        chk.skew,
        chk.determinant,
        chk.nondegenerate()
    );
    let ok = chk.skew && chk.nondegenerate();
    let res = write_report(io, p, basis.dim(), 1, chk.report);
    match res {
        Ok(()) if !ok => Err(Failure::Verification),
        other => other,
    }
}

fn chain_spec(p: &Params, deformation: Rational) -> Result<ChainSpec<Rational>, Failure> {
    Ok(ChainSpec::new(need(p.sites, "sites")?, boundary(p), deformation)?)
}

fn read_spectral(p: &Params) -> Result<SpectralRMatrix<Rational>, Failure> {
    match read_object(need_path(&p.input, "in")?)? {
        AnyObject::Q(Object::Spectral(r)) => Ok(r),
        AnyObject::Q(Object::Matrix(m)) => Ok(SpectralRMatrix::polynomial(m, "input")?),
        _ => Err(usage("chain commands need a rational spectral R-matrix")),
    }
}

fn read_chain(path: &Path) -> Result<ChainDoc<Rational>, Failure> {
    match read_object(path)? {
        AnyObject::Q(Object::Chain(c)) => Ok(c),
        AnyObject::Q(Object::Matrix(m)) => {
            Ok(ChainDoc { boundary: Boundary::Periodic, coefficients: vec![constant_of(&m)?] })
        }
        _ => Err(usage(format!("{}: expected a rational chain operator", path.display()))),
    }
}

fn chain(action: ChainTarget, p: &Params, io: &mut Io) -> Outcome {
    let doc = match action {
        ChainTarget::Hamiltonian => {
            let xi = optional_rational(&p.xi)?.unwrap_or_else(Rational::zero);
            let spec = chain_spec(p, xi)?;
            ChainDoc { boundary: spec.boundary, coefficients: vec![remark_hamiltonian(&spec)?] }
        }
        ChainTarget::Derive => {
            let spec = chain_spec(p, Rational::zero())?;
            ChainDoc { boundary: spec.boundary, coefficients: vec![derive_hamiltonian(&read_spectral(p)?, &spec)?] }
        }
        ChainTarget::Transfer => {
            let spec = chain_spec(p, Rational::zero())?;
            let t = transfer_matrix(&read_spectral(p)?, &spec)?;
            ChainDoc { boundary: spec.boundary, coefficients: t.coefficients().to_vec() }
        }
        ChainTarget::Commute => {
            let a = read_chain(need_path(&p.input, "in")?)?;
            let b = read_chain(need_path(&p.against, "against")?)?;
            let report = check_commutation_coeffs("commutation", &a.coefficients, &b.coefficients, opts(p))?;
            let (n, l) = (a.coefficients[0].site_dim(), a.coefficients[0].legs());
            return write_report(io, p, n, l, report);
        }
        ChainTarget::Calibrate => {
            let tau = parse_rational_arg(p.tau.as_deref().ok_or_else(|| usage("missing --tau"))?)?;
            let sites = need(p.sites, "sites")?;
            let spec = ChainSpec::new(sites, Boundary::Periodic, tau.clone())?;
            let r = baxterize(&example1_big_r(2, Some(&tau))?)?;
            let hd = derive_hamiltonian(&r, &spec)?;
            let t = transfer_matrix(&r, &spec)?;
            let commutes = check_commutation(&hd, &t, opts(p))?.passed;
            return match calibrate(&hd, sites)? {
                Some(c) => {
                    let text = serde_json::to_string_pretty(&serde_json::json!({
                        "sites": sites,
                        "tau": c_text(&tau),
                        "xi_squared": c_text(&c.xi_squared),
                        "alpha": c_text(&c.alpha),
                        "beta": c_text(&c.beta),
                        "hamiltonian_commutes_with_transfer": commutes,
                    }))
                    .expect("json");
                    emit(io, &p.out, &(text + "\n"))?;
                    if commutes {
                        Ok(())
                    } else {
                        Err(Failure::Verification)
                    }
                }
                None => {
                    let _ = writeln!(io.err, "calibration: no exact solution");
                    Err(Failure::Verification)
                }
            };
        }
    };
    let obj: Object<Rational> = Object::Chain(doc);
    emit(io, &p.out, &obj.encode())
}

fn c_text(x: &Rational) -> serde_json::Value {
    x.encode()
}

fn run_suite(all: bool, criterion: Option<usize>, io: &mut Io) -> Outcome {
    let selected: Vec<usize> = match (all, criterion) {
        (true, _) => suite::criteria().iter().map(|c| c.id).collect(),
        (false, Some(k)) => vec![k],
        (false, None) => return Err(usage("pass --all or --criterion <k>")),
    };
    let mut failed = 0;
    for id in selected {
        let c =
            suite::criteria().into_iter().find(|c| c.id == id).ok_or_else(|| usage(format!("no criterion {id}")))?;
        let start = std::time::Instant::now();
        let res = (c.check)();
        let secs = start.elapsed().as_secs_f64();
        match &res {
            Ok(detail) => {
                let _ = writeln!(io.out, "criterion {id} [{}]: PASS ({secs:.2} s) {detail}", c.name);
            }
            Err(msg) => {
                failed += 1;
                let _ = writeln!(io.out, "criterion {id} [{}]: FAIL ({secs:.2} s): {msg}", c.name);
            }
        }
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
