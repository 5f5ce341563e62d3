//! Exact checkers for the identities satisfied by classical and quantum
//! R-matrices.
//!
//! Polynomial identities in the difference variables `a = u₁ − u₂` and
//! `b = u₂ − u₃` are decided either by exact bivariate arithmetic on matrix
//! coefficients ([`MatPoly`]) or by evaluation on an integer grid whose side
//! strictly exceeds the per-variable degree bound. A polynomial of degree
//! `≤ d` in each of two variables that vanishes on a `(d+1)×(d+1)` grid is
//! identically zero, so both routes are proofs.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{Poly, Var};
use crate::scalar::{Field, Ring};
use crate::spectral::{SpectralRMatrix, SPECTRAL_VAR};
use crate::tensor::{permutation_op, LegPair, TensorMatrix};

/// Location and value of the first nonzero residual entry.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<F> {
    pub row: usize,
    pub col: usize,
    /// Exponents of the residual monomial in the report's variables.
    pub monomial: (u32, u32),
    pub value: F,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport<F> {
    pub identity: String,
    pub passed: bool,
    pub witness: Option<Witness<F>>,
    /// Scalar found for identities that hold up to a factor.
    pub scalar_factor: Option<Poly<F>>,
    /// Side lengths of the evaluation grid, when one was used.
    pub grid_size: Option<(usize, usize)>,
}

impl<F: Field> VerificationReport<F> {
    pub fn pass(identity: impl Into<String>) -> Self {
        Self { identity: identity.into(), passed: true, witness: None, scalar_factor: None, grid_size: None }
    }

    pub fn fail(identity: impl Into<String>, witness: Witness<F>) -> Self {
        assert!(!witness.value.is_zero(), "failure witness must be nonzero");
        Self { identity: identity.into(), passed: false, witness: Some(witness), scalar_factor: None, grid_size: None }
    }

    /// Passes iff the constant residual is zero.
    pub fn from_residual(identity: impl Into<String>, residual: &TensorMatrix<F>) -> Self {
        match residual.matrix().first_nonzero() {
            None => Self::pass(identity),
            Some((row, col, v)) => Self::fail(identity, Witness { row, col, monomial: (0, 0), value: v.clone() }),
        }
    }

    /// Passes iff the polynomial residual is zero.
    pub fn from_poly_residual(identity: impl Into<String>, residual: &MatPoly<F>) -> Self {
        match residual.first_nonzero() {
            None => Self::pass(identity),
            Some(w) => Self::fail(identity, w),
        }
    }

    fn with_factor(mut self, f: Poly<F>) -> Self {
        self.scalar_factor = Some(f);
        self
    }

    fn with_grid(mut self, g: (usize, usize)) -> Self {
        self.grid_size = Some(g);
        self
    }
}

/// Polynomial in two variables with constant matrix coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct MatPoly<F> {
    dim: usize,
    site_dim: usize,
    legs: usize,
    terms: BTreeMap<(u32, u32), TensorMatrix<F>>,
}

impl<F: Field> MatPoly<F> {
    pub fn zero_like(m: &TensorMatrix<F>) -> Self {
        Self { dim: m.dim(), site_dim: m.site_dim(), legs: m.legs(), terms: BTreeMap::new() }
    }

    pub fn constant(m: TensorMatrix<F>) -> Self {
        Self::from_terms(&m.clone(), [((0, 0), m)])
    }

    /// Builds from `(exponents, coefficient)` pairs; `like` fixes the shape.
    pub fn from_terms(like: &TensorMatrix<F>, terms: impl IntoIterator<Item = ((u32, u32), TensorMatrix<F>)>) -> Self {
        let mut p = Self::zero_like(like);
        for (e, m) in terms {
            p.add_term(e, &m);
        }
        p
    }

    fn add_term(&mut self, e: (u32, u32), m: &TensorMatrix<F>) {
        if m.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&e) {
            Some(old) => old.add(m),
            None => m.clone(),
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, m) in &o.terms {
            out.add_term(*e, m);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for m in out.terms.values_mut() {
            *m = m.neg();
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self { terms: BTreeMap::new(), ..self.clone() };
        for ((i, j), x) in &self.terms {
            for ((k, l), y) in &o.terms {
                out.add_term((i + k, j + l), &x.mul(y));
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// Multiplies by the scalar polynomial `Σ c_{ij} a^i b^j` given as terms.
    pub fn scale_by(&self, poly: &[((u32, u32), F)]) -> Self {
        let mut out = Self { terms: BTreeMap::new(), ..self.clone() };
        for ((i, j), x) in &self.terms {
            for ((k, l), c) in poly {
                out.add_term((i + k, j + l), &x.scale(c));
            }
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), TensorMatrix<F>> {
        &self.terms
    }

    /// Lexicographically first `(row, col, monomial)` with nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<Witness<F>> {
        for r in 0..self.dim {
            for c in 0..self.dim {
                // BTreeMap iterates monomials in lexicographic order
                for (e, m) in &self.terms {
                    let v = m.get(r, c);
                    if !v.is_zero() {
                        return Some(Witness { row: r, col: c, monomial: *e, value: v.clone() });
                    }
                }
            }
        }
        None
    }

    /// Converts back to a matrix with polynomial entries in `vars`.
    pub fn to_poly_matrix(&self, vars: (&str, &str)) -> TensorMatrix<Poly<F>> {
        let vs = [Var::new(vars.0), Var::new(vars.1)];
        let mut out = TensorMatrix::<Poly<F>>::zeros(self.site_dim, self.legs);
        for (e, m) in &self.terms {
            let mono = Poly::from_terms(&vs, [(*e, F::one())]);
            out = out.add(&m.map(|x| Poly::constant(x.clone()) * mono.clone()));
        }
        out
    }
}

/// Mode of the classical Yang–Baxter check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CybeMode {
    /// `[r¹²,r¹³] + [r¹²,r²³] + [r¹³,r²³] = 0`
    Constant,
    /// The same equation for `X(u,v) = Ω/(u−v) + r`.
    Rational,
}

fn three_legs<F: Field>(r: &TensorMatrix<F>) -> Result<[TensorMatrix<F>; 3]> {
    Ok([r.embed_pair(LegPair::P12)?, r.embed_pair(LegPair::P13)?, r.embed_pair(LegPair::P23)?])
}

/// Constant CYBE residual `[r¹²,r¹³] + [r¹²,r²³] + [r¹³,r²³]`.
pub fn cybe_residual<F: Field>(r: &TensorMatrix<F>) -> Result<TensorMatrix<F>> {
    let [r12, r13, r23] = three_legs(r)?;
    Ok(r12.commutator(&r13).add(&r12.commutator(&r23)).add(&r13.commutator(&r23)))
}

/// CYBE for `X(u₁,u₂) = Ω/(u₁−u₂) + r` with denominators
/// `(u₁−u₂)(u₁−u₃)(u₂−u₃)` cleared, as a polynomial identity in `a, b`.
pub fn rational_cybe_residual<F: Field>(r: &TensorMatrix<F>, omega: &TensorMatrix<F>) -> Result<MatPoly<F>> {
    if r.site_dim() != omega.site_dim() || r.legs() != 2 || omega.legs() != 2 {
        return Err(Error::Shape("r and Ω must be two-leg operators on the same site".into()));
    }
    let [r12, r13, r23] = three_legs(r)?;
    let [o12, o13, o23] = three_legs(omega)?;
    let a12 = MatPoly::from_terms(&r12, [((0, 0), o12), ((1, 0), r12.clone())]);
    let a13 = MatPoly::from_terms(&r13, [((0, 0), o13), ((1, 0), r13.clone()), ((0, 1), r13.clone())]);
    let a23 = MatPoly::from_terms(&r23, [((0, 0), o23), ((0, 1), r23.clone())]);
    let one = F::one();
    let b = [((0, 1), one.clone())];
    let a_plus_b = [((1, 0), one.clone()), ((0, 1), one.clone())];
    let a = [((1, 0), one)];
    Ok(a12
        .commutator(&a13)
        .scale_by(&b)
        .add(&a12.commutator(&a23).scale_by(&a_plus_b))
        .add(&a13.commutator(&a23).scale_by(&a)))
}

pub fn check_cybe<F: Field>(
    r: &TensorMatrix<F>,
    omega: Option<&TensorMatrix<F>>,
    mode: CybeMode,
) -> Result<VerificationReport<F>> {
    match mode {
        CybeMode::Constant => Ok(VerificationReport::from_residual("cybe-constant", &cybe_residual(r)?)),
        CybeMode::Rational => {
            let omega = omega.ok_or_else(|| Error::Shape("rational CYBE needs the invariant two-tensor Ω".into()))?;
            let res = rational_cybe_residual(r, omega)?;
            Ok(VerificationReport::from_poly_residual("cybe-rational", &res))
        }
    }
}

/// Constant YBE residual `R¹²R¹³R²³ − R²³R¹³R¹²`.
pub fn ybe_residual<F: Field>(r: &TensorMatrix<F>) -> Result<TensorMatrix<F>> {
    let [r12, r13, r23] = three_legs(r)?;
    Ok(r12.mul(&r13).mul(&r23).sub(&r23.mul(&r13).mul(&r12)))
}

pub fn check_ybe_constant<F: Field>(r: &TensorMatrix<F>) -> Result<VerificationReport<F>> {
    Ok(VerificationReport::from_residual("ybe-constant", &ybe_residual(r)?))
}

/// Options for grid-based identity checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridOptions {
    /// Extra points per side beyond the minimum `degree + 1`.
    pub margin: usize,
}

impl Default for GridOptions {
    fn default() -> Self {
        Self { margin: 1 }
    }
}

fn spectral_coefficients<F: Field>(m: &TensorMatrix<Poly<F>>) -> Result<Vec<TensorMatrix<F>>> {
    let vars = m.variables();
    match vars.as_slice() {
        [] => Ok(vec![m.map(|p| p.constant_term())]),
        [v] => Ok(m.coefficients(v)),
        _ => Err(Error::TooManyVariables(vars)),
    }
}

fn eval_coeffs<F: Field>(coeffs: &[TensorMatrix<F>], x: &F) -> TensorMatrix<F> {
    // Horner
    let mut acc = TensorMatrix::zeros(coeffs[0].site_dim(), coeffs[0].legs());
    for c in coeffs.iter().rev() {
        acc = acc.scale(x).add(c);
    }
    acc
}

/// `Σ_k (a+b)^k C_k` and friends as matrix polynomials in `(a, b)`.
fn spectral_in<F: Field>(coeffs: &[TensorMatrix<F>], pair: LegPair) -> Result<MatPoly<F>> {
    let embedded: Vec<TensorMatrix<F>> = coeffs.iter().map(|c| c.embed_pair(pair)).collect::<Result<_>>()?;
    let mut out = MatPoly::zero_like(&embedded[0]);
    for (k, c) in embedded.iter().enumerate() {
        let k = k as u32;
        match pair {
            LegPair::P12 => out.add_term((k, 0), c),
            LegPair::P23 => out.add_term((0, k), c),
            LegPair::P13 => {
                // (a + b)^k = Σ binom(k, j) a^j b^(k−j)
                let mut binom = F::one();
                for j in 0..=k {
                    out.add_term((j, k - j), &c.scale(&binom));
                    binom = binom.mul_ref(&F::from_int((k - j) as i64)) / F::from_int((j + 1) as i64);
                }
            }
        }
    }
    Ok(out)
}

/// Exact bivariate residual of the spectral YBE
/// `R¹²(a) R¹³(a+b) R²³(b) − R²³(b) R¹³(a+b) R¹²(a)`.
pub fn spectral_ybe_residual<F: Field>(r: &TensorMatrix<Poly<F>>) -> Result<MatPoly<F>> {
    let coeffs = spectral_coefficients(r)?;
    let r12 = spectral_in(&coeffs, LegPair::P12)?;
    let r13 = spectral_in(&coeffs, LegPair::P13)?;
    let r23 = spectral_in(&coeffs, LegPair::P23)?;
    Ok(r12.mul(&r13).mul(&r23).sub(&r23.mul(&r13).mul(&r12)))
}

/// Spectral YBE by exact bivariate arithmetic.
pub fn check_ybe_spectral_exact<F: Field>(r: &TensorMatrix<Poly<F>>) -> Result<VerificationReport<F>> {
    Ok(VerificationReport::from_poly_residual("ybe-spectral", &spectral_ybe_residual(r)?))
}

/// Spectral YBE by evaluation on a conclusive integer grid. On failure the
/// witness comes from the exact residual.
pub fn check_ybe_spectral<F: Field>(r: &TensorMatrix<Poly<F>>, opts: GridOptions) -> Result<VerificationReport<F>> {
    let coeffs = spectral_coefficients(r)?;
    let d = coeffs.len() - 1;
    // each side has degree ≤ 2d in a and in b
    let bound = 2 * d;
    let side = bound + 1 + opts.margin;
    assert!(side > bound, "grid must exceed the degree bound");
    // R at 0 .. 2(side−1), embedded on each pair
    let values: Vec<[TensorMatrix<F>; 3]> = (0..(2 * side - 1))
        .into_par_iter()
        .map(|t| three_legs(&eval_coeffs(&coeffs, &F::from_int(t as i64))))
        .collect::<Result<_>>()?;
    let points: Vec<(usize, usize)> = (0..side).flat_map(|x| (0..side).map(move |y| (x, y))).collect();
    let bad = points.par_iter().position_first(|&(x, y)| {
        let r12 = &values[x][0];
        let r13 = &values[x + y][1];
        let r23 = &values[y][2];
        r12.mul(r13).mul(r23) != r23.mul(r13).mul(r12)
    });
    let report = match bad {
        None => VerificationReport::pass("ybe-spectral"),
        Some(_) => {
            let res = spectral_ybe_residual(r)?;
            assert!(!res.is_zero(), "grid and exact verdicts disagree");
            VerificationReport::from_poly_residual("ybe-spectral", &res)
        }
    };
    Ok(report.with_grid((side, side)))
}

pub fn check_ybe_spectral_r<F: Field>(r: &SpectralRMatrix<F>, opts: GridOptions) -> Result<VerificationReport<F>> {
    check_ybe_spectral(r.numerator(), opts)
}

fn scalar_multiple_residual<T: Ring>(m: &TensorMatrix<T>, base: &TensorMatrix<T>) -> (T, TensorMatrix<T>) {
    // base[0][0] = 1 for both the identity and P
    let c = m.get(0, 0).clone();
    let res = m.sub(&base.scale(&c));
    (c, res)
}

/// Constant unitarity `R²¹R = c·1`; the scalar `c` is reported.
pub fn check_unitarity_constant<F: Field>(r: &TensorMatrix<F>) -> Result<VerificationReport<F>> {
    let prod = r.swap_factors()?.mul(r);
    let id = TensorMatrix::identity(r.site_dim(), 2);
    let (c, res) = scalar_multiple_residual(&prod, &id);
    let report = if c.is_zero() {
        VerificationReport::from_residual("unitarity", &prod.sub(&id))
    } else {
        VerificationReport::from_residual("unitarity", &res)
    };
    Ok(report.with_factor(Poly::constant(c)))
}

/// Spectral unitarity `R¹²(u)R²¹(−u) = f(u)·1`; `f` is reported.
pub fn check_unitarity_spectral<F: Field>(r: &TensorMatrix<Poly<F>>) -> Result<VerificationReport<F>> {
    let vars = r.variables();
    let var = match vars.as_slice() {
        [] => SPECTRAL_VAR.to_string(),
        [v] => v.clone(),
        _ => return Err(Error::TooManyVariables(vars)),
    };
    let r21_neg = r.swap_factors()?.map(|p| p.negate_var(&var));
    let prod = r.mul(&r21_neg);
    let id = TensorMatrix::<Poly<F>>::identity(r.site_dim(), 2);
    let (f, res) = scalar_multiple_residual(&prod, &id);
    let res = if f.is_zero() { prod.sub(&id) } else { res };
    Ok(poly_matrix_report("unitarity-spectral", &res, &var).with_factor(f))
}

fn poly_matrix_report<F: Field>(identity: &str, res: &TensorMatrix<Poly<F>>, var: &str) -> VerificationReport<F> {
    let d = res.dim();
    for i in 0..d {
        for j in 0..d {
            let p = res.get(i, j);
            if let Some(((k, _), c)) = p.terms().next() {
                // univariate: exponent of `var` is the first slot
                let k = if p.vars().first().is_some_and(|v| v.name() == var) { k } else { 0 };
                return VerificationReport::fail(
                    identity,
                    Witness { row: i, col: j, monomial: (k, 0), value: c.clone() },
                );
            }
        }
    }
    VerificationReport::pass(identity)
}

/// Regularity `R(0) = c·P` with `c ≠ 0`; `c` is reported.
pub fn check_regularity<F: Field>(r: &TensorMatrix<Poly<F>>) -> Result<VerificationReport<F>> {
    let vars = r.variables();
    if vars.len() > 1 {
        return Err(Error::TooManyVariables(vars));
    }
    let r0 = r.eval_at(&F::zero());
    let p = permutation_op::<F>(r.site_dim());
    let (c, res) = scalar_multiple_residual(&r0, &p);
    let report = if c.is_zero() {
        VerificationReport::from_residual("regularity", &r0.sub(&p))
    } else {
        VerificationReport::from_residual("regularity", &res)
    };
    Ok(report.with_factor(Poly::constant(c)))
}

/// Checks that the first-order coefficient of the family `R(ξ)` in `var`
/// equals `r`. The family must be the identity at `ξ = 0`.
pub fn check_classical_limit<F: Field>(
    family: &TensorMatrix<Poly<F>>,
    var: &str,
    r: &TensorMatrix<F>,
) -> Result<VerificationReport<F>> {
    if family.site_dim() != r.site_dim() || family.legs() != r.legs() {
        return Err(Error::Shape("family and r differ in shape".into()));
    }
    let vars = family.variables();
    if vars.iter().any(|v| v != var) {
        return Err(Error::TooManyVariables(vars));
    }
    if !family.eval_at(&F::zero()).is_identity() {
        return Err(Error::NotIdentityAtZero);
    }
    let linear = family.coeff(var, 1);
    let res = linear.sub(r);
    Ok(match res.matrix().first_nonzero() {
        None => VerificationReport::pass("classical-limit"),
        Some((row, col, v)) => {
            VerificationReport::fail("classical-limit", Witness { row, col, monomial: (1, 0), value: v.clone() })
        }
    })
}

/// Checks `[A(x), B(y)] = 0` for families given by coefficient lists in two
/// independent variables, on a grid exceeding both degrees. On failure the
/// witness comes from the exact expansion `Σ x^j y^k [A_j, B_k]`.
pub fn check_commutation_coeffs<F: Field>(
    identity: &str,
    a: &[TensorMatrix<F>],
    b: &[TensorMatrix<F>],
    opts: GridOptions,
) -> Result<VerificationReport<F>> {
    let (fa, fb) = match (a.first(), b.first()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::Shape("empty coefficient list".into())),
    };
    if fa.site_dim() != fb.site_dim() || fa.legs() != fb.legs() {
        return Err(Error::Shape("operators act on different spaces".into()));
    }
    let side_a = a.len() + opts.margin;
    let side_b = b.len() + opts.margin;
    assert!(side_a > a.len() - 1 && side_b > b.len() - 1);
    let av: Vec<TensorMatrix<F>> =
        (0..side_a).into_par_iter().map(|x| eval_coeffs(a, &F::from_int(x as i64))).collect();
    let bv: Vec<TensorMatrix<F>> =
        (0..side_b).into_par_iter().map(|y| eval_coeffs(b, &F::from_int(y as i64))).collect();
    let points: Vec<(usize, usize)> = (0..side_a).flat_map(|x| (0..side_b).map(move |y| (x, y))).collect();
    let bad = points.par_iter().position_first(|&(x, y)| !av[x].commutator(&bv[y]).is_zero());
    let report = match bad {
        None => VerificationReport::pass(identity),
        Some(_) => {
            let mut res = MatPoly::zero_like(fa);
            for (j, aj) in a.iter().enumerate() {
                for (k, bk) in b.iter().enumerate() {
                    res.add_term((j as u32, k as u32), &aj.commutator(bk));
                }
            }
            VerificationReport::from_poly_residual(identity, &res)
        }
    };
    Ok(report.with_grid((side_a, side_b)))
}
