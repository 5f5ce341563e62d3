//! Matrices acting on tensor powers `(F^n)^{⊗ℓ}`.
//!
//! Composite indices are row-major: the basis vector `e_{i1} ⊗ … ⊗ e_{iℓ}`
//! (zero-based digits) sits at `((i1·n + i2)·n + …)·n + iℓ`, so leg 1 is the
//! most significant digit.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::scalar::{Field, Ring};

#[derive(Clone, PartialEq, Debug)]
pub struct TensorMatrix<T> {
    site_dim: usize,
    legs: usize,
    m: Matrix<T>,
}

/// Which pair of legs of a three-fold tensor product an operator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LegPair {
    P12,
    P13,
    P23,
}

impl LegPair {
    pub fn from_legs(i: usize, j: usize) -> Result<Self> {
        match (i, j) {
            (1, 2) => Ok(LegPair::P12),
            (1, 3) => Ok(LegPair::P13),
            (2, 3) => Ok(LegPair::P23),
            _ => Err(Error::InvalidPair(i, j)),
        }
    }

    fn positions(self) -> [usize; 2] {
        match self {
            LegPair::P12 => [0, 1],
            LegPair::P13 => [0, 2],
            LegPair::P23 => [1, 2],
        }
    }
}

fn checked_pow(n: usize, legs: usize) -> usize {
    n.checked_pow(legs as u32).expect("tensor dimension overflow")
}

impl<T: Ring> TensorMatrix<T> {
    pub fn new(site_dim: usize, legs: usize, m: Matrix<T>) -> Result<Self> {
        if site_dim == 0 || legs == 0 {
            return Err(Error::Shape("site dimension and leg count must be positive".into()));
        }
        let dim = checked_pow(site_dim, legs);
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::Shape(format!(
                "{}x{} matrix is not {site_dim}^{legs} = {dim} square",
                m.rows(),
                m.cols()
            )));
        }
        Ok(Self { site_dim, legs, m })
    }

    /// Single-leg operator from an `n×n` matrix.
    pub fn one_leg(m: Matrix<T>) -> Result<Self> {
        Self::new(m.rows(), 1, m)
    }

    pub fn identity(site_dim: usize, legs: usize) -> Self {
        Self { site_dim, legs, m: Matrix::identity(checked_pow(site_dim, legs)) }
    }

    pub fn zeros(site_dim: usize, legs: usize) -> Self {
        let d = checked_pow(site_dim, legs);
        Self { site_dim, legs, m: Matrix::zeros(d, d) }
    }

    /// Matrix unit `E_{ij}` on one leg, with 1-based indices.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        assert!((1..=n).contains(&i) && (1..=n).contains(&j), "matrix unit index out of range");
        Self { site_dim: n, legs: 1, m: Matrix::unit(n, i - 1, j - 1) }
    }

    pub fn site_dim(&self) -> usize {
        self.site_dim
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.m
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        self.m.get(i, j)
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    fn same_shape(&self, o: &Self, op: &str) {
        assert!(
            self.site_dim == o.site_dim && self.legs == o.legs,
            "{op}: shapes (n={}, legs={}) and (n={}, legs={}) differ",
            self.site_dim,
            self.legs,
            o.site_dim,
            o.legs
        );
    }

    fn with(&self, m: Matrix<T>) -> Self {
        Self { site_dim: self.site_dim, legs: self.legs, m }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_shape(o, "add");
        self.with(self.m.add(&o.m))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same_shape(o, "sub");
        self.with(self.m.sub(&o.m))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_shape(o, "mul");
        self.with(self.m.mul(&o.m))
    }

    pub fn neg(&self) -> Self {
        self.with(self.m.neg())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.with(self.m.scale(s))
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.same_shape(o, "commutator");
        self.with(self.m.commutator(&o.m))
    }

    pub fn transpose(&self) -> Self {
        self.with(self.m.transpose())
    }

    pub fn pow(&self, k: u32) -> Self {
        self.with(self.m.pow(k))
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> TensorMatrix<U> {
        TensorMatrix { site_dim: self.site_dim, legs: self.legs, m: self.m.map(f) }
    }

    /// `A ⊗ B`; leg counts add.
    pub fn kron(&self, o: &Self) -> Result<Self> {
        if self.site_dim != o.site_dim {
            return Err(Error::Shape(format!("kron of site dimensions {} and {}", self.site_dim, o.site_dim)));
        }
        Ok(Self { site_dim: self.site_dim, legs: self.legs + o.legs, m: self.m.kron(&o.m) })
    }

    /// Places this operator on the given (zero-based, distinct) legs of a
    /// `total`-leg space, acting as the identity elsewhere. `positions[k]` is
    /// where this operator's leg `k` goes.
    pub fn embed(&self, positions: &[usize], total: usize) -> Result<Self> {
        let n = self.site_dim;
        if positions.len() != self.legs {
            return Err(Error::Shape(format!("{} positions for a {}-leg operator", positions.len(), self.legs)));
        }
        let mut seen = vec![false; total];
        for &p in positions {
            if p >= total || seen[p] {
                return Err(Error::Shape(format!("bad leg positions {positions:?} in {total} legs")));
            }
            seen[p] = true;
        }
        let weight = |leg: usize| checked_pow(n, total - 1 - leg);
        let rest: Vec<usize> = (0..total).filter(|l| !seen[*l]).collect();
        let rest_count = checked_pow(n, rest.len());
        let dim = checked_pow(n, total);
        let op_dim = self.dim();
        // offset contributed by a digit tuple on the operator's own legs
        let op_offsets: Vec<usize> = (0..op_dim)
            .map(|idx| {
                (0..self.legs)
                    .map(|k| {
                        let digit = (idx / checked_pow(n, self.legs - 1 - k)) % n;
                        digit * weight(positions[k])
                    })
                    .sum()
            })
            .collect();
        let rest_offsets: Vec<usize> = (0..rest_count)
            .map(|idx| {
                rest.iter()
                    .enumerate()
                    .map(|(k, &leg)| {
                        let digit = (idx / checked_pow(n, rest.len() - 1 - k)) % n;
                        digit * weight(leg)
                    })
                    .sum()
            })
            .collect();
        let mut out = Matrix::zeros(dim, dim);
        for r in 0..op_dim {
            for c in 0..op_dim {
                let v = self.m.get(r, c);
                if v.is_zero() {
                    continue;
                }
                for off in &rest_offsets {
                    out.set(op_offsets[r] + off, op_offsets[c] + off, v.clone());
                }
            }
        }
        Ok(Self { site_dim: n, legs: total, m: out })
    }

    /// `R^{ij}` on three legs.
    pub fn embed_pair(&self, pair: LegPair) -> Result<Self> {
        if self.legs != 2 {
            return Err(Error::Shape(format!("embed_pair needs 2 legs, got {}", self.legs)));
        }
        self.embed(&pair.positions(), 3)
    }

    /// `R^{21}`: the two tensor factors interchanged, equal to `P·R·P`.
    pub fn swap_factors(&self) -> Result<Self> {
        if self.legs != 2 {
            return Err(Error::Shape(format!("swap_factors needs 2 legs, got {}", self.legs)));
        }
        self.embed(&[1, 0], 2)
    }

    /// Plain transpose on the first leg of a two-leg operator.
    pub fn partial_transpose_first(&self) -> Result<Self> {
        if self.legs != 2 {
            return Err(Error::Shape(format!("partial transpose needs 2 legs, got {}", self.legs)));
        }
        let n = self.site_dim;
        let m = Matrix::from_fn(n * n, n * n, |r, c| {
            let (i, k) = (r / n, r % n);
            let (j, l) = (c / n, c % n);
            self.m.get(j * n + k, i * n + l).clone()
        });
        Ok(self.with(m))
    }

    /// Entry-wise lift into polynomial entries.
    pub fn lift<F>(&self) -> TensorMatrix<Poly<F>>
    where
        F: Field,
        T: Into<Poly<F>>,
    {
        self.map(|x| x.clone().into())
    }
}

/// Permutation operator `P(e_c ⊗ e_d) = e_d ⊗ e_c`.
pub fn permutation_op<T: Ring>(n: usize) -> TensorMatrix<T> {
    let mut m = Matrix::zeros(n * n, n * n);
    for c in 0..n {
        for d in 0..n {
            m.set(d * n + c, c * n + d, T::one());
        }
    }
    TensorMatrix { site_dim: n, legs: 2, m }
}

/// `A ⊗ B`.
pub fn kron<T: Ring>(a: &TensorMatrix<T>, b: &TensorMatrix<T>) -> Result<TensorMatrix<T>> {
    a.kron(b)
}

/// `(G ⊗ 1) · M^{t₁} · (G⁻¹ ⊗ 1)`; with `G = 1` the plain partial transpose.
pub fn form_transpose_first<F: Field>(m: &TensorMatrix<F>, g: &TensorMatrix<F>) -> Result<TensorMatrix<F>> {
    if g.legs != 1 || g.site_dim != m.site_dim {
        return Err(Error::Shape("form must be a one-leg operator on the same site".into()));
    }
    let g_inv = g.m.inverse().ok_or(Error::Singular("bilinear form"))?;
    let id = TensorMatrix::<F>::identity(m.site_dim, 1);
    let left = g.kron(&id)?;
    let right = TensorMatrix::one_leg(g_inv)?.kron(&id)?;
    Ok(left.mul(&m.partial_transpose_first()?).mul(&right))
}

/// Anti-diagonal form `J` with `J_{a, n+1−a} = 1`.
pub fn antidiagonal<T: Ring>(n: usize) -> TensorMatrix<T> {
    TensorMatrix {
        site_dim: n,
        legs: 1,
        m: Matrix::from_fn(n, n, |i, j| if i + j == n - 1 { T::one() } else { T::zero() }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    P,
    K,
    CasimirSl,
    CasimirSo,
}

/// The fundamental-representation structure tensors. The invariant
/// two-tensors are normalized as `Ω_sl = P` and `Ω_so = P − K`.
pub fn structure_op<F: Field>(kind: StructureKind, n: usize, form: &TensorMatrix<F>) -> Result<TensorMatrix<F>> {
    let p = permutation_op::<F>(n);
    match kind {
        StructureKind::P => Ok(p),
        StructureKind::K => form_transpose_first(&p, form),
        StructureKind::CasimirSl | StructureKind::CasimirSo if n < 2 => {
            Err(Error::TooSmall { what: "site dimension", min: 2, got: n })
        }
        StructureKind::CasimirSl => Ok(p),
        StructureKind::CasimirSo => {
            let k = form_transpose_first(&p, form)?;
            Ok(p.sub(&k))
        }
    }
}

/// Target of a spectral-variable substitution in the difference variables
/// `a = u₁ − u₂`, `b = u₂ − u₃`.
#[derive(Clone, Debug, PartialEq)]
pub enum SubstTarget<F> {
    A,
    APlusB,
    B,
    Point(F),
}

impl<F: Field> TensorMatrix<Poly<F>> {
    /// Replaces `var` by `value` in every entry.
    pub fn substitute(&self, var: &str, value: &Poly<F>) -> Self {
        self.map(|p| p.substitute(var, value))
    }

    /// Evaluates univariate entries at `x`.
    pub fn eval_at(&self, x: &F) -> TensorMatrix<F> {
        self.map(|p| p.eval_at(x))
    }

    /// All variables appearing in any entry, sorted.
    pub fn variables(&self) -> Vec<String> {
        let mut vars: Vec<String> =
            self.m.entries().iter().flat_map(|p| p.vars().iter().map(|v| v.name().to_string())).collect();
        vars.sort();
        vars.dedup();
        vars
    }

    /// Largest degree of `var` over all entries.
    pub fn degree_in(&self, var: &str) -> u32 {
        self.m.entries().iter().filter_map(|p| p.degree_in(var)).max().unwrap_or(0)
    }

    /// Coefficient matrix of `var^k`.
    pub fn coeff(&self, var: &str, k: u32) -> TensorMatrix<F> {
        self.map(|p| p.coeff(var, k))
    }

    /// Decomposition `Σ_k var^k · C_k` of univariate entries.
    pub fn coefficients(&self, var: &str) -> Vec<TensorMatrix<F>> {
        let d = self.degree_in(var);
        (0..=d).map(|k| self.coeff(var, k)).collect()
    }

    /// Rebuilds `Σ_k var^k · C_k`.
    pub fn from_coefficients(var: &str, coeffs: &[TensorMatrix<F>]) -> Result<Self> {
        let first = coeffs.first().ok_or_else(|| Error::Shape("no coefficients".into()))?;
        let mut acc = TensorMatrix::<Poly<F>>::zeros(first.site_dim, first.legs);
        for (k, c) in coeffs.iter().enumerate() {
            if c.site_dim != first.site_dim || c.legs != first.legs {
                return Err(Error::Shape("coefficient shapes differ".into()));
            }
            let mono = Poly::monomial(var, k as u32, F::one());
            acc = acc.add(&c.map(|x| Poly::constant(x.clone()) * mono.clone()));
        }
        Ok(acc)
    }
}

/// Rewrites the univariate `var` entries of `m` per `target`.
pub fn poly_substitute<F: Field>(
    m: &TensorMatrix<Poly<F>>,
    var: &str,
    target: &SubstTarget<F>,
) -> TensorMatrix<Poly<F>> {
    let value = match target {
        SubstTarget::A => Poly::var("a"),
        SubstTarget::APlusB => Poly::var("a") + Poly::var("b"),
        SubstTarget::B => Poly::var("b"),
        SubstTarget::Point(x) => Poly::constant(x.clone()),
    };
    m.substitute(var, &value)
}

impl<T: Ring> TensorMatrix<T> {
    pub fn is_identity(&self) -> bool {
        let d = self.dim();
        let one = T::one();
        (0..d).all(|i| (0..d).all(|j| if i == j { *self.get(i, j) == one } else { self.get(i, j).is_zero() }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};
    use num_traits::Zero;

    type TM = TensorMatrix<Rational>;

    fn r(x: i64) -> Rational {
        Rational::from_int(x)
    }

    fn tm(n: usize, legs: usize, rows: &[&[i64]]) -> TM {
        let m = Matrix::from_rows(rows.iter().map(|row| row.iter().map(|&x| r(x)).collect()).collect());
        TM::new(n, legs, m).unwrap()
    }

    fn h2() -> TM {
        tm(2, 1, &[&[1, 0], &[0, -1]])
    }

    fn e12() -> TM {
        TM::unit(2, 1, 2)
    }

    #[test]
    fn permutation_small() {
        assert_eq!(permutation_op::<Rational>(1), tm(1, 2, &[&[1]]));
        assert_eq!(
            permutation_op::<Rational>(2),
            tm(2, 2, &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]])
        );
    }

    #[test]
    fn permutation_involution() {
        for n in 1..=6 {
            let p = permutation_op::<Rational>(n);
            assert!(p.mul(&p).is_identity(), "n={n}");
        }
    }

    #[test]
    fn kron_identity_and_h_e() {
        let id = TM::identity(2, 1);
        assert!(id.kron(&id).unwrap().is_identity());
        let he = h2().kron(&e12()).unwrap();
        let nz: Vec<_> = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| !he.get(i, j).is_zero())
            .map(|(i, j)| (i + 1, j + 1, he.get(i, j).clone()))
            .collect();
        assert_eq!(nz, vec![(1, 2, r(1)), (3, 4, r(-1))]);
    }

    #[test]
    fn kron_site_mismatch() {
        assert!(TM::identity(2, 1).kron(&TM::identity(3, 1)).is_err());
    }

    #[test]
    fn embed_identity_and_12() {
        let p = permutation_op::<Rational>(2);
        for pair in [LegPair::P12, LegPair::P13, LegPair::P23] {
            assert!(TM::identity(2, 2).embed_pair(pair).unwrap().is_identity());
        }
        let ab = h2().kron(&e12()).unwrap();
        let expected = ab.kron(&TM::identity(2, 1)).unwrap();
        assert_eq!(ab.embed_pair(LegPair::P12).unwrap(), expected);
        assert!(LegPair::from_legs(2, 1).is_err());
        assert!(p.kron(&TM::identity(2, 1)).unwrap().embed_pair(LegPair::P12).is_err());
    }

    #[test]
    fn embed_13_of_p_swaps_outer_legs() {
        let n = 2;
        let p13 = permutation_op::<Rational>(n).embed_pair(LegPair::P13).unwrap();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let col = (i * n + j) * n + k;
                    let row = (k * n + j) * n + i;
                    for rr in 0..8 {
                        let want = if rr == row { r(1) } else { r(0) };
                        assert_eq!(*p13.get(rr, col), want);
                    }
                }
            }
        }
    }

    #[test]
    fn swap_factors_cases() {
        let p = permutation_op::<Rational>(2);
        assert_eq!(p.swap_factors().unwrap(), p);
        let he = h2().kron(&e12()).unwrap();
        let eh = e12().kron(&h2()).unwrap();
        assert_eq!(he.swap_factors().unwrap(), eh);
        assert_eq!(p.mul(&he).mul(&p), eh);
    }

    #[test]
    fn k_operator_plain() {
        let p = permutation_op::<Rational>(2);
        let k = form_transpose_first(&p, &TM::identity(2, 1)).unwrap();
        assert_eq!(k, tm(2, 2, &[&[1, 0, 0, 1], &[0, 0, 0, 0], &[0, 0, 0, 0], &[1, 0, 0, 1]]));
        assert_eq!(k.partial_transpose_first().unwrap(), p);
    }

    #[test]
    fn k_operator_antidiagonal_form() {
        let p = permutation_op::<Rational>(2);
        let k = form_transpose_first(&p, &antidiagonal(2)).unwrap();
        // composite indices (1,2) -> 2 and (2,1) -> 3 (1-based)
        assert_eq!(k, tm(2, 2, &[&[0, 0, 0, 0], &[0, 1, 1, 0], &[0, 1, 1, 0], &[0, 0, 0, 0]]));
    }

    #[test]
    fn k_squares_to_n_k() {
        for n in 2..=6 {
            let p = permutation_op::<Rational>(n);
            for g in [TM::identity(n, 1), antidiagonal(n)] {
                let k = form_transpose_first(&p, &g).unwrap();
                assert_eq!(k.mul(&k), k.scale(&r(n as i64)), "n={n}");
            }
            let k = form_transpose_first(&p, &TM::identity(n, 1)).unwrap();
            assert_eq!(p.mul(&k), k);
            assert_eq!(k.mul(&p), k);
        }
    }

    #[test]
    fn singular_form_rejected() {
        let p = permutation_op::<Rational>(2);
        assert_eq!(form_transpose_first(&p, &TM::zeros(2, 1)), Err(Error::Singular("bilinear form")));
    }

    #[test]
    fn structure_ops() {
        let id2 = TM::identity(2, 1);
        assert_eq!(structure_op(StructureKind::CasimirSl, 2, &id2).unwrap(), permutation_op(2));
        let id3 = TM::identity(3, 1);
        let p = permutation_op::<Rational>(3);
        let k = form_transpose_first(&p, &id3).unwrap();
        assert_eq!(structure_op(StructureKind::CasimirSo, 3, &id3).unwrap(), p.sub(&k));
        assert!(structure_op(StructureKind::CasimirSl, 1, &TM::identity(1, 1)).is_err());
    }

    #[test]
    fn casimir_sl_is_ad_invariant() {
        // [Ω^{12}, x⊗1⊗1 + 1⊗x⊗1] = 0 for traceless x
        let om = permutation_op::<Rational>(2).embed_pair(LegPair::P12).unwrap();
        let x = tm(2, 1, &[&[3, -2], &[5, -3]]);
        let x1 = x.embed(&[0], 3).unwrap();
        let x2 = x.embed(&[1], 3).unwrap();
        assert!(om.commutator(&x1.add(&x2)).is_zero());
        assert!(!om.commutator(&x1).is_zero());
    }

    #[test]
    fn embeddings_commute_with_scalars_only() {
        let a = h2().kron(&e12()).unwrap();
        let b = e12().kron(&h2()).unwrap();
        let a12 = a.embed_pair(LegPair::P12).unwrap();
        let b13 = b.embed_pair(LegPair::P13).unwrap();
        assert!(!a12.commutator(&b13).is_zero());
        let c = TM::identity(2, 3).scale(&q(7, 3));
        assert!(a12.commutator(&c).is_zero());
    }

    #[test]
    fn substitution_targets() {
        let u = Poly::<Rational>::var("u");
        let p = permutation_op::<Rational>(2).lift::<Rational>();
        let id = TM::identity(2, 2).lift::<Rational>();
        let m = id.scale(&u).add(&p);
        let at0 = poly_substitute(&m, "u", &SubstTarget::Point(r(0)));
        assert_eq!(at0, p);
        let at3 = m.eval_at(&r(3));
        assert_eq!(at3, TM::identity(2, 2).scale(&r(3)).add(&permutation_op(2)));
        let s = poly_substitute(&TM::identity(1, 1).lift().scale(&u), "u", &SubstTarget::APlusB);
        assert_eq!(*s.get(0, 0), Poly::var("a") + Poly::var("b"));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn mat2() -> impl Strategy<Value = TM> {
            proptest::collection::vec(-4i64..5, 4)
                .prop_map(|v| TM::new(2, 1, Matrix::from_fn(2, 2, |i, j| r(v[i * 2 + j]))).unwrap())
        }

        proptest! {
            #[test]
            fn mixed_product(a in mat2(), b in mat2(), c in mat2(), d in mat2()) {
                let lhs = a.kron(&b).unwrap().mul(&c.kron(&d).unwrap());
                let rhs = a.mul(&c).kron(&b.mul(&d)).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn swap_is_involution(a in mat2(), b in mat2(), c in mat2(), d in mat2()) {
                let rm = a.kron(&b).unwrap().add(&c.kron(&d).unwrap());
                prop_assert_eq!(rm.swap_factors().unwrap().swap_factors().unwrap(), rm.clone());
                let p = permutation_op::<Rational>(2);
                prop_assert_eq!(rm.swap_factors().unwrap(), p.mul(&rm).mul(&p));
            }

            #[test]
            fn embedding_is_multiplicative(a in mat2(), b in mat2(), c in mat2(), d in mat2()) {
                let x = a.kron(&b).unwrap();
                let y = c.kron(&d).unwrap();
                for pair in [LegPair::P12, LegPair::P13, LegPair::P23] {
                    let lhs = x.mul(&y).embed_pair(pair).unwrap();
                    let rhs = x.embed_pair(pair).unwrap().mul(&y.embed_pair(pair).unwrap());
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
