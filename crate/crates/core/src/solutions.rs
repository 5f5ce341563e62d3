//! Constructors for the concrete solutions: the triangular sl(n) r-matrix
//! and its unitary R-matrix, baxterization `uR + P`, the fundamental Yangian
//! R-matrices of sl(n) and o(N), the Jordanian twist data of o(N), and the
//! twisted rational o(N) solution.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Field;
use crate::spectral::{SpectralRMatrix, SPECTRAL_VAR};
use crate::tensor::{antidiagonal, form_transpose_first, permutation_op, TensorMatrix};

/// Presentation of o(N).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Realization {
    /// `Aᵀ = −A`, invariant form `G = 1`.
    Skew,
    /// `a_{ij} = −a_{N+1−j,N+1−i}`, invariant form `G = J` (anti-diagonal).
    Antidiag,
}

impl Realization {
    pub fn name(self) -> &'static str {
        match self {
            Realization::Skew => "skew",
            Realization::Antidiag => "antidiag",
        }
    }

    /// The invariant bilinear form; `G² = 1` in both cases.
    pub fn form<F: Field>(self, n: usize) -> TensorMatrix<F> {
        match self {
            Realization::Skew => TensorMatrix::identity(n, 1),
            Realization::Antidiag => antidiagonal(n),
        }
    }

    /// Whether the one-leg matrix `a` lies in this realization of o(N).
    pub fn contains<F: Field>(self, a: &TensorMatrix<F>) -> bool {
        let n = a.site_dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let partner = match self {
                    Realization::Skew => a.get(j, i),
                    Realization::Antidiag => a.get(n - 1 - j, n - 1 - i),
                };
                a.get(i, j).add_ref(partner).is_zero()
            })
        })
    }
}

fn require(what: &'static str, min: usize, got: usize) -> Result<()> {
    if got < min {
        Err(Error::TooSmall { what, min, got })
    } else {
        Ok(())
    }
}

fn unit<F: Field>(n: usize, i: usize, j: usize) -> TensorMatrix<F> {
    TensorMatrix::unit(n, i, j)
}

fn tensor<F: Field>(a: &TensorMatrix<F>, b: &TensorMatrix<F>) -> TensorMatrix<F> {
    a.kron(b).expect("same site dimension")
}

/// `H_i = E_{ii} − E_{n+1−i, n+1−i}` (1-based).
pub fn diag_generator<F: Field>(n: usize, i: usize) -> TensorMatrix<F> {
    unit(n, i, i).sub(&unit(n, n + 1 - i, n + 1 - i))
}

/// The triangular r-matrix on sl(n), scaled by `xi` (default 1):
///
/// `r = ½ Σ_{i ≤ ⌊n/2⌋} (H_i ⊗ E_{i,n+1−i} − E_{i,n+1−i} ⊗ H_i)
///     + Σ_{i<j<n+1−i} (E_{ij} ⊗ E_{j,n+1−i} − E_{j,n+1−i} ⊗ E_{ij})`
pub fn example1_r<F: Field>(n: usize, xi: Option<&F>) -> Result<TensorMatrix<F>> {
    require("n", 2, n)?;
    let half = F::from_ratio(1, 2);
    let mut r = TensorMatrix::<F>::zeros(n, 2);
    for i in 1..=n / 2 {
        let h = diag_generator::<F>(n, i);
        let e = unit::<F>(n, i, n + 1 - i);
        let term = tensor(&h, &e).sub(&tensor(&e, &h));
        r = r.add(&term.scale(&half));
    }
    for i in 1..=n {
        for j in (i + 1)..(n + 1).saturating_sub(i) {
            let a = unit::<F>(n, i, j);
            let b = unit::<F>(n, j, n + 1 - i);
            r = r.add(&tensor(&a, &b).sub(&tensor(&b, &a)));
        }
    }
    Ok(match xi {
        Some(x) => r.scale(x),
        None => r,
    })
}

/// `R = 1 + ξr + ξ²r²/2` for the triangular r-matrix.
pub fn example1_big_r<F: Field>(n: usize, xi: Option<&F>) -> Result<TensorMatrix<F>> {
    let r = example1_r(n, xi)?;
    let r2 = r.mul(&r).scale(&F::from_ratio(1, 2));
    Ok(TensorMatrix::identity(n, 2).add(&r).add(&r2))
}

/// `u·R + P` with denominator 1. Verification is left to the caller.
pub fn baxterize<F: Field>(r: &TensorMatrix<F>) -> Result<SpectralRMatrix<F>> {
    if r.legs() != 2 {
        return Err(Error::Shape(format!("baxterize needs a 2-leg matrix, got {}", r.legs())));
    }
    let u = Poly::var(SPECTRAL_VAR);
    let num = r.map(|x| Poly::constant(x.clone()) * u.clone()).add(&permutation_op(r.site_dim()));
    SpectralRMatrix::polynomial(num, "baxterized")
}

/// Fundamental Yangian R-matrix of sl(n): `1 + P/u`, stored as `(u·1 + P)/u`.
pub fn yangian_sl_r<F: Field>(n: usize) -> Result<SpectralRMatrix<F>> {
    require("n", 2, n)?;
    let u = Poly::var(SPECTRAL_VAR);
    let num = TensorMatrix::<Poly<F>>::identity(n, 2).scale(&u).add(&permutation_op(n));
    SpectralRMatrix::new(num, u, format!("yangian-sl({n})"))
}

/// `k = (N − 2)/2`.
pub fn so_shift<F: Field>(n: usize) -> F {
    F::from_ratio(n as i64 - 2, 2)
}

/// The K operator of the realization: P transposed in the first factor with
/// respect to the invariant form.
pub fn k_operator<F: Field>(n: usize, realization: Realization) -> Result<TensorMatrix<F>> {
    form_transpose_first(&permutation_op(n), &realization.form(n))
}

/// Fundamental Yangian R-matrix of o(N): `u·1 + P − u/(k+u)·K`, stored as
/// `((k+u)(u·1 + P) − u·K) / (k+u)`.
pub fn yangian_so_r<F: Field>(n: usize, realization: Realization) -> Result<SpectralRMatrix<F>> {
    require("N", 3, n)?;
    let u = Poly::<F>::var(SPECTRAL_VAR);
    let shift = Poly::constant(so_shift::<F>(n)) + u.clone();
    let k = k_operator::<F>(n, realization)?.lift::<F>();
    let num = TensorMatrix::<Poly<F>>::identity(n, 2).scale(&u).add(&permutation_op(n)).scale(&shift).sub(&k.scale(&u));
    SpectralRMatrix::new(num, shift, format!("yangian-so({n},{})", realization.name()))
}

/// Conjugator from the anti-diagonal to the skew-symmetric realization.
///
/// Built on the index pairs `(a, N+1−a)` from blocks `(1/√2)[[1, i], [i, 1]]`
/// and, for odd `N`, the middle entry `(1+i)/√2`; satisfies `TᵀT = i·J`.
pub fn conjugator_t<F: Field>(n: usize) -> Result<TensorMatrix<F>> {
    require("N", 2, n)?;
    let (s, i) = match (F::sqrt_two(), F::imag_unit()) {
        (Some(s), Some(i)) => (s, i),
        _ => return Err(Error::FieldTooSmall("skew")),
    };
    let inv_s = s.inv().expect("√2 ≠ 0");
    let diag = inv_s.clone();
    let off = i.mul_ref(&inv_s);
    let mut t = TensorMatrix::<F>::zeros(n, 1);
    for a in 1..=n / 2 {
        let b = n + 1 - a;
        t = t.add(&unit::<F>(n, a, a).scale(&diag));
        t = t.add(&unit::<F>(n, b, b).scale(&diag));
        t = t.add(&unit::<F>(n, a, b).scale(&off));
        t = t.add(&unit::<F>(n, b, a).scale(&off));
    }
    if n % 2 == 1 {
        let m = n / 2 + 1;
        let mid = (F::one().add_ref(&i)).mul_ref(&inv_s);
        t = t.add(&unit::<F>(n, m, m).scale(&mid));
    }
    Ok(t)
}

/// `X ↦ T X T⁻¹` on one leg.
fn conjugate<F: Field>(t: &TensorMatrix<F>, t_inv: &TensorMatrix<F>, x: &TensorMatrix<F>) -> TensorMatrix<F> {
    t.mul(x).mul(t_inv)
}

/// Jordanian pair `[h, e] = e` in o(N) and the associated twist images.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanianData<F> {
    pub n: usize,
    pub realization: Realization,
    pub h: TensorMatrix<F>,
    pub e: TensorMatrix<F>,
    /// Image of `E_{N−1,N}`.
    pub e_minus: TensorMatrix<F>,
    /// Image of `E_{12}`.
    pub e_plus: TensorMatrix<F>,
    /// `h⊗e − e⊗h`
    pub r0: TensorMatrix<F>,
    /// `1 + h⊗e`; the twist series truncates because `e² = 0`.
    pub f0: TensorMatrix<F>,
    /// `(F₀²¹)⁻¹ = 1 − e⊗h`
    pub f0_swapped_inv: TensorMatrix<F>,
}

/// Jordanian data in the requested realization. The anti-diagonal data are
/// `H = E₁₁ − E_NN`, `E = E₁₂ − E_{N−1,N}`; the skew data are their
/// conjugates by [`conjugator_t`].
pub fn so_jordanian_data<F: Field>(n: usize, realization: Realization) -> Result<JordanianData<F>> {
    require("N", 4, n)?;
    let big_h = unit::<F>(n, 1, 1).sub(&unit(n, n, n));
    let big_e = unit::<F>(n, 1, 2).sub(&unit(n, n - 1, n));
    let e_minus = unit::<F>(n, n - 1, n);
    let e_plus = unit::<F>(n, 1, 2);
    let (h, e, e_minus, e_plus) = match realization {
        Realization::Antidiag => (big_h, big_e, e_minus, e_plus),
        Realization::Skew => {
            let t = conjugator_t::<F>(n)?;
            let t_inv = TensorMatrix::one_leg(t.matrix().inverse().ok_or(Error::Singular("conjugator"))?)?;
            (
                conjugate(&t, &t_inv, &big_h),
                conjugate(&t, &t_inv, &big_e),
                conjugate(&t, &t_inv, &e_minus),
                conjugate(&t, &t_inv, &e_plus),
            )
        }
    };
    let he = tensor(&h, &e);
    let eh = tensor(&e, &h);
    let id = TensorMatrix::<F>::identity(n, 2);
    Ok(JordanianData {
        n,
        realization,
        r0: he.sub(&eh),
        f0: id.add(&he),
        f0_swapped_inv: id.sub(&eh),
        h,
        e,
        e_minus,
        e_plus,
    })
}

/// `(F₀²¹)⁻¹ · R · F₀` for a constant `R`.
pub fn apply_twist<F: Field>(r: &TensorMatrix<F>, f0: &TensorMatrix<F>) -> Result<TensorMatrix<F>> {
    let left = swapped_inverse(f0)?;
    Ok(left.mul(r).mul(f0))
}

fn swapped_inverse<F: Field>(f0: &TensorMatrix<F>) -> Result<TensorMatrix<F>> {
    let f21 = f0.swap_factors()?;
    let inv = f21.matrix().inverse().ok_or(Error::Singular("twist"))?;
    TensorMatrix::new(f0.site_dim(), 2, inv)
}

/// `(F₀²¹)⁻¹ · R(u) · F₀`, keeping the stored denominator.
pub fn apply_twist_spectral<F: Field>(r: &SpectralRMatrix<F>, f0: &TensorMatrix<F>) -> Result<SpectralRMatrix<F>> {
    let left = swapped_inverse(f0)?.lift::<F>();
    let num = left.mul(r.numerator()).mul(&f0.lift());
    SpectralRMatrix::new(num, r.denominator().clone(), format!("twisted {}", r.label()))
}

/// Twisted rational o(N) solution assembled from its closed form
///
/// `(1 + r₀ − e₋⊗e₊)·u + P − u/(k+u) · (1 − e⊗h) K (1 + h⊗e)`,
///
/// stored with the denominator `k + u` cleared.
pub fn example2_solution<F: Field>(n: usize, realization: Realization) -> Result<SpectralRMatrix<F>> {
    let data = so_jordanian_data::<F>(n, realization)?;
    let u = Poly::<F>::var(SPECTRAL_VAR);
    let shift = Poly::constant(so_shift::<F>(n)) + u.clone();
    let id = TensorMatrix::<F>::identity(n, 2);
    let r0_part = id.add(&data.r0).sub(&tensor(&data.e_minus, &data.e_plus));
    let left = id.sub(&tensor(&data.e, &data.h));
    let right = id.add(&tensor(&data.h, &data.e));
    let twisted_k = left.mul(&k_operator::<F>(n, realization)?).mul(&right);
    let num = r0_part.lift::<F>().scale(&u).add(&permutation_op(n)).scale(&shift).sub(&twisted_k.lift().scale(&u));
    SpectralRMatrix::new(num, shift, format!("example2({n},{})", realization.name()))
}

/// The deformation family `(1 − ξ e⊗h)(1 + ξ h⊗e)` in the variable `xi`.
pub fn jordanian_family<F: Field>(n: usize, realization: Realization) -> Result<TensorMatrix<Poly<F>>> {
    let data = so_jordanian_data::<F>(n, realization)?;
    let xi = Poly::<F>::var("xi");
    let id = TensorMatrix::<Poly<F>>::identity(n, 2);
    let left = id.sub(&tensor(&data.e, &data.h).lift().scale(&xi));
    let right = id.add(&tensor(&data.h, &data.e).lift().scale(&xi));
    Ok(left.mul(&right))
}

/// Scalar `c` with `a = c·b`, if one exists (`b` nonzero).
pub fn proportionality<F: Field>(a: &TensorMatrix<F>, b: &TensorMatrix<F>) -> Option<F> {
    let (i, j, bv) = b.matrix().first_nonzero()?;
    let c = a.get(i, j).clone() / bv.clone();
    (a.sub(&b.scale(&c))).is_zero().then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Ext, Rational, Ring};
    use crate::verify::{check_cybe, check_ybe_constant, CybeMode};
    use num_traits::One;

    type TM = TensorMatrix<Rational>;
    type E = Ext<Rational>;

    fn tm(n: usize, rows: &[&[Rational]]) -> TM {
        TM::new(n, 2, crate::linalg::Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())).unwrap()
    }

    #[test]
    fn example1_r_n2_explicit() {
        let z = q(0, 1);
        let h = q(1, 2);
        let expected = tm(
            2,
            &[
                &[z.clone(), h.clone(), -h.clone(), z.clone()],
                &[z.clone(), z.clone(), z.clone(), h.clone()],
                &[z.clone(), z.clone(), z.clone(), -h.clone()],
                &[z.clone(), z.clone(), z.clone(), z.clone()],
            ],
        );
        assert_eq!(example1_r::<Rational>(2, None).unwrap(), expected);
    }

    #[test]
    fn example1_big_r_n2_explicit() {
        let (o, z, h, qt) = (q(1, 1), q(0, 1), q(1, 2), q(1, 4));
        let expected = tm(
            2,
            &[
                &[o.clone(), h.clone(), -h.clone(), qt],
                &[z.clone(), o.clone(), z.clone(), h.clone()],
                &[z.clone(), z.clone(), o.clone(), -h.clone()],
                &[z.clone(), z.clone(), z.clone(), o],
            ],
        );
        assert_eq!(example1_big_r::<Rational>(2, None).unwrap(), expected);
        assert!(example1_big_r::<Rational>(3, Some(&q(0, 1))).unwrap().is_identity());
    }

    #[test]
    fn example1_r_n3_cross_term() {
        // the only (i, j) with i < j < n+1−i for n = 3 is (1, 2)
        let r = example1_r::<Rational>(3, None).unwrap();
        let h1 = diag_generator::<Rational>(3, 1);
        let e13 = unit::<Rational>(3, 1, 3);
        let diag = tensor(&h1, &e13).sub(&tensor(&e13, &h1)).scale(&q(1, 2));
        let e12 = unit::<Rational>(3, 1, 2);
        let e23 = unit::<Rational>(3, 2, 3);
        let cross = tensor(&e12, &e23).sub(&tensor(&e23, &e12));
        assert_eq!(r, diag.add(&cross));
    }

    #[test]
    fn example1_small_n_rejected() {
        assert!(example1_r::<Rational>(1, None).is_err());
        assert!(example1_big_r::<Rational>(0, None).is_err());
    }

    #[test]
    fn example1_properties() {
        for n in 2..=5 {
            let r = example1_r::<Rational>(n, None).unwrap();
            assert_eq!(r.swap_factors().unwrap(), r.neg());
            assert!(r.pow(3).is_zero(), "n={n}");
            assert!(check_cybe(&r, None, CybeMode::Constant).unwrap().passed);
            let big = example1_big_r::<Rational>(n, None).unwrap();
            assert!(big.swap_factors().unwrap().mul(&big).is_identity());
            assert!(check_ybe_constant(&big).unwrap().passed);
        }
    }

    #[test]
    fn yangian_so_shift() {
        assert_eq!(so_shift::<Rational>(4), q(1, 1));
        assert_eq!(so_shift::<Rational>(5), q(3, 2));
        let r = yangian_so_r::<Rational>(5, Realization::Antidiag).unwrap();
        assert_eq!(*r.denominator(), Poly::constant(q(3, 2)) + Poly::var("u"));
        assert!(yangian_so_r::<Rational>(2, Realization::Skew).is_err());
    }

    #[test]
    fn yangian_so_matches_rational_form() {
        // object(x) = x·1 + P − x/(k+x)·K at sample points
        for realization in [Realization::Skew, Realization::Antidiag] {
            let n = 4;
            let r = yangian_so_r::<Rational>(n, realization).unwrap();
            let k = k_operator::<Rational>(n, realization).unwrap();
            for x in [1i64, 2, 5] {
                let x = Rational::from_int(x);
                let direct = TM::identity(n, 2)
                    .scale(&x)
                    .add(&permutation_op(n))
                    .sub(&k.scale(&(x.clone() / (so_shift::<Rational>(n) + x.clone()))));
                assert_eq!(r.eval(&x).unwrap(), direct);
                // re-multiplying by the denominator gives the stored numerator
                let den = r.denominator().eval_at(&x);
                assert_eq!(direct.scale(&den), r.eval_numerator(&x));
            }
        }
    }

    #[test]
    fn yangian_sl_matches_rational_form() {
        let r = yangian_sl_r::<Rational>(3).unwrap();
        let x = q(3, 7);
        let direct = TM::identity(3, 2).add(&permutation_op::<Rational>(3).scale(&x.inv().unwrap()));
        assert_eq!(r.eval(&x).unwrap(), direct);
        assert_eq!(direct.scale(&x), r.eval_numerator(&x));
    }

    #[test]
    fn conjugator_squares_to_i_j() {
        for n in 2..=6 {
            let t = conjugator_t::<E>(n).unwrap();
            let j = antidiagonal::<E>(n);
            assert_eq!(t.transpose().mul(&t), j.scale(&E::i()), "n={n}");
        }
        assert_eq!(conjugator_t::<Rational>(4), Err(Error::FieldTooSmall("skew")));
    }

    #[test]
    fn conjugated_h_is_skew() {
        let n = 4;
        let t = conjugator_t::<E>(n).unwrap();
        let t_inv = TensorMatrix::one_leg(t.matrix().inverse().unwrap()).unwrap();
        let h = unit::<E>(n, 1, 1).sub(&unit(n, n, n));
        let ch = conjugate(&t, &t_inv, &h);
        assert_eq!(ch.transpose(), ch.neg());
    }

    #[test]
    fn jordanian_data_relations() {
        for n in 4..=6 {
            let d = so_jordanian_data::<Rational>(n, Realization::Antidiag).unwrap();
            assert_eq!(d.h.commutator(&d.e), d.e);
            assert!(d.e.mul(&d.e).is_zero());
            assert!(Realization::Antidiag.contains(&d.h));
            assert!(Realization::Antidiag.contains(&d.e));
            assert!(d.f0.mul(&d.f0_swapped_inv.swap_factors().unwrap()).is_identity());
            assert!(check_cybe(&d.r0, None, CybeMode::Constant).unwrap().passed);
        }
        let d = so_jordanian_data::<E>(4, Realization::Skew).unwrap();
        assert_eq!(d.h.commutator(&d.e), d.e);
        assert!(Realization::Skew.contains(&d.h) && Realization::Skew.contains(&d.e));
        assert!(check_cybe(&d.r0, None, CybeMode::Constant).unwrap().passed);
        assert!(so_jordanian_data::<Rational>(3, Realization::Antidiag).is_err());
        assert!(so_jordanian_data::<Rational>(4, Realization::Skew).is_err());
    }

    #[test]
    fn n3_e_squared_nonzero() {
        let n = 3;
        let e = unit::<Rational>(n, 1, 2).sub(&unit(n, n - 1, n));
        assert_eq!(e.mul(&e), unit::<Rational>(3, 1, 3).neg());
    }

    #[test]
    fn twisted_identity_closed_form() {
        let n = 4;
        let d = so_jordanian_data::<Rational>(n, Realization::Antidiag).unwrap();
        let r = apply_twist(&TM::identity(n, 2), &d.f0).unwrap();
        let expected = TM::identity(n, 2).add(&d.r0).sub(&tensor(&unit(n, n - 1, n), &unit(n, 1, 2)));
        assert_eq!(r, expected);
        assert!(check_ybe_constant(&r).unwrap().passed);
        let same = apply_twist(&r, &TM::identity(n, 2)).unwrap();
        assert_eq!(same, r);
        assert_eq!(apply_twist(&r, &TM::zeros(n, 2)), Err(Error::Singular("twist")));
    }

    #[test]
    fn example2_regularity_value() {
        let s = example2_solution::<Rational>(4, Realization::Antidiag).unwrap();
        let at0 = s.eval_numerator(&q(0, 1));
        assert_eq!(at0, permutation_op::<Rational>(4).scale(&q(1, 1)));
        let s5 = example2_solution::<Rational>(5, Realization::Antidiag).unwrap();
        assert_eq!(s5.eval_numerator(&q(0, 1)), permutation_op::<Rational>(5).scale(&q(3, 2)));
    }

    #[test]
    fn example2_equals_twist_route() {
        for n in 4..=5 {
            let closed = example2_solution::<Rational>(n, Realization::Antidiag).unwrap();
            let d = so_jordanian_data::<Rational>(n, Realization::Antidiag).unwrap();
            let yang = yangian_so_r::<Rational>(n, Realization::Antidiag).unwrap();
            let twisted = apply_twist_spectral(&yang, &d.f0).unwrap();
            assert_eq!(closed.numerator(), twisted.numerator());
            assert_eq!(closed.denominator(), twisted.denominator());
        }
    }

    #[test]
    fn baxterize_identity_is_yang() {
        let b = baxterize(&TM::identity(3, 2)).unwrap();
        assert_eq!(b.numerator(), yangian_sl_r::<Rational>(3).unwrap().numerator());
        assert!(b.denominator().as_constant().is_some_and(|c| c.is_one()));
    }

    #[test]
    fn proportionality_constant() {
        let r = example1_r::<Rational>(3, None).unwrap();
        assert_eq!(proportionality(&r.scale(&q(-2, 3)), &r), Some(q(-2, 3)));
        assert_eq!(proportionality(&r, &TM::identity(3, 2)), None);
        assert_eq!(proportionality(&r, &TM::zeros(3, 2)), None);
    }
}
