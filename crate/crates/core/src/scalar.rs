//! Exact scalar fields.
//!
//! Everything in this crate is generic over [`Ring`] (matrix entries, which may
//! be polynomials) or [`Field`] (ground fields). Two fields are provided: the
//! rationals [`Rational`] and the biquadratic extension [`Ext`] = F(i, √2).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = BigRational;

/// Commutative ring with unit, usable as a matrix entry.
///
/// The by-reference methods exist so that hot loops over big-number entries
/// do not have to clone their operands.
pub trait Ring:
    Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Send + Sync
{
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;

    fn from_int(n: i64) -> Self;

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }

    /// `self += a * b`
    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        let p = a.mul_ref(b);
        self.add_assign_ref(&p);
    }
}

/// Exact field.
pub trait Field: Ring + Div<Output = Self> + fmt::Display {
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// `num / den`; panics when `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// √2, when the field contains it.
    fn sqrt_two() -> Option<Self> {
        None
    }

    /// A square root of −1, when the field contains one.
    fn imag_unit() -> Option<Self> {
        None
    }
}

impl Ring for Rational {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn from_int(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }

    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self += a * b;
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
}

/// Shorthand for the rational `num / den`.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}

/// `a + b√2 + c·i + d·i√2` over a base field `F`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ext<F> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
}

impl<F: Field> Ext<F> {
    pub fn new(a: F, b: F, c: F, d: F) -> Self {
        Self { a, b, c, d }
    }

    /// Lossless embedding of the base field.
    pub fn from_base(a: F) -> Self {
        Self::new(a, F::zero(), F::zero(), F::zero())
    }

    pub fn sqrt2() -> Self {
        Self::new(F::zero(), F::one(), F::zero(), F::zero())
    }

    pub fn i() -> Self {
        Self::new(F::zero(), F::zero(), F::one(), F::zero())
    }

    /// The base-field value, if the irrational parts vanish.
    pub fn to_base(&self) -> Option<F> {
        if self.b.is_zero() && self.c.is_zero() && self.d.is_zero() {
            Some(self.a.clone())
        } else {
            None
        }
    }

    /// Complex conjugate (`i ↦ −i`).
    pub fn conj(&self) -> Self {
        Self::new(self.a.clone(), self.b.clone(), -self.c.clone(), -self.d.clone())
    }

    fn scale(&self, s: &F) -> Self {
        Self::new(self.a.mul_ref(s), self.b.mul_ref(s), self.c.mul_ref(s), self.d.mul_ref(s))
    }
}

impl<F: Field> From<F> for Ext<F> {
    fn from(a: F) -> Self {
        Self::from_base(a)
    }
}

impl<F: Field> fmt::Debug for Ext<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}√2 + {}i + {}i√2)", self.a, self.b, self.c, self.d)
    }
}

impl<F: Field> fmt::Display for Ext<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<F: Field> Add for Ext<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.add_ref(&o)
    }
}

impl<F: Field> Sub for Ext<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.sub_ref(&o)
    }
}

impl<F: Field> Mul for Ext<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl<F: Field> Neg for Ext<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl<F: Field> Div for Ext<F> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self.mul_ref(&o.inv().expect("division by zero in Q(i,√2)"))
    }
}

impl<F: Field> Zero for Ext<F> {
    fn zero() -> Self {
        Self::from_base(F::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
}

impl<F: Field> One for Ext<F> {
    fn one() -> Self {
        Self::from_base(F::one())
    }
}

impl<F: Field> Ring for Ext<F> {
    fn add_ref(&self, o: &Self) -> Self {
        Self::new(self.a.add_ref(&o.a), self.b.add_ref(&o.b), self.c.add_ref(&o.c), self.d.add_ref(&o.d))
    }

    fn sub_ref(&self, o: &Self) -> Self {
        Self::new(self.a.sub_ref(&o.a), self.b.sub_ref(&o.b), self.c.sub_ref(&o.c), self.d.sub_ref(&o.d))
    }

    // basis 1, s = √2, i, si with s² = 2, i² = −1
    fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let two = F::from_int(2);
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&o.a, &o.b, &o.c, &o.d);
        let one = a.mul_ref(e) + two.mul_ref(&b.mul_ref(f)) - c.mul_ref(g) - two.mul_ref(&d.mul_ref(h));
        let s = a.mul_ref(f) + b.mul_ref(e) - c.mul_ref(h) - d.mul_ref(g);
        let i = a.mul_ref(g) + c.mul_ref(e) + two.mul_ref(&b.mul_ref(h)) + two.mul_ref(&d.mul_ref(f));
        let si = a.mul_ref(h) + d.mul_ref(e) + b.mul_ref(g) + c.mul_ref(f);
        Self::new(one, s, i, si)
    }

    fn from_int(n: i64) -> Self {
        Self::from_base(F::from_int(n))
    }
}

impl<F: Field> Field for Ext<F> {
    // Write x = z + w·i with z, w ∈ F(√2); then 1/x = (z − w·i) / (z² + w²),
    // and 1/(p + q√2) = (p − q√2) / (p² − 2q²).
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let two = F::from_int(2);
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        // z² + w² = (a² + 2b² + c² + 2d²) + (2ab + 2cd)√2
        let p = a.mul_ref(a) + two.mul_ref(&b.mul_ref(b)) + c.mul_ref(c) + two.mul_ref(&d.mul_ref(d));
        let qq = two.mul_ref(&(a.mul_ref(b) + c.mul_ref(d)));
        let norm = p.mul_ref(&p) - two.mul_ref(&qq.mul_ref(&qq));
        let norm_inv = norm.inv()?;
        let inv_sq = Self::new(p.mul_ref(&norm_inv), -(qq.mul_ref(&norm_inv)), F::zero(), F::zero());
        Some(self.conj().mul_ref(&inv_sq))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_base(F::from_ratio(num, den))
    }

    fn sqrt_two() -> Option<Self> {
        Some(Self::sqrt2())
    }

    fn imag_unit() -> Option<Self> {
        Some(Self::i())
    }
}

impl<F: Field> Ext<F> {
    /// Scalar multiplication by a base-field element.
    pub fn scaled(&self, s: &F) -> Self {
        self.scale(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type E = Ext<Rational>;

    fn e(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> E {
        E::new(q(a.0, a.1), q(b.0, b.1), q(c.0, c.1), q(d.0, d.1))
    }

    #[test]
    fn rational_lowest_terms() {
        let x = q(2, 4);
        assert_eq!(x, q(1, 2));
        assert_eq!(*x.denom(), BigInt::from(2));
        let y = q(3, -6);
        assert_eq!(*y.denom(), BigInt::from(2));
        assert_eq!(*y.numer(), BigInt::from(-1));
    }

    #[test]
    fn sqrt2_and_i_square() {
        assert_eq!(E::sqrt2() * E::sqrt2(), E::from_int(2));
        assert_eq!(E::i() * E::i(), E::from_int(-1));
        let si = E::sqrt2() * E::i();
        assert_eq!(si.clone() * si, E::from_int(-2));
    }

    #[test]
    fn eighth_root_of_unity_squares_to_i() {
        // (1 + i)/√2 = (√2 + i√2)/2
        let w = e((0, 1), (1, 2), (0, 1), (1, 2));
        assert_eq!(w.clone() * w, E::i());
    }

    #[test]
    fn inverse_of_sqrt2() {
        let s = E::sqrt2();
        let inv = s.inv().unwrap();
        assert_eq!(inv, e((0, 1), (1, 2), (0, 1), (0, 1)));
        assert_eq!(inv * s, E::one());
        assert!(E::zero().inv().is_none());
    }

    #[test]
    fn embedding_is_lossless() {
        let x = q(-7, 3);
        let ex = E::from(x.clone());
        assert_eq!(ex.to_base(), Some(x));
        assert_eq!(E::i().to_base(), None);
    }

    #[test]
    fn from_ratio_and_int() {
        assert_eq!(Rational::from_ratio(6, 3), Rational::from_int(2));
        assert_eq!(E::from_ratio(1, 2) + E::from_ratio(1, 2), E::one());
    }

    #[test]
    fn mul_add_matches_owned_ops() {
        let mut acc = q(1, 3);
        acc.mul_add_assign(&q(2, 5), &q(-5, 4));
        assert_eq!(acc, q(1, 3) + q(2, 5) * q(-5, 4));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_q() -> impl Strategy<Value = Rational> {
            (-20i64..20, 1i64..9).prop_map(|(n, d)| q(n, d))
        }

        fn ext() -> impl Strategy<Value = E> {
            (small_q(), small_q(), small_q(), small_q()).prop_map(|(a, b, c, d)| E::new(a, b, c, d))
        }

        proptest! {
            #[test]
            fn ext_inverse(x in ext()) {
                prop_assume!(!x.is_zero());
                let inv = x.inv().unwrap();
                prop_assert_eq!(x.mul_ref(&inv), E::one());
            }

            #[test]
            fn ext_distributive(x in ext(), y in ext(), z in ext()) {
                let lhs = x.mul_ref(&y.add_ref(&z));
                let rhs = x.mul_ref(&y).add_ref(&x.mul_ref(&z));
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn ext_associative(x in ext(), y in ext(), z in ext()) {
                prop_assert_eq!(x.mul_ref(&y).mul_ref(&z), x.mul_ref(&y.mul_ref(&z)));
            }

            #[test]
            fn rational_inverse(x in small_q()) {
                prop_assume!(!x.is_zero());
                prop_assert_eq!(x.clone() * x.inv().unwrap(), Rational::one());
            }
        }
    }
}
