//! R-matrices depending on one spectral variable `u`, stored with their
//! scalar denominator cleared.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Field;
use crate::tensor::TensorMatrix;

/// Name of the spectral variable.
pub const SPECTRAL_VAR: &str = "u";

/// `numerator(u) / denominator(u)` with a scalar polynomial denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralRMatrix<F> {
    numerator: TensorMatrix<Poly<F>>,
    denominator: Poly<F>,
    label: String,
}

fn check_univariate<F: Field>(p: &Poly<F>) -> Result<()> {
    match p.vars() {
        [] => Ok(()),
        [v] if v.name() == SPECTRAL_VAR => Ok(()),
        vs => Err(Error::TooManyVariables(vs.iter().map(|v| v.name().to_string()).collect())),
    }
}

impl<F: Field> SpectralRMatrix<F> {
    /// Checks that all entries are polynomials in `u` and that the
    /// denominator does not divide out of every numerator entry.
    pub fn new(numerator: TensorMatrix<Poly<F>>, denominator: Poly<F>, label: impl Into<String>) -> Result<Self> {
        if numerator.legs() != 2 {
            return Err(Error::Shape(format!("R-matrix needs 2 legs, got {}", numerator.legs())));
        }
        if denominator.is_zero() {
            return Err(Error::Singular("denominator"));
        }
        check_univariate(&denominator)?;
        for p in numerator.matrix().entries() {
            check_univariate(p)?;
        }
        if denominator.degree_in(SPECTRAL_VAR).unwrap_or(0) > 0 {
            let divides_all = numerator.matrix().entries().iter().all(|p| p.div_rem(&denominator).1.is_zero());
            if divides_all {
                return Err(Error::Unsupported(format!(
                    "denominator {denominator} divides every numerator entry; not canonical"
                )));
            }
        }
        Ok(Self { numerator, denominator, label: label.into() })
    }

    /// Polynomial R-matrix with denominator 1.
    pub fn polynomial(numerator: TensorMatrix<Poly<F>>, label: impl Into<String>) -> Result<Self> {
        Self::new(numerator, Poly::one(), label)
    }

    /// A constant matrix viewed as a (u-independent) spectral matrix.
    pub fn from_constant(r: &TensorMatrix<F>, label: impl Into<String>) -> Result<Self> {
        Self::polynomial(r.map(|x| Poly::constant(x.clone())), label)
    }

    pub fn numerator(&self) -> &TensorMatrix<Poly<F>> {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly<F> {
        &self.denominator
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn site_dim(&self) -> usize {
        self.numerator.site_dim()
    }

    pub fn degree(&self) -> u32 {
        self.numerator.degree_in(SPECTRAL_VAR)
    }

    /// Value of the rational object at `u = x`; `None` at a pole.
    pub fn eval(&self, x: &F) -> Option<TensorMatrix<F>> {
        let d = self.denominator.eval_at(x).inv()?;
        Some(self.numerator.eval_at(x).scale(&d))
    }

    /// Value of the stored numerator at `u = x`.
    pub fn eval_numerator(&self, x: &F) -> TensorMatrix<F> {
        self.numerator.eval_at(x)
    }

    /// Same matrix under a different label.
    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational, Ring};
    use crate::tensor::permutation_op;

    type P = Poly<Rational>;

    fn yang(n: usize) -> TensorMatrix<P> {
        let u = P::var("u");
        TensorMatrix::<P>::identity(n, 2).scale(&u).add(&permutation_op(n))
    }

    #[test]
    fn evaluation_divides_by_denominator() {
        let r = SpectralRMatrix::new(yang(2), P::var("u"), "yang").unwrap();
        // 1 + P/u at u = 2
        let expected = TensorMatrix::<Rational>::identity(2, 2).add(&permutation_op::<Rational>(2).scale(&q(1, 2)));
        assert_eq!(r.eval(&Rational::from_int(2)).unwrap(), expected);
        assert!(r.eval(&Rational::from_int(0)).is_none());
    }

    #[test]
    fn rejects_non_canonical_denominator() {
        let u = P::var("u");
        let num = yang(2).scale(&u);
        assert!(SpectralRMatrix::new(num, u, "x").is_err());
    }

    #[test]
    fn rejects_foreign_variables() {
        let m = TensorMatrix::<P>::identity(2, 2).scale(&P::var("v"));
        assert!(matches!(SpectralRMatrix::polynomial(m, "x"), Err(Error::TooManyVariables(_))));
    }
}
