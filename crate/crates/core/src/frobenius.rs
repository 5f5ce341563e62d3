//! Quasi-Frobenius data: a matrix subalgebra with its structure constants,
//! a skew 2-cocycle on it, and the classical r-matrix `B⁻¹ ∈ Λ²L`.

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Solution};
use crate::scalar::Field;
use crate::solutions::diag_generator;
use crate::tensor::TensorMatrix;
use crate::verify::{VerificationReport, Witness};

/// Structure constants `C^k_{ij}` with `[x_i, x_j] = Σ_k C^k_{ij} x_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants<F> {
    m: usize,
    table: Vec<F>,
}

impl<F: Field> StructureConstants<F> {
    pub fn dim(&self) -> usize {
        self.m
    }

    /// `C^k_{ij}`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &F {
        &self.table[(i * self.m + j) * self.m + k]
    }
}

/// Ordered basis of a matrix subalgebra `L ⊂ gl(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubalgebraBasis<F> {
    site_dim: usize,
    basis: Vec<TensorMatrix<F>>,
    structure: Option<StructureConstants<F>>,
}

impl<F: Field> SubalgebraBasis<F> {
    /// Unchecked basis; see [`closure_and_structure`].
    pub fn new(site_dim: usize, basis: Vec<TensorMatrix<F>>) -> Result<Self> {
        if let Some(x) = basis.iter().find(|x| x.legs() != 1 || x.site_dim() != site_dim) {
            return Err(Error::Shape(format!(
                "basis elements must be one-leg {site_dim}×{site_dim}, got legs={} n={}",
                x.legs(),
                x.site_dim()
            )));
        }
        Ok(Self { site_dim, basis, structure: None })
    }

    pub fn site_dim(&self) -> usize {
        self.site_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn elements(&self) -> &[TensorMatrix<F>] {
        &self.basis
    }

    pub fn structure_constants(&self) -> Option<&StructureConstants<F>> {
        self.structure.as_ref()
    }

    /// Coordinates of `x` in the basis, if it lies in the span.
    pub fn coordinates(&self, x: &TensorMatrix<F>) -> Option<Vec<F>> {
        match self.column_matrix().solve(x.matrix().entries()) {
            Solution::Unique(c) => Some(c),
            _ => None,
        }
    }

    /// `Σ c_i x_i`.
    pub fn combine(&self, coeffs: &[F]) -> TensorMatrix<F> {
        self.basis.iter().zip(coeffs).fold(TensorMatrix::zeros(self.site_dim, 1), |acc, (x, c)| acc.add(&x.scale(c)))
    }

    fn column_matrix(&self) -> Matrix<F> {
        let n2 = self.site_dim * self.site_dim;
        Matrix::from_fn(n2, self.basis.len(), |r, c| self.basis[c].matrix().entries()[r].clone())
    }
}

/// Verifies independence and closure, filling in the structure constants.
pub fn closure_and_structure<F: Field>(mut basis: SubalgebraBasis<F>) -> Result<SubalgebraBasis<F>> {
    let cols = basis.column_matrix();
    let m = basis.dim();
    if cols.rank() != m {
        return Err(Error::DependentBasis);
    }
    let mut table = vec![F::zero(); m * m * m];
    for i in 0..m {
        for j in (i + 1)..m {
            let c = basis.basis[i].commutator(&basis.basis[j]);
            let coords = match cols.solve(c.matrix().entries()) {
                Solution::Unique(v) => v,
                _ => return Err(Error::NotClosed { i, j }),
            };
            for (k, v) in coords.into_iter().enumerate() {
                table[(j * m + i) * m + k] = -v.clone();
                table[(i * m + j) * m + k] = v;
            }
        }
    }
    basis.structure = Some(StructureConstants { m, table });
    Ok(basis)
}

/// `f(A) = Σ_{kl} Φ_{kl} A_{kl}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFunctional<F> {
    coeffs: TensorMatrix<F>,
}

impl<F: Field> LinearFunctional<F> {
    pub fn new(coeffs: TensorMatrix<F>) -> Result<Self> {
        if coeffs.legs() != 1 {
            return Err(Error::Shape("functional coefficients must be a one-leg matrix".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn coefficients(&self) -> &TensorMatrix<F> {
        &self.coeffs
    }

    pub fn apply(&self, a: &TensorMatrix<F>) -> F {
        let mut acc = F::zero();
        for (p, x) in self.coeffs.matrix().entries().iter().zip(a.matrix().entries()) {
            acc.mul_add_assign(p, x);
        }
        acc
    }
}

/// Skew bilinear form on a [`SubalgebraBasis`], as its Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CocycleMatrix<F> {
    m: Matrix<F>,
}

impl<F: Field> CocycleMatrix<F> {
    pub fn new(m: Matrix<F>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Shape(format!("cocycle matrix is {}×{}", m.rows(), m.cols())));
        }
        Ok(Self { m })
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.m
    }

    pub fn is_skew(&self) -> bool {
        self.m.transpose() == self.m.neg()
    }

    pub fn determinant(&self) -> F {
        self.m.det()
    }
}

fn structure<F: Field>(basis: &SubalgebraBasis<F>) -> Result<&StructureConstants<F>> {
    basis.structure.as_ref().ok_or_else(|| Error::Unsupported("closure has not been verified for this basis".into()))
}

/// `B_{ij} = f([x_i, x_j])`, closing the basis first if necessary.
pub fn cocycle_from_functional<F: Field>(
    basis: &SubalgebraBasis<F>,
    f: &LinearFunctional<F>,
) -> Result<CocycleMatrix<F>> {
    if f.coeffs.site_dim() != basis.site_dim {
        return Err(Error::Shape("functional and basis act on different sites".into()));
    }
    if basis.structure.is_none() {
        closure_and_structure(basis.clone())?;
    }
    let xs = &basis.basis;
    let m = xs.len();
    let mut b = Matrix::zeros(m, m);
    for i in 0..m {
        for j in (i + 1)..m {
            let v = f.apply(&xs[i].commutator(&xs[j]));
            b.set(j, i, -v.clone());
            b.set(i, j, v);
        }
    }
    CocycleMatrix::new(b)
}

/// Outcome of [`check_cocycle`].
#[derive(Clone, Debug, PartialEq)]
pub struct CocycleCheck<F> {
    /// Cyclic identity on all basis triples. A failing witness stores the
    /// triple `(i, j, l)` as `row = i`, `col = j`, `monomial = (l, 0)`.
    pub report: VerificationReport<F>,
    pub skew: bool,
    pub determinant: F,
}

impl<F: Field> CocycleCheck<F> {
    pub fn nondegenerate(&self) -> bool {
        !self.determinant.is_zero()
    }
}

/// Checks `B([x,y],z) + B([z,x],y) + B([y,z],x) = 0` on every basis triple.
pub fn check_cocycle<F: Field>(basis: &SubalgebraBasis<F>, b: &CocycleMatrix<F>) -> Result<CocycleCheck<F>> {
    let c = structure(basis)?;
    let m = c.dim();
    if b.m.rows() != m {
        return Err(Error::Shape(format!("cocycle is {0}×{0}, basis has {m} elements", b.m.rows())));
    }
    // B([x_i, x_j], x_l) = Σ_k C^k_{ij} B_{kl}
    let bracket = |i: usize, j: usize, l: usize| {
        let mut acc = F::zero();
        for k in 0..m {
            acc.mul_add_assign(c.get(i, j, k), b.m.get(k, l));
        }
        acc
    };
    let mut witness = None;
    'outer: for i in 0..m {
        for j in 0..m {
            for l in 0..m {
                let v = bracket(i, j, l).add_ref(&bracket(l, i, j)).add_ref(&bracket(j, l, i));
                if !v.is_zero() {
                    witness = Some(Witness { row: i, col: j, monomial: (l as u32, 0), value: v });
                    break 'outer;
                }
            }
        }
    }
    let report = match witness {
        None => VerificationReport::pass("cocycle"),
        Some(w) => VerificationReport::fail("cocycle", w),
    };
    Ok(CocycleCheck { report, skew: b.is_skew(), determinant: b.determinant() })
}

/// `r₀ = Σ_{ij} (B⁻¹)_{ij} x_i ⊗ x_j`.
pub fn r_from_cocycle<F: Field>(basis: &SubalgebraBasis<F>, b: &CocycleMatrix<F>) -> Result<TensorMatrix<F>> {
    let m = basis.dim();
    if b.m.rows() != m {
        return Err(Error::Shape(format!("cocycle is {0}×{0}, basis has {m} elements", b.m.rows())));
    }
    let inv = b.m.inverse().ok_or(Error::SingularCocycle)?;
    let n = basis.site_dim;
    let mut r = TensorMatrix::zeros(n, 2);
    for i in 0..m {
        let mut right = TensorMatrix::zeros(n, 1);
        for j in 0..m {
            let c = inv.get(i, j);
            if !c.is_zero() {
                right = right.add(&basis.basis[j].scale(c));
            }
        }
        r = r.add(&basis.basis[i].kron(&right)?);
    }
    Ok(r)
}

/// Upper-triangular subalgebra `{a_{ij} = 0 for i > j, a_{ii} = −a_{n+1−i,n+1−i}}`
/// with the anti-diagonal trace functional.
///
/// Basis order: `H_1, …, H_{⌊n/2⌋}`, then `E_{ij}` (`i < j`) lexicographically.
pub fn example1_pair<F: Field>(n: usize) -> Result<(SubalgebraBasis<F>, LinearFunctional<F>)> {
    if n < 2 {
        return Err(Error::TooSmall { what: "n", min: 2, got: n });
    }
    let mut basis: Vec<TensorMatrix<F>> = (1..=n / 2).map(|i| diag_generator(n, i)).collect();
    for i in 1..=n {
        for j in (i + 1)..=n {
            basis.push(TensorMatrix::unit(n, i, j));
        }
    }
    let basis = closure_and_structure(SubalgebraBasis::new(n, basis)?)?;
    let f = LinearFunctional::new(crate::tensor::antidiagonal(n))?;
    Ok((basis, f))
}
