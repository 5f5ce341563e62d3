//! Periodic and open spin chains built from regular R-matrices: transfer
//! matrices, local Hamiltonians, and the deformed XXX Hamiltonian with a
//! nilpotent `σ⁻` term.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Solution};
use crate::poly::Poly;
use crate::scalar::{Ext, Field};
use crate::spectral::{SpectralRMatrix, SPECTRAL_VAR};
use crate::tensor::{permutation_op, TensorMatrix};
use crate::verify::{check_commutation_coeffs, check_regularity, GridOptions, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Boundary {
    #[default]
    Periodic,
    Open,
}

impl Boundary {
    pub fn name(self) -> &'static str {
        match self {
            Boundary::Periodic => "periodic",
            Boundary::Open => "open",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainSpec<F> {
    pub sites: usize,
    pub boundary: Boundary,
    /// `ξ` for the deformed XXX Hamiltonian, `τ` for twisted R-matrices.
    pub deformation: F,
}

impl<F: Field> ChainSpec<F> {
    pub fn new(sites: usize, boundary: Boundary, deformation: F) -> Result<Self> {
        if sites < 2 {
            return Err(Error::TooSmall { what: "sites", min: 2, got: sites });
        }
        Ok(Self { sites, boundary, deformation })
    }

    pub fn periodic(sites: usize) -> Result<Self> {
        Self::new(sites, Boundary::Periodic, F::zero())
    }

    /// Zero-based bonds `(j, j+1)`, closing with `(L−1, 0)` when periodic.
    pub fn bonds(&self) -> Vec<(usize, usize)> {
        let l = self.sites;
        let mut b: Vec<_> = (0..l - 1).map(|j| (j, j + 1)).collect();
        if self.boundary == Boundary::Periodic {
            b.push((l - 1, 0));
        }
        b
    }
}

/// A two-site density summed over the bonds of a chain.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalDensity<F> {
    pub density: TensorMatrix<F>,
    pub sites: usize,
    pub bonds: Vec<(usize, usize)>,
}

impl<F: Field> LocalDensity<F> {
    pub fn total(&self) -> Result<TensorMatrix<F>> {
        let n = self.density.site_dim();
        let mut h = TensorMatrix::zeros(n, self.sites);
        for &(a, b) in &self.bonds {
            h = h.add(&self.density.embed(&[a, b], self.sites)?);
        }
        Ok(h)
    }
}

/// Pauli matrices `σˣ, σʸ, σᶻ` over `F(i, √2)`.
pub fn pauli<F: Field>() -> [TensorMatrix<Ext<F>>; 3] {
    let one = Ext::<F>::one();
    let i = Ext::<F>::i();
    let m = |rows: [[Ext<F>; 2]; 2]| {
        TensorMatrix::one_leg(Matrix::from_rows(rows.into_iter().map(Vec::from).collect())).expect("2×2")
    };
    let z = Ext::<F>::zero();
    [
        m([[z.clone(), one.clone()], [one.clone(), z.clone()]]),
        m([[z.clone(), -i.clone()], [i, z.clone()]]),
        m([[one.clone(), z.clone()], [z, -one]]),
    ]
}

fn demote<F: Field>(m: &TensorMatrix<Ext<F>>) -> TensorMatrix<F> {
    m.map(|x| x.to_base().expect("chain operators have base-field entries"))
}

/// `(σ, σ′) = Σ_a σᵃ⊗σᵃ`, computed over `F(i, √2)` and returned over `F`.
pub fn spin_exchange<F: Field>() -> TensorMatrix<F> {
    let s = pauli::<F>();
    let sum = s.iter().map(|a| a.kron(a).expect("same site")).fold(TensorMatrix::zeros(2, 2), |acc, x| acc.add(&x));
    demote(&sum)
}

/// `σ⁻ = ½(σˣ − iσʸ)`.
pub fn sigma_minus<F: Field>() -> TensorMatrix<F> {
    let [x, y, _] = pauli::<F>();
    let half = Ext::from_base(F::from_ratio(1, 2));
    demote(&x.sub(&y.scale(&Ext::i())).scale(&half))
}

/// `σˣ` on every site.
pub fn spin_flip<F: Field>(sites: usize) -> TensorMatrix<F> {
    kron_power(&demote(&pauli::<F>()[0]), sites).expect("same site")
}

/// The deformed XXX Hamiltonian split by powers of `ξ`.
#[derive(Clone, Debug, PartialEq)]
pub struct RemarkHamiltonian<F> {
    /// `Σ (σ_n, σ_{n+1})`
    pub xxx: TensorMatrix<F>,
    /// `Σ (σ⁻_n − σ⁻_{n+1})`
    pub linear: TensorMatrix<F>,
    /// `Σ σ⁻_n σ⁻_{n+1}`
    pub quadratic: TensorMatrix<F>,
}

impl<F: Field> RemarkHamiltonian<F> {
    pub fn at(&self, xi: &F) -> TensorMatrix<F> {
        self.xxx.add(&self.linear.scale(xi)).add(&self.quadratic.scale(&xi.mul_ref(xi)))
    }

    /// The Hamiltonian as a function of `s = ξ²`; requires the linear part
    /// to vanish.
    pub fn with_xi_squared(&self, s: &F) -> Result<TensorMatrix<F>> {
        if !self.linear.is_zero() {
            return Err(Error::Unsupported("the ξ-linear part does not vanish".into()));
        }
        Ok(self.xxx.add(&self.quadratic.scale(s)))
    }
}

pub fn remark_hamiltonian_parts<F: Field>(sites: usize, boundary: Boundary) -> Result<RemarkHamiltonian<F>> {
    let spec = ChainSpec::new(sites, boundary, F::zero())?;
    let bonds = spec.bonds();
    let id = TensorMatrix::<F>::identity(2, 1);
    let sm = sigma_minus::<F>();
    let total = |density: TensorMatrix<F>| LocalDensity { density, sites, bonds: bonds.clone() }.total();
    Ok(RemarkHamiltonian {
        xxx: total(spin_exchange())?,
        linear: total(sm.kron(&id)?.sub(&id.kron(&sm)?))?,
        quadratic: total(sm.kron(&sm)?)?,
    })
}

/// `Σ_bonds (σ,σ′) + ξ²σ⁻⊗σ⁻ + ξ(σ⁻⊗1 − 1⊗σ⁻)` with `ξ = spec.deformation`.
pub fn remark_hamiltonian<F: Field>(spec: &ChainSpec<F>) -> Result<TensorMatrix<F>> {
    Ok(remark_hamiltonian_parts(spec.sites, spec.boundary)?.at(&spec.deformation))
}

/// `S(v₁⊗…⊗v_L) = v_L⊗v₁⊗…⊗v_{L−1}`.
pub fn cyclic_shift<F: Field>(site_dim: usize, sites: usize) -> TensorMatrix<F> {
    let positions: Vec<usize> = (0..sites).map(|k| (k + 1) % sites).collect();
    permutation_layout(site_dim, &positions).expect("valid permutation")
}

// operator sending the factor on leg k to leg positions[k]
fn permutation_layout<F: Field>(n: usize, positions: &[usize]) -> Result<TensorMatrix<F>> {
    let l = positions.len();
    let dim = n.pow(l as u32);
    let mut m = Matrix::zeros(dim, dim);
    for col in 0..dim {
        let mut row = 0;
        for (k, &p) in positions.iter().enumerate() {
            let digit = (col / n.pow((l - 1 - k) as u32)) % n;
            row += digit * n.pow((l - 1 - p) as u32);
        }
        m.set(row, col, F::one());
    }
    TensorMatrix::new(n, l, m)
}

fn kron_power<F: Field>(m: &TensorMatrix<F>, k: usize) -> Result<TensorMatrix<F>> {
    let mut acc = m.clone();
    for _ in 1..k {
        acc = acc.kron(m)?;
    }
    Ok(acc)
}

/// `t(u) = tr₀[R₀L(u)⋯R₀₁(u)]` stored by its coefficients in `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferFamily<F> {
    pub sites: usize,
    coeffs: Vec<TensorMatrix<F>>,
}

impl<F: Field> TransferFamily<F> {
    pub fn site_dim(&self) -> usize {
        self.coeffs[0].site_dim()
    }

    /// `t_k` with `t(u) = Σ u^k t_k`.
    pub fn coefficients(&self) -> &[TensorMatrix<F>] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn at(&self, x: &F) -> TensorMatrix<F> {
        let mut acc = TensorMatrix::zeros(self.site_dim(), self.sites);
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(x).add(c);
        }
        acc
    }

    pub fn to_poly(&self) -> Result<TensorMatrix<Poly<F>>> {
        TensorMatrix::from_coefficients(SPECTRAL_VAR, &self.coeffs)
    }
}

fn poly_mul<F: Field>(a: &[TensorMatrix<F>], b: &[TensorMatrix<F>]) -> Vec<TensorMatrix<F>> {
    let zero = TensorMatrix::zeros(a[0].site_dim(), a[0].legs());
    let mut out = vec![zero; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

fn trace_first_leg<F: Field>(m: &TensorMatrix<F>) -> Result<TensorMatrix<F>> {
    let n = m.site_dim();
    let d = m.dim() / n;
    let t = Matrix::from_fn(d, d, |i, j| {
        let mut acc = F::zero();
        for a in 0..n {
            acc.add_assign_ref(m.get(a * d + i, a * d + j));
        }
        acc
    });
    TensorMatrix::new(n, m.legs() - 1, t)
}

fn require_regular<F: Field>(r: &SpectralRMatrix<F>) -> Result<F> {
    let rep = check_regularity(r.numerator())?;
    match (rep.passed, rep.scalar_factor.and_then(|c| c.as_constant())) {
        (true, Some(c)) => Ok(c),
        _ => Err(Error::NotRegular),
    }
}

/// Transfer matrix of a periodic chain with the auxiliary space on leg 0.
pub fn transfer_matrix<F: Field>(r: &SpectralRMatrix<F>, spec: &ChainSpec<F>) -> Result<TransferFamily<F>> {
    require_regular(r)?;
    if spec.boundary != Boundary::Periodic {
        return Err(Error::Unsupported("transfer matrices are built for periodic chains only".into()));
    }
    let l = spec.sites;
    let coeffs = r.numerator().coefficients(SPECTRAL_VAR);
    let on =
        |site: usize| -> Result<Vec<TensorMatrix<F>>> { coeffs.iter().map(|c| c.embed(&[0, site], l + 1)).collect() };
    let mut mono = on(l)?;
    for site in (1..l).rev() {
        mono = poly_mul(&mono, &on(site)?);
    }
    let coeffs = mono.iter().map(trace_first_leg).collect::<Result<_>>()?;
    Ok(TransferFamily { sites: l, coeffs })
}

/// Density `h = P·R′(0)/c` for `R(0) = c·P`.
pub fn derive_density<F: Field>(r: &SpectralRMatrix<F>, spec: &ChainSpec<F>) -> Result<LocalDensity<F>> {
    let c = require_regular(r)?;
    let d1 = r.numerator().coeff(SPECTRAL_VAR, 1);
    let density = permutation_op::<F>(r.site_dim()).mul(&d1).scale(&c.inv().expect("c ≠ 0"));
    Ok(LocalDensity { density, sites: spec.sites, bonds: spec.bonds() })
}

pub fn derive_hamiltonian<F: Field>(r: &SpectralRMatrix<F>, spec: &ChainSpec<F>) -> Result<TensorMatrix<F>> {
    derive_density(r, spec)?.total()
}

/// Result of fitting `H₁ = α·H₂ + β·1`.
#[derive(Clone, Debug, PartialEq)]
pub enum AffineFit<F> {
    Exact {
        alpha: F,
        beta: F,
    },
    /// `H₂` is a multiple of the identity, so `α` is not determined.
    Ambiguous,
    Inconsistent,
}

fn solve_columns<F: Field>(cols: &[&TensorMatrix<F>], rhs: &TensorMatrix<F>) -> Solution<F> {
    let d = rhs.dim() * rhs.dim();
    let a = Matrix::from_fn(d, cols.len(), |r, c| cols[c].matrix().entries()[r].clone());
    a.solve(rhs.matrix().entries())
}

/// Solves `H₁ = α·(C H₂ C⁻¹) + β·1` where `C` applies `conj` on every site.
pub fn compare_up_to_affine<F: Field>(
    h1: &TensorMatrix<F>,
    h2: &TensorMatrix<F>,
    conj: Option<&TensorMatrix<F>>,
) -> Result<AffineFit<F>> {
    if h1.site_dim() != h2.site_dim() || h1.legs() != h2.legs() {
        return Err(Error::Shape("operators act on different chains".into()));
    }
    let h2 = match conj {
        None => h2.clone(),
        Some(c) => conjugate_sites(c, h2)?,
    };
    let id = TensorMatrix::identity(h1.site_dim(), h1.legs());
    Ok(match solve_columns(&[&h2, &id], h1) {
        Solution::Unique(v) => AffineFit::Exact { alpha: v[0].clone(), beta: v[1].clone() },
        Solution::Many(_) => AffineFit::Ambiguous,
        Solution::Inconsistent => AffineFit::Inconsistent,
    })
}

fn conjugate_sites<F: Field>(c: &TensorMatrix<F>, h: &TensorMatrix<F>) -> Result<TensorMatrix<F>> {
    if c.legs() != 1 || c.site_dim() != h.site_dim() {
        return Err(Error::Shape("conjugation must be a one-site operator".into()));
    }
    let inv = TensorMatrix::one_leg(c.matrix().inverse().ok_or(Error::Singular("conjugation"))?)?;
    let full = kron_power(c, h.legs())?;
    let full_inv = kron_power(&inv, h.legs())?;
    Ok(full.mul(h).mul(&full_inv))
}

/// `ξ²`, `α`, `β` with `H_remark(ξ²) = α·flip(H_derived) + β·1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Calibration<F> {
    pub xi_squared: F,
    pub alpha: F,
    pub beta: F,
}

/// Solves for `(ξ², α, β)` matching the periodic deformed XXX Hamiltonian
/// on `sites` sites against a derived Hamiltonian, conjugated by the spin flip.
pub fn calibrate<F: Field>(derived: &TensorMatrix<F>, sites: usize) -> Result<Option<Calibration<F>>> {
    let parts = remark_hamiltonian_parts::<F>(sites, Boundary::Periodic)?;
    if !parts.linear.is_zero() {
        return Err(Error::Unsupported("the ξ-linear part does not vanish".into()));
    }
    if derived.site_dim() != 2 || derived.legs() != sites {
        return Err(Error::Shape("derived Hamiltonian does not act on this chain".into()));
    }
    let flip = demote(&pauli::<F>()[0]);
    let flipped = conjugate_sites(&flip, derived)?.neg();
    let minus_id = TensorMatrix::identity(2, sites).neg();
    // xxx + s·quad = α·flipped + β  ⇔  s·quad − α·flipped − β = −xxx
    Ok(match solve_columns(&[&parts.quadratic, &flipped, &minus_id], &parts.xxx.neg()) {
        Solution::Unique(v) => Some(Calibration { xi_squared: v[0].clone(), alpha: v[1].clone(), beta: v[2].clone() }),
        _ => None,
    })
}

/// A constant chain operator or a transfer family, for commutation checks.
pub trait ChainOperator<F: Field> {
    fn chain_coefficients(&self) -> Vec<TensorMatrix<F>>;
}

impl<F: Field> ChainOperator<F> for TensorMatrix<F> {
    fn chain_coefficients(&self) -> Vec<TensorMatrix<F>> {
        vec![self.clone()]
    }
}

impl<F: Field> ChainOperator<F> for TransferFamily<F> {
    fn chain_coefficients(&self) -> Vec<TensorMatrix<F>> {
        self.coeffs.clone()
    }
}

/// `[A(u), B(v)] = 0` as a polynomial identity in independent `u`, `v`.
pub fn check_commutation<F: Field>(
    a: &impl ChainOperator<F>,
    b: &impl ChainOperator<F>,
    opts: GridOptions,
) -> Result<VerificationReport<F>> {
    check_commutation_coeffs("commutation", &a.chain_coefficients(), &b.chain_coefficients(), opts)
}
