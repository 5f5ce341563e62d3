//! Brute-force reference implementations over plain nested vectors. Every
//! routine here works entry by entry on explicit basis indices and shares no
//! code with the library.
#![allow(dead_code, clippy::needless_range_loop)]

use num_traits::{One, Zero};
use yb_core::{Rational, TensorMatrix};

pub type Dense = Vec<Vec<Rational>>;

pub fn zeros(d: usize) -> Dense {
    vec![vec![Rational::zero(); d]; d]
}

pub fn eye(d: usize) -> Dense {
    let mut m = zeros(d);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

pub fn dense(t: &TensorMatrix<Rational>) -> Dense {
    (0..t.dim()).map(|i| (0..t.dim()).map(|j| t.get(i, j).clone()).collect()).collect()
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let d = a.len();
    let mut out = zeros(d);
    for i in 0..d {
        for k in 0..d {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..d {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

pub fn add(a: &Dense, b: &Dense) -> Dense {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect()).collect()
}

pub fn sub(a: &Dense, b: &Dense) -> Dense {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect()
}

pub fn scale(a: &Dense, s: &Rational) -> Dense {
    a.iter().map(|x| x.iter().map(|p| p * s).collect()).collect()
}

pub fn comm(a: &Dense, b: &Dense) -> Dense {
    sub(&mul(a, b), &mul(b, a))
}

pub fn is_zero(a: &Dense) -> bool {
    a.iter().all(|r| r.iter().all(Zero::is_zero))
}

/// `(A⊗B)[(i,k),(j,l)] = A[i][j]·B[k][l]`.
pub fn kron(a: &Dense, b: &Dense) -> Dense {
    let (p, q) = (a.len(), b.len());
    let mut out = zeros(p * q);
    for i in 0..p {
        for j in 0..p {
            for k in 0..q {
                for l in 0..q {
                    out[i * q + k][j * q + l] = &a[i][j] * &b[k][l];
                }
            }
        }
    }
    out
}

/// Digits of a composite index, most significant leg first.
pub fn digits(mut idx: usize, n: usize, legs: usize) -> Vec<usize> {
    let mut d = vec![0; legs];
    for slot in d.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    d
}

pub fn index(d: &[usize], n: usize) -> usize {
    d.iter().fold(0, |acc, x| acc * n + x)
}

/// Places a two-leg operator on legs `(p, q)` (zero-based) of `total` legs.
pub fn place(r: &Dense, n: usize, p: usize, q: usize, total: usize) -> Dense {
    let d = n.pow(total as u32);
    let mut out = zeros(d);
    for row in 0..d {
        let rd = digits(row, n, total);
        for col in 0..d {
            let cd = digits(col, n, total);
            if (0..total).any(|l| l != p && l != q && rd[l] != cd[l]) {
                continue;
            }
            out[row][col] = r[rd[p] * n + rd[q]][cd[p] * n + cd[q]].clone();
        }
    }
    out
}

pub fn legs3(r: &Dense, n: usize) -> [Dense; 3] {
    [place(r, n, 0, 1, 3), place(r, n, 0, 2, 3), place(r, n, 1, 2, 3)]
}

pub fn cybe(r: &Dense, n: usize) -> Dense {
    let [a, b, c] = legs3(r, n);
    add(&add(&comm(&a, &b), &comm(&a, &c)), &comm(&b, &c))
}

pub fn ybe(r: &Dense, n: usize) -> Dense {
    let [a, b, c] = legs3(r, n);
    sub(&mul(&mul(&a, &b), &c), &mul(&mul(&c, &b), &a))
}

/// Spectral YBE residual at the point `u₁ − u₂ = a`, `u₂ − u₃ = b`.
pub fn ybe_at(r: impl Fn(&Rational) -> Dense, n: usize, a: &Rational, b: &Rational) -> Dense {
    let ab = a + b;
    let r12 = place(&r(a), n, 0, 1, 3);
    let r13 = place(&r(&ab), n, 0, 2, 3);
    let r23 = place(&r(b), n, 1, 2, 3);
    sub(&mul(&mul(&r12, &r13), &r23), &mul(&mul(&r23, &r13), &r12))
}

pub fn swap(r: &Dense, n: usize) -> Dense {
    place(r, n, 1, 0, 2)
}

/// Permutation matrix sending `e_{i₁}⊗…⊗e_{i_L}` to the tensor whose leg
/// `sigma[k]` carries `i_k`.
pub fn leg_permutation(n: usize, total: usize, sigma: &[usize]) -> Dense {
    let d = n.pow(total as u32);
    let mut out = zeros(d);
    for col in 0..d {
        let cd = digits(col, n, total);
        let mut rd = vec![0; total];
        for k in 0..total {
            rd[sigma[k]] = cd[k];
        }
        out[index(&rd, n)][col] = Rational::one();
    }
    out
}

/// `E_{ij}` with one-based indices.
pub fn unit(n: usize, i: usize, j: usize) -> Dense {
    let mut m = zeros(n);
    m[i - 1][j - 1] = Rational::one();
    m
}

pub fn q(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

pub fn from_ints(rows: &[&[i64]]) -> Dense {
    rows.iter().map(|r| r.iter().map(|x| q(*x, 1)).collect()).collect()
}

/// Partial trace over the first of `1 + rest` legs.
pub fn trace_first(m: &Dense, n: usize, rest: usize) -> Dense {
    let d = n.pow(rest as u32);
    let mut out = zeros(d);
    for a in 0..n {
        for i in 0..d {
            for j in 0..d {
                out[i][j] += &m[a * d + i][a * d + j];
            }
        }
    }
    out
}
