//! Yang-Baxter deformation operators: construction and validation of the
//! deformation T on H (x) H, its extensions T_k to H^{(x)n}, and the
//! quasi-multiplicative map sending a permutation to a product of T_k
//! along one of its reduced words.

use num_complex::Complex64;

use crate::numerics::{cplx, frobenius, hermitian_residual, identity, spectral_norm, CMat};
use crate::symgroup::{DescentChoice, Permutation};
use crate::{Error, Result};

/// Frobenius tolerance on the braid-relation defect accepted at
/// construction; the quasi-multiplicative extension is well defined only
/// when the braid relation holds.
pub const BRAID_TOL: f64 = 1e-10;

/// Residual below which the cyclic coefficient condition counts as
/// satisfied and the deformation as tracial.
pub const TRACIAL_TOL: f64 = 1e-12;

/// A validated self-adjoint strict contraction on H (x) H satisfying the
/// braid relation. `q_bound` is the computed operator norm and `tracial`
/// records whether the cyclic coefficient condition holds.
#[derive(Debug, Clone)]
pub struct YangBaxterOperator {
    d: usize,
    matrix: CMat,
    q_bound: f64,
    tracial: bool,
}

impl YangBaxterOperator {
    /// The scaled flip e_i (x) e_j -> q e_j (x) e_i, the standard
    /// q-deformation. Requires |q| < 1.
    pub fn q_flip(d: usize, q: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter("d must be positive".into()));
        }
        if !(q.abs() < 1.0) {
            return Err(Error::NotStrictContraction { norm: q.abs() });
        }
        let mut matrix = CMat::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                matrix[(j * d + i, i * d + j)] = cplx(q, 0.0);
            }
        }
        Self::validated(d, matrix)
    }

    /// The deformation T e_i (x) e_j = q_ij e_j (x) e_i from a Hermitian
    /// coupling matrix with sup |q_ij| < 1. Tracial exactly when every
    /// q_ij is real.
    pub fn from_coupling_matrix(q: &CMat) -> Result<Self> {
        let d = q.nrows();
        if q.ncols() != d || d == 0 {
            return Err(Error::NonSquare {
                rows: q.nrows(),
                cols: q.ncols(),
            });
        }
        let residual = hermitian_residual(q);
        if residual > crate::numerics::HERM_TOL {
            return Err(Error::NotHermitian {
                residual,
                tol: crate::numerics::HERM_TOL,
            });
        }
        let sup = q.iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
        if !(sup < 1.0) {
            return Err(Error::NotStrictContraction { norm: sup });
        }
        let mut matrix = CMat::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                matrix[(j * d + i, i * d + j)] = q[(i, j)];
            }
        }
        Self::validated(d, matrix)
    }

    /// A user-supplied candidate matrix on H (x) H; runs the full
    /// invariant check set (self-adjointness, strict contraction, braid)
    /// and refuses on any failure.
    pub fn from_matrix(matrix: CMat) -> Result<Self> {
        let dim = matrix.nrows();
        if matrix.ncols() != dim {
            return Err(Error::NonSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        let d = (dim as f64).sqrt().round() as usize;
        if d * d != dim {
            return Err(Error::InvalidParameter(format!(
                "dimension {dim} is not a perfect square"
            )));
        }
        Self::validated(d, matrix)
    }

    fn validated(d: usize, matrix: CMat) -> Result<Self> {
        let residual = hermitian_residual(&matrix);
        if residual > crate::numerics::HERM_TOL {
            return Err(Error::NotHermitian {
                residual,
                tol: crate::numerics::HERM_TOL,
            });
        }
        let q_bound = spectral_norm(&matrix);
        if !(q_bound < 1.0) {
            return Err(Error::NotStrictContraction { norm: q_bound });
        }
        let braid = braid_residual(&matrix)?;
        if braid > BRAID_TOL {
            return Err(Error::BraidViolation {
                residual: braid,
                tol: BRAID_TOL,
            });
        }
        let tracial = traciality_residual_of(&matrix, d) <= TRACIAL_TOL;
        Ok(YangBaxterOperator {
            d,
            matrix,
            q_bound,
            tracial,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    /// Computed operator norm of T; all norm constants are evaluated at
    /// this value.
    pub fn q_bound(&self) -> f64 {
        self.q_bound
    }

    pub fn is_tracial(&self) -> bool {
        self.tracial
    }

    /// Coefficient <e_s (x) e_r, T(e_i (x) e_j)>.
    pub fn coefficient(&self, s: usize, r: usize, i: usize, j: usize) -> Complex64 {
        self.matrix[(s * self.d + r, i * self.d + j)]
    }

    /// Residual of the cyclic coefficient condition; zero means the
    /// vacuum expectation is a trace.
    pub fn traciality_residual(&self) -> f64 {
        traciality_residual_of(&self.matrix, self.d)
    }

    /// Left-multiplies `m` by T_k = I^{(x)k} (x) T (x) I^{(x)n-k-2}
    /// without materializing T_k. Slots are 0-based: T_k couples tensor
    /// slots k and k+1 of n.
    pub fn apply_extended(&self, k: usize, n: usize, m: &CMat) -> CMat {
        apply_tk(&self.matrix, self.d, k, n, m)
    }
}

/// T_k M for a raw deformation matrix; exposed for candidate matrices
/// that have not been validated yet.
pub fn apply_tk(t: &CMat, d: usize, k: usize, n: usize, m: &CMat) -> CMat {
    assert!(k + 2 <= n, "slot {k} out of range for {n} tensor factors");
    let dim = d.pow(n as u32);
    assert_eq!(m.nrows(), dim);
    let tail = d.pow((n - k - 2) as u32);
    let head = d.pow(k as u32);
    let pair = d * d;
    // nonzero entries of T, gathered once
    let mut entries: Vec<(usize, usize, Complex64)> = Vec::new();
    for p in 0..pair {
        for q in 0..pair {
            let z = t[(p, q)];
            if z != Complex64::ZERO {
                entries.push((p, q, z));
            }
        }
    }
    let mut out = CMat::zeros(m.nrows(), m.ncols());
    for col in 0..m.ncols() {
        let src = m.column(col);
        let mut dst = out.column_mut(col);
        for h in 0..head {
            let base = h * pair * tail;
            for &(p, q, z) in &entries {
                let dst_base = base + p * tail;
                let src_base = base + q * tail;
                for c in 0..tail {
                    dst[dst_base + c] += z * src[src_base + c];
                }
            }
        }
    }
    out
}

/// Frobenius norm of the braid-relation defect
/// (I (x) T)(T (x) I)(I (x) T) - (T (x) I)(I (x) T)(T (x) I) on three
/// tensor factors. Accepts any square matrix of perfect-square dimension.
pub fn braid_residual(t: &CMat) -> Result<f64> {
    let dim = t.nrows();
    if t.ncols() != dim {
        return Err(Error::NonSquare {
            rows: t.nrows(),
            cols: t.ncols(),
        });
    }
    let d = (dim as f64).sqrt().round() as usize;
    if d * d != dim {
        return Err(Error::InvalidParameter(format!(
            "dimension {dim} is not a perfect square"
        )));
    }
    let eye = identity(d.pow(3));
    // T_0 = T (x) I, T_1 = I (x) T
    let lhs = apply_tk(t, d, 1, 3, &apply_tk(t, d, 0, 3, &apply_tk(t, d, 1, 3, &eye)));
    let rhs = apply_tk(t, d, 0, 3, &apply_tk(t, d, 1, 3, &apply_tk(t, d, 0, 3, &eye)));
    Ok(frobenius(&(lhs - rhs)))
}

fn traciality_residual_of(t: &CMat, d: usize) -> f64 {
    let mut worst = 0.0f64;
    for s in 0..d {
        for r in 0..d {
            for i in 0..d {
                for j in 0..d {
                    let a = t[(s * d + r, i * d + j)];
                    let b = t[(r * d + j, s * d + i)];
                    worst = worst.max((a - b).norm());
                }
            }
        }
    }
    worst
}

/// The permutation unitary on H^{(x)n} sending f_1 (x) .. (x) f_n to
/// f_{sigma^{-1}(1)} (x) .. (x) f_{sigma^{-1}(n)}.
pub fn permutation_operator(sigma: &Permutation, d: usize) -> CMat {
    let n = sigma.len();
    let dim = d.pow(n as u32);
    let inv = sigma.inverse();
    let mut out = CMat::zeros(dim, dim);
    let mut digits = vec![0usize; n];
    for col in 0..dim {
        unflatten_digits(col, d, &mut digits);
        let mut row = 0usize;
        for t in 0..n {
            row = row * d + digits[inv.apply(t)];
        }
        out[(row, col)] = cplx(1.0, 0.0);
    }
    out
}

/// Writes the base-d digits of `index`, most significant tensor slot
/// first; the inverse of the flattening used everywhere in the crate.
pub(crate) fn unflatten_digits(mut index: usize, d: usize, digits: &mut [usize]) {
    for slot in (0..digits.len()).rev() {
        digits[slot] = index % d;
        index /= d;
    }
}

/// Evaluates the quasi-multiplicative extension at `sigma` on n tensor
/// factors: the product of T_k along a reduced word. Well defined
/// because construction of the operator enforced the braid relation.
pub fn phi(t: &YangBaxterOperator, sigma: &Permutation, n: usize) -> CMat {
    phi_by(t, sigma, n, DescentChoice::Leftmost)
}

/// Same evaluation along the reduced word from a chosen descent
/// strategy; any strategy yields the same matrix.
pub fn phi_by(
    t: &YangBaxterOperator,
    sigma: &Permutation,
    n: usize,
    choice: DescentChoice,
) -> CMat {
    assert_eq!(sigma.len(), n);
    let word = sigma.reduced_word_by(choice);
    let mut m = identity(t.d().pow(n as u32));
    for &k in word.iter().rev() {
        m = t.apply_extended(k, n, &m);
    }
    m
}
