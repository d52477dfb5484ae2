//! Finite-dimensional evaluation of column/row operator-space norms for
//! matrix-valued tensors over Gram-weighted spaces, and the
//! vector-valued Khintchine-type checks built from them.
//!
//! The min norm of an element of (p x p matrices) (x) H^{(x)a} (x)
//! H^{(x)b}, with the first tensor slot carrying the column and the
//! second the row structure, is evaluated operationally: change both
//! slots to orthonormal coordinates with the Gram square roots, reshape
//! into a single block matrix with row index (coefficient row, a-index)
//! and column index (coefficient column, b-index), and take the spectral
//! norm. For a = 0 or b = 0 this degenerates to the row or column norm.

use crate::fock::{DeformedFockSpace, FockOperator, NormDomain};
use crate::numerics::{frobenius, kron, spectral_norm, CMat, CVec, GramForm};
use crate::report::CheckReport;
use crate::wick::{coefficient_sum_norm, wick};
use crate::{Error, Result};

/// An element of B(C^p) (x) H^{(x)a} (x) H^{(x)b} in free coordinates:
/// one p x p block per multi-index pair.
#[derive(Debug, Clone)]
pub struct MatrixValuedTensor {
    p: usize,
    a_dim: usize,
    b_dim: usize,
    coeffs: Vec<CMat>,
}

impl MatrixValuedTensor {
    pub fn zeros(p: usize, a_dim: usize, b_dim: usize) -> Self {
        MatrixValuedTensor {
            p,
            a_dim,
            b_dim,
            coeffs: vec![CMat::zeros(p, p); a_dim * b_dim],
        }
    }

    /// sum_i alpha_i (x) reshape(v_i), the standard way checks assemble
    /// their inputs: each vector of length a_dim * b_dim is split with
    /// the a-index most significant.
    pub fn from_family(coefficients: &[CMat], vectors: &[CVec], a_dim: usize, b_dim: usize) -> Self {
        assert_eq!(coefficients.len(), vectors.len());
        assert!(!coefficients.is_empty());
        let p = coefficients[0].nrows();
        let mut out = Self::zeros(p, a_dim, b_dim);
        for (alpha, v) in coefficients.iter().zip(vectors) {
            assert_eq!(v.len(), a_dim * b_dim);
            for idx in 0..v.len() {
                if v[idx] != num_complex::Complex64::ZERO {
                    out.coeffs[idx] += alpha.scale_complex(v[idx]);
                }
            }
        }
        out
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn coefficient(&self, alpha: usize, beta: usize) -> &CMat {
        &self.coeffs[alpha * self.b_dim + beta]
    }

    pub fn coefficient_mut(&mut self, alpha: usize, beta: usize) -> &mut CMat {
        &mut self.coeffs[alpha * self.b_dim + beta]
    }

    pub fn scale(&self, z: num_complex::Complex64) -> Self {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c *= z;
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.a_dim, rhs.a_dim);
        assert_eq!(self.b_dim, rhs.b_dim);
        let mut out = self.clone();
        for (c, r) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *c += r;
        }
        out
    }

    /// Reshape into the (p * a_dim) x (p * b_dim) block matrix in free
    /// coordinates.
    fn reshaped(&self) -> CMat {
        let mut m = CMat::zeros(self.p * self.a_dim, self.p * self.b_dim);
        for alpha in 0..self.a_dim {
            for beta in 0..self.b_dim {
                let c = self.coefficient(alpha, beta);
                for i in 0..self.p {
                    for j in 0..self.p {
                        m[(i * self.a_dim + alpha, j * self.b_dim + beta)] = c[(i, j)];
                    }
                }
            }
        }
        m
    }

    fn weighted(&self, gram_a: &GramForm, gram_b: &GramForm) -> CMat {
        assert_eq!(gram_a.dim(), self.a_dim);
        assert_eq!(gram_b.dim(), self.b_dim);
        let m = self.reshaped();
        let left = kron(&crate::numerics::identity(self.p), &gram_a.sqrt());
        let right = kron(&crate::numerics::identity(self.p), &gram_b.sqrt()).transpose();
        left * m * right
    }
}

trait ScaleComplex {
    fn scale_complex(&self, z: num_complex::Complex64) -> CMat;
}

impl ScaleComplex for CMat {
    fn scale_complex(&self, z: num_complex::Complex64) -> CMat {
        self * z
    }
}

/// Column/row min norm with explicit Gram forms on both slots.
pub fn min_norm(x: &MatrixValuedTensor, gram_a: &GramForm, gram_b: &GramForm) -> f64 {
    spectral_norm(&x.weighted(gram_a, gram_b))
}

/// Min norm with the deformed level Grams of a space: degree a on the
/// column slot, degree b on the row slot.
pub fn min_norm_levels(
    space: &DeformedFockSpace,
    x: &MatrixValuedTensor,
    a: usize,
    b: usize,
) -> Result<f64> {
    if a + b > space.levels() {
        return Err(Error::LevelOverflow {
            level: a + b,
            max: space.levels(),
        });
    }
    Ok(min_norm(x, space.gram(a), space.gram(b)))
}

/// Gram-weighted Hilbert-Schmidt norm of the same element; always
/// dominates the min norm.
pub fn hilbert_schmidt_norm(x: &MatrixValuedTensor, gram_a: &GramForm, gram_b: &GramForm) -> f64 {
    frobenius(&x.weighted(gram_a, gram_b))
}

/// Complete-boundedness check for creations: the weighted norm of
/// sum_i alpha_i (x) a*(xi_i) over exact blocks against
/// sqrt(c) times the column min norm of sum_i alpha_i (x) xi_i.
pub fn creation_cb_check(
    space: &DeformedFockSpace,
    n: usize,
    coefficients: &[CMat],
    vectors: &[CVec],
    tol: f64,
) -> Result<CheckReport> {
    let ops: Vec<FockOperator> = vectors
        .iter()
        .map(|xi| crate::fock::creation(space, n, xi))
        .collect();
    let lhs = coefficient_sum_norm(space, coefficients, &ops, NormDomain::ExactBlocks);
    let x = MatrixValuedTensor::from_family(coefficients, vectors, space.dim_level(n), 1);
    let column = min_norm(&x, space.gram(n), &GramForm::identity(1));
    let rhs = space.c_constant().sqrt() * column;
    Ok(CheckReport::new("creation-cb-bound", lhs, rhs, tol)
        .with_param("n", n)
        .with_param("q", space.deformation().q_bound())
        .truncated(true))
}

/// Dual check for annihilations with the row structure on the conjugate
/// space: the weighted norm of sum_i alpha_i (x) a(conj xi_i) against
/// sqrt(c) times the row min norm of the family in the conjugate
/// geometry. The conjugate row norm squares to
/// |sum_ij <w_i, w_j> alpha_i alpha_j^dagger| for the annihilated
/// vectors w_i, which the transposed Gram on the un-conjugated
/// coordinates realizes.
pub fn annihilation_cb_check(
    space: &DeformedFockSpace,
    n: usize,
    coefficients: &[CMat],
    vectors: &[CVec],
    tol: f64,
) -> Result<CheckReport> {
    let conj_n = space.conjugation_matrix(n);
    let annihilated: Vec<CVec> = vectors
        .iter()
        .map(|xi| &conj_n * xi.map(|z| z.conj()))
        .collect();
    let ops: Vec<FockOperator> = annihilated
        .iter()
        .map(|w| crate::fock::annihilation(space, n, w))
        .collect();
    let lhs = coefficient_sum_norm(space, coefficients, &ops, NormDomain::ExactBlocks);
    let row_vectors: Vec<CVec> = vectors.iter().map(|xi| &conj_n * xi).collect();
    let x = MatrixValuedTensor::from_family(coefficients, &row_vectors, 1, space.dim_level(n));
    let row = min_norm(&x, &GramForm::identity(1), &space.gram(n).transposed()?);
    let rhs = space.c_constant().sqrt() * row;
    Ok(CheckReport::new("annihilation-cb-bound", lhs, rhs, tol)
        .with_param("n", n)
        .with_param("q", space.deformation().q_bound())
        .truncated(true))
}

/// Outcome of a vector-valued Khintchine evaluation: the per-k reshaped
/// norms, the middle operator norm over the cutoff, and the two
/// inequality reports.
#[derive(Debug, Clone)]
pub struct KhintchineOutcome {
    pub per_k: Vec<f64>,
    pub middle: f64,
    pub lower: CheckReport,
    pub upper: CheckReport,
}

/// Two-sided vector-valued Khintchine check for the family
/// sum_i alpha_i (x) W(xi_i) with degree-n vectors:
/// max_k of the (n-k, k) reshaped min norms bounds the middle from
/// below, and constant * (n+1) * max_k bounds it from above. The middle
/// is computed over the full compression to the cutoff, which retains
/// every level the lower-bound blocks live on, so both inequalities are
/// certified at finite cutoff.
///
/// `slot_twist`, when present, post-composes each shuffle adjoint with a
/// per-k linear map on the length-k slot (the quasi-free checks pass the
/// antilinear reversal there; inputs are real in that use).
#[allow(clippy::too_many_arguments)]
pub fn khintchine_check(
    space: &DeformedFockSpace,
    n: usize,
    coefficients: &[CMat],
    vectors: &[CVec],
    constant: f64,
    slot_twist: Option<&dyn Fn(usize) -> CMat>,
    tol_lower: f64,
    tol_upper: f64,
) -> Result<KhintchineOutcome> {
    if n > space.levels() {
        return Err(Error::LevelOverflow {
            level: n,
            max: space.levels(),
        });
    }
    assert_eq!(coefficients.len(), vectors.len());
    let t = space.deformation();
    let mut per_k = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let r_adj = crate::fock::shuffle_operator(t, n, k)?.adjoint();
        let twist = slot_twist.map(|f| f(k));
        let split: Vec<CVec> = vectors
            .iter()
            .map(|xi| {
                let base = &r_adj * xi;
                match &twist {
                    Some(m) => apply_on_tail_slot(&base, space.dim_level(n - k), m),
                    None => base,
                }
            })
            .collect();
        let x = MatrixValuedTensor::from_family(
            coefficients,
            &split,
            space.dim_level(n - k),
            space.dim_level(k),
        );
        per_k.push(min_norm(&x, space.gram(n - k), space.gram(k)));
    }
    let wicks: Vec<FockOperator> = vectors
        .iter()
        .map(|xi| wick(space, n, xi))
        .collect::<Result<_>>()?;
    let middle = coefficient_sum_norm(space, coefficients, &wicks, NormDomain::FullTruncation);
    let max_k = per_k.iter().cloned().fold(0.0f64, f64::max);
    let lower = CheckReport::new("khintchine-lower", max_k, middle, tol_lower)
        .with_param("n", n)
        .with_param("p", coefficients[0].nrows())
        .with_param("q", t.q_bound())
        .truncated(true)
        .with_note("middle term is a cutoff lower bound of the true norm");
    let upper = CheckReport::new(
        "khintchine-upper",
        middle,
        constant * (n as f64 + 1.0) * max_k,
        tol_upper,
    )
    .with_param("n", n)
    .with_param("p", coefficients[0].nrows())
    .with_param("q", t.q_bound())
    .truncated(true);
    Ok(KhintchineOutcome {
        per_k,
        middle,
        lower,
        upper,
    })
}

/// Applies a linear map to the trailing tensor slot of a split vector:
/// v indexed (head, tail) -> (I (x) m) v.
fn apply_on_tail_slot(v: &CVec, head_dim: usize, m: &CMat) -> CVec {
    let tail_dim = m.ncols();
    assert_eq!(v.len(), head_dim * tail_dim);
    let mut out = CVec::zeros(head_dim * m.nrows());
    for h in 0..head_dim {
        for row in 0..m.nrows() {
            let mut acc = num_complex::Complex64::ZERO;
            for col in 0..tail_dim {
                acc += m[(row, col)] * v[h * tail_dim + col];
            }
            out[h * m.nrows() + row] = acc;
        }
    }
    out
}
