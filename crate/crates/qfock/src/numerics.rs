//! Dense complex linear-algebra primitives shared by every module:
//! Hermitian eigendecomposition, powers of positive operators, Kronecker
//! products, and operator norms between Gram-weighted spaces.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::{Error, Result};

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Relative threshold below which an eigenvalue of a Gram matrix counts
/// as a loss of strict positivity. Strict positivity of the deformed
/// Gram matrices is a theorem for strictly contractive deformations, so
/// falling below this is treated as an error, never clamped.
pub const EPS_PSD: f64 = 1e-12;

/// Default tolerance for Hermitian symmetry validation.
pub const HERM_TOL: f64 = 1e-10;

/// Dimension threshold above which spectral norms switch from exact
/// factorizations to power iteration.
const DENSE_NORM_LIMIT: usize = 20_000;

pub fn cplx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Kronecker product, row-major block convention: the left factor indexes
/// the coarse blocks.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Largest entry magnitude.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

pub fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Max-norm of M - M^dagger.
pub fn hermitian_residual(m: &CMat) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
#[derive(Debug, Clone)]
pub struct HermEigen {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: CMat,
}

impl HermEigen {
    /// V diag(f(lambda)) V^dagger.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> CMat {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for (j, &v) in self.values.iter().enumerate() {
            let fv = cplx(f(v), 0.0);
            for i in 0..n {
                scaled[(i, j)] *= fv;
            }
        }
        &scaled * self.vectors.adjoint()
    }
}

/// Diagonalize a Hermitian matrix. Rejects non-square input and input
/// whose asymmetry exceeds `tol`; the computation itself runs on the
/// Hermitian average so the result is exactly self-adjoint.
pub fn herm_eigen(m: &CMat, tol: f64) -> Result<HermEigen> {
    if m.nrows() != m.ncols() {
        return Err(Error::NonSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let residual = hermitian_residual(m);
    if residual > tol {
        return Err(Error::NotHermitian { residual, tol });
    }
    let sym = (m + m.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMat::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    Ok(HermEigen { values, vectors })
}

/// Spectral norm (largest singular value) of a rectangular complex matrix.
///
/// Computed from the Hermitian eigenproblem of X X^dagger or X^dagger X,
/// whichever is smaller; above `DENSE_NORM_LIMIT` rows and columns it
/// falls back to power iteration with 1e-8 relative convergence.
pub fn spectral_norm(m: &CMat) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    if m.nrows().min(m.ncols()) > DENSE_NORM_LIMIT {
        return power_iteration_norm(m);
    }
    let gram = if m.ncols() <= m.nrows() {
        m.adjoint() * m
    } else {
        m * m.adjoint()
    };
    let eig = (&gram + gram.adjoint()).scale(0.5).symmetric_eigen();
    let top = eig.eigenvalues.iter().fold(0.0f64, |a, &b| a.max(b));
    top.max(0.0).sqrt()
}

fn power_iteration_norm(m: &CMat) -> f64 {
    let n = m.ncols();
    let mut v = CVec::from_fn(n, |i, _| cplx(1.0 + (i as f64 * 0.7).sin(), 0.3 * (i as f64).cos()));
    v /= cplx(v.norm(), 0.0);
    let mut last = 0.0f64;
    for _ in 0..2000 {
        let w = m * &v;
        let u = m.adjoint() * w;
        let lambda = u.norm();
        if lambda == 0.0 {
            return 0.0;
        }
        v = u / cplx(lambda, 0.0);
        let estimate = lambda.sqrt();
        if (estimate - last).abs() <= 1e-8 * estimate.max(1.0) {
            return estimate;
        }
        last = estimate;
    }
    last
}

/// A validated Hermitian positive-definite form, cached with its
/// eigendecomposition so that fractional powers are cheap.
#[derive(Debug, Clone)]
pub struct GramForm {
    dim: usize,
    matrix: CMat,
    eigen: HermEigen,
}

impl GramForm {
    /// Validate Hermitian symmetry and strict positivity (smallest
    /// eigenvalue above `EPS_PSD` relative to the largest).
    pub fn new(matrix: CMat) -> Result<Self> {
        Self::with_tolerances(matrix, HERM_TOL, EPS_PSD)
    }

    pub fn with_tolerances(matrix: CMat, herm_tol: f64, eps_psd: f64) -> Result<Self> {
        let eigen = herm_eigen(&matrix, herm_tol)?;
        let dim = matrix.nrows();
        let largest = eigen.values.first().copied().unwrap_or(0.0);
        let smallest = eigen.values.last().copied().unwrap_or(0.0);
        let threshold = eps_psd * largest.max(0.0);
        if smallest <= threshold || largest <= 0.0 {
            return Err(Error::PositivityLoss {
                value: smallest,
                threshold,
            });
        }
        Ok(GramForm { dim, matrix, eigen })
    }

    pub fn identity(dim: usize) -> Self {
        let matrix = identity(dim);
        let eigen = HermEigen {
            values: vec![1.0; dim],
            vectors: identity(dim),
        };
        GramForm { dim, matrix, eigen }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn eigen(&self) -> &HermEigen {
        &self.eigen
    }

    /// M^p through the cached eigendecomposition.
    pub fn power(&self, p: f64) -> CMat {
        self.eigen.map_spectrum(|v| v.powf(p))
    }

    pub fn sqrt(&self) -> CMat {
        self.power(0.5)
    }

    pub fn inv_sqrt(&self) -> CMat {
        self.power(-0.5)
    }

    pub fn inverse(&self) -> CMat {
        self.power(-1.0)
    }

    /// <x, M y>.
    pub fn inner(&self, x: &CVec, y: &CVec) -> Complex64 {
        (x.adjoint() * (&self.matrix * y))[(0, 0)]
    }

    pub fn norm(&self, x: &CVec) -> f64 {
        self.inner(x, x).re.max(0.0).sqrt()
    }

    /// Gram of the transposed (conjugate-space) form.
    pub fn transposed(&self) -> Result<GramForm> {
        GramForm::new(self.matrix.transpose())
    }
}

/// Fractional power of a positive form.
pub fn psd_power(g: &GramForm, p: f64) -> CMat {
    g.power(p)
}

/// Operator norm of `x` as a map from the `g_in`-weighted space to the
/// `g_out`-weighted space: the spectral norm of
/// `g_out^{1/2} x g_in^{-1/2}`.
pub fn weighted_operator_norm(x: &CMat, g_out: &GramForm, g_in: &GramForm) -> Result<f64> {
    if x.nrows() != g_out.dim() || x.ncols() != g_in.dim() {
        return Err(Error::DimensionMismatch(format!(
            "operator is {}x{}, output gram is {}, input gram is {}",
            x.nrows(),
            x.ncols(),
            g_out.dim(),
            g_in.dim()
        )));
    }
    Ok(spectral_norm(&(g_out.sqrt() * x * g_in.inv_sqrt())))
}

/// Adjoint of `x` with respect to a single Gram form: G^{-1} x^dagger G.
pub fn gram_adjoint(x: &CMat, g: &GramForm) -> CMat {
    g.inverse() * x.adjoint() * g.matrix()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Flip e_i (x) e_j -> e_j (x) e_i on C^d (x) C^d, built directly.
    fn flip(d: usize) -> CMat {
        let mut m = CMat::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                m[(j * d + i, i * d + j)] = cplx(1.0, 0.0);
            }
        }
        m
    }

    /// Level-2 symmetrizer of the q-deformation, I + q*flip, assembled
    /// here independently of the deformation module.
    fn level2_symmetrizer(d: usize, q: f64) -> CMat {
        identity(d * d) + flip(d).scale(q)
    }

    #[test]
    fn eigen_identity() {
        let e = herm_eigen(&identity(2), 1e-12).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0]);
    }

    #[test]
    fn eigen_diagonal() {
        let m = CMat::from_diagonal(&CVec::from_vec(vec![cplx(3.0, 0.0), cplx(1.0, 0.0)]));
        let e = herm_eigen(&m, 1e-12).unwrap();
        assert!((e.values[0] - 3.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
        // eigenvectors are the standard basis up to phase
        for j in 0..2 {
            assert!((e.vectors[(j, j)].norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn eigen_complex_hermitian() {
        // [[2, i], [-i, 2]] has eigenvalues 3 and 1.
        let m = CMat::from_row_slice(
            2,
            2,
            &[cplx(2.0, 0.0), cplx(0.0, 1.0), cplx(0.0, -1.0), cplx(2.0, 0.0)],
        );
        let e = herm_eigen(&m, 1e-12).unwrap();
        assert!((e.values[0] - 3.0).abs() < 1e-12);
        assert!((e.values[1] - 1.0).abs() < 1e-12);
        let vtv = e.vectors.adjoint() * &e.vectors;
        assert!(frobenius(&(&vtv - identity(2))) < 1e-12);
    }

    #[test]
    fn eigen_level2_symmetrizer() {
        // For d=2, q=0.5 the spectrum is 1+q on the symmetric subspace
        // (dim 3) and 1-q on the antisymmetric one (dim 1).
        let e = herm_eigen(&level2_symmetrizer(2, 0.5), 1e-12).unwrap();
        let expect = [1.5, 1.5, 1.5, 0.5];
        for (got, want) in e.values.iter().zip(expect) {
            assert!((got - want).abs() < 1e-12, "{:?}", e.values);
        }
    }

    #[test]
    fn eigen_rejects_non_square() {
        let m = CMat::zeros(2, 3);
        assert!(matches!(herm_eigen(&m, 1e-12), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn eigen_rejects_non_hermitian() {
        let mut m = identity(2);
        m[(0, 1)] = cplx(0.5, 0.0);
        assert!(matches!(
            herm_eigen(&m, 1e-12),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn psd_power_identity_inverse_sqrt() {
        let g = GramForm::new(identity(3)).unwrap();
        assert!(frobenius(&(psd_power(&g, -0.5) - identity(3))) < 1e-14);
    }

    #[test]
    fn psd_power_diagonal_sqrt() {
        let m = CMat::from_diagonal(&CVec::from_vec(vec![cplx(4.0, 0.0), cplx(1.0, 0.0)]));
        let g = GramForm::new(m).unwrap();
        let s = psd_power(&g, 0.5);
        assert!((s[(0, 0)].re - 2.0).abs() < 1e-14);
        assert!((s[(1, 1)].re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn psd_power_level2_inverse_sqrt_spectrum() {
        let g = GramForm::new(level2_symmetrizer(2, 0.5)).unwrap();
        let inv_sqrt = psd_power(&g, -0.5);
        let e = herm_eigen(&inv_sqrt, 1e-10).unwrap();
        // spectrum {0.5^{-1/2}} once and {1.5^{-1/2}} three times
        assert!((e.values[0] - 0.5f64.powf(-0.5)).abs() < 1e-12);
        for k in 1..4 {
            assert!((e.values[k] - 1.5f64.powf(-0.5)).abs() < 1e-12);
        }
    }

    #[test]
    fn gram_rejects_indefinite() {
        let m = CMat::from_diagonal(&CVec::from_vec(vec![cplx(1.0, 0.0), cplx(-0.25, 0.0)]));
        assert!(matches!(
            GramForm::new(m),
            Err(Error::PositivityLoss { .. })
        ));
    }

    #[test]
    fn weighted_norm_trivial_cases() {
        let g = GramForm::new(identity(2)).unwrap();
        assert!((weighted_operator_norm(&identity(2), &g, &g).unwrap() - 1.0).abs() < 1e-14);
        let twice = identity(2).scale(2.0);
        assert!((weighted_operator_norm(&twice, &g, &g).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn weighted_norm_flip_is_isometry_for_level2_gram() {
        // flip commutes with I + q*flip and is an involution, so it is an
        // isometry of the weighted space.
        let g = GramForm::new(level2_symmetrizer(2, 0.5)).unwrap();
        let n = weighted_operator_norm(&flip(2), &g, &g).unwrap();
        assert!((n - 1.0).abs() < 1e-12, "norm {n}");
    }

    #[test]
    fn weighted_norm_rejects_mismatched_dims() {
        let g2 = GramForm::new(identity(2)).unwrap();
        let g3 = GramForm::new(identity(3)).unwrap();
        assert!(weighted_operator_norm(&identity(2), &g3, &g2).is_err());
    }

    #[test]
    fn weighted_norm_gram_adjoint_invariance() {
        let g = GramForm::new(level2_symmetrizer(2, 0.4)).unwrap();
        let mut x = CMat::zeros(4, 4);
        let mut phase = 0.3f64;
        for i in 0..4 {
            for j in 0..4 {
                phase = (phase * 31.7).sin();
                x[(i, j)] = cplx(phase, (phase * 2.0).cos() * 0.5);
            }
        }
        let adj = gram_adjoint(&x, &g);
        let a = weighted_operator_norm(&x, &g, &g).unwrap();
        let b = weighted_operator_norm(&adj, &g, &g).unwrap();
        assert!((a - b).abs() < 1e-10 * a.max(1.0));
    }

    fn small_entries() -> impl Strategy<Value = Vec<(f64, f64)>> {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 9)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn reconstruction_from_eigen(entries in small_entries()) {
            let raw = CMat::from_fn(3, 3, |i, j| cplx(entries[3 * i + j].0, entries[3 * i + j].1));
            let herm = (&raw + raw.adjoint()).scale(0.5);
            let e = herm_eigen(&herm, 1e-10).unwrap();
            let rec = e.map_spectrum(|v| v);
            prop_assert!(frobenius(&(&rec - &herm)) <= 1e-10 * frobenius(&herm).max(1e-30));
        }

        #[test]
        fn sqrt_squares_back(entries in small_entries()) {
            let raw = CMat::from_fn(3, 3, |i, j| cplx(entries[3 * i + j].0, entries[3 * i + j].1));
            // A^dagger A + I is safely positive definite
            let pd = raw.adjoint() * &raw + identity(3);
            let g = GramForm::new(pd.clone()).unwrap();
            let s = g.sqrt();
            prop_assert!(frobenius(&(&s * &s - &pd)) <= 1e-10 * frobenius(&pd));
        }

        #[test]
        fn weighted_norm_submultiplicative(
            xs in small_entries(),
            ys in small_entries(),
            gs in small_entries(),
        ) {
            let x = CMat::from_fn(3, 3, |i, j| cplx(xs[3 * i + j].0, xs[3 * i + j].1));
            let y = CMat::from_fn(3, 3, |i, j| cplx(ys[3 * i + j].0, ys[3 * i + j].1));
            let graw = CMat::from_fn(3, 3, |i, j| cplx(gs[3 * i + j].0, gs[3 * i + j].1));
            let g = GramForm::new(graw.adjoint() * &graw + identity(3)).unwrap();
            let nx = weighted_operator_norm(&x, &g, &g).unwrap();
            let ny = weighted_operator_norm(&y, &g, &g).unwrap();
            let nxy = weighted_operator_norm(&(&x * &y), &g, &g).unwrap();
            prop_assert!(nxy <= nx * ny + 1e-10 * (1.0 + nx * ny));
        }
    }
}
