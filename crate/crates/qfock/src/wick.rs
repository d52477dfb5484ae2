//! Wick products on the truncated deformed Fock space, assembled from
//! the Wick formula: a degree-n vector maps to the sum over k of a
//! creation/annihilation bimonomial applied to the k-th shuffle adjoint
//! of the vector. Also: right Wick products by conjugation with the
//! antilinear reversal, the adjoint identity, the two-sided norm bound
//! for Wick operators, and the compression identity that pins the
//! (n-k, k) block of a bimonomial.

use num_complex::Complex64;

use crate::fock::{annihilation, DeformedFockSpace, FockOperator, NormDomain};
use crate::numerics::{max_abs, spectral_norm, CMat, CVec};
use crate::report::CheckReport;
use crate::{Error, Result};

/// An antilinear map stored as the matrix of v -> matrix * conj(v).
/// Composing two antilinear maps yields the linear map
/// matrix_1 * conj(matrix_2).
#[derive(Debug, Clone)]
pub struct AntilinearMap {
    matrix: CMat,
}

impl AntilinearMap {
    pub fn new(matrix: CMat) -> Self {
        AntilinearMap { matrix }
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn apply(&self, v: &CVec) -> CVec {
        &self.matrix * v.map(|z| z.conj())
    }

    /// self o other as a linear map.
    pub fn compose(&self, other: &AntilinearMap) -> CMat {
        &self.matrix * other.matrix.map(|z| z.conj())
    }

    /// Conjugates a linear block matrix: self o m o self^{-1} would need
    /// an inverse; this is the sandwich self o m o other for antilinear
    /// maps on the target and source sides.
    pub fn sandwich(&self, m: &CMat, other: &AntilinearMap) -> CMat {
        &self.matrix * m.map(|z| z.conj()) * other.matrix.map(|z| z.conj())
    }
}

/// The antilinear reversal S at level n of the space.
pub fn level_reversal(space: &DeformedFockSpace, n: usize) -> AntilinearMap {
    AntilinearMap::new(space.reversal_conjugation(n))
}

/// Conjugates a Fock operator blockwise by per-level antilinear maps:
/// block(a, b) -> S_a conj(block(a, b)) conj(S_b). Level structure and
/// exactness are preserved because the maps are level-diagonal.
pub fn antilinear_conjugate(
    space: &DeformedFockSpace,
    op: &FockOperator,
    level_map: impl Fn(usize) -> AntilinearMap,
) -> FockOperator {
    let mut out = FockOperator::zero(space);
    for (&(target, source), block) in op.blocks() {
        let s_t = level_map(target);
        let s_s = level_map(source);
        out.set_block(target, source, s_t.sandwich(block, &s_s));
    }
    out.with_exact_source_max(op.exact_source_max())
}

/// The bimonomial sending x in H^{(x)n-k} (x) H^{(x)k} to
/// a*(head) a(C tail) summed over the coefficients of x, where C is the
/// real structure of the space. Linear in x.
pub fn wick_monomial(
    space: &DeformedFockSpace,
    n: usize,
    k: usize,
    x: &CVec,
) -> Result<FockOperator> {
    if k > n {
        return Err(Error::InvalidParameter(format!("k={k} exceeds n={n}")));
    }
    if n > space.levels() {
        return Err(Error::LevelOverflow {
            level: n,
            max: space.levels(),
        });
    }
    let dk = space.dim_level(k);
    let dnk = space.dim_level(n - k);
    assert_eq!(x.len(), dk * dnk);
    let conj_k = space.conjugation_matrix(k);
    let ann_basis: Vec<FockOperator> = (0..dk)
        .map(|beta| {
            let w: CVec = conj_k.column(beta).into_owned();
            annihilation(space, k, &w)
        })
        .collect();
    let levels = space.levels();
    let mut out = FockOperator::zero(space);
    for m in k..=levels {
        let target = m + n - 2 * k;
        if target > levels {
            continue;
        }
        let low = m - k; // level between annihilation and creation
        let low_dim = space.dim_level(low);
        let src_dim = space.dim_level(m);
        let mut block = CMat::zeros(dnk * low_dim, src_dim);
        for alpha in 0..dnk {
            let mut partial = CMat::zeros(low_dim, src_dim);
            for beta in 0..dk {
                let coeff = x[alpha * dk + beta];
                if coeff == Complex64::ZERO {
                    continue;
                }
                if let Some(ab) = ann_basis[beta].block(low, m) {
                    partial += ab * coeff;
                }
            }
            for i in 0..low_dim {
                for j in 0..src_dim {
                    block[(alpha * low_dim + i, j)] = partial[(i, j)];
                }
            }
        }
        out.set_block(target, m, block);
    }
    let raise = (n - k).saturating_sub(k);
    Ok(out.with_exact_source_max(levels - raise.min(levels)))
}

/// Wick product of a degree-n coordinate vector: the unique operator in
/// the deformed algebra whose vacuum image is the vector, assembled as
/// sum_k bimonomial_k(R_{n,k}^* xi).
pub fn wick(space: &DeformedFockSpace, n: usize, xi: &CVec) -> Result<FockOperator> {
    if n > space.levels() {
        return Err(Error::LevelOverflow {
            level: n,
            max: space.levels(),
        });
    }
    let t = space.deformation();
    let mut total = FockOperator::zero(space);
    for k in 0..=n {
        let r = crate::fock::shuffle_operator(t, n, k)?;
        let x = r.adjoint() * xi;
        total = total.add(&wick_monomial(space, n, k, &x)?);
    }
    Ok(total)
}

/// Right Wick product: conjugation of the left Wick product of the
/// reversed vector by the antilinear reversal.
pub fn right_wick(space: &DeformedFockSpace, n: usize, xi: &CVec) -> Result<FockOperator> {
    let s_n = level_reversal(space, n);
    let reversed = s_n.apply(xi);
    let inner = wick(space, n, &reversed)?;
    Ok(antilinear_conjugate(space, &inner, |lvl| {
        level_reversal(space, lvl)
    }))
}

/// Max blockwise residual of (W(xi))^adjoint = W(S xi): the Gram adjoint
/// of the truncated Wick operator against the Wick operator of the
/// reversed-conjugated vector. Both sides are compressions of the exact
/// operators, so all retained blocks must agree.
pub fn adjoint_identity_residual(space: &DeformedFockSpace, n: usize, xi: &CVec) -> Result<f64> {
    let w = wick(space, n, xi)?;
    let adj = w.gram_adjoint(space);
    let s_xi = level_reversal(space, n).apply(xi);
    let w_s = wick(space, n, &s_xi)?;
    Ok(adj.block_difference(&w_s, space.levels()))
}

/// Two-sided norm bound for a Wick operator: the deformed norm of the
/// vector is a lower bound for the operator norm, and
/// c^{3/2} (n+1) times the vector norm is an upper bound, with
/// c the norm constant of the deformation. The operator norm is taken
/// over exact source blocks and is itself a cutoff lower bound.
pub fn wick_norm_check(
    space: &DeformedFockSpace,
    n: usize,
    xi: &CVec,
    tol_lower: f64,
    tol_upper: f64,
) -> Result<(CheckReport, CheckReport)> {
    let w = wick(space, n, xi)?;
    let norm = w.weighted_norm(space, NormDomain::ExactBlocks);
    let vec_norm = space.level_norm(n, xi);
    let c = space.c_constant();
    let upper_bound = c.powf(1.5) * (n as f64 + 1.0) * vec_norm;
    let lower = CheckReport::new("wick-norm-lower", vec_norm, norm, tol_lower)
        .with_param("n", n)
        .with_param("q", space.deformation().q_bound())
        .truncated(true)
        .with_note("operator norm over the cutoff bounds the vector norm from above");
    let upper = CheckReport::new("wick-norm-upper", norm, upper_bound, tol_upper)
        .with_param("n", n)
        .with_param("q", space.deformation().q_bound())
        .truncated(true);
    Ok((lower, upper))
}

/// Residual of the compression identity: the (n-k, k) block of the
/// bimonomial of x equals x composed with the reversal and the real
/// structure, paired through the level-k Gram. Compared in orthonormal
/// coordinates.
pub fn projection_block_residual(
    space: &DeformedFockSpace,
    n: usize,
    k: usize,
    x: &CVec,
) -> Result<f64> {
    let op = wick_monomial(space, n, k, x)?;
    let dk = space.dim_level(k);
    let dnk = space.dim_level(n - k);
    let block = match op.block(n - k, k) {
        Some(b) => b.clone(),
        None => CMat::zeros(dnk, dk),
    };
    // coefficients of x as a (n-k) x k matrix
    let mut v = CMat::zeros(dnk, dk);
    for alpha in 0..dnk {
        for beta in 0..dk {
            v[(alpha, beta)] = x[alpha * dk + beta];
        }
    }
    let u = crate::fock::reversal_matrix(space.d(), k);
    let pairing = (u * space.conjugation_matrix(k)).adjoint() * space.gram(k).matrix();
    let expected = v * pairing;
    let to_on = |m: &CMat| space.gram_sqrt(n - k) * m * space.gram_inv_sqrt(k);
    Ok(max_abs(&(to_on(&block) - to_on(&expected))))
}

/// Norm of the bimonomial as a map from the Gram-weighted tensor product
/// into the bounded operators over exact blocks; bounded by the norm
/// constant of the deformation.
pub fn wick_monomial_norm_check(
    space: &DeformedFockSpace,
    n: usize,
    k: usize,
    x: &CVec,
    tol: f64,
) -> Result<CheckReport> {
    let op = wick_monomial(space, n, k, x)?;
    let op_norm = op.weighted_norm(space, NormDomain::ExactBlocks);
    // tensor norm of x under G_{n-k} (x) G_k
    let g = crate::numerics::kron(
        space.gram(n - k).matrix(),
        space.gram(k).matrix(),
    );
    let x_norm = (x.adjoint() * (&g * x))[(0, 0)].re.max(0.0).sqrt();
    let c = space.c_constant();
    Ok(
        CheckReport::new("wick-monomial-norm", op_norm, c * x_norm, tol)
            .with_param("n", n)
            .with_param("k", k)
            .truncated(true),
    )
}

/// Weighted norm over the cutoff of a coefficient sum
/// sum_i alpha_i (x) op_i on the matrix tensor Fock space; the
/// workhorse for vector-valued norm evaluations.
pub fn coefficient_sum_norm(
    space: &DeformedFockSpace,
    coefficients: &[CMat],
    operators: &[FockOperator],
    domain: NormDomain,
) -> f64 {
    assert_eq!(coefficients.len(), operators.len());
    if coefficients.is_empty() {
        return 0.0;
    }
    let p = coefficients[0].nrows();
    let mut total: Option<CMat> = None;
    for (alpha, op) in coefficients.iter().zip(operators) {
        assert_eq!(alpha.nrows(), p);
        assert_eq!(alpha.ncols(), p);
        let dense = op.orthonormal_matrix(space, domain);
        let term = crate::numerics::kron(alpha, &dense);
        total = Some(match total {
            Some(acc) => acc + term,
            None => term,
        });
    }
    spectral_norm(&total.unwrap())
}
