//! Quasi-free second quantization: the one-particle space renormed by
//! 2A(1+A)^{-1} for a positive generator A, the q-deformed Fock space
//! over it, the modular operators of the vacuum state, the scalar and
//! vector-valued Khintchine-type bounds in this geometry, the trace
//! formula for the modular pairing, and the spectral non-injectivity
//! criterion.
//!
//! Coordinates: the one-particle space is represented in an orthogonal
//! eigenbasis of A, ordered as the fixed part (eigenvalue 1) followed by
//! one (lambda, lambda^{-1}) pair per deformation block. The real
//! structure never appears as a subspace; it enters through the
//! conjugation that fixes the A = 1 eigenvectors and swaps each pair.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::deformation::YangBaxterOperator;
use crate::fock::{DeformedFockSpace, NormDomain};
use crate::numerics::{cplx, frobenius, identity, kron, max_abs, CMat, CVec, GramForm};
use crate::opspace::KhintchineOutcome;
use crate::report::CheckReport;
use crate::wick::{antilinear_conjugate, right_wick, wick, AntilinearMap};
use crate::{Error, Result};

/// Spectral data of the positive generator: eigenvalue 1 with
/// multiplicity `fixed_dim`, plus a (lambda, lambda^{-1}) pair for each
/// listed lambda > 1.
#[derive(Debug, Clone)]
pub struct QuasiFreeGenerator {
    fixed_dim: usize,
    lambdas: Vec<f64>,
}

impl QuasiFreeGenerator {
    pub fn new(fixed_dim: usize, lambdas: Vec<f64>) -> Result<Self> {
        for &l in &lambdas {
            if !(l > 1.0) || !l.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "pair eigenvalues must satisfy lambda > 1, got {l}"
                )));
            }
        }
        if fixed_dim + lambdas.len() == 0 {
            return Err(Error::InvalidParameter(
                "generator needs at least one eigenvector".into(),
            ));
        }
        Ok(QuasiFreeGenerator { fixed_dim, lambdas })
    }

    /// Trivial generator A = I on a d-dimensional space.
    pub fn trivial(dim: usize) -> Self {
        QuasiFreeGenerator {
            fixed_dim: dim,
            lambdas: Vec::new(),
        }
    }

    pub fn fixed_dim(&self) -> usize {
        self.fixed_dim
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn dim(&self) -> usize {
        self.fixed_dim + 2 * self.lambdas.len()
    }

    /// Eigenvalues of A in basis order.
    pub fn spectrum(&self) -> Vec<f64> {
        let mut out = vec![1.0; self.fixed_dim];
        for &l in &self.lambdas {
            out.push(l);
            out.push(1.0 / l);
        }
        out
    }

    pub fn a_matrix(&self) -> CMat {
        let spec = self.spectrum();
        CMat::from_fn(spec.len(), spec.len(), |i, j| {
            if i == j {
                cplx(spec[i], 0.0)
            } else {
                Complex64::ZERO
            }
        })
    }

    /// Operator norm of A: the largest pair eigenvalue, or 1.
    pub fn a_norm(&self) -> f64 {
        self.lambdas.iter().cloned().fold(1.0f64, f64::max)
    }

    /// The conjugation intertwining A and A^{-1}: identity on the fixed
    /// part, swap within each pair.
    pub fn conjugation(&self) -> CMat {
        let d = self.dim();
        let mut x = CMat::zeros(d, d);
        for i in 0..self.fixed_dim {
            x[(i, i)] = cplx(1.0, 0.0);
        }
        for p in 0..self.lambdas.len() {
            let base = self.fixed_dim + 2 * p;
            x[(base, base + 1)] = cplx(1.0, 0.0);
            x[(base + 1, base)] = cplx(1.0, 0.0);
        }
        x
    }
}

/// The renormed one-particle scalar product: diagonal with weight
/// 2 mu / (1 + mu) on each eigenvector of A.
pub fn u_gram(gen: &QuasiFreeGenerator) -> GramForm {
    let spec = gen.spectrum();
    let d = spec.len();
    let m = CMat::from_fn(d, d, |i, j| {
        if i == j {
            cplx(2.0 * spec[i] / (1.0 + spec[i]), 0.0)
        } else {
            Complex64::ZERO
        }
    });
    GramForm::new(m).expect("diagonal positive weights")
}

/// The q-deformed Fock space over the renormed one-particle space; all
/// ladder, Wick and norm machinery applies unchanged.
pub fn quasi_free_fock(gen: &QuasiFreeGenerator, q: f64, levels: usize) -> Result<DeformedFockSpace> {
    let t = YangBaxterOperator::q_flip(gen.dim(), q)?;
    DeformedFockSpace::with_base(t, levels, u_gram(gen).matrix().clone(), gen.conjugation())
}

/// Modular data at one level: the modular operator block, the modular
/// conjugation, and the closure of x vacuum -> x* vacuum, all as
/// explicit (anti)linear matrices.
#[derive(Debug, Clone)]
pub struct ModularOperators {
    pub delta: CMat,
    pub j: AntilinearMap,
    pub s: AntilinearMap,
}

/// Level-n modular operators: delta is (A^{-1})^{(x)n}, j reverses,
/// conjugates slotwise, and weights by (A^{-1/2})^{(x)n}, and s is the
/// plain antilinear reversal extended from real tensors. The polar
/// identity s = j delta^{1/2} is a checkable consequence, not an input.
pub fn modular_operators(gen: &QuasiFreeGenerator, n: usize) -> ModularOperators {
    let d = gen.dim();
    let a_inv = {
        let spec = gen.spectrum();
        CMat::from_fn(d, d, |i, j| {
            if i == j {
                cplx(1.0 / spec[i], 0.0)
            } else {
                Complex64::ZERO
            }
        })
    };
    let a_inv_sqrt = a_inv.map(|z| cplx(z.re.sqrt(), 0.0));
    let mut delta = identity(1);
    let mut weight = identity(1);
    let mut conj = identity(1);
    for _ in 0..n {
        delta = kron(&delta, &a_inv);
        weight = kron(&weight, &a_inv_sqrt);
        conj = kron(&conj, &gen.conjugation());
    }
    let u = crate::fock::reversal_matrix(d, n);
    let j = AntilinearMap::new(&weight * &u * &conj);
    let s = AntilinearMap::new(&u * &conj);
    ModularOperators { delta, j, s }
}

/// A deformed-orthonormal basis of level n consisting of eigenvectors
/// of A^{(x)n}: multi-indices are grouped by their pair-exponent
/// signature (the level Gram is block diagonal over these groups) and
/// each group is orthonormalized by the inverse square root of its Gram
/// block. Returns the vectors with the A^{(x)n} eigenvalue of each.
pub fn deformed_orthonormal_eigenbasis(
    space: &DeformedFockSpace,
    gen: &QuasiFreeGenerator,
    n: usize,
) -> Vec<(CVec, f64)> {
    let d = gen.dim();
    let dim = space.dim_level(n);
    let spec = gen.spectrum();
    // signature: exponent of each lambda across the slots
    let signature = |flat: usize| -> Vec<i32> {
        let mut digits = vec![0usize; n];
        crate::deformation::unflatten_digits(flat, d, &mut digits);
        let mut sig = vec![0i32; gen.lambdas.len()];
        for &slot in &digits {
            if slot >= gen.fixed_dim {
                let pair = (slot - gen.fixed_dim) / 2;
                if (slot - gen.fixed_dim).is_multiple_of(2) {
                    sig[pair] += 1;
                } else {
                    sig[pair] -= 1;
                }
            }
        }
        sig
    };
    let mut groups: BTreeMap<Vec<i32>, Vec<usize>> = BTreeMap::new();
    for flat in 0..dim {
        groups.entry(signature(flat)).or_default().push(flat);
    }
    let gram = space.gram(n).matrix();
    let mut out = Vec::with_capacity(dim);
    for (sig, members) in groups {
        let size = members.len();
        let sub = CMat::from_fn(size, size, |i, j| gram[(members[i], members[j])]);
        let sub_gram = GramForm::new(sub).expect("gram restriction stays positive");
        let inv_sqrt = sub_gram.inv_sqrt();
        let eigenvalue: f64 = sig
            .iter()
            .zip(&gen.lambdas)
            .map(|(&e, &l)| l.powi(e))
            .product();
        let _ = spec; // eigenvalue determined by the signature alone
        for col in 0..size {
            let mut v = CVec::zeros(dim);
            for (row, &flat) in members.iter().enumerate() {
                v[flat] = inv_sqrt[(row, col)];
            }
            out.push((v, eigenvalue));
        }
    }
    out
}

/// Geometric-sum factor (a^{(n+1)/2} - 1) / (a^{1/2} - 1), with the
/// a -> 1 limit n+1 substituted when the spectrum is trivial.
pub fn geometric_factor(a_norm: f64, n: usize) -> f64 {
    if (a_norm - 1.0).abs() < 1e-12 {
        (n + 1) as f64
    } else {
        (a_norm.powf((n as f64 + 1.0) / 2.0) - 1.0) / (a_norm.sqrt() - 1.0)
    }
}

/// Scalar two-sided bound in the quasi-free geometry: the deformed norm
/// of the combination bounds the Wick-sum operator norm from below, and
/// c^{3/2} times the geometric factor of |A| bounds it from above.
pub fn quasi_free_scalar_check(
    space: &DeformedFockSpace,
    gen: &QuasiFreeGenerator,
    n: usize,
    coefficients: &[Complex64],
    vectors: &[CVec],
    tol: f64,
) -> Result<(CheckReport, CheckReport)> {
    assert_eq!(coefficients.len(), vectors.len());
    let dim = space.dim_level(n);
    let mut combined = CVec::zeros(dim);
    let mut wick_ops = Vec::with_capacity(vectors.len());
    let mut coeff_mats = Vec::with_capacity(vectors.len());
    for (z, v) in coefficients.iter().zip(vectors) {
        combined += v * *z;
        wick_ops.push(wick(space, n, v)?);
        coeff_mats.push(CMat::from_element(1, 1, *z));
    }
    let lhs = space.level_norm(n, &combined);
    let middle = crate::wick::coefficient_sum_norm(
        space,
        &coeff_mats,
        &wick_ops,
        NormDomain::FullTruncation,
    );
    let c = space.c_constant();
    let constant = c.powf(1.5) * geometric_factor(gen.a_norm(), n);
    let lower = CheckReport::new("quasi-free-scalar-lower", lhs, middle, tol)
        .with_param("n", n)
        .with_param("a_norm", gen.a_norm())
        .truncated(true);
    let upper = CheckReport::new("quasi-free-scalar-upper", middle, constant * lhs, tol)
        .with_param("n", n)
        .with_param("a_norm", gen.a_norm())
        .truncated(true);
    Ok((lower, upper))
}

/// Vector-valued Khintchine bound in the quasi-free geometry: the
/// pipeline of the tracial check with each shuffle adjoint post-composed
/// by the antilinear reversal on the length-k slot. Callers supply real
/// coordinate vectors (the orthonormal eigenbasis is real in these
/// coordinates), for which the antilinear twist acts as the plain
/// matrix.
pub fn quasi_free_khintchine_check(
    space: &DeformedFockSpace,
    n: usize,
    coefficients: &[CMat],
    vectors: &[CVec],
    tol_lower: f64,
    tol_upper: f64,
) -> Result<KhintchineOutcome> {
    let twist = |k: usize| space.reversal_conjugation(k);
    crate::opspace::khintchine_check(
        space,
        n,
        coefficients,
        vectors,
        space.c_constant(),
        Some(&twist),
        tol_lower,
        tol_upper,
    )
}

/// Trace formula: the modular pairing of a deformed-orthonormal
/// eigenbasis of A^{(x)n} sums to trace(A^{-1/2})^n.
pub fn modular_trace_check(
    space: &DeformedFockSpace,
    gen: &QuasiFreeGenerator,
    n: usize,
    tol: f64,
) -> CheckReport {
    let modular = modular_operators(gen, n);
    let delta_sqrt = modular.delta.map(|z| cplx(z.re.sqrt(), 0.0));
    let basis = deformed_orthonormal_eigenbasis(space, gen, n);
    let mut total = 0.0f64;
    for (xi, _) in &basis {
        let paired = &delta_sqrt * xi;
        total += space.level_inner(n, &paired, xi).re;
    }
    let root_trace: f64 = gen.spectrum().iter().map(|l| 1.0 / l.sqrt()).sum();
    let expected = root_trace.powi(n as i32);
    CheckReport::residual("modular-trace-formula", (total - expected).abs(), tol)
        .with_param("n", n)
        .with_param("expected", expected)
}

/// Verdict of the spectral non-injectivity criterion.
#[derive(Debug, Clone, PartialEq)]
pub enum CriterionVerdict {
    /// The fixed part has dimension at least two.
    NonInjectiveFixedPart { fixed_dim: usize },
    /// Enough pair eigenvalues lie in (1, t_cut]:
    /// count / t_cut^2 > 1/2.
    NonInjectiveSpectral { count: usize, ratio: f64 },
    Inconclusive { fixed_dim: usize, best_ratio: f64 },
}

impl CriterionVerdict {
    pub fn is_non_injective(&self) -> bool {
        !matches!(self, CriterionVerdict::Inconclusive { .. })
    }
}

/// Non-injectivity criterion from spectral data: a fixed part of
/// dimension two, or more than t_cut^2 / 2 pair eigenvalues in the
/// half-open window (1, t_cut]. The window excludes 1 (the fixed part
/// is handled by the first clause) and includes t_cut.
pub fn non_injectivity_criterion(
    fixed_dim: usize,
    lambdas: &[f64],
    t_cut: f64,
) -> Result<CriterionVerdict> {
    if !(t_cut > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "criterion cutoff must exceed 1, got {t_cut}"
        )));
    }
    if fixed_dim >= 2 {
        return Ok(CriterionVerdict::NonInjectiveFixedPart { fixed_dim });
    }
    let count = lambdas.iter().filter(|&&l| l > 1.0 && l <= t_cut).count();
    let ratio = count as f64 / (t_cut * t_cut);
    if ratio > 0.5 {
        Ok(CriterionVerdict::NonInjectiveSpectral { count, ratio })
    } else {
        Ok(CriterionVerdict::Inconclusive {
            fixed_dim,
            best_ratio: ratio,
        })
    }
}

/// Searches level-one Wick pairs for a violation of the trace property;
/// nontrivial generators make the vacuum state non-tracial and a gap
/// appears already among basis pairs.
pub fn nontracial_pair_gap(space: &DeformedFockSpace) -> f64 {
    let d = space.d();
    let mut best = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let mut ei = CVec::zeros(d);
            ei[i] = cplx(1.0, 0.0);
            let mut ej = CVec::zeros(d);
            ej[j] = cplx(1.0, 0.0);
            let wi = wick(space, 1, &ei).expect("level one fits");
            let wj = wick(space, 1, &ej).expect("level one fits");
            let xy = crate::fock::vacuum_state(space, &wi.compose(&wj));
            let yx = crate::fock::vacuum_state(space, &wj.compose(&wi));
            best = best.max((xy - yx).norm());
        }
    }
    best
}

/// Residual of the commutant conjugation identity: conjugating a Wick
/// operator by the modular conjugation equals the right Wick operator of
/// the conjugated vector, blockwise over exact sources.
pub fn modular_commutant_residual(
    space: &DeformedFockSpace,
    gen: &QuasiFreeGenerator,
    n: usize,
    xi: &CVec,
) -> Result<f64> {
    let w = wick(space, n, xi)?;
    let j_level = |lvl: usize| modular_operators(gen, lvl).j;
    let conjugated = antilinear_conjugate(space, &w, j_level);
    let j_xi = modular_operators(gen, n).j.apply(xi);
    let wr = right_wick(space, n, &j_xi)?;
    let max_level = space.levels().saturating_sub(n);
    Ok(conjugated.block_difference(&wr, max_level))
}

/// Polar identity, involutivity and isometry checks for the modular
/// operators at one level.
pub fn modular_identity_checks(
    space: &DeformedFockSpace,
    gen: &QuasiFreeGenerator,
    n: usize,
    tol: f64,
) -> Vec<CheckReport> {
    let m = modular_operators(gen, n);
    let dim = space.dim_level(n);
    let delta_sqrt = m.delta.map(|z| cplx(z.re.sqrt(), 0.0));
    let polar = m.j.matrix() * &delta_sqrt;
    let polar_residual = max_abs(&(&polar - m.s.matrix()));
    let s_squared = m.s.compose(&m.s);
    let j_squared = m.j.compose(&m.j);
    let s_involution = frobenius(&(&s_squared - identity(dim)));
    let j_involution = frobenius(&(&j_squared - identity(dim)));
    // antiunitarity of j for the deformed product: J^dagger G J = G^T
    let g = space.gram(n).matrix();
    let j_iso = max_abs(&(m.j.matrix().adjoint() * g * m.j.matrix() - g.transpose()));
    vec![
        CheckReport::residual("modular-polar-identity", polar_residual, tol).with_param("n", n),
        CheckReport::residual("modular-reflection-involution", s_involution, tol)
            .with_param("n", n),
        CheckReport::residual("modular-conjugation-involution", j_involution, tol)
            .with_param("n", n),
        CheckReport::residual("modular-conjugation-isometry", j_iso, tol).with_param("n", n),
    ]
}
