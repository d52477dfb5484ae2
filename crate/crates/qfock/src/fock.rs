//! Truncated deformed Fock spaces as explicit matrices: per-level
//! symmetrizers by direct and recursive construction, level Gram forms
//! with cached square roots, ladder operators, reversal operators, the
//! vacuum state, and the two-sided domination constants between a
//! symmetrizer and its tensor factorizations.
//!
//! Truncation contract: an operator assembled from degree-n ladder
//! monomials is exact on source levels m <= N - n; higher source blocks
//! are dropped and the operator records the largest exact source level.
//! Every norm computed over a cutoff is a lower bound of the untruncated
//! norm, because the retained columns agree with the untruncated
//! operator and the change of coordinates is isometric.
//!
//! Multi-index convention: e_{(i_1, .., i_n)} flattens with i_1 as the
//! most significant base-d digit. This is asserted once in the tensor
//! helpers and used everywhere.

use num_complex::Complex64;
use std::collections::BTreeMap;

use crate::deformation::{permutation_operator, YangBaxterOperator};
use crate::numerics::{
    cplx, frobenius, identity, kron, max_abs, spectral_norm, CMat, CVec, GramForm,
};
use crate::symgroup::{all_permutations, shuffle_representatives, Permutation};
use crate::{Error, Result};

/// Convergence threshold for the infinite product defining the norm
/// constant: factors are accumulated until the multiplicative increment
/// drops below this.
const C_CONSTANT_INCREMENT: f64 = 1e-15;

/// The norm constant prod_{k>=1} (1 - q^k)^{-1} for 0 <= q < 1,
/// evaluated as a partial product to convergence.
pub fn c_constant(q: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&q) {
        return Err(Error::InvalidParameter(format!(
            "norm constant requires 0 <= q < 1, got {q}"
        )));
    }
    let mut product = 1.0f64;
    let mut power = q;
    while power > C_CONSTANT_INCREMENT {
        product /= 1.0 - power;
        power *= q;
    }
    Ok(product)
}

/// Sum of the quasi-multiplicative extension over all of S_n, assembled
/// by a depth-first walk of the weak order so that each permutation
/// costs one structured T_k application. Limited to n <= 8.
pub fn symmetrizer_direct(t: &YangBaxterOperator, n: usize) -> Result<CMat> {
    let dim = t.d().pow(n as u32);
    if n <= 1 {
        return Ok(identity(dim));
    }
    // Spanning tree of the weak order: the parent of sigma clears the
    // leftmost descent, so children of tau are tau pi_k with one more
    // inversion whose leftmost descent is exactly k.
    let perms = all_permutations(n)?;
    drop(perms); // enumeration only guards the size limit
    let mut total = CMat::zeros(dim, dim);
    let mut stack: Vec<(Permutation, CMat)> = vec![(Permutation::identity(n), identity(dim))];
    while let Some((tau, mat)) = stack.pop() {
        total += &mat;
        for k in 0..n - 1 {
            // ascend: tau pi_k has an extra inversion iff tau(k) < tau(k+1)
            if tau.apply(k) < tau.apply(k + 1) {
                let child = tau.compose(&Permutation::adjacent_transposition(n, k));
                if leftmost_descent(&child) == Some(k) {
                    let child_mat = t.apply_extended(k, n, &mat);
                    stack.push((child, child_mat));
                }
            }
        }
    }
    Ok(total)
}

fn leftmost_descent(p: &Permutation) -> Option<usize> {
    (0..p.len().saturating_sub(1)).find(|&k| p.apply(k) > p.apply(k + 1))
}

/// Sum of phi(tau) over the minimal-inversion coset representatives of
/// S_{n-k} x S_k; satisfies P^(n) = R_{n,k} (P^(n-k) (x) P^(k)).
pub fn shuffle_operator(t: &YangBaxterOperator, n: usize, k: usize) -> Result<CMat> {
    let dim = t.d().pow(n as u32);
    let reps = shuffle_representatives(n, k)?;
    let mut total = CMat::zeros(dim, dim);
    for rep in &reps {
        total += phi_of(t, rep, n);
    }
    Ok(total)
}

fn phi_of(t: &YangBaxterOperator, sigma: &Permutation, n: usize) -> CMat {
    crate::deformation::phi(t, sigma, n)
}

/// P^(n) built iteratively through the rank-one factorization
/// P^(m) = R_{m,1} (P^(m-1) (x) I), applying each shuffle word as
/// structured T_k products; no enumeration of S_n is involved.
pub fn symmetrizer_recursive(t: &YangBaxterOperator, n: usize) -> CMat {
    let d = t.d();
    let mut p = identity(1);
    for m in 1..=n {
        let grown = kron(&p, &identity(d));
        if m == 1 {
            p = grown;
            continue;
        }
        let reps = shuffle_representatives(m, 1).expect("k=1 shuffles always exist");
        let mut next = CMat::zeros(grown.nrows(), grown.ncols());
        for rep in &reps {
            let mut term = grown.clone();
            for &k in rep.reduced_word().iter().rev() {
                term = t.apply_extended(k, m, &term);
            }
            next += term;
        }
        p = next;
    }
    p
}

/// Full reversal matrix on H^{(x)n} in free coordinates.
pub fn reversal_matrix(d: usize, n: usize) -> CMat {
    permutation_operator(&Permutation::reversal(n), d)
}

/// Which source levels a norm evaluation ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormDomain {
    /// Only source levels on which the truncated operator agrees with
    /// the untruncated one and nothing overflowed the cutoff.
    ExactBlocks,
    /// All retained source levels; the norm of the full compression to
    /// the cutoff, still a lower bound of the untruncated norm.
    FullTruncation,
}

/// A truncated deformed Fock space with cached level data.
///
/// `base_gram` is the Gram matrix of the one-particle scalar product
/// (identity for the tracial sections) and `real_conjugation` the
/// antilinear real structure of the one-particle space, stored as the
/// matrix X of the map v -> X conj(v). The level-n Gram is
/// base_gram^{(x)n} P^(n); construction asserts that the two factors
/// commute and that the product is strictly positive.
#[derive(Debug, Clone)]
pub struct DeformedFockSpace {
    t: YangBaxterOperator,
    d: usize,
    levels: usize,
    base_gram: CMat,
    real_conjugation: CMat,
    symmetrizers: Vec<CMat>,
    grams: Vec<GramForm>,
    gram_sqrt: Vec<CMat>,
    gram_inv_sqrt: Vec<CMat>,
    gram_inv: Vec<CMat>,
}

impl DeformedFockSpace {
    /// Tracial space: identity base Gram, coordinatewise conjugation.
    pub fn new(t: YangBaxterOperator, levels: usize) -> Result<Self> {
        let d = t.d();
        Self::with_base(t, levels, identity(d), identity(d))
    }

    /// General base scalar product and real structure.
    pub fn with_base(
        t: YangBaxterOperator,
        levels: usize,
        base_gram: CMat,
        real_conjugation: CMat,
    ) -> Result<Self> {
        let d = t.d();
        if base_gram.nrows() != d || base_gram.ncols() != d {
            return Err(Error::DimensionMismatch(format!(
                "base gram is {}x{}, expected {d}x{d}",
                base_gram.nrows(),
                base_gram.ncols()
            )));
        }
        GramForm::new(base_gram.clone())?; // validates hermiticity + positivity
        let mut symmetrizers = Vec::with_capacity(levels + 1);
        let mut grams = Vec::with_capacity(levels + 1);
        let mut gram_sqrt = Vec::with_capacity(levels + 1);
        let mut gram_inv_sqrt = Vec::with_capacity(levels + 1);
        let mut gram_inv = Vec::with_capacity(levels + 1);
        let mut base_power = identity(1);
        for n in 0..=levels {
            let p = if n <= 1 {
                identity(d.pow(n as u32))
            } else {
                symmetrizer_recursive(&t, n)
            };
            if n >= 1 {
                base_power = kron(&base_power, &base_gram);
            }
            let commutator = &base_power * &p - &p * &base_power;
            if max_abs(&commutator) > 1e-9 {
                return Err(Error::InvalidParameter(format!(
                    "base gram does not commute with the level-{n} symmetrizer \
                     (residual {:.3e})",
                    max_abs(&commutator)
                )));
            }
            let gram = GramForm::new(&base_power * &p)?;
            gram_sqrt.push(gram.sqrt());
            gram_inv_sqrt.push(gram.inv_sqrt());
            gram_inv.push(gram.inverse());
            grams.push(gram);
            symmetrizers.push(p);
        }
        Ok(DeformedFockSpace {
            t,
            d,
            levels,
            base_gram,
            real_conjugation,
            symmetrizers,
            grams,
            gram_sqrt,
            gram_inv_sqrt,
            gram_inv,
        })
    }

    pub fn deformation(&self) -> &YangBaxterOperator {
        &self.t
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Grade cutoff N; levels run 0..=N.
    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn base_gram(&self) -> &CMat {
        &self.base_gram
    }

    /// Matrix X of the one-particle real structure v -> X conj(v).
    pub fn real_conjugation(&self) -> &CMat {
        &self.real_conjugation
    }

    pub fn dim_level(&self, n: usize) -> usize {
        self.d.pow(n as u32)
    }

    /// Sum of d^m over retained levels.
    pub fn total_dim(&self) -> usize {
        (0..=self.levels).map(|n| self.dim_level(n)).sum()
    }

    pub fn level_offset(&self, n: usize) -> usize {
        (0..n).map(|m| self.dim_level(m)).sum()
    }

    pub fn symmetrizer(&self, n: usize) -> &CMat {
        &self.symmetrizers[n]
    }

    pub fn gram(&self, n: usize) -> &GramForm {
        &self.grams[n]
    }

    pub fn gram_sqrt(&self, n: usize) -> &CMat {
        &self.gram_sqrt[n]
    }

    pub fn gram_inv_sqrt(&self, n: usize) -> &CMat {
        &self.gram_inv_sqrt[n]
    }

    pub fn gram_inv(&self, n: usize) -> &CMat {
        &self.gram_inv[n]
    }

    /// Norm constant evaluated at the computed bound of the deformation.
    pub fn c_constant(&self) -> f64 {
        c_constant(self.t.q_bound()).expect("validated deformation has q_bound < 1")
    }

    /// Deformed norm of a level-n coordinate vector.
    pub fn level_norm(&self, n: usize, v: &CVec) -> f64 {
        self.grams[n].norm(v)
    }

    /// Deformed inner product at level n.
    pub fn level_inner(&self, n: usize, x: &CVec, y: &CVec) -> Complex64 {
        self.grams[n].inner(x, y)
    }

    /// The antilinear reversal S at level n, as the matrix M of
    /// v -> M conj(v): the reversal permutation composed with the
    /// slotwise real structure.
    pub fn reversal_conjugation(&self, n: usize) -> CMat {
        let mut x_power = identity(1);
        for _ in 0..n {
            x_power = kron(&x_power, &self.real_conjugation);
        }
        reversal_matrix(self.d, n) * x_power
    }

    /// Entrywise application of the level-n real structure (no
    /// reversal): v -> X^{(x)n} conj(v).
    pub fn conjugation_matrix(&self, n: usize) -> CMat {
        let mut x_power = identity(1);
        for _ in 0..n {
            x_power = kron(&x_power, &self.real_conjugation);
        }
        x_power
    }
}

/// A block operator on the truncated space: finitely many level-to-level
/// blocks keyed (target, source); absent blocks are zero. Retained
/// blocks always agree with the untruncated operator; the
/// `exact_source_max` tag records through which source level no image
/// component was dropped, which is what norm evaluations on
/// `NormDomain::ExactBlocks` restrict to.
#[derive(Debug, Clone)]
pub struct FockOperator {
    d: usize,
    levels: usize,
    blocks: BTreeMap<(usize, usize), CMat>,
    exact_source_max: usize,
}

impl FockOperator {
    pub fn zero(space: &DeformedFockSpace) -> Self {
        FockOperator {
            d: space.d(),
            levels: space.levels(),
            blocks: BTreeMap::new(),
            exact_source_max: space.levels(),
        }
    }

    pub fn identity(space: &DeformedFockSpace) -> Self {
        let mut blocks = BTreeMap::new();
        for n in 0..=space.levels() {
            blocks.insert((n, n), identity(space.dim_level(n)));
        }
        FockOperator {
            d: space.d(),
            levels: space.levels(),
            blocks,
            exact_source_max: space.levels(),
        }
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn exact_source_max(&self) -> usize {
        self.exact_source_max
    }

    pub fn block(&self, target: usize, source: usize) -> Option<&CMat> {
        self.blocks.get(&(target, source))
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&(usize, usize), &CMat)> {
        self.blocks.iter()
    }

    pub fn set_block(&mut self, target: usize, source: usize, m: CMat) {
        self.blocks.insert((target, source), m);
    }

    pub fn with_exact_source_max(mut self, level: usize) -> Self {
        self.exact_source_max = level;
        self
    }

    fn level_dim(&self, n: usize) -> usize {
        self.d.pow(n as u32)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        for m in out.blocks.values_mut() {
            *m *= factor;
        }
        out
    }

    pub fn add(&self, rhs: &FockOperator) -> Self {
        assert_eq!(self.levels, rhs.levels);
        let mut out = self.clone();
        out.exact_source_max = self.exact_source_max.min(rhs.exact_source_max);
        for (&key, m) in &rhs.blocks {
            out.blocks
                .entry(key)
                .and_modify(|existing| *existing += m)
                .or_insert_with(|| m.clone());
        }
        out
    }

    /// Blockwise composition self * rhs over retained intermediate
    /// levels. A composite block (a, b) is the true block of the product
    /// whenever every intermediate level the untruncated product passes
    /// through is retained; the exactness tag is propagated
    /// conservatively from both factors' tags.
    pub fn compose(&self, rhs: &FockOperator) -> Self {
        assert_eq!(self.levels, rhs.levels);
        let mut blocks: BTreeMap<(usize, usize), CMat> = BTreeMap::new();
        for (&(mid, src), right) in &rhs.blocks {
            for (&(dst, mid2), left) in &self.blocks {
                if mid2 != mid {
                    continue;
                }
                let product = left * right;
                blocks
                    .entry((dst, src))
                    .and_modify(|existing| *existing += &product)
                    .or_insert(product);
            }
        }
        // largest prefix of sources whose image under rhs stays within
        // the exact blocks of self
        let mut exact: Option<usize> = None;
        for src in 0..=self.levels {
            if src > rhs.exact_source_max {
                break;
            }
            let ok = rhs
                .blocks
                .iter()
                .filter(|(&(_, s), _)| s == src)
                .all(|(&(mid, _), _)| mid <= self.exact_source_max);
            if !ok {
                break;
            }
            exact = Some(src);
        }
        FockOperator {
            d: self.d,
            levels: self.levels,
            blocks,
            // an operator with no certified sources keeps only the
            // vacuum column, which every retained block represents
            exact_source_max: exact.unwrap_or(0),
        }
    }

    /// Adjoint with respect to the level Gram forms:
    /// block(a, b) of the adjoint is G_a^{-1} block(b, a)^dagger G_b.
    /// As compressions to the cutoff, adjoint and truncation commute, so
    /// every block of the result is the true block of the adjoint.
    pub fn gram_adjoint(&self, space: &DeformedFockSpace) -> Self {
        let mut blocks = BTreeMap::new();
        for (&(target, source), m) in &self.blocks {
            let adj = space.gram_inv(source) * m.adjoint() * space.gram(target).matrix();
            blocks.insert((source, target), adj);
        }
        FockOperator {
            d: self.d,
            levels: self.levels,
            blocks,
            exact_source_max: self.exact_source_max,
        }
    }

    /// Applies the operator to a vector given as per-level coordinates.
    pub fn apply(&self, input: &[CVec]) -> Vec<CVec> {
        let mut out: Vec<CVec> = (0..=self.levels)
            .map(|n| CVec::zeros(self.level_dim(n)))
            .collect();
        for (&(target, source), m) in &self.blocks {
            out[target] += m * &input[source];
        }
        out
    }

    /// The image of the vacuum, one coordinate vector per level.
    pub fn apply_to_vacuum(&self) -> Vec<CVec> {
        let mut input: Vec<CVec> = (0..=self.levels)
            .map(|n| CVec::zeros(self.level_dim(n)))
            .collect();
        input[0][0] = cplx(1.0, 0.0);
        self.apply(&input)
    }

    /// Dense matrix of the operator in deformed-orthonormal coordinates,
    /// with source columns restricted to the requested domain. Rows
    /// always span all retained levels.
    pub fn orthonormal_matrix(&self, space: &DeformedFockSpace, domain: NormDomain) -> CMat {
        let max_source = match domain {
            NormDomain::ExactBlocks => self.exact_source_max,
            NormDomain::FullTruncation => self.levels,
        };
        let col_levels: Vec<usize> = (0..=max_source.min(self.levels)).collect();
        let rows = space.total_dim();
        let cols: usize = col_levels.iter().map(|&n| space.dim_level(n)).sum();
        let mut out = CMat::zeros(rows, cols);
        let mut col_offset = 0usize;
        for &src in &col_levels {
            let src_dim = space.dim_level(src);
            for (&(target, source), m) in &self.blocks {
                if source != src {
                    continue;
                }
                let transformed = space.gram_sqrt(target) * m * space.gram_inv_sqrt(src);
                let row_offset = space.level_offset(target);
                for j in 0..src_dim {
                    for i in 0..transformed.nrows() {
                        out[(row_offset + i, col_offset + j)] = transformed[(i, j)];
                    }
                }
            }
            col_offset += src_dim;
        }
        out
    }

    /// Operator norm with respect to the deformed scalar products,
    /// evaluated on the requested source domain. Always a lower bound of
    /// the untruncated operator norm.
    pub fn weighted_norm(&self, space: &DeformedFockSpace, domain: NormDomain) -> f64 {
        spectral_norm(&self.orthonormal_matrix(space, domain))
    }

    /// Largest blockwise max-norm difference against another operator,
    /// over blocks with source and target at most `max_level`.
    pub fn block_difference(&self, rhs: &FockOperator, max_level: usize) -> f64 {
        let mut worst = 0.0f64;
        let zero = |r: usize, c: usize| CMat::zeros(r, c);
        for target in 0..=max_level.min(self.levels) {
            for source in 0..=max_level.min(self.levels) {
                let a = self.block(target, source);
                let b = rhs.block(target, source);
                let diff = match (a, b) {
                    (None, None) => continue,
                    (Some(a), Some(b)) => a - b,
                    (Some(a), None) => a - zero(a.nrows(), a.ncols()),
                    (None, Some(b)) => zero(b.nrows(), b.ncols()) - b,
                };
                worst = worst.max(max_abs(&diff));
            }
        }
        worst
    }
}

/// Left creation by a degree-n coordinate vector: block (m+n, m) tensors
/// the vector on the left in free coordinates. Blocks that would exceed
/// the cutoff are dropped and the exactness tag is lowered accordingly.
pub fn creation(space: &DeformedFockSpace, n: usize, xi: &CVec) -> FockOperator {
    assert_eq!(xi.len(), space.dim_level(n));
    assert!(n <= space.levels(), "creation degree {n} exceeds the cutoff");
    let mut op = FockOperator::zero(space);
    if n == 0 {
        let scalar = xi[0];
        let mut id = FockOperator::identity(space);
        id = id.scale(scalar);
        return id;
    }
    let levels = space.levels();
    let xi_col = CMat::from_column_slice(xi.len(), 1, xi.as_slice());
    for m in 0..=levels.saturating_sub(n) {
        let block = kron(&xi_col, &identity(space.dim_level(m)));
        op.set_block(m + n, m, block);
    }
    op.exact_source_max = levels.saturating_sub(n);
    op
}

/// Annihilation by a degree-n coordinate vector: the Gram adjoint of
/// creation by the reversed vector, matching the adjoint relation
/// (a*(xi))* = a(U xi). Antilinear in the vector.
pub fn annihilation(space: &DeformedFockSpace, n: usize, xi: &CVec) -> FockOperator {
    let reversed = reversal_matrix(space.d(), n) * xi;
    let cre = creation(space, n, &reversed);
    let mut adj = cre.gram_adjoint(space);
    // pure annihilators never overflow the cutoff
    adj.exact_source_max = space.levels();
    adj
}

/// The deformed gaussian a*(f) + a(f) for a one-particle vector.
pub fn gaussian(space: &DeformedFockSpace, f: &CVec) -> FockOperator {
    creation(space, 1, f).add(&annihilation(space, 1, f))
}

/// Right creation: block (m+n, m) tensors the vector on the right.
pub fn right_creation(space: &DeformedFockSpace, n: usize, xi: &CVec) -> FockOperator {
    assert_eq!(xi.len(), space.dim_level(n));
    assert!(n <= space.levels(), "creation degree {n} exceeds the cutoff");
    let mut op = FockOperator::zero(space);
    if n == 0 {
        return FockOperator::identity(space).scale(xi[0]);
    }
    let levels = space.levels();
    let xi_col = CMat::from_column_slice(xi.len(), 1, xi.as_slice());
    for m in 0..=levels.saturating_sub(n) {
        let block = kron(&identity(space.dim_level(m)), &xi_col);
        op.set_block(m + n, m, block);
    }
    op.exact_source_max = levels.saturating_sub(n);
    op
}

/// Gram adjoint of right creation by the same vector.
pub fn right_annihilation(space: &DeformedFockSpace, n: usize, xi: &CVec) -> FockOperator {
    let rev = reversal_matrix(space.d(), n) * xi;
    let mut adj = right_creation(space, n, &rev).gram_adjoint(space);
    adj.exact_source_max = space.levels();
    adj
}

/// Right gaussian a_r*(f) + a_r(f).
pub fn right_gaussian(space: &DeformedFockSpace, f: &CVec) -> FockOperator {
    right_creation(space, 1, f).add(&right_annihilation(space, 1, f))
}

/// The unitary reversal, block-diagonal across levels.
pub fn fock_reversal(space: &DeformedFockSpace) -> FockOperator {
    let mut op = FockOperator::zero(space);
    for n in 0..=space.levels() {
        op.set_block(n, n, reversal_matrix(space.d(), n));
    }
    op.exact_source_max = space.levels();
    op
}

/// Vacuum expectation <vacuum, X vacuum> in the deformed scalar product.
pub fn vacuum_state(_space: &DeformedFockSpace, x: &FockOperator) -> Complex64 {
    match x.block(0, 0) {
        Some(b) => b[(0, 0)],
        None => Complex64::ZERO,
    }
}

/// Two-sided domination constants between P^(n) and
/// P^(n-k) (x) P^(k): the smallest c with P^(n) <= c (P^(n-k) (x) P^(k))
/// and the smallest c' with P^(n-k) (x) P^(k) <= c' P^(n), both as
/// largest eigenvalues of symmetrized quotients.
pub fn domination_constants(t: &YangBaxterOperator, n: usize, k: usize) -> Result<(f64, f64)> {
    if k > n {
        return Err(Error::InvalidParameter(format!("k={k} exceeds n={n}")));
    }
    let p_n = GramForm::new(symmetrizer_recursive(t, n))?;
    let tensor = kron(
        &symmetrizer_recursive(t, n - k),
        &symmetrizer_recursive(t, k),
    );
    let p_tensor = GramForm::new(tensor)?;
    let upper = {
        let m = p_tensor.inv_sqrt() * p_n.matrix() * p_tensor.inv_sqrt();
        crate::numerics::herm_eigen(&m, 1e-8)?.values[0]
    };
    let lower = {
        let m = p_n.inv_sqrt() * p_tensor.matrix() * p_n.inv_sqrt();
        crate::numerics::herm_eigen(&m, 1e-8)?.values[0]
    };
    Ok((upper, lower))
}

/// Max residual of the deformed commutation relations
/// a(e_i) a*(e_j) - sum_{r,s} t^{ir}_{js} a*(e_r) a(e_s) = delta_ij
/// over all i, j and all blocks with source level at most N-2.
#[allow(clippy::needless_range_loop)]
pub fn commutation_relation_residual(space: &DeformedFockSpace) -> f64 {
    let d = space.d();
    let basis: Vec<CVec> = (0..d)
        .map(|i| {
            let mut v = CVec::zeros(d);
            v[i] = cplx(1.0, 0.0);
            v
        })
        .collect();
    let cre: Vec<FockOperator> = basis.iter().map(|e| creation(space, 1, e)).collect();
    let ann: Vec<FockOperator> = basis.iter().map(|e| annihilation(space, 1, e)).collect();
    let max_level = space.levels().saturating_sub(2);
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let mut lhs = ann[i].compose(&cre[j]);
            for r in 0..d {
                for s in 0..d {
                    let coeff = space.deformation().coefficient(i, r, j, s);
                    if coeff != Complex64::ZERO {
                        lhs = lhs.add(&cre[r].compose(&ann[s]).scale(-coeff));
                    }
                }
            }
            let expected = if i == j {
                FockOperator::identity(space)
            } else {
                FockOperator::zero(space)
            };
            worst = worst.max(lhs.block_difference(&expected, max_level));
        }
    }
    worst
}

/// Residual of the free projection identity: at q = 0 the sum of
/// a*(e_j) a(U e_j) over all degree-m multi-indices acts as the
/// orthogonal projection onto levels >= m.
pub fn free_projection_residual(space: &DeformedFockSpace, m: usize) -> f64 {
    let dim = space.dim_level(m);
    let mut sum = FockOperator::zero(space);
    for flat in 0..dim {
        let mut e = CVec::zeros(dim);
        e[flat] = cplx(1.0, 0.0);
        let cre = creation(space, m, &e);
        // a(U e) = gram adjoint of creation(U U e) = adjoint of creation(e)
        let ann = cre.gram_adjoint(space);
        sum = sum.add(&cre.compose(&ann));
    }
    let mut expected = FockOperator::zero(space);
    for level in m..=space.levels() {
        expected.set_block(level, level, identity(space.dim_level(level)));
    }
    sum.block_difference(&expected, space.levels())
}

/// Frobenius residual of the factorization
/// P^(n) = R_{n,k} (P^(n-k) (x) P^(k)), relative to |P^(n)|.
pub fn factorization_residual(t: &YangBaxterOperator, n: usize, k: usize) -> Result<f64> {
    let p_n = symmetrizer_recursive(t, n);
    let r = shuffle_operator(t, n, k)?;
    let tensor = kron(
        &symmetrizer_recursive(t, n - k),
        &symmetrizer_recursive(t, k),
    );
    let lhs = r * tensor;
    Ok(frobenius(&(lhs - &p_n)) / frobenius(&p_n).max(1e-300))
}
