//! Non-injectivity witness experiments for tracial deformations: the
//! trace side of the semidiscreteness comparison, the doubled-operator
//! min norm over the cutoff, the per-link bounds of the inequality
//! chain, the scalar crossing index where the chain becomes
//! contradictory, and the weak-expectation-property lower bound.
//!
//! The semidiscreteness inequality itself (trace side below the doubled
//! min norm) is the assumed-for-contradiction step; it is never asserted
//! here. The experiments certify every other link numerically and
//! compute the crossing index exactly, which together exhibit the
//! contradiction mechanism at desk scale.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::fock::{DeformedFockSpace, NormDomain};
use crate::numerics::{spectral_norm, CMat, CVec};
use crate::report::{format_float, CheckReport};
use crate::wick::wick;
use crate::{Error, Result};

/// Default cap on complex entries of the doubled-space matrix.
pub const DEFAULT_MATRIX_BUDGET: usize = 40_000_000;

/// A deformed-orthonormal basis of level n: the columns of the inverse
/// square root of the level Gram. Real whenever the Gram is real.
pub fn orthonormal_level_basis(space: &DeformedFockSpace, n: usize) -> Vec<CVec> {
    let inv_sqrt = space.gram_inv_sqrt(n);
    (0..space.dim_level(n))
        .map(|j| inv_sqrt.column(j).into_owned())
        .collect()
}

/// Trace side of the semidiscreteness comparison: the sum of squared
/// deformed norms of the orthonormal family, which is exactly d^n.
pub fn trace_side(space: &DeformedFockSpace, n: usize) -> f64 {
    orthonormal_level_basis(space, n)
        .iter()
        .map(|xi| {
            let norm = space.level_norm(n, xi);
            norm * norm
        })
        .sum()
}

/// Spectral norm of sum_i conj(W(xi_i)) (x) W(xi_i) on the doubled
/// cutoff space, with source columns restricted to exact blocks on both
/// factors. Conjugates are entrywise in orthonormal coordinates. The
/// value is a certified lower bound of the untruncated norm.
pub fn witness_min_norm(space: &DeformedFockSpace, n: usize, budget: usize) -> Result<f64> {
    let basis = orthonormal_level_basis(space, n);
    let dense: Vec<CMat> = basis
        .iter()
        .map(|xi| Ok(wick(space, n, xi)?.orthonormal_matrix(space, NormDomain::ExactBlocks)))
        .collect::<Result<_>>()?;
    let rows = dense[0].nrows();
    let cols = dense[0].ncols();
    let required = rows * rows * cols * cols;
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let mut doubled = CMat::zeros(rows * rows, cols * cols);
    for w in &dense {
        let conj_w = w.map(|z| z.conj());
        doubled += crate::numerics::kron(&conj_w, w);
    }
    Ok(spectral_norm(&doubled))
}

/// Evaluates every computable link of the chain bounding the doubled
/// min norm: the reshaped Hilbert-Schmidt comparisons for each (k, k')
/// pair against c * d^{n/2}, the exact Hilbert-Schmidt value of the
/// orthonormal family, and the product bound c^3 (n+1)^2 d^{n/2}.
pub fn chain_upper_bound(
    space: &DeformedFockSpace,
    n: usize,
    tol: f64,
) -> Result<(f64, Vec<CheckReport>)> {
    let d = space.d();
    let c = space.c_constant();
    let half_power = (d as f64).powf(n as f64 / 2.0);
    let basis = orthonormal_level_basis(space, n);
    let t = space.deformation();
    let mut links = Vec::new();

    // orthonormal family: the plain Hilbert-Schmidt value is d^{n/2}
    let family_hs = {
        let mut gram_sum = 0.0f64;
        let on: Vec<CVec> = basis
            .iter()
            .map(|xi| space.gram_sqrt(n) * xi)
            .collect();
        for a in &on {
            for b in &on {
                let ip = (a.adjoint() * b)[(0, 0)];
                gram_sum += ip.norm_sqr();
            }
        }
        gram_sum.sqrt()
    };
    links.push(
        CheckReport::residual(
            "witness-family-hilbert-schmidt",
            (family_hs - half_power).abs(),
            1e-9,
        )
        .with_param("n", n)
        .with_note("doubled family has Hilbert-Schmidt value d^(n/2)"),
    );

    // per (k, k') reshaped Hilbert-Schmidt bounds
    let mut split_on: Vec<Vec<CVec>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let r_adj = crate::fock::shuffle_operator(t, n, k)?.adjoint();
        let weight = crate::numerics::kron(space.gram_sqrt(n - k), space.gram_sqrt(k));
        split_on.push(basis.iter().map(|xi| &weight * (&r_adj * xi)).collect());
    }
    for k in 0..=n {
        for k_prime in 0..=n {
            let mut hs_sq = 0.0f64;
            for a in 0..basis.len() {
                for b in 0..basis.len() {
                    // Frobenius of sum_i conj(w'_i) w_i^T via pairwise products
                    let left = (split_on[k_prime][a].adjoint() * &split_on[k_prime][b])[(0, 0)];
                    let right = (split_on[k][a].adjoint() * &split_on[k][b])[(0, 0)];
                    hs_sq += (left.conj() * right).re;
                }
            }
            let hs = hs_sq.max(0.0).sqrt();
            links.push(
                CheckReport::new("witness-split-hilbert-schmidt", hs, c * half_power, tol)
                    .with_param("k", k)
                    .with_param("k_prime", k_prime)
                    .with_param("n", n),
            );
        }
    }

    let bound = c.powi(3) * ((n + 1) * (n + 1)) as f64 * half_power;
    Ok((bound, links))
}

/// Smallest even n at which d^{n/2} exceeds c^3 (n+1)^2, scanning integer
/// half-powers so the comparison is exact; finite for every d >= 2 and
/// 0 <= q < 1.
pub fn crossing_index(d: usize, q: f64) -> Result<u64> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!(
            "crossing index needs d >= 2, got {d}"
        )));
    }
    let c = crate::fock::c_constant(q)?;
    let c3 = c.powi(3);
    let mut half_power = 1.0f64;
    for m in 1..=5000u64 {
        half_power *= d as f64;
        let n = 2 * m;
        if half_power > c3 * ((n + 1) * (n + 1)) as f64 {
            return Ok(n);
        }
    }
    Err(Error::InvalidParameter(format!(
        "no crossing found below n = 10000 for d={d}, q={q}"
    )))
}

/// The weak-expectation-property lower bound: the vacuum pairing of the
/// conjugated-reversed family against the adjoint Wick operators, which
/// evaluates to d^n.
pub fn wep_lower_bound(space: &DeformedFockSpace, n: usize) -> Result<f64> {
    let basis = orthonormal_level_basis(space, n);
    let u = crate::fock::reversal_matrix(space.d(), n);
    let conj_n = space.conjugation_matrix(n);
    let mut total = 0.0f64;
    for xi in &basis {
        let ju = &conj_n * (&u * xi).map(|z| z.conj());
        let adj_vacuum = wick(space, n, xi)?.gram_adjoint(space).apply_to_vacuum();
        let pairing = space.level_inner(n, &ju, &adj_vacuum[n]);
        total += pairing.re;
    }
    Ok(total)
}

/// Everything one witness run certifies, with its per-link reports.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub params: BTreeMap<String, String>,
    pub trace_value: f64,
    pub min_norm: f64,
    pub chain_bound: f64,
    pub crossing: u64,
    pub wep_value: f64,
    pub links: Vec<CheckReport>,
}

impl WitnessReport {
    pub fn pass(&self) -> bool {
        self.links.iter().all(|l| l.pass())
    }

    /// JSON object mirroring the check-report conventions; numbers carry
    /// 15 significant digits and no timestamps appear.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{");
        out.push_str("\"params\": {");
        for (i, (k, v)) in self.params.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            let _ = write!(out, "\"{k}\": \"{v}\"");
        }
        out.push_str("}, ");
        let _ = write!(out, "\"trace_value\": {}, ", format_float(self.trace_value));
        let _ = write!(out, "\"min_norm\": {}, ", format_float(self.min_norm));
        let _ = write!(out, "\"truncation_flag\": true, ");
        let _ = write!(out, "\"chain_bound\": {}, ", format_float(self.chain_bound));
        let _ = write!(out, "\"crossing_index\": {}, ", self.crossing);
        let _ = write!(out, "\"wep_lower_bound\": {}, ", format_float(self.wep_value));
        let _ = write!(out, "\"pass\": {}, ", self.pass());
        out.push_str("\"links\": ");
        out.push_str(&crate::report::to_json(&self.links));
        out.push('}');
        out
    }
}

/// Runs the full witness experiment at one level.
pub fn run_witness(
    space: &DeformedFockSpace,
    n: usize,
    budget: usize,
    tol: f64,
) -> Result<WitnessReport> {
    let d = space.d();
    let q = space.deformation().q_bound();
    let trace_value = trace_side(space, n);
    let expected_trace = (d as f64).powi(n as i32);
    let min_norm = witness_min_norm(space, n, budget)?;
    let (chain_bound, mut links) = chain_upper_bound(space, n, tol)?;
    links.push(
        CheckReport::residual("witness-trace-side", (trace_value - expected_trace).abs(), 1e-12)
            .with_param("n", n)
            .with_note("trace side equals d^n"),
    );
    links.push(
        CheckReport::new("witness-min-norm-bound", min_norm, chain_bound, tol)
            .with_param("n", n)
            .truncated(true)
            .with_note(
                "semidiscreteness comparison itself is the assumed-for-contradiction \
                 step and is not asserted",
            ),
    );
    let wep_value = wep_lower_bound(space, n)?;
    links.push(
        CheckReport::residual("witness-wep-pairing", (wep_value - expected_trace).abs(), 1e-9)
            .with_param("n", n)
            .with_note("vacuum pairing lower bound equals d^n"),
    );
    let crossing = crossing_index(d, q)?;
    let mut params = BTreeMap::new();
    params.insert("d".to_string(), d.to_string());
    params.insert("q".to_string(), q.to_string());
    params.insert("n".to_string(), n.to_string());
    params.insert("levels".to_string(), space.levels().to_string());
    Ok(WitnessReport {
        params,
        trace_value,
        min_norm,
        chain_bound,
        crossing,
        wep_value,
        links,
    })
}
