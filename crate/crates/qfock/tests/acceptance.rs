//! Acceptance suite: every release criterion as one test, each printing
//! a single PASS/FAIL line with its headline numbers. Tolerances are
//! pinned in code next to each assertion.

use std::time::Instant;

use qfock::araki::{
    deformed_orthonormal_eigenbasis, modular_identity_checks, modular_trace_check,
    non_injectivity_criterion, nontracial_pair_gap, quasi_free_fock,
    quasi_free_khintchine_check, quasi_free_scalar_check, u_gram, CriterionVerdict,
    QuasiFreeGenerator,
};
use qfock::config::RunConfig;
use qfock::deformation::{braid_residual, YangBaxterOperator};
use qfock::fock::{
    c_constant, commutation_relation_residual, creation, factorization_residual,
    free_projection_residual, symmetrizer_direct, symmetrizer_recursive, DeformedFockSpace,
    NormDomain,
};
use qfock::numerics::{cplx, frobenius, herm_eigen, weighted_operator_norm, CMat, CVec, GramForm};
use qfock::opspace::khintchine_check;
use qfock::rng::SplitMix64;
use qfock::suites::run_suites;
use qfock::wick::{projection_block_residual, wick, wick_norm_check};
use qfock::witness::{
    crossing_index, orthonormal_level_basis, run_witness, DEFAULT_MATRIX_BUDGET,
};

fn q_flip(d: usize, q: f64) -> YangBaxterOperator {
    YangBaxterOperator::q_flip(d, q).expect("valid flip deformation")
}

fn tracial_space(d: usize, q: f64, levels: usize) -> DeformedFockSpace {
    DeformedFockSpace::new(q_flip(d, q), levels).expect("space builds")
}

fn real_coupling() -> CMat {
    CMat::from_row_slice(
        2,
        2,
        &[cplx(0.3, 0.0), cplx(0.5, 0.0), cplx(0.5, 0.0), cplx(-0.2, 0.0)],
    )
}

fn complex_coupling() -> CMat {
    CMat::from_row_slice(
        2,
        2,
        &[cplx(0.3, 0.0), cplx(0.0, 0.5), cplx(0.0, -0.5), cplx(0.2, 0.0)],
    )
}

fn random_vec(rng: &mut SplitMix64, dim: usize) -> CVec {
    CVec::from_fn(dim, |_, _| rng.next_complex())
}

fn random_mat(rng: &mut SplitMix64, p: usize) -> CMat {
    CMat::from_fn(p, p, |_, _| rng.next_complex())
}

struct Criterion {
    id: usize,
    name: &'static str,
    started: Instant,
}

impl Criterion {
    fn new(id: usize, name: &'static str) -> Self {
        Criterion {
            id,
            name,
            started: Instant::now(),
        }
    }

    fn pass(self, detail: String) {
        println!(
            "ACCEPTANCE {:02} {}: PASS ({:.2}s) {}",
            self.id,
            self.name,
            self.started.elapsed().as_secs_f64(),
            detail
        );
    }

    fn elapsed(&self) -> f64 {
        self.started.elapsed().as_secs_f64()
    }
}

#[test]
fn acceptance_01_deformation_validity() {
    let c = Criterion::new(1, "deformation validity");
    let mut worst_braid = 0.0f64;
    let mut worst_tracial = 0.0f64;
    for d in [2usize, 3] {
        for q in [-0.5, 0.0, 0.5, 0.9] {
            let t = q_flip(d, q);
            worst_braid = worst_braid.max(braid_residual(t.matrix()).unwrap());
            worst_tracial = worst_tracial.max(t.traciality_residual());
            assert!(t.is_tracial(), "flip at d={d} q={q} must be tracial");
        }
    }
    let real = YangBaxterOperator::from_coupling_matrix(&real_coupling()).unwrap();
    worst_braid = worst_braid.max(braid_residual(real.matrix()).unwrap());
    worst_tracial = worst_tracial.max(real.traciality_residual());
    assert!(real.is_tracial());
    let complex = YangBaxterOperator::from_coupling_matrix(&complex_coupling()).unwrap();
    worst_braid = worst_braid.max(braid_residual(complex.matrix()).unwrap());
    let complex_residual = complex.traciality_residual();

    assert!(worst_braid < 1e-10, "braid residual {worst_braid}");
    assert!(worst_tracial < 1e-12, "traciality residual {worst_tracial}");
    assert!(complex_residual > 1e-3, "complex coupling residual {complex_residual}");
    assert!(c.elapsed() < 1.0, "criterion 1 exceeded 1s: {:.2}s", c.elapsed());
    c.pass(format!(
        "braid<={worst_braid:.2e} tracial<={worst_tracial:.2e} complex={complex_residual:.3}"
    ));
}

#[test]
fn acceptance_02_symmetrizer_spectra() {
    let c = Criterion::new(2, "level-2 symmetrizer spectra");
    let mut worst = 0.0f64;
    for d in [2usize, 3] {
        for q in [-0.5, 0.0, 0.5, 0.9] {
            let t = q_flip(d, q);
            let p2 = symmetrizer_direct(&t, 2).unwrap();
            let eig = herm_eigen(&p2, 1e-10).unwrap();
            let sym = d * (d + 1) / 2;
            let anti = d * (d - 1) / 2;
            let mut expected: Vec<f64> = std::iter::repeat_n(1.0 + q, sym)
                .chain(std::iter::repeat_n(1.0 - q, anti))
                .collect();
            expected.sort_by(|a, b| b.partial_cmp(a).unwrap());
            assert_eq!(eig.values.len(), expected.len());
            for (got, want) in eig.values.iter().zip(&expected) {
                worst = worst.max((got - want).abs());
            }
        }
    }
    assert!(worst < 1e-10, "spectrum residual {worst}");
    c.pass(format!("residual<={worst:.2e}"));
}

#[test]
fn acceptance_03_factorization_grid() {
    let c = Criterion::new(3, "symmetrizer factorization grid");
    let mut worst_fact = 0.0f64;
    let mut worst_agree = 0.0f64;
    for d in [2usize, 3] {
        for q in [-0.5, 0.5, 0.9] {
            let t = q_flip(d, q);
            for n in 0..=5usize {
                for k in 0..=n {
                    let r = factorization_residual(&t, n, k).unwrap();
                    worst_fact = worst_fact.max(r);
                }
                if n >= 1 {
                    let direct = symmetrizer_direct(&t, n).unwrap();
                    let recursive = symmetrizer_recursive(&t, n);
                    let rel = frobenius(&(&direct - &recursive)) / frobenius(&direct);
                    worst_agree = worst_agree.max(rel);
                }
            }
        }
    }
    assert!(worst_fact < 1e-9, "factorization residual {worst_fact}");
    assert!(worst_agree < 1e-9, "route agreement {worst_agree}");
    assert!(c.elapsed() < 30.0, "criterion 3 exceeded 30s: {:.2}s", c.elapsed());
    c.pass(format!(
        "factorization<={worst_fact:.2e} agreement<={worst_agree:.2e}"
    ));
}

#[test]
fn acceptance_04_norm_estimates() {
    let c = Criterion::new(4, "shuffle-adjoint and creation norm bounds");
    let mut worst_split = f64::NEG_INFINITY; // norm minus bound, must stay <= 1e-8
    let mut worst_level = f64::NEG_INFINITY;
    for d in [2usize, 3] {
        for q in [-0.5, 0.5, 0.9] {
            let t = q_flip(d, q);
            let cq = c_constant(q.abs()).unwrap();
            let space = DeformedFockSpace::new(t.clone(), 5).unwrap();
            for n in 1..=5usize {
                for k in 0..=n {
                    let r_adj = qfock::fock::shuffle_operator(&t, n, k).unwrap().adjoint();
                    let tensor = GramForm::new(qfock::numerics::kron(
                        space.gram(n - k).matrix(),
                        space.gram(k).matrix(),
                    ))
                    .unwrap();
                    let split = weighted_operator_norm(&r_adj, &tensor, space.gram(n)).unwrap();
                    worst_split = worst_split.max(split - cq.sqrt());
                    let level = weighted_operator_norm(&r_adj, space.gram(n), space.gram(n)).unwrap();
                    worst_level = worst_level.max(level - cq);
                }
            }
        }
    }
    assert!(worst_split <= 1e-8, "split norm excess {worst_split}");
    assert!(worst_level <= 1e-8, "level norm excess {worst_level}");

    // creation bound over 100 random vectors per degree and parameter
    let mut rng = SplitMix64::new(4001);
    let mut worst_creation = f64::NEG_INFINITY;
    for q in [-0.5f64, 0.5, 0.9] {
        let cq = c_constant(q.abs()).unwrap();
        for n in 1..=5usize {
            let space = tracial_space(2, q, n + 1);
            for _ in 0..100 {
                let xi = random_vec(&mut rng, space.dim_level(n));
                let norm = creation(&space, n, &xi).weighted_norm(&space, NormDomain::ExactBlocks);
                worst_creation = worst_creation.max(norm - cq.sqrt() * space.level_norm(n, &xi));
            }
        }
    }
    assert!(worst_creation <= 1e-8, "creation bound excess {worst_creation}");
    c.pass(format!(
        "split<=sqrt(c)+{worst_split:.1e} level<=c+{worst_level:.1e} creation+{worst_creation:.1e}"
    ));
}

#[test]
fn acceptance_05_commutation_relations() {
    let c = Criterion::new(5, "deformed commutation relations");
    let mut worst = 0.0f64;
    for d in [2usize, 3] {
        for q in [-0.5, 0.0, 0.5, 0.9] {
            let space = tracial_space(d, q, 5);
            worst = worst.max(commutation_relation_residual(&space));
        }
    }
    let real = YangBaxterOperator::from_coupling_matrix(&real_coupling()).unwrap();
    let space = DeformedFockSpace::new(real, 5).unwrap();
    worst = worst.max(commutation_relation_residual(&space));
    assert!(worst < 1e-10, "commutation residual {worst}");
    c.pass(format!("residual<={worst:.2e}"));
}

#[test]
fn acceptance_06_wick_products() {
    let c = Criterion::new(6, "wick vacuum, two-sided bound, compression");
    let mut rng = SplitMix64::new(6001);
    let mut worst_vacuum = 0.0f64;
    let mut min_ratio = f64::INFINITY;
    let mut worst_ratio_excess = f64::NEG_INFINITY;
    for q in [0.0f64, 0.5, -0.5] {
        let cq = c_constant(q.abs()).unwrap();
        for n in 1..=4usize {
            let space = tracial_space(2, q, n + 2);
            let ratio_cap = cq.powf(1.5) * (n as f64 + 1.0);
            for _ in 0..100 {
                let xi = random_vec(&mut rng, space.dim_level(n));
                let w = wick(&space, n, &xi).unwrap();
                let img = w.apply_to_vacuum();
                let mut residual: f64 = (&img[n] - &xi).iter().map(|z| z.norm()).sum();
                for (lvl, v) in img.iter().enumerate() {
                    if lvl != n {
                        residual += v.iter().map(|z| z.norm()).sum::<f64>();
                    }
                }
                worst_vacuum = worst_vacuum.max(residual);
                let (lower, upper) = wick_norm_check(&space, n, &xi, 1e-10, 1e-8).unwrap();
                assert!(lower.pass() && upper.pass());
                // ratio form: |W(xi)| / |xi| in [1 - 1e-10, c^{3/2}(n+1) + 1e-8]
                let ratio = lower.rhs / lower.lhs;
                min_ratio = min_ratio.min(ratio);
                worst_ratio_excess = worst_ratio_excess.max(ratio - ratio_cap);
            }
        }
    }
    assert!(worst_vacuum < 1e-10, "vacuum image residual {worst_vacuum}");
    assert!(min_ratio >= 1.0 - 1e-10, "lower ratio {min_ratio}");
    assert!(worst_ratio_excess <= 1e-8, "upper ratio excess {worst_ratio_excess}");

    // compression identity over the degree grid
    let mut worst_block = 0.0f64;
    for q in [0.0, 0.5, -0.5] {
        for n in 1..=4usize {
            let space = tracial_space(2, q, n + 2);
            for k in 0..=n {
                let x = random_vec(&mut rng, space.dim_level(n));
                worst_block = worst_block.max(projection_block_residual(&space, n, k, &x).unwrap());
            }
        }
    }
    assert!(worst_block < 1e-10, "compression residual {worst_block}");
    c.pass(format!(
        "vacuum<={worst_vacuum:.2e} ratio in [{min_ratio:.3}, cap{:+.1e}] compression<={worst_block:.2e}",
        worst_ratio_excess
    ));
}

#[test]
fn acceptance_07_free_khintchine() {
    let c = Criterion::new(7, "free vector-valued bounds and projection identity");
    let mut rng = SplitMix64::new(7001);
    let mut worst_lower = f64::NEG_INFINITY;
    let mut worst_upper = f64::NEG_INFINITY;
    let mut count = 0usize;
    'outer: loop {
        for n in 1..=3usize {
            for p in 1..=3usize {
                if count == 50 {
                    break 'outer;
                }
                count += 1;
                let space = tracial_space(2, 0.0, n + 2);
                let dim = space.dim_level(n);
                let vectors: Vec<CVec> = (0..dim)
                    .map(|i| {
                        let mut v = CVec::zeros(dim);
                        v[i] = cplx(1.0, 0.0);
                        v
                    })
                    .collect();
                let coeffs: Vec<CMat> = (0..dim).map(|_| random_mat(&mut rng, p)).collect();
                let out =
                    khintchine_check(&space, n, &coeffs, &vectors, 1.0, None, 1e-9, 1e-9).unwrap();
                worst_lower = worst_lower.max(-out.lower.slack());
                worst_upper = worst_upper.max(-out.upper.slack());
                assert!(out.lower.pass(), "instance {count}: {}", out.lower.summary());
                assert!(out.upper.pass(), "instance {count}: {}", out.upper.summary());
            }
        }
    }
    let mut worst_projection = 0.0f64;
    let space = tracial_space(2, 0.0, 5);
    for m in 1..=5usize {
        worst_projection = worst_projection.max(free_projection_residual(&space, m));
    }
    assert!(worst_projection < 1e-12, "projection residual {worst_projection}");
    c.pass(format!(
        "50 instances, slack>=-{:.1e}/-{:.1e}, projection<={worst_projection:.2e}",
        worst_lower.max(0.0),
        worst_upper.max(0.0)
    ));
}

#[test]
fn acceptance_08_deformed_khintchine() {
    let c = Criterion::new(8, "deformed vector-valued bounds with cutoff trend");
    let mut rng = SplitMix64::new(8001);
    let mut worst_upper = f64::NEG_INFINITY;
    let mut count = 0usize;
    'outer: loop {
        for q in [0.5, -0.5] {
            for n in 1..=3usize {
                if count == 50 {
                    break 'outer;
                }
                count += 1;
                let t = q_flip(2, q);
                let space = DeformedFockSpace::new(t.clone(), n + 2).unwrap();
                let basis = orthonormal_level_basis(&space, n);
                let coeffs: Vec<CMat> = (0..basis.len()).map(|_| random_mat(&mut rng, 2)).collect();
                let cq = space.c_constant();
                let out =
                    khintchine_check(&space, n, &coeffs, &basis, cq, None, 1e-9, 1e-9).unwrap();
                assert!(out.upper.pass(), "instance {count}: {}", out.upper.summary());
                assert!(out.lower.pass(), "instance {count}: {}", out.lower.summary());
                worst_upper = worst_upper.max(-out.upper.slack());
                // middle term must not decrease as the cutoff grows
                let mut middles = Vec::new();
                for levels in [n, n + 1, n + 2] {
                    let small = DeformedFockSpace::new(t.clone(), levels).unwrap();
                    let sb = orthonormal_level_basis(&small, n);
                    let o = khintchine_check(&small, n, &coeffs, &sb, cq, None, 1e-9, 1e-9)
                        .unwrap();
                    middles.push(o.middle);
                }
                for w in middles.windows(2) {
                    assert!(
                        w[1] >= w[0] - 1e-10,
                        "middle decreased across cutoffs: {middles:?}"
                    );
                }
            }
        }
    }
    c.pass(format!("50 instances, upper slack >= -{:.1e}", worst_upper.max(0.0)));
}

#[test]
fn acceptance_09_witness_chain() {
    let c = Criterion::new(9, "witness chain and crossing index");
    let mut details = Vec::new();
    for q in [0.0, 0.5] {
        for n in 1..=4usize {
            let space = tracial_space(2, q, n + 2);
            let report = run_witness(&space, n, DEFAULT_MATRIX_BUDGET, 1e-8).unwrap();
            let expected = 2.0f64.powi(n as i32);
            assert!(
                (report.trace_value - expected).abs() < 1e-12,
                "trace side q={q} n={n}: {}",
                report.trace_value
            );
            assert!(
                report.min_norm <= report.chain_bound + 1e-8,
                "min norm q={q} n={n}: {} > {}",
                report.min_norm,
                report.chain_bound
            );
            for link in &report.links {
                assert!(link.pass(), "q={q} n={n}: {}", link.summary());
            }
            assert!(
                (report.wep_value - expected).abs() < 1e-9,
                "wep pairing q={q} n={n}: {}",
                report.wep_value
            );
            if n == 4 {
                details.push(format!(
                    "q={q}: min={:.3} bound={:.3}",
                    report.min_norm, report.chain_bound
                ));
            }
        }
    }
    assert_eq!(crossing_index(2, 0.0).unwrap(), 18);
    assert!(c.elapsed() < 180.0, "criterion 9 exceeded 3min: {:.1}s", c.elapsed());
    c.pass(format!("crossing(2,0)=18; {}", details.join("; ")));
}

#[test]
fn acceptance_10_quasi_free() {
    let c = Criterion::new(10, "quasi-free geometry, modular data, criterion verdicts");
    let gen = QuasiFreeGenerator::new(0, vec![2.0]).unwrap();
    // renormed weights
    let g = u_gram(&gen);
    assert!((g.matrix()[(0, 0)].re - 4.0 / 3.0).abs() < 1e-15);
    assert!((g.matrix()[(1, 1)].re - 2.0 / 3.0).abs() < 1e-15);

    let space = quasi_free_fock(&gen, 0.5, 4).unwrap();
    // trace formula against (3/sqrt(2))^n
    let base = 3.0 / 2.0f64.sqrt();
    for n in 1..=3usize {
        let check = modular_trace_check(&space, &gen, n, 1e-12);
        assert!(check.pass(), "{}", check.summary());
        let expected: f64 = check.params["expected"].parse().unwrap();
        assert!((expected - base.powi(n as i32)).abs() < 1e-12);
    }
    // polar identity and friends
    for n in 1..=3usize {
        for check in modular_identity_checks(&space, &gen, n, 1e-10) {
            assert!(check.pass(), "{}", check.summary());
        }
    }
    // scalar and vector-valued two-sided bounds
    let mut rng = SplitMix64::new(10001);
    for n in 1..=2usize {
        let dim = space.dim_level(n);
        for _ in 0..10 {
            let vectors: Vec<CVec> = (0..3).map(|_| random_vec(&mut rng, dim)).collect();
            let coeffs: Vec<num_complex::Complex64> = (0..3).map(|_| rng.next_complex()).collect();
            let (lower, upper) =
                quasi_free_scalar_check(&space, &gen, n, &coeffs, &vectors, 1e-9).unwrap();
            assert!(lower.pass(), "{}", lower.summary());
            assert!(upper.pass(), "{}", upper.summary());
        }
        let basis: Vec<CVec> = deformed_orthonormal_eigenbasis(&space, &gen, n)
            .into_iter()
            .map(|(v, _)| v)
            .collect();
        for _ in 0..10 {
            let coeffs: Vec<CMat> = (0..basis.len()).map(|_| random_mat(&mut rng, 2)).collect();
            let out = quasi_free_khintchine_check(&space, n, &coeffs, &basis, 1e-9, 1e-9).unwrap();
            assert!(out.lower.pass(), "{}", out.lower.summary());
            assert!(out.upper.pass(), "{}", out.upper.summary());
        }
    }
    // trivial generator: twisted pipeline equals the plain one
    let trivial = QuasiFreeGenerator::trivial(2);
    let tspace = quasi_free_fock(&trivial, 0.5, 4).unwrap();
    let basis = orthonormal_level_basis(&tspace, 2);
    let coeffs: Vec<CMat> = (0..basis.len()).map(|_| random_mat(&mut rng, 2)).collect();
    let twisted = quasi_free_khintchine_check(&tspace, 2, &coeffs, &basis, 1e-9, 1e-9).unwrap();
    let plain = khintchine_check(
        &tspace,
        2,
        &coeffs,
        &basis,
        tspace.c_constant(),
        None,
        1e-9,
        1e-9,
    )
    .unwrap();
    for (a, b) in twisted.per_k.iter().zip(&plain.per_k) {
        assert!((a - b).abs() < 1e-12, "twisted {a} vs plain {b}");
    }
    assert!((twisted.middle - plain.middle).abs() < 1e-12);

    // criterion verdicts on the three pinned datasets
    assert!(matches!(
        non_injectivity_criterion(2, &[], 2.0).unwrap(),
        CriterionVerdict::NonInjectiveFixedPart { .. }
    ));
    assert!(matches!(
        non_injectivity_criterion(0, &[1.2], 1.3).unwrap(),
        CriterionVerdict::NonInjectiveSpectral { .. }
    ));
    assert!(matches!(
        non_injectivity_criterion(0, &[3.0], 3.0).unwrap(),
        CriterionVerdict::Inconclusive { .. }
    ));

    // non-traciality witness pair
    let free_pair_space = quasi_free_fock(&gen, 0.0, 3).unwrap();
    let gap = nontracial_pair_gap(&free_pair_space);
    assert!(gap > 0.01, "trace gap {gap}");

    assert!(c.elapsed() < 60.0, "criterion 10 exceeded 1min: {:.1}s", c.elapsed());
    c.pass(format!("trace formula, modular identities, verdicts ok; gap={gap:.3}"));
}

#[test]
fn acceptance_11_determinism() {
    let c = Criterion::new(11, "deterministic reports under fixed seed");
    let mut config = RunConfig::default();
    config.apply("q", "0.5").unwrap();
    config.apply("d", "2").unwrap();
    config.apply("N", "4").unwrap();
    config.apply("n", "1..2").unwrap();
    config.apply("instances", "3").unwrap();
    config.apply("seed", "2024").unwrap();
    config
        .apply(
            "suite",
            "deformation,fock,wick,khintchine-free,khintchine-deformed,witness",
        )
        .unwrap();
    let first = run_suites(&config).unwrap();
    let second = run_suites(&config).unwrap();
    let ja = qfock::report::to_json(&first.checks);
    let jb = qfock::report::to_json(&second.checks);
    assert_eq!(ja, jb, "check reports differ between runs");
    let wa: Vec<String> = first.witness_reports.iter().map(|w| w.to_json()).collect();
    let wb: Vec<String> = second.witness_reports.iter().map(|w| w.to_json()).collect();
    assert_eq!(wa, wb, "witness reports differ between runs");
    assert!(first.all_pass(), "baseline run must pass");
    c.pass(format!("{} checks byte-identical", first.checks.len()));
}
