//! Acceptance gate: exact oracles, hard coupling invariants, and finite-n
//! statistical checks with generous tolerances. Each criterion prints one
//! pass line (visible with `--nocapture`); a failed assertion fails the
//! criterion.

mod oracles;

use std::sync::OnceLock;

use oracles::{all_graphs, brute_hamilton, brute_k_connected, brute_perfect_matching, random_graph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rigraph::coupling::{
    chernoff_bound, couple, exact_tv_small, phat_minus, tv_bound, CouplingParams, GraphLaw,
};
use rigraph::experiment::{self, TaskConfig};
use rigraph::gen::MSpec;
use rigraph::props::{
    hamilton_solve, has_perfect_matching, is_k_connected, HamiltonBudget, HamiltonStatus,
};
use rigraph::thresholds::{
    crossing_estimate, lemma7_mindeg_check, smoothed_estimates, sweep, threshold_p, Model,
    PropertyKind, SweepCurve, ThresholdQuery,
};
use rigraph::Seed;

#[test]
fn criterion1_oracle_equivalence() {
    // skip the heuristic so every verdict comes from the exact solver
    let budget = HamiltonBudget {
        restarts: 0,
        ..HamiltonBudget::default()
    };
    let mut checked = 0u64;
    let mut audit = |g: &rigraph::Graph| {
        for k in 1..=3 {
            assert_eq!(
                is_k_connected(g, k),
                brute_k_connected(g, k),
                "k-connectivity k={k} on {:?}",
                g.edges()
            );
        }
        assert_eq!(
            has_perfect_matching(g),
            brute_perfect_matching(g),
            "matching on {:?}",
            g.edges()
        );
        if g.n() >= 3 {
            let v = hamilton_solve(g, &budget).unwrap();
            assert_ne!(v.status, HamiltonStatus::Unresolved);
            assert_eq!(
                v.status == HamiltonStatus::Yes,
                brute_hamilton(g),
                "hamilton on {:?}",
                g.edges()
            );
        }
        checked += 1;
    };
    for n in 1..=7 {
        for g in all_graphs(n) {
            audit(&g);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0001);
    for i in 0..500 {
        let n = if i % 2 == 0 { 9 } else { 10 };
        audit(&random_graph(n, &mut rng));
    }
    println!("[PASS] criterion 1: exact checkers match brute-force oracles on {checked} graphs");
}

#[test]
fn criterion2_poisson_multigraph_identity() {
    for n in [3usize, 4] {
        let pairs = (n * (n - 1) / 2) as f64;
        for lambda in [0.1, 1.0, 3.0] {
            let p_hat = 1.0 - (-lambda / pairs).exp();
            let tv = exact_tv_small(
                n,
                &GraphLaw::Star(MSpec::Poisson { lambda }),
                &GraphLaw::Gnp(p_hat),
            )
            .unwrap();
            assert!(tv < 1e-10, "n={n} lambda={lambda}: tv={tv}");
        }
    }
    println!("[PASS] criterion 2: Poisson-count multigraph equals G(n,p-hat) exactly (TV < 1e-10)");
}

#[test]
fn criterion3_binomial_multigraph_tv_bound() {
    let n = 3usize;
    let pairs = (n * (n - 1) / 2) as f64;
    for (m, p_hat) in [(2u64, 0.1f64), (5, 0.05), (10, 0.02)] {
        let gnp = 1.0 - (-(m as f64) * p_hat / pairs).exp();
        let tv = exact_tv_small(
            n,
            &GraphLaw::Star(MSpec::Binomial {
                count: m,
                q: p_hat,
            }),
            &GraphLaw::Gnp(gnp),
        )
        .unwrap();
        assert!(
            tv <= tv_bound(p_hat),
            "(m={m}, p_hat={p_hat}): tv={tv} > {}",
            tv_bound(p_hat)
        );
    }
    println!("[PASS] criterion 3: binomial-count multigraph within TV bound 2*p-hat");
}

#[test]
fn criterion4_chernoff_tails() {
    let (count, p, samples) = (1000u64, 0.01f64, 100_000u64);
    let mean = count as f64 * p;
    let dist = MSpec::Binomial { count, q: p };
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0004);
    let draws: Vec<u64> = (0..samples).map(|_| dist.sample(&mut rng)).collect();
    for t in [5.0f64, 10.0, 20.0, 30.0] {
        let hits = draws
            .iter()
            .filter(|&&x| (x as f64 - mean).abs() >= t)
            .count();
        let freq = hits as f64 / samples as f64;
        let bound = chernoff_bound(mean, t).unwrap();
        assert!(freq <= bound, "t={t}: empirical {freq} > bound {bound}");
    }
    println!("[PASS] criterion 4: Bin(1000, 0.01) tails below the concentration bound at t in {{5,10,20,30}}");
}

fn coupling_params() -> CouplingParams {
    let n = 300usize;
    let m = 90_000u64; // n^2
    let p = threshold_p(&ThresholdQuery {
        model: Model::Rig,
        n,
        m: Some(m),
        alpha: Some(2.0),
        k: 1,
        omega: 0.0,
        kind: PropertyKind::Connectivity,
    })
    .unwrap();
    CouplingParams {
        n,
        m,
        p,
        omega_c: None,
        forced_regime: None,
    }
}

#[test]
fn criterion5_coupling_verification() {
    let params = coupling_params();
    let seed = Seed::new(0xacce_0005);
    let samples = 200u64;
    let pairs = (params.n * (params.n - 1) / 2) as f64;
    let q_edge = 1.0 - (1.0 - params.p * params.p).powi(params.m as i32);
    let phat = phat_minus(params.n, params.m, params.p, None).unwrap().value;

    let mut successes = 0u64;
    let mut rig_edges = Vec::with_capacity(samples as usize);
    let mut lower_edges = 0u64;
    for i in 0..samples {
        let o = couple(&params, seed.substream(i)).unwrap();
        rig_edges.push(o.g_rig.edge_count() as f64);
        if o.success {
            successes += 1;
            let lower = o.g_lower.as_ref().unwrap();
            // hard assertion: the sandwich always holds on success
            assert!(lower.is_subgraph_of(&o.g_rig).unwrap());
            lower_edges += lower.edge_count() as u64;
        }
    }
    let rate = successes as f64 / samples as f64;
    assert!(rate >= 0.90, "success rate {rate} < 0.90");

    // g_rig marginal: mean edge count vs the exact expectation, 3 sigma
    let mean = rig_edges.iter().sum::<f64>() / samples as f64;
    let var = rig_edges
        .iter()
        .map(|x| (x - mean) * (x - mean))
        .sum::<f64>()
        / (samples - 1) as f64;
    let expected = pairs * q_edge;
    let se = (var / samples as f64).sqrt();
    assert!(
        (mean - expected).abs() < 3.0 * se,
        "rig edge mean {mean} vs {expected} (se {se})"
    );

    // g_lower marginal: pooled per-edge frequency vs p-hat-minus, 3 sigma
    let trials = successes as f64 * pairs;
    let freq = lower_edges as f64 / trials;
    let sigma = (phat * (1.0 - phat) / trials).sqrt();
    assert!(
        (freq - phat).abs() < 3.0 * sigma,
        "lower edge frequency {freq} vs {phat} (sigma {sigma})"
    );
    println!(
        "[PASS] criterion 5: coupling success rate {rate:.3} >= 0.90, subgraph on all successes, marginals within 3 sigma"
    );
}

const GRID: [f64; 9] = [-6.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 6.0];

fn acceptance_sweep(kind: PropertyKind, k: usize, seed: u64) -> SweepCurve {
    let query = ThresholdQuery {
        model: Model::Rig,
        n: 1000,
        m: None,
        alpha: Some(2.0),
        k,
        omega: 0.0,
        kind,
    };
    sweep(&query, &GRID, 300, Seed::new(seed), &HamiltonBudget::default()).unwrap()
}

fn connectivity_curve() -> &'static SweepCurve {
    static C: OnceLock<SweepCurve> = OnceLock::new();
    C.get_or_init(|| acceptance_sweep(PropertyKind::Connectivity, 1, 0xacce_0601))
}

fn matching_curve() -> &'static SweepCurve {
    static C: OnceLock<SweepCurve> = OnceLock::new();
    C.get_or_init(|| acceptance_sweep(PropertyKind::PerfectMatching, 1, 0xacce_0602))
}

fn kconn1_curve() -> &'static SweepCurve {
    static C: OnceLock<SweepCurve> = OnceLock::new();
    C.get_or_init(|| acceptance_sweep(PropertyKind::KConnectivity, 1, 0xacce_0701))
}

fn kconn2_curve() -> &'static SweepCurve {
    static C: OnceLock<SweepCurve> = OnceLock::new();
    C.get_or_init(|| acceptance_sweep(PropertyKind::KConnectivity, 2, 0xacce_0702))
}

fn hamilton_curve() -> &'static SweepCurve {
    static C: OnceLock<SweepCurve> = OnceLock::new();
    C.get_or_init(|| acceptance_sweep(PropertyKind::Hamilton, 2, 0xacce_0703))
}

#[test]
fn criterion6_threshold_s_curves() {
    for (label, curve) in [
        ("connectivity", connectivity_curve()),
        ("perfect matching", matching_curve()),
    ] {
        let smoothed = smoothed_estimates(curve);
        let lo = smoothed.first().unwrap().1;
        let hi = smoothed.last().unwrap().1;
        assert!(lo <= 0.2, "{label}: estimate(-6) = {lo} > 0.2");
        assert!(hi >= 0.9, "{label}: estimate(+6) = {hi} < 0.9");
        let crossing = crossing_estimate(curve).expect("curve crosses 1/2");
        assert!(
            (-5.0..=5.0).contains(&crossing),
            "{label}: crossing {crossing} outside [-5, 5]"
        );
        println!("[PASS] criterion 6 ({label}): S-curve {lo:.3} -> {hi:.3}, crossing at omega = {crossing:.2}");
    }
}

#[test]
fn criterion7_min_degree_phenomenon() {
    for (label, curve) in [("1-connectivity", kconn1_curve()), ("2-connectivity", kconn2_curve())] {
        for pt in &curve.points {
            let d = pt.disagreement_rate().unwrap();
            assert!(
                d <= 0.05,
                "{label} omega={}: disagreement {d} > 5%",
                pt.omega
            );
        }
        println!("[PASS] criterion 7 ({label}): disagreement with min-degree condition <= 5% at every grid point");
    }
    for pt in &hamilton_curve().points {
        let d = pt.disagreement_rate().unwrap();
        let u = pt.unresolved as f64 / pt.samples as f64;
        assert!(d <= 0.10, "hamilton omega={}: disagreement {d} > 10%", pt.omega);
        assert!(u <= 0.10, "hamilton omega={}: unresolved {u} > 10%", pt.omega);
    }
    println!("[PASS] criterion 7 (hamilton): disagreement <= 10% and unresolved <= 10% at every grid point");
}

#[test]
fn criterion8_min_degree_concentration() {
    // alpha = ln 200 / ln 2000 ~ 0.70
    let report = lemma7_mindeg_check(2000, 200, 3.0, 100, Seed::new(0xacce_0008)).unwrap();
    assert!(
        report.percentile5 >= 0.5,
        "5th percentile {} < 0.5",
        report.percentile5
    );
    assert!(!report.flagged);
    println!(
        "[PASS] criterion 8: min-degree ratio 5th percentile {:.3} >= 0.5",
        report.percentile5
    );
}

#[test]
fn criterion9_determinism() {
    // sweeps: recompute each curve with its original seed and compare the
    // CSV bytes against the cached first run
    for (label, curve, kind, k, seed) in [
        ("connectivity", connectivity_curve(), PropertyKind::Connectivity, 1, 0xacce_0601),
        ("perfect matching", matching_curve(), PropertyKind::PerfectMatching, 1, 0xacce_0602),
        ("1-connectivity", kconn1_curve(), PropertyKind::KConnectivity, 1, 0xacce_0701),
        ("2-connectivity", kconn2_curve(), PropertyKind::KConnectivity, 2, 0xacce_0702),
        ("hamilton", hamilton_curve(), PropertyKind::Hamilton, 2, 0xacce_0703),
    ] {
        let rerun = acceptance_sweep(kind, k, seed);
        assert_eq!(curve.to_csv(), rerun.to_csv(), "{label} sweep CSV differs on re-run");
    }

    // coupling and min-degree pipelines: full runs through the experiment
    // runner into two directories, compared byte for byte
    let dir = tempfile::tempdir().unwrap();
    for preset_name in ["coupling-case1", "lemma7"] {
        let mut outputs = Vec::new();
        for rerun in 0..2 {
            let mut config = experiment::preset(preset_name).unwrap();
            config.seed = 0xacce_0009;
            if let TaskConfig::Couple(t) = &mut config.task {
                t.n = 120; // keep the double-run cheap; determinism is scale-free
            }
            config.output_dir = Some(dir.path().join(format!("{preset_name}-{rerun}")));
            let artifacts = experiment::run(&config).unwrap();
            let bytes: Vec<Vec<u8>> = artifacts
                .csv_paths
                .iter()
                .map(|p| std::fs::read(p).unwrap())
                .collect();
            outputs.push(bytes);
        }
        assert_eq!(outputs[0], outputs[1], "{preset_name} CSVs differ on re-run");
    }
    println!("[PASS] criterion 9: identical seeds reproduce byte-identical CSV outputs");
}
