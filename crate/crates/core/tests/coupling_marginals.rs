//! Statistical checks of the coupled sampler's marginals, plus the
//! monotone thinning couplings for nested edge/feature probabilities.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rigraph::coupling::{couple, phat_minus, CouplingParams};
use rigraph::gen::{gen_gnp, gen_rig};
use rigraph::{Graph, Seed};

const N: usize = 50;
const M: u64 = 500;
const P: f64 = 0.01;
const SAMPLES: u64 = 10_000;

fn params() -> CouplingParams {
    CouplingParams {
        n: N,
        m: M,
        p: P,
        omega_c: None,
        forced_regime: None,
    }
}

/// The g_rig marginal's edge-count distribution matches gen_rig's
/// (two-sample mean comparison at 3σ over 10⁴ draws each).
#[test]
fn rig_marginal_edge_counts() {
    let params = params();
    let seed_a = Seed::new(21);
    let seed_b = Seed::new(22);
    let mut coupled = Vec::with_capacity(SAMPLES as usize);
    let mut direct = Vec::with_capacity(SAMPLES as usize);
    for i in 0..SAMPLES {
        let o = couple(&params, seed_a.substream(i)).unwrap();
        coupled.push(o.g_rig.edge_count() as f64);
        let (_, g) = gen_rig(N, M, P, seed_b.substream(i)).unwrap();
        direct.push(g.edge_count() as f64);
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let var = |v: &[f64], mu: f64| {
        v.iter().map(|x| (x - mu) * (x - mu)).sum::<f64>() / (v.len() - 1) as f64
    };
    let (ma, mb) = (mean(&coupled), mean(&direct));
    let se = ((var(&coupled, ma) + var(&direct, mb)) / SAMPLES as f64).sqrt();
    assert!(
        (ma - mb).abs() < 3.0 * se,
        "coupled mean {ma} vs direct {mb} (se {se})"
    );
}

/// On success the g_lower marginal's pooled per-edge frequency sits within
/// 3σ of p̂₋, and the subgraph relation holds on every success.
#[test]
fn lower_marginal_edge_frequency() {
    let params = params();
    let seed = Seed::new(23);
    let phat = phat_minus(N, M, P, None).unwrap().value;
    let pairs = (N * (N - 1) / 2) as f64;
    let mut successes = 0u64;
    let mut lower_edges = 0u64;
    for i in 0..SAMPLES {
        let o = couple(&params, seed.substream(i)).unwrap();
        if o.success {
            let lower = o.g_lower.as_ref().unwrap();
            assert!(lower.is_subgraph_of(&o.g_rig).unwrap());
            successes += 1;
            lower_edges += lower.edge_count() as u64;
        }
    }
    assert!(successes > SAMPLES / 2, "success rate collapsed: {successes}");
    let trials = successes as f64 * pairs;
    let freq = lower_edges as f64 / trials;
    let sigma = (phat * (1.0 - phat) / trials).sqrt();
    assert!(
        (freq - phat).abs() < 3.0 * sigma,
        "edge frequency {freq} vs phat_minus {phat} (sigma {sigma})"
    );
}

/// Thinning coupling for G(n, p̂) ⊆ G(n, p̂′), p̂ ≤ p̂′: keep each edge of the
/// denser graph with probability p̂/p̂′; the result is distributed G(n, p̂)
/// and is a subgraph by construction in 100% of samples.
#[test]
fn gnp_thinning_coupling() {
    let (p_lo, p_hi) = (0.05, 0.2);
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let seed = Seed::new(32);
    for i in 0..500 {
        let dense = gen_gnp(30, p_hi, seed.substream(i)).unwrap();
        let kept: Vec<(u32, u32)> = dense
            .edges()
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(p_lo / p_hi))
            .collect();
        let sparse = Graph::from_edges(30, kept).unwrap();
        assert!(sparse.is_subgraph_of(&dense).unwrap());
    }
}

/// Thinning coupling for 𝒢(n,m,p) ⊆ 𝒢(n,m,p′), p ≤ p′: drop each
/// vertex-feature incidence of the denser assignment with probability
/// 1 − p/p′; intersection graphs are nested in 100% of samples.
#[test]
fn rig_thinning_coupling() {
    use rigraph::FeatureAssignment;
    let (p_lo, p_hi) = (0.02, 0.08);
    let (n, m) = (25usize, 60u64);
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let seed = Seed::new(34);
    for i in 0..500 {
        let (dense, g_dense) = gen_rig(n, m, p_hi, seed.substream(i)).unwrap();
        let thinned: Vec<Vec<u64>> = (0..n)
            .map(|v| {
                dense
                    .features_of(v)
                    .iter()
                    .copied()
                    .filter(|_| rng.gen_bool(p_lo / p_hi))
                    .collect()
            })
            .collect();
        let sparse = FeatureAssignment::from_features(n, m, thinned).unwrap();
        assert!(sparse
            .intersection_graph()
            .is_subgraph_of(&g_dense)
            .unwrap());
    }
}
