//! Executable coupling chain between G(n, p̂₋) and the random intersection
//! graph 𝒢(n,m,p), in both the np = o(1) and np → ∞ regimes, together with
//! the p̂₋ formulas, total-variation and Chernoff bound calculators, and an
//! exact small-n distribution oracle.
//!
//! A coupled sample is built per feature: draw X_w ~ Bin(n,p), make
//! ⌊X_w/2⌋ uniform edge draws, and embed them into the feature class V_w
//! (the non-isolated endpoints plus uniformly chosen extra vertices), so the
//! 𝒢(n,m,p) marginal is exact regardless of the count-coupling outcome. On
//! success, a prefix of the draws realizes G*(Po(λ)) = G(n, p̂′) and an edge
//! thinning brings p̂′ down to p̂₋, giving a G(n, p̂₋) sample that is a
//! subgraph of the intersection graph by construction.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use statrs::function::gamma::ln_gamma;

use crate::error::{Result, RigError};
use crate::gen::{pair_count, sample_binomial, sample_poisson, MSpec};
use crate::graph::{FeatureAssignment, Graph};
use crate::rng::Seed;

/// Which branch of the p̂₋ formula applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    SmallNp,
    LargeNp,
}

/// Result of evaluating the p̂₋ formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhatMinus {
    pub value: f64,
    pub regime: Regime,
    /// True when the raw formula went negative and was clamped to 0
    /// (degenerate desk-scale parameters).
    pub clamped: bool,
}

/// Parameters of a coupling run. `omega_c` is the auxiliary diverging
/// function used inside p̂₋ in the np → ∞ case; when absent it defaults to
/// `(mnp)^(1/4)`, which diverges and is o(√(mnp)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingParams {
    pub n: usize,
    pub m: u64,
    pub p: f64,
    pub omega_c: Option<f64>,
    /// Force a regime instead of selecting by np < 1.
    pub forced_regime: Option<Regime>,
}

impl CouplingParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(RigError::ParamOutOfRange {
                name: "p",
                value: self.p,
                why: "probability must lie in [0,1]".into(),
            });
        }
        let mp2 = self.m as f64 * self.p * self.p;
        if mp2 >= 1.0 {
            return Err(RigError::ParamOutOfRange {
                name: "m*p^2",
                value: mp2,
                why: "the coupling requires m*p^2 < 1".into(),
            });
        }
        if self.regime() == Regime::LargeNp && self.p > 0.0 {
            let omega = self.omega();
            let bound = (self.n as f64 * self.m as f64 * self.p).sqrt();
            if !(omega > 0.0 && omega < bound) {
                return Err(RigError::ParamOutOfRange {
                    name: "omega_c",
                    value: omega,
                    why: format!("must satisfy 0 < omega < sqrt(mnp) = {bound}"),
                });
            }
        }
        Ok(())
    }

    pub fn regime(&self) -> Regime {
        self.forced_regime.unwrap_or({
            if (self.n as f64) * self.p < 1.0 {
                Regime::SmallNp
            } else {
                Regime::LargeNp
            }
        })
    }

    /// Finite-n proxy for the regime dichotomy: np < 1 stands in for
    /// np = o(1) and np >= 10 for np → ∞; anything between is permitted
    /// but tagged unsupported by the theory.
    pub fn regime_supported(&self) -> bool {
        let np = self.n as f64 * self.p;
        match self.regime() {
            Regime::SmallNp => np < 1.0,
            Regime::LargeNp => np >= 10.0,
        }
    }

    pub fn omega(&self) -> f64 {
        self.omega_c
            .unwrap_or_else(|| (self.n as f64 * self.m as f64 * self.p).powf(0.25))
    }
}

/// Evaluate p̂₋ for the given parameters. `omega_c` is only consulted in
/// the np → ∞ regime.
pub fn phat_minus(n: usize, m: u64, p: f64, omega_c: Option<f64>) -> Result<PhatMinus> {
    if p <= 0.0 {
        return Err(RigError::ParamOutOfRange {
            name: "p",
            value: p,
            why: "p must be positive".into(),
        });
    }
    let params = CouplingParams {
        n,
        m,
        p,
        omega_c,
        forced_regime: None,
    };
    params.validate()?;
    let (nf, mf) = (n as f64, m as f64);
    let regime = params.regime();
    let raw = match regime {
        Regime::SmallNp => mf * p * p * (1.0 - (nf - 2.0) * p - mf * p * p / 2.0),
        Regime::LargeNp => {
            let mnp = mf * nf * p;
            (mf * p / nf)
                * (1.0 - params.omega() / mnp.sqrt() - 2.0 / (nf * p) - mf * p / (2.0 * nf))
        }
    };
    Ok(PhatMinus {
        value: raw.max(0.0),
        regime,
        clamped: raw < 0.0,
    })
}

/// Stage at which a coupled sample failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureStage {
    /// The dominating count chain broke (K exceeded the dominated count, or
    /// the pivot fell outside the realized sum in the np → ∞ regime).
    CountDomination,
    /// The binomial and Poisson draw counts disagreed under the maximal
    /// coupling.
    BinPoMismatch,
}

/// Realized values of the count chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CouplingCounters {
    /// Z₁ = #{w : X_w >= 2} (np = o(1) regime only).
    pub z1: Option<u64>,
    /// B = #{w : X_w = 2} ~ Bin(m, q), the dominated binomial count.
    pub b: Option<u64>,
    /// Z₂ = Σ_w X_w (np → ∞ regime only).
    pub z2: Option<u64>,
    /// The Poisson draw count K.
    pub k: u64,
    /// T = Σ_w ⌊X_w/2⌋, the total number of edge draws made.
    pub t: u64,
}

/// A jointly sampled (G(n, p̂₋), 𝒢(n,m,p)) pair.
#[derive(Debug, Clone)]
pub struct CouplingOutcome {
    /// The G(n, p̂₋) marginal; present only on success.
    pub g_lower: Option<Graph>,
    /// The 𝒢(n,m,p) marginal; exact regardless of success.
    pub g_rig: Graph,
    pub assignment: FeatureAssignment,
    pub regime: Regime,
    /// False when np sits in the gap the theory does not cover.
    pub regime_supported: bool,
    pub success: bool,
    pub failure_stage: Option<FailureStage>,
    pub counters: CouplingCounters,
    pub phat_minus: f64,
    pub phat_prime: f64,
}

/// Draw one coupled sample.
pub fn couple(params: &CouplingParams, seed: Seed) -> Result<CouplingOutcome> {
    params.validate()?;
    let n = params.n;
    let m = params.m;
    let p = params.p;
    let regime = params.regime();

    if p == 0.0 {
        let assignment = FeatureAssignment::from_features(n, m, vec![Vec::new(); n])?;
        return Ok(CouplingOutcome {
            g_lower: Some(Graph::empty(n)),
            g_rig: Graph::empty(n),
            assignment,
            regime,
            regime_supported: params.regime_supported(),
            success: true,
            failure_stage: None,
            counters: CouplingCounters {
                z1: Some(0),
                b: Some(0),
                z2: Some(0),
                k: 0,
                t: 0,
            },
            phat_minus: 0.0,
            phat_prime: 0.0,
        });
    }

    let mut rng = seed.rng();
    let total_pairs = pair_count(n);
    let mut features_of: Vec<Vec<u64>> = vec![Vec::new(); n];
    // (feature, its ordered draws); only features with at least one draw
    let mut feature_draws: Vec<Vec<(u32, u32)>> = Vec::new();
    let (mut z1, mut b_count, mut z2, mut t_total) = (0u64, 0u64, 0u64, 0u64);

    let mut endpoint_set: HashSet<u32> = HashSet::new();
    for w in 0..m {
        let x = sample_binomial(n as u64, p, &mut rng);
        z2 += x;
        if x >= 2 {
            z1 += 1;
        }
        if x == 2 {
            b_count += 1;
        }
        let nd = x / 2;
        t_total += nd;
        if x == 0 {
            continue;
        }
        endpoint_set.clear();
        if nd > 0 {
            let draws: Vec<(u32, u32)> = (0..nd)
                .map(|_| {
                    let (a, b) =
                        crate::gen::decode_pair(rng.gen_range(0..total_pairs), n);
                    endpoint_set.insert(a);
                    endpoint_set.insert(b);
                    (a, b)
                })
                .collect();
            feature_draws.push(draws);
        }
        // top up V_w to exactly X_w vertices with uniform extras
        let deficit = x as usize - endpoint_set.len().min(x as usize);
        let mut class: Vec<u32> = endpoint_set.iter().copied().collect();
        class.sort_unstable();
        extend_with_uniform_extras(&mut class, deficit, n, &mut rng);
        for &v in &class {
            features_of[v as usize].push(w);
        }
    }

    let assignment = FeatureAssignment::from_features(n, m, features_of)?;
    let g_rig = assignment.intersection_graph();

    let mf = m as f64;
    let nf = n as f64;
    let pm = phat_minus(n, m, p, params.omega_c)?;

    let (k, lambda, success, failure_stage) = match regime {
        Regime::SmallNp => {
            let q = total_pairs as f64 * p * p * (1.0 - p).powi(n as i32 - 2);
            let lambda = mf * q;
            let k = poisson_maximally_coupled(b_count, m, q, lambda, &mut rng);
            if k == b_count {
                (k, lambda, true, None)
            } else if k > z1 {
                (k, lambda, false, Some(FailureStage::CountDomination))
            } else {
                (k, lambda, false, Some(FailureStage::BinPoMismatch))
            }
        }
        Regime::LargeNp => {
            let mnp = nf * mf * p;
            let omega = params.omega();
            let lambda =
                (mnp / 2.0) * (1.0 - omega / mnp.sqrt() - 2.0 / (nf * p));
            let pivot = (mnp / 2.0) * (1.0 - omega / (2.0 * mnp.sqrt()) - 2.0 / (nf * p));
            let k = sample_poisson(lambda.max(0.0), &mut rng);
            if k as f64 > pivot || (z2 as f64) / 2.0 - mf < pivot {
                (k, lambda, false, Some(FailureStage::CountDomination))
            } else {
                (k, lambda, true, None)
            }
        }
    };

    let phat_prime = 1.0 - (-lambda.max(0.0) / total_pairs as f64).exp();
    let g_lower = if success {
        // G*(K): features in a uniformly random order, first draw per
        // feature first (round-robin over the shuffled feature list)
        feature_draws.shuffle(&mut rng);
        let mut prefix: Vec<(u32, u32)> = Vec::with_capacity(k as usize);
        let mut round = 0usize;
        'collect: loop {
            let mut any = false;
            for draws in &feature_draws {
                if let Some(&d) = draws.get(round) {
                    any = true;
                    if prefix.len() == k as usize {
                        break 'collect;
                    }
                    prefix.push(d);
                }
            }
            if !any || prefix.len() >= k as usize {
                break;
            }
            round += 1;
        }
        assert!(
            prefix.len() == k as usize,
            "count chain guarantees K <= T ({} <= {})",
            k,
            t_total
        );
        let keep = if phat_prime > 0.0 {
            (pm.value / phat_prime).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let mut edges: Vec<(u32, u32)> = prefix;
        edges.sort_unstable();
        edges.dedup();
        edges.retain(|_| rng.gen::<f64>() < keep);
        let g = Graph::from_canonical_edges(n, edges);
        // hard assertion: the coupled pair must be nested on success
        assert!(
            g.is_subgraph_of(&g_rig).expect("same vertex set"),
            "successful coupling produced a non-nested pair"
        );
        Some(g)
    } else {
        None
    };

    Ok(CouplingOutcome {
        g_lower,
        g_rig,
        assignment,
        regime,
        regime_supported: params.regime_supported(),
        success,
        failure_stage,
        counters: CouplingCounters {
            z1: (regime == Regime::SmallNp).then_some(z1),
            b: (regime == Regime::SmallNp).then_some(b_count),
            z2: (regime == Regime::LargeNp).then_some(z2),
            k,
            t: t_total,
        },
        phat_minus: pm.value,
        phat_prime,
    })
}

/// Grow `class` by `count` distinct vertices chosen uniformly from the
/// vertices not already present.
fn extend_with_uniform_extras(
    class: &mut Vec<u32>,
    count: usize,
    n: usize,
    rng: &mut ChaCha8Rng,
) {
    if count == 0 {
        return;
    }
    let mut present: HashSet<u32> = class.iter().copied().collect();
    if (present.len() + count) * 2 > n {
        // dense case: reservoir over the complement
        let mut complement: Vec<u32> =
            (0..n as u32).filter(|v| !present.contains(v)).collect();
        complement.shuffle(rng);
        class.extend(complement.into_iter().take(count));
    } else {
        let mut added = 0;
        while added < count {
            let v = rng.gen_range(0..n as u32);
            if present.insert(v) {
                class.push(v);
                added += 1;
            }
        }
    }
    class.sort_unstable();
}

/// Sample K ~ Po(lambda) maximally coupled to the realized binomial count
/// `b` (whose law is Bin(m, q)): K = b with the largest possible
/// probability min(f_Bin(b), f_Po(b)) / f_Bin(b), otherwise K is drawn from
/// the normalized Poisson excess, so the K marginal is exactly Po(lambda).
fn poisson_maximally_coupled(
    b: u64,
    m: u64,
    q: f64,
    lambda: f64,
    rng: &mut ChaCha8Rng,
) -> u64 {
    let f_bin_b = binom_pmf(m, q, b);
    let f_po_b = poisson_pmf(lambda, b);
    if f_bin_b > 0.0 && rng.gen::<f64>() * f_bin_b <= f_bin_b.min(f_po_b) {
        return b;
    }
    // sample from the excess (f_Po - f_Bin)_+ / D
    let kmax = (lambda + 12.0 * lambda.sqrt() + 40.0).ceil() as u64;
    let kmax = kmax.max(b + 1).min(m.max(b + 1));
    let mut excess: Vec<f64> = Vec::with_capacity(kmax as usize + 1);
    let mut total = 0.0;
    for k in 0..=kmax {
        let e = (poisson_pmf(lambda, k) - binom_pmf(m, q, k)).max(0.0);
        excess.push(e);
        total += e;
    }
    if total <= 0.0 {
        return b; // laws numerically identical
    }
    let mut u = rng.gen::<f64>() * total;
    for (k, e) in excess.iter().enumerate() {
        u -= e;
        if u <= 0.0 {
            return k as u64;
        }
    }
    kmax
}

pub(crate) fn binom_pmf(m: u64, q: f64, k: u64) -> f64 {
    if k > m || !(0.0..=1.0).contains(&q) {
        return 0.0;
    }
    if q == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if q == 1.0 {
        return if k == m { 1.0 } else { 0.0 };
    }
    let (mf, kf) = (m as f64, k as f64);
    (ln_gamma(mf + 1.0) - ln_gamma(kf + 1.0) - ln_gamma(mf - kf + 1.0)
        + kf * q.ln()
        + (mf - kf) * (-q).ln_1p())
    .exp()
}

pub(crate) fn poisson_pmf(lambda: f64, k: u64) -> f64 {
    if lambda <= 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    let kf = k as f64;
    (-lambda + kf * lambda.ln() - ln_gamma(kf + 1.0)).exp()
}

/// Fact-9-style total variation bound for G*(Bin(m, p̂)) against the
/// matching edge-independent graph: 2·p̂.
pub fn tv_bound(p_hat: f64) -> f64 {
    2.0 * p_hat
}

/// Leading term of the Poisson Chernoff bound; the o(n^{-i}) additive
/// correction has no explicit constant and is reported symbolically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChernoffPoissonBound {
    pub leading: f64,
    pub correction_order: u32,
}

impl ChernoffPoissonBound {
    pub fn caveat(&self) -> String {
        format!("+ o(n^-{})", self.correction_order)
    }
}

/// Binomial concentration bound: P(|X - EX| >= t) <= 2 exp(-3t² / (2(3·EX + t))).
pub fn chernoff_bound(mean: f64, t: f64) -> Result<f64> {
    if mean < 0.0 {
        return Err(RigError::ParamOutOfRange {
            name: "mean",
            value: mean,
            why: "expected value must be nonnegative".into(),
        });
    }
    if t <= 0.0 {
        return Err(RigError::ParamOutOfRange {
            name: "t",
            value: t,
            why: "deviation must be positive".into(),
        });
    }
    Ok(2.0 * (-3.0 * t * t / (2.0 * (3.0 * mean + t))).exp())
}

/// Poisson variant: same leading term, symbolic o(n^{-i}) caveat.
pub fn chernoff_poisson_bound(lambda: f64, t: f64, i: u32) -> Result<ChernoffPoissonBound> {
    Ok(ChernoffPoissonBound {
        leading: chernoff_bound(lambda, t)?,
        correction_order: i,
    })
}

/// A distribution over graphs on a fixed vertex set: either G*(M) for some
/// draw-count law M, or the edge-independent G(n, p̂).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphLaw {
    Star(MSpec),
    Gnp(f64),
}

const TV_TAIL: f64 = 1e-12;
const EXACT_TV_MAX_N: usize = 5;

/// Exact total variation distance between two graph distributions on n <= 5
/// vertices, by enumerating all 2^C(n,2) graphs:
/// `Σ_G |P₁(G) − P₂(G)|` (the sum form used throughout the analysis).
///
/// For G*(M) with constant M = t the probability of hitting exactly a given
/// e-edge set uses inclusion–exclusion surjection counts onto the e pairs;
/// the M law is truncated at tail mass < 1e-12.
pub fn exact_tv_small(n: usize, law1: &GraphLaw, law2: &GraphLaw) -> Result<f64> {
    if n > EXACT_TV_MAX_N {
        return Err(RigError::ParamOutOfRange {
            name: "n",
            value: n as f64,
            why: format!("exact enumeration supports n <= {EXACT_TV_MAX_N}"),
        });
    }
    let np = pair_count(n) as usize;
    let p1 = subset_probabilities(np, law1)?;
    let p2 = subset_probabilities(np, law2)?;
    let mut tv = 0.0;
    for mask in 0u64..(1u64 << np) {
        let e = mask.count_ones() as usize;
        tv += (p1[e] - p2[e]).abs();
    }
    Ok(tv)
}

/// probs[e] = probability that the law realizes one *specific* edge set of
/// size e (both supported laws are edge-exchangeable).
fn subset_probabilities(np: usize, law: &GraphLaw) -> Result<Vec<f64>> {
    match law {
        GraphLaw::Gnp(p_hat) => {
            if !(0.0..=1.0).contains(p_hat) {
                return Err(RigError::ParamOutOfRange {
                    name: "p_hat",
                    value: *p_hat,
                    why: "probability must lie in [0,1]".into(),
                });
            }
            Ok((0..=np)
                .map(|e| p_hat.powi(e as i32) * (1.0 - p_hat).powi((np - e) as i32))
                .collect())
        }
        GraphLaw::Star(mspec) => {
            mspec.validate()?;
            let mut probs = vec![0.0; np + 1];
            for (t, pt) in truncated_pmf(mspec) {
                for (e, slot) in probs.iter_mut().enumerate() {
                    // sequences of t draws covering exactly e given pairs
                    let mut s = 0.0;
                    for j in 0..=e {
                        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                        let choose = binom_coeff(e, j);
                        s += sign * choose * ((e - j) as f64 / np as f64).powi(t as i32);
                    }
                    *slot += pt * s;
                }
            }
            Ok(probs)
        }
    }
}

fn binom_coeff(n: usize, k: usize) -> f64 {
    (ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0))
        .exp()
        .round()
}

/// (t, P(M = t)) pairs with total mass >= 1 - 1e-12.
fn truncated_pmf(mspec: &MSpec) -> Vec<(u64, f64)> {
    match *mspec {
        MSpec::Constant(t) => vec![(t, 1.0)],
        MSpec::Binomial { count, q } => {
            let mut out = Vec::new();
            let mut cum = 0.0;
            for t in 0..=count {
                let pt = binom_pmf(count, q, t);
                out.push((t, pt));
                cum += pt;
                if cum >= 1.0 - TV_TAIL {
                    break;
                }
            }
            out
        }
        MSpec::Poisson { lambda } => {
            let mut out = Vec::new();
            let mut cum = 0.0;
            let mut t = 0u64;
            while cum < 1.0 - TV_TAIL {
                let pt = poisson_pmf(lambda, t);
                out.push((t, pt));
                cum += pt;
                t += 1;
                if t > 100_000 {
                    break;
                }
            }
            out
        }
    }
}
