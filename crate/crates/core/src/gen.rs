//! Seeded samplers for the random graph models: G(n, p̂), the random
//! intersection graph 𝒢(n,m,p), the uniform variant 𝒢'(n,m,d) and the
//! auxiliary multigraph G*(M), plus the bipartite degree statistic used by
//! the minimum-degree analysis.
//!
//! Sampling never iterates all `n * m` vertex/feature pairs: per vertex we
//! draw the feature-set size from Bin(m, p) and then pick that many distinct
//! features by Floyd's algorithm, so `m` may be astronomically larger than
//! the realized feature sets.

use std::collections::HashSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, RigError};
use crate::graph::{DrawSequence, FeatureAssignment, Graph};
use crate::rng::Seed;

/// Distribution of the draw count M in G*(M).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MSpec {
    /// M = t with probability one.
    Constant(u64),
    /// M ~ Bin(count, q).
    Binomial { count: u64, q: f64 },
    /// M ~ Po(lambda).
    Poisson { lambda: f64 },
}

impl MSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            MSpec::Constant(_) => Ok(()),
            MSpec::Binomial { q, .. } => {
                if !(0.0..=1.0).contains(&q) {
                    Err(RigError::ParamOutOfRange {
                        name: "q",
                        value: q,
                        why: "binomial probability must lie in [0,1]".into(),
                    })
                } else {
                    Ok(())
                }
            }
            MSpec::Poisson { lambda } => {
                if lambda.is_nan() || lambda < 0.0 {
                    Err(RigError::ParamOutOfRange {
                        name: "lambda",
                        value: lambda,
                        why: "Poisson mean must be nonnegative".into(),
                    })
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            MSpec::Constant(t) => t as f64,
            MSpec::Binomial { count, q } => count as f64 * q,
            MSpec::Poisson { lambda } => lambda,
        }
    }

    pub fn variance(&self) -> f64 {
        match *self {
            MSpec::Constant(_) => 0.0,
            MSpec::Binomial { count, q } => count as f64 * q * (1.0 - q),
            MSpec::Poisson { lambda } => lambda,
        }
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> u64 {
        match *self {
            MSpec::Constant(t) => t,
            MSpec::Binomial { count, q } => sample_binomial(count, q, rng),
            MSpec::Poisson { lambda } => sample_poisson(lambda, rng),
        }
    }
}

/// Largest per-chunk mean for the inversion samplers. Keeps the starting
/// mass exp(-mean) comfortably above the f64 underflow threshold while the
/// expected walk length stays a few hundred steps.
const INVERSION_MAX_MEAN: f64 = 300.0;

/// Exact Bin(count, q) sampler by sequential CDF inversion on the pmf
/// recurrence. Rejection-based samplers can distort the extreme tails
/// (observed as a ~2x inflated P(X = 0) at Bin(200, 0.053), which this
/// crate's isolated-vertex statistics are sensitive to); inversion is exact
/// to f64 accuracy. Large means are handled by splitting the trials into
/// independent chunks so the starting mass (1-q)^chunk never underflows.
pub(crate) fn sample_binomial(count: u64, q: f64, rng: &mut ChaCha8Rng) -> u64 {
    if count == 0 || q <= 0.0 {
        return 0;
    }
    if q >= 1.0 {
        return count;
    }
    if q > 0.5 {
        return count - sample_binomial(count, 1.0 - q, rng);
    }
    let chunk = if count as f64 * q > INVERSION_MAX_MEAN {
        ((INVERSION_MAX_MEAN / q) as u64).max(1)
    } else {
        count
    };
    let mut total = 0u64;
    let mut remaining = count;
    while remaining > 0 {
        let c = remaining.min(chunk);
        total += binomial_inversion(c, q, rng);
        remaining -= c;
    }
    total
}

fn binomial_inversion(count: u64, q: f64, rng: &mut ChaCha8Rng) -> u64 {
    let u: f64 = rng.gen();
    let odds = q / (1.0 - q);
    let mut pmf = (count as f64 * (-q).ln_1p()).exp();
    let mut cdf = pmf;
    let mut x = 0u64;
    while u > cdf && x < count {
        x += 1;
        pmf *= odds * (count - x + 1) as f64 / x as f64;
        cdf += pmf;
    }
    x
}

/// Exact Po(lambda) sampler by sequential CDF inversion, splitting large
/// means into independent chunks like [`sample_binomial`].
pub(crate) fn sample_poisson(lambda: f64, rng: &mut ChaCha8Rng) -> u64 {
    if lambda <= 0.0 {
        return 0;
    }
    let mut total = 0u64;
    let mut remaining = lambda;
    while remaining > INVERSION_MAX_MEAN {
        total += poisson_inversion(INVERSION_MAX_MEAN, rng);
        remaining -= INVERSION_MAX_MEAN;
    }
    total + poisson_inversion(remaining, rng)
}

fn poisson_inversion(lambda: f64, rng: &mut ChaCha8Rng) -> u64 {
    let u: f64 = rng.gen();
    let mut pmf = (-lambda).exp();
    let mut cdf = pmf;
    let mut x = 0u64;
    while u > cdf {
        x += 1;
        pmf *= lambda / x as f64;
        cdf += pmf;
        if pmf < f64::MIN_POSITIVE {
            // the remaining mass is below f64 resolution; u cannot be
            // meaningfully beyond this point
            break;
        }
    }
    x
}

/// Number of unordered vertex pairs, C(n, 2).
pub fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * (n.saturating_sub(1)) / 2
}

/// Decode a pair index in `0..C(n,2)` to the `idx`-th pair `(u, v)`, `u < v`,
/// in lexicographic order.
pub fn decode_pair(idx: u64, n: usize) -> (u32, u32) {
    debug_assert!(idx < pair_count(n));
    let nf = n as f64;
    // Row u starts at offset u*n - u*(u+1)/2 - ... solve approximately, then fix up.
    let mut u = (nf - 0.5 - ((nf - 0.5) * (nf - 0.5) - 2.0 * idx as f64).max(0.0).sqrt())
        .floor()
        .max(0.0) as u64;
    let row_start = |u: u64| u * (2 * n as u64 - u - 1) / 2;
    while u > 0 && row_start(u) > idx {
        u -= 1;
    }
    while row_start(u + 1) <= idx {
        u += 1;
    }
    let v = u + 1 + (idx - row_start(u));
    (u as u32, v as u32)
}

fn uniform_pair(n: usize, rng: &mut ChaCha8Rng) -> (u32, u32) {
    decode_pair(rng.gen_range(0..pair_count(n)), n)
}

/// Sample `k` distinct values from `0..m` (Floyd's algorithm), sorted.
pub(crate) fn sample_distinct(m: u64, k: u64, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let k = k.min(m);
    if k == m {
        return (0..m).collect();
    }
    let mut chosen: HashSet<u64> = HashSet::with_capacity(k as usize);
    for j in (m - k)..m {
        let t = rng.gen_range(0..=j);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    let mut out: Vec<u64> = chosen.into_iter().collect();
    out.sort_unstable();
    out
}

/// Erdős–Rényi G(n, p̂): each of the C(n,2) edges appears independently
/// with probability `p_hat`. Geometric skip sampling, O(edges) expected.
pub fn gen_gnp(n: usize, p_hat: f64, seed: Seed) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p_hat) {
        return Err(RigError::ParamOutOfRange {
            name: "p_hat",
            value: p_hat,
            why: "edge probability must lie in [0,1]".into(),
        });
    }
    if p_hat == 0.0 {
        return Ok(Graph::empty(n));
    }
    if p_hat == 1.0 {
        return Ok(Graph::complete(n));
    }
    let mut rng = seed.rng();
    let total = pair_count(n);
    let log_q = (1.0 - p_hat).ln();
    let mut edges = Vec::new();
    let mut pos: u64 = 0;
    loop {
        let u: f64 = 1.0 - rng.gen::<f64>(); // (0, 1]
        let skip = (u.ln() / log_q).floor();
        let skip = if skip.is_finite() && skip < total as f64 {
            skip as u64
        } else {
            total
        };
        pos = pos.saturating_add(skip);
        if pos >= total {
            break;
        }
        edges.push(decode_pair(pos, n));
        pos += 1;
    }
    Ok(Graph::from_canonical_edges(n, edges))
}

/// Random intersection graph 𝒢(n,m,p): each (vertex, feature) incidence is
/// included independently with probability `p`. Returns the feature
/// assignment and its intersection graph.
pub fn gen_rig(n: usize, m: u64, p: f64, seed: Seed) -> Result<(FeatureAssignment, Graph)> {
    if !(0.0..=1.0).contains(&p) {
        return Err(RigError::ParamOutOfRange {
            name: "p",
            value: p,
            why: "feature probability must lie in [0,1]".into(),
        });
    }
    let mut rng = seed.rng();
    let mut features_of = Vec::with_capacity(n);
    for _ in 0..n {
        let x = sample_binomial(m, p, &mut rng);
        features_of.push(sample_distinct(m, x, &mut rng));
    }
    let assignment = FeatureAssignment::from_features(n, m, features_of)?;
    let graph = assignment.intersection_graph();
    Ok((assignment, graph))
}

/// Uniform random intersection graph 𝒢'(n,m,d): each W_v is an independent
/// uniform d-subset of the feature set.
pub fn gen_uniform_rig(
    n: usize,
    m: u64,
    d: u64,
    seed: Seed,
) -> Result<(FeatureAssignment, Graph)> {
    if d > m {
        return Err(RigError::ParamOutOfRange {
            name: "d",
            value: d as f64,
            why: format!("feature budget exceeds feature count m = {m}"),
        });
    }
    let mut rng = seed.rng();
    let mut features_of = Vec::with_capacity(n);
    for _ in 0..n {
        features_of.push(sample_distinct(m, d, &mut rng));
    }
    let assignment = FeatureAssignment::from_features(n, m, features_of)?;
    let graph = assignment.intersection_graph();
    Ok((assignment, graph))
}

/// G*(M): sample M from `mspec`, then make M i.i.d. uniform draws from the
/// C(n,2) vertex pairs; the graph keeps each pair drawn at least once.
pub fn gen_gstar(n: usize, mspec: MSpec, seed: Seed) -> Result<(DrawSequence, Graph)> {
    mspec.validate()?;
    let mut rng = seed.rng();
    let t = mspec.sample(&mut rng);
    if t > 0 && n < 2 {
        return Err(RigError::Degenerate {
            what: format!("cannot draw vertex pairs with n = {n}"),
        });
    }
    let draws: Vec<(u32, u32)> = (0..t).map(|_| uniform_pair(n, &mut rng)).collect();
    let seq = DrawSequence::new(n, draws)?;
    let graph = seq.collapse();
    Ok((seq, graph))
}

/// Per-vertex bipartite degree statistic Z_v of the bipartite graph
/// B(n,m,p): Z_v counts edges between W_v and 𝒱∖{v}, i.e.
/// `Z_v = Σ_{w ∈ W_v} (|V_w| − 1)`.
pub fn aux_degree_stats(a: &FeatureAssignment) -> Vec<u64> {
    (0..a.n())
        .map(|v| {
            a.features_of(v)
                .iter()
                .map(|&w| (a.vertices_of(w).len() as u64) - 1)
                .sum()
        })
        .collect()
}
