//! Closed-form sharp-threshold formulas and the Monte Carlo sweep harness
//! that locates empirical thresholds and tests the minimum-degree
//! phenomenon.
//!
//! The sweep coordinate is the offset ω, not p: for each grid value the
//! edge/feature probability is derived from the threshold formula, so
//! curves are comparable across n and directly interpretable against the
//! theorems. Each sample evaluates the target property and the paired
//! minimum-degree condition on the same graph.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Result, RigError};
use crate::gen::{gen_gnp, gen_rig};
use crate::graph::Graph;
use crate::props::{
    has_perfect_matching, hamilton_solve, is_connected, is_k_connected, min_degree_at_least,
    HamiltonBudget, HamiltonStatus,
};
use crate::rng::Seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Gnp,
    Rig,
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Model::Gnp => "gnp",
            Model::Rig => "rig",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyKind {
    Connectivity,
    KConnectivity,
    PerfectMatching,
    Hamilton,
    MinDegreeK,
}

impl PropertyKind {
    /// Order of the paired necessary minimum-degree condition.
    pub fn min_degree_order(&self, k: usize) -> usize {
        match self {
            PropertyKind::Connectivity | PropertyKind::PerfectMatching => 1,
            PropertyKind::Hamilton => 2,
            PropertyKind::KConnectivity | PropertyKind::MinDegreeK => k,
        }
    }
}

impl std::fmt::Display for PropertyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PropertyKind::Connectivity => "connectivity",
            PropertyKind::KConnectivity => "k_connectivity",
            PropertyKind::PerfectMatching => "perfect_matching",
            PropertyKind::Hamilton => "hamilton",
            PropertyKind::MinDegreeK => "min_degree_k",
        })
    }
}

/// A threshold formula instantiation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdQuery {
    pub model: Model,
    pub n: usize,
    /// Explicit feature count; otherwise derived as round(n^alpha).
    pub m: Option<u64>,
    pub alpha: Option<f64>,
    /// Connectivity/degree order (>= 1); ignored for connectivity,
    /// matching and Hamilton, which fix their own order.
    pub k: usize,
    pub omega: f64,
    pub kind: PropertyKind,
}

impl ThresholdQuery {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(RigError::ParamOutOfRange {
                name: "n",
                value: self.n as f64,
                why: "need n >= 2".into(),
            });
        }
        if self.k < 1 {
            return Err(RigError::ParamOutOfRange {
                name: "k",
                value: self.k as f64,
                why: "need k >= 1".into(),
            });
        }
        if self.model == Model::Rig && self.feature_count()? < 1 {
            return Err(RigError::ParamOutOfRange {
                name: "m",
                value: 0.0,
                why: "need m >= 1 for the intersection graph".into(),
            });
        }
        Ok(())
    }

    pub fn feature_count(&self) -> Result<u64> {
        match (self.m, self.alpha) {
            (Some(m), _) => Ok(m),
            (None, Some(alpha)) => Ok((self.n as f64).powf(alpha).round() as u64),
            (None, None) => Err(RigError::Config {
                field: "m/alpha".into(),
                why: "the intersection graph needs m or alpha".into(),
            }),
        }
    }

    pub fn alpha_value(&self) -> Result<f64> {
        if let Some(a) = self.alpha {
            return Ok(a);
        }
        let m = self.feature_count()?;
        Ok((m as f64).ln() / (self.n as f64).ln())
    }

    /// The order k used inside the threshold formula for this property.
    pub fn effective_k(&self) -> usize {
        match self.kind {
            PropertyKind::Connectivity | PropertyKind::PerfectMatching => 1,
            PropertyKind::Hamilton => 2,
            PropertyKind::KConnectivity | PropertyKind::MinDegreeK => self.k,
        }
    }
}

/// Evaluate the sharp-threshold formula for the query:
/// G(n,p̂): p̂_k = (ln n + (k−1) ln ln n + ω) / n;
/// 𝒢(n,m,p), α>1: p_k = √((ln n + (k−1) ln ln n + ω) / (mn));
/// 𝒢(n,m,p), α≤1: p_k = (ln n + (k−1) ln ln n + ω) / m.
/// Connectivity and perfect matching use k = 1, Hamiltonicity k = 2.
pub fn threshold_p(q: &ThresholdQuery) -> Result<f64> {
    q.validate()?;
    let nf = q.n as f64;
    let keff = q.effective_k();
    let arg = nf.ln() + (keff as f64 - 1.0) * nf.ln().ln() + q.omega;
    if arg < 0.0 {
        return Err(RigError::ParamOutOfRange {
            name: "omega",
            value: q.omega,
            why: format!("ln n + (k-1) ln ln n + omega = {arg} is negative for this n"),
        });
    }
    let p = match q.model {
        Model::Gnp => arg / nf,
        Model::Rig => {
            let m = q.feature_count()? as f64;
            if q.alpha_value()? > 1.0 {
                (arg / (nf * m)).sqrt()
            } else {
                arg / m
            }
        }
    };
    if !(0.0..=1.0).contains(&p) {
        return Err(RigError::ParamOutOfRange {
            name: "p",
            value: p,
            why: "derived probability falls outside [0,1] (omega too extreme for this n)"
                .into(),
        });
    }
    Ok(p)
}

/// Three-valued per-sample result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropertyOutcome {
    Holds,
    Fails,
    Unresolved,
}

/// Evaluate one property on one graph.
pub fn evaluate_property(
    g: &Graph,
    kind: PropertyKind,
    k: usize,
    budget: &HamiltonBudget,
) -> Result<PropertyOutcome> {
    Ok(match kind {
        PropertyKind::Connectivity => bool_outcome(is_connected(g)),
        PropertyKind::KConnectivity => bool_outcome(is_k_connected(g, k)),
        PropertyKind::PerfectMatching => bool_outcome(has_perfect_matching(g)),
        PropertyKind::MinDegreeK => bool_outcome(min_degree_at_least(g, k)),
        PropertyKind::Hamilton => match hamilton_solve(g, budget)?.status {
            HamiltonStatus::Yes => PropertyOutcome::Holds,
            HamiltonStatus::No => PropertyOutcome::Fails,
            HamiltonStatus::Unresolved => PropertyOutcome::Unresolved,
        },
    })
}

fn bool_outcome(b: bool) -> PropertyOutcome {
    if b {
        PropertyOutcome::Holds
    } else {
        PropertyOutcome::Fails
    }
}

/// One grid point of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub omega: f64,
    /// Derived probability; `None` when the formula left [0,1] and the
    /// point was skipped.
    pub p: Option<f64>,
    pub samples: u64,
    pub successes: u64,
    pub failures: u64,
    pub unresolved: u64,
    /// Samples where the paired minimum-degree condition held.
    pub mindeg_successes: u64,
    /// Resolved samples where property and minimum-degree condition agreed.
    pub agree_resolved: u64,
    /// successes / (samples - unresolved); `None` when undefined.
    pub estimate: Option<f64>,
    pub ci: Option<(f64, f64)>,
}

impl SweepPoint {
    pub fn resolved(&self) -> u64 {
        self.samples - self.unresolved
    }

    pub fn disagreement_rate(&self) -> Option<f64> {
        let r = self.resolved();
        (r > 0).then(|| (r - self.agree_resolved) as f64 / r as f64)
    }
}

/// The empirical curve of a sweep over an ω grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCurve {
    pub model: Model,
    pub kind: PropertyKind,
    pub n: usize,
    pub m: Option<u64>,
    pub alpha: Option<f64>,
    pub k: usize,
    pub seed: Seed,
    pub points: Vec<SweepPoint>,
}

pub const SWEEP_CSV_HEADER: &str =
    "model,n,m,alpha,k,omega,p,property,samples,successes,unresolved,estimate,ci_lo,ci_hi,mindeg_agree_rate";

impl SweepCurve {
    /// One CSV row per grid point, schema [`SWEEP_CSV_HEADER`].
    pub fn csv_rows(&self) -> Vec<String> {
        self.points
            .iter()
            .map(|pt| {
                let m = self.m.map(|m| m.to_string()).unwrap_or_default();
                let alpha = self.alpha.map(|a| a.to_string()).unwrap_or_default();
                let p = pt.p.map(|p| p.to_string()).unwrap_or_default();
                let est = pt.estimate.map(|e| e.to_string()).unwrap_or_default();
                let (lo, hi) = pt
                    .ci
                    .map(|(l, h)| (l.to_string(), h.to_string()))
                    .unwrap_or_default();
                let agree = pt
                    .disagreement_rate()
                    .map(|d| (1.0 - d).to_string())
                    .unwrap_or_default();
                format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                    self.model,
                    self.n,
                    m,
                    alpha,
                    self.k,
                    pt.omega,
                    p,
                    self.kind,
                    pt.samples,
                    pt.successes,
                    pt.unresolved,
                    est,
                    lo,
                    hi,
                    agree
                )
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(SWEEP_CSV_HEADER);
        out.push('\n');
        for row in self.csv_rows() {
            out.push_str(&row);
            out.push('\n');
        }
        out
    }
}

/// Run a Monte Carlo sweep over the ω grid. Deterministic given `seed`:
/// sample i of grid point j always uses substream j * samples + i, so the
/// degree of parallelism cannot affect the outcome.
pub fn sweep(
    template: &ThresholdQuery,
    grid: &[f64],
    samples: u64,
    seed: Seed,
    budget: &HamiltonBudget,
) -> Result<SweepCurve> {
    if grid.is_empty() {
        return Err(RigError::Config {
            field: "grid".into(),
            why: "omega grid must be nonempty".into(),
        });
    }
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(RigError::Config {
            field: "grid".into(),
            why: "omega grid must be sorted ascending".into(),
        });
    }
    template.validate()?;
    let kdeg = template.kind.min_degree_order(template.k);
    let m = match template.model {
        Model::Rig => Some(template.feature_count()?),
        Model::Gnp => None,
    };
    let mut points = Vec::with_capacity(grid.len());
    for (j, &omega) in grid.iter().enumerate() {
        let mut q = *template;
        q.omega = omega;
        let p = match threshold_p(&q) {
            Ok(p) => p,
            Err(_) => {
                points.push(SweepPoint {
                    omega,
                    p: None,
                    samples: 0,
                    successes: 0,
                    failures: 0,
                    unresolved: 0,
                    mindeg_successes: 0,
                    agree_resolved: 0,
                    estimate: None,
                    ci: None,
                });
                continue;
            }
        };
        let results: Vec<(PropertyOutcome, bool)> = (0..samples)
            .into_par_iter()
            .map(|i| {
                let sub = seed.substream(j as u64 * samples + i);
                let g = match template.model {
                    Model::Gnp => gen_gnp(template.n, p, sub)?,
                    Model::Rig => gen_rig(template.n, m.unwrap(), p, sub)?.1,
                };
                let outcome = evaluate_property(&g, template.kind, template.k, budget)?;
                let mindeg = min_degree_at_least(&g, kdeg);
                Ok::<_, RigError>((outcome, mindeg))
            })
            .collect::<Result<_>>()?;
        points.push(summarize_point(omega, p, &results));
    }
    Ok(SweepCurve {
        model: template.model,
        kind: template.kind,
        n: template.n,
        m,
        alpha: template.alpha,
        k: template.k,
        seed,
        points,
    })
}

fn summarize_point(omega: f64, p: f64, results: &[(PropertyOutcome, bool)]) -> SweepPoint {
    let samples = results.len() as u64;
    let mut point = SweepPoint {
        omega,
        p: Some(p),
        samples,
        successes: 0,
        failures: 0,
        unresolved: 0,
        mindeg_successes: 0,
        agree_resolved: 0,
        estimate: None,
        ci: None,
    };
    for &(outcome, mindeg) in results {
        if mindeg {
            point.mindeg_successes += 1;
        }
        match outcome {
            PropertyOutcome::Holds => {
                point.successes += 1;
                if mindeg {
                    point.agree_resolved += 1;
                }
            }
            PropertyOutcome::Fails => {
                point.failures += 1;
                if !mindeg {
                    point.agree_resolved += 1;
                }
            }
            PropertyOutcome::Unresolved => point.unresolved += 1,
        }
    }
    let resolved = point.resolved();
    if resolved > 0 {
        point.estimate = Some(point.successes as f64 / resolved as f64);
        point.ci = wilson_ci(point.successes, resolved, 0.95).ok();
    }
    point
}

/// Wilson score interval for a binomial proportion.
pub fn wilson_ci(successes: u64, trials: u64, confidence: f64) -> Result<(f64, f64)> {
    if trials == 0 {
        return Err(RigError::ParamOutOfRange {
            name: "trials",
            value: 0.0,
            why: "confidence interval needs at least one trial".into(),
        });
    }
    if successes > trials {
        return Err(RigError::ParamOutOfRange {
            name: "successes",
            value: successes as f64,
            why: format!("exceeds trial count {trials}"),
        });
    }
    if !(0.0 < confidence && confidence < 1.0) {
        return Err(RigError::ParamOutOfRange {
            name: "confidence",
            value: confidence,
            why: "must lie strictly between 0 and 1".into(),
        });
    }
    let z = Normal::standard().inverse_cdf(0.5 + confidence / 2.0);
    let nf = trials as f64;
    let phat = successes as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let center = (phat + z2 / (2.0 * nf)) / denom;
    let half = z * (phat * (1.0 - phat) / nf + z2 / (4.0 * nf * nf)).sqrt() / denom;
    Ok(((center - half).max(0.0), (center + half).min(1.0)))
}

/// Weighted pool-adjacent-violators isotonic regression (nondecreasing).
pub fn isotonic_nondecreasing(values: &[f64], weights: &[f64]) -> Vec<f64> {
    assert_eq!(values.len(), weights.len());
    // blocks of (mean, weight, count)
    let mut blocks: Vec<(f64, f64, usize)> = Vec::with_capacity(values.len());
    for (&v, &w) in values.iter().zip(weights) {
        blocks.push((v, w.max(f64::MIN_POSITIVE), 1));
        while blocks.len() > 1 {
            let last = blocks[blocks.len() - 1];
            let prev = blocks[blocks.len() - 2];
            if prev.0 <= last.0 {
                break;
            }
            blocks.pop();
            blocks.pop();
            let w = prev.1 + last.1;
            blocks.push((
                (prev.0 * prev.1 + last.0 * last.1) / w,
                w,
                prev.2 + last.2,
            ));
        }
    }
    let mut out = Vec::with_capacity(values.len());
    for (v, _, c) in blocks {
        out.extend(std::iter::repeat_n(v, c));
    }
    out
}

/// Isotonic-smoothed estimates of the non-skipped points of the curve.
/// Returns (omega, smoothed estimate) pairs.
pub fn smoothed_estimates(curve: &SweepCurve) -> Vec<(f64, f64)> {
    let pts: Vec<&SweepPoint> = curve
        .points
        .iter()
        .filter(|p| p.estimate.is_some())
        .collect();
    let values: Vec<f64> = pts.iter().map(|p| p.estimate.unwrap()).collect();
    let weights: Vec<f64> = pts.iter().map(|p| p.resolved() as f64).collect();
    let iso = isotonic_nondecreasing(&values, &weights);
    pts.iter().map(|p| p.omega).zip(iso).collect()
}

/// Isotonic-regress the curve's estimates, then report where the smoothed
/// curve crosses 1/2: linear interpolation between straddling grid points,
/// or the left boundary of a pooled block that sits exactly at 1/2.
/// `None` when the curve never reaches 1/2.
pub fn crossing_estimate(curve: &SweepCurve) -> Option<f64> {
    let smoothed = smoothed_estimates(curve);
    let idx = smoothed.iter().position(|&(_, v)| v >= 0.5)?;
    let (omega, value) = smoothed[idx];
    if value == 0.5 || idx == 0 {
        return Some(omega);
    }
    let (om_prev, v_prev) = smoothed[idx - 1];
    Some(om_prev + (0.5 - v_prev) / (value - v_prev) * (omega - om_prev))
}

/// Per-grid-point disagreement between the property and its paired
/// minimum-degree condition.
#[derive(Debug, Clone, PartialEq)]
pub struct DisagreementPoint {
    pub omega: f64,
    pub resolved: u64,
    pub disagreements: u64,
    /// disagreements / resolved; `None` when nothing resolved.
    pub rate: Option<f64>,
    pub unresolved: u64,
}

/// The minimum-degree-phenomenon report for a paired sweep: for each ω the
/// fraction of resolved samples where property and (δ >= k) differ;
/// unresolved samples are excluded and counted separately.
pub fn mindeg_phenomenon_report(curve: &SweepCurve) -> Vec<DisagreementPoint> {
    curve
        .points
        .iter()
        .map(|pt| {
            let resolved = pt.resolved();
            DisagreementPoint {
                omega: pt.omega,
                resolved,
                disagreements: resolved - pt.agree_resolved,
                rate: pt.disagreement_rate(),
                unresolved: pt.unresolved,
            }
        })
        .collect()
}

/// Empirical quantile report for the α < 1 minimum-degree concentration:
/// δ(𝒢(n,m,p₁)) ≈ n ln n / m for ω → ∞.
#[derive(Debug, Clone, PartialEq)]
pub struct Lemma7Report {
    pub n: usize,
    pub m: u64,
    pub omega: f64,
    pub p1: f64,
    /// n ln n / m.
    pub normalizer: f64,
    /// δ / normalizer per sample, sorted ascending.
    pub ratios: Vec<f64>,
    pub percentile5: f64,
    /// True when the 5th percentile fell below the generous finite-n
    /// tolerance of 0.5.
    pub flagged: bool,
}

pub fn lemma7_mindeg_check(
    n: usize,
    m: u64,
    omega: f64,
    samples: u64,
    seed: Seed,
) -> Result<Lemma7Report> {
    let nf = n as f64;
    let alpha = (m as f64).ln() / nf.ln();
    if alpha >= 1.0 {
        return Err(RigError::ParamOutOfRange {
            name: "alpha",
            value: alpha,
            why: "the minimum-degree concentration statement needs alpha < 1".into(),
        });
    }
    if omega < nf.ln().ln() {
        return Err(RigError::ParamOutOfRange {
            name: "omega",
            value: omega,
            why: format!("needs omega >= ln ln n = {} as the omega -> infinity proxy", nf.ln().ln()),
        });
    }
    if samples == 0 {
        return Err(RigError::ParamOutOfRange {
            name: "samples",
            value: 0.0,
            why: "need at least one sample".into(),
        });
    }
    let p1 = (nf.ln() + omega) / m as f64;
    if !(0.0..=1.0).contains(&p1) {
        return Err(RigError::ParamOutOfRange {
            name: "p1",
            value: p1,
            why: "derived probability falls outside [0,1] (m too small)".into(),
        });
    }
    let normalizer = nf * nf.ln() / m as f64;
    let mut ratios: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let (_, g) = gen_rig(n, m, p1, seed.substream(i))?;
            Ok::<_, RigError>(g.min_degree() as f64 / normalizer)
        })
        .collect::<Result<_>>()?;
    ratios.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let idx = ((samples as f64 * 0.05).ceil() as usize).max(1) - 1;
    let percentile5 = ratios[idx.min(ratios.len() - 1)];
    Ok(Lemma7Report {
        n,
        m,
        omega,
        p1,
        normalizer,
        ratios,
        percentile5,
        flagged: percentile5 < 0.5,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rig_query(n: usize, alpha: f64, k: usize, kind: PropertyKind) -> ThresholdQuery {
        ThresholdQuery {
            model: Model::Rig,
            n,
            m: None,
            alpha: Some(alpha),
            k,
            omega: 0.0,
            kind,
        }
    }

    #[test]
    fn threshold_rig_connectivity_example() {
        let q = rig_query(100, 2.0, 1, PropertyKind::Connectivity);
        let p = threshold_p(&q).unwrap();
        assert!((p - (100f64.ln() / 1e6).sqrt()).abs() < 1e-15);
        assert!((p - 2.1460e-3).abs() < 1e-7);
    }

    #[test]
    fn threshold_gnp_kconn_example() {
        let q = ThresholdQuery {
            model: Model::Gnp,
            n: 1000,
            m: None,
            alpha: None,
            k: 2,
            omega: 0.0,
            kind: PropertyKind::KConnectivity,
        };
        let p = threshold_p(&q).unwrap();
        assert!((p - 8.8404e-3).abs() < 1e-7);
    }

    #[test]
    fn threshold_monotone_in_omega() {
        let mut last = 0.0;
        for omega in [-2.0, -1.0, 0.0, 1.0, 3.0] {
            let mut q = rig_query(500, 1.5, 3, PropertyKind::KConnectivity);
            q.omega = omega;
            let p = threshold_p(&q).unwrap();
            assert!(p > last);
            last = p;
        }
    }

    #[test]
    fn threshold_algebraic_identity() {
        // for alpha > 1: m * n * p_k^2 = ln n + (k-1) ln ln n + omega
        for (n, alpha, k, omega) in [(100, 2.0, 1, 0.0), (1000, 1.5, 3, 2.5), (50, 2.5, 2, -1.0)]
        {
            let mut q = rig_query(n, alpha, k, PropertyKind::KConnectivity);
            q.omega = omega;
            let p = threshold_p(&q).unwrap();
            let m = q.feature_count().unwrap() as f64;
            let nf = n as f64;
            let lhs = m * nf * p * p;
            let rhs = nf.ln() + (k as f64 - 1.0) * nf.ln().ln() + omega;
            assert!((lhs - rhs).abs() / rhs.abs() < 1e-12);
        }
    }

    #[test]
    fn threshold_rejects_extreme_omega() {
        let mut q = rig_query(100, 2.0, 1, PropertyKind::Connectivity);
        q.omega = -100.0;
        assert!(threshold_p(&q).is_err());
    }

    #[test]
    fn wilson_extremes_and_example() {
        let n = 37;
        let (lo, _) = wilson_ci(0, n, 0.95).unwrap();
        assert_eq!(lo, 0.0);
        let (_, hi) = wilson_ci(n, n, 0.95).unwrap();
        assert_eq!(hi, 1.0);
        let (lo, hi) = wilson_ci(50, 100, 0.95).unwrap();
        assert!((lo - 0.4038).abs() < 2e-4, "lo = {lo}");
        assert!((hi - 0.5962).abs() < 2e-4, "hi = {hi}");
        assert!(wilson_ci(1, 0, 0.95).is_err());
    }

    #[test]
    fn isotonic_pooling() {
        let iso = isotonic_nondecreasing(&[0.6, 0.4], &[1.0, 1.0]);
        assert_eq!(iso, vec![0.5, 0.5]);
        let iso = isotonic_nondecreasing(&[0.1, 0.3, 0.2, 0.9], &[1.0, 1.0, 1.0, 1.0]);
        assert_eq!(iso, vec![0.1, 0.25, 0.25, 0.9]);
    }

    fn curve_with(points: &[(f64, f64)]) -> SweepCurve {
        SweepCurve {
            model: Model::Gnp,
            kind: PropertyKind::Connectivity,
            n: 10,
            m: None,
            alpha: None,
            k: 1,
            seed: Seed::new(0),
            points: points
                .iter()
                .map(|&(omega, est)| SweepPoint {
                    omega,
                    p: Some(0.1),
                    samples: 100,
                    successes: (est * 100.0).round() as u64,
                    failures: 100 - (est * 100.0).round() as u64,
                    unresolved: 0,
                    mindeg_successes: 0,
                    agree_resolved: 100,
                    estimate: Some(est),
                    ci: None,
                })
                .collect(),
        }
    }

    #[test]
    fn crossing_cases() {
        assert_eq!(crossing_estimate(&curve_with(&[(-1.0, 0.0), (1.0, 0.0)])), None);
        assert_eq!(
            crossing_estimate(&curve_with(&[(-1.0, 0.25), (1.0, 0.75)])),
            Some(0.0)
        );
        // non-monotone raw input pools to flat 0.5; crossing at pool boundary
        assert_eq!(
            crossing_estimate(&curve_with(&[(-1.0, 0.6), (1.0, 0.4)])),
            Some(-1.0)
        );
    }

    #[test]
    fn crossing_translation_equivariance() {
        let base: Vec<(f64, f64)> =
            vec![(-2.0, 0.1), (-1.0, 0.3), (0.0, 0.45), (1.0, 0.8), (2.0, 0.95)];
        let x0 = crossing_estimate(&curve_with(&base)).unwrap();
        let shifted: Vec<(f64, f64)> = base.iter().map(|&(o, e)| (o + 3.5, e)).collect();
        let x1 = crossing_estimate(&curve_with(&shifted)).unwrap();
        assert!((x1 - (x0 + 3.5)).abs() < 1e-12);
    }

    #[test]
    fn sweep_empty_grid_rejected() {
        let q = rig_query(20, 2.0, 1, PropertyKind::Connectivity);
        assert!(sweep(&q, &[], 5, Seed::new(1), &HamiltonBudget::default()).is_err());
        assert!(
            sweep(&q, &[1.0, -1.0], 5, Seed::new(1), &HamiltonBudget::default()).is_err()
        );
    }

    #[test]
    fn sweep_zero_samples() {
        let q = rig_query(20, 2.0, 1, PropertyKind::Connectivity);
        let c = sweep(&q, &[0.0], 0, Seed::new(1), &HamiltonBudget::default()).unwrap();
        assert_eq!(c.points[0].samples, 0);
        assert_eq!(c.points[0].estimate, None);
        assert_eq!(c.points[0].ci, None);
    }

    #[test]
    fn sweep_deterministic_csv() {
        let q = rig_query(30, 2.0, 1, PropertyKind::Connectivity);
        let budget = HamiltonBudget::default();
        let a = sweep(&q, &[-2.0, 0.0, 2.0], 20, Seed::new(9), &budget).unwrap();
        let b = sweep(&q, &[-2.0, 0.0, 2.0], 20, Seed::new(9), &budget).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert!(a.to_csv().starts_with(SWEEP_CSV_HEADER));
    }

    #[test]
    fn sweep_counts_add_up() {
        let q = rig_query(30, 2.0, 2, PropertyKind::Hamilton);
        let c = sweep(
            &q,
            &[-1.0, 1.0],
            25,
            Seed::new(3),
            &HamiltonBudget::default(),
        )
        .unwrap();
        for pt in &c.points {
            assert_eq!(pt.successes + pt.failures + pt.unresolved, pt.samples);
        }
    }

    #[test]
    fn lemma7_rejects_bad_params() {
        // alpha >= 1
        assert!(lemma7_mindeg_check(100, 1000, 3.0, 10, Seed::new(1)).is_err());
        // tiny m drives p1 over 1
        assert!(lemma7_mindeg_check(2000, 5, 3.0, 10, Seed::new(1)).is_err());
        // omega below the ln ln n proxy
        assert!(lemma7_mindeg_check(2000, 200, 0.5, 10, Seed::new(1)).is_err());
    }

    #[test]
    fn lemma7_small_run() {
        let r = lemma7_mindeg_check(200, 30, 3.0, 20, Seed::new(4)).unwrap();
        assert_eq!(r.ratios.len(), 20);
        assert!(r.ratios.windows(2).all(|w| w[0] <= w[1]));
        // delta <= n-1 keeps the normalized statistic finite
        assert!(r.ratios.iter().all(|x| x.is_finite()));
    }
}
