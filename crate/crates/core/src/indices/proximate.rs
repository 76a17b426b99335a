//! Numerical diagnostics for "`d(t) = log M(t) / log t` is a proximate order".
//!
//! Three equivalent conditions are evaluated independently:
//! (b) `d(t) -> 1/omega` along a tail grid in `t`;
//! (c) `log m_p / log p` has a limit (not just a liminf);
//! (d) `beta_p -> omega`.
//! All three are reported in omega units so their splits are comparable.

use serde::{Deserialize, Serialize};

use crate::growthfn::GrowthEvaluator;
use crate::indices::alpha_beta::alpha_beta;
use crate::indices::estimate::fit_tail;
use crate::indices::exponents::{order_ratio_limits, tail_start};
use crate::seqcore::{check_strongly_regular, SeqTable, Status};
use crate::tolerances::{TOL_GROW, TOL_IDX};

const FIT_REJECTED: &str = "; residuals too wide for the 1/log model, raw extrema used";

/// Agreement required between the three limits.
pub const AGREEMENT_TOL: f64 = 1e-2;
const CLUSTER_GAP: f64 = 0.05;
const MAX_CLUSTERS: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub method: String,
    pub value: f64,
    pub liminf: f64,
    pub limsup: f64,
    pub converging: bool,
}

impl ConditionResult {
    fn new(method: &str, value: f64, liminf: f64, limsup: f64) -> Self {
        ConditionResult {
            method: method.into(),
            value,
            liminf,
            limsup,
            converging: limsup - liminf < TOL_IDX,
        }
    }

    pub fn split(&self) -> f64 {
        self.limsup - self.liminf
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub center: f64,
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

/// Limit points of `p log(m_{p+1}/m_p)` over the upper half of the table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepLimit {
    pub clusters: Vec<Cluster>,
    /// Exactly one tight cluster: the limit plausibly exists.
    pub exists: bool,
    /// More than the reportable number of clusters were found.
    pub diffuse: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProximateOrderStatus {
    ProximateOrder,
    NotProximateOrder,
    Inconclusive,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProximateOrderVerdict {
    pub verdict: ProximateOrderStatus,
    pub truncation: usize,
    pub b: Option<ConditionResult>,
    pub c: Option<ConditionResult>,
    pub d: Option<ConditionResult>,
    pub agreement: bool,
    pub step_limit: StepLimit,
    #[serde(default)]
    pub notes: Vec<String>,
}

/// (b): fit `d(t) ≈ a + b / log t` on the tail grid; the limit is `1/a`.
pub fn condition_b(t: &SeqTable) -> Option<ConditionResult> {
    let ev = GrowthEvaluator::new(t);
    let pts: Vec<(f64, f64)> = ev
        .grid(tail_start(t.n()))
        .into_iter()
        .filter_map(|x| ev.d_m(x).ok().map(|d| (1.0 / x, d)))
        .collect();
    let fit = fit_tail(&pts)?;
    let mut method = "tail fit of log M(t) / log t against 1 / log t, inverted".to_string();
    // spread in omega units
    let omega_spread = fit.spread() / (fit.intercept * fit.intercept);
    let (center, lo, hi) = if !(omega_spread < TOL_GROW) {
        method.push_str(FIT_REJECTED);
        let lo = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let hi = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        (0.5 * (lo + hi), lo, hi)
    } else {
        (fit.intercept, fit.liminf(), fit.limsup())
    };
    if !(lo > 0.0 && center > 0.0) {
        return None;
    }
    Some(ConditionResult::new(
        &method,
        1.0 / center,
        1.0 / hi,
        1.0 / lo,
    ))
}

/// (c): fit of `log m_p / log p`.
pub fn condition_c(t: &SeqTable) -> Option<ConditionResult> {
    let (center, lo, hi, rejected) = order_ratio_limits(t)?;
    let mut method = "tail fit of log m_p / log p against 1 / log p".to_string();
    if rejected {
        method.push_str(FIT_REJECTED);
    }
    Some(ConditionResult::new(&method, center, lo, hi))
}

/// (d): `beta_p` over `[n/2, n)`.
pub fn condition_d(t: &SeqTable) -> Option<ConditionResult> {
    let n = t.n();
    let beta = alpha_beta(t).beta;
    let tail = &beta[n / 2..];
    if tail.is_empty() {
        return None;
    }
    let lo = tail.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = tail.iter().sum::<f64>() / tail.len() as f64;
    Some(ConditionResult::new(
        "beta_p over the upper half",
        mean,
        lo,
        hi,
    ))
}

pub fn step_limit(t: &SeqTable) -> StepLimit {
    let m = t.logm();
    let n = t.n();
    let mut w: Vec<f64> = (n / 2..n - 1)
        .map(|p| p as f64 * (m[p + 1] - m[p]))
        .collect();
    w.sort_by(f64::total_cmp);
    let mut clusters: Vec<Cluster> = Vec::new();
    let mut sum = 0.0;
    for &v in &w {
        match clusters.last_mut() {
            Some(c) if v - c.hi <= CLUSTER_GAP => {
                c.hi = v;
                c.count += 1;
                sum += v;
            }
            _ => {
                if let Some(c) = clusters.last_mut() {
                    c.center = sum / c.count as f64;
                }
                clusters.push(Cluster {
                    center: v,
                    lo: v,
                    hi: v,
                    count: 1,
                });
                sum = v;
            }
        }
    }
    if let Some(c) = clusters.last_mut() {
        c.center = sum / c.count as f64;
    }
    let diffuse = clusters.len() > MAX_CLUSTERS;
    clusters.truncate(MAX_CLUSTERS);
    let exists = !diffuse && clusters.len() == 1 && clusters[0].hi - clusters[0].lo < TOL_IDX;
    StepLimit {
        clusters,
        exists,
        diffuse,
    }
}

pub fn proximate_order_verdict(t: &SeqTable) -> ProximateOrderVerdict {
    let sr = check_strongly_regular(t);
    let step = step_limit(t);
    if sr.strongly_regular.status == Status::Fails {
        return ProximateOrderVerdict {
            verdict: ProximateOrderStatus::NotApplicable,
            truncation: t.n(),
            b: None,
            c: None,
            d: None,
            agreement: false,
            step_limit: step,
            notes: vec!["sequence is not strongly regular at this truncation".into()],
        };
    }
    let (b, c, d) = (condition_b(t), condition_c(t), condition_d(t));
    let conds: Vec<&ConditionResult> = [&b, &c, &d].into_iter().flatten().collect();
    let all = conds.len() == 3;
    let converging = all && conds.iter().all(|c| c.converging);
    let agreement = converging
        && conds.iter().all(|x| {
            conds
                .iter()
                .all(|y| (x.value - y.value).abs() < AGREEMENT_TOL)
        });
    let split = conds.iter().any(|c| c.split() >= TOL_GROW);
    let mut notes = Vec::new();
    if sr.strongly_regular.status == Status::Inconclusive {
        notes.push("strong regularity is inconclusive at this truncation".into());
    }
    if !all {
        notes.push("some conditions could not be evaluated".into());
    }
    let verdict = if split {
        notes.push("a limit split is a property of this prefix, not a proof".into());
        ProximateOrderStatus::NotProximateOrder
    } else if agreement {
        ProximateOrderStatus::ProximateOrder
    } else {
        ProximateOrderStatus::Inconclusive
    };
    ProximateOrderVerdict {
        verdict,
        truncation: t.n(),
        b,
        c,
        d,
        agreement,
        step_limit: step,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::{materialize, QuotientSpec};

    #[test]
    fn gevrey_is_proximate() {
        let t = materialize(&QuotientSpec::gevrey(1.5), 100_000).unwrap();
        let v = proximate_order_verdict(&t);
        assert_eq!(v.verdict, ProximateOrderStatus::ProximateOrder, "{v:?}");
        for c in [&v.b, &v.c, &v.d] {
            assert!((c.as_ref().unwrap().value - 1.5).abs() < 1e-2);
        }
        assert!(v.step_limit.exists);
        assert!((v.step_limit.clusters[0].center - 1.5).abs() < 1e-3);
    }

    #[test]
    fn q_gevrey_not_applicable() {
        let t = materialize(&QuotientSpec::q_gevrey(2.0), 10_000).unwrap();
        let v = proximate_order_verdict(&t);
        assert_eq!(v.verdict, ProximateOrderStatus::NotApplicable);
        assert!(v.b.is_none());
    }

    #[test]
    fn clustering_two_limits() {
        let t = materialize(&QuotientSpec::AlternatingHarmonic, 100_000).unwrap();
        let s = step_limit(&t);
        assert_eq!(s.clusters.len(), 2);
        assert!(!s.exists);
        assert!((s.clusters[0].center - 1.0).abs() < 1e-2);
        assert!((s.clusters[1].center - 2.0).abs() < 1e-2);
    }
}
