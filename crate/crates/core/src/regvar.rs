//! Regular variation of the quotients, almost-increasing constants and the growth index gamma.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indices::{omega, IndexEstimate, IndexValue, ProximateOrderVerdict};
use crate::seqcore::{check_lc, SeqTable};
use crate::tolerances::{BURN_IN, GAMMA_MAX_ITER, GAMMA_TOL, MIN_ANALYSIS_N, TOL_EXACT, TOL_IDX};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RVReport {
    /// Keyed by the ratio `l`.
    pub index_estimates: BTreeMap<u32, IndexEstimate>,
    pub coherent: bool,
    pub index: Option<f64>,
    pub bs_residual: Option<f64>,
    #[serde(default)]
    pub notes: Vec<String>,
}

fn rv_window_start(n: usize) -> usize {
    // (l p + 1)/(p + 1) approaches l like 1/p; starting at n^0.6 keeps that bias
    // well under the index tolerance for orders up to 3.
    BURN_IN.max((n as f64).powf(0.6).ceil() as usize)
}

/// `(log m_{lp} - log m_p) / log l` on `[start, (n-1)/l]`: (mean over the upper half, spread).
fn ratio_stats(m: &[f64], n: usize, l: usize) -> Option<(f64, f64)> {
    let hi = (n - 1) / l;
    let lo = rv_window_start(n);
    if hi < lo + 4 {
        return None;
    }
    let ll = (l as f64).ln();
    let r = |p: usize| (m[l * p] - m[p]) / ll;
    let (mut mn, mut mx) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in lo..=hi {
        let v = r(p);
        mn = mn.min(v);
        mx = mx.max(v);
    }
    let upper = (hi / 2).max(lo)..=hi;
    let cnt = upper.clone().count() as f64;
    let mean = upper.map(r).sum::<f64>() / cnt;
    Some((mean, mx - mn))
}

pub fn rv_test(t: &SeqTable) -> Result<RVReport> {
    let n = t.n();
    if n < MIN_ANALYSIS_N {
        return Err(Error::TruncationTooSmall {
            n,
            min: MIN_ANALYSIS_N,
        });
    }
    if !check_lc(t).holds() {
        return Err(Error::Precondition(
            "regular-variation test needs a log-convex table".into(),
        ));
    }
    let m = t.logm();
    let mut index_estimates = BTreeMap::new();
    let mut notes = Vec::new();
    for l in [2u32, 3] {
        let mut windows = Vec::new();
        let mut spread = f64::NAN;
        for k in [n / 4, n / 2, n] {
            if let Some((mean, s)) = ratio_stats(m, k, l as usize) {
                windows.push((k, mean));
                spread = s;
            }
        }
        let mut est =
            IndexEstimate::from_windows(&format!("mean of log(m_{{{l}p}}/m_p)/log {l}"), windows);
        est.notes
            .push(format!("spread over the tail window: {spread}"));
        est.converged = est.converged && spread < TOL_IDX;
        if est.windows.is_empty() {
            est.value = IndexValue::Finite(f64::NAN);
            notes.push(format!("no usable window for l = {l}"));
        }
        index_estimates.insert(l, est);
    }
    let e2 = &index_estimates[&2];
    let e3 = &index_estimates[&3];
    let coherent = e2.converged
        && e3.converged
        && matches!((e2.finite_value(), e3.finite_value()), (Some(a), Some(b)) if (a - b).abs() < TOL_IDX);
    let index = coherent.then(|| 0.5 * (e2.finite_value().unwrap() + e3.finite_value().unwrap()));
    let omega_ref = index.or_else(|| omega(t).ok().and_then(|e| e.finite_value()));
    let bs = omega_ref.map(|w| bs_residual(t, w));
    if let Some(w) = omega_ref {
        notes.push(format!(
            "Bojanic-Seneta drift of log m_p - {w:.4} log p over the upper half: {:.4}",
            bs_drift(t, w)
        ));
        notes.push(
            "the residual measures smoothness, not level; a wrong index can still look bounded"
                .into(),
        );
    }
    Ok(RVReport {
        index_estimates,
        coherent,
        index,
        bs_residual: bs,
        notes,
    })
}

/// `max |r_p - r_{p-1}| p` over `[n/2, n)` with `r_p = log m_p - omega log p`.
pub fn bs_residual(t: &SeqTable, omega: f64) -> f64 {
    let m = t.logm();
    let n = t.n();
    let r = |p: usize| m[p] - omega * (p as f64).ln();
    ((n / 2).max(2)..n)
        .map(|p| (r(p) - r(p - 1)).abs() * p as f64)
        .fold(0.0, f64::max)
}

/// `r_{n-1} - r_{n/2}`: a trend in the residual suggests a wrong index.
pub fn bs_drift(t: &SeqTable, omega: f64) -> f64 {
    let m = t.logm();
    let n = t.n();
    let r = |p: usize| m[p] - omega * (p.max(1) as f64).ln();
    r(n - 1) - r(n / 2)
}

/// Log of the best constant `M` with `s_p <= M inf_{l >= p} s_l`, where
/// `s_p = (p + 1)^{-gamma} m_p`, over all `p` of the table.
pub fn almost_increasing_constant(t: &SeqTable, gamma: f64) -> f64 {
    almost_increasing_constant_on(t.logm(), gamma, 0, t.n())
}

/// Same, restricted to `p` in `[from, to)`.
pub fn almost_increasing_constant_on(m: &[f64], gamma: f64, from: usize, to: usize) -> f64 {
    let mut suffix_min = f64::INFINITY;
    let mut worst = 0.0f64;
    for p in (from..to).rev() {
        let s = m[p] - gamma * ((p + 1) as f64).ln();
        suffix_min = suffix_min.min(s);
        worst = worst.max(s - suffix_min);
    }
    worst
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaEstimate {
    pub value: f64,
    /// `(gamma, constant at n, constant at n/2)` for each classified gamma.
    pub pass_fail_curve: Vec<(f64, f64, f64)>,
    pub bracket: (f64, f64),
}

/// Growth of the constant across one doubling below which `gamma` passes.
///
/// Just above the true index the constant grows by `(gamma - gamma*) log 2` per doubling,
/// so this threshold keeps the classification bias at `GAMMA_TOL / 8`.
pub const GAMMA_PASS_GROWTH: f64 = std::f64::consts::LN_2 * GAMMA_TOL / 8.0;

fn classify(m: &[f64], n: usize, gamma: f64) -> (bool, f64, f64) {
    let full = almost_increasing_constant_on(m, gamma, BURN_IN.min(n / 4), n);
    let half = almost_increasing_constant_on(m, gamma, BURN_IN.min(n / 4), n / 2);
    (full - half < GAMMA_PASS_GROWTH, full, half)
}

/// Bisection for `sup { gamma : (p + 1)^{-gamma} m_p almost increasing }`.
pub fn gamma_index(t: &SeqTable) -> Result<GammaEstimate> {
    let w = omega(t)?;
    let hi = match w.value {
        IndexValue::Finite(v) => v + 1.0,
        IndexValue::PosInf => {
            return Err(Error::Degenerate(
                "lower order diverges; gamma is unbounded".into(),
            ))
        }
    };
    gamma_index_below(t, hi)
}

/// Bisection on `[0, upper]`, widening `upper` if it still passes.
pub fn gamma_index_below(t: &SeqTable, upper: f64) -> Result<GammaEstimate> {
    if t.n() < MIN_ANALYSIS_N {
        return Err(Error::TruncationTooSmall {
            n: t.n(),
            min: MIN_ANALYSIS_N,
        });
    }
    if !check_lc(t).holds() {
        return Err(Error::Precondition(
            "growth index needs a log-convex table".into(),
        ));
    }
    let m = t.logm();
    let n = t.n();
    let mut curve = Vec::new();
    let mut eval = |g: f64| {
        let (pass, full, half) = classify(m, n, g);
        curve.push((g, full, half));
        pass
    };
    if !eval(0.0) {
        return Err(Error::Degenerate(
            "not almost increasing even at gamma = 0".into(),
        ));
    }
    let mut hi = upper.max(GAMMA_TOL);
    let mut widened = 0;
    while eval(hi) {
        widened += 1;
        if widened > 4 {
            return Err(Error::Degenerate(format!("every gamma up to {hi} passes")));
        }
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..GAMMA_MAX_ITER {
        if hi - lo <= TOL_EXACT {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if eval(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(GammaEstimate {
        value: 0.5 * (lo + hi),
        pass_fail_curve: curve,
        bracket: (lo, hi),
    })
}

/// `log m'_p = gamma log(p + 1) + min_{l >= p} (log m_l - gamma log(l + 1))`.
pub fn regularize_quotients(t: &SeqTable, gamma: f64) -> SeqTable {
    let m = t.logm();
    let mut out = vec![0.0; m.len()];
    let mut suffix_min = f64::INFINITY;
    for p in (0..m.len()).rev() {
        let g = gamma * ((p + 1) as f64).ln();
        suffix_min = suffix_min.min(m[p] - g);
        out[p] = g + suffix_min;
    }
    SeqTable::from_log_quotients(out).expect("finite by construction")
}

/// Checks (bounded perturbation, monotone tilted sequence) for a regularized table.
pub fn regularization_postconditions(orig: &SeqTable, reg: &SeqTable, gamma: f64) -> (bool, bool) {
    let c = almost_increasing_constant(orig, gamma);
    let slack = |x: f64| TOL_EXACT * x.abs().max(1.0);
    let bounded = orig
        .logm()
        .iter()
        .zip(reg.logm())
        .all(|(a, b)| (a - b).abs() <= c + slack(*a));
    let tilted: Vec<f64> = reg
        .logm()
        .iter()
        .enumerate()
        .map(|(p, v)| v - gamma * ((p + 1) as f64).ln())
        .collect();
    let monotone = tilted.windows(2).all(|w| w[1] >= w[0] - slack(w[0]));
    (bounded, monotone)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OmegaGammaCheck {
    pub status: CheckStatus,
    pub omega: Option<f64>,
    pub gamma: Option<f64>,
    pub difference: Option<f64>,
    pub tolerance: f64,
    /// `gamma <= omega + TOL_IDX`.
    pub gamma_below_omega: Option<bool>,
    #[serde(default)]
    pub notes: Vec<String>,
}

pub const OMEGA_GAMMA_TOL: f64 = 2.0 * GAMMA_TOL + TOL_IDX;

/// Compares precomputed estimates; applicable only when condition (c) converges.
pub fn omega_equals_gamma_from(
    proximate: &ProximateOrderVerdict,
    omega_est: Option<&IndexEstimate>,
    gamma: Option<&GammaEstimate>,
) -> OmegaGammaCheck {
    let w = omega_est.and_then(|e| e.finite_value());
    let g = gamma.map(|g| g.value);
    let mut out = OmegaGammaCheck {
        status: CheckStatus::NotApplicable,
        omega: w,
        gamma: g,
        difference: None,
        tolerance: OMEGA_GAMMA_TOL,
        gamma_below_omega: None,
        notes: Vec::new(),
    };
    if let (Some(w), Some(g)) = (w, g) {
        out.gamma_below_omega = Some(g <= w + TOL_IDX);
        out.difference = Some((w - g).abs());
    }
    let c_converges = proximate.c.as_ref().is_some_and(|c| c.converging);
    if !c_converges {
        out.notes
            .push("log m_p / log p does not converge on this prefix; check skipped".into());
        return out;
    }
    match out.difference {
        Some(d) => {
            out.status = if d < OMEGA_GAMMA_TOL {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            }
        }
        None => out.notes.push("an estimate is missing".into()),
    }
    out
}

pub fn omega_equals_gamma_check(t: &SeqTable) -> OmegaGammaCheck {
    let pv = crate::indices::proximate_order_verdict(t);
    let w = omega(t).ok();
    let g = gamma_index(t).ok();
    omega_equals_gamma_from(&pv, w.as_ref(), g.as_ref())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::{materialize, QuotientSpec};

    fn tab(s: QuotientSpec, n: usize) -> SeqTable {
        materialize(&s, n).unwrap()
    }

    #[test]
    fn gevrey_rv() {
        let r = rv_test(&tab(QuotientSpec::gevrey(1.0), 100_000)).unwrap();
        assert!(r.coherent, "{r:?}");
        assert!((r.index.unwrap() - 1.0).abs() < TOL_IDX);
    }

    #[test]
    fn rv_needs_length() {
        assert!(rv_test(&tab(QuotientSpec::gevrey(1.0), 63)).is_err());
    }

    #[test]
    fn bs_examples() {
        let t = tab(QuotientSpec::gevrey(1.0), 10_000);
        assert!(bs_residual(&t, 1.0) < 1e-3);
        assert!((bs_residual(&t, 2.0) - 1.0).abs() < 1e-2);
        assert!(bs_drift(&t, 2.0) < -0.5);
        let c = tab(QuotientSpec::expression(|_| 0.3), 1000);
        assert_eq!(bs_residual(&c, 0.0), 0.0);
    }

    #[test]
    fn almost_increasing_examples() {
        let t = tab(QuotientSpec::gevrey(1.0), 10_000);
        assert_eq!(almost_increasing_constant(&t, 0.5), 0.0);
        assert!(almost_increasing_constant(&t, 1.0).abs() < 1e-12);
        let full = almost_increasing_constant_on(t.logm(), 1.5, BURN_IN, 10_000);
        let half = almost_increasing_constant_on(t.logm(), 1.5, BURN_IN, 5_000);
        assert!((full - 0.5 * (10_000.0f64 / 17.0).ln()).abs() < 1e-9);
        assert!((full - half - 0.5 * 2f64.ln()).abs() < 1e-3);
    }

    #[test]
    fn gamma_gevrey_two() {
        let g = gamma_index(&tab(QuotientSpec::gevrey(2.0), 100_000)).unwrap();
        assert!((g.value - 2.0).abs() < GAMMA_TOL, "{}", g.value);
        assert!(g.bracket.0 <= g.value && g.value <= g.bracket.1);
        assert!(g.bracket.1 - g.bracket.0 <= GAMMA_TOL);
    }

    #[test]
    fn gamma_unbounded_for_q_gevrey() {
        assert!(gamma_index(&tab(QuotientSpec::q_gevrey(2.0), 100_000)).is_err());
    }

    #[test]
    fn regularize_examples() {
        let t = tab(QuotientSpec::gevrey(1.0), 200);
        let r = regularize_quotients(&t, 1.0);
        for (a, b) in t.logm().iter().zip(r.logm()) {
            assert!((a - b).abs() < 1e-12);
        }
        let r0 = regularize_quotients(&t, 0.0);
        assert_eq!(r0.logm(), t.logm());

        let mut v = t.logm().to_vec();
        v[50] -= 0.3;
        let dipped = SeqTable::from_log_quotients(v).unwrap();
        let r = regularize_quotients(&dipped, 1.0);
        let (i, ii) = regularization_postconditions(&dipped, &r, 1.0);
        assert!(i && ii);
        assert!(almost_increasing_constant(&dipped, 1.0) <= 0.3 + 1e-12);
    }
}
