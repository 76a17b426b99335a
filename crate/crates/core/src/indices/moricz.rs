//! Tauberian scan for logarithmic means.
//!
//! For `lambda > 1` the inner quantity at `p` is the `(L,1)`-weighted mean of
//! `s_k - s_p` over `p < k <= floor(p^lambda)`; for `lambda < 1` it is the mean of
//! `s_p - s_k` over `floor(p^lambda) < k <= p`. Each is the weighted average of the
//! increments, normalized by the harmonic mass of the block. The scan reports the
//! minimum over the upper half of usable `p` (a liminf proxy) per `lambda`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indices::riesz::weighted_prefix;
use crate::tolerances::{BURN_IN, TOL_IDX};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoriczPoint {
    pub lambda: f64,
    /// `None` when no `p` in range gives a nonempty block.
    pub value: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoriczScan {
    pub upper: Vec<MoriczPoint>,
    pub lower: Vec<MoriczPoint>,
    pub upper_max: Option<f64>,
    pub lower_max: Option<f64>,
    pub plausible: bool,
    pub notes: Vec<String>,
}

pub fn moricz_scan(s: &[f64], lambdas: &[f64]) -> Result<MoriczScan> {
    if let Some(i) = s.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { index: i });
    }
    if !lambdas.iter().any(|&l| l > 1.0) || !lambdas.iter().any(|&l| l < 1.0 && l > 0.0) {
        return Err(Error::Precondition(
            "lambda grid needs points on both sides of 1".into(),
        ));
    }
    let n = s.len();
    let (sk, h) = weighted_prefix(s);
    let sv = |k: usize| s[k - 1];
    let mut notes = Vec::new();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for &lam in lambdas {
        if lam == 1.0 || lam <= 0.0 {
            notes.push(format!("lambda = {lam} ignored"));
            continue;
        }
        let block = |p: usize| (p as f64).powf(lam).floor() as usize;
        let value = if lam > 1.0 {
            // largest p with floor(p^lam) <= n
            let pmax = (1..=n).rev().find(|&p| block(p) <= n).unwrap_or(0);
            tail_min(pmax, |p| {
                let q = block(p);
                (q > p).then(|| (sk[q] - sk[p]) / (h[q] - h[p]) - sv(p))
            })
        } else {
            tail_min(n, |p| {
                let q = block(p);
                (q < p).then(|| sv(p) - (sk[p] - sk[q]) / (h[p] - h[q]))
            })
        };
        if value.is_none() {
            notes.push(format!(
                "lambda = {lam} skipped: no p with a nonempty block"
            ));
        }
        let point = MoriczPoint { lambda: lam, value };
        if lam > 1.0 {
            upper.push(point);
        } else {
            lower.push(point);
        }
    }
    let max = |v: &[MoriczPoint]| v.iter().filter_map(|x| x.value).reduce(f64::max);
    let upper_max = max(&upper);
    let lower_max = max(&lower);
    let plausible =
        matches!((upper_max, lower_max), (Some(a), Some(b)) if a >= -TOL_IDX && b >= -TOL_IDX);
    Ok(MoriczScan {
        upper,
        lower,
        upper_max,
        lower_max,
        plausible,
        notes,
    })
}

fn tail_min(pmax: usize, f: impl Fn(usize) -> Option<f64>) -> Option<f64> {
    let lo = (pmax / 2).max(BURN_IN);
    (lo..=pmax).filter_map(f).reduce(f64::min)
}
