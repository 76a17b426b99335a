//! Logarithmic (Riesz `(L,1)`) means `(1/H_p) sum_{k<=p} s_k / k`.
//!
//! Slices are 0-based: `s[i]` holds `s_{i+1}`.

use crate::error::{Error, Result};
use crate::indices::estimate::{window_truncations, IndexEstimate};

/// Prefix sums `(sum_{k<=p} s_k/k, H_p)` for `p = 0..=len`, by direct summation.
pub(crate) fn weighted_prefix(s: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut sk = Vec::with_capacity(s.len() + 1);
    let mut h = Vec::with_capacity(s.len() + 1);
    let (mut a, mut b) = (0.0, 0.0);
    sk.push(a);
    h.push(b);
    for (i, &v) in s.iter().enumerate() {
        let k = (i + 1) as f64;
        a += v / k;
        b += 1.0 / k;
        sk.push(a);
        h.push(b);
    }
    (sk, h)
}

/// Plain `(L,1)` mean at every truncation.
pub fn riesz_means(s: &[f64]) -> Vec<f64> {
    let (sk, h) = weighted_prefix(s);
    (1..=s.len()).map(|p| sk[p] / h[p]).collect()
}

/// `(L,1)` limit estimate.
///
/// The plain mean carries an `O(1/log p)` memory of the transient, so each window reports
/// the mean over the top half, `(S_P - S_{P/2}) / (H_P - H_{P/2})`, which has the same limit.
pub fn riesz_mean(s: &[f64]) -> Result<IndexEstimate> {
    if s.len() < 16 {
        return Err(Error::TruncationTooSmall {
            n: s.len(),
            min: 16,
        });
    }
    let (sk, h) = weighted_prefix(s);
    let windows = window_truncations(s.len())
        .into_iter()
        .map(|p| (p, (sk[p] - sk[p / 2]) / (h[p] - h[p / 2])))
        .collect();
    let mut est = IndexEstimate::from_windows("(L,1) mean over the top half", windows);
    let n = s.len();
    est.notes
        .push(format!("plain (L,1) mean at {n}: {}", sk[n] / h[n]));
    Ok(est)
}
