use serde::{Deserialize, Serialize};

use crate::growthfn::Neumaier;
use crate::seqcore::SeqTable;

/// `alpha_p = log m_p`, `beta_p = alpha_p - log M_p / p` (`beta_0 = alpha_0`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaBeta {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

pub fn alpha_beta(t: &SeqTable) -> AlphaBeta {
    let alpha = t.logm().to_vec();
    let big = t.log_big_m();
    let beta = alpha
        .iter()
        .enumerate()
        .map(|(p, &a)| if p == 0 { a } else { a - big[p] / p as f64 })
        .collect();
    AlphaBeta { alpha, beta }
}

/// Inverse transform: `alpha_p = beta_p + sum_{k<p} beta_k / (k + 1)`.
pub fn alpha_from_beta(beta: &[f64]) -> Vec<f64> {
    let mut acc = Neumaier::default();
    beta.iter()
        .enumerate()
        .map(|(p, &b)| {
            let a = b + acc.value();
            acc.add(b / (p + 1) as f64);
            a
        })
        .collect()
}
