use serde::{Deserialize, Serialize};

use crate::tolerances::TOL_GROW;

pub const GROWTH_PERSISTENCE: f64 = 0.75;

/// Ordered weakest first, so `min` combines sub-verdicts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Fails,
    Inconclusive,
    Holds,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Index(usize),
    Pair(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyVerdict {
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Log domain.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<f64>,
    pub truncation: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl PropertyVerdict {
    pub fn new(status: Status, truncation: usize) -> Self {
        PropertyVerdict {
            status,
            witness: None,
            constant: None,
            truncation,
            notes: Vec::new(),
        }
    }

    pub fn inconclusive(truncation: usize, note: impl Into<String>) -> Self {
        let mut v = Self::new(Status::Inconclusive, truncation);
        v.notes.push(note.into());
        v
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn with_constant(mut self, c: f64) -> Self {
        self.constant = Some(c);
        self
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }
}

/// Prefix lengths at which a "bounded" statistic is compared.
///
/// Geometric in `log n` (`n^{1/4}`, `n^{1/2}`, `n`) rather than `n/4, n/2, n`:
/// doubling steps cannot see `log log` growth.
pub fn log_ladder(n: usize) -> [usize; 3] {
    let q = |e: f64| ((n as f64).powf(e).ceil() as usize).clamp(8.min(n), n);
    [q(0.25), q(0.5), n]
}

/// Three-valued boundedness from a statistic sampled along a ladder.
///
/// Growth must persist: a statistic that converges like `c / log p` gains half as much
/// on each rung of the log ladder, so a step shrinking below `GROWTH_PERSISTENCE` of
/// the previous one is not evidence of divergence.
pub fn stabilization(stats: [f64; 3]) -> Status {
    let [s0, s1, s2] = stats;
    let (d1, d2) = (s1 - s0, s2 - s1);
    if d2.abs() < TOL_GROW {
        Status::Holds
    } else if d1 > TOL_GROW && d2 > TOL_GROW && d2 >= GROWTH_PERSISTENCE * d1 {
        Status::Fails
    } else {
        Status::Inconclusive
    }
}
