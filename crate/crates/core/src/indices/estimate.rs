use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::tolerances::TOL_IDX;

/// A finite estimate or the `+inf` divergence sentinel (serialized as the string `"+inf"`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum IndexValue {
    Finite(f64),
    PosInf,
}

impl IndexValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            IndexValue::Finite(v) => Some(v),
            IndexValue::PosInf => None,
        }
    }

    pub fn as_f64(self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }
}

impl fmt::Display for IndexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexValue::Finite(v) => write!(f, "{v}"),
            IndexValue::PosInf => f.write_str("+inf"),
        }
    }
}

impl Serialize for IndexValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            IndexValue::Finite(v) => s.serialize_f64(*v),
            IndexValue::PosInf => s.serialize_str("+inf"),
        }
    }
}

impl<'de> Deserialize<'de> for IndexValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = IndexValue;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or \"+inf\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<IndexValue, E> {
                Ok(IndexValue::Finite(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<IndexValue, E> {
                Ok(IndexValue::Finite(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<IndexValue, E> {
                Ok(IndexValue::Finite(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<IndexValue, E> {
                match v {
                    "+inf" => Ok(IndexValue::PosInf),
                    _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexEstimate {
    pub method: String,
    pub value: IndexValue,
    /// `(truncation, estimate)`, ascending in truncation.
    pub windows: Vec<(usize, f64)>,
    pub converged: bool,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl IndexEstimate {
    /// Builds from window values; the last one is the value and convergence
    /// compares the last two.
    pub fn from_windows(method: &str, windows: Vec<(usize, f64)>) -> Self {
        let value = windows.last().map(|w| w.1).unwrap_or(f64::NAN);
        IndexEstimate {
            method: method.to_string(),
            value: IndexValue::Finite(value),
            converged: windows_converged(&windows),
            windows,
            notes: Vec::new(),
        }
    }

    pub fn finite_value(&self) -> Option<f64> {
        self.value.finite()
    }
}

pub(crate) fn windows_converged(w: &[(usize, f64)]) -> bool {
    match w {
        [.., (_, a), (_, b)] => (a - b).abs() < TOL_IDX,
        _ => false,
    }
}

/// Standard truncation triple `n/4, n/2, n`.
pub(crate) fn window_truncations(n: usize) -> [usize; 3] {
    [n / 4, n / 2, n]
}

/// Least-squares fit `y ≈ a + b u` and the extreme residuals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailFit {
    pub intercept: f64,
    pub slope: f64,
    pub min_resid: f64,
    pub max_resid: f64,
}

impl TailFit {
    pub fn liminf(&self) -> f64 {
        self.intercept + self.min_resid
    }

    pub fn limsup(&self) -> f64 {
        self.intercept + self.max_resid
    }

    pub fn spread(&self) -> f64 {
        self.max_resid - self.min_resid
    }
}

pub fn fit_tail(points: &[(f64, f64)]) -> Option<TailFit> {
    let n = points.len();
    if n < 3 {
        return None;
    }
    let nf = n as f64;
    let (mu, my) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), &(u, y)| (a + u / nf, b + y / nf));
    let (mut suu, mut suy) = (0.0, 0.0);
    for &(u, y) in points {
        suu += (u - mu) * (u - mu);
        suy += (u - mu) * (y - my);
    }
    let slope = if suu > 0.0 { suy / suu } else { 0.0 };
    let intercept = my - slope * mu;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(u, y) in points {
        let r = y - intercept - slope * u;
        lo = lo.min(r);
        hi = hi.max(r);
    }
    Some(TailFit {
        intercept,
        slope,
        min_resid: lo,
        max_resid: hi,
    })
}
