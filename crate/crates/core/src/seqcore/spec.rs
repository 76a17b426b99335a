use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Generator of `log m_p` for `p = 0, 1, 2, ...`.
#[derive(Clone)]
pub enum QuotientSpec {
    /// `log m_p = alpha * log(p + 1)`.
    Gevrey {
        alpha: f64,
    },
    /// Gevrey quotients times `log(e + p + 1)^beta`.
    GevreyLog {
        alpha: f64,
        beta: f64,
    },
    /// `log m_p = (2p + 1) log q`.
    QGevrey {
        q: f64,
    },
    /// `m_0 = m_1 = 1`; odd steps `q` multiply by `e^{1/q}`, even steps `2j` by `e^{1/j}`.
    /// Order 3/2, but `p log(m_{p+1}/m_p)` alternates between limits 1 and 2.
    AlternatingHarmonic,
    /// `log m_p = F(log(p + 1))` with `F` piecewise linear, slopes alternating
    /// `low`, `high` on blocks `[0, start)`, `[start, 2 start)`, `[2 start, 4 start)`, ...
    /// Log-convex and strongly regular, yet `log m_p / log p` has no limit.
    LogBlocks {
        low: f64,
        high: f64,
        start: f64,
    },
    Table(Arc<[f64]>),
    Expression(Arc<dyn Fn(usize) -> f64 + Send + Sync>),
}

impl QuotientSpec {
    pub fn gevrey(alpha: f64) -> Self {
        QuotientSpec::Gevrey { alpha }
    }

    pub fn gevrey_log(alpha: f64, beta: f64) -> Self {
        QuotientSpec::GevreyLog { alpha, beta }
    }

    pub fn q_gevrey(q: f64) -> Self {
        QuotientSpec::QGevrey { q }
    }

    pub fn table(values: impl Into<Vec<f64>>) -> Self {
        QuotientSpec::Table(values.into().into())
    }

    pub fn expression(f: impl Fn(usize) -> f64 + Send + Sync + 'static) -> Self {
        QuotientSpec::Expression(Arc::new(f))
    }

    pub fn log_blocks(low: f64, high: f64, start: f64) -> Self {
        QuotientSpec::LogBlocks { low, high, start }
    }

    /// Rejects parameters outside the family's domain.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| {
            Err(Error::SpecParse {
                spec: self.to_string(),
                msg: msg.to_string(),
            })
        };
        match *self {
            QuotientSpec::Gevrey { alpha } | QuotientSpec::GevreyLog { alpha, .. }
                if !(alpha.is_finite() && alpha > 0.0) =>
            {
                bad("alpha must be a positive real")
            }
            QuotientSpec::GevreyLog { beta, .. } if !beta.is_finite() => bad("beta must be finite"),
            QuotientSpec::QGevrey { q } if !(q.is_finite() && q > 1.0) => bad("q must be > 1"),
            QuotientSpec::LogBlocks { low, high, start }
                if !(low > 0.0 && high > 0.0 && start > 0.0)
                    || !(low.is_finite() && high.is_finite() && start.is_finite()) =>
            {
                bad("low, high and start must be positive")
            }
            _ => Ok(()),
        }
    }

    /// First `n` log-quotients, in index order.
    pub fn generate(&self, n: usize) -> Result<Vec<f64>> {
        self.validate()?;
        let out: Vec<f64> = match self {
            QuotientSpec::Gevrey { alpha } => (0..n).map(|p| alpha * ln1p(p)).collect(),
            QuotientSpec::GevreyLog { alpha, beta } => (0..n)
                .map(|p| {
                    let x = (p + 1) as f64;
                    alpha * x.ln() + beta * (std::f64::consts::E + x).ln().ln()
                })
                .collect(),
            QuotientSpec::QGevrey { q } => {
                let lq = q.ln();
                (0..n).map(|p| (2 * p + 1) as f64 * lq).collect()
            }
            QuotientSpec::AlternatingHarmonic => {
                let mut v = Vec::with_capacity(n);
                let mut acc = 0.0;
                for q in 0..n {
                    if q >= 2 {
                        acc += if q % 2 == 0 {
                            2.0 / q as f64
                        } else {
                            1.0 / q as f64
                        };
                    }
                    v.push(acc);
                }
                v
            }
            QuotientSpec::LogBlocks { low, high, start } => {
                let f = BlockProfile::new(*low, *high, *start);
                (0..n).map(|p| f.eval(ln1p(p))).collect()
            }
            QuotientSpec::Table(values) => {
                if values.len() < n {
                    return Err(Error::TableTooShort {
                        available: values.len(),
                        requested: n,
                    });
                }
                values[..n].to_vec()
            }
            QuotientSpec::Expression(f) => (0..n).map(|p| f(p)).collect(),
        };
        if let Some(index) = out.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(out)
    }

    /// Number of quotients available, if bounded.
    pub fn max_len(&self) -> Option<usize> {
        match self {
            QuotientSpec::Table(v) => Some(v.len()),
            _ => None,
        }
    }
}

fn ln1p(p: usize) -> f64 {
    ((p + 1) as f64).ln()
}

struct BlockProfile {
    // (left edge, value at left edge, slope)
    pieces: Vec<(f64, f64, f64)>,
}

impl BlockProfile {
    fn new(low: f64, high: f64, start: f64) -> Self {
        let mut pieces = vec![(0.0, 0.0, low)];
        let mut edge = start;
        // log(p + 1) stays below 50 for every materializable truncation
        while edge < 64.0 {
            let &(x0, y0, s) = pieces.last().unwrap();
            let slope = if pieces.len() % 2 == 0 { low } else { high };
            pieces.push((edge, y0 + s * (edge - x0), slope));
            edge *= 2.0;
        }
        BlockProfile { pieces }
    }

    fn eval(&self, x: f64) -> f64 {
        let i = self.pieces.partition_point(|&(x0, _, _)| x0 <= x).max(1) - 1;
        let (x0, y0, s) = self.pieces[i];
        y0 + s * (x - x0)
    }
}

impl fmt::Display for QuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientSpec::Gevrey { alpha } => write!(f, "gevrey:alpha={alpha}"),
            QuotientSpec::GevreyLog { alpha, beta } => {
                write!(f, "gevrey-log:alpha={alpha},beta={beta}")
            }
            QuotientSpec::QGevrey { q } => write!(f, "qgevrey:q={q}"),
            QuotientSpec::AlternatingHarmonic => f.write_str("paper-example"),
            QuotientSpec::LogBlocks { low, high, start } => {
                write!(f, "log-blocks:low={low},high={high},start={start}")
            }
            QuotientSpec::Table(v) => write!(f, "table[{}]", v.len()),
            QuotientSpec::Expression(_) => f.write_str("expression"),
        }
    }
}

impl fmt::Debug for QuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuotientSpec({self})")
    }
}
