//! Associated function `M(t)`, counting function `nu(t)` and `d(t) = log M(t) / log t`.
//!
//! Every entry point takes `log t`; nothing here exponentiates a cumulative sum.

use crate::error::{Error, Result};
use crate::seqcore::{check_lc, SeqTable};

/// Compensated (Neumaier) sum.
/// Compensated running sum.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Neumaier {
    sum: f64,
    c: f64,
}

impl Neumaier {
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        self.c += if self.sum.abs() >= v.abs() {
            (self.sum - t) + v
        } else {
            (v - t) + self.sum
        };
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.c
    }
}

pub(crate) fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = Neumaier::default();
    values.into_iter().for_each(|v| acc.add(v));
    acc.value()
}

#[derive(Clone, Copy, Debug)]
pub struct GrowthEvaluator<'a> {
    table: &'a SeqTable,
    lc: bool,
    log_floor: f64,
}

impl<'a> GrowthEvaluator<'a> {
    pub fn new(table: &'a SeqTable) -> Self {
        GrowthEvaluator {
            table,
            lc: check_lc(table).holds(),
            log_floor: table.logm()[0].max(0.0),
        }
    }

    pub fn table(&self) -> &'a SeqTable {
        self.table
    }

    pub fn is_log_convex(&self) -> bool {
        self.lc
    }

    /// `log max(1, m_0)`: `d` is only evaluated strictly above this.
    pub fn log_floor(&self) -> f64 {
        self.log_floor
    }

    pub fn max_log_t(&self) -> f64 {
        *self.table.logm().last().unwrap()
    }

    fn in_range(&self, log_t: f64) -> Result<()> {
        let max_log_t = self.max_log_t();
        if log_t.is_nan() || log_t > max_log_t {
            return Err(Error::OutOfRange { log_t, max_log_t });
        }
        Ok(())
    }

    /// `#{j < n : m_j <= t}`.
    pub fn nu(&self, log_t: f64) -> Result<usize> {
        self.in_range(log_t)?;
        let m = self.table.logm();
        Ok(if self.lc {
            m.partition_point(|&x| x <= log_t)
        } else {
            m.iter().filter(|&&x| x <= log_t).count()
        })
    }

    /// `M(t) = sup_p (p log t - log M_p)`.
    pub fn big_m(&self, log_t: f64) -> Result<f64> {
        let big = self.table.log_big_m();
        if self.lc {
            let p = self.nu(log_t)?;
            return Ok(p as f64 * log_t - big[p]);
        }
        self.in_range(log_t)?;
        Ok(direct_sup(big, log_t))
    }

    /// `M(t)` as `sum_{m_j <= t} (log t - log m_j)`, the log-integral of `nu`.
    pub fn big_m_integral(&self, log_t: f64) -> Result<f64> {
        self.in_range(log_t)?;
        let m = self.table.logm();
        let terms = m.iter().filter(|&&x| x <= log_t).map(|&x| log_t - x);
        Ok(neumaier_sum(terms))
    }

    pub fn d_m(&self, log_t: f64) -> Result<f64> {
        let big = self.defined_big_m(log_t)?;
        Ok(big.ln() / log_t)
    }

    /// `nu(t)/M(t) - d(t)`, which equals `t d'(t) log t` between quotients.
    pub fn dm_derivative_proxy(&self, log_t: f64) -> Result<f64> {
        let big = self.defined_big_m(log_t)?;
        let nu = self.nu(log_t)? as f64;
        Ok(nu / big - big.ln() / log_t)
    }

    fn defined_big_m(&self, log_t: f64) -> Result<f64> {
        if !(log_t > self.log_floor) {
            return Err(Error::Domain(format!(
                "log t = {log_t} is not above the floor {}",
                self.log_floor
            )));
        }
        let big = self.big_m(log_t)?;
        if !(big > 0.0) {
            return Err(Error::Domain(format!(
                "M(t) = {big} is not positive at log t = {log_t}"
            )));
        }
        Ok(big)
    }

    /// Quotient abscissas `log m_p` for `p` in `[from, n)`, merged with a uniform grid in
    /// `log t` of 32 points per decade of `t`, sorted and deduplicated.
    pub fn grid(&self, from: usize) -> Vec<f64> {
        let m = self.table.logm();
        let from = from.min(m.len() - 1);
        let lo = m[from];
        let hi = self.max_log_t();
        let step = std::f64::consts::LN_10 / 32.0;
        let mut g: Vec<f64> = m[from..].to_vec();
        let steps = ((hi - lo) / step).floor() as usize;
        g.extend(
            (0..=steps)
                .map(|i| lo + i as f64 * step)
                .filter(|&x| x <= hi),
        );
        g.sort_by(f64::total_cmp);
        g.dedup();
        g
    }

    /// Rows `(log t, M(t), d(t))` over `grid(0)` wherever `d` is defined.
    pub fn plot_rows(&self) -> Vec<(f64, f64, f64)> {
        self.grid(0)
            .into_iter()
            .filter_map(|x| {
                let big = self.big_m(x).ok()?;
                let d = self.d_m(x).ok()?;
                Some((x, big, d))
            })
            .collect()
    }
}

/// Oracle path: `max_{0 <= p <= n} (p log t - log M_p)`.
pub fn direct_sup(log_big_m: &[f64], log_t: f64) -> f64 {
    log_big_m
        .iter()
        .enumerate()
        .map(|(p, &b)| p as f64 * log_t - b)
        .fold(f64::NEG_INFINITY, f64::max)
}
