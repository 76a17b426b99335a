use std::path::Path;

use crate::error::{Error, Result};
use crate::seqcore::spec::QuotientSpec;

/// Materialized prefix of a sequence, stored as logarithms.
///
/// `logm[p] = log m_p` for `p < n`; `log_big_m[p] = log M_p` for `p <= n`,
/// accumulated left to right with `log M_0 = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeqTable {
    logm: Vec<f64>,
    log_big_m: Vec<f64>,
}

pub fn materialize(spec: &QuotientSpec, n: usize) -> Result<SeqTable> {
    if n < 2 {
        return Err(Error::TruncationTooSmall { n, min: 2 });
    }
    SeqTable::from_log_quotients(spec.generate(n)?)
}

impl SeqTable {
    pub fn from_log_quotients(logm: Vec<f64>) -> Result<Self> {
        if logm.len() < 2 {
            return Err(Error::TruncationTooSmall {
                n: logm.len(),
                min: 2,
            });
        }
        if let Some(index) = logm.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let mut log_big_m = Vec::with_capacity(logm.len() + 1);
        let mut acc = 0.0;
        log_big_m.push(acc);
        for &v in &logm {
            acc += v;
            log_big_m.push(acc);
        }
        Ok(SeqTable { logm, log_big_m })
    }

    pub fn n(&self) -> usize {
        self.logm.len()
    }

    pub fn logm(&self) -> &[f64] {
        &self.logm
    }

    pub fn log_big_m(&self) -> &[f64] {
        &self.log_big_m
    }

    /// First `n` quotients. Cumulative sums are bitwise those of `self`.
    pub fn prefix(&self, n: usize) -> Result<SeqTable> {
        if n > self.n() {
            return Err(Error::TableTooShort {
                available: self.n(),
                requested: n,
            });
        }
        if n < 2 {
            return Err(Error::TruncationTooSmall { n, min: 2 });
        }
        Ok(SeqTable {
            logm: self.logm[..n].to_vec(),
            log_big_m: self.log_big_m[..=n].to_vec(),
        })
    }

    /// Multiplies `m_p` by `(p + 1)^eps`, i.e. `M_p` by roughly `(p!)^eps`.
    pub fn scale_by_factorial_power(&self, eps: f64) -> SeqTable {
        self.map_quotients(|p, v| v + eps * ((p + 1) as f64).ln())
    }

    /// Adds `log_c` to every quotient, i.e. replaces `M_p` by `c^p M_p`.
    pub fn shift_quotients(&self, log_c: f64) -> SeqTable {
        self.map_quotients(|_, v| v + log_c)
    }

    fn map_quotients(&self, f: impl Fn(usize, f64) -> f64) -> SeqTable {
        let logm = self
            .logm
            .iter()
            .enumerate()
            .map(|(p, &v)| f(p, v))
            .collect();
        SeqTable::from_log_quotients(logm).expect("finite map of a finite table")
    }

    /// Number of `p` where `log M_p + log m_p` is not bitwise `log M_{p+1}`.
    ///
    /// The forward sum is the exact identity; the difference `log M_{p+1} - log M_p`
    /// only recovers `log m_p` to rounding.
    pub fn reconstruction_defects(&self) -> usize {
        self.logm
            .iter()
            .enumerate()
            .filter(|&(p, &v)| (self.log_big_m[p] + v).to_bits() != self.log_big_m[p + 1].to_bits())
            .count()
    }
}

/// Reads a quotient table: one log-quotient per line, or `p,m_p` CSV rows
/// (converted to logs). `#` starts a comment; a non-numeric first CSV row is a header.
pub fn read_table_file(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_table(&text)
}

pub fn parse_table(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    let mut csv: Option<bool> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::TableParse { line: line_no, msg };
        let is_csv = line.contains(',');
        match csv {
            None => {
                csv = Some(is_csv);
                if is_csv && line.split(',').any(|f| f.trim().parse::<f64>().is_err()) {
                    continue;
                }
            }
            Some(c) if c != is_csv => return Err(err("mixed single-column and CSV rows".into())),
            _ => {}
        }
        if !is_csv {
            let v: f64 = line
                .parse()
                .map_err(|_| err(format!("not a number: '{line}'")))?;
            if !v.is_finite() {
                return Err(err("non-finite log-quotient".into()));
            }
            out.push(v);
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 2 {
            return Err(err(format!("expected 2 fields, got {}", fields.len())));
        }
        let p: usize = fields[0]
            .parse()
            .map_err(|_| err(format!("bad index '{}'", fields[0])))?;
        if p != out.len() {
            return Err(err(format!("expected index {}, got {p}", out.len())));
        }
        let m: f64 = fields[1]
            .parse()
            .map_err(|_| err(format!("bad quotient '{}'", fields[1])))?;
        if !(m > 0.0 && m.is_finite()) {
            return Err(err(format!(
                "quotient must be positive and finite, got {m}"
            )));
        }
        out.push(m.ln());
    }
    Ok(out)
}

/// Writes one log-quotient per line, shortest round-trip formatting.
pub fn write_table_file(path: &Path, logm: &[f64]) -> Result<()> {
    let mut s = String::with_capacity(logm.len() * 20);
    s.push_str("# log m_p, p = 0..\n");
    for v in logm {
        s.push_str(&format!("{v:?}\n"));
    }
    std::fs::write(path, s).map_err(|e| Error::io(path, e))
}
