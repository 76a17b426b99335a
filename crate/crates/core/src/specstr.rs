//! Parser for `kind[:key=value[,key=value...]]` sequence specs.
//!
//! Kinds: `gevrey:alpha=A`, `gevrey-log:alpha=A,beta=B`, `qgevrey:q=Q`, `paper-example`
//! (alias `alt-harmonic`), `log-blocks:low=L,high=H,start=S`, `file:PATH`.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::seqcore::{read_table_file, QuotientSpec};

pub fn parse_spec(s: &str) -> Result<QuotientSpec> {
    let s = s.trim();
    let err = |msg: String| Error::SpecParse {
        spec: s.to_string(),
        msg,
    };
    let (kind, rest) = match s.split_once(':') {
        Some((k, r)) => (k.trim(), Some(r)),
        None => (s, None),
    };
    if kind == "file" {
        let path = rest
            .map(|r| r.strip_prefix("path=").unwrap_or(r))
            .filter(|p| !p.is_empty())
            .ok_or_else(|| err("file needs a path".into()))?;
        let values = read_table_file(Path::new(path))?;
        if values.is_empty() {
            return Err(err("table file has no values".into()));
        }
        return Ok(QuotientSpec::table(values));
    }
    let mut params = BTreeMap::new();
    if let Some(r) = rest.filter(|r| !r.trim().is_empty()) {
        for kv in r.split(',') {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got '{kv}'")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| err(format!("'{}' is not a number", v.trim())))?;
            if params.insert(k.trim().to_string(), v).is_some() {
                return Err(err(format!("duplicate key '{}'", k.trim())));
            }
        }
    }
    let mut take = |key: &str| {
        params
            .remove(key)
            .ok_or_else(|| err(format!("missing parameter '{key}'")))
    };
    let spec = match kind {
        "gevrey" => QuotientSpec::gevrey(take("alpha")?),
        "gevrey-log" => {
            let a = take("alpha")?;
            QuotientSpec::gevrey_log(a, take("beta")?)
        }
        "qgevrey" | "q-gevrey" => QuotientSpec::q_gevrey(take("q")?),
        "paper-example" | "alt-harmonic" => QuotientSpec::AlternatingHarmonic,
        "log-blocks" => {
            let low = take("low")?;
            let high = take("high")?;
            QuotientSpec::log_blocks(low, high, take("start")?)
        }
        other => return Err(err(format!("unknown kind '{other}'"))),
    };
    if let Some(k) = params.keys().next() {
        return Err(err(format!("unknown parameter '{k}' for {kind}")));
    }
    spec.validate()?;
    Ok(spec)
}
