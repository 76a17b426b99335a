use serde::{Deserialize, Serialize};

use crate::seqcore::table::SeqTable;
use crate::seqcore::verdict::{log_ladder, stabilization, PropertyVerdict, Status, Witness};
use crate::tolerances::{DELTA_SNQ, TOL_EXACT};

/// Logarithmic convexity: `log m_p` nondecreasing (ties allowed).
pub fn check_lc(t: &SeqTable) -> PropertyVerdict {
    let m = t.logm();
    let drop = m
        .windows(2)
        .position(|w| w[1] < w[0] - TOL_EXACT * w[0].abs().max(1.0));
    match drop {
        None => PropertyVerdict::new(Status::Holds, t.n()),
        Some(p) => PropertyVerdict::new(Status::Fails, t.n()).with_witness(Witness::Index(p)),
    }
}

/// Running maximum of `values[0..=i]` with its argmax.
fn running_max(values: impl Iterator<Item = f64>) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for (i, v) in values.enumerate() {
        match out.last() {
            Some(&(best, j)) if best >= v => out.push((best, j)),
            _ => out.push((v, i)),
        }
    }
    out
}

fn needs_lc(t: &SeqTable, what: &str) -> Option<PropertyVerdict> {
    let lc = check_lc(t);
    (!lc.holds()).then(|| {
        PropertyVerdict::inconclusive(
            t.n(),
            format!("{what} is only decided for log-convex tables"),
        )
    })
}

/// Moderate growth through `sup_p (log m_{2p} - log m_p)`.
///
/// The reported constant is that supremum at the full truncation.
pub fn check_mg(t: &SeqTable) -> PropertyVerdict {
    if let Some(v) = needs_lc(t, "moderate growth") {
        return v;
    }
    let n = t.n();
    if n < 8 {
        return PropertyVerdict::inconclusive(n, "truncation below 8");
    }
    let m = t.logm();
    let rm = running_max((0..=(n - 1) / 2).map(|p| m[2 * p] - m[p]));
    let at = |k: usize| rm[(k - 1) / 2];
    let ladder = log_ladder(n);
    let status = stabilization(ladder.map(|k| at(k).0));
    let (d, p) = at(n);
    PropertyVerdict::new(status, n)
        .with_constant(d)
        .with_witness(Witness::Pair(p, 2 * p))
}

/// Moderate growth through `sup_p (log M_{2p} - 2 log M_p) / p`.
pub fn check_mg_product_form(t: &SeqTable) -> PropertyVerdict {
    if let Some(v) = needs_lc(t, "moderate growth") {
        return v;
    }
    let n = t.n();
    if n < 8 {
        return PropertyVerdict::inconclusive(n, "truncation below 8");
    }
    let big = t.log_big_m();
    // index i corresponds to p = i + 1
    let rm = running_max((1..=n / 2).map(|p| (big[2 * p] - 2.0 * big[p]) / p as f64));
    let at = |k: usize| rm[k / 2 - 1];
    let status = stabilization(log_ladder(n).map(|k| at(k).0));
    let (d, i) = at(n);
    PropertyVerdict::new(status, n)
        .with_constant(d)
        .with_witness(Witness::Pair(i + 1, 2 * (i + 1)))
}

/// `min (log m_{kp} - log m_p)` over the upper half of usable `p` at prefix `len`.
fn snq_tail_min(m: &[f64], len: usize, k: usize) -> Option<(f64, usize)> {
    let pmax = (len - 1) / k;
    let lo = (pmax / 2).max(1);
    if pmax < 2 {
        return None;
    }
    (lo..=pmax)
        .map(|p| (m[k * p] - m[p], p))
        .min_by(|a, b| a.0.total_cmp(&b.0))
}

/// Strong non-quasianalyticity via `liminf m_{kp}/m_p > 1` for some `k <= kmax`.
pub fn check_snq(t: &SeqTable, kmax: usize) -> PropertyVerdict {
    if let Some(v) = needs_lc(t, "strong non-quasianalyticity") {
        return v;
    }
    let n = t.n();
    if kmax < 2 {
        return PropertyVerdict::inconclusive(n, "kmax must be at least 2");
    }
    let m = t.logm();
    let ladder = [n / 4, n / 2, n];
    let mut best: Option<(f64, usize, usize)> = None;
    let mut all_decay = true;
    let mut any_usable = false;
    for k in 2..=kmax {
        let vals: Vec<Option<(f64, usize)>> = ladder
            .iter()
            .map(|&len| (len >= 2).then(|| snq_tail_min(m, len, k)).flatten())
            .collect();
        let Some((last, p)) = vals[2] else { continue };
        any_usable = true;
        if best.is_none_or(|b| last > b.0) {
            best = Some((last, p, k));
        }
        let decaying = vals.windows(2).all(|w| match (w[0], w[1]) {
            (Some(a), Some(b)) => b.0 <= a.0 + TOL_EXACT * a.0.abs().max(1.0),
            _ => false,
        });
        all_decay &= decaying && last < DELTA_SNQ;
    }
    let Some((l, p, k)) = best.filter(|_| any_usable) else {
        return PropertyVerdict::inconclusive(n, "truncation too short for the ratio test");
    };
    let status = if l >= DELTA_SNQ {
        Status::Holds
    } else if all_decay {
        Status::Fails
    } else {
        Status::Inconclusive
    };
    let mut v = PropertyVerdict::new(status, n)
        .with_constant(l)
        .with_witness(Witness::Pair(p, k * p));
    v.notes.push(format!("best ratio k = {k}"));
    v
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrongRegularity {
    pub lc: PropertyVerdict,
    pub mg: PropertyVerdict,
    pub snq: PropertyVerdict,
    pub strongly_regular: PropertyVerdict,
}

/// Conjunction of lc, mg and snq; the combined status is the weakest of the three.
pub fn check_strongly_regular(t: &SeqTable) -> StrongRegularity {
    let lc = check_lc(t);
    let mg = check_mg(t);
    let snq = check_snq(t, crate::tolerances::SNQ_KMAX);
    let (name, weakest) = [("lc", &lc), ("mg", &mg), ("snq", &snq)]
        .into_iter()
        .min_by_key(|(_, v)| v.status)
        .unwrap();
    let mut overall = PropertyVerdict::new(weakest.status, t.n());
    overall.witness = weakest.witness;
    if weakest.status != Status::Holds {
        overall.notes.push(format!("decided by {name}"));
    }
    StrongRegularity {
        lc,
        mg,
        snq,
        strongly_regular: overall,
    }
}
