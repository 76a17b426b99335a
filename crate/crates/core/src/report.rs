//! End-to-end analysis of one sequence and its JSON report.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::growthfn::GrowthEvaluator;
use crate::indices::{
    alpha_beta, lambda_exponent, moricz_scan, omega, proximate_order_verdict, riesz_mean,
    IndexEstimate, MoriczScan, ProximateOrderVerdict,
};
use crate::regvar::{
    gamma_index, omega_equals_gamma_from, rv_test, GammaEstimate, OmegaGammaCheck, RVReport,
};
use crate::seqcore::{
    check_mg, check_mg_product_form, check_strongly_regular, materialize, quotient_equivalent,
    sequence_equivalent, PropertyVerdict, QuotientSpec, SeqTable, Status, StrongRegularity,
};
use crate::tolerances::{BURN_IN, MIN_ANALYSIS_N, MORICZ_LOWER, MORICZ_UPPER, TOL_EXACT, TOL_IDX};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub tool: String,
    pub version: String,
    /// Seconds since the Unix epoch; only present when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_at_unix: Option<u64>,
}

impl Default for Header {
    fn default() -> Self {
        Header {
            tool: "regseq".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            generated_at_unix: None,
        }
    }
}

impl Header {
    pub fn stamped() -> Self {
        let now = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .ok();
        Header {
            generated_at_unix: now,
            ..Header::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndicesSection {
    pub lambda: Option<IndexEstimate>,
    pub omega: Option<IndexEstimate>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetaSummability {
    pub riesz: Option<IndexEstimate>,
    pub moricz: Option<MoriczScan>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CrossCheck {
    fn new(name: &str, passed: bool, detail: impl Into<Option<String>>) -> Self {
        CrossCheck {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub header: Header,
    pub fixture: String,
    pub truncation: usize,
    pub properties: StrongRegularity,
    pub indices: IndicesSection,
    pub proximate_order: ProximateOrderVerdict,
    pub regular_variation: Option<RVReport>,
    pub gamma: Option<GammaEstimate>,
    pub omega_gamma: OmegaGammaCheck,
    pub beta_summability: BetaSummability,
    pub cross_checks: Vec<CrossCheck>,
    pub notes: Vec<String>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn cross_check(&self, name: &str) -> Option<bool> {
        self.cross_checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.passed)
    }
}

fn require_len(n: usize) -> Result<()> {
    if n < MIN_ANALYSIS_N {
        return Err(Error::TruncationTooSmall {
            n,
            min: MIN_ANALYSIS_N,
        });
    }
    Ok(())
}

pub fn analyze_spec(spec: &QuotientSpec, label: &str, n: usize) -> Result<AnalysisReport> {
    require_len(n)?;
    let t = materialize(spec, n)?;
    analyze(&t, label)
}

/// Largest relative gap between `p beta_p` and `M(m_p)` over `p >= 1`.
pub fn beta_route_defect(t: &SeqTable) -> f64 {
    let ev = GrowthEvaluator::new(t);
    let ab = alpha_beta(t);
    let big = t.log_big_m();
    (1..t.n())
        .filter_map(|p| {
            let via_m = ev.big_m(t.logm()[p]).ok()?;
            let scale = (p as f64 * t.logm()[p]).abs().max(big[p].abs()).max(1.0);
            Some((p as f64 * ab.beta[p] - via_m).abs() / scale)
        })
        .fold(0.0, f64::max)
}

pub fn analyze(t: &SeqTable, label: &str) -> Result<AnalysisReport> {
    let n = t.n();
    require_len(n)?;
    let mut notes = Vec::new();
    let properties = check_strongly_regular(t);
    let lc = properties.lc.holds();

    let keep = |r: Result<IndexEstimate>, what: &str, notes: &mut Vec<String>| match r {
        Ok(e) => Some(e),
        Err(e) => {
            notes.push(format!("{what}: {e}"));
            None
        }
    };
    let lambda = keep(lambda_exponent(t), "lambda", &mut notes);
    let omega_est = keep(omega(t), "omega", &mut notes);

    let ((proximate, gamma), (rv, summability)) = rayon::join(
        || rayon::join(|| proximate_order_verdict(t), || gamma_index(t)),
        || {
            rayon::join(
                || rv_test(t),
                || {
                    let beta = alpha_beta(t).beta;
                    let grid: Vec<f64> =
                        MORICZ_UPPER.iter().chain(&MORICZ_LOWER).copied().collect();
                    (riesz_mean(&beta), moricz_scan(&beta, &grid))
                },
            )
        },
    );
    let gamma = gamma.map_err(|e| notes.push(format!("gamma: {e}"))).ok();
    let rv = rv
        .map_err(|e| notes.push(format!("regular variation: {e}")))
        .ok();
    let riesz = keep(summability.0, "riesz mean of beta", &mut notes);
    let moricz = summability
        .1
        .map_err(|e| notes.push(format!("moricz scan: {e}")))
        .ok();
    let omega_gamma = omega_equals_gamma_from(&proximate, omega_est.as_ref(), gamma.as_ref());

    let mut checks = vec![CrossCheck::new(
        "reconstruction",
        t.reconstruction_defects() == 0,
        None,
    )];
    if lc {
        let a = check_mg(t);
        let b = check_mg_product_form(t);
        checks.push(CrossCheck::new(
            "mg_forms_agree",
            a.status == b.status,
            format!("{:?} vs {:?}", a.status, b.status),
        ));
        let d = beta_route_defect(t);
        checks.push(CrossCheck::new(
            "beta_equals_m_at_quotients",
            d <= TOL_EXACT,
            format!("max relative defect {d:.3e}"),
        ));
        if let Some(c) = properties.mg.constant.filter(|_| properties.mg.holds()) {
            let beta = alpha_beta(t).beta;
            let worst = beta[BURN_IN.min(n)..]
                .iter()
                .copied()
                .fold(f64::NEG_INFINITY, f64::max);
            checks.push(CrossCheck::new(
                "beta_bounded_by_mg",
                worst <= 2.0 * c + TOL_EXACT * c.abs().max(1.0),
                format!("max beta {worst:.6} vs 2D = {:.6}", 2.0 * c),
            ));
        }
    }
    let w = omega_est
        .as_ref()
        .filter(|e| e.converged)
        .and_then(|e| e.finite_value());
    if let (Some(w), Some(l)) = (
        w,
        lambda
            .as_ref()
            .filter(|e| e.converged)
            .and_then(|e| e.finite_value()),
    ) {
        checks.push(CrossCheck::new(
            "omega_lambda_reciprocal",
            (w * l - 1.0).abs() < 2.0 * TOL_IDX,
            format!("omega * lambda = {:.6}", w * l),
        ));
    }
    if let (Some(w), Some(g)) = (omega_est.as_ref().and_then(|e| e.finite_value()), &gamma) {
        checks.push(CrossCheck::new(
            "gamma_below_omega",
            g.value <= w + 1e-2,
            format!("gamma {:.5}, omega {:.5}", g.value, w),
        ));
    }
    if let (Some(rv), Some(w)) = (&rv, omega_est.as_ref().and_then(|e| e.finite_value())) {
        if let Some(v) = rv.index {
            checks.push(CrossCheck::new(
                "rv_index_matches_omega",
                (v - w).abs() < TOL_IDX,
                format!("rv index {v:.5}, omega {w:.5}"),
            ));
        }
    }
    if omega_gamma.status != crate::regvar::CheckStatus::NotApplicable {
        checks.push(CrossCheck::new(
            "omega_equals_gamma",
            omega_gamma.status == crate::regvar::CheckStatus::Pass,
            omega_gamma
                .difference
                .map(|d| format!("|omega - gamma| = {d:.5}")),
        ));
    }
    if let (Some(w), Some(r)) = (w, riesz.as_ref().and_then(|e| e.finite_value())) {
        checks.push(CrossCheck::new(
            "riesz_beta_matches_omega",
            (r - w).abs() < 1e-2,
            format!("(L,1) mean of beta {r:.5}, omega {w:.5}"),
        ));
        let d = proximate.d.as_ref().map(|d| d.value);
        if let (Some(m), Some(d)) = (&moricz, d) {
            if m.plausible && (r - w).abs() < TOL_IDX {
                checks.push(CrossCheck::new(
                    "beta_limit_from_summability",
                    (d - w).abs() < TOL_IDX,
                    format!("beta tail {d:.5}, omega {w:.5}"),
                ));
            }
        }
    }
    if let Some(e) = omega_est.as_ref().filter(|e| !e.converged) {
        notes.push(format!(
            "omega windows have not settled: {:?}",
            e.windows.iter().map(|w| w.1).collect::<Vec<_>>()
        ));
    }

    Ok(AnalysisReport {
        header: Header::default(),
        fixture: label.to_string(),
        truncation: n,
        properties,
        indices: IndicesSection {
            lambda,
            omega: omega_est,
        },
        proximate_order: proximate,
        regular_variation: rv,
        gamma,
        omega_gamma,
        beta_summability: BetaSummability { riesz, moricz },
        cross_checks: checks,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub header: Header,
    pub spec_a: String,
    pub spec_b: String,
    pub truncation: usize,
    pub quotient_equivalent: PropertyVerdict,
    pub sequence_equivalent: PropertyVerdict,
    /// Quotient equivalence implies sequence equivalence.
    pub implication_holds: bool,
    pub omega_a: Option<IndexEstimate>,
    pub omega_b: Option<IndexEstimate>,
    pub notes: Vec<String>,
}

pub fn compare(a: &SeqTable, b: &SeqTable, label_a: &str, label_b: &str) -> Result<CompareReport> {
    let q = quotient_equivalent(a, b)?;
    let s = sequence_equivalent(a, b)?;
    let implication_holds = q.status != Status::Holds || s.status == Status::Holds;
    let (wa, wb) = if a.n() >= MIN_ANALYSIS_N {
        (omega(a).ok(), omega(b).ok())
    } else {
        (None, None)
    };
    let mut notes = Vec::new();
    let describe = |e: &IndexEstimate| {
        let drift = match e.windows.as_slice() {
            [.., x, y] => (y.1 - x.1).abs(),
            _ => f64::NAN,
        };
        if e.converged {
            format!("{} (converged)", e.value)
        } else {
            format!("{} (not converged, last window drift {drift:.3e})", e.value)
        }
    };
    if let (Some(x), Some(y)) = (&wa, &wb) {
        notes.push(format!(
            "omega A = {}, omega B = {}",
            describe(x),
            describe(y)
        ));
        if let (Some(u), Some(v)) = (x.finite_value(), y.finite_value()) {
            let both = x.converged && y.converged;
            notes.push(if (u - v).abs() < 1e-2 && both {
                "omega estimates agree".to_string()
            } else if both {
                format!("omega estimates differ by {:.4}", (u - v).abs())
            } else {
                format!(
                    "omega estimates differ by {:.4} but at least one has not converged",
                    (u - v).abs()
                )
            });
        }
    }
    if !implication_holds {
        notes.push("quotient equivalence without sequence equivalence: check the inputs".into());
    }
    Ok(CompareReport {
        header: Header::default(),
        spec_a: label_a.into(),
        spec_b: label_b.into(),
        truncation: a.n(),
        quotient_equivalent: q,
        sequence_equivalent: s,
        implication_holds,
        omega_a: wa,
        omega_b: wb,
        notes,
    })
}

/// TSV of `(log t, M(t), d(t))` with a `# fixture=..., truncation=...` header.
pub fn plot_data(t: &SeqTable, label: &str) -> String {
    let ev = GrowthEvaluator::new(t);
    let mut out = format!("# fixture={label}\ttruncation={}\nlog_t\tM\td_M\n", t.n());
    for (x, m, d) in ev.plot_rows() {
        out.push_str(&format!("{x:?}\t{m:?}\t{d:?}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_small() {
        let r = analyze_spec(&QuotientSpec::gevrey(1.0), "gevrey:alpha=1", 2000).unwrap();
        let s = r.to_json().unwrap();
        let back = AnalysisReport::from_json(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json().unwrap(), s);
    }

    #[test]
    fn deterministic() {
        let a = analyze_spec(&QuotientSpec::AlternatingHarmonic, "p", 3000).unwrap();
        let b = analyze_spec(&QuotientSpec::AlternatingHarmonic, "p", 3000).unwrap();
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    }

    #[test]
    fn non_lc_table_still_reports() {
        let t =
            SeqTable::from_log_quotients((0..200).map(|p| ((p * 7) % 5) as f64).collect()).unwrap();
        let r = analyze(&t, "jagged").unwrap();
        assert_eq!(r.properties.lc.status, Status::Fails);
        assert!(r.gamma.is_none() && r.regular_variation.is_none());
        assert!(!r.notes.is_empty());
    }

    #[test]
    fn compare_log_factor() {
        let a = materialize(&QuotientSpec::gevrey(1.0), 10_000).unwrap();
        let b = materialize(&QuotientSpec::gevrey_log(1.0, 1.0), 10_000).unwrap();
        let r = compare(&a, &b, "a", "b").unwrap();
        assert_eq!(r.quotient_equivalent.status, Status::Fails);
        assert!(r.implication_holds);
        assert!(r.notes.iter().any(|n| n.starts_with("omega A")));
    }

    #[test]
    fn plot_header_and_rows() {
        let t = materialize(&QuotientSpec::gevrey(1.0), 64).unwrap();
        let s = plot_data(&t, "g");
        let mut lines = s.lines();
        assert_eq!(lines.next().unwrap(), "# fixture=g\ttruncation=64");
        assert_eq!(lines.next().unwrap(), "log_t\tM\td_M");
        let ms: Vec<f64> = lines
            .map(|l| l.split('\t').nth(1).unwrap().parse().unwrap())
            .collect();
        assert!(ms.len() > 10);
        assert!(ms.windows(2).all(|w| w[1] >= w[0]));
    }
}
