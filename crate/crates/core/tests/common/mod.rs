//! Checks shared by the property suites and the acceptance runner.
//! Each check returns `Err(description)` on the first violation.
#![allow(dead_code)]

use proptest::prelude::*;
use regseq::growthfn::{direct_sup, GrowthEvaluator};
use regseq::indices::{alpha_beta, alpha_from_beta, lambda_exponent, omega};
use regseq::regvar::{gamma_index, regularization_postconditions, regularize_quotients, rv_test};
use regseq::report::beta_route_defect;
use regseq::seqcore::{check_strongly_regular, quotient_equivalent, sequence_equivalent};
use regseq::tolerances::{close_exact, TOL_EXACT, TOL_IDX};
use regseq::{IndexValue, SeqTable, Status};

pub type Check = Result<(), String>;

/// Nondecreasing log-quotients growing roughly like `c log p`.
pub fn lc_log_quotients(len: usize) -> impl Strategy<Value = Vec<f64>> {
    lc_log_quotients_with(-2.0..2.0, 0.1..3.0, 1.0, len)
}

/// `log m_0` drawn from `start`, `c` from `rate`; each increment is
/// `c (1 + jitter u) / (p + 1)` with `u` uniform in `[-1, 1]`.
pub fn lc_log_quotients_with(
    start: std::ops::Range<f64>,
    rate: std::ops::Range<f64>,
    jitter: f64,
    len: usize,
) -> impl Strategy<Value = Vec<f64>> {
    (start, rate, prop::collection::vec(-1.0f64..1.0, len)).prop_map(move |(x0, c, u)| {
        let mut x = x0;
        u.iter()
            .enumerate()
            .map(|(p, &u)| {
                let v = x;
                x += c * (1.0 + jitter * u) / (p + 1) as f64;
                v
            })
            .collect()
    })
}

/// A log-convex table and a copy whose quotients differ by a factor in `[e^-1, e]`.
pub fn equivalent_pair(len: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (
        lc_log_quotients(len),
        prop::collection::vec(-1.0f64..1.0, len),
    )
        .prop_map(|(a, e)| {
            let b = a.iter().zip(&e).map(|(x, d)| x + d).collect();
            (a, b)
        })
}

pub fn table(logm: Vec<f64>) -> SeqTable {
    SeqTable::from_log_quotients(logm).expect("finite table")
}

pub fn reconstruction(t: &SeqTable) -> Check {
    let defects = t.reconstruction_defects();
    if defects != 0 {
        return Err(format!(
            "{defects} cumulative sums differ from the forward recurrence"
        ));
    }
    // independent compensated sum
    let (mut s, mut c) = (0.0f64, 0.0f64);
    for (p, &x) in t.logm().iter().enumerate() {
        if !close_exact(t.log_big_m()[p], s + c) {
            return Err(format!(
                "log M_{p} = {} but the sum gives {}",
                t.log_big_m()[p],
                s + c
            ));
        }
        let y = s + x;
        c += if s.abs() >= x.abs() {
            (s - y) + x
        } else {
            (x - y) + s
        };
        s = y;
    }
    Ok(())
}

pub fn beta_round_trip(t: &SeqTable) -> Check {
    let ab = alpha_beta(t);
    let back = alpha_from_beta(&ab.beta);
    for (p, (a, b)) in ab.alpha.iter().zip(&back).enumerate() {
        if !close_exact(*a, *b) {
            return Err(format!("alpha_{p} = {a}, reconstructed {b}"));
        }
    }
    Ok(())
}

/// `M(m_p) = p beta_p`.
pub fn m_at_quotients(t: &SeqTable) -> Check {
    let d = beta_route_defect(t);
    if d > TOL_EXACT {
        return Err(format!("M(m_p) differs from p beta_p by {d:e} (relative)"));
    }
    Ok(())
}

/// `count` evenly spaced points in `[log m_0, max log t]`.
pub fn even_grid(ev: &GrowthEvaluator, count: usize) -> Vec<f64> {
    let lo = ev.table().logm()[0];
    let hi = ev.max_log_t();
    (0..count)
        .map(|i| (lo + (hi - lo) * i as f64 / (count - 1) as f64).min(hi))
        .collect()
}

/// Sup path, counting-function integral and the brute-force sup agree on `count` points.
pub fn two_path_m(t: &SeqTable, count: usize) -> Check {
    let ev = GrowthEvaluator::new(t);
    for x in even_grid(&ev, count) {
        let a = ev.big_m(x).map_err(|e| e.to_string())?;
        let b = ev.big_m_integral(x).map_err(|e| e.to_string())?;
        let c = direct_sup(t.log_big_m(), x).max(0.0);
        if !close_exact(a, b) || !close_exact(a, c) {
            return Err(format!(
                "log t = {x}: sup {a}, integral {b}, brute force {c}"
            ));
        }
    }
    Ok(())
}

/// `M` is convex in `log t`: second differences on the grid are nonnegative.
pub fn log_convex_m(t: &SeqTable, count: usize) -> Check {
    let ev = GrowthEvaluator::new(t);
    let xs = even_grid(&ev, count);
    let ys: Vec<f64> = xs
        .iter()
        .map(|&x| ev.big_m(x).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    for i in 1..xs.len() - 1 {
        let left = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
        let right = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
        if right < left - 1e-9 * left.abs().max(1.0) {
            return Err(format!(
                "slope drops from {left} to {right} at log t = {}",
                xs[i]
            ));
        }
    }
    Ok(())
}

pub fn regularization(t: &SeqTable, gamma: f64) -> Check {
    let reg = regularize_quotients(t, gamma);
    match regularization_postconditions(t, &reg, gamma) {
        (true, true) => Ok(()),
        (bounded, monotone) => Err(format!(
            "gamma = {gamma}: bounded {bounded}, monotone {monotone}"
        )),
    }
}

/// For a pair that is quotient-equivalent by construction the quotient check may not
/// fail and the sequence check must hold.
pub fn equivalence_implication(a: &SeqTable, b: &SeqTable) -> Check {
    let q = quotient_equivalent(a, b).map_err(|e| e.to_string())?;
    let s = sequence_equivalent(a, b).map_err(|e| e.to_string())?;
    if q.status == Status::Fails {
        return Err(format!(
            "bounded perturbation reported as unbounded: {:?}",
            q.witness
        ));
    }
    if s.status != Status::Holds {
        return Err(format!("quotient equivalent but sequences {:?}", s.status));
    }
    Ok(())
}

fn index(v: IndexValue) -> Option<f64> {
    v.finite()
}

fn same_index(what: &str, a: Option<f64>, b: Option<f64>, tol: f64) -> Check {
    match (a, b) {
        (None, None) => Ok(()),
        (Some(x), Some(y)) if (x - y).abs() <= tol => Ok(()),
        _ => Err(format!("{what}: {a:?} vs {b:?}")),
    }
}

/// Verdicts and index estimates of `t` and of `m_p -> c m_p` coincide.
pub fn scaling_invariance(t: &SeqTable, c: f64) -> Check {
    let s = t.shift_quotients(c.ln());
    let (pa, pb) = (check_strongly_regular(t), check_strongly_regular(&s));
    for (name, a, b) in [
        ("lc", &pa.lc, &pb.lc),
        ("mg", &pa.mg, &pb.mg),
        ("snq", &pa.snq, &pb.snq),
        (
            "strongly regular",
            &pa.strongly_regular,
            &pb.strongly_regular,
        ),
    ] {
        if a.status != b.status {
            return Err(format!(
                "c = {c}: {name} {:?} became {:?}",
                a.status, b.status
            ));
        }
    }
    let val = |r: regseq::Result<regseq::IndexEstimate>| r.ok().and_then(|e| index(e.value));
    same_index("omega", val(omega(t)), val(omega(&s)), TOL_IDX)?;
    // lambda compared in order units: d omega = d lambda / lambda^2
    let la = val(lambda_exponent(t));
    let lambda_tol = TOL_IDX * la.map_or(1.0, |l| (l * l).max(1.0));
    same_index("lambda", la, val(lambda_exponent(&s)), lambda_tol)?;
    let g = |t: &SeqTable| gamma_index(t).ok().map(|g| g.value);
    same_index("gamma", g(t), g(&s), TOL_IDX)?;
    let (ra, rb) = (
        rv_test(t).map_err(|e| e.to_string())?,
        rv_test(&s).map_err(|e| e.to_string())?,
    );
    if ra.coherent != rb.coherent {
        return Err(format!(
            "c = {c}: rv coherence {} became {}",
            ra.coherent, rb.coherent
        ));
    }
    same_index("rv index", ra.index, rb.index, TOL_IDX)
}

/// `gamma <= omega + 1e-2`.
pub fn gamma_below_omega(t: &SeqTable) -> Check {
    let w = omega(t).map_err(|e| e.to_string())?;
    let Some(w) = index(w.value) else {
        return Ok(());
    };
    let g = gamma_index(t).map_err(|e| e.to_string())?.value;
    if g > w + 1e-2 {
        return Err(format!("gamma {g} exceeds omega {w}"));
    }
    Ok(())
}
