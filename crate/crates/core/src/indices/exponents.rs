//! Lower order `omega = liminf log m_p / log p` and convergence exponent
//! `lambda = limsup log p / log m_p`.
//!
//! Both ratios approach their limits like `1/log p`, so raw tail extrema are biased by
//! several percent even at `p = 10^6`. Each window is fitted as `a + b x` over
//! `p` in `[max(16, sqrt N), N)`, with `x = 1 / log p` for `omega` and `x = 1 / log m_p`
//! for `lambda` (exact when `log m_p` is affine in `log p`); the liminf (limsup) estimate is `a` plus the smallest
//! (largest) residual, clamped by the last value when the tail is monotone. When the
//! residuals are too wide for that model the raw window extrema are reported instead.

use crate::error::{Error, Result};
use crate::indices::estimate::{fit_tail, window_truncations, IndexEstimate, IndexValue, TailFit};
use crate::seqcore::SeqTable;
use crate::tolerances::{BURN_IN, MIN_ANALYSIS_N, OMEGA_SENTINEL, TOL_GROW, TOL_IDX};

pub(crate) fn tail_start(n: usize) -> usize {
    BURN_IN.max((n as f64).sqrt().ceil() as usize)
}

pub(crate) struct RatioWindow {
    pub fit: TailFit,
    /// Fitted values are reciprocals of the order (the `lambda` windows).
    reciprocal: bool,
    raw_min: f64,
    raw_max: f64,
    last: f64,
    rising: bool,
    falling: bool,
}

impl RatioWindow {
    /// Residuals this wide mean the data do not follow `a + b / log p`;
    /// extrapolating would be meaningless, so raw extrema are used instead.
    /// Reciprocal windows measure the spread in order units (`d omega = d lambda / lambda^2`)
    /// once `lambda > 1`.
    pub fn rejected(&self) -> bool {
        let scale = if self.reciprocal {
            self.fit.intercept.powi(2).max(1.0)
        } else {
            1.0
        };
        self.fit.spread() / scale >= TOL_GROW
    }

    pub fn liminf(&self) -> f64 {
        if self.rejected() {
            self.raw_min
        } else {
            self.clamp(self.fit.liminf())
        }
    }

    pub fn limsup(&self) -> f64 {
        if self.rejected() {
            self.raw_max
        } else {
            self.clamp(self.fit.limsup())
        }
    }

    pub fn center(&self) -> f64 {
        if self.rejected() {
            0.5 * (self.raw_min + self.raw_max)
        } else {
            self.fit.intercept
        }
    }

    /// A monotone tail bounds its own limit by its last value; a fitted extremum on
    /// the wrong side of that bound is a misfit (e.g. geometric rather than `1/log p` decay).
    pub fn clamp(&self, v: f64) -> f64 {
        if self.rejected() {
            return v;
        }
        if self.falling {
            v.min(self.last)
        } else if self.rising {
            v.max(self.last)
        } else {
            v
        }
    }
}

/// `f(log m_p, log p)` gives the point `(x, y)` to fit, or `None` to skip `p`.
pub(crate) fn ratio_window(
    t: &SeqTable,
    n: usize,
    reciprocal: bool,
    f: impl Fn(f64, f64) -> Option<(f64, f64)>,
) -> Option<RatioWindow> {
    let m = t.logm();
    let pts: Vec<(f64, f64)> = (tail_start(n)..n)
        .filter_map(|p| f(m[p], (p as f64).ln()))
        .collect();
    let fit = fit_tail(&pts)?;
    let raw_min = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let raw_max = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    Some(RatioWindow {
        fit,
        reciprocal,
        raw_min,
        raw_max,
        last: pts.last()?.1,
        rising: pts.windows(2).all(|w| w[1].1 >= w[0].1),
        falling: pts.windows(2).all(|w| w[1].1 <= w[0].1),
    })
}

fn order_point(lm: f64, lp: f64) -> Option<(f64, f64)> {
    Some((1.0 / lp, lm / lp))
}

fn exponent_point(lm: f64, lp: f64) -> Option<(f64, f64)> {
    (lm > 0.0).then(|| (1.0 / lm, lp / lm))
}

fn check_len(t: &SeqTable) -> Result<()> {
    if t.n() < MIN_ANALYSIS_N {
        return Err(Error::TruncationTooSmall {
            n: t.n(),
            min: MIN_ANALYSIS_N,
        });
    }
    Ok(())
}

/// `(center, liminf, limsup, fit rejected)` of `log m_p / log p` at the full truncation.
pub fn order_ratio_limits(t: &SeqTable) -> Option<(f64, f64, f64, bool)> {
    ratio_window(t, t.n(), false, order_point)
        .map(|w| (w.center(), w.liminf(), w.limsup(), w.rejected()))
}

pub fn lambda_exponent(t: &SeqTable) -> Result<IndexEstimate> {
    check_len(t)?;
    let m = t.logm();
    if m.iter().all(|&v| v <= 0.0) {
        return Err(Error::Degenerate("every quotient is at most 1".into()));
    }
    let n = t.n();
    let windows: Vec<(usize, f64)> = window_truncations(n)
        .into_iter()
        .filter_map(|k| ratio_window(t, k, true, exponent_point).map(|w| (k, w.limsup().max(0.0))))
        .collect();
    let mut est = IndexEstimate::from_windows(
        "tail-fit limsup of log p / log m_p against 1 / log m_p",
        windows,
    );
    if m[tail_start(n)..].iter().any(|&v| v <= 0.0) {
        est.value = IndexValue::PosInf;
        est.converged = false;
        est.notes
            .push("quotients not yet above 1 in the tail window; reported as +inf".into());
        est.windows.retain(|w| w.1.is_finite());
    }
    Ok(est)
}

pub fn omega(t: &SeqTable) -> Result<IndexEstimate> {
    check_len(t)?;
    let n = t.n();
    let m = t.logm();
    let ks = window_truncations(n);
    let raw: Vec<(usize, f64)> = ks
        .iter()
        .filter(|&&k| k > 2)
        .map(|&k| (k, m[k - 1] / ((k - 1) as f64).ln()))
        .collect();
    let diverging =
        raw.len() == 3 && raw[2].1 > OMEGA_SENTINEL && raw.windows(2).all(|w| w[1].1 > w[0].1);
    if diverging {
        let mut est = IndexEstimate::from_windows("raw ratio log m_p / log p", raw);
        est.value = IndexValue::PosInf;
        est.converged = false;
        est.notes.push(format!(
            "log m_p / log p rises across windows to above {OMEGA_SENTINEL}; diverging"
        ));
        return Ok(est);
    }
    let windows: Vec<(usize, f64)> = ks
        .into_iter()
        .filter_map(|k| ratio_window(t, k, false, order_point).map(|w| (k, w.liminf())))
        .collect();
    if windows.is_empty() {
        return Err(Error::TruncationTooSmall {
            n,
            min: MIN_ANALYSIS_N,
        });
    }
    let mut est = IndexEstimate::from_windows("tail-fit liminf of log m_p / log p", windows);
    if let Ok(lambda) = lambda_exponent(t) {
        if let (Some(l), Some(w)) = (lambda.finite_value(), est.finite_value()) {
            if l > 0.0 {
                let inv = 1.0 / l;
                est.notes.push(format!("1/lambda = {inv}"));
                if (inv - w).abs() > TOL_IDX {
                    est.notes.push(format!(
                        "1/lambda differs from the liminf by {:.3e}; log m_p / log p may have no limit",
                        (inv - w).abs()
                    ));
                }
            }
        }
    }
    Ok(est)
}
