//! Numeric thresholds shared by every check. Values are in log units unless noted.

/// Relative slack for comparisons that are algebraic identities.
pub const TOL_EXACT: f64 = 1e-12;
/// Growth across a truncation ladder larger than this counts as unbounded.
pub const TOL_GROW: f64 = 0.1;
/// Agreement threshold for index estimates.
pub const TOL_IDX: f64 = 5e-3;
/// Final bisection bracket width for the growth index.
pub const GAMMA_TOL: f64 = 0.02;
pub const GAMMA_MAX_ITER: usize = 16;
/// Indices below this are excluded from tail statistics.
pub const BURN_IN: usize = 16;
/// Minimum tail minimum of `log m_{kp} - log m_p` accepted as bounded away from zero.
pub const DELTA_SNQ: f64 = 0.05;
pub const SNQ_KMAX: usize = 4;
/// Ratio `log m_p / log p` beyond which the lower index is reported as diverging.
pub const OMEGA_SENTINEL: f64 = 1e3;
pub const DEFAULT_N: usize = 100_000;
pub const MIN_ANALYSIS_N: usize = 64;

pub const MORICZ_UPPER: [f64; 4] = [1.001, 1.01, 1.05, 1.1];
pub const MORICZ_LOWER: [f64; 4] = [0.999, 0.99, 0.95, 0.9];

/// `|a - b| <= TOL_EXACT * max(1, |a|, |b|)`.
pub fn close_exact(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL_EXACT * 1f64.max(a.abs()).max(b.abs())
}
