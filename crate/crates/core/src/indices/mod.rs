//! Growth indices, the alpha/beta transform, logarithmic means and the proximate-order verdict.

pub mod alpha_beta;
pub mod estimate;
pub mod exponents;
pub mod moricz;
pub mod proximate;
pub mod riesz;

pub use alpha_beta::{alpha_beta, alpha_from_beta, AlphaBeta};
pub use estimate::{fit_tail, IndexEstimate, IndexValue, TailFit};
pub use exponents::{lambda_exponent, omega, order_ratio_limits};
pub use moricz::{moricz_scan, MoriczPoint, MoriczScan};
pub use proximate::{
    condition_b, condition_c, condition_d, proximate_order_verdict, step_limit, Cluster,
    ConditionResult, ProximateOrderStatus, ProximateOrderVerdict, StepLimit,
};
pub use riesz::{riesz_mean, riesz_means};
