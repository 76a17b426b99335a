//! Finite-truncation growth analysis of positive sequences `M_p`.
//!
//! Sequences are held as log-quotients `log m_p = log(M_{p+1}/M_p)`. The crate decides
//! logarithmic convexity, moderate growth and strong non-quasianalyticity with a
//! three-valued verdict, evaluates the associated function `M(t)`, and estimates the
//! lower order `omega`, the convergence exponent `lambda` and the growth index `gamma`.

// `!(x > y)` is used on purpose so that NaN takes the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod corpus;
pub mod error;
pub mod growthfn;
pub mod indices;
pub mod regvar;
pub mod report;
pub mod seqcore;
pub mod specstr;
pub mod tolerances;

pub use error::{Error, Result};
pub use growthfn::GrowthEvaluator;
pub use indices::{IndexEstimate, IndexValue};
pub use report::{analyze, analyze_spec, compare, plot_data, AnalysisReport, CompareReport};
pub use seqcore::{materialize, PropertyVerdict, QuotientSpec, SeqTable, Status, Witness};
pub use specstr::parse_spec;
