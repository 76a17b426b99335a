//! Log-domain sequence tables and the lc / mg / snq property checks.

pub mod equivalence;
pub mod properties;
pub mod spec;
pub mod table;
pub mod verdict;

pub use equivalence::{quotient_equivalent, sequence_equivalent};
pub use properties::{
    check_lc, check_mg, check_mg_product_form, check_snq, check_strongly_regular, StrongRegularity,
};
pub use spec::QuotientSpec;
pub use table::{materialize, parse_table, read_table_file, write_table_file, SeqTable};
pub use verdict::{PropertyVerdict, Status, Witness};
