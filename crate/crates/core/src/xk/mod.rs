//! One-dimensional sums, the X=K identity and the checks around it.

mod sums;
mod suites;

pub use sums::{branching_sum, one_dim_sum, rank_bound, typea_one_dim_sum, xk_rhs, NuTerm};
pub use suites::{
    independent_pipeline, rank_probe, verify_properties, verify_strange, verify_strange_on, verify_xk, ComponentCount,
    ProbeReport, ProbeRow, PropertiesReport, StrangeReport, StrangeViolation, XkReport,
};
