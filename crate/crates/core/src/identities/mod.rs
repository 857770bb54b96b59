//! The audit harness: each identity is evaluated on both sides and reported
//! with its residual, tail budget and the conventions it was tested under.

pub mod checks;
pub mod products;
pub mod report;
pub mod suite;
pub mod table_rows;

pub use checks::{cross_check_grid, cross_check_z, zero_indices, zero_report};
pub use products::{
    audit_euler_bracket_numeric, audit_euler_bracket_series, verify_f_triple_numeric,
    verify_f_triple_series, verify_ruelle_triple,
};
pub use report::{CheckKind, IdentityReport, ReportValue, Verdict};
pub use suite::{
    all_hard_pass, manifest, run_suite, standard_tau_grid, ManifestEntry, Suite, SuiteConfig,
};
pub use table_rows::{verify_table_row, TableRow};
