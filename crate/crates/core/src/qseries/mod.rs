//! Exact formal power series over the rationals with fractional exponents,
//! numeric q-products, the Dedekind eta function and the f-functions, and
//! partition enumeration.

pub mod eta;
pub mod partitions;
pub mod product;
pub mod series;

pub use eta::{
    dedekind_eta, dedekind_eta_scaled_series, dedekind_eta_series, weber_f, weber_f_eta_quotient,
    weber_f_eta_quotient_series, weber_f_series, WeberIndex,
};
pub use partitions::{count_partitions, enumerate_partitions, PartitionConstraint};
pub use product::{
    numeric_qproduct, partition_gf, series_qproduct, series_qproduct_pow, FactorSign, FactorWeight,
    Parity, QProductSpec,
};
pub use series::{Exponent, FormalSeries, SeriesJson, TermJson, DEFAULT_GRID};
