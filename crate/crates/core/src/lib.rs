//! Spectral functions of hyperbolic three-geometry and the q-series they
//! generate.
//!
//! * [`spectral`]: the Patterson-Selberg zeta function `Z_Γ(s)` by two
//!   independent routes, the Ruelle function, zeros and growth.
//! * [`qseries`]: exact truncated series with rational coefficients,
//!   q-products, Dedekind eta and the f-functions.
//! * [`hilbert`]: Göttsche's generating function for Hilbert schemes of points.
//! * [`fock`]: Fock-space characters and K-theory dimension series.
//! * [`identities`]: the audit harness that checks the product identities
//!   between the two sides and reports residuals.

pub mod conventions;
pub mod error;
pub mod fock;
pub mod hilbert;
pub mod identities;
pub mod qseries;
pub mod spectral;
pub mod table;

pub use conventions::{Conventions, EtaReading, EtaSign, IndexBase, RReading};
pub use error::{Error, Result};
pub use qseries::{Exponent, FormalSeries, QProductSpec};
pub use spectral::{Estimate, ModularParameter, TruncationPolicy};
