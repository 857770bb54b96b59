//! The Patterson-Selberg zeta function of a cyclic hyperbolic group acting on
//! `H³`, evaluated through its lattice product and its logarithmic series,
//! together with the Ruelle function, the two-factor ratios, the zero lattice,
//! the growth bound and the isometric action itself.

pub mod action;
pub mod growth;
pub mod modular;
pub mod policy;
pub mod zeros;
pub mod zeta;

pub use action::{hyperbolic_action, HyperbolicPoint};
pub use growth::{growth_check, sample_grid, GrowthFit, GrowthSample};
pub use modular::{Mat2, ModularParameter};
pub use policy::{CutoffMode, Estimate, TruncationPolicy};
pub use zeros::{
    verify_zero, z_gamma_product_near_zero, zeros_predicted, ZeroBox, ZeroCheck, ZeroIndex,
};
pub use zeta::{
    ruelle, ruelle_vanishing_order, spectral_r, z_gamma_log_abs, z_gamma_logseries,
    z_gamma_product, z_ratio, Orientation, RatioVariant,
};
