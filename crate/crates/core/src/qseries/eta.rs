//! The Dedekind eta function and the three f-functions built from it.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::product::{numeric_qproduct, series_qproduct, FactorSign, QProductSpec};
use super::series::{exponent_steps, ratio_to_f64, Exponent, FormalSeries, DEFAULT_GRID};
use crate::conventions::IndexBase;
use crate::error::{Error, Result};
use crate::spectral::{Estimate, ModularParameter, TruncationPolicy};

/// Exponent of the `q^{1/24}` prefactor of `η`.
pub fn eta_prefactor() -> Exponent {
    Exponent::new(1, 24)
}

/// `η(q) = q^{1/24} ∏_{n ≥ 1}(1 - q^n)` as an exact series of relative order `order`.
pub fn dedekind_eta_series(order: u32) -> Result<FormalSeries> {
    dedekind_eta_scaled_series(Exponent::from(1), order)
}

/// `η(q^λ) = q^{λ/24} ∏_{n ≥ 1}(1 - q^{λn})`, for `λ` on the default grid.
pub fn dedekind_eta_scaled_series(scale: Exponent, order: u32) -> Result<FormalSeries> {
    if order == 0 {
        return Err(Error::InvalidArgument("order must be positive".into()));
    }
    if scale <= Exponent::zero() {
        return Err(Error::Domain(format!("scale {scale} must be positive")));
    }
    let step = exponent_steps(scale, DEFAULT_GRID)?;
    let mut s = FormalSeries::one(DEFAULT_GRID, order)?;
    let limit = order as i64 * DEFAULT_GRID;
    let mut e = step;
    while e < limit {
        s.mul_binomial(true, e as usize, 1);
        e += step;
    }
    Ok(s.shift(scale * eta_prefactor()))
}

pub fn dedekind_eta(tau: &ModularParameter, policy: &TruncationPolicy) -> Result<Estimate> {
    let product = numeric_qproduct(&QProductSpec::euler(), tau, policy)?;
    Ok(product.scale(tau.q_power(ratio_to_f64(eta_prefactor()))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeberIndex {
    F1,
    F2,
    F3,
}

impl TryFrom<u8> for WeberIndex {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        match value {
            1 => Ok(WeberIndex::F1),
            2 => Ok(WeberIndex::F2),
            3 => Ok(WeberIndex::F3),
            other => Err(Error::InvalidArgument(format!(
                "f-function index {other} is not 1, 2 or 3"
            ))),
        }
    }
}

impl WeberIndex {
    pub fn all() -> [WeberIndex; 3] {
        [WeberIndex::F1, WeberIndex::F2, WeberIndex::F3]
    }

    /// `-1/48` for f1 and f2, `1/24` for f3.
    pub fn prefactor(self) -> Exponent {
        match self {
            WeberIndex::F1 | WeberIndex::F2 => Exponent::new(-1, 48),
            WeberIndex::F3 => Exponent::new(1, 24),
        }
    }

    /// The product part of the function with the `m` index starting at `base`.
    pub fn product_spec(self, base: IndexBase) -> QProductSpec {
        let start = base.first();
        match self {
            WeberIndex::F1 => QProductSpec::new(start, Exponent::new(1, 2), FactorSign::Minus),
            WeberIndex::F2 => QProductSpec::new(start, Exponent::new(1, 2), FactorSign::Plus),
            WeberIndex::F3 => QProductSpec::new(start, Exponent::from(1), FactorSign::Plus),
        }
    }
}

/// Product form of `f_index` as an exact series.
pub fn weber_f_series(index: WeberIndex, order: u32, base: IndexBase) -> Result<FormalSeries> {
    let product = series_qproduct(&index.product_spec(base), DEFAULT_GRID, order)?;
    Ok(product.shift(index.prefactor()))
}

/// Product form of `f_index` evaluated at `τ`.
pub fn weber_f(
    index: WeberIndex,
    tau: &ModularParameter,
    base: IndexBase,
    policy: &TruncationPolicy,
) -> Result<Estimate> {
    let product = numeric_qproduct(&index.product_spec(base), tau, policy)?;
    Ok(product.scale(tau.q_power(ratio_to_f64(index.prefactor()))))
}

/// Eta-quotient form: `f1 = η(q^{1/2})/η(q)`, `f2 = η(q)²/(η(q^{1/2})η(q²))`,
/// `f3 = η(q²)/η(q)`, as exact series.
pub fn weber_f_eta_quotient_series(index: WeberIndex, order: u32) -> Result<FormalSeries> {
    let half = dedekind_eta_scaled_series(Exponent::new(1, 2), order)?;
    let one = dedekind_eta_series(order)?;
    let two = dedekind_eta_scaled_series(Exponent::from(2), order)?;
    match index {
        WeberIndex::F1 => Ok(&half * &one.inverse()?),
        WeberIndex::F2 => Ok(&(&one * &one) * &(&half * &two).inverse()?),
        WeberIndex::F3 => Ok(&two * &one.inverse()?),
    }
}

/// Eta-quotient form evaluated at `τ` through `η(τ/2)`, `η(τ)`, `η(2τ)`.
pub fn weber_f_eta_quotient(
    index: WeberIndex,
    tau: &ModularParameter,
    policy: &TruncationPolicy,
) -> Result<Estimate> {
    let half = dedekind_eta(&tau.scaled(0.5)?, policy)?;
    let one = dedekind_eta(tau, policy)?;
    let two = dedekind_eta(&tau.scaled(2.0)?, policy)?;
    let pole = policy.pole_tolerance;
    match index {
        WeberIndex::F1 => half.div(&one, pole),
        WeberIndex::F2 => one.mul(&one).div(&half.mul(&two), pole),
        WeberIndex::F3 => two.div(&one, pole),
    }
}
