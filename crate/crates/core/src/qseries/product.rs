use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::series::{exponent_steps, ratio_to_f64, Exponent, FormalSeries, DEFAULT_GRID};
use crate::error::{Error, Result};
use crate::spectral::policy::bounds;
use crate::spectral::{Estimate, ModularParameter, TruncationPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorSign {
    /// `(1 - q^x)`
    Minus,
    /// `(1 + q^x)`
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorWeight {
    /// Every factor to the first power.
    Unit,
    /// Factor `m` raised to the power `m`.
    Index,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    All,
    /// Only odd `m`, as in `∏(1 - q^{2n-1})`.
    Odd,
}

/// `∏_{m ≥ start} (1 ± q^{m + shift})^{w(m)}`, optionally restricted to odd `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QProductSpec {
    pub start: u32,
    pub shift: Exponent,
    pub sign: FactorSign,
    pub weight: FactorWeight,
    pub parity: Parity,
}

impl QProductSpec {
    pub fn new(start: u32, shift: Exponent, sign: FactorSign) -> Self {
        Self {
            start,
            shift,
            sign,
            weight: FactorWeight::Unit,
            parity: Parity::All,
        }
    }

    /// `∏_{n ≥ 1}(1 - q^n)`.
    pub fn euler() -> Self {
        Self::new(1, Exponent::zero(), FactorSign::Minus)
    }

    /// `∏_{n ≥ 1}(1 ± q^{2n-1})`.
    pub fn odd(sign: FactorSign) -> Self {
        Self::new(1, Exponent::zero(), sign).with_parity(Parity::Odd)
    }

    pub fn with_weight(mut self, weight: FactorWeight) -> Self {
        self.weight = weight;
        self
    }

    pub fn with_parity(mut self, parity: Parity) -> Self {
        self.parity = parity;
        self
    }

    /// `start + shift`, the exponent of the first factor.
    pub fn xi(&self) -> Exponent {
        Exponent::from(self.start as i64) + self.shift
    }

    pub fn validate(&self) -> Result<()> {
        if self.xi() <= Exponent::zero() {
            return Err(Error::Domain(format!(
                "start + shift = {} must be positive",
                self.xi()
            )));
        }
        Ok(())
    }

    /// The factor indices `m` in increasing order, paired with their weights.
    fn factors(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        let step = match self.parity {
            Parity::All => 1,
            Parity::Odd => 2,
        };
        let first = match self.parity {
            Parity::Odd if self.start % 2 == 0 => self.start + 1,
            _ => self.start,
        };
        (0..).map(move |i| first + step * i).map(move |m| {
            let w = match self.weight {
                FactorWeight::Unit => 1,
                FactorWeight::Index => m as i64,
            };
            (m, w)
        })
    }
}

/// Exact expansion of the product to relative order `order` on grid `grid`.
pub fn series_qproduct(spec: &QProductSpec, grid: i64, order: u32) -> Result<FormalSeries> {
    series_qproduct_pow(spec, grid, order, 1)
}

/// Exact expansion of the product raised to an integer power (negative
/// powers expand the reciprocal).
pub fn series_qproduct_pow(
    spec: &QProductSpec,
    grid: i64,
    order: u32,
    power: i64,
) -> Result<FormalSeries> {
    if order == 0 {
        return Err(Error::InvalidArgument("order must be positive".into()));
    }
    spec.validate()?;
    let shift_steps = exponent_steps(spec.shift, grid)?;
    let mut out = FormalSeries::one(grid, order)?;
    let limit = order as i64 * grid;
    for (m, w) in spec.factors() {
        let step = m as i64 * grid + shift_steps;
        if step >= limit {
            break;
        }
        if w == 0 {
            continue;
        }
        out.mul_binomial(spec.sign == FactorSign::Minus, step as usize, w * power);
    }
    Ok(out)
}

/// Numeric value of the product at `τ`, with the number of factors chosen so
/// that the tail bound meets the policy tolerance.
pub fn numeric_qproduct(
    spec: &QProductSpec,
    tau: &ModularParameter,
    policy: &TruncationPolicy,
) -> Result<Estimate> {
    spec.validate()?;
    let shift = ratio_to_f64(spec.shift);
    let r = tau.nome_abs();
    let xi = ratio_to_f64(spec.xi());
    // the first factor index `m` that is *excluded* is `cutoff`
    let tail = |cutoff: u32| -> f64 {
        let first = (cutoff.max(spec.start)) as f64 + shift;
        let sum = match spec.weight {
            FactorWeight::Unit => bounds::unit_tail(r, first),
            FactorWeight::Index => bounds::index_tail(r, cutoff.max(spec.start), shift),
        };
        bounds::log_bound(sum, r.powf(first.max(xi)))
    };
    let (cutoff, relative_bound) =
        policy.choose_cutoff(spec.start, "q-product", |k| tail(k).exp_m1())?;
    let mut value = Complex64::one();
    for (m, w) in spec.factors() {
        if m >= cutoff {
            break;
        }
        if w == 0 {
            continue;
        }
        let x = tau.q_power(m as f64 + shift);
        let factor = match spec.sign {
            FactorSign::Minus => Complex64::one() - x,
            FactorSign::Plus => Complex64::one() + x,
        };
        value *= factor.powi(w as i32);
    }
    Ok(Estimate::new(value, value.norm() * relative_bound, cutoff))
}

/// `∏_{n ≥ 1}(1 - q^n)^{-1}`; the coefficient of `q^N` is `p(N)`.
pub fn partition_gf(order: u32) -> Result<FormalSeries> {
    series_qproduct_pow(&QProductSpec::euler(), DEFAULT_GRID, order, -1)
}
