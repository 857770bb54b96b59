//! `Z_Γ(s)` for the cyclic group generated by `diag(e^{α+iβ}, e^{-(α+iβ)})`.
//!
//! The lattice product
//!
//! ```text
//! Z_Γ(s) = ∏_{k1,k2 ≥ 0} [1 - e^{iβ(k1-k2)} e^{-(k1+k2+s)α}]
//! ```
//!
//! is the defining representation and is entire in `s`: only the finitely
//! many diagonals with `k1 + k2 + Re s ≤ 0` have factors of modulus above one.
//! It is truncated by diagonal (`k1 + k2 ≤ K`) since the modulus of a factor
//! depends on `k1 + k2` only. The logarithmic series, valid for `Re s > 0`,
//! is an independent second route used as a cross-check.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::modular::ModularParameter;
use super::policy::{bounds, Estimate, TruncationPolicy};
use crate::conventions::{Conventions, RReading};
use crate::error::{Error, Result};

/// `e^w - 1` without cancellation for small `|w|`.
pub(crate) fn expm1(w: Complex64) -> Complex64 {
    let (sin_half, cos) = ((w.im / 2.0).sin(), w.im.cos());
    Complex64::new(
        w.re.exp_m1() * cos - 2.0 * sin_half * sin_half,
        w.re.exp() * w.im.sin(),
    )
}

/// Smallest diagonal cutoff whose excluded factors all have modulus below one.
fn min_cutoff(sigma: f64) -> u32 {
    let mut k = 0u32;
    while k as f64 + 1.0 + sigma <= 0.0 {
        k += 1;
    }
    k
}

/// Bound on `|log Z - log Z_K|` from the diagonals beyond `cutoff`.
fn product_log_tail(tau: &ModularParameter, sigma: f64, cutoff: u32) -> f64 {
    let alpha = tau.alpha();
    let r = tau.nome_abs();
    let sum = (-sigma * alpha).exp() * bounds::diagonal_tail(r, cutoff);
    let x_max = (-(cutoff as f64 + 1.0 + sigma) * alpha).exp();
    bounds::log_bound(sum, x_max)
}

fn choose_product_cutoff(
    s: Complex64,
    tau: &ModularParameter,
    policy: &TruncationPolicy,
) -> Result<(u32, f64)> {
    let (k, rel) = policy.choose_cutoff(min_cutoff(s.re), "Z_Γ product", |k| {
        product_log_tail(tau, s.re, k).exp_m1()
    })?;
    Ok((k, rel.ln_1p()))
}

/// Each factor of the diagonal `k`, as the exponent `w` with factor `1 - e^w`.
fn diagonal_exponents(
    tau: &ModularParameter,
    s: Complex64,
    k: u32,
) -> impl Iterator<Item = Complex64> {
    let alpha = tau.alpha();
    let beta = tau.beta();
    let radial = -(s + k as f64) * alpha;
    (0..=k).map(move |k1| {
        let d = 2.0 * k1 as f64 - k as f64;
        radial + Complex64::new(0.0, beta * d)
    })
}

/// `Z_Γ(s)` from the truncated lattice product.
pub fn z_gamma_product(
    s: Complex64,
    tau: &ModularParameter,
    policy: &TruncationPolicy,
) -> Result<Estimate> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain(format!("s = {s} is not finite")));
    }
    let (cutoff, log_tail) = choose_product_cutoff(s, tau, policy)?;
    let mut value = Complex64::new(1.0, 0.0);
    for k in 0..=cutoff {
        for w in diagonal_exponents(tau, s, k) {
            value *= -expm1(w);
        }
    }
    Ok(Estimate::from_log_bound(value, log_tail, cutoff))
}

/// `log|Z_Γ(s)|` summed factor by factor, so large or tiny moduli do not
/// overflow. Returns the value and a bound on its truncation error.
pub fn z_gamma_log_abs(
    s: Complex64,
    tau: &ModularParameter,
    policy: &TruncationPolicy,
) -> Result<(f64, f64)> {
    let (cutoff, log_tail) = choose_product_cutoff(s, tau, policy)?;
    let mut sum = 0.0;
    for k in 0..=cutoff {
        for w in diagonal_exponents(tau, s, k) {
            sum += expm1(w).norm().ln();
        }
    }
    Ok((sum, log_tail))
}

/// `log Z_Γ(s) = -(1/4) Σ_{n ≥ 1} e^{-nα(s-1)} / (n[sinh²(αn/2) + sin²(βn/2)])`.
///
/// Each term is evaluated after multiplying through by `4e^{-αn}`, i.e. as
/// `-e^{-nαs} / (n[(1 - e^{-αn})² + 4e^{-αn} sin²(βn/2)])`, which is the same
/// quantity without the overflow of `sinh²` for large `αn`.
pub fn z_gamma_logseries(
    s: Complex64,
    tau: &ModularParameter,
    policy: &TruncationPolicy,
) -> Result<Estimate> {
    if !(s.re > 0.0) || !s.im.is_finite() {
        return Err(Error::Domain(format!(
            "the logarithmic series diverges for Re s = {} ≤ 0",
            s.re
        )));
    }
    let alpha = tau.alpha();
    let beta = tau.beta();
    let r = tau.nome_abs();
    let sigma = s.re;
    let series_policy = policy.with_max_cutoff(policy.max_terms);
    let tail = |n: u32| -> f64 {
        let next = n as f64 + 1.0;
        (-next * alpha * sigma).exp() / (next * (1.0 - r) * (1.0 - r) * -(-alpha * sigma).exp_m1())
    };
    let (terms, bound) = series_policy.choose_cutoff(1, "log Z_Γ series", tail)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..=terms {
        let nf = n as f64;
        let decay = (-alpha * nf).exp();
        let gap = -(-alpha * nf).exp_m1();
        let sin = (beta * nf / 2.0).sin();
        let denom = nf * (gap * gap + 4.0 * decay * sin * sin);
        sum -= (-s * alpha * nf).exp() / denom;
    }
    Ok(Estimate::new(sum, bound, terms))
}

/// The three-factor Ruelle function `R(s) = Z(s) Z(s+2) / Z(s+1)`.
pub fn ruelle(s: Complex64, tau: &ModularParameter, policy: &TruncationPolicy) -> Result<Estimate> {
    let z0 = z_gamma_product(s, tau, policy)?;
    let z1 = z_gamma_product(s + 1.0, tau, policy)?;
    let z2 = z_gamma_product(s + 2.0, tau, policy)?;
    z0.mul(&z2).div(&z1, policy.pole_tolerance)
}

/// Whether a spectral argument pairs with `q` or with `q̄`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// Denominator shifted by `1 + it`.
    Holomorphic,
    /// Denominator shifted by `1 - it`.
    Antiholomorphic,
}

impl Orientation {
    pub fn step(self, tau: &ModularParameter) -> Complex64 {
        match self {
            Orientation::Holomorphic => Complex64::new(1.0, tau.t()),
            Orientation::Antiholomorphic => Complex64::new(1.0, -tau.t()),
        }
    }

    /// `ξ(1 - it)` or `ξ(1 + it)`.
    pub fn argument(self, xi: f64, tau: &ModularParameter) -> Complex64 {
        match self {
            Orientation::Holomorphic => Complex64::new(xi, -xi * tau.t()),
            Orientation::Antiholomorphic => Complex64::new(xi, xi * tau.t()),
        }
    }
}

/// `R` evaluated at a (possibly already shifted) argument under the chosen
/// reading: the two-factor ratio `Z(σ)/Z(σ + 1 ± it)` or the three-factor
/// Ruelle function.
pub fn spectral_r(
    argument: Complex64,
    tau: &ModularParameter,
    orientation: Orientation,
    reading: RReading,
    policy: &TruncationPolicy,
) -> Result<Estimate> {
    match reading {
        RReading::Ratio => {
            let num = z_gamma_product(argument, tau, policy)?;
            let den = z_gamma_product(argument + orientation.step(tau), tau, policy)?;
            num.div(&den, policy.pole_tolerance)
        }
        RReading::Triple => ruelle(argument, tau, policy),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RatioVariant {
    /// `Z(s) / Z(s + 1 + it)`
    Plain,
    /// `Z(s) / Z(s + 1 - it)`
    Conjugate,
    /// `Z(s + iη) / Z(s + iη + 1 + it)`
    EtaShifted,
    /// `Z(s + iη) / Z(s + iη + 1 - it)`
    ConjugateEtaShifted,
}

impl RatioVariant {
    pub fn orientation(self) -> Orientation {
        match self {
            RatioVariant::Plain | RatioVariant::EtaShifted => Orientation::Holomorphic,
            RatioVariant::Conjugate | RatioVariant::ConjugateEtaShifted => {
                Orientation::Antiholomorphic
            }
        }
    }

    pub fn eta_shifted(self) -> bool {
        matches!(
            self,
            RatioVariant::EtaShifted | RatioVariant::ConjugateEtaShifted
        )
    }
}

/// The two-factor ratios of the generating-function table. Only the η sign
/// and reading of `conventions` are used.
pub fn z_ratio(
    s: Complex64,
    tau: &ModularParameter,
    variant: RatioVariant,
    conventions: &Conventions,
    policy: &TruncationPolicy,
) -> Result<Estimate> {
    let shift = if variant.eta_shifted() {
        Complex64::i() * tau.eta(conventions.eta_sign, conventions.eta_reading)
    } else {
        Complex64::new(0.0, 0.0)
    };
    spectral_r(
        s + shift,
        tau,
        variant.orientation(),
        RReading::Ratio,
        policy,
    )
}

/// Local order-of-vanishing estimates of the Ruelle function at `s = 0`:
/// `log2 |R(ε 2^{-k})| - log2 |R(ε 2^{-k-1})|` for `k = 0..steps`.
pub fn ruelle_vanishing_order(
    tau: &ModularParameter,
    epsilon: f64,
    steps: u32,
    policy: &TruncationPolicy,
) -> Result<Vec<f64>> {
    let values = (0..=steps)
        .map(|k| {
            let s = Complex64::new(epsilon * 0.5f64.powi(k as i32), 0.0);
            ruelle(s, tau, policy).map(|r| r.value.norm())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(values.windows(2).map(|w| (w[0] / w[1]).log2()).collect())
}
