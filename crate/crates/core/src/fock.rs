//! Characters of (super-)Heisenberg Fock spaces and the graded-dimension
//! series of wreath-product equivariant K-theory.
//!
//! Group data enters only through the integers `dim V_even`, `dim V_odd`
//! (or `dim K⁰`, `dim K¹`), the orbifold Euler number `e(X, Γ)` and the
//! number of conjugacy classes `|Γ_*|`.

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::conventions::Conventions;
use crate::error::{Error, Result};
use crate::qseries::{
    numeric_qproduct, partition_gf, series_qproduct_pow, Exponent, FactorSign, FormalSeries,
    QProductSpec, DEFAULT_GRID,
};
use crate::spectral::{spectral_r, Estimate, ModularParameter, Orientation, TruncationPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharacterSpec {
    pub dim_even: u32,
    pub dim_odd: u32,
}

impl CharacterSpec {
    pub fn new(dim_even: u32, dim_odd: u32) -> Self {
        Self { dim_even, dim_odd }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WreathSpec {
    pub euler_number: i64,
    pub class_count: u32,
}

impl WreathSpec {
    pub fn new(euler_number: i64, class_count: u32) -> Result<Self> {
        if class_count == 0 {
            return Err(Error::Domain(
                "a group has at least one conjugacy class".into(),
            ));
        }
        Ok(Self {
            euler_number,
            class_count,
        })
    }
}

/// A product-side value next to one or more spectral-side readings of it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralComparison {
    pub product: Estimate,
    pub forms: Vec<SpectralForm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralForm {
    pub label: String,
    pub value: Option<Estimate>,
    /// `|product - value|`; `None` when the spectral side has a pole.
    pub residual: Option<f64>,
    pub note: Option<String>,
}

impl SpectralForm {
    fn compare(label: &str, product: &Estimate, value: Result<Estimate>) -> Result<Self> {
        match value {
            Ok(v) => Ok(Self {
                label: label.to_string(),
                residual: Some((v.value - product.value).norm()),
                value: Some(v),
                note: None,
            }),
            Err(err @ Error::Pole(_)) => Ok(Self {
                label: label.to_string(),
                value: None,
                residual: None,
                note: Some(err.to_string()),
            }),
            Err(err) => Err(err),
        }
    }
}

/// `R(argument)^power`, or exactly one when `power == 0`.
fn r_power(
    argument: Complex64,
    power: i64,
    tau: &ModularParameter,
    conventions: &Conventions,
    policy: &TruncationPolicy,
) -> Result<Estimate> {
    if power == 0 {
        return Ok(Estimate::exact(Complex64::new(1.0, 0.0)));
    }
    spectral_r(
        argument,
        tau,
        Orientation::Holomorphic,
        conventions.r_reading,
        policy,
    )?
    .powi(power)
}

fn i_eta(tau: &ModularParameter, conventions: &Conventions) -> Complex64 {
    Complex64::i() * tau.eta(conventions.eta_sign, conventions.eta_reading)
}

fn plus_spec() -> QProductSpec {
    QProductSpec::new(1, Exponent::zero(), FactorSign::Plus)
}

/// `Tr q^D = ∏(1 - q^n)^{-1}` for the Heisenberg algebra of rank one.
pub fn heisenberg_character(order: u32) -> Result<FormalSeries> {
    partition_gf(order)
}

/// `∏_{n ≥ 1} (1 + q^n)^{d_odd} / (1 - q^n)^{d_even}`.
pub fn super_character_series(spec: &CharacterSpec, order: u32) -> Result<FormalSeries> {
    let odd = series_qproduct_pow(&plus_spec(), DEFAULT_GRID, order, spec.dim_odd as i64)?;
    let even = series_qproduct_pow(
        &QProductSpec::euler(),
        DEFAULT_GRID,
        order,
        -(spec.dim_even as i64),
    )?;
    Ok(&odd * &even)
}

/// The character at `τ`, compared with `R(1 - it + iη)^{d_odd} / R(1 - it)^{d_even}`.
pub fn super_character(
    spec: &CharacterSpec,
    tau: &ModularParameter,
    conventions: &Conventions,
    policy: &TruncationPolicy,
) -> Result<SpectralComparison> {
    let odd = numeric_qproduct(&plus_spec(), tau, policy)?.powi(spec.dim_odd as i64)?;
    let even =
        numeric_qproduct(&QProductSpec::euler(), tau, policy)?.powi(-(spec.dim_even as i64))?;
    let product = odd.mul(&even);
    let base = Orientation::Holomorphic.argument(1.0, tau);
    let spectral = r_power(
        base + i_eta(tau, conventions),
        spec.dim_odd as i64,
        tau,
        conventions,
        policy,
    )
    .and_then(|num| {
        Ok(num.mul(&r_power(
            base,
            -(spec.dim_even as i64),
            tau,
            conventions,
            policy,
        )?))
    });
    Ok(SpectralComparison {
        product,
        forms: vec![SpectralForm::compare(
            "R(1-it+i eta)^odd / R(1-it)^even",
            &product,
            spectral,
        )?],
    })
}

/// `STr q^D = ∏(1 - q^n)^{d_odd - d_even}`.
pub fn super_supertrace(spec: &CharacterSpec, order: u32) -> Result<FormalSeries> {
    let power = spec.dim_odd as i64 - spec.dim_even as i64;
    series_qproduct_pow(&QProductSpec::euler(), DEFAULT_GRID, order, power)
}

/// `Σ_N q^N e(X^N, H̃Γ_N) = ∏_{n ≥ 1}(1 - q^{2n-1})^{-e(X, Γ)}`.
pub fn ktheory_euler_series(spec: &WreathSpec, order: u32) -> Result<FormalSeries> {
    series_qproduct_pow(
        &QProductSpec::odd(FactorSign::Minus),
        DEFAULT_GRID,
        order,
        -spec.euler_number,
    )
}

/// The series at `τ`, compared with `R(1/2 - (1/2)it)^{-e}`.
pub fn ktheory_euler(
    spec: &WreathSpec,
    tau: &ModularParameter,
    conventions: &Conventions,
    policy: &TruncationPolicy,
) -> Result<SpectralComparison> {
    let product = numeric_qproduct(&QProductSpec::odd(FactorSign::Minus), tau, policy)?
        .powi(-spec.euler_number)?;
    let arg = Orientation::Holomorphic.argument(0.5, tau);
    let spectral = r_power(arg, -spec.euler_number, tau, conventions, policy);
    Ok(SpectralComparison {
        product,
        forms: vec![SpectralForm::compare(
            "R(1/2-(1/2)it)^-e",
            &product,
            spectral,
        )?],
    })
}

/// `dim_q F⁻_Γ(X) = ∏_{n ≥ 1} (1 + q^{2n-1})^{dim K¹} / (1 - q^{2n-1})^{dim K⁰}`,
/// with `dim_even = dim K⁰` and `dim_odd = dim K¹`.
pub fn fock_graded_dim_series(spec: &CharacterSpec, order: u32) -> Result<FormalSeries> {
    let odd = series_qproduct_pow(
        &QProductSpec::odd(FactorSign::Plus),
        DEFAULT_GRID,
        order,
        spec.dim_odd as i64,
    )?;
    let even = series_qproduct_pow(
        &QProductSpec::odd(FactorSign::Minus),
        DEFAULT_GRID,
        order,
        -(spec.dim_even as i64),
    )?;
    Ok(&odd * &even)
}

/// The graded dimension at `τ`, compared with the spectral form under two
/// placements of the η shift in the odd factor: `+ (1/2)iη` as displayed
/// with the formula, and `+ iη` as in the generating-function table.
pub fn fock_graded_dim(
    spec: &CharacterSpec,
    tau: &ModularParameter,
    conventions: &Conventions,
    policy: &TruncationPolicy,
) -> Result<SpectralComparison> {
    let odd = numeric_qproduct(&QProductSpec::odd(FactorSign::Plus), tau, policy)?
        .powi(spec.dim_odd as i64)?;
    let even = numeric_qproduct(&QProductSpec::odd(FactorSign::Minus), tau, policy)?
        .powi(-(spec.dim_even as i64))?;
    let product = odd.mul(&even);
    let base = Orientation::Holomorphic.argument(0.5, tau);
    let shift = i_eta(tau, conventions);
    let mut forms = Vec::with_capacity(2);
    for (label, eta_factor) in [("half eta shift", 0.5), ("full eta shift", 1.0)] {
        let value = r_power(
            base + shift * eta_factor,
            spec.dim_odd as i64,
            tau,
            conventions,
            policy,
        )
        .and_then(|num| {
            Ok(num.mul(&r_power(
                base,
                -(spec.dim_even as i64),
                tau,
                conventions,
                policy,
            )?))
        });
        forms.push(SpectralForm::compare(label, &product, value)?);
    }
    Ok(SpectralComparison { product, forms })
}

/// `∏(1 - q^{2n-1})^{-|Γ_*|}`, the point case.
pub fn point_case_series(class_count: u32, order: u32) -> Result<FormalSeries> {
    let spec = WreathSpec::new(class_count as i64, class_count)?;
    ktheory_euler_series(&spec, order)
}
