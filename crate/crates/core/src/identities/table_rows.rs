//! The eight rows of the generating-function table: a q-product on the left,
//! a chain of spectral factors on the right.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::report::{CheckKind, IdentityReport};
use crate::conventions::{Conventions, EtaReading, RReading};
use crate::error::{Error, Result};
use crate::hilbert::format_tau;
use crate::qseries::series::ratio_to_f64;
use crate::qseries::{numeric_qproduct, Exponent, FactorSign, FactorWeight, QProductSpec};
use crate::spectral::policy::bounds;
use crate::spectral::{spectral_r, Estimate, ModularParameter, Orientation, TruncationPolicy};

/// Row shape: the sign of the factors, whether the product is in `q̄`,
/// and whether each factor carries the power `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub row: u8,
    pub sign: FactorSign,
    pub conjugate: bool,
    pub weighted: bool,
}

impl TableRow {
    pub fn new(row: u8) -> Result<Self> {
        if !(1..=8).contains(&row) {
            return Err(Error::InvalidArgument(format!(
                "table row {row} is not in 1..=8"
            )));
        }
        let i = row - 1;
        Ok(Self {
            row,
            sign: if i % 4 < 2 {
                FactorSign::Minus
            } else {
                FactorSign::Plus
            },
            conjugate: i % 2 == 1,
            weighted: i >= 4,
        })
    }

    pub fn orientation(&self) -> Orientation {
        if self.conjugate {
            Orientation::Antiholomorphic
        } else {
            Orientation::Holomorphic
        }
    }

    fn eta_shifted(&self) -> bool {
        self.sign == FactorSign::Plus
    }

    /// Rows 1-4 are hard checks under the two-factor reading with the
    /// half-period shift; everything else is audited.
    pub fn kind(&self, conventions: &Conventions) -> CheckKind {
        let standard = conventions.r_reading == RReading::Ratio
            && (!self.eta_shifted() || conventions.eta_reading == EtaReading::HalfPeriod);
        if !self.weighted && standard {
            CheckKind::Hard
        } else {
            CheckKind::Audit
        }
    }
}

/// The left side: `∏_{n ≥ ℓ}(1 ± q^{n+ε})^{w(n)}`, conjugated for the `q̄` rows.
fn lhs(
    row: &TableRow,
    spec: &QProductSpec,
    tau: &ModularParameter,
    policy: &TruncationPolicy,
) -> Result<Estimate> {
    let value = numeric_qproduct(spec, tau, policy)?;
    Ok(if row.conjugate { value.conj() } else { value })
}

/// Bound on `|log ∏_{n > cutoff} R((n + ε + 1)(1 ∓ it) + shift)|`, valid for
/// both readings of `R` (each is a ratio of at most three `Z` factors, and
/// `|log Z(s)| ≤ r^σ / ((1 - r)² (1 - r^σ))` for `σ = Re s > 0`).
fn chain_tail(r: f64, eps: f64, re_shift: f64, cutoff: u32) -> f64 {
    let first = cutoff as f64 + eps + 2.0 + re_shift;
    let sum = 3.0 * r.powf(first) / ((1.0 - r).powi(3));
    bounds::log_bound(sum, r.powf(first))
}

fn rhs(
    row: &TableRow,
    ell: u32,
    eps: Exponent,
    tau: &ModularParameter,
    conventions: &Conventions,
    policy: &TruncationPolicy,
) -> Result<(Estimate, Option<u32>)> {
    let xi = ell as f64 + ratio_to_f64(eps);
    let shift = if row.eta_shifted() {
        Complex64::i() * tau.eta(conventions.eta_sign, conventions.eta_reading)
    } else {
        Complex64::new(0.0, 0.0)
    };
    let orientation = row.orientation();
    let r_at = |x: f64| {
        spectral_r(
            orientation.argument(x, tau) + shift,
            tau,
            orientation,
            conventions.r_reading,
            policy,
        )
    };
    if !row.weighted {
        return Ok((r_at(xi)?, None));
    }
    let eps_f = ratio_to_f64(eps);
    let (cutoff, rel) = policy.choose_cutoff(ell, "table chain", |k| {
        chain_tail(tau.nome_abs(), eps_f, shift.re, k).exp_m1()
    })?;
    let mut total = if ell == 0 {
        Estimate::exact(Complex64::new(1.0, 0.0))
    } else {
        r_at(xi)?.powi(ell as i64)?
    };
    for n in ell..=cutoff {
        total = total.mul(&r_at(n as f64 + eps_f + 1.0)?);
    }
    let chain_bound = total.value.norm() * rel;
    Ok((
        Estimate::new(total.value, total.tail_bound + chain_bound, cutoff),
        Some(cutoff),
    ))
}

/// Checks one row of the table at `(ℓ, ε, τ)`.
pub fn verify_table_row(
    row: u8,
    ell: u32,
    eps: Exponent,
    tau: &ModularParameter,
    conventions: &Conventions,
    tolerance: f64,
    policy: &TruncationPolicy,
) -> Result<IdentityReport> {
    let shape = TableRow::new(row)?;
    let mut spec = QProductSpec::new(ell, eps, shape.sign);
    if shape.weighted {
        spec = spec.with_weight(FactorWeight::Index);
    }
    spec.validate()?;
    let id = format!("table1-row{row}");
    let kind = shape.kind(conventions);
    let left = lhs(&shape, &spec, tau, policy)?;
    let report = match rhs(&shape, ell, eps, tau, conventions, policy) {
        Ok((right, chain)) => {
            let r = IdentityReport::numeric(&id, kind, *conventions, &left, &right, tolerance);
            match chain {
                Some(n) => r.detail("chain_cutoff", n),
                None => r,
            }
        }
        Err(err @ Error::Pole(_)) => {
            IdentityReport::undefined(&id, kind, *conventions, tolerance, &err).with_lhs(left.value)
        }
        Err(err) => return Err(err),
    };
    Ok(report
        .param("row", row)
        .param("ell", ell)
        .param("eps", eps)
        .param("tau", format_tau(tau)))
}
