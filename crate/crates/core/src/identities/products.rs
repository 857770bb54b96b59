//! Product identities among the f-functions: `f1·f2·f3 = 1`, its spectral
//! counterpart as a product of three `R` factors, and the Euler bracket
//! `∏(1 - q^{2n-1})^{-e} = [q^{-25/24}(q - 1) f3(q)]^e`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use super::report::{CheckKind, IdentityReport};
use crate::conventions::{Conventions, IndexBase};
use crate::error::{Error, Result};
use crate::hilbert::format_tau;
use crate::qseries::numeric_qproduct;
use crate::qseries::series::ratio_to_f64;
use crate::qseries::{
    series_qproduct_pow, weber_f, weber_f_series, Exponent, FactorSign, FormalSeries, QProductSpec,
    WeberIndex, DEFAULT_GRID,
};
use crate::spectral::{spectral_r, Estimate, ModularParameter, Orientation, TruncationPolicy};

pub const F_TRIPLE_TOLERANCE: f64 = 1e-10;
pub const RUELLE_TRIPLE_TOLERANCE: f64 = 1e-8;
pub const EULER_BRACKET_TOLERANCE: f64 = 1e-10;

fn base_kind(base: IndexBase) -> CheckKind {
    match base {
        IndexBase::Zero => CheckKind::Hard,
        IndexBase::One => CheckKind::Audit,
    }
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// `f1·f2·f3` as an exact series against `1`.
pub fn verify_f_triple_series(order: u32, base: IndexBase) -> Result<IdentityReport> {
    let mut product = FormalSeries::one(DEFAULT_GRID, order)?;
    for index in WeberIndex::all() {
        product = &product * &weber_f_series(index, order, base)?;
    }
    let unit = FormalSeries::one(DEFAULT_GRID, order)?;
    let conventions = Conventions::default().with_index_base(base);
    Ok(IdentityReport::series(
        "f-triple-series",
        base_kind(base),
        conventions,
        &product,
        &unit,
    )?
    .param("order", order))
}

fn f_triple_numeric_value(
    tau: &ModularParameter,
    base: IndexBase,
    policy: &TruncationPolicy,
) -> Result<Estimate> {
    let mut product = Estimate::exact(one());
    for index in WeberIndex::all() {
        product = product.mul(&weber_f(index, tau, base, policy)?);
    }
    Ok(product)
}

/// `f1(τ)·f2(τ)·f3(τ)` against `1`.
pub fn verify_f_triple_numeric(
    tau: &ModularParameter,
    base: IndexBase,
    tolerance: f64,
    policy: &TruncationPolicy,
) -> Result<IdentityReport> {
    let product = f_triple_numeric_value(tau, base, policy)?;
    let conventions = Conventions::default().with_index_base(base);
    Ok(IdentityReport::numeric(
        "f-triple-numeric",
        base_kind(base),
        conventions,
        &product,
        &Estimate::exact(one()),
        tolerance,
    )
    .param("tau", format_tau(tau)))
}

/// `R(3/2 - (3/2)it) · R(3/2 - (3/2)it + iη) · R(2 - 2it + iη)` against `1`.
///
/// Under the two-factor reading with the half-period shift the product is
/// `f1·f2·f3` with the `m ≥ 1` products, which is `1/(1 - q²)`; that value is
/// attached as a detail.
pub fn verify_ruelle_triple(
    tau: &ModularParameter,
    conventions: &Conventions,
    tolerance: f64,
    policy: &TruncationPolicy,
) -> Result<IdentityReport> {
    const ID: &str = "ruelle-triple";
    let shift = Complex64::i() * tau.eta(conventions.eta_sign, conventions.eta_reading);
    let h = Orientation::Holomorphic;
    let arguments = [
        h.argument(1.5, tau),
        h.argument(1.5, tau) + shift,
        h.argument(2.0, tau) + shift,
    ];
    let value = arguments
        .iter()
        .try_fold(Estimate::exact(one()), |acc, &arg| {
            spectral_r(arg, tau, h, conventions.r_reading, policy).map(|r| acc.mul(&r))
        });
    let m_one = f_triple_numeric_value(tau, IndexBase::One, policy)?;
    let report = match value {
        Ok(value) => IdentityReport::numeric(
            ID,
            CheckKind::Audit,
            *conventions,
            &value,
            &Estimate::exact(one()),
            tolerance,
        ),
        Err(err @ Error::Pole(_)) => {
            IdentityReport::undefined(ID, CheckKind::Audit, *conventions, tolerance, &err)
        }
        Err(err) => return Err(err),
    };
    Ok(report
        .param("tau", format_tau(tau))
        .detail("f_triple_m1", [m_one.value.re, m_one.value.im]))
}

/// `q - 1` as an exact series.
fn q_minus_one(order: u32) -> Result<FormalSeries> {
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    FormalSeries::from_terms(
        DEFAULT_GRID,
        Exponent::zero(),
        Exponent::from(order as i64),
        [(Exponent::zero(), int(-1)), (Exponent::from(1), int(1))],
    )
}

fn bracket_shift() -> Exponent {
    Exponent::new(-25, 24)
}

fn odd_minus() -> QProductSpec {
    QProductSpec::odd(FactorSign::Minus)
}

/// The bracket side, its left side and their quotient `bracket/lhs` as exact
/// series (the deviation factor: `1` iff the chain holds).
fn euler_bracket_series(e: u32, order: u32, base: IndexBase) -> Result<[FormalSeries; 3]> {
    let lhs = series_qproduct_pow(&odd_minus(), DEFAULT_GRID, order, -(e as i64))?;
    // one extra order so the q^{-1} prefactor does not cost precision
    let f3 = weber_f_series(WeberIndex::F3, order + 1, base)?;
    let bracket = (&q_minus_one(order + 1)? * &f3).shift(bracket_shift());
    let rhs = bracket.pow(e as i64)?;
    let inverse_lhs = series_qproduct_pow(&odd_minus(), DEFAULT_GRID, order, e as i64)?;
    let deviation = &rhs * &inverse_lhs;
    Ok([lhs, rhs, deviation])
}

/// Exact-series audit of the Euler bracket for `e ≥ 0`.
pub fn audit_euler_bracket_series(e: u32, order: u32, base: IndexBase) -> Result<IdentityReport> {
    let [lhs, rhs, deviation] = euler_bracket_series(e, order, base)?;
    let conventions = Conventions::default().with_index_base(base);
    Ok(IdentityReport::series(
        "euler-bracket-series",
        CheckKind::Audit,
        conventions,
        &lhs,
        &rhs,
    )?
    .param("e", e)
    .param("order", order)
    .detail("deviation_factor", deviation.to_json()))
}

/// Numeric audit of the Euler bracket at `τ`. Details record the observed
/// quotient `rhs/lhs`, the exact deviation series evaluated at `q`, and the
/// spectral form `R(1/2 - (1/2)it)^{-e}`.
pub fn audit_euler_bracket_numeric(
    e: u32,
    tau: &ModularParameter,
    conventions: &Conventions,
    tolerance: f64,
    policy: &TruncationPolicy,
) -> Result<IdentityReport> {
    let power = e as i64;
    let lhs = numeric_qproduct(&odd_minus(), tau, policy)?.powi(-power)?;
    let f3 = weber_f(WeberIndex::F3, tau, conventions.index_base, policy)?;
    let prefactor = tau.q_power(ratio_to_f64(bracket_shift())) * (tau.q() - 1.0);
    let rhs = f3.scale(prefactor).powi(power)?;
    let observed = rhs.div(&lhs, policy.pole_tolerance)?.value;
    let [_, _, deviation] = euler_bracket_series(e, 12, conventions.index_base)?;
    let predicted = deviation.evaluate(tau);
    let arg = Orientation::Holomorphic.argument(0.5, tau);
    let spectral = spectral_r(
        arg,
        tau,
        Orientation::Holomorphic,
        conventions.r_reading,
        policy,
    )
    .and_then(|r| r.powi(-power));
    let mut report = IdentityReport::numeric(
        "euler-bracket-numeric",
        CheckKind::Audit,
        *conventions,
        &lhs,
        &rhs,
        tolerance,
    )
    .param("e", e)
    .param("tau", format_tau(tau))
    .detail("deviation_observed", [observed.re, observed.im])
    .detail("deviation_from_series", [predicted.re, predicted.im])
    .detail("deviation_consistency", (observed - predicted).norm());
    report = match spectral {
        Ok(v) => report
            .detail("spectral_form", [v.value.re, v.value.im])
            .detail("spectral_form_residual", (v.value - lhs.value).norm()),
        Err(err @ Error::Pole(_)) => report.detail("spectral_form", err.to_string()),
        Err(err) => return Err(err),
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::report::Verdict;

    #[test]
    fn f_triple_is_one_from_zero() {
        let r = verify_f_triple_series(20, IndexBase::Zero).unwrap();
        assert_eq!(r.kind, CheckKind::Hard);
        assert_eq!(r.residual, Some(0.0));
        assert!(r.passed());
    }

    #[test]
    fn f_triple_from_one_deviates_at_q_squared() {
        let r = verify_f_triple_series(6, IndexBase::One).unwrap();
        assert_eq!(r.kind, CheckKind::Audit);
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.details["leading_deviation_exponent"], "2");
    }

    #[test]
    fn f_triple_numeric_at_i() {
        let tau = ModularParameter::new(0.0, 1.0).unwrap();
        let r = verify_f_triple_numeric(
            &tau,
            IndexBase::Zero,
            F_TRIPLE_TOLERANCE,
            &TruncationPolicy::default(),
        )
        .unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.residual.unwrap() < 1e-10);
    }

    #[test]
    fn ruelle_triple_matches_the_shifted_f_product() {
        let tau = ModularParameter::new(0.3, 1.1).unwrap();
        let policy = TruncationPolicy::default();
        let r = verify_ruelle_triple(
            &tau,
            &Conventions::default(),
            RUELLE_TRIPLE_TOLERANCE,
            &policy,
        )
        .unwrap();
        let lhs = match r.lhs.clone().unwrap() {
            crate::identities::ReportValue::Complex { re, im } => Complex64::new(re, im),
            _ => unreachable!(),
        };
        let expected = (one() - tau.q() * tau.q()).inv();
        assert!((lhs - expected).norm() < 1e-10);
        // so the residual is of size |q|²
        let residual = r.residual.unwrap();
        assert!((residual - (expected - one()).norm()).abs() < 1e-10);
    }

    #[test]
    fn ruelle_triple_runs_under_every_convention() {
        let tau = ModularParameter::new(0.0, 1.2).unwrap();
        let policy = TruncationPolicy::default();
        for conv in Conventions::spectral_grid(IndexBase::Zero) {
            let r = verify_ruelle_triple(&tau, &conv, RUELLE_TRIPLE_TOLERANCE, &policy).unwrap();
            assert_eq!(r.kind, CheckKind::Audit);
            assert!(r.residual.is_some() || r.verdict == Verdict::Undefined);
        }
    }

    #[test]
    fn euler_bracket_trivial_for_e_zero() {
        let r = audit_euler_bracket_series(0, 8, IndexBase::Zero).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn euler_bracket_deviation_factor_is_one_minus_inverse_q() {
        let [_, _, deviation] = euler_bracket_series(1, 8, IndexBase::Zero).unwrap();
        // (q - 1)/q = 1 - q^{-1}
        let int = |v: i64| BigRational::from_integer(BigInt::from(v));
        assert_eq!(
            deviation.terms(),
            vec![(Exponent::from(-1), int(-1)), (Exponent::zero(), int(1))]
        );
        let r = audit_euler_bracket_series(1, 8, IndexBase::Zero).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn euler_bracket_numeric_agrees_with_series_deviation() {
        let tau = ModularParameter::new(0.0, 1.0).unwrap();
        let policy = TruncationPolicy::default();
        for base in [IndexBase::Zero, IndexBase::One] {
            let conv = Conventions::default().with_index_base(base);
            let r = audit_euler_bracket_numeric(1, &tau, &conv, EULER_BRACKET_TOLERANCE, &policy)
                .unwrap();
            let gap = r.details["deviation_consistency"].as_f64().unwrap();
            let observed = r.details["deviation_observed"][0].as_f64().unwrap();
            assert!(gap < 1e-9 * observed.abs(), "{gap} vs {observed}");
        }
    }
}
