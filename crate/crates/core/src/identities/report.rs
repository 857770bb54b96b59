use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::conventions::Conventions;
use crate::error::{Error, Result};
use crate::qseries::{FormalSeries, SeriesJson};
use crate::spectral::Estimate;

/// Hard checks fail a verification run; audits only report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Hard,
    Audit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// One side could not be evaluated (a pole, for instance).
    Undefined,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ReportValue {
    Complex { re: f64, im: f64 },
    Series(SeriesJson),
}

impl From<Complex64> for ReportValue {
    fn from(z: Complex64) -> Self {
        ReportValue::Complex { re: z.re, im: z.im }
    }
}

impl From<&FormalSeries> for ReportValue {
    fn from(s: &FormalSeries) -> Self {
        ReportValue::Series(s.to_json())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub kind: CheckKind,
    pub params: BTreeMap<String, String>,
    pub conventions: Conventions,
    pub lhs: Option<ReportValue>,
    pub rhs: Option<ReportValue>,
    /// `|lhs - rhs|`, or for series the largest coefficient of the difference.
    pub residual: Option<f64>,
    pub tail_budget: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub details: BTreeMap<String, Value>,
}

impl IdentityReport {
    fn blank(id: &str, kind: CheckKind, conventions: Conventions, tolerance: f64) -> Self {
        Self {
            id: id.to_string(),
            kind,
            params: BTreeMap::new(),
            conventions,
            lhs: None,
            rhs: None,
            residual: None,
            tail_budget: 0.0,
            tolerance,
            verdict: Verdict::Undefined,
            details: BTreeMap::new(),
        }
    }

    /// Compares two numeric estimates: pass iff the residual is within the
    /// combined tail bounds plus `tolerance`.
    pub fn numeric(
        id: &str,
        kind: CheckKind,
        conventions: Conventions,
        lhs: &Estimate,
        rhs: &Estimate,
        tolerance: f64,
    ) -> Self {
        let mut report = Self::blank(id, kind, conventions, tolerance);
        report.lhs = Some(lhs.value.into());
        report.rhs = Some(rhs.value.into());
        report.tail_budget = lhs.tail_bound + rhs.tail_bound;
        report.set_residual((lhs.value - rhs.value).norm());
        report
    }

    /// Compares two exact series after truncating both to the lower order.
    pub fn series(
        id: &str,
        kind: CheckKind,
        conventions: Conventions,
        lhs: &FormalSeries,
        rhs: &FormalSeries,
    ) -> Result<Self> {
        let order = lhs.order().min(rhs.order());
        let (lhs, rhs) = (lhs.truncate(order)?, rhs.truncate(order)?);
        let diff = lhs.checked_sub(&rhs)?;
        let mut report = Self::blank(id, kind, conventions, 0.0);
        report.lhs = Some((&lhs).into());
        report.rhs = Some((&rhs).into());
        report.set_residual(diff.max_abs_coefficient());
        if let Some((exponent, _)) = diff.terms().first() {
            report = report.detail("leading_deviation_exponent", exponent.to_string());
        }
        Ok(report)
    }

    /// A report for a check whose sides could not both be evaluated.
    pub fn undefined(
        id: &str,
        kind: CheckKind,
        conventions: Conventions,
        tolerance: f64,
        reason: &Error,
    ) -> Self {
        Self::blank(id, kind, conventions, tolerance).detail("undefined", reason.to_string())
    }

    /// A report carrying only an aggregate residual and budget.
    pub fn summary(
        id: &str,
        kind: CheckKind,
        conventions: Conventions,
        residual: f64,
        tail_budget: f64,
        tolerance: f64,
    ) -> Self {
        let mut report = Self::blank(id, kind, conventions, tolerance);
        report.tail_budget = tail_budget;
        report.set_residual(residual);
        report
    }

    /// Marks the report failed with `reason` when `condition` holds.
    pub fn fail_if(mut self, condition: bool, reason: &str) -> Self {
        if condition {
            self.verdict = Verdict::Fail;
            self.details
                .insert("failure".to_string(), Value::String(reason.to_string()));
        }
        self
    }

    fn set_residual(&mut self, residual: f64) {
        self.residual = Some(residual);
        self.verdict = if residual <= self.tail_budget + self.tolerance {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
    }

    pub fn with_lhs(mut self, lhs: impl Into<ReportValue>) -> Self {
        self.lhs = Some(lhs.into());
        self
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn detail(mut self, key: &str, value: impl Serialize) -> Self {
        let value = serde_json::to_value(value).unwrap_or(Value::Null);
        self.details.insert(key.to_string(), value);
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// True for a hard check that did not pass.
    pub fn is_hard_failure(&self) -> bool {
        self.kind == CheckKind::Hard && !self.passed()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{partition_gf, series_qproduct, QProductSpec, DEFAULT_GRID};

    #[test]
    fn verdict_uses_budget_and_tolerance() {
        let a = Estimate::new(Complex64::new(1.0, 0.0), 1e-9, 3);
        let b = Estimate::new(Complex64::new(1.0 + 2e-9, 0.0), 0.0, 3);
        let r = IdentityReport::numeric("x", CheckKind::Hard, Conventions::default(), &a, &b, 1e-9);
        assert!(r.passed());
        let r = IdentityReport::numeric("x", CheckKind::Hard, Conventions::default(), &a, &b, 0.0);
        assert_eq!(r.verdict, Verdict::Fail);
        let r = IdentityReport::numeric(
            "x",
            CheckKind::Hard,
            Conventions::default(),
            &a,
            &b,
            1e-9 + 1e-12,
        );
        assert!(r.passed());
        let b = Estimate::new(Complex64::new(1.1, 0.0), 0.0, 3);
        let r = IdentityReport::numeric("x", CheckKind::Hard, Conventions::default(), &a, &b, 1e-9);
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.is_hard_failure());
    }

    #[test]
    fn series_reports_leading_deviation() {
        let e = series_qproduct(&QProductSpec::euler(), DEFAULT_GRID, 6).unwrap();
        let p = partition_gf(6).unwrap();
        let one = crate::FormalSeries::one(DEFAULT_GRID, 6).unwrap();
        let same = IdentityReport::series(
            "x",
            CheckKind::Hard,
            Conventions::default(),
            &(&e * &p),
            &one,
        )
        .unwrap();
        assert!(same.passed());
        assert_eq!(same.residual, Some(0.0));
        let off = IdentityReport::series("x", CheckKind::Audit, Conventions::default(), &e, &one)
            .unwrap();
        assert_eq!(off.verdict, Verdict::Fail);
        assert_eq!(off.details["leading_deviation_exponent"], "1");
        assert!(!off.is_hard_failure());
    }

    #[test]
    fn serializes_deterministically() {
        let a = Estimate::exact(Complex64::new(0.1, -0.2));
        let r = IdentityReport::numeric("x", CheckKind::Audit, Conventions::default(), &a, &a, 0.0)
            .param("tau", "0.3+1.1i");
        let one = serde_json::to_string(&r).unwrap();
        let two = serde_json::to_string(&r.clone()).unwrap();
        assert_eq!(one, two);
        assert!(one.contains("\"index_base\":\"m>=0\""));
        let back: IdentityReport = serde_json::from_str(&one).unwrap();
        assert_eq!(back, r);
    }
}
