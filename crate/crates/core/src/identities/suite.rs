//! Named verification suites and the manifest declaring which checks are
//! hard and which are audits.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::checks::{
    cross_check_grid, cross_check_z, zero_indices, zero_report, CROSS_CHECK_TOLERANCE,
    ZERO_TOLERANCE,
};
use super::products::{
    audit_euler_bracket_numeric, audit_euler_bracket_series, verify_f_triple_numeric,
    verify_f_triple_series, verify_ruelle_triple, EULER_BRACKET_TOLERANCE, F_TRIPLE_TOLERANCE,
    RUELLE_TRIPLE_TOLERANCE,
};
use super::report::{CheckKind, IdentityReport};
use super::table_rows::{verify_table_row, TableRow};
use crate::conventions::{Conventions, IndexBase};
use crate::error::{Error, Result};
use crate::hilbert::{goettsche_spectral_check, BettiVector};
use crate::qseries::Exponent;
use crate::spectral::{zeros_predicted, ModularParameter, TruncationPolicy, ZeroBox};

pub const TABLE_TOLERANCE: f64 = 1e-8;

/// `{0.25 + i, 0.3 + 1.1i, 0.1 + 1.5i}`.
pub fn standard_tau_grid() -> Vec<ModularParameter> {
    [(0.25, 1.0), (0.3, 1.1), (0.1, 1.5)]
        .into_iter()
        .map(|(re, im)| ModularParameter::new(re, im).expect("upper half-plane"))
        .collect()
}

fn tau_i() -> ModularParameter {
    ModularParameter::new(0.0, 1.0).expect("upper half-plane")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    All,
    Table1,
    FTriple,
    RuelleTriple,
    EulerBracket,
    CrossZ,
    Zeros,
    GoettscheSpectral,
}

impl Suite {
    /// The suites run by `all`, in output order.
    pub fn members() -> [Suite; 7] {
        [
            Suite::Table1,
            Suite::FTriple,
            Suite::RuelleTriple,
            Suite::EulerBracket,
            Suite::CrossZ,
            Suite::Zeros,
            Suite::GoettscheSpectral,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Table1 => "table1",
            Suite::FTriple => "ftriple",
            Suite::RuelleTriple => "ruelletriple",
            Suite::EulerBracket => "eulerbracket",
            Suite::CrossZ => "crossz",
            Suite::Zeros => "zeros",
            Suite::GoettscheSpectral => "goettsche-spectral",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Suite::All)
            .chain(Suite::members())
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

/// One line of the manifest.
#[derive(Debug, Clone, Serialize)]
pub struct ManifestEntry {
    pub id: &'static str,
    pub suite: Suite,
    /// Hard only when `hard_when` holds; audit otherwise.
    pub kind: CheckKind,
    pub hard_when: &'static str,
}

/// Which checks can fail a run.
pub fn manifest() -> Vec<ManifestEntry> {
    let entry = |id, suite, kind, hard_when| ManifestEntry {
        id,
        suite,
        kind,
        hard_when,
    };
    use CheckKind::{Audit, Hard};
    vec![
        entry("table1-row1", Suite::Table1, Hard, "r-reading ratio"),
        entry("table1-row2", Suite::Table1, Hard, "r-reading ratio"),
        entry(
            "table1-row3",
            Suite::Table1,
            Hard,
            "r-reading ratio and eta-reading half-period",
        ),
        entry(
            "table1-row4",
            Suite::Table1,
            Hard,
            "r-reading ratio and eta-reading half-period",
        ),
        entry("table1-row5", Suite::Table1, Audit, "never"),
        entry("table1-row6", Suite::Table1, Audit, "never"),
        entry("table1-row7", Suite::Table1, Audit, "never"),
        entry("table1-row8", Suite::Table1, Audit, "never"),
        entry("f-triple-series", Suite::FTriple, Hard, "m-base 0"),
        entry("f-triple-numeric", Suite::FTriple, Hard, "m-base 0"),
        entry("ruelle-triple", Suite::RuelleTriple, Audit, "never"),
        entry("euler-bracket-series", Suite::EulerBracket, Audit, "never"),
        entry("euler-bracket-numeric", Suite::EulerBracket, Audit, "never"),
        entry("crossz", Suite::CrossZ, Hard, "always"),
        entry("zero", Suite::Zeros, Hard, "always"),
        entry(
            "goettsche-spectral",
            Suite::GoettscheSpectral,
            Audit,
            "never",
        ),
    ]
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Replaces each suite's default `τ` values.
    pub taus: Option<Vec<ModularParameter>>,
    /// Runs only these flags instead of each suite's default sweep.
    pub conventions: Option<Conventions>,
    pub policy: TruncationPolicy,
    /// Replaces each check's default tolerance.
    pub tolerance: Option<f64>,
    /// Zeros inside this box instead of the default index window.
    pub zero_box: Option<ZeroBox>,
    /// Order of the exact-series checks.
    pub order: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            taus: None,
            conventions: None,
            policy: TruncationPolicy::default(),
            tolerance: None,
            zero_box: None,
            order: 20,
        }
    }
}

impl SuiteConfig {
    fn taus_or(&self, default: Vec<ModularParameter>) -> Vec<ModularParameter> {
        self.taus.clone().unwrap_or(default)
    }

    fn tolerance_or(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }

    fn sweep(&self, default: Vec<Conventions>) -> Vec<Conventions> {
        match self.conventions {
            Some(c) => vec![c],
            None => default,
        }
    }

    fn bases(&self) -> Vec<IndexBase> {
        match self.conventions {
            Some(c) => vec![c.index_base],
            None => vec![IndexBase::Zero, IndexBase::One],
        }
    }
}

type Job<'a> = Box<dyn Fn() -> Result<IdentityReport> + Send + Sync + 'a>;

struct Task<'a> {
    id: String,
    kind: CheckKind,
    conventions: Conventions,
    run: Job<'a>,
}

fn task<'a>(
    id: impl Into<String>,
    kind: CheckKind,
    conventions: Conventions,
    run: impl Fn() -> Result<IdentityReport> + Send + Sync + 'a,
) -> Task<'a> {
    Task {
        id: id.into(),
        kind,
        conventions,
        run: Box::new(run),
    }
}

fn table1_tasks(config: &SuiteConfig) -> Vec<Task<'_>> {
    let tolerance = config.tolerance_or(TABLE_TOLERANCE);
    let policy = &config.policy;
    let shapes = [
        (0, Exponent::new(1, 2)),
        (1, Exponent::from(0)),
        (1, Exponent::new(1, 2)),
        (2, Exponent::from(0)),
        (2, Exponent::new(1, 2)),
    ];
    let mut out = Vec::new();
    for conv in config.sweep(Conventions::spectral_grid(IndexBase::Zero)) {
        for tau in config.taus_or(standard_tau_grid()) {
            for row in 1..=8u8 {
                let kind = TableRow::new(row).map_or(CheckKind::Audit, |r| r.kind(&conv));
                for (ell, eps) in shapes {
                    out.push(task(format!("table1-row{row}"), kind, conv, move || {
                        verify_table_row(row, ell, eps, &tau, &conv, tolerance, policy)
                    }));
                }
            }
        }
    }
    out
}

fn ftriple_tasks(config: &SuiteConfig) -> Vec<Task<'_>> {
    let tolerance = config.tolerance_or(F_TRIPLE_TOLERANCE);
    let mut out = Vec::new();
    for base in config.bases() {
        let conv = Conventions::default().with_index_base(base);
        let order = config.order;
        let kind = match base {
            IndexBase::Zero => CheckKind::Hard,
            IndexBase::One => CheckKind::Audit,
        };
        out.push(task("f-triple-series", kind, conv, move || {
            verify_f_triple_series(order, base)
        }));
        for tau in config.taus_or(vec![tau_i()]) {
            out.push(task("f-triple-numeric", kind, conv, move || {
                verify_f_triple_numeric(&tau, base, tolerance, &config.policy)
            }));
        }
    }
    out
}

fn ruelle_triple_tasks(config: &SuiteConfig) -> Vec<Task<'_>> {
    let tolerance = config.tolerance_or(RUELLE_TRIPLE_TOLERANCE);
    let mut taus = standard_tau_grid();
    taus.push(tau_i());
    let mut out = Vec::new();
    for conv in config.sweep(Conventions::spectral_grid(IndexBase::Zero)) {
        for tau in config.taus_or(taus.clone()) {
            out.push(task("ruelle-triple", CheckKind::Audit, conv, move || {
                verify_ruelle_triple(&tau, &conv, tolerance, &config.policy)
            }));
        }
    }
    out
}

fn euler_bracket_tasks(config: &SuiteConfig) -> Vec<Task<'_>> {
    let tolerance = config.tolerance_or(EULER_BRACKET_TOLERANCE);
    let mut out = Vec::new();
    let sweep = match config.conventions {
        Some(c) => vec![c],
        None => [IndexBase::Zero, IndexBase::One]
            .into_iter()
            .flat_map(Conventions::spectral_grid)
            .collect(),
    };
    for e in 0..=2u32 {
        for base in config.bases() {
            let conv = Conventions::default().with_index_base(base);
            let order = config.order;
            out.push(task(
                "euler-bracket-series",
                CheckKind::Audit,
                conv,
                move || audit_euler_bracket_series(e, order, base),
            ));
        }
        for &conv in &sweep {
            for tau in config.taus_or(vec![tau_i()]) {
                out.push(task(
                    "euler-bracket-numeric",
                    CheckKind::Audit,
                    conv,
                    move || audit_euler_bracket_numeric(e, &tau, &conv, tolerance, &config.policy),
                ));
            }
        }
    }
    out
}

fn crossz_tasks(config: &SuiteConfig) -> Vec<Task<'_>> {
    let tolerance = config.tolerance_or(CROSS_CHECK_TOLERANCE);
    let taus = config.taus_or(vec![
        ModularParameter::new(0.25, 1.0).expect("upper half-plane"),
        ModularParameter::new(0.3, 1.1).expect("upper half-plane"),
        tau_i(),
    ]);
    let points: Vec<_> = taus
        .iter()
        .flat_map(|tau| cross_check_grid(5).into_iter().map(move |s| (s, *tau)))
        .collect();
    vec![task(
        "crossz",
        CheckKind::Hard,
        Conventions::default(),
        move || cross_check_z(&points, tolerance, &config.policy),
    )]
}

fn zeros_tasks(config: &SuiteConfig) -> Vec<Task<'_>> {
    let tolerance = config.tolerance_or(ZERO_TOLERANCE);
    let mut out = Vec::new();
    for tau in config.taus_or(vec![
        ModularParameter::new(0.3, 1.1).expect("upper half-plane")
    ]) {
        let indices = match &config.zero_box {
            Some(area) => zeros_predicted(&tau, area)
                .into_iter()
                .map(|(i, _)| i)
                .collect(),
            None => zero_indices(3, 3),
        };
        for index in indices {
            out.push(task(
                "zero",
                CheckKind::Hard,
                Conventions::default(),
                move || zero_report(index, &tau, tolerance, &config.policy),
            ));
        }
    }
    out
}

/// Betti vectors swept by the spectral audit of the Hilbert-scheme series.
pub fn audit_betti_vectors() -> Vec<BettiVector> {
    vec![
        BettiVector::new(0, 0, 0, 0, 0),
        BettiVector::new(1, 0, 0, 0, 0),
        BettiVector::new(0, 1, 0, 0, 0),
        BettiVector::new(0, 0, 0, 1, 0),
        BettiVector::new(1, 0, 1, 0, 1),
        BettiVector::new(1, 0, 22, 0, 1),
    ]
}

fn goettsche_tasks(config: &SuiteConfig) -> Vec<Task<'_>> {
    let mut out = Vec::new();
    let policy = match config.tolerance {
        Some(t) => config.policy.with_tolerance(t),
        None => config.policy,
    };
    for conv in config.sweep(Conventions::spectral_grid(IndexBase::Zero)) {
        for tau in config.taus_or(standard_tau_grid()) {
            for betti in audit_betti_vectors() {
                out.push(task(
                    "goettsche-spectral",
                    CheckKind::Audit,
                    conv,
                    move || goettsche_spectral_check(&betti, &tau, &conv, &policy),
                ));
            }
        }
    }
    out
}

fn tasks(suite: Suite, config: &SuiteConfig) -> Vec<Task<'_>> {
    match suite {
        Suite::All => Suite::members()
            .into_iter()
            .flat_map(|s| tasks(s, config))
            .collect(),
        Suite::Table1 => table1_tasks(config),
        Suite::FTriple => ftriple_tasks(config),
        Suite::RuelleTriple => ruelle_triple_tasks(config),
        Suite::EulerBracket => euler_bracket_tasks(config),
        Suite::CrossZ => crossz_tasks(config),
        Suite::Zeros => zeros_tasks(config),
        Suite::GoettscheSpectral => goettsche_tasks(config),
    }
}

/// Runs a suite. Checks run in parallel; reports come back in declaration
/// order. A check that errors becomes an undefined report of its own kind.
pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<Vec<IdentityReport>> {
    config.policy.validate()?;
    if let Some(t) = config.tolerance {
        if !(t > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tolerance {t} must be positive"
            )));
        }
    }
    let tasks = tasks(suite, config);
    Ok(tasks
        .par_iter()
        .map(|t| {
            (t.run)().unwrap_or_else(|err| {
                let tolerance = config.tolerance.unwrap_or(0.0);
                IdentityReport::undefined(&t.id, t.kind, t.conventions, tolerance, &err)
            })
        })
        .collect())
}

/// True when no hard check failed.
pub fn all_hard_pass(reports: &[IdentityReport]) -> bool {
    !reports.iter().any(IdentityReport::is_hard_failure)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in std::iter::once(Suite::All).chain(Suite::members()) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn manifest_ids_are_unique() {
        let m = manifest();
        let mut ids: Vec<_> = m.iter().map(|e| e.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), m.len());
    }

    #[test]
    fn reports_agree_with_the_manifest() {
        let config = SuiteConfig {
            order: 8,
            ..SuiteConfig::default()
        };
        let m = manifest();
        for suite in [Suite::FTriple, Suite::RuelleTriple, Suite::CrossZ] {
            for r in run_suite(suite, &config).unwrap() {
                let entry = m.iter().find(|e| e.id == r.id).expect("declared");
                if entry.kind == CheckKind::Audit {
                    assert_eq!(r.kind, CheckKind::Audit);
                }
            }
        }
    }

    #[test]
    fn ftriple_passes_under_m_zero() {
        let config = SuiteConfig {
            conventions: Some(Conventions::default()),
            ..SuiteConfig::default()
        };
        let reports = run_suite(Suite::FTriple, &config).unwrap();
        assert_eq!(reports.len(), 2);
        assert!(reports.iter().all(IdentityReport::passed));
    }

    #[test]
    fn runs_are_deterministic() {
        let config = SuiteConfig::default();
        let a = serde_json::to_string(&run_suite(Suite::EulerBracket, &config).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite(Suite::EulerBracket, &config).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
