use std::fs;

use num_complex::Complex64;
use serde::Serialize;
use spectra_qkit::fock::{self, CharacterSpec, WreathSpec};
use spectra_qkit::hilbert::{full_r_order, goettsche_series, BettiVector};
use spectra_qkit::identities::{all_hard_pass, run_suite, IdentityReport, Suite, SuiteConfig};
use spectra_qkit::qseries::{
    dedekind_eta, dedekind_eta_series, partition_gf, weber_f, weber_f_series, WeberIndex,
};
use spectra_qkit::spectral::{ruelle, z_gamma_product, z_ratio, RatioVariant, ZeroBox};
use spectra_qkit::table::CoefficientTable;
use spectra_qkit::{Conventions, Estimate, FormalSeries, ModularParameter, TruncationPolicy};

use crate::args::{Args, Command, Common, Format, Function, SeriesArgs, SeriesName, Variant};
use crate::error::{CliError, Result};

pub fn execute(args: Args) -> Result<()> {
    match args.command {
        Command::Eval {
            function,
            common,
            s,
            variant,
        } => eval(function, &common, s, variant),
        Command::Expand {
            series,
            common,
            series_args,
        } => expand(series, &common, &series_args),
        Command::Hilbert {
            common,
            series_args,
        } => expand(SeriesName::Goettsche, &common, &series_args),
        Command::Verify {
            suite,
            common,
            zero_box,
            order,
        } => {
            let suite: Suite = suite
                .parse()
                .map_err(|e: spectra_qkit::Error| CliError::Usage(e.to_string()))?;
            verify(suite, &common, zero_box, order)
        }
        Command::Zeros { common, zero_box } => {
            tau(&common)?;
            verify(Suite::Zeros, &common, Some(zero_box), None)
        }
    }
}

fn tau(common: &Common) -> Result<ModularParameter> {
    let tau = common
        .tau
        .ok_or_else(|| CliError::Usage("--tau is required".into()))?;
    Ok(ModularParameter::from_complex(tau)?)
}

fn conventions(common: &Common) -> Conventions {
    let mut c = Conventions::default();
    if let Some(v) = common.m_base {
        c = c.with_index_base(v);
    }
    if let Some(v) = common.eta_sign {
        c = c.with_eta_sign(v);
    }
    if let Some(v) = common.eta_reading {
        c = c.with_eta_reading(v);
    }
    if let Some(v) = common.r_reading {
        c = c.with_r_reading(v);
    }
    c
}

fn any_convention_flag(common: &Common) -> bool {
    common.m_base.is_some()
        || common.eta_sign.is_some()
        || common.eta_reading.is_some()
        || common.r_reading.is_some()
}

fn check_eps(common: &Common) -> Result<Option<f64>> {
    match common.eps {
        Some(e) if !(e > 0.0 && e.is_finite()) => {
            Err(CliError::Usage(format!("--eps must be positive, got {e}")))
        }
        other => Ok(other),
    }
}

/// The truncation policy; `with_eps` applies `--eps` as its tolerance.
fn policy(common: &Common, with_eps: bool) -> Result<TruncationPolicy> {
    let mut p = match common.cutoff {
        Some(k) => TruncationPolicy::fixed(k),
        None => TruncationPolicy::default(),
    };
    if let Some(n) = common.terms {
        p = p.with_max_terms(n);
    }
    if let (true, Some(eps)) = (with_eps, check_eps(common)?) {
        p = p.with_tolerance(eps);
    }
    Ok(p)
}

fn emit(common: &Common, text: String) -> Result<()> {
    match &common.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Usage(e.to_string());
    w.write_record(header).map_err(err)?;
    for row in rows {
        w.write_record(row).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

fn json_text(value: &impl Serialize) -> Result<String> {
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| CliError::Usage(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn format_complex(z: Complex64) -> String {
    if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

#[derive(Debug, Serialize)]
struct EvalOutput {
    function: String,
    tau: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    variant: Option<String>,
    value: [f64; 2],
    tail_bound: f64,
    cutoff: u32,
    conventions: Conventions,
}

fn eval(function: Function, common: &Common, s: Option<Complex64>, variant: Variant) -> Result<()> {
    let tau = tau(common)?;
    let policy = policy(common, true)?;
    let conv = conventions(common);
    let need_s = || s.ok_or_else(|| CliError::Usage("--s is required for this function".into()));
    let weber = |index| weber_f(index, &tau, conv.index_base, &policy);
    let ratio_variant = match variant {
        Variant::Plain => RatioVariant::Plain,
        Variant::Conjugate => RatioVariant::Conjugate,
        Variant::EtaShifted => RatioVariant::EtaShifted,
        Variant::ConjugateEtaShifted => RatioVariant::ConjugateEtaShifted,
    };
    let (name, value): (&str, Estimate) = match function {
        Function::Zgamma => ("zgamma", z_gamma_product(need_s()?, &tau, &policy)?),
        Function::Ruelle => ("ruelle", ruelle(need_s()?, &tau, &policy)?),
        Function::Zratio => (
            "zratio",
            z_ratio(need_s()?, &tau, ratio_variant, &conv, &policy)?,
        ),
        Function::Eta => ("eta", dedekind_eta(&tau, &policy)?),
        Function::F1 => ("f1", weber(WeberIndex::F1)?),
        Function::F2 => ("f2", weber(WeberIndex::F2)?),
        Function::F3 => ("f3", weber(WeberIndex::F3)?),
    };
    let uses_s = matches!(
        function,
        Function::Zgamma | Function::Ruelle | Function::Zratio
    );
    let out = EvalOutput {
        function: name.to_string(),
        tau: format_complex(tau.tau()),
        s: s.filter(|_| uses_s).map(format_complex),
        variant: (function == Function::Zratio)
            .then(|| serde_json::to_value(ratio_variant).ok())
            .flatten()
            .and_then(|v| v.as_str().map(str::to_string)),
        value: [value.value.re, value.value.im],
        tail_bound: value.tail_bound,
        cutoff: value.cutoff,
        conventions: conv,
    };
    let text = match common.format {
        Format::Json => json_text(&out)?,
        Format::Csv => csv_text(
            &[
                "function", "tau", "s", "re", "im", "tail_bound", "cutoff", "m-base", "eta-sign",
                "eta-reading", "r-reading",
            ],
            &[vec![
                out.function.clone(),
                out.tau.clone(),
                out.s.clone().unwrap_or_default(),
                out.value[0].to_string(),
                out.value[1].to_string(),
                out.tail_bound.to_string(),
                out.cutoff.to_string(),
                conv.index_base.to_string(),
                conv.eta_sign.to_string(),
                conv.eta_reading.to_string(),
                conv.r_reading.to_string(),
            ]],
        )?,
        Format::Plain => format!(
            "{}{} at tau = {}: {} (tail bound {:e}, cutoff {})\nconventions: m-base {}, eta-sign {}, eta-reading {}, r-reading {}\n",
            out.function,
            out.s.as_ref().map(|s| format!("({s})")).unwrap_or_default(),
            out.tau,
            format_complex(value.value),
            out.tail_bound,
            out.cutoff,
            conv.index_base,
            conv.eta_sign,
            conv.eta_reading,
            conv.r_reading,
        ),
    };
    emit(common, text)
}

fn parse_dims(text: Option<&str>) -> Result<CharacterSpec> {
    let text = text.ok_or_else(|| CliError::Usage("--dims even,odd is required".into()))?;
    let parts: Vec<u32> = text
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| {
            CliError::Usage(format!("--dims `{text}` must be two nonnegative integers"))
        })?;
    match parts[..] {
        [even, odd] => Ok(CharacterSpec::new(even, odd)),
        _ => Err(CliError::Usage(format!(
            "--dims `{text}` must be two nonnegative integers"
        ))),
    }
}

fn expand(series: SeriesName, common: &Common, a: &SeriesArgs) -> Result<()> {
    const DEFAULT_ORDER: u32 = 20;
    let conv = conventions(common);
    let order = a.order.unwrap_or(DEFAULT_ORDER);
    let single =
        |name: &str, s: FormalSeries| CoefficientTable::from_series(name, &s).param("order", order);
    let weber = |index: WeberIndex, name: &str| -> Result<CoefficientTable> {
        Ok(single(name, weber_f_series(index, order, conv.index_base)?)
            .param("m-base", conv.index_base))
    };
    let table = match series {
        SeriesName::Partition => single("partition", partition_gf(order)?),
        SeriesName::Eta => single("eta", dedekind_eta_series(order)?),
        SeriesName::F1 => weber(WeberIndex::F1, "f1")?,
        SeriesName::F2 => weber(WeberIndex::F2, "f2")?,
        SeriesName::F3 => weber(WeberIndex::F3, "f3")?,
        SeriesName::Goettsche => {
            let betti: BettiVector = a
                .betti
                .as_deref()
                .ok_or_else(|| CliError::Usage("--betti b0,b1,b2,b3,b4 is required".into()))?
                .parse()?;
            let order_q = a.order_q.or(a.order).unwrap_or(5) as usize;
            if order_q == 0 {
                return Err(CliError::Usage("--order-q must be positive".into()));
            }
            let order_r = a
                .order_r
                .map_or_else(|| full_r_order(order_q), |r| r as usize);
            let s = goettsche_series(&betti, order_q, order_r)?;
            CoefficientTable::from_bivariate("goettsche", &s)
                .param("betti", betti)
                .param("order-q", order_q)
                .param("order-r", order_r)
        }
        SeriesName::Character => {
            let spec = parse_dims(a.dims.as_deref())?;
            single("character", fock::super_character_series(&spec, order)?)
                .param("dims", format!("{},{}", spec.dim_even, spec.dim_odd))
        }
        SeriesName::Fock => {
            let spec = parse_dims(a.dims.as_deref())?;
            single("fock", fock::fock_graded_dim_series(&spec, order)?)
                .param("dims", format!("{},{}", spec.dim_even, spec.dim_odd))
        }
        SeriesName::Ktheory => {
            let e = a
                .euler
                .ok_or_else(|| CliError::Usage("--euler is required".into()))?;
            let spec = WreathSpec::new(e, a.classes.unwrap_or(1))?;
            single("ktheory", fock::ktheory_euler_series(&spec, order)?).param("euler", e)
        }
        SeriesName::Point => {
            let classes = a
                .classes
                .ok_or_else(|| CliError::Usage("--classes is required".into()))?;
            single("point", fock::point_case_series(classes, order)?).param("classes", classes)
        }
    };
    let text = match common.format {
        Format::Json => {
            let mut t = table.to_json()?;
            t.push('\n');
            t
        }
        Format::Csv => table.to_csv()?,
        Format::Plain => table.to_plain(),
    };
    emit(common, text)
}

fn verify(
    suite: Suite,
    common: &Common,
    zero_box: Option<[f64; 4]>,
    order: Option<u32>,
) -> Result<()> {
    let taus = match common.tau {
        Some(t) => Some(vec![ModularParameter::from_complex(t)?]),
        None => None,
    };
    let zero_box = match zero_box {
        Some([a, b, c, d]) => Some(ZeroBox::new(a, b, c, d)?),
        None => None,
    };
    let config = SuiteConfig {
        taus,
        conventions: any_convention_flag(common).then(|| conventions(common)),
        policy: policy(common, false)?,
        tolerance: check_eps(common)?,
        zero_box,
        order: order.unwrap_or(20),
    };
    let reports = run_suite(suite, &config)?;
    let text = match common.format {
        Format::Json => json_text(&reports)?,
        Format::Csv => report_csv(&reports)?,
        Format::Plain => report_plain(&reports),
    };
    emit(common, text)?;
    if all_hard_pass(&reports) {
        Ok(())
    } else {
        let failed = reports.iter().filter(|r| r.is_hard_failure()).count();
        Err(CliError::HardFailure(failed))
    }
}

fn verdict_text(r: &IdentityReport) -> String {
    serde_json::to_value(r.verdict)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn kind_text(r: &IdentityReport) -> String {
    serde_json::to_value(r.kind)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn params_text(r: &IdentityReport) -> String {
    r.params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn conventions_text(c: &Conventions) -> String {
    format!(
        "m-base={};eta-sign={};eta-reading={};r-reading={}",
        c.index_base, c.eta_sign, c.eta_reading, c.r_reading
    )
}

fn report_csv(reports: &[IdentityReport]) -> Result<String> {
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.id.clone(),
                kind_text(r),
                verdict_text(r),
                r.residual.map(|x| x.to_string()).unwrap_or_default(),
                r.tail_budget.to_string(),
                r.tolerance.to_string(),
                params_text(r),
                conventions_text(&r.conventions),
            ]
        })
        .collect();
    csv_text(
        &[
            "id",
            "kind",
            "verdict",
            "residual",
            "tail_budget",
            "tolerance",
            "params",
            "conventions",
        ],
        &rows,
    )
}

fn report_plain(reports: &[IdentityReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let residual = r
            .residual
            .map_or("undefined".to_string(), |x| format!("{x:e}"));
        out.push_str(&format!(
            "{:<6} {:<5} {} residual {} [{}] [{}]\n",
            verdict_text(r),
            kind_text(r),
            r.id,
            residual,
            params_text(r),
            conventions_text(&r.conventions)
        ));
    }
    let hard_failures = reports.iter().filter(|r| r.is_hard_failure()).count();
    out.push_str(&format!(
        "{} reports, {} hard failures\n",
        reports.len(),
        hard_failures
    ));
    out
}
