//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

use std::process::ExitCode;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use spectra_qkit::fock::{
    fock_graded_dim_series, ktheory_euler_series, point_case_series, super_character_series,
    super_supertrace, CharacterSpec, WreathSpec,
};
use spectra_qkit::hilbert::{euler_specialization, full_r_order, goettsche_series, BettiVector};
use spectra_qkit::identities::{
    cross_check_grid, run_suite, standard_tau_grid, verify_f_triple_numeric,
    verify_f_triple_series, verify_table_row, Suite, SuiteConfig, Verdict,
};
use spectra_qkit::qseries::{
    partition_gf, series_qproduct_pow, FactorSign, FormalSeries, QProductSpec, DEFAULT_GRID,
};
use spectra_qkit::spectral::{
    growth_check, sample_grid, verify_zero, z_gamma_logseries, z_gamma_product, ZeroIndex,
};
use spectra_qkit::{Conventions, EtaSign, Exponent, IndexBase, ModularParameter, TruncationPolicy};

const CROSS_TOL: f64 = 1e-9;
const ZERO_TOL: f64 = 1e-10;
const TABLE_TOL: f64 = 1e-8;
const F_TRIPLE_TOL: f64 = 1e-10;
const PARTITION_MAX_N: u32 = 30;
const IDENTITY_ORDER: u32 = 20;
const GROWTH_MARGIN: f64 = 0.1;

type Outcome = Result<String, String>;

fn tau(re: f64, im: f64) -> ModularParameter {
    ModularParameter::new(re, im).expect("upper half-plane")
}

/// Number of partitions of `n` into parts from `allowed`, each used at most
/// once when `distinct`. Plain recursion, independent of the library.
fn count(n: u32, max_part: u32, allowed: &dyn Fn(u32) -> bool, distinct: bool) -> u64 {
    if n == 0 {
        return 1;
    }
    let mut total = 0;
    for part in (1..=max_part.min(n)).rev() {
        if !allowed(part) {
            continue;
        }
        let next_max = if distinct { part - 1 } else { part };
        total += count(n - part, next_max, allowed, distinct);
    }
    total
}

fn integer_coefficients(series: &FormalSeries, upto: u32) -> Vec<BigRational> {
    (0..=upto)
        .map(|n| {
            series
                .coefficient(Exponent::from(n as i64))
                .expect("within order")
        })
        .collect()
}

fn int(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn criterion_1() -> Outcome {
    let policy = TruncationPolicy::default();
    let mut worst: f64 = 0.0;
    for t in [tau(0.25, 1.0), tau(0.3, 1.1), tau(0.0, 1.0)] {
        for s in cross_check_grid(5) {
            let product = z_gamma_product(s, &t, &policy).map_err(|e| e.to_string())?;
            let log = z_gamma_logseries(s, &t, &policy).map_err(|e| e.to_string())?;
            worst = worst.max((product.value - log.value.exp()).norm());
        }
    }
    let line =
        format!("max |product - exp(log series)| = {worst:.3e} over 75 points (< {CROSS_TOL:e})");
    if worst < CROSS_TOL {
        Ok(line)
    } else {
        Err(line)
    }
}

fn criterion_2() -> Outcome {
    let t = tau(0.3, 1.1);
    let policy = TruncationPolicy::default();
    let mut worst: f64 = 0.0;
    let mut worst_relative: f64 = 0.0;
    let mut checked = 0;
    for diag in 0..=3u32 {
        for k1 in 0..=diag {
            for n in -3..=3i64 {
                let check = verify_zero(ZeroIndex::new(n, k1, diag - k1), &t, &policy)
                    .map_err(|e| e.to_string())?;
                worst = worst.max(check.residual);
                worst_relative = worst_relative.max(check.naive_relative);
                checked += 1;
            }
        }
    }
    let line = format!(
        "{checked} zeros: max |Z(zeta)| = {worst:.3e}, max vanishing factor at float zeta = {worst_relative:.3e} (< {ZERO_TOL:e})"
    );
    if worst < ZERO_TOL && worst_relative < ZERO_TOL {
        Ok(line)
    } else {
        Err(line)
    }
}

fn criterion_3() -> Outcome {
    let policy = TruncationPolicy::default();
    let shapes = [
        (0, Exponent::new(1, 2)),
        (1, Exponent::from(0)),
        (1, Exponent::new(1, 2)),
        (2, Exponent::from(0)),
        (2, Exponent::new(1, 2)),
    ];
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for sign in [EtaSign::Plus, EtaSign::Minus] {
        let conv = Conventions::default().with_eta_sign(sign);
        for t in standard_tau_grid() {
            for row in 1..=4u8 {
                for (ell, eps) in shapes {
                    let r = verify_table_row(row, ell, eps, &t, &conv, TABLE_TOL, &policy)
                        .map_err(|e| e.to_string())?;
                    let residual = r.residual.ok_or(format!("row {row} undefined"))?;
                    worst = worst.max(residual);
                    checked += 1;
                }
            }
        }
    }
    let line = format!("{checked} row checks: max residual = {worst:.3e} (< {TABLE_TOL:e})");
    if worst < TABLE_TOL {
        Ok(line)
    } else {
        Err(line)
    }
}

fn criterion_4() -> Outcome {
    let series =
        verify_f_triple_series(IDENTITY_ORDER, IndexBase::Zero).map_err(|e| e.to_string())?;
    let numeric = verify_f_triple_numeric(
        &tau(0.0, 1.0),
        IndexBase::Zero,
        F_TRIPLE_TOL,
        &TruncationPolicy::default(),
    )
    .map_err(|e| e.to_string())?;
    let residual = numeric.residual.unwrap_or(f64::INFINITY);
    let line = format!(
        "series residual = {} at order {IDENTITY_ORDER}, numeric residual at tau = i: {residual:.3e} (< {F_TRIPLE_TOL:e})",
        series.residual.unwrap_or(f64::NAN)
    );
    if series.residual == Some(0.0) && residual < F_TRIPLE_TOL {
        Ok(line)
    } else {
        Err(line)
    }
}

fn criterion_5() -> Outcome {
    let order = PARTITION_MAX_N + 1;
    let grid = DEFAULT_GRID;
    let euler = QProductSpec::euler();
    let plus = QProductSpec::new(1, Exponent::from(0), FactorSign::Plus);
    let odd_minus = QProductSpec::odd(FactorSign::Minus);
    let odd_plus = QProductSpec::odd(FactorSign::Plus);
    let any = |_: u32| true;
    let odd = |p: u32| p % 2 == 1;
    let cases: [(&str, FormalSeries, &dyn Fn(u32) -> bool, bool); 4] = [
        (
            "1/prod(1-q^n)",
            series_qproduct_pow(&euler, grid, order, -1).map_err(|e| e.to_string())?,
            &any,
            false,
        ),
        (
            "prod(1+q^n)",
            series_qproduct_pow(&plus, grid, order, 1).map_err(|e| e.to_string())?,
            &any,
            true,
        ),
        (
            "1/prod(1-q^(2n-1))",
            series_qproduct_pow(&odd_minus, grid, order, -1).map_err(|e| e.to_string())?,
            &odd,
            false,
        ),
        (
            "prod(1+q^(2n-1))",
            series_qproduct_pow(&odd_plus, grid, order, 1).map_err(|e| e.to_string())?,
            &odd,
            true,
        ),
    ];
    for (name, series, allowed, distinct) in &cases {
        let got = integer_coefficients(series, PARTITION_MAX_N);
        for (n, c) in got.iter().enumerate() {
            let want = count(n as u32, n as u32, *allowed, *distinct);
            if *c != int(want) {
                return Err(format!(
                    "{name}: coefficient of q^{n} is {c}, enumeration gives {want}"
                ));
            }
        }
    }
    // Euler: distinct parts and odd parts are equinumerous
    if cases[1].1.truncate(Exponent::from(order as i64)).ok()
        != cases[2].1.truncate(Exponent::from(order as i64)).ok()
    {
        return Err("distinct-part and odd-part series differ".into());
    }
    Ok(format!(
        "4 products match enumeration for N <= {PARTITION_MAX_N}; distinct = odd holds"
    ))
}

fn criterion_6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(20_240_611);
    for _ in 0..10 {
        let b: [u32; 5] = std::array::from_fn(|_| rng.random_range(0..6));
        let betti = BettiVector::new(b[0], b[1], b[2], b[3], b[4]);
        let s = goettsche_series(&betti, 3, 9).map_err(|e| e.to_string())?;
        let slice = s.slice(1).ok_or("missing q^1 slice")?;
        let mut want: Vec<BigInt> = b.iter().map(|&x| BigInt::from(x)).collect();
        while want.last().is_some_and(|x| *x == BigInt::from(0)) {
            want.pop();
        }
        if slice != want {
            return Err(format!(
                "betti {betti}: q^1 slice {slice:?} is not the Poincaré polynomial"
            ));
        }
        let specialised = euler_specialization(&betti, 10).map_err(|e| e.to_string())?;
        let direct = series_qproduct_pow(&QProductSpec::euler(), DEFAULT_GRID, 10, -betti.euler())
            .map_err(|e| e.to_string())?;
        let full = goettsche_series(&betti, 10, full_r_order(10))
            .map_err(|e| e.to_string())?
            .specialize(-1);
        let direct_ints = integer_coefficients(&direct, 9);
        let full_ints: Vec<BigRational> = full
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        if specialised != direct || full_ints != direct_ints {
            return Err(format!(
                "betti {betti}: r = -1 specialisation differs from prod(1-q^n)^(-e)"
            ));
        }
    }
    let point = goettsche_series(&BettiVector::new(1, 0, 0, 0, 0), 16, full_r_order(16))
        .map_err(|e| e.to_string())?
        .specialize(1);
    for (n, c) in point.iter().enumerate() {
        let want = count(n as u32, n as u32, &|_| true, false);
        if *c != BigInt::from(want) {
            return Err(format!(
                "betti (1,0,0,0,0) at r = 1: coefficient {n} is {c}, p({n}) = {want}"
            ));
        }
    }
    Ok("10 random Betti vectors: q^1 slice and r = -1 specialisation exact; r = 1 gives p(N) for N <= 15".into())
}

fn criterion_7() -> Outcome {
    let order = IDENTITY_ORDER;
    let err = |e: spectra_qkit::Error| e.to_string();
    let one = FormalSeries::one(DEFAULT_GRID, order).map_err(err)?;
    let euler = series_qproduct_pow(&QProductSpec::euler(), DEFAULT_GRID, order, 1).map_err(err)?;
    let mut failures = Vec::new();
    if &partition_gf(order).map_err(err)? * &euler != one {
        failures.push("partition_gf * euler product");
    }
    for d in 0..4u32 {
        let a = super_character_series(&CharacterSpec::new(d, 0), order).map_err(err)?;
        let b = super_supertrace(&CharacterSpec::new(0, d), order).map_err(err)?;
        if &a * &b != one {
            failures.push("super_character(d,0) * super_supertrace(0,d)");
        }
    }
    for (e1, e2) in [(1i64, 2i64), (-1, 3), (2, -2), (0, 5)] {
        let spec = |e| WreathSpec::new(e, 1).map_err(err);
        let lhs = ktheory_euler_series(&spec(e1 + e2)?, order).map_err(err)?;
        let rhs = &ktheory_euler_series(&spec(e1)?, order).map_err(err)?
            * &ktheory_euler_series(&spec(e2)?, order).map_err(err)?;
        if lhs != rhs {
            failures.push("ktheory multiplicativity");
        }
    }
    let p1 = point_case_series(1, order).map_err(err)?;
    if point_case_series(3, order).map_err(err)? != &(&p1 * &p1) * &p1 {
        failures.push("point case cube");
    }
    let f = |e, o| fock_graded_dim_series(&CharacterSpec::new(e, o), order).map_err(err);
    if f(3, 2)? != &f(1, 2)? * &f(2, 0)? {
        failures.push("fock multiplicativity");
    }
    for power in [2i64, -3] {
        let p =
            series_qproduct_pow(&QProductSpec::euler(), DEFAULT_GRID, order, power).map_err(err)?;
        let q = series_qproduct_pow(&QProductSpec::euler(), DEFAULT_GRID, order, -power)
            .map_err(err)?;
        if &p * &q != one {
            failures.push("euler product inverse pair");
        }
    }
    if failures.is_empty() {
        Ok(format!(
            "inverse pairs and multiplicativity exact at order {order}"
        ))
    } else {
        Err(failures.join(", "))
    }
}

fn criterion_8() -> Outcome {
    let config = SuiteConfig::default();
    let mut total = 0;
    for suite in [
        Suite::RuelleTriple,
        Suite::EulerBracket,
        Suite::GoettscheSpectral,
    ] {
        let first = run_suite(suite, &config).map_err(|e| e.to_string())?;
        let second = run_suite(suite, &config).map_err(|e| e.to_string())?;
        let a = serde_json::to_vec(&first).map_err(|e| e.to_string())?;
        let b = serde_json::to_vec(&second).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("{suite}: reports differ between runs"));
        }
        for r in &first {
            if r.verdict == Verdict::Undefined {
                let reason = r
                    .details
                    .get("undefined")
                    .and_then(|v| v.as_str())
                    .unwrap_or("");
                if !reason.starts_with("pole") {
                    return Err(format!("{suite}: {} failed to evaluate: {reason}", r.id));
                }
            }
        }
        let flags: std::collections::BTreeSet<String> = first
            .iter()
            .map(|r| format!("{:?}", r.conventions))
            .collect();
        if flags.len() < 8 {
            return Err(format!(
                "{suite}: only {} convention combinations covered",
                flags.len()
            ));
        }
        total += first.len();
    }
    Ok(format!(
        "{total} audit reports, byte-identical across runs, every convention combination"
    ))
}

fn criterion_9() -> Outcome {
    let t = tau(0.3, 1.1);
    let points = sample_grid((-3.0, 3.0), (-6.0, 6.0), 10);
    let fit = growth_check(&t, &points, GROWTH_MARGIN, &TruncationPolicy::default())
        .map_err(|e| e.to_string())?;
    let line = format!(
        "{} samples ({} excluded near zeros): log C1 = {:.4}, C2 = {:.3e}, {} violations",
        fit.samples.len(),
        fit.excluded.len(),
        fit.log_c1,
        fit.c2,
        fit.violations.len()
    );
    if fit.passed && fit.log_c1.is_finite() && fit.c2.is_finite() && fit.violations.is_empty() {
        Ok(line)
    } else {
        Err(line)
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("dual-representation agreement", criterion_1),
        ("zero formula", criterion_2),
        ("table rows 1-4", criterion_3),
        ("f1 f2 f3 = 1", criterion_4),
        ("partition oracle", criterion_5),
        ("Göttsche formula", criterion_6),
        ("inverse pairs and multiplicativity", criterion_7),
        ("audit reports deterministic", criterion_8),
        ("growth bound", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
