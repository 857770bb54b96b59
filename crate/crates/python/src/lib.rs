//! Python bindings: evaluation, exact series, Hilbert-scheme tables and the
//! verification suites. Reports and tables cross the boundary as plain
//! dictionaries.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

use spectra_qkit::fock::{self, CharacterSpec, WreathSpec};
use spectra_qkit::hilbert::{self, BettiVector};
use spectra_qkit::identities::{self, Suite, SuiteConfig};
use spectra_qkit::qseries::{self, WeberIndex};
use spectra_qkit::spectral::{self, RatioVariant, ZeroBox, ZeroIndex};
use spectra_qkit::table::CoefficientTable;
use spectra_qkit::{Conventions, Error, Exponent};

fn to_py(err: Error) -> PyErr {
    match err {
        Error::Pole(_) | Error::Singular(_) => PyZeroDivisionError::new_err(err.to_string()),
        Error::Domain(_) | Error::InvalidArgument(_) | Error::OffGrid { .. } => {
            PyValueError::new_err(err.to_string())
        }
        _ => PyRuntimeError::new_err(err.to_string()),
    }
}

trait PyResultExt<T> {
    fn py_err(self) -> PyResult<T>;
}

impl<T> PyResultExt<T> for spectra_qkit::Result<T> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> PyResult<T> {
    s.parse().py_err()
}

/// Parses JSON text into Python objects with the standard library.
fn json_to_py(py: Python<'_>, text: &str) -> PyResult<PyObject> {
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (text,))?.unbind())
}

fn serialize(value: &impl serde::Serialize) -> PyResult<String> {
    serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pyclass(name = "ModularParameter", frozen)]
#[derive(Clone, Copy)]
struct PyModularParameter(spectral::ModularParameter);

#[pymethods]
impl PyModularParameter {
    #[new]
    fn new(re: f64, im: f64) -> PyResult<Self> {
        spectral::ModularParameter::new(re, im).map(Self).py_err()
    }

    #[staticmethod]
    fn from_complex(tau: Complex64) -> PyResult<Self> {
        spectral::ModularParameter::from_complex(tau)
            .map(Self)
            .py_err()
    }

    #[getter]
    fn re(&self) -> f64 {
        self.0.re()
    }

    #[getter]
    fn im(&self) -> f64 {
        self.0.im()
    }

    #[getter]
    fn tau(&self) -> Complex64 {
        self.0.tau()
    }

    #[getter]
    fn q(&self) -> Complex64 {
        self.0.q()
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.0.alpha()
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.0.beta()
    }

    #[pyo3(signature = (sign = "+", reading = "half-period"))]
    fn eta(&self, sign: &str, reading: &str) -> PyResult<Complex64> {
        Ok(self.0.eta(parse(sign)?, parse(reading)?))
    }

    fn __repr__(&self) -> String {
        format!("ModularParameter({}, {})", self.0.re(), self.0.im())
    }
}

#[pyclass(name = "Estimate", frozen)]
#[derive(Clone, Copy)]
struct PyEstimate(spectral::Estimate);

#[pymethods]
impl PyEstimate {
    #[getter]
    fn value(&self) -> Complex64 {
        self.0.value
    }

    #[getter]
    fn tail_bound(&self) -> f64 {
        self.0.tail_bound
    }

    #[getter]
    fn cutoff(&self) -> u32 {
        self.0.cutoff
    }

    fn __repr__(&self) -> String {
        format!(
            "Estimate(value={}, tail_bound={:e}, cutoff={})",
            self.0.value, self.0.tail_bound, self.0.cutoff
        )
    }
}

#[pyclass(name = "FormalSeries", frozen)]
#[derive(Clone)]
struct PyFormalSeries(spectra_qkit::FormalSeries);

#[pymethods]
impl PyFormalSeries {
    /// Non-zero terms as `(exponent, coefficient)` string pairs.
    fn terms(&self) -> Vec<(String, String)> {
        self.0
            .terms()
            .into_iter()
            .map(|(e, c)| (e.to_string(), c.to_string()))
            .collect()
    }

    /// Integer coefficients on the integer grid from the offset, when they exist.
    fn integer_coefficients(&self) -> PyResult<Vec<i64>> {
        let table = CoefficientTable::from_series("series", &self.0);
        table
            .rows
            .iter()
            .map(|row| {
                let c = &row.coefficients[0];
                c.strip_suffix("/1")
                    .and_then(|n| n.parse::<i64>().ok())
                    .ok_or_else(|| {
                        PyValueError::new_err(format!("coefficient {c} is not an integer"))
                    })
            })
            .collect()
    }

    #[getter]
    fn order(&self) -> String {
        self.0.order().to_string()
    }

    fn coefficient(&self, exponent: &str) -> PyResult<Option<String>> {
        let e: Exponent = exponent
            .parse()
            .map_err(|_| PyValueError::new_err(format!("`{exponent}` is not a rational")))?;
        Ok(self.0.coefficient(e).map(|c| c.to_string()))
    }

    fn evaluate(&self, tau: &PyModularParameter) -> Complex64 {
        self.0.evaluate(&tau.0)
    }

    fn to_json(&self, py: Python<'_>) -> PyResult<PyObject> {
        json_to_py(py, &serialize(&self.0.to_json())?)
    }

    fn table(&self, py: Python<'_>, name: &str) -> PyResult<PyObject> {
        json_to_py(
            py,
            &serialize(&CoefficientTable::from_series(name, &self.0))?,
        )
    }

    fn __mul__(&self, other: &PyFormalSeries) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __eq__(&self, other: &PyFormalSeries) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

fn conventions(
    m_base: u32,
    eta_sign: &str,
    eta_reading: &str,
    r_reading: &str,
) -> PyResult<Conventions> {
    Ok(Conventions::default()
        .with_index_base(parse(&m_base.to_string())?)
        .with_eta_sign(parse(eta_sign)?)
        .with_eta_reading(parse(eta_reading)?)
        .with_r_reading(parse(r_reading)?))
}

fn policy(tolerance: Option<f64>) -> spectral::TruncationPolicy {
    let p = spectral::TruncationPolicy::default();
    match tolerance {
        Some(t) => p.with_tolerance(t),
        None => p,
    }
}

#[pyfunction]
#[pyo3(signature = (s, tau, tolerance = None))]
fn z_gamma(s: Complex64, tau: &PyModularParameter, tolerance: Option<f64>) -> PyResult<PyEstimate> {
    spectral::z_gamma_product(s, &tau.0, &policy(tolerance))
        .map(PyEstimate)
        .py_err()
}

#[pyfunction]
#[pyo3(signature = (s, tau, tolerance = None))]
fn z_gamma_logseries(
    s: Complex64,
    tau: &PyModularParameter,
    tolerance: Option<f64>,
) -> PyResult<PyEstimate> {
    spectral::z_gamma_logseries(s, &tau.0, &policy(tolerance))
        .map(PyEstimate)
        .py_err()
}

#[pyfunction]
#[pyo3(signature = (s, tau, tolerance = None))]
fn ruelle(s: Complex64, tau: &PyModularParameter, tolerance: Option<f64>) -> PyResult<PyEstimate> {
    spectral::ruelle(s, &tau.0, &policy(tolerance))
        .map(PyEstimate)
        .py_err()
}

#[pyfunction]
#[pyo3(signature = (s, tau, variant = "plain", eta_sign = "+", eta_reading = "half-period"))]
fn z_ratio(
    s: Complex64,
    tau: &PyModularParameter,
    variant: &str,
    eta_sign: &str,
    eta_reading: &str,
) -> PyResult<PyEstimate> {
    let variant = match variant {
        "plain" => RatioVariant::Plain,
        "conjugate" => RatioVariant::Conjugate,
        "eta-shifted" => RatioVariant::EtaShifted,
        "conjugate-eta-shifted" => RatioVariant::ConjugateEtaShifted,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown ratio variant `{other}`"
            )))
        }
    };
    let conv = conventions(0, eta_sign, eta_reading, "ratio")?;
    spectral::z_ratio(s, &tau.0, variant, &conv, &policy(None))
        .map(PyEstimate)
        .py_err()
}

#[pyfunction]
fn dedekind_eta(tau: &PyModularParameter) -> PyResult<PyEstimate> {
    qseries::dedekind_eta(&tau.0, &policy(None))
        .map(PyEstimate)
        .py_err()
}

fn weber_index(index: u8) -> PyResult<WeberIndex> {
    WeberIndex::try_from(index).py_err()
}

#[pyfunction]
#[pyo3(signature = (index, tau, m_base = 0))]
fn weber_f(index: u8, tau: &PyModularParameter, m_base: u32) -> PyResult<PyEstimate> {
    let base = parse(&m_base.to_string())?;
    qseries::weber_f(weber_index(index)?, &tau.0, base, &policy(None))
        .map(PyEstimate)
        .py_err()
}

#[pyfunction]
#[pyo3(signature = (index, order, m_base = 0))]
fn weber_f_series(index: u8, order: u32, m_base: u32) -> PyResult<PyFormalSeries> {
    let base = parse(&m_base.to_string())?;
    qseries::weber_f_series(weber_index(index)?, order, base)
        .map(PyFormalSeries)
        .py_err()
}

#[pyfunction]
fn partition_gf(order: u32) -> PyResult<PyFormalSeries> {
    qseries::partition_gf(order).map(PyFormalSeries).py_err()
}

#[pyfunction]
fn dedekind_eta_series(order: u32) -> PyResult<PyFormalSeries> {
    qseries::dedekind_eta_series(order)
        .map(PyFormalSeries)
        .py_err()
}

#[pyfunction]
fn super_character_series(dim_even: u32, dim_odd: u32, order: u32) -> PyResult<PyFormalSeries> {
    fock::super_character_series(&CharacterSpec::new(dim_even, dim_odd), order)
        .map(PyFormalSeries)
        .py_err()
}

#[pyfunction]
fn super_supertrace(dim_even: u32, dim_odd: u32, order: u32) -> PyResult<PyFormalSeries> {
    fock::super_supertrace(&CharacterSpec::new(dim_even, dim_odd), order)
        .map(PyFormalSeries)
        .py_err()
}

#[pyfunction]
#[pyo3(signature = (euler_number, order, class_count = 1))]
fn ktheory_euler_series(
    euler_number: i64,
    order: u32,
    class_count: u32,
) -> PyResult<PyFormalSeries> {
    let spec = WreathSpec::new(euler_number, class_count).py_err()?;
    fock::ktheory_euler_series(&spec, order)
        .map(PyFormalSeries)
        .py_err()
}

#[pyfunction]
fn fock_graded_dim_series(dim_even: u32, dim_odd: u32, order: u32) -> PyResult<PyFormalSeries> {
    fock::fock_graded_dim_series(&CharacterSpec::new(dim_even, dim_odd), order)
        .map(PyFormalSeries)
        .py_err()
}

#[pyfunction]
fn point_case_series(class_count: u32, order: u32) -> PyResult<PyFormalSeries> {
    fock::point_case_series(class_count, order)
        .map(PyFormalSeries)
        .py_err()
}

fn betti(values: (u32, u32, u32, u32, u32)) -> BettiVector {
    let (a, b, c, d, e) = values;
    BettiVector::new(a, b, c, d, e)
}

/// Coefficient table of the Hilbert-scheme series: `rows[N]` lists the
/// coefficients of `r^0, r^1, …` in `P_r(X^[N])`.
#[pyfunction]
#[pyo3(signature = (betti_numbers, order_q, order_r = None))]
fn goettsche_series(
    py: Python<'_>,
    betti_numbers: (u32, u32, u32, u32, u32),
    order_q: usize,
    order_r: Option<usize>,
) -> PyResult<PyObject> {
    let b = betti(betti_numbers);
    let order_r = order_r.unwrap_or_else(|| hilbert::full_r_order(order_q));
    let series = hilbert::goettsche_series(&b, order_q, order_r).py_err()?;
    let table = CoefficientTable::from_bivariate("goettsche", &series).param("betti", b);
    json_to_py(py, &serialize(&table)?)
}

#[pyfunction]
fn euler_specialization(
    betti_numbers: (u32, u32, u32, u32, u32),
    order: u32,
) -> PyResult<PyFormalSeries> {
    hilbert::euler_specialization(&betti(betti_numbers), order)
        .map(PyFormalSeries)
        .py_err()
}

#[pyfunction]
#[pyo3(signature = (row, ell, eps, tau, eta_sign = "+", eta_reading = "half-period", r_reading = "ratio", tolerance = 1e-8))]
#[allow(clippy::too_many_arguments)]
fn verify_table_row(
    py: Python<'_>,
    row: u8,
    ell: u32,
    eps: &str,
    tau: &PyModularParameter,
    eta_sign: &str,
    eta_reading: &str,
    r_reading: &str,
    tolerance: f64,
) -> PyResult<PyObject> {
    let eps: Exponent = eps
        .parse()
        .map_err(|_| PyValueError::new_err(format!("`{eps}` is not a rational")))?;
    let conv = conventions(0, eta_sign, eta_reading, r_reading)?;
    let report =
        identities::verify_table_row(row, ell, eps, &tau.0, &conv, tolerance, &policy(None))
            .py_err()?;
    json_to_py(py, &serialize(&report)?)
}

#[pyfunction]
fn verify_zero(
    py: Python<'_>,
    n: i64,
    k1: u32,
    k2: u32,
    tau: &PyModularParameter,
) -> PyResult<PyObject> {
    let check = spectral::verify_zero(ZeroIndex::new(n, k1, k2), &tau.0, &policy(None)).py_err()?;
    json_to_py(py, &serialize(&check)?)
}

/// Runs a named suite and returns its reports as a list of dictionaries.
#[pyfunction]
#[pyo3(signature = (suite, tau = None, tolerance = None, order = 20, zero_box = None))]
fn run_suite(
    py: Python<'_>,
    suite: &str,
    tau: Option<&PyModularParameter>,
    tolerance: Option<f64>,
    order: u32,
    zero_box: Option<(f64, f64, f64, f64)>,
) -> PyResult<PyObject> {
    let suite: Suite = parse(suite)?;
    let zero_box = match zero_box {
        Some((a, b, c, d)) => Some(ZeroBox::new(a, b, c, d).py_err()?),
        None => None,
    };
    let config = SuiteConfig {
        taus: tau.map(|t| vec![t.0]),
        tolerance,
        order,
        zero_box,
        ..SuiteConfig::default()
    };
    let reports = identities::run_suite(suite, &config).py_err()?;
    json_to_py(py, &serialize(&reports)?)
}

#[pyfunction]
fn manifest(py: Python<'_>) -> PyResult<PyObject> {
    json_to_py(py, &serialize(&identities::manifest())?)
}

#[pymodule]
fn _spectra_qkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModularParameter>()?;
    m.add_class::<PyEstimate>()?;
    m.add_class::<PyFormalSeries>()?;
    m.add_function(wrap_pyfunction!(z_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(z_gamma_logseries, m)?)?;
    m.add_function(wrap_pyfunction!(ruelle, m)?)?;
    m.add_function(wrap_pyfunction!(z_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(dedekind_eta, m)?)?;
    m.add_function(wrap_pyfunction!(weber_f, m)?)?;
    m.add_function(wrap_pyfunction!(weber_f_series, m)?)?;
    m.add_function(wrap_pyfunction!(partition_gf, m)?)?;
    m.add_function(wrap_pyfunction!(dedekind_eta_series, m)?)?;
    m.add_function(wrap_pyfunction!(super_character_series, m)?)?;
    m.add_function(wrap_pyfunction!(super_supertrace, m)?)?;
    m.add_function(wrap_pyfunction!(ktheory_euler_series, m)?)?;
    m.add_function(wrap_pyfunction!(fock_graded_dim_series, m)?)?;
    m.add_function(wrap_pyfunction!(point_case_series, m)?)?;
    m.add_function(wrap_pyfunction!(goettsche_series, m)?)?;
    m.add_function(wrap_pyfunction!(euler_specialization, m)?)?;
    m.add_function(wrap_pyfunction!(verify_table_row, m)?)?;
    m.add_function(wrap_pyfunction!(verify_zero, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(manifest, m)?)?;
    Ok(())
}
