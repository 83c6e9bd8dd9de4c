use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use num_complex::Complex64;
use serde_json::Value;

use paraprod::algebra::{Poly, Scalar};
use paraprod::classify::{classify_expr, two_letter_table, SpaceClass};
use paraprod::expr::{format, format_zpoly, parse, parse_zpoly, OperatorExpr, Style};
use paraprod::norms::{
    bergman_norm, bloch_seminorm, hardy_norm, operator_matrix, operator_norm_trunc, polar_grid, radius_ladder,
    QuadConfig,
};
use paraprod::rewrite::{evaluate_exact, normalize as rewrite_normalize, CanonicalForm};
use paraprod::series::{symbol_series, SymbolSpec};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn spec(text: &str) -> PyResult<SymbolSpec> {
    let s: SymbolSpec = text.parse().map_err(value_err)?;
    s.validate().map_err(value_err)?;
    Ok(s)
}

fn space(name: &str, alpha: f64, p: f64) -> PyResult<SpaceClass> {
    match name {
        "hardy" => Ok(SpaceClass::hardy(p)),
        "bergman" if alpha > -1.0 => Ok(SpaceClass::bergman(alpha, p)),
        "bergman" => Err(value_err(format!("bergman spaces need alpha > -1, got {alpha}"))),
        _ => Err(value_err(format!("unknown space {name:?}, expected bergman or hardy"))),
    }
}

/// An operator expression in the letters M, S, T and d0{...}.
#[pyclass(name = "Expr", module = "paraprod", frozen, from_py_object)]
#[derive(Clone)]
struct PyExpr(OperatorExpr);

#[pymethods]
impl PyExpr {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse(text).map(PyExpr).map_err(value_err)
    }

    fn __str__(&self) -> String {
        format(&self.0, Style::Plain)
    }

    fn __repr__(&self) -> String {
        format!("Expr({:?})", format(&self.0, Style::Plain))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyExpr(OperatorExpr::product(vec![self.0.clone(), other.0.clone()]))
    }

    fn __add__(&self, other: &Self) -> Self {
        PyExpr(OperatorExpr::sum(vec![self.0.clone(), other.0.clone()]))
    }

    fn __sub__(&self, other: &Self) -> Self {
        let neg = other.0.clone().scaled(Poly::new(vec![Scalar::from_int(-1)]));
        PyExpr(OperatorExpr::sum(vec![self.0.clone(), neg]))
    }

    fn __pow__(&self, n: u32, _modulo: Option<u32>) -> PyResult<Self> {
        if n == 0 {
            return Err(value_err("exponent must be at least 1"));
        }
        Ok(PyExpr(self.0.clone().pow(n)))
    }

    fn latex(&self) -> String {
        format(&self.0, Style::Latex)
    }

    fn letter_count(&self) -> usize {
        self.0.letter_count()
    }

    fn normalize(&self) -> PyResult<PyCanonical> {
        rewrite_normalize(&self.0).map(PyCanonical).map_err(value_err)
    }
}

/// Canonical form: coefficients of S^j T^k plus a d0 part.
#[pyclass(name = "CanonicalForm", module = "paraprod", frozen)]
struct PyCanonical(CanonicalForm);

#[pymethods]
impl PyCanonical {
    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("CanonicalForm({:?})", self.0.to_string())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn is_trivial(&self) -> bool {
        self.0.is_trivial()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.to_json())
    }
}

fn as_expr(obj: &Bound<'_, PyAny>) -> PyResult<OperatorExpr> {
    if let Ok(e) = obj.cast::<PyExpr>() {
        return Ok(e.get().0.clone());
    }
    parse(&obj.extract::<String>()?).map_err(value_err)
}

#[pyfunction]
fn normalize(expr: &Bound<'_, PyAny>) -> PyResult<PyCanonical> {
    rewrite_normalize(&as_expr(expr)?).map(PyCanonical).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (expr, space_name = "bergman", alpha = 0.0, p = 2.0))]
fn classify<'py>(
    py: Python<'py>,
    expr: &Bound<'py, PyAny>,
    space_name: &str,
    alpha: f64,
    p: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let c = classify_expr(&as_expr(expr)?, space(space_name, alpha, p)?).map_err(value_err)?;
    to_py(py, &c.to_json())
}

#[pyfunction]
#[pyo3(signature = (space_name = "bergman"))]
fn table(space_name: &str) -> PyResult<Vec<(String, String)>> {
    let sp = space(space_name, 0.0, 2.0)?;
    Ok(two_letter_table(sp).into_iter().map(|(w, c)| (w, c.verdict.tag().to_string())).collect())
}

/// Exact action on polynomials: returns the image of `f` as text.
#[pyfunction]
fn evaluate(expr: &Bound<'_, PyAny>, f: &str, g: &str) -> PyResult<String> {
    let fp = parse_zpoly(f).map_err(value_err)?;
    let gp = parse_zpoly(g).map_err(value_err)?;
    Ok(format_zpoly(&evaluate_exact(&as_expr(expr)?, &fp, &gp)))
}

/// First `n` Taylor coefficients of a series spec such as `pow(logE,0.6)`.
#[pyfunction]
fn series(f: &str, n: usize) -> PyResult<Vec<Complex64>> {
    Ok(symbol_series(&spec(f)?, n).map_err(value_err)?.coeffs().to_vec())
}

#[pyfunction]
#[pyo3(signature = (f, alpha = 0.0, p = 2.0, radial_nodes = 32, angular_nodes = 256, refinement = 4))]
fn bergman(f: &str, alpha: f64, p: f64, radial_nodes: usize, angular_nodes: usize, refinement: usize) -> PyResult<f64> {
    if alpha <= -1.0 {
        return Err(value_err(format!("alpha must be > -1, got {alpha}")));
    }
    let cfg = QuadConfig { radial_nodes, angular_nodes, refinement, focus_angle: None };
    Ok(bergman_norm(&spec(f)?, alpha, p, &cfg))
}

#[pyfunction]
#[pyo3(signature = (f, p = 2.0, k = 1024))]
fn hardy(f: &str, p: f64, k: usize) -> PyResult<f64> {
    Ok(hardy_norm(&spec(f)?, p, k))
}

#[pyfunction]
#[pyo3(signature = (f, ladder = 6, angles = 256))]
fn bloch(f: &str, ladder: u32, angles: usize) -> PyResult<f64> {
    Ok(bloch_seminorm(&spec(f)?, &polar_grid(&radius_ladder(ladder), angles)))
}

/// Norm of the N x N finite section on A^2_alpha.
#[pyfunction]
#[pyo3(signature = (expr, g, alpha = 0, trunc = 100, tol = 1e-12))]
fn opnorm(expr: &Bound<'_, PyAny>, g: &str, alpha: i32, trunc: usize, tol: f64) -> PyResult<f64> {
    let gp = parse_zpoly(g).map_err(value_err)?;
    let mx = operator_matrix(&as_expr(expr)?, &gp, alpha, trunc).map_err(value_err)?;
    operator_norm_trunc(&mx, tol).map_err(value_err)
}

#[pymodule]
#[pyo3(name = "paraprod")]
fn paraprod_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyExpr>()?;
    m.add_class::<PyCanonical>()?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(series, m)?)?;
    m.add_function(wrap_pyfunction!(bergman, m)?)?;
    m.add_function(wrap_pyfunction!(hardy, m)?)?;
    m.add_function(wrap_pyfunction!(bloch, m)?)?;
    m.add_function(wrap_pyfunction!(opnorm, m)?)?;
    Ok(())
}
