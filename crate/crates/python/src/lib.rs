//! Python bindings. Operators are `Operator` objects; certificates travel
//! as the same JSON text the `dct` tool reads and writes.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use transcert::algsols::{all_algebraic_of_degree_seeded, AlgDecision};
use transcert::certsearch::{
    growth_probe, monomial_search, pseudoconstant_certificate, singularity_certificate,
    sympow_pseudoconstant_search, verify_certificate, AnsatzConfig,
};
use transcert::cli::{certificate_from_str, certificate_to_string, operator_from_str, operator_to_string, parse_operator};
use transcert::integrality::{is_pseudoconstant as class_is_pseudoconstant, reduce};
use transcert::localsolve::{classify_point, Point};
use transcert::ore::{lclm, singular_support, symmetric_power, OrePoly};

fn err(e: transcert::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Linear differential operator with coefficients in Q(x).
#[pyclass(frozen)]
pub struct Operator {
    inner: OrePoly,
}

impl Operator {
    fn wrap(inner: OrePoly) -> Self {
        Operator { inner }
    }
}

#[pymethods]
impl Operator {
    #[new]
    fn new(expr: &str) -> PyResult<Self> {
        parse_operator(expr).map(Operator::wrap).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        operator_from_str(text).map(Operator::wrap).map_err(err)
    }

    fn to_json(&self) -> String {
        operator_to_string(&self.inner)
    }

    #[getter]
    fn order(&self) -> isize {
        self.inner.ord()
    }

    /// Coefficients of `D^0, D^1, ...` as strings.
    fn coefficients(&self) -> Vec<String> {
        self.inner.coeffs().iter().map(|c| c.to_string()).collect()
    }

    fn adjoint(&self) -> Self {
        Operator::wrap(self.inner.adjoint())
    }

    fn lclm(&self, other: &Operator) -> PyResult<Self> {
        lclm(&self.inner, &other.inner).map(Operator::wrap).map_err(err)
    }

    fn symmetric_power(&self, s: usize) -> PyResult<Self> {
        symmetric_power(&self.inner, s).map(Operator::wrap).map_err(err)
    }

    fn right_rem(&self, other: &Operator) -> PyResult<Self> {
        self.inner.right_rem(&other.inner).map(Operator::wrap).map_err(err)
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Rational singular points as strings; `"inf"` when infinity is singular.
    fn singular_points(&self) -> PyResult<Vec<String>> {
        let s = singular_support(&self.inner).map_err(err)?;
        let mut out: Vec<String> = s.finite_points.iter().map(|p| p.to_string()).collect();
        if s.infinity_singular {
            out.push("inf".into());
        }
        Ok(out)
    }

    /// `(classification, exponents)` at a point such as `"0"`, `"1/2"` or `"inf"`.
    fn local_exponents(&self, point: &str) -> PyResult<(String, Vec<String>)> {
        let p: Point = point.parse().map_err(err)?;
        let c = classify_point(&self.inner, &p).map_err(err)?;
        Ok((c.kind.as_str().into(), c.exponents.iter().map(|e| e.to_string()).collect()))
    }

    fn __mul__(&self, other: &Operator) -> Self {
        Operator::wrap(&self.inner * &other.inner)
    }

    fn __add__(&self, other: &Operator) -> Self {
        Operator::wrap(&self.inner + &other.inner)
    }

    fn __sub__(&self, other: &Operator) -> Self {
        Operator::wrap(&self.inner - &other.inner)
    }

    fn __eq__(&self, other: &Operator) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Operator(\"{}\")", self.inner)
    }
}

/// Whether `[p]` is a pseudoconstant modulo `l`.
#[pyfunction]
fn is_pseudoconstant(p: &Operator, l: &Operator) -> PyResult<bool> {
    let c = reduce(&p.inner, &l.inner).map_err(err)?;
    class_is_pseudoconstant(&c).map_err(err)
}

/// Certificate JSON for a logarithmic, irregular or irrational-exponent point.
#[pyfunction]
fn singular_structure(l: &Operator) -> PyResult<Option<String>> {
    Ok(singularity_certificate(&l.inner).map_err(err)?.map(|c| certificate_to_string(&c)))
}

/// Monomial, then ansatz search on each symmetric power up to `max_s`.
#[pyfunction]
#[pyo3(signature = (l, max_s = 1))]
fn pseudoconstant(l: &Operator, max_s: usize) -> PyResult<Option<String>> {
    let out = sympow_pseudoconstant_search(&l.inner, max_s, &AnsatzConfig::default()).map_err(err)?;
    Ok(out.certificate.map(|c| certificate_to_string(&c)))
}

#[pyfunction]
#[pyo3(signature = (l, max_s = 5))]
fn monomial(l: &Operator, max_s: usize) -> PyResult<Option<String>> {
    let out = monomial_search(&l.inner, max_s).map_err(err)?;
    Ok(out.certificate.map(|c| certificate_to_string(&c)))
}

/// Certificate JSON claiming `[p]` is a pseudoconstant of the `s`-th symmetric power.
#[pyfunction]
#[pyo3(signature = (l, p, s = 1))]
fn make_certificate(l: &Operator, p: &Operator, s: usize) -> PyResult<String> {
    let c = pseudoconstant_certificate(&l.inner, s, p.inner.clone()).map_err(err)?;
    Ok(certificate_to_string(&c))
}

#[pyfunction]
fn verify(certificate: &str) -> PyResult<bool> {
    let c = certificate_from_str(certificate).map_err(err)?;
    verify_certificate(&c).map_err(err)
}

/// `(orders, classification)` of the symmetric powers `1..=max_s`.
#[pyfunction]
#[pyo3(signature = (l, max_s = 5, adjoin_polynomials = false))]
fn growth(l: &Operator, max_s: usize, adjoin_polynomials: bool) -> PyResult<(Vec<usize>, String)> {
    let g = growth_probe(&l.inner, max_s, adjoin_polynomials).map_err(err)?;
    Ok((g.orders.iter().map(|o| o.1).collect(), g.classification.as_str().into()))
}

/// `(decision, minimal polynomial or None)`.
#[pyfunction]
#[pyo3(signature = (l, degree, budget = 6, seed = 0))]
fn algebraic_solutions(l: &Operator, degree: usize, budget: usize, seed: u64) -> PyResult<(String, Option<String>)> {
    let d = all_algebraic_of_degree_seeded(&l.inner, degree, budget, seed).map_err(err)?;
    let m = match &d {
        AlgDecision::MinimalPolynomial(m) => Some(m.to_string()),
        _ => None,
    };
    Ok((d.as_str().into(), m))
}

#[pymodule]
pub fn transcert_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Operator>()?;
    m.add_function(wrap_pyfunction!(is_pseudoconstant, m)?)?;
    m.add_function(wrap_pyfunction!(singular_structure, m)?)?;
    m.add_function(wrap_pyfunction!(pseudoconstant, m)?)?;
    m.add_function(wrap_pyfunction!(monomial, m)?)?;
    m.add_function(wrap_pyfunction!(make_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(growth, m)?)?;
    m.add_function(wrap_pyfunction!(algebraic_solutions, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
