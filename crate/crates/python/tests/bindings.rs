use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module<F: FnOnce(Python<'_>, &Bound<'_, PyDict>)>(f: F) {
    Python::initialize();
    Python::attach(|py| {
        let m = pyo3::wrap_pymodule!(transcert_py::transcert_py)(py);
        let locals = PyDict::new(py);
        locals.set_item("t", m).unwrap();
        f(py, &locals);
    });
}

fn eval<'py>(py: Python<'py>, locals: &Bound<'py, PyDict>, code: &str) -> Bound<'py, PyAny> {
    let code = std::ffi::CString::new(code).unwrap();
    py.eval(&code, None, Some(locals)).unwrap()
}

fn run(py: Python<'_>, locals: &Bound<'_, PyDict>, code: &str) {
    let code = std::ffi::CString::new(code).unwrap();
    py.run(&code, None, Some(locals)).unwrap();
}

#[test]
fn operator_arithmetic() {
    with_module(|py, l| {
        run(py, l, "a = t.Operator('x*D - 1'); b = t.Operator('D')");
        assert_eq!(eval(py, l, "a.order").extract::<isize>().unwrap(), 1);
        assert!(eval(py, l, "(a * b - b * a) == t.Operator('-D')").extract::<bool>().unwrap());
        assert!(eval(py, l, "t.Operator.from_json(a.to_json()) == a").extract::<bool>().unwrap());
        assert!(eval(py, l, "a.right_rem(a).is_zero()").extract::<bool>().unwrap());
        let s: String = eval(py, l, "str(a.adjoint())").extract().unwrap();
        assert_eq!(s, "(-x)*D + (-2)");
    });
}

#[test]
fn bad_input_raises_value_error() {
    with_module(|py, l| {
        let code = std::ffi::CString::new("t.Operator('D*x')").unwrap();
        let e = py.eval(&code, None, Some(l)).unwrap_err();
        assert!(e.is_instance_of::<pyo3::exceptions::PyValueError>(py));
    });
}

#[test]
fn local_exponents_and_singularities() {
    with_module(|py, l| {
        run(py, l, "a = t.Operator('(x^2 - x)*D^2 + (31/24*x - 5/6)*D + 1/48')");
        let pts: Vec<String> = eval(py, l, "a.singular_points()").extract().unwrap();
        assert_eq!(pts, ["0", "1", "inf"]);
        let (kind, e): (String, Vec<String>) = eval(py, l, "a.local_exponents('inf')").extract().unwrap();
        assert_eq!(kind, "puiseux_regular");
        assert_eq!(e, ["1/8", "1/6"]);
    });
}

#[test]
fn certificates_round_trip() {
    with_module(|py, l| {
        run(py, l, "c = t.monomial(t.Operator('(x^2-x)*D^2 + (65/24*x-7/6)*D + 35/48'), 5)");
        assert!(eval(py, l, "t.verify(c)").extract::<bool>().unwrap());
        run(py, l, "import json; d = json.loads(c); d['s'] = 4; bad = json.dumps(d)");
        assert!(!eval(py, l, "t.verify(bad)").extract::<bool>().unwrap());
        assert!(eval(py, l, "t.singular_structure(t.Operator('D^2 - 1')) is not None").extract::<bool>().unwrap());
    });
}

#[test]
fn growth_and_algebraic() {
    with_module(|py, l| {
        let (orders, class): (Vec<usize>, String) = eval(py, l, "t.growth(t.Operator('D^2 - 1'), 4)").extract().unwrap();
        assert_eq!(orders, [2, 3, 4, 5]);
        assert_eq!(class, "consistent_with_linear");
        let (d, m): (String, Option<String>) =
            eval(py, l, "t.algebraic_solutions(t.Operator('2*x*D - 1'), 2)").extract().unwrap();
        assert_eq!(d, "minimal_polynomial");
        assert!(m.unwrap().starts_with("y^2 - "));
    });
}
