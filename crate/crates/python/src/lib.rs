//! Python bindings. Rationals come back as `fractions.Fraction`, counts as
//! `int`, and `inf` bounds as `float("inf")`.
//!
//! Shapes may be given as a `Partition`, a list of parts or a string such as
//! `"4,3,2"`. Descent functions may be a spec string (`"ones"`,
//! `"geometric:2"`, ...) or a list of values `f(1), ..., f(n − 1)` given as
//! ints, `Fraction`s or `"p/q"` strings.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyList, PyString};

use syt_descents::rational::{parse_rational, Rational};
use syt_descents::stats::corollary_ratio;
use syt_descents::{
    enumerate, parse_partition, sample, stats, Cell, DescentFunction, Error, FSpec, Partition, Tableau,
    DEFAULT_AUDIT_GUARD, DEFAULT_GUARD,
};

create_exception!(syt_descents_py, SytError, PyValueError, "Domain error raised by syt_descents_py.");

fn err(e: Error) -> PyErr {
    SytError::new_err(format!("{}: {e}", e.name()))
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.to_string(),))
}

fn big_int<'py>(py: Python<'py>, digits: String) -> PyResult<Bound<'py, PyAny>> {
    py.import("builtins")?.getattr("int")?.call1((digits,))
}

fn bound<'py>(py: Python<'py>, b: &stats::Bound) -> PyResult<Bound<'py, PyAny>> {
    match b {
        stats::Bound::Finite(r) => fraction(py, r),
        stats::Bound::Infinite => Ok(f64::INFINITY.into_pyobject(py)?.into_any()),
    }
}

fn from_json<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.getattr("loads")?.call1((text,))
}

fn shape_of(obj: &Bound<'_, PyAny>) -> PyResult<Partition> {
    if let Ok(p) = obj.cast::<PyPartition>() {
        return Ok(p.borrow().inner.clone());
    }
    if let Ok(s) = obj.cast::<PyString>() {
        return parse_partition(s.to_str()?).map_err(err);
    }
    let parts: Vec<i64> = obj.extract()?;
    let text = parts.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
    parse_partition(&text).map_err(err)
}

fn function_of(obj: &Bound<'_, PyAny>, n: usize) -> PyResult<DescentFunction> {
    if let Ok(s) = obj.cast::<PyString>() {
        let spec: FSpec = s.to_str()?.parse().map_err(err)?;
        return spec.build(n).map_err(err);
    }
    let values =
        obj.try_iter()?.map(|v| parse_rational(&v?.str()?.to_string()).map_err(err)).collect::<PyResult<Vec<_>>>()?;
    let f = DescentFunction::new(values);
    f.check_len(n).map_err(err)?;
    Ok(f)
}

/// An integer partition with non-increasing positive parts.
#[pyclass(name = "Partition", module = "syt_descents_py", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPartition {
    inner: Partition,
}

#[pymethods]
impl PyPartition {
    #[new]
    fn new(parts: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyPartition { inner: shape_of(parts)? })
    }

    #[getter]
    fn parts(&self) -> Vec<usize> {
        self.inner.parts().to_vec()
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn conjugate(&self) -> PyPartition {
        PyPartition { inner: self.inner.conjugate() }
    }

    /// Hook length of the 1-based cell `(row, col)`.
    fn hook_length(&self, row: usize, col: usize) -> PyResult<usize> {
        self.inner.hook_length(Cell::new(row, col)).map_err(err)
    }

    fn count_syt<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        big_int(py, self.inner.count_syt().map_err(err)?.to_string())
    }

    fn __repr__(&self) -> String {
        format!("Partition([{}])", self.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// A standard Young tableau, stored as rows of entries.
#[pyclass(name = "Tableau", module = "syt_descents_py", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyTableau {
    inner: Tableau,
}

#[pymethods]
impl PyTableau {
    #[new]
    fn new(rows: Vec<Vec<u32>>) -> PyResult<Self> {
        Ok(PyTableau { inner: Tableau::from_rows(rows).map_err(err)? })
    }

    #[getter]
    fn rows(&self) -> Vec<Vec<u32>> {
        self.inner.rows().to_vec()
    }

    #[getter]
    fn shape(&self) -> PyPartition {
        PyPartition { inner: self.inner.shape().clone() }
    }

    fn descent_set(&self) -> Vec<usize> {
        self.inner.descent_set().as_slice().to_vec()
    }

    fn inverse_reading_word(&self) -> Vec<usize> {
        self.inner.inverse_reading_word()
    }

    fn transpose(&self) -> PyTableau {
        PyTableau { inner: self.inner.transpose() }
    }

    /// `Σ_{i ∈ Des(T)} f(i)`.
    fn descent_value<'py>(&self, py: Python<'py>, f: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        let f = function_of(f, self.inner.size())?;
        fraction(py, &self.inner.descent_value(&f).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("Tableau({:?})", self.inner.rows())
    }

    fn __str__(&self) -> String {
        self.inner.to_text()
    }
}

fn tableaux(list: Vec<Tableau>) -> Vec<PyTableau> {
    list.into_iter().map(|inner| PyTableau { inner }).collect()
}

#[pyfunction]
fn count_syt<'py>(py: Python<'py>, shape: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    big_int(py, shape_of(shape)?.count_syt().map_err(err)?.to_string())
}

#[pyfunction]
fn partitions_of(n: usize) -> Vec<PyPartition> {
    syt_descents::partitions_of(n).map(|inner| PyPartition { inner }).collect()
}

/// Every tableau of `shape`, in the library's fixed order.
#[pyfunction]
#[pyo3(signature = (shape, guard = DEFAULT_GUARD))]
fn enumerate_syt(py: Python<'_>, shape: &Bound<'_, PyAny>, guard: u64) -> PyResult<Vec<PyTableau>> {
    let shape = shape_of(shape)?;
    let list = py.detach(|| enumerate::enumerate_syt(&shape, guard).map(Iterator::collect));
    Ok(tableaux(list.map_err(err)?))
}

/// `count` uniform tableaux; the result depends only on `seed`.
#[pyfunction]
#[pyo3(signature = (shape, count = 1, seed = 0))]
fn sample_syt(py: Python<'_>, shape: &Bound<'_, PyAny>, count: u64, seed: u64) -> PyResult<Vec<PyTableau>> {
    let shape = shape_of(shape)?;
    Ok(tableaux(py.detach(|| sample::sample_syt_par(&shape, count, seed))))
}

/// Sorts a row-major filling of `shape` into a standard tableau.
#[pyfunction]
fn nps_sort(shape: &Bound<'_, PyAny>, values: Vec<u32>) -> PyResult<PyTableau> {
    let filling = sample::Filling::from_row_major(&shape_of(shape)?, &values).map_err(err)?;
    Ok(PyTableau { inner: sample::nps_sort(&filling) })
}

#[pyfunction]
#[pyo3(signature = (shape, guard = DEFAULT_AUDIT_GUARD))]
fn exhaustive_audit<'py>(py: Python<'py>, shape: &Bound<'py, PyAny>, guard: u64) -> PyResult<Bound<'py, PyAny>> {
    let shape = shape_of(shape)?;
    let report = py.detach(|| sample::exhaustive_audit(&shape, guard)).map_err(err)?;
    from_json(py, &report)
}

#[pyfunction]
fn expectation<'py>(py: Python<'py>, shape: &Bound<'py, PyAny>, f: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let shape = shape_of(shape)?;
    let f = function_of(f, shape.size())?;
    fraction(py, &stats::expectation(&shape, &f).map_err(err)?)
}

#[pyfunction]
fn variance<'py>(py: Python<'py>, shape: &Bound<'py, PyAny>, f: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let shape = shape_of(shape)?;
    let f = function_of(f, shape.size())?;
    fraction(py, &stats::variance(&shape, &f).map_err(err)?)
}

/// `V/E²`, or `None` when the expectation is zero.
#[pyfunction]
fn normalized_variance<'py>(
    py: Python<'py>,
    shape: &Bound<'py, PyAny>,
    f: &Bound<'py, PyAny>,
) -> PyResult<Option<Bound<'py, PyAny>>> {
    let shape = shape_of(shape)?;
    let f = function_of(f, shape.size())?;
    let report = stats::normalized_variance(&shape, &f).map_err(err)?;
    report.normalized_variance.as_ref().map(|r| fraction(py, r)).transpose()
}

/// The coefficients `c`, `d`, `e` of a shape and its conjugate.
#[pyfunction]
fn shape_stats<'py>(py: Python<'py>, shape: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let s = stats::shape_stats(&shape_of(shape)?).map_err(err)?;
    let dict = pyo3::types::PyDict::new(py);
    dict.set_item("syt_count", big_int(py, s.count.to_string())?)?;
    for (key, value) in [
        ("c_conj", &s.c_conj),
        ("c_self", &s.c_self),
        ("d_self", &s.d_self),
        ("d_conj", &s.d_conj),
        ("e_self", &s.e_self),
        ("e_conj", &s.e_conj),
    ] {
        dict.set_item(key, fraction(py, value)?)?;
    }
    Ok(dict.into_any())
}

#[pyfunction]
fn eq1_min_constant<'py>(
    py: Python<'py>,
    shape: &Bound<'py, PyAny>,
    f: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let shape = shape_of(shape)?;
    let f = function_of(f, shape.size())?;
    bound(py, &stats::eq1_min_constant(&shape, &f).map_err(err)?)
}

/// `n Σ f(i)² / (Σ f(i))²` for `f` on `1..n`.
#[pyfunction]
fn corollary<'py>(py: Python<'py>, f: &Bound<'py, PyAny>, n: usize) -> PyResult<Bound<'py, PyAny>> {
    let f = function_of(f, n)?;
    bound(py, &corollary_ratio(&f).map_err(err)?)
}

/// Rows of a boundedness scan as dicts, in the CLI's JSON layout.
#[pyfunction]
#[pyo3(signature = (family, f = "ones", start = 2, stop = 50))]
fn boundedness_scan<'py>(
    py: Python<'py>,
    family: &str,
    f: &str,
    start: usize,
    stop: usize,
) -> PyResult<Bound<'py, PyList>> {
    let family: stats::ShapeFamily = family.parse().map_err(err)?;
    let spec: FSpec = f.parse().map_err(err)?;
    let report = py.detach(|| stats::boundedness_scan(&family, &spec, start..=stop)).map_err(err)?;
    let rows = report.rows.iter().map(|r| from_json(py, r)).collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, rows)
}

#[pymodule]
pub fn syt_descents_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SytError", m.py().get_type::<SytError>())?;
    m.add_class::<PyPartition>()?;
    m.add_class::<PyTableau>()?;
    m.add_function(wrap_pyfunction!(count_syt, m)?)?;
    m.add_function(wrap_pyfunction!(partitions_of, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_syt, m)?)?;
    m.add_function(wrap_pyfunction!(sample_syt, m)?)?;
    m.add_function(wrap_pyfunction!(nps_sort, m)?)?;
    m.add_function(wrap_pyfunction!(exhaustive_audit, m)?)?;
    m.add_function(wrap_pyfunction!(expectation, m)?)?;
    m.add_function(wrap_pyfunction!(variance, m)?)?;
    m.add_function(wrap_pyfunction!(normalized_variance, m)?)?;
    m.add_function(wrap_pyfunction!(shape_stats, m)?)?;
    m.add_function(wrap_pyfunction!(eq1_min_constant, m)?)?;
    m.add_function(wrap_pyfunction!(corollary, m)?)?;
    m.add_function(wrap_pyfunction!(boundedness_scan, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use pyo3::types::PyDict;

    fn module(py: Python<'_>) -> Bound<'_, PyModule> {
        let m = PyModule::new(py, "syt_descents_py").unwrap();
        syt_descents_py(&m).unwrap();
        m
    }

    fn eval<'py>(py: Python<'py>, code: &str) -> Bound<'py, PyAny> {
        let globals = PyDict::new(py);
        globals.set_item("m", module(py)).unwrap();
        let code = std::ffi::CString::new(code).unwrap();
        py.eval(&code, Some(&globals), None).unwrap()
    }

    #[test]
    fn counts_and_moments() {
        Python::attach(|py| {
            assert_eq!(eval(py, "m.count_syt([4, 3, 2])").extract::<u64>().unwrap(), 168);
            assert_eq!(eval(py, "m.Partition('4,3,2').count_syt()").extract::<u64>().unwrap(), 168);
            assert_eq!(eval(py, "str(m.expectation('3,2', 'ones'))").extract::<String>().unwrap(), "8/5");
            assert_eq!(eval(py, "str(m.variance([3, 2], [1, 1, 1, 1]))").extract::<String>().unwrap(), "6/25");
            assert!(eval(py, "m.normalized_variance([4], 'ones') is None").extract::<bool>().unwrap());
            assert!(eval(py, "m.eq1_min_constant([4], 'ones') == float('inf')").extract::<bool>().unwrap());
        });
    }

    #[test]
    fn tableaux_round_trip() {
        Python::attach(|py| {
            assert_eq!(eval(py, "len(m.enumerate_syt([3, 2]))").extract::<usize>().unwrap(), 5);
            assert_eq!(
                eval(py, "m.Tableau([[1, 2, 3], [4, 5]]).descent_set()").extract::<Vec<usize>>().unwrap(),
                vec![3]
            );
            assert!(eval(py, "m.sample_syt('4,3,2', 20, 3) == m.sample_syt('4,3,2', 20, 3)")
                .extract::<bool>()
                .unwrap());
            assert!(eval(py, "m.exhaustive_audit([2, 2])['uniform']").extract::<bool>().unwrap());
        });
    }

    #[test]
    fn errors_carry_variant_names() {
        Python::attach(|py| {
            let m = module(py);
            let e = m.getattr("count_syt").unwrap().call1((vec![2, 3],)).unwrap_err();
            assert!(e.is_instance_of::<SytError>(py));
            assert!(e.to_string().contains("NotNonIncreasing"));
            let e = m.getattr("Tableau").unwrap().call1((vec![vec![2, 1]],)).unwrap_err();
            assert!(e.to_string().contains("RowNotIncreasing"));
        });
    }
}
