//! Python bindings. Rationals cross the boundary as `"num/den"` strings (ints
//! are accepted on input); indices are zero-based, as in the Rust API.

use num_bigint::BigUint;
use pyo3::exceptions::{PyMemoryError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use semiramsey::constructions::{self as cons, ConstructionInstance, ResourceCaps};
use semiramsey::solvers::{self, Hypergraph3, Polarity, TransitiveVerdict};
use semiramsey::{
    exactmath, geometry, io, Error, MultivariatePolynomial, OrderedPointSet, Rational,
};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Resource(_) | Error::Budget(_) => PyMemoryError::new_err(e.to_string()),
        Error::Precondition(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(i) = obj.extract::<num_bigint::BigInt>() {
        return Ok(Rational::from_integer(i));
    }
    let s: String = obj.extract()?;
    exactmath::rational::parse(&s).map_err(py_err)
}

fn rationals(obj: &Bound<'_, PyAny>) -> PyResult<Vec<Rational>> {
    obj.try_iter()?.map(|x| rational(&x?)).collect()
}

fn value_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_u64() {
            Some(u) => u.into_pyobject(py)?.into_any(),
            None => n.as_i64().unwrap_or_default().into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(a) => {
            let items = a
                .iter()
                .map(|x| value_to_py(py, x))
                .collect::<PyResult<Vec<_>>>()?;
            PyList::new(py, items)?.into_any()
        }
        Value::Object(m) => {
            let d = PyDict::new(py);
            for (k, x) in m {
                d.set_item(k, value_to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

fn caps(max_points: Option<usize>, max_bits: Option<u64>) -> ResourceCaps {
    let d = ResourceCaps::default();
    ResourceCaps {
        max_points: max_points.unwrap_or(d.max_points),
        max_bits: max_bits.unwrap_or(d.max_bits),
    }
}

/// A point set together with its semi-algebraic relation.
#[pyclass(name = "Instance", module = "semiramsey", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyInstance {
    inner: ConstructionInstance,
}

#[pymethods]
impl PyInstance {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Self {
            inner: io::instance_from_json(&v).map_err(py_err)?,
        })
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&io::instance_to_json(&self.inner)).unwrap()
    }

    fn __len__(&self) -> usize {
        self.inner.points.len()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.points.dim()
    }

    #[getter]
    fn arity(&self) -> usize {
        self.inner.relation.arity()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.provenance.kind()
    }

    #[getter]
    fn epsilon(&self) -> Option<String> {
        self.inner.epsilon.as_ref().map(|e| e.to_string())
    }

    #[getter]
    fn points(&self) -> Vec<Vec<String>> {
        self.inner
            .points
            .points()
            .iter()
            .map(|p| p.iter().map(|x| x.to_string()).collect())
            .collect()
    }

    /// Membership of the tuple at strictly increasing indices.
    fn contains(&self, indices: Vec<usize>) -> PyResult<bool> {
        semiramsey::eval_membership(&self.inner.relation, &self.inner.points, &indices)
            .map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(kind={:?}, N={}, d={}, k={})",
            self.kind(),
            self.inner.points.len(),
            self.dim(),
            self.arity()
        )
    }
}

#[pyfunction]
#[pyo3(signature = (n, max_points=None, max_bits=None))]
fn base_construction(
    n: u32,
    max_points: Option<usize>,
    max_bits: Option<u64>,
) -> PyResult<PyInstance> {
    let inner = cons::base_construction(n, &caps(max_points, max_bits)).map_err(py_err)?;
    Ok(PyInstance { inner })
}

#[pyfunction]
#[pyo3(signature = (base, max_points=None, max_bits=None))]
fn step_up(
    base: &PyInstance,
    max_points: Option<usize>,
    max_bits: Option<u64>,
) -> PyResult<PyInstance> {
    let inner = cons::step_up(&base.inner, &caps(max_points, max_bits)).map_err(py_err)?;
    Ok(PyInstance { inner })
}

#[pyfunction]
#[pyo3(signature = (n, base=10))]
fn one_dim_k4(n: u32, base: u64) -> PyResult<PyInstance> {
    let inner = cons::one_dim_k4_construction(n, base, &ResourceCaps::default()).map_err(py_err)?;
    Ok(PyInstance { inner })
}

#[pyfunction]
fn frankl_wilson(m: usize, p: usize) -> PyResult<PyInstance> {
    let inner = cons::frankl_wilson_instance(m, p, &ResourceCaps::default()).map_err(py_err)?;
    Ok(PyInstance { inner })
}

/// Orientation relation of a list of points in general position.
#[pyfunction]
fn order_type(points: &Bound<'_, PyAny>) -> PyResult<PyInstance> {
    let pts: Vec<Vec<Rational>> = points
        .try_iter()?
        .map(|p| rationals(&p?))
        .collect::<PyResult<_>>()?;
    let dim = pts.first().map_or(0, Vec::len);
    let set = OrderedPointSet::new(dim, pts).map_err(py_err)?;
    Ok(PyInstance {
        inner: geometry::order_type_instance(set).map_err(py_err)?,
    })
}

/// One-sided relation of hyperplanes given as `(a, b)` pairs for `a . x = b`.
#[pyfunction]
fn one_sided(hyperplanes: &Bound<'_, PyAny>) -> PyResult<PyInstance> {
    let mut hs = Vec::new();
    for h in hyperplanes.try_iter()? {
        let h = h?;
        let a = rationals(&h.get_item(0)?)?;
        let b = rational(&h.get_item(1)?)?;
        hs.push(geometry::Hyperplane::new(a, b).map_err(py_err)?);
    }
    let dim = hs.first().map_or(0, |h| h.dim());
    let arr = geometry::Arrangement::new(dim, hs).map_err(py_err)?;
    Ok(PyInstance {
        inner: geometry::one_sided_instance(arr).map_err(py_err)?,
    })
}

/// Largest homogeneous subset by exact search; a dict as in the result JSON
/// but with zero-based indices.
#[pyfunction]
#[pyo3(signature = (instance, budget=None))]
fn max_homogeneous<'py>(
    py: Python<'py>,
    instance: &PyInstance,
    budget: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let r = solvers::max_homogeneous(&instance.inner.points, &instance.inner.relation, budget)
        .map_err(py_err)?;
    result_dict(py, &r)
}

#[pyfunction]
#[pyo3(signature = (instance, budget=None))]
fn erdos_rado_greedy<'py>(
    py: Python<'py>,
    instance: &PyInstance,
    budget: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let r = solvers::erdos_rado_greedy(&instance.inner.points, &instance.inner.relation, budget)
        .map_err(py_err)?;
    result_dict(py, &r)
}

fn result_dict<'py>(
    py: Python<'py>,
    r: &solvers::HomogeneousResult,
) -> PyResult<Bound<'py, PyAny>> {
    let mut v = io::result_to_json(r);
    v["subset"] = r.subset.clone().into();
    value_to_py(py, &v)
}

#[pyfunction]
fn certify(instance: &PyInstance, subset: Vec<usize>, polarity: &str) -> PyResult<bool> {
    let polarity = match polarity {
        "in" => Polarity::In,
        "out" => Polarity::Out,
        _ => return Err(PyValueError::new_err("polarity is \"in\" or \"out\"")),
    };
    solvers::certify(
        &instance.inner.points,
        &instance.inner.relation,
        &subset,
        polarity,
    )
    .map_err(py_err)
}

/// `(indices, increasing)` of a longest monotone subsequence.
#[pyfunction]
fn longest_monotone_subsequence(seq: &Bound<'_, PyAny>) -> PyResult<(Vec<usize>, bool)> {
    let s = solvers::longest_monotone_subsequence(&rationals(seq)?).map_err(py_err)?;
    Ok((s.indices, s.increasing))
}

/// Independent set of a 3-uniform hypergraph on `0..n`.
#[pyfunction]
#[pyo3(signature = (n, edges, seed=0))]
fn spencer_independent_set(n: usize, edges: Vec<[usize; 3]>, seed: u64) -> PyResult<Vec<usize>> {
    let h = Hypergraph3::new(n, edges).map_err(py_err)?;
    Ok(solvers::spencer_independent_set(&h, seed)
        .map_err(py_err)?
        .set)
}

#[pyfunction]
fn transitive_ramsey_number(s: u64, n: u64) -> PyResult<u64> {
    solvers::transitive_ramsey_number(s, n).map_err(py_err)
}

/// `"holds"`, `"counterexample"` or `"inconclusive"`.
#[pyfunction]
#[pyo3(signature = (s, n, size, budget=None))]
fn verify_transitive_ramsey(
    s: usize,
    n: usize,
    size: usize,
    budget: Option<u64>,
) -> PyResult<&'static str> {
    Ok(
        match solvers::verify_transitive_ramsey(s, n, size, budget).map_err(py_err)? {
            TransitiveVerdict::Holds => "holds",
            TransitiveVerdict::Counterexample(_) => "counterexample",
            TransitiveVerdict::Inconclusive { .. } => "inconclusive",
        },
    )
}

/// Distinct real roots in `(a, b]` of the polynomial with the given
/// coefficients, constant term first.
#[pyfunction]
fn count_real_roots(
    coeffs: &Bound<'_, PyAny>,
    a: &Bound<'_, PyAny>,
    b: &Bound<'_, PyAny>,
) -> PyResult<usize> {
    let p = MultivariatePolynomial::univariate(&rationals(coeffs)?);
    exactmath::count_real_roots(&p, &rational(a)?, &rational(b)?).map_err(py_err)
}

#[pyfunction]
fn delta_index(a: u64, b: u64, bits: u32) -> PyResult<u32> {
    Ok(cons::delta_index(a, b, bits).map_err(py_err)?.value())
}

#[pyfunction]
#[pyo3(signature = (height, x, max_bits=1_000_000))]
fn tower(height: u32, x: BigUint, max_bits: u64) -> PyResult<BigUint> {
    cons::tower(height, &x, max_bits).map_err(py_err)
}

#[pymodule]
#[pyo3(name = "semiramsey")]
fn semiramsey_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInstance>()?;
    m.add_function(wrap_pyfunction!(base_construction, m)?)?;
    m.add_function(wrap_pyfunction!(step_up, m)?)?;
    m.add_function(wrap_pyfunction!(one_dim_k4, m)?)?;
    m.add_function(wrap_pyfunction!(frankl_wilson, m)?)?;
    m.add_function(wrap_pyfunction!(order_type, m)?)?;
    m.add_function(wrap_pyfunction!(one_sided, m)?)?;
    m.add_function(wrap_pyfunction!(max_homogeneous, m)?)?;
    m.add_function(wrap_pyfunction!(erdos_rado_greedy, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(longest_monotone_subsequence, m)?)?;
    m.add_function(wrap_pyfunction!(spencer_independent_set, m)?)?;
    m.add_function(wrap_pyfunction!(transitive_ramsey_number, m)?)?;
    m.add_function(wrap_pyfunction!(verify_transitive_ramsey, m)?)?;
    m.add_function(wrap_pyfunction!(count_real_roots, m)?)?;
    m.add_function(wrap_pyfunction!(delta_index, m)?)?;
    m.add_function(wrap_pyfunction!(tower, m)?)?;
    Ok(())
}
