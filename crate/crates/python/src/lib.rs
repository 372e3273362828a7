//! Python bindings: thin wrappers that return plain dicts, lists and ints.

use std::collections::BTreeMap;
use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use ::bchlab::analysis::{bch_bound, distance_direct, distance_via_dual, is_dually_bch, Certificate};
use ::bchlab::codes::{CodeSpec, Family, LinearCodeModel};
use ::bchlab::harness::{evaluate_formula, run_suite, suite_ids, GridConfig, DEFAULT_BUDGET, FORMULAS};
use ::bchlab::ExtensionField;

fn err(e: ::bchlab::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => u.into_pyobject(py)?.into_any(),
            (None, Some(i)) => i.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn build(family: &str, q: u64, m: u32, delta: u64, b: u64) -> Result<LinearCodeModel, ::bchlab::Error> {
    let family: Family = family.parse()?;
    let field = Arc::new(ExtensionField::from_q(q, m)?);
    let n = (field.size() - 1) / 2;
    LinearCodeModel::bch(field, CodeSpec::new(n, family, delta, b)?)
}

/// p, e, extension degree, modulus (constant term last) and the order of alpha.
#[pyfunction]
fn field_info(py: Python<'_>, q: u64, m: u32) -> PyResult<Bound<'_, PyAny>> {
    let field = ExtensionField::from_q(q, m).map_err(err)?;
    let v = serde_json::json!({
        "p": field.p(),
        "e": field.base().e(),
        "D": field.degree(),
        "modulus": field.modulus().iter().rev().collect::<Vec<_>>(),
        "alphaOrder": field.alpha_order(),
    });
    to_py(py, &v)
}

/// Parameters of the BCH code of length (q^m-1)/2; family is "neg" or "cyc".
#[pyfunction]
#[pyo3(signature = (family, q, m, delta, b = 0))]
fn code<'py>(py: Python<'py>, family: &str, q: u64, m: u32, delta: u64, b: u64) -> PyResult<Bound<'py, PyAny>> {
    let model = build(family, q, m, delta, b).map_err(err)?;
    let v = serde_json::json!({
        "code": model.describe(),
        "n": model.n(),
        "k": model.k(),
        "definingSetSize": model.defining_set().len(),
        "bchBound": bch_bound(model.defining_set()).min(model.n() + 1),
        "generator": model.generator().coeffs(),
    });
    to_py(py, &v)
}

/// Exact weight distribution as {weight: count} plus d and how it was certified.
#[pyfunction]
#[pyo3(signature = (family, q, m, delta, b = 0, budget = DEFAULT_BUDGET, via_dual = false))]
#[allow(clippy::too_many_arguments)]
fn weights<'py>(
    py: Python<'py>,
    family: &str,
    q: u64,
    m: u32,
    delta: u64,
    b: u64,
    budget: u64,
    via_dual: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let model = build(family, q, m, delta, b).map_err(err)?;
    let r = py
        .detach(|| if via_dual { distance_via_dual(&model, budget) } else { distance_direct(&model, budget) })
        .map_err(err)?;
    let counts = PyDict::new(py);
    if let Some(w) = &r.enumerator {
        for (weight, count) in w.nonzero() {
            counts.set_item(weight, count)?;
        }
    }
    let out = PyDict::new(py);
    out.set_item("n", model.n())?;
    out.set_item("k", model.k())?;
    out.set_item("d", r.d)?;
    out.set_item("weights", counts)?;
    out.set_item(
        "certificate",
        match r.certificate {
            Certificate::ExactDirect => "exact-direct",
            Certificate::ExactViaDual => "exact-via-dual",
            Certificate::LowerBoundOnly => "lower-bound-only",
        },
    )?;
    Ok(out)
}

/// (b, delta) with the dual of the narrow-sense-2 cyclic code equal to a BCH code, or None.
#[pyfunction]
fn dual_bch_witness(py: Python<'_>, q: u64, m: u32, delta: u64) -> PyResult<Option<(u64, u64)>> {
    let model = build("cyc", q, m, delta, 2).map_err(err)?;
    py.detach(|| is_dually_bch(&model)).map_err(err)
}

/// Evaluate a closed form by id; keyword arguments are its parameters.
#[pyfunction]
#[pyo3(signature = (id, **params))]
fn formula<'py>(py: Python<'py>, id: &str, params: Option<&Bound<'py, PyDict>>) -> PyResult<Bound<'py, PyAny>> {
    let args: BTreeMap<String, u64> = match params {
        Some(d) => d.extract()?,
        None => BTreeMap::new(),
    };
    to_py(py, &evaluate_formula(id, &args).map_err(err)?)
}

/// (id, arguments, description) for every closed form.
#[pyfunction]
fn formulas() -> Vec<(&'static str, &'static str, &'static str)> {
    FORMULAS.to_vec()
}

#[pyfunction]
fn suites() -> Vec<String> {
    suite_ids()
}

/// Run a verification suite and return the report as a dict.
#[pyfunction]
#[pyo3(signature = (suite, q_set = vec![3, 5, 7], m_max = None, budget = DEFAULT_BUDGET))]
fn verify<'py>(py: Python<'py>, suite: &str, q_set: Vec<u64>, m_max: Option<u32>, budget: u64) -> PyResult<Bound<'py, PyAny>> {
    let config = GridConfig {
        q_set,
        m_max,
        budget,
        cache_dir: None,
    };
    let report = py.detach(|| run_suite(suite, &config)).map_err(err)?;
    let mut v = serde_json::to_value(&report).map_err(|e| PyValueError::new_err(e.to_string()))?;
    v["passed"] = Value::Bool(report.passed());
    to_py(py, &v)
}

#[pymodule]
#[pyo3(name = "bchlab")]
fn bchlab_module(module: &Bound<'_, PyModule>) -> PyResult<()> {
    module.add_function(wrap_pyfunction!(field_info, module)?)?;
    module.add_function(wrap_pyfunction!(code, module)?)?;
    module.add_function(wrap_pyfunction!(weights, module)?)?;
    module.add_function(wrap_pyfunction!(dual_bch_witness, module)?)?;
    module.add_function(wrap_pyfunction!(formula, module)?)?;
    module.add_function(wrap_pyfunction!(formulas, module)?)?;
    module.add_function(wrap_pyfunction!(suites, module)?)?;
    module.add_function(wrap_pyfunction!(verify, module)?)?;
    module.add("DEFAULT_BUDGET", DEFAULT_BUDGET)?;
    Ok(())
}
