//! Python bindings. Groups are given by constructor spec (`"C6"`, `"S3"`,
//! `"cyclic:8"`) and structures by their `sigma` tables, `sigma[a][b] = σ_a(b)`.

use std::collections::BTreeMap;

use affine_lab::enumeration::{self, Kind};
use affine_lab::error::Error;
use affine_lab::{catalog, cli, identify, AffineStructure, FiniteGroup, SemiBrace, SetSolution};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Violation(_) | Error::Inconsistent(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn group(spec: &str) -> PyResult<FiniteGroup> {
    FiniteGroup::from_spec(spec).map_err(py_err)
}

fn structure(group_spec: &str, sigma: Vec<Vec<usize>>) -> PyResult<AffineStructure> {
    AffineStructure::new(group(group_spec)?, &sigma).map_err(py_err)
}

/// Name, order and multiplication table of a group.
#[pyfunction]
fn group_info(spec: &str) -> PyResult<(String, usize, Vec<Vec<usize>>)> {
    let g = group(spec)?;
    Ok((identify(&g).name, g.order(), g.rows()))
}

/// Group name and `sigma` table of a standard family such as `"sign-flip:6"`.
#[pyfunction]
fn family(spec: &str) -> PyResult<(String, Vec<Vec<usize>>)> {
    let s = cli::affine_family(spec).map_err(py_err)?;
    Ok((s.group().name().to_string(), s.rows()))
}

/// `None` when the table is an affine structure, otherwise the failing
/// property and its witness.
#[pyfunction]
fn verify_affine(group: &str, sigma: Vec<Vec<usize>>) -> PyResult<Option<(String, Vec<usize>)>> {
    let s = structure(group, sigma)?;
    Ok(s.verify().err().map(|v| (v.property.name().to_string(), v.witness)))
}

#[pyfunction]
fn classify_affine(group: &str, sigma: Vec<Vec<usize>>) -> PyResult<BTreeMap<&'static str, bool>> {
    let f = structure(group, sigma)?.classify();
    Ok(BTreeMap::from([
        ("anti_hom", f.anti_hom),
        ("affine", f.affine),
        ("cancellative", f.cancellative),
        ("groupal", f.groupal),
        ("abelian", f.abelian),
    ]))
}

/// Addition table of the semi-brace attached to an affine structure.
#[pyfunction]
fn semibrace_add(group: &str, sigma: Vec<Vec<usize>>) -> PyResult<Vec<Vec<usize>>> {
    let s = structure(group, sigma)?;
    Ok(SemiBrace::from_affine(&s).map_err(py_err)?.add_rows())
}

/// Properties of the set-theoretic solution of an affine structure, as JSON.
#[pyfunction]
fn solution_report(group: &str, sigma: Vec<Vec<usize>>) -> PyResult<String> {
    let b = SemiBrace::from_affine(&structure(group, sigma)?).map_err(py_err)?;
    to_json(&SetSolution::from_semibrace(&b).report())
}

/// All structures of one kind (`all`, `cancellative`, `groupal`, `abelian`).
#[pyfunction]
#[pyo3(signature = (group, kind = "all"))]
fn enumerate(py: Python<'_>, group: &str, kind: &str) -> PyResult<Vec<Vec<Vec<usize>>>> {
    let g = self::group(group)?;
    let kind: Kind = kind.parse().map_err(py_err)?;
    let found = py.detach(|| enumeration::enumerate(&g, kind)).map_err(py_err)?;
    Ok(found.iter().map(AffineStructure::rows).collect())
}

/// `(structures, classes)` for one kind.
#[pyfunction]
#[pyo3(signature = (group, kind = "all"))]
fn census_counts(py: Python<'_>, group: &str, kind: &str) -> PyResult<(usize, usize)> {
    let g = self::group(group)?;
    let kind: Kind = kind.parse().map_err(py_err)?;
    let c = py.detach(|| enumeration::census(&g, kind)).map_err(py_err)?;
    Ok((c.structures, c.class_count()))
}

/// Catalog report as JSON: one entry when `id` is given, else all of them.
#[pyfunction]
#[pyo3(signature = (id = None, param = None))]
fn catalog_report(py: Python<'_>, id: Option<&str>, param: Option<usize>) -> PyResult<String> {
    match id {
        Some(id) => to_json(&catalog::run(id, param).map_err(py_err)?),
        None => to_json(&py.detach(catalog::run_all).map_err(py_err)?),
    }
}

#[pymodule]
fn affine_lab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(group_info, m)?)?;
    m.add_function(wrap_pyfunction!(family, m)?)?;
    m.add_function(wrap_pyfunction!(verify_affine, m)?)?;
    m.add_function(wrap_pyfunction!(classify_affine, m)?)?;
    m.add_function(wrap_pyfunction!(semibrace_add, m)?)?;
    m.add_function(wrap_pyfunction!(solution_report, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(census_counts, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_report, m)?)?;
    Ok(())
}
