use num_bigint::BigUint;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use sigcocycle::acceptance::{run_all, Config};
use sigcocycle::bundle::{bundle_signature as bundle_sig, signature_mod as sig_mod, Monodromy};
use sigcocycle::congruence::{self, OrderKind};
use sigcocycle::io::{parse, CocycleJson};
use sigcocycle::maslov::{wall_maslov as maslov, Lagrangian};
use sigcocycle::rational::parse_rat;
use sigcocycle::{Error, Mat, Rat, SpMat};

const BUDGET: usize = 2_000_000;

fn err(e: Error) -> PyErr {
    match e {
        Error::ConstructionBug(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn entry(x: &Bound<'_, PyAny>) -> PyResult<Rat> {
    if let Ok(n) = x.extract::<i64>() {
        return Ok(Rat::from_integer(n.into()));
    }
    let s: String = x.extract()?;
    parse_rat(&s).map_err(err)
}

/// Rows of integers or `"p/q"` strings.
fn to_mat(rows: &Bound<'_, PyAny>) -> PyResult<Mat> {
    let rows: Vec<Vec<Bound<'_, PyAny>>> = rows.extract()?;
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != c) {
        return Err(PyValueError::new_err("ragged matrix"));
    }
    let data = rows.iter().flatten().map(entry).collect::<PyResult<Vec<_>>>()?;
    Mat::new(r, c, data).map_err(err)
}

fn to_sp(rows: &Bound<'_, PyAny>) -> PyResult<SpMat> {
    SpMat::new(to_mat(rows)?).map_err(err)
}

fn to_monodromy(pairs: &Bound<'_, PyAny>) -> PyResult<Monodromy> {
    let pairs: Vec<(Bound<'_, PyAny>, Bound<'_, PyAny>)> = pairs.extract()?;
    let pairs = pairs.iter().map(|(a, b)| Ok((to_sp(a)?, to_sp(b)?))).collect::<PyResult<Vec<_>>>()?;
    Monodromy::new(pairs).map_err(err)
}

fn kind(which: &str) -> PyResult<OrderKind> {
    which.parse().map_err(err)
}

#[pyfunction]
fn meyer_cocycle(alpha: &Bound<'_, PyAny>, beta: &Bound<'_, PyAny>) -> PyResult<i64> {
    sigcocycle::meyer::meyer_cocycle(&to_sp(alpha)?, &to_sp(beta)?).map_err(err)
}

/// Lagrangians are given by basis matrices whose columns span them.
#[pyfunction]
fn wall_maslov(l1: &Bound<'_, PyAny>, l2: &Bound<'_, PyAny>, l3: &Bound<'_, PyAny>) -> PyResult<i64> {
    let lag = |x: &Bound<'_, PyAny>| {
        let m = to_mat(x)?;
        Lagrangian::from_basis(&m, m.rows() / 2).map_err(err)
    };
    maslov(&lag(l1)?, &lag(l2)?, &lag(l3)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (pairs, open = false))]
fn bundle_signature(pairs: &Bound<'_, PyAny>, open: bool) -> PyResult<i64> {
    bundle_sig(&to_monodromy(pairs)?, open).map_err(err)
}

#[pyfunction]
fn signature_mod(pairs: &Bound<'_, PyAny>, n: u32) -> PyResult<i64> {
    Ok(sig_mod(&to_monodromy(pairs)?, n).map_err(err)?.residue)
}

#[pyfunction]
fn in_principal_congruence(m: &Bound<'_, PyAny>, n: u32) -> PyResult<bool> {
    if n < 2 {
        return Err(PyValueError::new_err("level must be at least 2"));
    }
    Ok(congruence::in_principal_congruence(&to_sp(m)?, n))
}

#[pyfunction]
fn in_k(m: &Bound<'_, PyAny>) -> PyResult<bool> {
    Ok(congruence::in_k(&to_sp(m)?))
}

#[pyfunction]
fn in_y(m: &Bound<'_, PyAny>) -> PyResult<bool> {
    congruence::reduce_mod(&to_sp(m)?, 4).and_then(|r| congruence::in_y(&r)).map_err(err)
}

#[pyfunction]
fn group_order(g: usize, which: &str) -> PyResult<BigUint> {
    congruence::group_order_formula(g, kind(which)?).map_err(err)
}

#[pyfunction]
fn enumerated_order(py: Python<'_>, g: usize, which: &str) -> PyResult<u128> {
    let which = kind(which)?;
    py.detach(|| congruence::enumerated_order(g, which, BUDGET)).map_err(err)
}

/// Takes the same JSON as the command line `covering` subcommand.
#[pyfunction]
fn covering_number(cocycle_json: &str) -> PyResult<i64> {
    let c: CocycleJson = parse(cocycle_json).map_err(err)?;
    c.to_cocycle().and_then(|t| t.covering_number()).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (seed = 0, quick = true))]
fn selftest(py: Python<'_>, seed: u64, quick: bool) -> Vec<(u32, bool, String)> {
    let reports = py.detach(|| run_all(&Config { seed, quick }));
    reports.iter().map(|r| (r.id, r.passed, r.to_string())).collect()
}

#[pymodule]
#[pyo3(name = "sigcocycle")]
fn sigcocycle_module(_py: Python, m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(meyer_cocycle, m)?)?;
    m.add_function(wrap_pyfunction!(wall_maslov, m)?)?;
    m.add_function(wrap_pyfunction!(bundle_signature, m)?)?;
    m.add_function(wrap_pyfunction!(signature_mod, m)?)?;
    m.add_function(wrap_pyfunction!(in_principal_congruence, m)?)?;
    m.add_function(wrap_pyfunction!(in_k, m)?)?;
    m.add_function(wrap_pyfunction!(in_y, m)?)?;
    m.add_function(wrap_pyfunction!(group_order, m)?)?;
    m.add_function(wrap_pyfunction!(enumerated_order, m)?)?;
    m.add_function(wrap_pyfunction!(covering_number, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
