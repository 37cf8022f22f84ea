//! Python bindings for the exchange-ring laboratory.
//!
//! States cross the boundary as lists of Python complex numbers, matrices
//! as nested lists (row-major), records as dicts keyed by the same field
//! names the CSV/JSON output uses.

// The pyfunction expansion inserts PyErr conversions that trip this lint.
#![allow(clippy::useless_conversion)]

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use heisenberg4::analysis;
use heisenberg4::dynamics;
use heisenberg4::linalg;
use heisenberg4::measures;
use heisenberg4::report::record_columns;
use heisenberg4::spin;
use heisenberg4::{ComplexMatrix, StateVector};

fn err(e: heisenberg4::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn matrix_in(rows: Vec<Vec<Complex64>>) -> PyResult<ComplexMatrix> {
    ComplexMatrix::from_rows(&rows).map_err(err)
}

fn matrix_out(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    m.rows()
}

fn record_to_dict<'py>(
    py: Python<'py>,
    r: &analysis::MeasureRecord,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new_bound(py);
    for (name, value) in record_columns(r) {
        d.set_item(name, value)?;
    }
    Ok(d)
}

/// phi = (alpha + 1) t.
#[pyfunction]
fn phase(alpha: f64, t: f64) -> f64 {
    analysis::phase(alpha, t)
}

/// |cos(phi/2)|.
#[pyfunction]
fn predicted_fidelity(phi: f64) -> f64 {
    analysis::predicted_fidelity(phi)
}

/// sin^2(phi/2) — the l1 coherence of the qubits-3,4 block.
#[pyfunction]
fn predicted_coherence(phi: f64) -> f64 {
    analysis::predicted_coherence(phi)
}

/// cos^2(phi/2).
#[pyfunction]
fn predicted_concurrence12(phi: f64) -> f64 {
    analysis::predicted_concurrence12(phi)
}

/// sin^2(phi/2).
#[pyfunction]
fn predicted_concurrence34(phi: f64) -> f64 {
    analysis::predicted_concurrence34(phi)
}

/// (published, simplified) entanglement of formation of qubits 1,2.
#[pyfunction]
fn predicted_ef12(phi: f64) -> PyResult<(f64, f64)> {
    let e = analysis::predicted_ef12(phi).map_err(err)?;
    Ok((e.published, e.simplified))
}

/// (published, simplified) entanglement of formation of qubits 3,4.
#[pyfunction]
fn predicted_ef34(phi: f64) -> PyResult<(f64, f64)> {
    let e = analysis::predicted_ef34(phi).map_err(err)?;
    Ok((e.published, e.simplified))
}

/// The published squared-fidelity sensitivity -(t/4) sin(phi).
#[pyfunction]
fn sensitivity_fidelity_alpha(alpha: f64, t: f64) -> f64 {
    analysis::sensitivity_fidelity_alpha(alpha, t)
}

/// (printed, finite_difference) alpha-rate of the coherence.
#[pyfunction]
fn sensitivity_coherence_alpha(alpha: f64, t: f64) -> (f64, f64) {
    let s = analysis::sensitivity_coherence_alpha(alpha, t);
    (s.printed, s.finite_difference)
}

/// (printed, finite_difference) time-rate of the coherence.
#[pyfunction]
fn sensitivity_coherence_t(alpha: f64, t: f64) -> (f64, f64) {
    let s = analysis::sensitivity_coherence_t(alpha, t);
    (s.printed, s.finite_difference)
}

/// Locus times for k in [k_min, k_max]; raises ValueError at alpha = -1.
#[pyfunction]
fn sensitivity_loci(py: Python<'_>, alpha: f64, k_min: i64, k_max: i64) -> PyResult<PyObject> {
    let loci = analysis::sensitivity_loci(alpha, k_min, k_max).map_err(err)?;
    let out = PyList::empty_bound(py);
    for l in loci {
        let d = PyDict::new_bound(py);
        d.set_item("kind", heisenberg4::report::locus_kind_label(l.kind))?;
        d.set_item("k", l.k)?;
        d.set_item("phi", l.phi)?;
        d.set_item("t", l.t)?;
        out.append(d)?;
    }
    Ok(out.into())
}

/// All diagnostics at one (alpha, t) point as a dict.
#[pyfunction]
fn evaluate_point(py: Python<'_>, alpha: f64, t: f64) -> PyResult<PyObject> {
    let r = analysis::evaluate_point(alpha, t).map_err(err)?;
    Ok(record_to_dict(py, &r)?.into())
}

/// Row-major records over a uniform grid (alpha outer, t inner).
#[pyfunction]
#[pyo3(signature = (alpha_min=-3.0, alpha_max=1.0, alpha_steps=81, t_min=0.0, t_max=10.0, t_steps=201))]
fn sweep(
    py: Python<'_>,
    alpha_min: f64,
    alpha_max: f64,
    alpha_steps: usize,
    t_min: f64,
    t_max: f64,
    t_steps: usize,
) -> PyResult<PyObject> {
    let grid = analysis::SweepGrid::new(alpha_min, alpha_max, alpha_steps, t_min, t_max, t_steps)
        .map_err(err)?;
    let records = analysis::sweep(&grid).map_err(err)?;
    let out = PyList::empty_bound(py);
    for r in &records {
        out.append(record_to_dict(py, r)?)?;
    }
    Ok(out.into())
}

/// The pinned verification rows as a dict report.
#[pyfunction]
#[pyo3(signature = (perturb_alpha=0.0))]
fn verify_table(py: Python<'_>, perturb_alpha: f64) -> PyResult<PyObject> {
    let report = analysis::verify_table_with(perturb_alpha).map_err(err)?;
    let d = PyDict::new_bound(py);
    d.set_item("passed", report.passed)?;
    d.set_item("max_rel_err", report.max_rel_err)?;
    d.set_item("rel_err_bound", report.rel_err_bound)?;
    let rows = PyList::empty_bound(py);
    for row in &report.rows {
        let rd = PyDict::new_bound(py);
        rd.set_item("alpha", row.alpha)?;
        rd.set_item("t", row.t)?;
        rd.set_item("phi", row.phi)?;
        let cells = PyList::empty_bound(py);
        for c in &row.cells {
            let cd = PyDict::new_bound(py);
            cd.set_item("name", c.name)?;
            cd.set_item("analytic", c.analytic)?;
            cd.set_item("oracle", c.oracle)?;
            cd.set_item("reference", c.printed)?;
            cd.set_item("reference_tol", c.printed_tol)?;
            cd.set_item("digits_ok", c.digits_ok)?;
            cd.set_item("rel_err", c.rel_err)?;
            cells.append(cd)?;
        }
        rd.set_item("cells", cells)?;
        rows.append(rd)?;
    }
    d.set_item("rows", rows)?;
    Ok(d.into())
}

/// (|0100> + |1000>)/sqrt(2) as 16 amplitudes.
#[pyfunction]
fn initial_state() -> Vec<Complex64> {
    dynamics::initial_state().amplitudes().to_vec()
}

/// Closed-form evolved amplitudes at (alpha, t).
#[pyfunction]
fn analytic_state(alpha: f64, t: f64) -> Vec<Complex64> {
    dynamics::analytic_state(&dynamics::PhasePoint::new(alpha, t))
        .amplitudes()
        .to_vec()
}

/// Numerically evolved amplitudes (full 16x16 eigendecomposition).
#[pyfunction]
fn numeric_evolve(alpha: f64, t: f64) -> PyResult<Vec<Complex64>> {
    Ok(
        dynamics::numeric_evolve(&dynamics::PhasePoint::new(alpha, t))
            .map_err(err)?
            .amplitudes()
            .to_vec(),
    )
}

/// Closed-form 16x16 density matrix at (alpha, t).
#[pyfunction]
fn analytic_density(alpha: f64, t: f64) -> Vec<Vec<Complex64>> {
    matrix_out(&dynamics::analytic_density(&dynamics::PhasePoint::new(
        alpha, t,
    )))
}

/// Closed-form reduced state of qubits 1,2.
#[pyfunction]
fn rho12(alpha: f64, t: f64) -> Vec<Vec<Complex64>> {
    matrix_out(&dynamics::rho12(&dynamics::PhasePoint::new(alpha, t)))
}

/// Closed-form reduced state of qubits 3,4.
#[pyfunction]
fn rho34(alpha: f64, t: f64) -> Vec<Vec<Complex64>> {
    matrix_out(&dynamics::rho34(&dynamics::PhasePoint::new(alpha, t)))
}

/// The 16x16 ring Hamiltonian at a given diagonal coupling.
#[pyfunction]
fn build_hamiltonian(alpha: f64) -> Vec<Vec<Complex64>> {
    matrix_out(&spin::build_hamiltonian(&spin::ChainParams::new(alpha)))
}

/// Trace out every qubit not in `keep` (1-based, qubit 1 most significant).
#[pyfunction]
fn partial_trace(
    rho: Vec<Vec<Complex64>>,
    keep: Vec<usize>,
    n_qubits: usize,
) -> PyResult<Vec<Vec<Complex64>>> {
    let m = matrix_in(rho)?;
    Ok(matrix_out(
        &linalg::partial_trace(&m, &keep, n_qubits).map_err(err)?,
    ))
}

/// Eigenvalues (ascending) and eigenvector columns of a Hermitian matrix.
#[pyfunction]
fn hermitian_eigen(m: Vec<Vec<Complex64>>) -> PyResult<(Vec<f64>, Vec<Vec<Complex64>>)> {
    let eig = linalg::hermitian_eigen(&matrix_in(m)?).map_err(err)?;
    Ok((eig.values.clone(), matrix_out(&eig.vectors)))
}

/// Uhlmann fidelity; squared convention on request.
#[pyfunction]
#[pyo3(signature = (rho, sigma, squared=false))]
fn uhlmann_fidelity(
    rho: Vec<Vec<Complex64>>,
    sigma: Vec<Vec<Complex64>>,
    squared: bool,
) -> PyResult<f64> {
    let convention = if squared {
        measures::FidelityConvention::Squared
    } else {
        measures::FidelityConvention::Sqrt
    };
    measures::uhlmann_fidelity(&matrix_in(rho)?, &matrix_in(sigma)?, convention).map_err(err)
}

/// |<psi|phi>| for two pure states.
#[pyfunction]
fn pure_overlap_fidelity(psi: Vec<Complex64>, phi: Vec<Complex64>) -> PyResult<f64> {
    measures::pure_overlap_fidelity(&StateVector::new(psi), &StateVector::new(phi)).map_err(err)
}

/// (1/2) sum |eig(rho - sigma)|.
#[pyfunction]
fn trace_distance(rho: Vec<Vec<Complex64>>, sigma: Vec<Vec<Complex64>>) -> PyResult<f64> {
    measures::trace_distance(&matrix_in(rho)?, &matrix_in(sigma)?).map_err(err)
}

/// Fidelity bounds on the trace distance: dict with lower, trace_distance,
/// upper, satisfied.
#[pyfunction]
fn fvdg_check(
    py: Python<'_>,
    rho: Vec<Vec<Complex64>>,
    sigma: Vec<Vec<Complex64>>,
) -> PyResult<PyObject> {
    let b = measures::fvdg_check(&matrix_in(rho)?, &matrix_in(sigma)?).map_err(err)?;
    let d = PyDict::new_bound(py);
    d.set_item("lower", b.lower)?;
    d.set_item("trace_distance", b.trace_distance)?;
    d.set_item("upper", b.upper)?;
    d.set_item("satisfied", b.satisfied)?;
    Ok(d.into())
}

/// Sum of off-diagonal magnitudes.
#[pyfunction]
fn coherence_l1(rho: Vec<Vec<Complex64>>) -> PyResult<f64> {
    Ok(measures::coherence_l1(&matrix_in(rho)?))
}

/// (sum_i |c_i|)^2 - 1 for a normalized pure state.
#[pyfunction]
fn pure_state_coherence(psi: Vec<Complex64>) -> f64 {
    measures::pure_state_coherence(&StateVector::new(psi))
}

/// Wootters concurrence of a two-qubit density matrix.
#[pyfunction]
fn wootters_concurrence(rho: Vec<Vec<Complex64>>) -> PyResult<f64> {
    measures::wootters_concurrence(&matrix_in(rho)?).map_err(err)
}

/// 2 max{0, |c| - sqrt(a d)} for an X-shaped state (a, b, b, d; inner c).
#[pyfunction]
fn x_state_concurrence(a: f64, b: f64, c: f64, d: f64) -> PyResult<f64> {
    let p = measures::XStateParams::new(a, b, c, d).map_err(err)?;
    Ok(measures::x_state_concurrence(&p))
}

/// Binary entropy in bits with the endpoint convention h(0) = h(1) = 0.
#[pyfunction]
fn binary_entropy(x: f64) -> PyResult<f64> {
    measures::binary_entropy(x).map_err(err)
}

/// h((1 + sqrt(1 - C^2))/2).
#[pyfunction]
fn eof_from_concurrence(c: f64) -> PyResult<f64> {
    measures::eof_from_concurrence(c).map_err(err)
}

#[pymodule]
fn heisenberg4_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(phase, m)?)?;
    m.add_function(wrap_pyfunction!(predicted_fidelity, m)?)?;
    m.add_function(wrap_pyfunction!(predicted_coherence, m)?)?;
    m.add_function(wrap_pyfunction!(predicted_concurrence12, m)?)?;
    m.add_function(wrap_pyfunction!(predicted_concurrence34, m)?)?;
    m.add_function(wrap_pyfunction!(predicted_ef12, m)?)?;
    m.add_function(wrap_pyfunction!(predicted_ef34, m)?)?;
    m.add_function(wrap_pyfunction!(sensitivity_fidelity_alpha, m)?)?;
    m.add_function(wrap_pyfunction!(sensitivity_coherence_alpha, m)?)?;
    m.add_function(wrap_pyfunction!(sensitivity_coherence_t, m)?)?;
    m.add_function(wrap_pyfunction!(sensitivity_loci, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_point, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(verify_table, m)?)?;
    m.add_function(wrap_pyfunction!(initial_state, m)?)?;
    m.add_function(wrap_pyfunction!(analytic_state, m)?)?;
    m.add_function(wrap_pyfunction!(numeric_evolve, m)?)?;
    m.add_function(wrap_pyfunction!(analytic_density, m)?)?;
    m.add_function(wrap_pyfunction!(rho12, m)?)?;
    m.add_function(wrap_pyfunction!(rho34, m)?)?;
    m.add_function(wrap_pyfunction!(build_hamiltonian, m)?)?;
    m.add_function(wrap_pyfunction!(partial_trace, m)?)?;
    m.add_function(wrap_pyfunction!(hermitian_eigen, m)?)?;
    m.add_function(wrap_pyfunction!(uhlmann_fidelity, m)?)?;
    m.add_function(wrap_pyfunction!(pure_overlap_fidelity, m)?)?;
    m.add_function(wrap_pyfunction!(trace_distance, m)?)?;
    m.add_function(wrap_pyfunction!(fvdg_check, m)?)?;
    m.add_function(wrap_pyfunction!(coherence_l1, m)?)?;
    m.add_function(wrap_pyfunction!(pure_state_coherence, m)?)?;
    m.add_function(wrap_pyfunction!(wootters_concurrence, m)?)?;
    m.add_function(wrap_pyfunction!(x_state_concurrence, m)?)?;
    m.add_function(wrap_pyfunction!(binary_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(eof_from_concurrence, m)?)?;
    Ok(())
}
