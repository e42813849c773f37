//! Python bindings: `import jchm`.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use jchm_core::ansatz;
use jchm_core::ed::{self, Boundary, ChainSpec, EdOptions};
use jchm_core::phase::{self, CriticalSearch, LobeQuery};
use jchm_core::spectrum;
use jchm_core::{Branch, Error, ExcitationKind};

create_exception!(jchm, NoCrossingError, PyRuntimeError);
create_exception!(jchm, SolverError, PyRuntimeError);
create_exception!(jchm, ResourceError, PyRuntimeError);

fn to_py(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::InvalidArgument(_) | Error::OverflowGuard { .. } => PyValueError::new_err(msg),
        Error::NoCrossing { .. } => NoCrossingError::new_err(msg),
        Error::Solver { .. } | Error::SectorLeak { .. } => SolverError::new_err(msg),
        Error::Resource { .. } => ResourceError::new_err(msg),
    }
}

pub fn parse_kind(kind: &str) -> PyResult<ExcitationKind> {
    match kind {
        "particle" => Ok(ExcitationKind::Particle),
        "hole" => Ok(ExcitationKind::Hole),
        "bare" => Ok(ExcitationKind::Bare),
        other => Err(PyValueError::new_err(format!("kind must be particle, hole or bare, got {other:?}"))),
    }
}

pub fn parse_branch(branch: &str) -> PyResult<Branch> {
    match branch {
        "upper" | "+" => Ok(Branch::Upper),
        "lower" | "-" => Ok(Branch::Lower),
        other => Err(PyValueError::new_err(format!("branch must be upper or lower, got {other:?}"))),
    }
}

pub fn parse_boundary(boundary: &str) -> PyResult<Boundary> {
    match boundary {
        "periodic" => Ok(Boundary::Periodic),
        "open" => Ok(Boundary::Open),
        other => Err(PyValueError::new_err(format!("boundary must be periodic or open, got {other:?}"))),
    }
}

/// Cavity frequency, qubit splitting and coupling of one site.
#[pyclass(name = "SystemParams", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PySystemParams(spectrum::SystemParams);

#[pymethods]
impl PySystemParams {
    #[new]
    fn new(omega_c: f64, omega_z: f64, g: f64) -> PyResult<Self> {
        spectrum::SystemParams::new(omega_c, omega_z, g).map(Self).map_err(to_py)
    }

    /// Units of g with the cavity frequency as energy reference.
    #[staticmethod]
    fn from_detuning(delta_over_g: f64) -> PyResult<Self> {
        spectrum::SystemParams::from_detuning(delta_over_g).map(Self).map_err(to_py)
    }

    #[getter]
    fn omega_c(&self) -> f64 {
        self.0.omega_c()
    }

    #[getter]
    fn omega_z(&self) -> f64 {
        self.0.omega_z()
    }

    #[getter]
    fn g(&self) -> f64 {
        self.0.g()
    }

    #[getter]
    fn delta(&self) -> f64 {
        self.0.delta()
    }

    fn scaled(&self, s: f64) -> PyResult<Self> {
        self.0.scaled(s).map(Self).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("SystemParams(omega_c={}, omega_z={}, g={})", self.0.omega_c(), self.0.omega_z(), self.0.g())
    }
}

#[pyclass(name = "DressedLevel", frozen, get_all)]
struct PyDressedLevel {
    n: u32,
    branch: &'static str,
    energy: f64,
    sin_half_theta: f64,
    cos_half_theta: f64,
}

#[pymethods]
impl PyDressedLevel {
    fn __repr__(&self) -> String {
        format!("DressedLevel(n={}, branch={}, energy={})", self.n, self.branch, self.energy)
    }
}

#[pyclass(name = "CriticalPoint", frozen, get_all)]
struct PyCriticalPoint {
    delta_over_g: f64,
    lobe: u32,
    jc_over_g: f64,
    jc: f64,
    mu_at_crossing: f64,
    solver_residual: f64,
}

#[pymethods]
impl PyCriticalPoint {
    fn __repr__(&self) -> String {
        format!("CriticalPoint(delta_over_g={}, lobe={}, jc_over_g={})", self.delta_over_g, self.lobe, self.jc_over_g)
    }
}

impl From<phase::CriticalPoint> for PyCriticalPoint {
    fn from(c: phase::CriticalPoint) -> Self {
        Self {
            delta_over_g: c.delta_over_g,
            lobe: c.lobe,
            jc_over_g: c.jc_over_g,
            jc: c.jc,
            mu_at_crossing: c.mu_at_crossing,
            solver_residual: c.solver_residual,
        }
    }
}

#[pyfunction]
fn chi(n: u32, delta_eff: f64, g: f64) -> PyResult<f64> {
    spectrum::chi(n, delta_eff, g).map_err(to_py)
}

#[pyfunction]
fn effective_params(kind: &str, j: f64, params: PySystemParams) -> PyResult<PySystemParams> {
    spectrum::effective_params(parse_kind(kind)?, j, &params.0).map(PySystemParams).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (n, branch, params, kind = "bare", j = 0.0))]
fn dressed_level(n: u32, branch: &str, params: PySystemParams, kind: &str, j: f64) -> PyResult<PyDressedLevel> {
    let l = spectrum::dressed_level(n, parse_branch(branch)?, parse_kind(kind)?, j, &params.0).map_err(to_py)?;
    Ok(PyDressedLevel {
        n: l.n,
        branch: match l.branch {
            Branch::Upper => "upper",
            Branch::Lower => "lower",
        },
        energy: l.energy,
        sin_half_theta: l.sin_half_theta,
        cos_half_theta: l.cos_half_theta,
    })
}

#[pyfunction]
#[pyo3(signature = (kind, j, params))]
fn ground_energy(kind: &str, j: f64, params: PySystemParams) -> PyResult<f64> {
    Ok(spectrum::ground_energy(parse_kind(kind)?, j, &params.0))
}

#[pyfunction]
fn jc_numeric_check(n: u32, params: PySystemParams) -> PyResult<f64> {
    spectrum::jc_numeric_check(n, &params.0).map_err(to_py)
}

/// Reduction coefficients `[λ_0, ..., λ_K]`.
#[pyfunction]
fn build_table(kind: &str, max_distance: usize) -> PyResult<Vec<f64>> {
    ansatz::build_table(parse_kind(kind)?, max_distance).map(|t| t.lambda).map_err(to_py)
}

#[pyfunction]
fn cancellation_residual(kind: &str) -> PyResult<f64> {
    ansatz::cancellation_residual(parse_kind(kind)?).map_err(to_py)
}

#[pyfunction]
fn window_identity_check<'py>(
    py: Python<'py>,
    kind: &str,
    length: usize,
    seed_a: Complex64,
    seed_b: Complex64,
) -> PyResult<Bound<'py, PyDict>> {
    let r = ansatz::window_identity_check(parse_kind(kind)?, length, [seed_a, seed_b]).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("kind", r.kind.name())?;
    d.set_item("length", r.len)?;
    d.set_item("residual", r.residual)?;
    d.set_item("scale", r.scale)?;
    d.set_item("relative_residual", r.relative_residual())?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (j_over_g, delta_over_g = 0.0, lobe = 1))]
fn mu_particle(j_over_g: f64, delta_over_g: f64, lobe: u32) -> PyResult<f64> {
    Ok(phase::mu_particle(&LobeQuery::new(delta_over_g, lobe, j_over_g).map_err(to_py)?))
}

#[pyfunction]
#[pyo3(signature = (j_over_g, delta_over_g = 0.0, lobe = 1))]
fn mu_hole(j_over_g: f64, delta_over_g: f64, lobe: u32) -> PyResult<f64> {
    Ok(phase::mu_hole(&LobeQuery::new(delta_over_g, lobe, j_over_g).map_err(to_py)?))
}

/// `[(J/g, upper, lower), ...]` with chemical potentials as `(μ - ω_c)/g`.
#[pyfunction]
#[pyo3(signature = (j_grid, delta_over_g = 0.0, lobe = 1))]
fn boundary_curve(j_grid: Vec<f64>, delta_over_g: f64, lobe: u32) -> PyResult<Vec<(f64, f64, f64)>> {
    let c = phase::boundary_curve(delta_over_g, lobe, &j_grid).map_err(to_py)?;
    Ok(c.samples.iter().map(|s| (s.j_over_g, s.mu_upper, s.mu_lower)).collect())
}

#[pyfunction]
#[pyo3(signature = (delta_over_g = 0.0, lobe = 1, j_lo = 0.0, j_hi = 2.0, scan_points = 64))]
fn critical_hopping(delta_over_g: f64, lobe: u32, j_lo: f64, j_hi: f64, scan_points: usize) -> PyResult<PyCriticalPoint> {
    let params = spectrum::SystemParams::from_detuning(delta_over_g).map_err(to_py)?;
    let search = CriticalSearch { j_lo, j_hi, scan_points };
    phase::critical_hopping_with(&params, lobe, &search).map(Into::into).map_err(to_py)
}

/// `J_c/g` per detuning, `None` where the boundaries do not cross.
#[pyfunction]
#[pyo3(signature = (delta_grid, lobe = 1))]
fn jc_vs_detuning(py: Python<'_>, delta_grid: Vec<f64>, lobe: u32) -> Vec<Option<f64>> {
    py.detach(|| phase::jc_vs_detuning(&delta_grid, lobe))
        .into_iter()
        .map(|r| r.ok().map(|c| c.jc_over_g))
        .collect()
}

#[pyfunction]
fn sector_dimension(sites: usize, excitations: usize, n_max: u8) -> u128 {
    ed::sector_dimension(sites, excitations, n_max)
}

/// Exact-diagonalization chemical potentials of a finite chain, in units of g.
#[pyfunction]
#[pyo3(signature = (sites, n_max, j_over_g, delta_over_g = 0.0, boundary = "periodic", filling = 1))]
fn ed_chemical_potentials<'py>(
    py: Python<'py>,
    sites: usize,
    n_max: u8,
    j_over_g: f64,
    delta_over_g: f64,
    boundary: &str,
    filling: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let params = spectrum::SystemParams::from_detuning(delta_over_g).map_err(to_py)?;
    let spec = ChainSpec::new(sites, n_max, parse_boundary(boundary)?, j_over_g, params).map_err(to_py)?;
    let opts = EdOptions::from_env().map_err(to_py)?;
    let r = py.detach(|| ed::chemical_potentials_ed(&spec, filling, &opts)).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("mu_particle", r.mu_particle)?;
    d.set_item("mu_hole", r.mu_hole)?;
    d.set_item("gap", r.gap())?;
    d.set_item("sector_energies", r.sector_energies.clone())?;
    d.set_item("warnings", r.warnings.clone())?;
    Ok(d)
}

#[pymodule]
fn jchm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("NoCrossingError", m.py().get_type::<NoCrossingError>())?;
    m.add("SolverError", m.py().get_type::<SolverError>())?;
    m.add("ResourceError", m.py().get_type::<ResourceError>())?;
    m.add_class::<PySystemParams>()?;
    m.add_class::<PyDressedLevel>()?;
    m.add_class::<PyCriticalPoint>()?;
    m.add_function(wrap_pyfunction!(chi, m)?)?;
    m.add_function(wrap_pyfunction!(effective_params, m)?)?;
    m.add_function(wrap_pyfunction!(dressed_level, m)?)?;
    m.add_function(wrap_pyfunction!(ground_energy, m)?)?;
    m.add_function(wrap_pyfunction!(jc_numeric_check, m)?)?;
    m.add_function(wrap_pyfunction!(build_table, m)?)?;
    m.add_function(wrap_pyfunction!(cancellation_residual, m)?)?;
    m.add_function(wrap_pyfunction!(window_identity_check, m)?)?;
    m.add_function(wrap_pyfunction!(mu_particle, m)?)?;
    m.add_function(wrap_pyfunction!(mu_hole, m)?)?;
    m.add_function(wrap_pyfunction!(boundary_curve, m)?)?;
    m.add_function(wrap_pyfunction!(critical_hopping, m)?)?;
    m.add_function(wrap_pyfunction!(jc_vs_detuning, m)?)?;
    m.add_function(wrap_pyfunction!(sector_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(ed_chemical_potentials, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_parse() {
        assert_eq!(parse_kind("hole").unwrap(), ExcitationKind::Hole);
        assert_eq!(parse_branch("-").unwrap(), Branch::Lower);
        assert_eq!(parse_boundary("open").unwrap(), Boundary::Open);
    }
}
