use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use supercasimir::lifshitz::{self, CavityTemplate, DeltaMode, PressureOptions};
use supercasimir::materials::{self, BcsParams, DrudeParams, GOptions, MaterialModel};
use supercasimir::scenarios::{self, MaterialCatalog, Scenario};
use supercasimir::Error;

create_exception!(supercasimir_py, CasimirError, PyValueError);
create_exception!(supercasimir_py, DomainError, CasimirError);
create_exception!(supercasimir_py, NumericalError, CasimirError);
create_exception!(supercasimir_py, ConfigError, CasimirError);

fn to_py(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::Numerical { .. } => NumericalError::new_err(msg),
        Error::Config { .. } => ConfigError::new_err(msg),
        Error::Domain(_) | Error::Unsupported(_) => DomainError::new_err(msg),
    }
}

/// A mirror material. Build one from the catalog with `Material.named`,
/// or with the `drude`, `bcs`, `two_fluid`, `dielectric` constructors.
#[pyclass(name = "Material", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyMaterial(MaterialModel);

fn drude(eps0: f64, omega_p_ev: f64, gamma0_ev: f64, rrr: f64) -> PyResult<DrudeParams> {
    DrudeParams::new(eps0, omega_p_ev, gamma0_ev, rrr).map_err(to_py)
}

#[pymethods]
impl PyMaterial {
    /// Looks up a material in the catalog (SUPERCASIMIR_MATERIALS if set).
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        let cat = MaterialCatalog::from_env().map_err(to_py)?;
        cat.get(name).map(Self).map_err(to_py)
    }

    #[staticmethod]
    #[pyo3(signature = (omega_p_ev, gamma0_ev, rrr=1.0, eps0=1.0))]
    fn drude(omega_p_ev: f64, gamma0_ev: f64, rrr: f64, eps0: f64) -> PyResult<Self> {
        Ok(Self(MaterialModel::Drude(drude(eps0, omega_p_ev, gamma0_ev, rrr)?)))
    }

    #[staticmethod]
    #[pyo3(signature = (omega_p_ev, gamma0_ev, tc_k, rrr=1.0, eps0=1.0))]
    fn bcs(omega_p_ev: f64, gamma0_ev: f64, tc_k: f64, rrr: f64, eps0: f64) -> PyResult<Self> {
        let p = BcsParams::new(drude(eps0, omega_p_ev, gamma0_ev, rrr)?, tc_k).map_err(to_py)?;
        Ok(Self(MaterialModel::Bcs(p)))
    }

    #[staticmethod]
    #[pyo3(signature = (omega_p_ev, gamma0_ev, tc_k, rrr=1.0, eps0=1.0))]
    fn two_fluid(omega_p_ev: f64, gamma0_ev: f64, tc_k: f64, rrr: f64, eps0: f64) -> PyResult<Self> {
        let p = BcsParams::new(drude(eps0, omega_p_ev, gamma0_ev, rrr)?, tc_k).map_err(to_py)?;
        Ok(Self(MaterialModel::TwoFluid(p)))
    }

    #[staticmethod]
    fn dielectric(eps: f64) -> PyResult<Self> {
        let m = MaterialModel::ConstantDielectric(eps);
        m.validate().map_err(to_py)?;
        Ok(Self(m))
    }

    #[staticmethod]
    fn perfect_conductor() -> Self {
        Self(MaterialModel::PerfectConductor)
    }

    #[staticmethod]
    fn vacuum() -> Self {
        Self(MaterialModel::Vacuum)
    }

    /// Critical temperature in K, None for non-superconductors.
    #[getter]
    fn tc(&self) -> Option<f64> {
        self.0.critical_temperature()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.0.kind()
    }

    /// Same material with its superconductivity switched off.
    fn normal_state(&self) -> Self {
        Self(self.0.normal_state())
    }

    /// ε(iξ) for ħξ in eV at temperature T in K.
    fn permittivity(&self, py: Python<'_>, xi_ev: f64, t_k: f64) -> PyResult<f64> {
        let m = self.0;
        py.detach(|| materials::permittivity(&m, xi_ev, t_k)).map_err(to_py)
    }

    /// Superconducting correction g(ξ;T); BCS materials only.
    fn g(&self, py: Python<'_>, xi_ev: f64, t_k: f64) -> PyResult<f64> {
        let MaterialModel::Bcs(p) = self.0 else {
            return Err(DomainError::new_err(format!("g is defined for BCS materials, not {}", self.0.kind())));
        };
        py.detach(|| materials::g_function(xi_ev, t_k, &p, &GOptions::default())).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Material({})", self.0)
    }
}

/// A half-space, or a film of `thickness_nm` on a substrate.
#[pyclass(name = "Mirror", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyMirror(lifshitz::Mirror);

#[pymethods]
impl PyMirror {
    #[new]
    #[pyo3(signature = (material, thickness_nm=None, substrate=None))]
    fn new(material: PyMaterial, thickness_nm: Option<f64>, substrate: Option<PyMaterial>) -> PyResult<Self> {
        let m = match (thickness_nm, substrate) {
            (None, None) => lifshitz::Mirror::HalfSpace(material.0),
            (Some(w), s) => lifshitz::Mirror::Film {
                film: material.0,
                thickness: w,
                substrate: s.map_or(MaterialModel::Vacuum, |s| s.0),
            },
            (None, Some(_)) => return Err(DomainError::new_err("a substrate needs thickness_nm")),
        };
        m.validate().map_err(to_py)?;
        Ok(Self(m))
    }

    fn __repr__(&self) -> String {
        format!("Mirror({:?})", self.0)
    }
}

#[pyclass(name = "PressureResult", frozen, get_all)]
struct PyPressureResult {
    pressure_pa: f64,
    error_bound_pa: f64,
    terms: usize,
}

#[pymethods]
impl PyPressureResult {
    fn __repr__(&self) -> String {
        format!("PressureResult(pressure_pa={:e}, error_bound_pa={:e})", self.pressure_pa, self.error_bound_pa)
    }
}

impl From<lifshitz::PressureResult> for PyPressureResult {
    fn from(r: lifshitz::PressureResult) -> Self {
        Self {
            pressure_pa: r.pressure_pa,
            error_bound_pa: r.error_bound_pa(),
            terms: r.sum_diag.terms_used,
        }
    }
}

#[pyclass(name = "DeltaResult", frozen, get_all)]
struct PyDeltaResult {
    delta_pa: f64,
    error_bound_pa: f64,
    pressure_t_pa: f64,
    pressure_ref_pa: f64,
    warning: Option<String>,
}

#[pymethods]
impl PyDeltaResult {
    fn __repr__(&self) -> String {
        format!("DeltaResult(delta_pa={:e}, error_bound_pa={:e})", self.delta_pa, self.error_bound_pa)
    }
}

/// Two mirrors facing each other across a vacuum gap.
#[pyclass(name = "Cavity", frozen)]
struct PyCavity(CavityTemplate);

#[pymethods]
impl PyCavity {
    #[new]
    fn new(mirror1: PyMirror, mirror2: PyMirror, gap_nm: f64) -> PyResult<Self> {
        let t = CavityTemplate { mirror1: mirror1.0, mirror2: mirror2.0, gap: gap_nm };
        t.at(1.0).validate().map_err(to_py)?;
        Ok(Self(t))
    }

    /// Highest Tc of the mirrors, None without superconductors.
    #[getter]
    fn tc(&self) -> Option<f64> {
        self.0.critical_temperature()
    }

    /// Lifshitz pressure in Pa at T in K (negative is attractive).
    #[pyo3(signature = (t_k, quad_tol_rel=None, series_tol_pa=None))]
    fn pressure(
        &self,
        py: Python<'_>,
        t_k: f64,
        quad_tol_rel: Option<f64>,
        series_tol_pa: Option<f64>,
    ) -> PyResult<PyPressureResult> {
        let opts = options(quad_tol_rel, series_tol_pa);
        let c = self.0.at(t_k);
        py.detach(|| lifshitz::pressure_with(&c, &opts)).map(Into::into).map_err(to_py)
    }

    /// P(T) - P(T_ref) in Pa; T_ref defaults to the highest Tc.
    #[pyo3(signature = (t_k, t_ref_k=None, normal_state=false, quad_tol_rel=None, series_tol_pa=None))]
    fn delta_pressure(
        &self,
        py: Python<'_>,
        t_k: f64,
        t_ref_k: Option<f64>,
        normal_state: bool,
        quad_tol_rel: Option<f64>,
        series_tol_pa: Option<f64>,
    ) -> PyResult<PyDeltaResult> {
        let opts = options(quad_tol_rel, series_tol_pa);
        let mode = if normal_state { DeltaMode::ForceNormalState } else { DeltaMode::AsModeled };
        let t = self.0;
        let d = py
            .detach(|| lifshitz::delta_pressure_with(&t, t_k, t_ref_k, mode, &opts))
            .map_err(to_py)?;
        Ok(PyDeltaResult {
            delta_pa: d.delta_pa,
            error_bound_pa: d.error_bound_pa(),
            pressure_t_pa: d.at_t.pressure_pa,
            pressure_ref_pa: d.at_ref.pressure_pa,
            warning: d.warning,
        })
    }
}

fn options(quad_tol_rel: Option<f64>, series_tol_pa: Option<f64>) -> PressureOptions {
    let mut o = PressureOptions::default();
    if let Some(q) = quad_tol_rel {
        o.quad_tol_rel = q;
    }
    if let Some(s) = series_tol_pa {
        o.series.tol_abs = s;
    }
    o
}

/// Runs a builtin scenario or scenario file and returns its CSV text.
#[pyfunction]
fn run_scenario(py: Python<'_>, name: &str) -> PyResult<String> {
    let name = name.to_string();
    py.detach(move || -> supercasimir::Result<String> {
        let scenario = if name.ends_with(".toml") {
            let cat = MaterialCatalog::from_env()?;
            Scenario::Sweep(scenarios::load_scenario(&name, &cat)?)
        } else {
            scenarios::builtin_scenario(&name)?
        };
        Ok(match scenario {
            Scenario::Sweep(s) => scenarios::run_sweep(&s)?.to_csv_string(),
            Scenario::Response(r) => scenarios::run_response(&r)?.to_csv_string(),
        })
    })
    .map_err(to_py)
}

#[pyfunction]
fn builtin_scenarios() -> Vec<&'static str> {
    scenarios::BUILTIN_NAMES.to_vec()
}

#[pyfunction]
fn material_names() -> PyResult<Vec<String>> {
    let cat = MaterialCatalog::from_env().map_err(to_py)?;
    Ok(cat.names().into_iter().map(String::from).collect())
}

#[pymodule]
fn supercasimir_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMaterial>()?;
    m.add_class::<PyMirror>()?;
    m.add_class::<PyCavity>()?;
    m.add_class::<PyPressureResult>()?;
    m.add_class::<PyDeltaResult>()?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_scenarios, m)?)?;
    m.add_function(wrap_pyfunction!(material_names, m)?)?;
    let py = m.py();
    m.add("CasimirError", py.get_type::<CasimirError>())?;
    m.add("DomainError", py.get_type::<DomainError>())?;
    m.add("NumericalError", py.get_type::<NumericalError>())?;
    m.add("ConfigError", py.get_type::<ConfigError>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
