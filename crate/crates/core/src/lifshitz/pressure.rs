use std::f64::consts::PI;

use super::fresnel::Polarization;
use super::mirror::{Mirror, MirrorAt, ResolvedMirror, ResponseCache};
use crate::constants::CODATA;
use crate::error::{Error, Result};
use crate::materials::GSource;
use crate::numerics::{
    integrate_semi_infinite, matsubara_series, SeriesOptions, SeriesTerm, SumDiagnostics, Transform,
};

/// Two mirrors across a vacuum gap at a given temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityConfig {
    pub mirror1: Mirror,
    pub mirror2: Mirror,
    /// gap width a in nm
    pub gap: f64,
    /// temperature in K
    pub temperature: f64,
}

impl CavityConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.gap > 0.0) || !self.gap.is_finite() {
            return Err(Error::domain(format!("gap width must be positive, got {}", self.gap)));
        }
        if !(self.temperature > 0.0) || !self.temperature.is_finite() {
            return Err(Error::domain(format!(
                "temperature must be positive, got {}",
                self.temperature
            )));
        }
        self.mirror1.validate()?;
        self.mirror2.validate()
    }

    pub fn template(&self) -> CavityTemplate {
        CavityTemplate {
            mirror1: self.mirror1,
            mirror2: self.mirror2,
            gap: self.gap,
        }
    }
}

/// A cavity without its temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityTemplate {
    pub mirror1: Mirror,
    pub mirror2: Mirror,
    pub gap: f64,
}

impl CavityTemplate {
    pub fn at(&self, temperature: f64) -> CavityConfig {
        CavityConfig {
            mirror1: self.mirror1,
            mirror2: self.mirror2,
            gap: self.gap,
            temperature,
        }
    }

    /// Highest critical temperature in the cavity, if any material is a
    /// superconductor.
    pub fn critical_temperature(&self) -> Option<f64> {
        [self.mirror1.critical_temperature(), self.mirror2.critical_temperature()]
            .into_iter()
            .flatten()
            .reduce(f64::max)
    }

    pub fn normal_state(&self) -> CavityTemplate {
        CavityTemplate {
            mirror1: self.mirror1.normal_state(),
            mirror2: self.mirror2.normal_state(),
            gap: self.gap,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureOptions {
    /// Matsubara truncation; `tol_abs` is in Pa.
    pub series: SeriesOptions,
    /// Relative tolerance of each k⊥ integral.
    pub quad_tol_rel: f64,
    pub g_source: GSource,
}

impl Default for PressureOptions {
    fn default() -> Self {
        Self {
            series: SeriesOptions {
                cutoff_ratio: 1e-10,
                tol_abs: 1e-10,
                ..Default::default()
            },
            quad_tol_rel: 1e-11,
            g_source: GSource::default(),
        }
    }
}

/// Casimir pressure with its error accounting. Negative values mean
/// attraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureResult {
    pub pressure_pa: f64,
    pub sum_diag: SumDiagnostics,
    /// Accumulated k⊥-quadrature error bound in Pa.
    pub quad_error_pa: f64,
}

impl PressureResult {
    /// Quadrature plus truncation error bound in Pa.
    pub fn error_bound_pa(&self) -> f64 {
        self.quad_error_pa + self.sum_diag.truncation_bound
    }
}

/// Lifshitz pressure at the cavity's temperature with default tolerances.
pub fn pressure(cavity: &CavityConfig) -> Result<PressureResult> {
    pressure_with(cavity, &PressureOptions::default())
}

pub fn pressure_with(cavity: &CavityConfig, opts: &PressureOptions) -> Result<PressureResult> {
    cavity.validate()?;
    let t = cavity.temperature;
    let a = cavity.gap;
    let mut cache = ResponseCache::default();
    let m1 = ResolvedMirror::resolve_cached(&cavity.mirror1, t, &opts.g_source, &mut cache)?;
    let m2 = ResolvedMirror::resolve_cached(&cavity.mirror2, t, &opts.g_source, &mut cache)?;
    let kt = CODATA.thermal_energy(t);
    // -(k_B T)/(8π a³), converted from eV/nm³ to Pa
    let prefactor = -kt / (8.0 * PI * a * a * a) * CODATA.pascal_per_ev_nm3();
    let quad_tol = opts.quad_tol_rel;

    let term = |l: usize| -> Result<SeriesTerm> {
        let xi = CODATA.matsubara_energy(l, t);
        let o1 = m1.at_frequency(xi)?;
        let o2 = m2.at_frequency(xi)?;
        if o1.is_transparent() || o2.is_transparent() {
            return Ok(SeriesTerm::default());
        }
        let kappa = CODATA.wavenumber(xi);
        let y0 = 2.0 * a * kappa;
        let r = integrate_semi_infinite(
            |s| integrand(&o1, &o2, a, kappa, y0, s),
            Transform::ExpDecay { scale: 1.0 },
            quad_tol,
            0.0,
        )
        .map_err(|e| match e {
            Error::Numerical {
                estimate, error_bound, ..
            } => Error::Numerical {
                what: format!("k⊥ integral of Matsubara term {l}"),
                estimate: prefactor * estimate,
                error_bound: (prefactor * error_bound).abs(),
            },
            other => other,
        })?;
        Ok(SeriesTerm {
            value: prefactor * r.value,
            error: (prefactor * r.error_bound).abs(),
        })
    };
    let (value, diag) = matsubara_series(term, &opts.series)?;
    Ok(PressureResult {
        pressure_pa: value,
        sum_diag: diag,
        quad_error_pa: diag.term_error,
    })
}

/// y² Σ_α x/(1 - x), x = r₁r₂e^(-y), at y = y0 + s with y = 2a·q.
#[inline]
fn integrand(o1: &MirrorAt, o2: &MirrorAt, a: f64, kappa: f64, y0: f64, s: f64) -> f64 {
    let y = y0 + s;
    let q = y / (2.0 * a);
    // k⊥² = q² - κ² = (q - κ)(q + κ) with q - κ = s/2a
    let k2 = s / (2.0 * a) * (q + kappa);
    let decay = (-y).exp();
    let one_minus_decay = -(-y).exp_m1();
    let mut acc = 0.0;
    for pol in Polarization::BOTH {
        let r1 = o1.reflect(k2, pol);
        let r2 = o2.reflect(k2, pol);
        let rr = r1.r * r2.r;
        if rr == 0.0 {
            continue;
        }
        // 1 - r₁r₂, symmetric in the two mirrors
        let one_minus_rr = r1.one_minus_r + r2.one_minus_r - r1.one_minus_r * r2.one_minus_r;
        let x = rr * decay;
        let one_minus_x = one_minus_rr * decay + one_minus_decay;
        acc += x / one_minus_x;
    }
    y * y * acc
}

/// Which response the superconductors are given in a ΔP computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeltaMode {
    AsModeled,
    /// Every superconductor is replaced by its normal-state Drude model.
    ForceNormalState,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeltaResult {
    /// ΔP = P(T) - P(T_ref) in Pa
    pub delta_pa: f64,
    pub at_t: PressureResult,
    pub at_ref: PressureResult,
    /// Set when |ΔP| is within 10× the combined error bounds.
    pub warning: Option<String>,
}

impl DeltaResult {
    pub fn error_bound_pa(&self) -> f64 {
        self.at_t.error_bound_pa() + self.at_ref.error_bound_pa()
    }
}

/// ΔP(T) = P(T) - P(T_ref); `t_ref` defaults to the highest Tc in the cavity.
pub fn delta_pressure(
    template: &CavityTemplate,
    t: f64,
    t_ref: Option<f64>,
    mode: DeltaMode,
) -> Result<DeltaResult> {
    delta_pressure_with(template, t, t_ref, mode, &PressureOptions::default())
}

pub fn delta_pressure_with(
    template: &CavityTemplate,
    t: f64,
    t_ref: Option<f64>,
    mode: DeltaMode,
    opts: &PressureOptions,
) -> Result<DeltaResult> {
    let t_ref = resolve_reference(template, t_ref)?;
    if !(t > 0.0 && t <= t_ref) {
        return Err(Error::domain(format!("need 0 < T <= T_ref, got T = {t}, T_ref = {t_ref}")));
    }
    let cavity = effective_template(template, mode);
    let at_ref = pressure_with(&cavity.at(t_ref), opts)?;
    let at_t = if t == t_ref {
        at_ref
    } else {
        pressure_with(&cavity.at(t), opts)?
    };
    Ok(combine_delta(at_t, at_ref))
}

pub(crate) fn resolve_reference(template: &CavityTemplate, t_ref: Option<f64>) -> Result<f64> {
    match t_ref.or_else(|| template.critical_temperature()) {
        Some(t) if t > 0.0 && t.is_finite() => Ok(t),
        Some(t) => Err(Error::domain(format!("reference temperature must be positive, got {t}"))),
        None => Err(Error::domain(
            "no superconductor in the cavity: a reference temperature is required",
        )),
    }
}

pub(crate) fn effective_template(template: &CavityTemplate, mode: DeltaMode) -> CavityTemplate {
    match mode {
        DeltaMode::AsModeled => *template,
        DeltaMode::ForceNormalState => template.normal_state(),
    }
}

pub(crate) fn combine_delta(at_t: PressureResult, at_ref: PressureResult) -> DeltaResult {
    let delta = at_t.pressure_pa - at_ref.pressure_pa;
    let bound = at_t.error_bound_pa() + at_ref.error_bound_pa();
    let warning = (delta != 0.0 && delta.abs() < 10.0 * bound).then(|| {
        format!("|ΔP| = {:e} Pa is within 10x the combined error bound {:e} Pa", delta.abs(), bound)
    });
    DeltaResult {
        delta_pa: delta,
        at_t,
        at_ref,
        warning,
    }
}
