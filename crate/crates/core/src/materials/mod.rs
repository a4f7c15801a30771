//! Permittivity models on the imaginary frequency axis.
//!
//! All frequencies are passed as ħξ in eV; temperatures in K.

mod gap;
mod gfunc;
mod gtable;

use std::fmt;
use std::sync::Arc;

pub use gap::{bcs_gap, GapProfile};
pub use gfunc::{g_function, g_function_detailed, GOptions};
pub use gtable::{g_table, GTable};

use crate::error::{Error, Result};

/// Drude permittivity ε(iξ) = ε₀ + Ω²/(ξ(ξ + γ)) with γ = γ₀/RRR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrudeParams {
    /// core-electron permittivity ε₀
    pub eps0: f64,
    /// plasma energy ħΩ, eV
    pub omega_p: f64,
    /// room-temperature relaxation energy ħγ₀, eV
    pub gamma0: f64,
    /// residual resistance ratio
    pub rrr: f64,
}

impl DrudeParams {
    pub fn new(eps0: f64, omega_p: f64, gamma0: f64, rrr: f64) -> Result<Self> {
        let p = Self {
            eps0,
            omega_p,
            gamma0,
            rrr,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega_p > 0.0 && self.omega_p.is_finite()) {
            return Err(Error::domain(format!("plasma energy must be positive, got {}", self.omega_p)));
        }
        if !(self.gamma0 > 0.0 && self.gamma0.is_finite()) {
            return Err(Error::domain(format!("relaxation energy must be positive, got {}", self.gamma0)));
        }
        if !(self.rrr > 0.0 && self.rrr.is_finite()) {
            return Err(Error::domain(format!("RRR must be positive, got {}", self.rrr)));
        }
        if !(self.eps0 >= 1.0 && self.eps0.is_finite()) {
            return Err(Error::domain(format!("eps0 must be at least 1, got {}", self.eps0)));
        }
        Ok(())
    }

    /// Residual relaxation energy ħγ = ħγ₀/RRR in eV.
    #[inline]
    pub fn gamma(&self) -> f64 {
        self.gamma0 / self.rrr
    }

    #[inline]
    pub fn permittivity(&self, xi_ev: f64) -> f64 {
        self.eps0 + self.omega_p * self.omega_p / (xi_ev * (xi_ev + self.gamma()))
    }
}

/// Normal-state Drude parameters plus the critical temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BcsParams {
    pub drude: DrudeParams,
    /// critical temperature, K
    pub tc: f64,
}

impl BcsParams {
    pub fn new(drude: DrudeParams, tc: f64) -> Result<Self> {
        let p = Self { drude, tc };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        self.drude.validate()?;
        if !(self.tc > 0.0 && self.tc.is_finite()) {
            return Err(Error::domain(format!("Tc must be positive, got {}", self.tc)));
        }
        Ok(())
    }

    pub fn gap_profile(&self) -> GapProfile {
        GapProfile::new(self.tc)
    }
}

/// Permittivity law of a mirror material.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MaterialModel {
    Drude(DrudeParams),
    /// Mattis-Bardeen superconductor with a Drude normal state.
    Bcs(BcsParams),
    /// Casimir-Gorter two-fluid superconductor.
    TwoFluid(BcsParams),
    ConstantDielectric(f64),
    /// Ideal reflector; only meaningful as a half-space.
    PerfectConductor,
    Vacuum,
}

impl MaterialModel {
    pub fn validate(&self) -> Result<()> {
        match self {
            MaterialModel::Drude(d) => d.validate(),
            MaterialModel::Bcs(b) | MaterialModel::TwoFluid(b) => b.validate(),
            MaterialModel::ConstantDielectric(eps) => {
                if *eps >= 1.0 && eps.is_finite() {
                    Ok(())
                } else {
                    Err(Error::domain(format!("dielectric constant must be at least 1, got {eps}")))
                }
            }
            MaterialModel::PerfectConductor | MaterialModel::Vacuum => Ok(()),
        }
    }

    /// Critical temperature for superconducting models.
    pub fn critical_temperature(&self) -> Option<f64> {
        match self {
            MaterialModel::Bcs(b) | MaterialModel::TwoFluid(b) => Some(b.tc),
            _ => None,
        }
    }

    /// The same material with superconductivity switched off.
    pub fn normal_state(&self) -> MaterialModel {
        match self {
            MaterialModel::Bcs(b) | MaterialModel::TwoFluid(b) => MaterialModel::Drude(b.drude),
            other => *other,
        }
    }

    /// Drude parameters of the conduction electrons, if any.
    pub fn drude_params(&self) -> Option<DrudeParams> {
        match self {
            MaterialModel::Drude(d) => Some(*d),
            MaterialModel::Bcs(b) | MaterialModel::TwoFluid(b) => Some(b.drude),
            _ => None,
        }
    }

    /// Replaces the Drude parameters of a conducting model.
    pub fn with_drude(&self, drude: DrudeParams) -> MaterialModel {
        match self {
            MaterialModel::Drude(_) => MaterialModel::Drude(drude),
            MaterialModel::Bcs(b) => MaterialModel::Bcs(BcsParams { drude, ..*b }),
            MaterialModel::TwoFluid(b) => MaterialModel::TwoFluid(BcsParams { drude, ..*b }),
            other => *other,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            MaterialModel::Drude(_) => "drude",
            MaterialModel::Bcs(_) => "bcs",
            MaterialModel::TwoFluid(_) => "twofluid",
            MaterialModel::ConstantDielectric(_) => "dielectric",
            MaterialModel::PerfectConductor => "perfect",
            MaterialModel::Vacuum => "vacuum",
        }
    }
}

impl fmt::Display for MaterialModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaterialModel::Drude(d) => write!(
                f,
                "drude(eps0={}, omega_p={} eV, gamma0={} eV, rrr={})",
                d.eps0, d.omega_p, d.gamma0, d.rrr
            ),
            MaterialModel::Bcs(b) | MaterialModel::TwoFluid(b) => write!(
                f,
                "{}(eps0={}, omega_p={} eV, gamma0={} eV, rrr={}, tc={} K)",
                self.kind(),
                b.drude.eps0,
                b.drude.omega_p,
                b.drude.gamma0,
                b.drude.rrr,
                b.tc
            ),
            MaterialModel::ConstantDielectric(eps) => write!(f, "dielectric(eps={eps})"),
            MaterialModel::PerfectConductor => write!(f, "perfect"),
            MaterialModel::Vacuum => write!(f, "vacuum"),
        }
    }
}

/// Casimir-Gorter superfluid fraction n_s = 1 - (T/Tc)⁴ below Tc, else 0.
pub fn superfluid_fraction(tc: f64, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::domain(format!("temperature must be non-negative, got {t}")));
    }
    if t >= tc {
        return Ok(0.0);
    }
    Ok(1.0 - (t / tc).powi(4))
}

/// Mean free path over coherence length, ℓ/ξ₀ = πΔ(0)/(ħγ).
pub fn dirty_limit_ratio(params: &BcsParams) -> f64 {
    std::f64::consts::PI * params.gap_profile().zero_temperature() / params.drude.gamma()
}

/// ε(iξ) of `model` at ħξ = `xi_ev` > 0, with g evaluated directly.
pub fn permittivity(model: &MaterialModel, xi_ev: f64, t: f64) -> Result<f64> {
    permittivity_with(model, xi_ev, t, &GOptions::default())
}

pub fn permittivity_with(model: &MaterialModel, xi_ev: f64, t: f64, opts: &GOptions) -> Result<f64> {
    if !(xi_ev > 0.0) || !xi_ev.is_finite() {
        return Err(Error::domain(format!("permittivity needs ħξ > 0, got {xi_ev}")));
    }
    if !(t >= 0.0) {
        return Err(Error::domain(format!("temperature must be non-negative, got {t}")));
    }
    match model {
        MaterialModel::Bcs(b) => {
            let g = g_function(xi_ev, t, b, opts)?;
            Ok(bcs_permittivity(&b.drude, xi_ev, g))
        }
        MaterialModel::PerfectConductor => Err(Error::Unsupported(
            "a perfect conductor has no finite permittivity".into(),
        )),
        _ => MaterialResponse::resolve(model, t, &GSource::Direct(*opts))?.permittivity(xi_ev),
    }
}

#[inline]
fn bcs_permittivity(d: &DrudeParams, xi: f64, g: f64) -> f64 {
    let w2 = d.omega_p * d.omega_p;
    d.eps0 + w2 / xi * (1.0 / (xi + d.gamma()) + g / xi)
}

/// Static (ξ → 0) behaviour relevant to the l = 0 Matsubara term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroFrequency {
    /// ε·ξ² → 0: the TE reflection vanishes at ξ = 0.
    TeVanishing,
    /// ε·ξ² → Ω_eff²: effective plasma energy ħΩ_eff in eV
    /// (infinite for a perfect conductor).
    PlasmaLike(f64),
    /// Finite static permittivity.
    Dielectric(f64),
}

pub fn zero_frequency_behavior(model: &MaterialModel, t: f64) -> Result<ZeroFrequency> {
    Ok(MaterialResponse::resolve(model, t, &GSource::Direct(GOptions::default()))?.zero_frequency())
}

/// Leading small-ξ form ε(iξ) ≈ coeff·(ħξ)^(-order). `order` 3 stands for
/// an infinite permittivity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct StaticAsymptote {
    pub order: u8,
    pub coeff: f64,
}

/// How g(ξ;T) is obtained for a superconductor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GSource {
    Direct(GOptions),
    /// Build a [`GTable`] up to `xi_max` (eV) with absolute tolerance `tol`.
    Table { tol: f64, xi_max: f64 },
}

impl Default for GSource {
    fn default() -> Self {
        GSource::Table { tol: 1e-10, xi_max: 100.0 }
    }
}

#[derive(Debug, Clone)]
enum GEval {
    None,
    Direct(BcsParams, GOptions),
    Table(Arc<GTable>),
}

/// A material model bound to a temperature, ready for repeated evaluation
/// along the imaginary axis.
#[derive(Debug, Clone)]
pub struct MaterialResponse {
    model: MaterialModel,
    temperature: f64,
    g: GEval,
    superfluid: f64,
    asymptote: StaticAsymptote,
}

impl MaterialResponse {
    pub fn resolve(model: &MaterialModel, t: f64, source: &GSource) -> Result<Self> {
        Self::resolve_shared(model, t, source, None)
    }

    /// As [`resolve`](Self::resolve), reusing `table` when it was built for
    /// the same parameters and temperature.
    pub fn resolve_shared(
        model: &MaterialModel,
        t: f64,
        source: &GSource,
        table: Option<Arc<GTable>>,
    ) -> Result<Self> {
        model.validate()?;
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::domain(format!("temperature must be non-negative, got {t}")));
        }
        let (g, superfluid) = match model {
            MaterialModel::Bcs(b) if t < b.tc => {
                let g = match (source, table) {
                    (_, Some(tab)) => GEval::Table(tab),
                    (GSource::Direct(o), None) => GEval::Direct(*b, *o),
                    (GSource::Table { tol, xi_max }, None) => GEval::Table(Arc::new(g_table(b, t, *xi_max, *tol)?)),
                };
                (g, 0.0)
            }
            MaterialModel::TwoFluid(b) => (GEval::None, superfluid_fraction(b.tc, t)?),
            _ => (GEval::None, 0.0),
        };
        let mut response = Self {
            model: *model,
            temperature: t,
            g,
            superfluid,
            asymptote: StaticAsymptote { order: 0, coeff: 1.0 },
        };
        response.asymptote = response.static_asymptote()?;
        Ok(response)
    }

    pub fn model(&self) -> &MaterialModel {
        &self.model
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// Shared g table, when one was built.
    pub fn table(&self) -> Option<Arc<GTable>> {
        match &self.g {
            GEval::Table(t) => Some(t.clone()),
            _ => None,
        }
    }

    pub fn is_perfect_conductor(&self) -> bool {
        matches!(self.model, MaterialModel::PerfectConductor)
    }

    /// g(ξ;T) for this material (zero for non-BCS models or T ≥ Tc).
    pub fn g(&self, xi_ev: f64) -> Result<f64> {
        match &self.g {
            GEval::None => Ok(0.0),
            GEval::Direct(b, o) => g_function(xi_ev, self.temperature, b, o),
            GEval::Table(t) => t.eval(xi_ev),
        }
    }

    /// ε(iξ) at ħξ = `xi_ev` > 0. A perfect conductor yields +∞.
    pub fn permittivity(&self, xi_ev: f64) -> Result<f64> {
        if !(xi_ev > 0.0) || !xi_ev.is_finite() {
            return Err(Error::domain(format!("permittivity needs ħξ > 0, got {xi_ev}")));
        }
        Ok(match &self.model {
            MaterialModel::Vacuum => 1.0,
            MaterialModel::ConstantDielectric(eps) => *eps,
            MaterialModel::PerfectConductor => f64::INFINITY,
            MaterialModel::Drude(d) => d.permittivity(xi_ev),
            MaterialModel::Bcs(b) => bcs_permittivity(&b.drude, xi_ev, self.g(xi_ev)?),
            MaterialModel::TwoFluid(b) => {
                let d = &b.drude;
                let w2 = d.omega_p * d.omega_p;
                let ns = self.superfluid;
                d.eps0 + (1.0 - ns) * w2 / (xi_ev * (xi_ev + d.gamma())) + ns * w2 / (xi_ev * xi_ev)
            }
        })
    }

    fn static_asymptote(&self) -> Result<StaticAsymptote> {
        Ok(match &self.model {
            MaterialModel::Vacuum => StaticAsymptote { order: 0, coeff: 1.0 },
            MaterialModel::ConstantDielectric(eps) => StaticAsymptote { order: 0, coeff: *eps },
            MaterialModel::PerfectConductor => StaticAsymptote { order: 3, coeff: 1.0 },
            MaterialModel::Drude(d) => drude_asymptote(d),
            MaterialModel::Bcs(b) => {
                let g0 = self.g(0.0)?;
                if g0 > 0.0 {
                    StaticAsymptote {
                        order: 2,
                        coeff: b.drude.omega_p * b.drude.omega_p * g0,
                    }
                } else {
                    drude_asymptote(&b.drude)
                }
            }
            MaterialModel::TwoFluid(b) => {
                if self.superfluid > 0.0 {
                    StaticAsymptote {
                        order: 2,
                        coeff: b.drude.omega_p * b.drude.omega_p * self.superfluid,
                    }
                } else {
                    drude_asymptote(&b.drude)
                }
            }
        })
    }

    pub(crate) fn asymptote(&self) -> StaticAsymptote {
        self.asymptote
    }

    pub fn zero_frequency(&self) -> ZeroFrequency {
        let a = self.asymptote;
        match a.order {
            0 => ZeroFrequency::Dielectric(a.coeff),
            1 => ZeroFrequency::TeVanishing,
            2 => ZeroFrequency::PlasmaLike(a.coeff.sqrt()),
            _ => ZeroFrequency::PlasmaLike(f64::INFINITY),
        }
    }
}

fn drude_asymptote(d: &DrudeParams) -> StaticAsymptote {
    StaticAsymptote {
        order: 1,
        coeff: d.omega_p * d.omega_p / d.gamma(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn au() -> DrudeParams {
        DrudeParams::new(6.3, 9.0, 0.035, 1.0).unwrap()
    }

    fn nbtin() -> BcsParams {
        BcsParams::new(DrudeParams::new(1.0, 5.33, 0.465, 1.12).unwrap(), 13.6).unwrap()
    }

    #[test]
    fn drude_gold_at_one_ev() {
        let eps = permittivity(&MaterialModel::Drude(au()), 1.0, 300.0).unwrap();
        assert!((eps - (6.3 + 81.0 / 1.035)).abs() < 1e-12);
        assert!((eps - 84.56).abs() < 5e-3);
    }

    #[test]
    fn simple_models() {
        assert_eq!(permittivity(&MaterialModel::Vacuum, 0.3, 1.0).unwrap(), 1.0);
        assert_eq!(permittivity(&MaterialModel::ConstantDielectric(7.6), 0.3, 1.0).unwrap(), 7.6);
        assert!(matches!(
            permittivity(&MaterialModel::PerfectConductor, 0.3, 1.0),
            Err(Error::Unsupported(_))
        ));
        assert!(permittivity(&MaterialModel::Vacuum, 0.0, 1.0).is_err());
        assert!(permittivity(&MaterialModel::Vacuum, -1.0, 1.0).is_err());
    }

    #[test]
    fn two_fluid_at_tc_is_drude() {
        let b = nbtin();
        for xi in [1e-4, 1e-2, 1.0, 30.0] {
            let tf = permittivity(&MaterialModel::TwoFluid(b), xi, b.tc).unwrap();
            let dr = permittivity(&MaterialModel::Drude(b.drude), xi, b.tc).unwrap();
            assert_eq!(tf, dr);
        }
    }

    #[test]
    fn superfluid_fraction_values() {
        assert_eq!(superfluid_fraction(1.2, 1.2).unwrap(), 0.0);
        assert_eq!(superfluid_fraction(1.2, 0.0).unwrap(), 1.0);
        assert_eq!(superfluid_fraction(1.2, 0.6).unwrap(), 0.9375);
        assert!(superfluid_fraction(1.2, -0.6).is_err());
    }

    #[test]
    fn zero_frequency_classes() {
        let b = nbtin();
        assert_eq!(
            zero_frequency_behavior(&MaterialModel::Drude(au()), 4.0).unwrap(),
            ZeroFrequency::TeVanishing
        );
        assert_eq!(
            zero_frequency_behavior(&MaterialModel::Bcs(b), b.tc).unwrap(),
            ZeroFrequency::TeVanishing
        );
        match zero_frequency_behavior(&MaterialModel::TwoFluid(b), b.tc / 2.0).unwrap() {
            ZeroFrequency::PlasmaLike(w) => assert!((w - 5.33 * 0.9375f64.sqrt()).abs() < 1e-14),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            zero_frequency_behavior(&MaterialModel::ConstantDielectric(7.6), 1.0).unwrap(),
            ZeroFrequency::Dielectric(7.6)
        );
        assert_eq!(
            zero_frequency_behavior(&MaterialModel::PerfectConductor, 1.0).unwrap(),
            ZeroFrequency::PlasmaLike(f64::INFINITY)
        );
        match zero_frequency_behavior(&MaterialModel::Bcs(b), 0.5 * b.tc).unwrap() {
            ZeroFrequency::PlasmaLike(w) => {
                let g0 = g_function(0.0, 0.5 * b.tc, &b, &GOptions::default()).unwrap();
                assert!((w - 5.33 * g0.sqrt()).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dirty_limit() {
        let al = BcsParams::new(DrudeParams::new(1.03, 13.0, 0.1, 1.0).unwrap(), 1.2).unwrap();
        assert!((dirty_limit_ratio(&al) / 5.7e-3 - 1.0).abs() < 0.02);
        let nb = BcsParams::new(DrudeParams::new(1.0, 5.33, 0.465, 1.0).unwrap(), 13.6).unwrap();
        assert!((dirty_limit_ratio(&nb) / 1.4e-2 - 1.0).abs() < 0.02);
        let mut huge = nb;
        huge.drude.gamma0 = 1e300;
        assert!(dirty_limit_ratio(&huge) < 1e-295);
    }

    #[test]
    fn parameter_validation() {
        assert!(DrudeParams::new(1.0, 0.0, 0.1, 1.0).is_err());
        assert!(DrudeParams::new(1.0, 1.0, -0.1, 1.0).is_err());
        assert!(DrudeParams::new(0.5, 1.0, 0.1, 1.0).is_err());
        assert!(DrudeParams::new(1.0, 1.0, 0.1, 0.0).is_err());
        assert!(BcsParams::new(au(), 0.0).is_err());
        assert!(MaterialModel::ConstantDielectric(0.9).validate().is_err());
    }

    #[test]
    fn normal_state_strips_superconductivity() {
        let b = nbtin();
        assert_eq!(MaterialModel::Bcs(b).normal_state(), MaterialModel::Drude(b.drude));
        assert_eq!(MaterialModel::Vacuum.normal_state(), MaterialModel::Vacuum);
    }
}
