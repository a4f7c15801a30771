use crate::constants::CODATA;
use crate::error::{Error, Result};

/// Interpolation formula for the BCS gap,
/// Δ(T) = c1·k_B·Tc·√(1 - T/Tc)·(c2 + c3·T/Tc), with Δ = 0 for T ≥ Tc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapProfile {
    pub tc: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl GapProfile {
    pub const C1: f64 = 1.764;
    pub const C2: f64 = 0.9963;
    pub const C3: f64 = 0.7735;

    pub fn new(tc: f64) -> Self {
        Self {
            tc,
            c1: Self::C1,
            c2: Self::C2,
            c3: Self::C3,
        }
    }

    /// Zero-temperature gap c1·c2·k_B·Tc in eV.
    pub fn zero_temperature(&self) -> f64 {
        self.c1 * CODATA.kb_ev_per_k * self.tc * self.c2
    }
}

/// BCS gap in eV at temperature `t` (K).
pub fn bcs_gap(profile: &GapProfile, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::domain(format!("temperature must be non-negative, got {t}")));
    }
    if t >= profile.tc {
        return Ok(0.0);
    }
    let r = t / profile.tc;
    Ok(profile.c1 * CODATA.kb_ev_per_k * profile.tc * (1.0 - r).sqrt() * (profile.c2 + profile.c3 * r))
}
