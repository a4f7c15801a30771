//! Reflection coefficients and the Lifshitz pressure between two mirrors.

mod fresnel;
mod mirror;
mod pressure;

pub use fresnel::{fresnel, Polarization, Reflection};
pub use mirror::{Mirror, ResolvedMirror};
pub use pressure::{
    delta_pressure, delta_pressure_with, pressure, pressure_with, CavityConfig, CavityTemplate, DeltaMode,
    DeltaResult, PressureOptions, PressureResult,
};
pub(crate) use pressure::{combine_delta, effective_template, resolve_reference};
