//! Finite-temperature Casimir pressure between plane mirrors from the
//! Lifshitz formula, with Drude, two-fluid and Mattis-Bardeen (BCS)
//! superconductor models, and the pressure change across the
//! superconducting transition.

pub mod cli;
pub mod constants;
pub mod error;
pub mod lifshitz;
pub mod materials;
pub mod numerics;
pub mod scenarios;
pub mod validation;

pub use error::{Error, Result};
