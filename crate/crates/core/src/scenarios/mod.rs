//! Parameter sweeps, named figure scenarios, material and scenario files,
//! and CSV output.

mod builtin;
mod catalog;
mod config;
mod response;
mod sweep;

pub use builtin::{builtin_scenario, linspace, logspace, Scenario, BUILTIN_NAMES, GRID_POINTS};
pub use catalog::{MaterialCatalog, MATERIALS_ENV};
pub use config::{load_scenario, parse_scenario, ScenarioFile};
pub use response::{run_response, ResponseQuantity, ResponseRow, ResponseSpec, ResponseTable};
pub use sweep::{run_sweep, Axis, Series, SweepMode, SweepOutput, SweepRow, SweepSpec, SweepTable, Temperature};
