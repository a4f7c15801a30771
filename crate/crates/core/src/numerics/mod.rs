//! Quadrature, series summation and interpolation engines with explicit
//! error accounting.

mod interp;
mod quad;
mod sum;

pub use interp::MonotoneCubic;
pub use quad::{
    integrate, integrate_breakpoints, integrate_semi_infinite, QuadOptions, QuadResult, Transform,
};
pub use sum::{
    matsubara_series, matsubara_sum, CompensatedSum, SeriesOptions, SeriesTerm, SumDiagnostics,
};
