use rayon::prelude::*;

use crate::error::{Error, Result};

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

/// Convergence record of a truncated series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumDiagnostics {
    /// Number of terms added, including l = 0.
    pub terms_used: usize,
    /// |last term| / |partial sum| at truncation.
    pub last_term_ratio: f64,
    /// Geometric-tail estimate of the neglected remainder.
    pub truncation_bound: f64,
    /// Sum of the per-term error bounds reported by the term evaluator.
    pub term_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    pub cutoff_ratio: f64,
    pub tol_abs: f64,
    /// Safety budget: more terms than this is treated as non-convergence.
    pub max_terms: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self {
            cutoff_ratio: 1e-10,
            tol_abs: 1e-12,
            max_terms: 20_000_000,
        }
    }
}

/// A term value together with the error bound of its evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SeriesTerm {
    pub value: f64,
    pub error: f64,
}

impl From<f64> for SeriesTerm {
    fn from(value: f64) -> Self {
        Self { value, error: 0.0 }
    }
}

const FIRST_CHUNK: usize = 64;
const MAX_CHUNK: usize = 8192;

/// Primed Matsubara sum ½·t(0) + Σ_{l≥1} t(l) of a decaying series.
///
/// Terms are evaluated in parallel chunks but always reduced in ascending
/// order, so the result does not depend on the number of threads.
/// Truncation happens at the first l ≥ 2 where |t(l)| < cutoff_ratio·|S| and
/// the geometric-tail estimate |t(l)|·ρ/(1-ρ), ρ = |t(l)/t(l-1)|, is below
/// `tol_abs`.
pub fn matsubara_series<F>(term: F, opts: &SeriesOptions) -> Result<(f64, SumDiagnostics)>
where
    F: Fn(usize) -> Result<SeriesTerm> + Sync,
{
    if !(opts.cutoff_ratio > 0.0 && opts.tol_abs > 0.0) {
        return Err(Error::domain("series tolerances must be positive"));
    }
    let mut acc = CompensatedSum::new();
    let mut err = CompensatedSum::new();
    let mut prev = f64::NAN;
    let mut start = 0usize;
    let mut chunk = FIRST_CHUNK;
    while start < opts.max_terms {
        let end = (start + chunk).min(opts.max_terms);
        let values: Vec<Result<SeriesTerm>> = (start..end).into_par_iter().map(&term).collect();
        for (l, v) in (start..end).zip(values) {
            let t = v?;
            if !t.value.is_finite() {
                return Err(Error::Numerical {
                    what: format!("Matsubara term {l}"),
                    estimate: acc.value(),
                    error_bound: f64::INFINITY,
                });
            }
            let weight = if l == 0 { 0.5 } else { 1.0 };
            acc.add(weight * t.value);
            err.add(weight * t.error);
            if l >= 2 {
                let partial = acc.value();
                let mag = t.value.abs();
                let tail = if mag == 0.0 {
                    0.0
                } else {
                    let rho = mag / prev.abs();
                    if rho < 1.0 {
                        mag * rho / (1.0 - rho)
                    } else {
                        f64::INFINITY
                    }
                };
                if mag <= opts.cutoff_ratio * partial.abs() && tail < opts.tol_abs {
                    let diag = SumDiagnostics {
                        terms_used: l + 1,
                        last_term_ratio: if partial == 0.0 { 0.0 } else { mag / partial.abs() },
                        truncation_bound: tail,
                        term_error: err.value(),
                    };
                    return Ok((partial, diag));
                }
            }
            prev = t.value;
        }
        start = end;
        chunk = (chunk * 2).min(MAX_CHUNK);
    }
    Err(Error::Numerical {
        what: format!("Matsubara sum (budget of {} terms)", opts.max_terms),
        estimate: acc.value(),
        error_bound: prev.abs(),
    })
}

/// [`matsubara_series`] for infallible, exactly evaluated terms.
pub fn matsubara_sum<F>(term: F, opts: &SeriesOptions) -> Result<(f64, SumDiagnostics)>
where
    F: Fn(usize) -> f64 + Sync,
{
    matsubara_series(|l| Ok(SeriesTerm::from(term(l))), opts)
}
