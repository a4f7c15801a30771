use std::collections::HashMap;

use rayon::prelude::*;

use super::gap::bcs_gap;
use super::gfunc::{g_function, GOptions};
use super::BcsParams;
use crate::constants::CODATA;
use crate::error::{Error, Result};
use crate::numerics::MonotoneCubic;

const POINTS_PER_DECADE: usize = 8;
const MAX_KNOTS: usize = 100_000;
const MAX_EXTENSIONS: usize = 12;

/// Interpolation table of g(ξ;T) at one temperature.
///
/// Knots are log-spaced in ħξ and refined until the interpolant matches
/// direct evaluation at every interval midpoint to within `tol`. ξ = 0 is
/// stored exactly; below the first knot g is evaluated directly; above
/// `xi_max` it is taken as zero, with `tail_bound` = g(xi_max).
#[derive(Debug, Clone)]
pub struct GTable {
    params: BcsParams,
    temperature: f64,
    tol: f64,
    g_zero: f64,
    xi_max: f64,
    tail_bound: f64,
    interp: Option<Interp>,
}

#[derive(Debug, Clone)]
struct Interp {
    curve: MonotoneCubic,
    /// Values stored as ln g (true) or g (false), against ln ħξ.
    log_values: bool,
}

impl Interp {
    fn eval(&self, ln_xi: f64) -> f64 {
        let v = self.curve.eval(ln_xi);
        if self.log_values {
            v.exp()
        } else {
            v
        }
    }
}

/// Builds a table of g on [0, xi_max] (ħξ in eV) at temperature `t`.
///
/// If g(xi_max) ≥ tol the upper end is pushed out by decades until the
/// neglected tail is below `tol`.
pub fn g_table(params: &BcsParams, t: f64, xi_max: f64, tol: f64) -> Result<GTable> {
    if !(tol > 0.0) {
        return Err(Error::domain("table tolerance must be positive"));
    }
    if !(xi_max > 0.0 && xi_max.is_finite()) {
        return Err(Error::domain("xi_max must be positive and finite"));
    }
    let gap = bcs_gap(&params.gap_profile(), t)?;
    if gap == 0.0 {
        return Ok(GTable {
            params: *params,
            temperature: t,
            tol,
            g_zero: 0.0,
            xi_max,
            tail_bound: 0.0,
            interp: None,
        });
    }
    let direct_opts = GOptions {
        tol: 0.1 * tol,
        ..Default::default()
    };
    let g = |xi: f64| g_function(xi, t, params, &direct_opts);

    let mut xi_max = xi_max;
    let mut tail = g(xi_max)?;
    let mut extensions = 0;
    while tail.abs() >= tol {
        extensions += 1;
        if extensions > MAX_EXTENSIONS {
            return Err(Error::Numerical {
                what: format!("g table tail at T = {t} K"),
                estimate: tail,
                error_bound: tail,
            });
        }
        xi_max *= 10.0;
        tail = g(xi_max)?;
    }

    let g_zero = g(0.0)?;
    let kt = CODATA.thermal_energy(t);
    let low_scale = if kt > 0.0 { (2.0 * gap).min(2.0 * std::f64::consts::PI * kt) } else { 2.0 * gap };
    let xi_lo = (1e-3 * low_scale).min(0.1 * xi_max);

    let (l0, l1) = (xi_lo.ln(), xi_max.ln());
    let n = (((l1 - l0) / std::f64::consts::LN_10) * POINTS_PER_DECADE as f64).ceil() as usize + 1;
    let mut knots: Vec<f64> = (0..n).map(|i| l0 + (l1 - l0) * i as f64 / (n - 1) as f64).collect();
    knots[n - 1] = l1;
    let mut values: Vec<f64> = knots.par_iter().map(|&x| g(x.exp())).collect::<Result<_>>()?;
    let mut midpoint_cache: HashMap<u64, f64> = HashMap::new();

    while knots.len() <= MAX_KNOTS {
        let interp = build_interp(&knots, &values)?;
        let mids: Vec<f64> = knots.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        let missing: Vec<f64> = mids
            .iter()
            .copied()
            .filter(|m| !midpoint_cache.contains_key(&m.to_bits()))
            .collect();
        let fresh: Vec<f64> = missing.par_iter().map(|&m| g(m.exp())).collect::<Result<_>>()?;
        for (m, v) in missing.iter().zip(fresh) {
            midpoint_cache.insert(m.to_bits(), v);
        }
        // A new knot changes the slopes of the adjacent intervals, so those
        // are split as well.
        let bad: Vec<bool> = mids
            .iter()
            .map(|&m| (interp.eval(m) - midpoint_cache[&m.to_bits()]).abs() > 0.5 * tol)
            .collect();
        let split = |i: usize| bad[i] || (i > 0 && bad[i - 1]) || bad.get(i + 1).copied().unwrap_or(false);
        let mut new_knots = Vec::with_capacity(2 * knots.len());
        let mut new_values = Vec::with_capacity(2 * knots.len());
        let mut refined = false;
        for (i, &m) in mids.iter().enumerate() {
            new_knots.push(knots[i]);
            new_values.push(values[i]);
            if split(i) {
                new_knots.push(m);
                new_values.push(midpoint_cache[&m.to_bits()]);
                refined = true;
            }
        }
        new_knots.push(*knots.last().unwrap());
        new_values.push(*values.last().unwrap());
        if !refined {
            return Ok(GTable {
                params: *params,
                temperature: t,
                tol,
                g_zero,
                xi_max,
                tail_bound: tail.abs(),
                interp: Some(interp),
            });
        }
        knots = new_knots;
        values = new_values;
    }
    Err(Error::Numerical {
        what: format!("g table refinement at T = {t} K ({} knots)", knots.len()),
        estimate: g_zero,
        error_bound: tol,
    })
}

fn build_interp(knots: &[f64], values: &[f64]) -> Result<Interp> {
    let log_values = values.iter().all(|&v| v > 0.0);
    let ys = if log_values {
        values.iter().map(|v| v.ln()).collect()
    } else {
        values.to_vec()
    };
    Ok(Interp {
        curve: MonotoneCubic::new(knots.to_vec(), ys)?,
        log_values,
    })
}

impl GTable {
    /// g at ħξ = `xi_ev`.
    pub fn eval(&self, xi_ev: f64) -> Result<f64> {
        if !(xi_ev >= 0.0) {
            return Err(Error::domain(format!("ħξ must be non-negative, got {xi_ev}")));
        }
        let Some(interp) = &self.interp else {
            return Ok(0.0);
        };
        if xi_ev == 0.0 {
            return Ok(self.g_zero);
        }
        if xi_ev > self.xi_max {
            return Ok(0.0);
        }
        let ln = xi_ev.ln();
        if ln < interp.curve.xs()[0] {
            let opts = GOptions {
                tol: 0.1 * self.tol,
                ..Default::default()
            };
            return g_function(xi_ev, self.temperature, &self.params, &opts);
        }
        Ok(interp.eval(ln))
    }

    /// True when T ≥ Tc and g vanishes everywhere.
    pub fn is_identically_zero(&self) -> bool {
        self.interp.is_none()
    }

    pub fn g_zero(&self) -> f64 {
        self.g_zero
    }

    pub fn xi_max(&self) -> f64 {
        self.xi_max
    }

    pub fn xi_min(&self) -> f64 {
        self.interp.as_ref().map_or(0.0, |i| i.curve.xs()[0].exp())
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn knots(&self) -> usize {
        self.interp.as_ref().map_or(0, |i| i.curve.xs().len())
    }

    /// Stored knots as (ħξ, g) pairs.
    pub fn knot_values(&self) -> Vec<(f64, f64)> {
        match &self.interp {
            None => Vec::new(),
            Some(i) => i
                .curve
                .xs()
                .iter()
                .zip(i.curve.ys())
                .map(|(x, y)| (x.exp(), if i.log_values { y.exp() } else { *y }))
                .collect(),
        }
    }
}
