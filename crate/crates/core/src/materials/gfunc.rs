//! The superconducting correction g(ξ;T) to the Drude conductivity on the
//! imaginary frequency axis (local dirty-limit Mattis-Bardeen response).
//!
//! g(ξ) = ∫ dε/E · tanh(E/2k_BT) · Re G₊(iξ, ε) with
//!   G₊ = [ε²Q + (Q + iħγ)A] / (Q[ε² - (Q + iħγ)²]),
//!   E = √(ε² + Δ²), Q = √((E + iħξ)² - Δ²) (principal branch),
//!   A = E(E + iħξ) + Δ².
//!
//! Direct evaluation loses all precision once ε ≫ ħγ: G₊ is then dominated
//! by the purely imaginary normal-state value iE/(ħξ + ħγ). With p = E + iħξ
//! and δ = p - Q = Δ²/(p + Q), subtracting that value exactly gives
//!   G₊ - iE/(ħξ+ħγ) = ħγ[2δEQ + i(ħξ+ħγ)(Eδ + Δ²)]
//!                     / ((ħξ+ħγ) · Q · [(ħγ)² - iħξ(E+p) - 2iħγQ]),
//! which is what is integrated here. Substituting ε = Δ sinh u turns dε/E
//! into du.
//!
//! The integral does not commute with ξ → 0: for small ħξ the integrand has
//! a spike of width √(2Δħξ) around ε = 0 that carries a finite weight
//! πΔ/(ħγ)·tanh(Δ/2k_BT). [`g_function`] at ξ = 0 returns the ξ → 0⁺ limit,
//! i.e. that weight plus the regular part, where Re G₊ = -2Δ²/((ħγ)² + 4ε²).

use num_complex::Complex64;

use super::gap::bcs_gap;
use super::BcsParams;
use crate::constants::CODATA;
use crate::error::{Error, Result};
use crate::numerics::{integrate_breakpoints, QuadOptions, QuadResult};

/// Accuracy controls for g(ξ;T).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GOptions {
    /// Absolute tolerance on g.
    pub tol: f64,
    pub max_intervals: usize,
}

impl Default for GOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_intervals: 4000,
        }
    }
}

/// g(ξ;T) for ħξ = `xi_ev` (eV) and temperature `t` (K).
pub fn g_function(xi_ev: f64, t: f64, params: &BcsParams, opts: &GOptions) -> Result<f64> {
    g_function_detailed(xi_ev, t, params, opts).map(|r| r.value)
}

/// Like [`g_function`] but also returns the quadrature error bound.
pub fn g_function_detailed(xi_ev: f64, t: f64, params: &BcsParams, opts: &GOptions) -> Result<QuadResult> {
    if !(xi_ev >= 0.0) || !xi_ev.is_finite() {
        return Err(Error::domain(format!("ħξ must be finite and non-negative, got {xi_ev}")));
    }
    if !(t >= 0.0) {
        return Err(Error::domain(format!("temperature must be non-negative, got {t}")));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::domain("g tolerance must be positive"));
    }
    let gap = bcs_gap(&params.gap_profile(), t)?;
    if gap == 0.0 {
        return Ok(QuadResult {
            value: 0.0,
            error_bound: 0.0,
            evaluations: 1,
        });
    }
    let h = params.drude.gamma();
    let kt = CODATA.thermal_energy(t);
    let thermal = |e: f64| if kt == 0.0 { 1.0 } else { (e / (2.0 * kt)).tanh() };

    let scale = h.max(xi_ev).max(gap).max(kt);
    let u_max = (1e6 * scale / gap).asinh();
    let mut points = vec![0.0, u_max];
    let mut mark = |eps: f64| {
        let u = (eps / gap).asinh();
        if u > 0.0 && u < u_max {
            points.push(u);
        }
    };
    mark(gap);
    mark(h);
    mark(kt);
    mark(10.0 * scale);
    if xi_ev > 0.0 {
        let w = (2.0 * gap * xi_ev).sqrt();
        mark(0.1 * w);
        mark(w);
        mark(10.0 * w);
        mark(xi_ev);
    }
    points.sort_by(f64::total_cmp);
    points.dedup();

    let quad = QuadOptions {
        tol_rel: 0.0,
        tol_abs: 0.5 * opts.tol,
        max_intervals: opts.max_intervals,
    };
    let half = if xi_ev == 0.0 {
        let d2 = gap * gap;
        integrate_breakpoints(
            |u: f64| {
                let eps = gap * u.sinh();
                let e = gap * u.cosh();
                thermal(e) * (-2.0 * d2 / (h * h + 4.0 * eps * eps))
            },
            &points,
            &quad,
        )
    } else {
        integrate_breakpoints(|u: f64| thermal(gap * u.cosh()) * re_g_plus(u, gap, xi_ev, h), &points, &quad)
    };
    let half = half.map_err(|e| match e {
        Error::Numerical { estimate, error_bound, .. } => Error::Numerical {
            what: format!("g(ħξ = {xi_ev:e} eV, T = {t} K)"),
            estimate: 2.0 * estimate,
            error_bound: 2.0 * error_bound,
        },
        other => other,
    })?;
    let spike = if xi_ev == 0.0 {
        std::f64::consts::PI * gap / h * thermal(gap)
    } else {
        0.0
    };
    Ok(QuadResult {
        value: spike + 2.0 * half.value,
        error_bound: 2.0 * half.error_bound,
        evaluations: half.evaluations,
    })
}

/// Re G₊(iξ, ε) at ε = Δ sinh u, in the cancellation-free form.
#[inline]
fn re_g_plus(u: f64, gap: f64, x: f64, h: f64) -> f64 {
    let (sinh, cosh) = (u.sinh(), u.cosh());
    let e = gap * cosh;
    let eps = gap * sinh;
    let d2 = gap * gap;
    let p = Complex64::new(e, x);
    // (E - Δ) = ε²/(E + Δ) avoids cancellation near the gap edge
    let p_minus = Complex64::new(eps * eps / (e + gap), x);
    let p_plus = Complex64::new(e + gap, x);
    let q = (p_minus * p_plus).sqrt();
    let delta = d2 / (p + q);
    let i = Complex64::i();
    let num = h * (2.0 * delta * e * q + i * (x + h) * (e * delta + d2));
    let den = (h + x) * q * (h * h - i * x * (e + p) - 2.0 * i * h * q);
    (num / den).re
}
