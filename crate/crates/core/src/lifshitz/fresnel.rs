use crate::constants::CODATA;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    Te,
    Tm,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::Te, Polarization::Tm];
}

/// Reflection amplitude carried together with 1 - r and 1 + r, which are
/// needed to full precision when |r| → 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reflection {
    pub r: f64,
    pub one_minus_r: f64,
    pub one_plus_r: f64,
}

impl Reflection {
    pub const ZERO: Reflection = Reflection::new(0.0, 1.0, 1.0);
    pub const ONE: Reflection = Reflection::new(1.0, 0.0, 2.0);
    pub const MINUS_ONE: Reflection = Reflection::new(-1.0, 2.0, 0.0);

    const fn new(r: f64, one_minus_r: f64, one_plus_r: f64) -> Self {
        Self {
            r,
            one_minus_r,
            one_plus_r,
        }
    }

    /// The amplitude scaled by a factor 0 < decay ≤ 1, with
    /// `one_minus_decay` = 1 - decay supplied to full precision.
    #[inline]
    pub(crate) fn attenuated(&self, decay: f64, one_minus_decay: f64) -> Self {
        Self::new(
            self.r * decay,
            one_minus_decay + decay * self.one_minus_r,
            one_minus_decay + decay * self.one_plus_r,
        )
    }

    /// Combined reflection of an interface `top` followed by a second
    /// reflection `below` (already including the propagation factor).
    #[inline]
    pub(crate) fn stack(top: &Self, below: &Self) -> Self {
        let (a, b) = (top, below);
        // 1 + r_a r_b and r_a + r_b without cancellation when r_a ≈ -r_b ≈ ±1
        let (den, num) = if a.r >= 0.0 && b.r <= 0.0 {
            (
                a.one_minus_r + b.one_plus_r - a.one_minus_r * b.one_plus_r,
                b.one_plus_r - a.one_minus_r,
            )
        } else if a.r <= 0.0 && b.r >= 0.0 {
            (
                a.one_plus_r + b.one_minus_r - a.one_plus_r * b.one_minus_r,
                a.one_plus_r - b.one_minus_r,
            )
        } else {
            (1.0 + a.r * b.r, a.r + b.r)
        };
        Self::new(
            num / den,
            a.one_minus_r * b.one_minus_r / den,
            a.one_plus_r * b.one_plus_r / den,
        )
    }
}

/// Optical description of one medium at a given imaginary frequency.
///
/// `order`/`coeff` describe ε: at ξ > 0 a finite ε has order 0 and
/// coeff = ε; at ξ = 0 the leading behaviour ε ~ coeff·ξ^(-order) is used.
/// Order 3 marks an infinite permittivity. `extra` is s² - k⊥² in nm⁻²
/// (εξ²/c² at ξ > 0, Ω_eff²/c² at ξ = 0), +∞ for a perfect conductor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Medium {
    pub order: u8,
    pub coeff: f64,
    pub extra: f64,
}

impl Medium {
    pub fn vacuum(kappa2: f64) -> Self {
        Self {
            order: 0,
            coeff: 1.0,
            extra: kappa2,
        }
    }

    pub fn perfect() -> Self {
        Self {
            order: 3,
            coeff: 1.0,
            extra: f64::INFINITY,
        }
    }

    /// Medium of finite permittivity `eps` at ξ > 0 with κ² = ξ²/c².
    pub fn finite(eps: f64, kappa2: f64) -> Self {
        if eps.is_infinite() {
            return Self::perfect();
        }
        Self {
            order: 0,
            coeff: eps,
            extra: eps * kappa2,
        }
    }

    #[inline]
    pub fn s(&self, k2: f64) -> f64 {
        (k2 + self.extra).sqrt()
    }
}

/// Reflection at the interface from medium `a` into medium `b`.
pub(crate) fn interface(a: &Medium, b: &Medium, k2: f64, pol: Polarization) -> Reflection {
    match pol {
        Polarization::Te => {
            if b.extra.is_infinite() {
                return Reflection::MINUS_ONE;
            }
            let (sa, sb) = (a.s(k2), b.s(k2));
            let den = sa + sb;
            Reflection::new((sa - sb) / den, 2.0 * sb / den, 2.0 * sa / den)
        }
        Polarization::Tm => {
            if b.order > a.order {
                return Reflection::ONE;
            }
            if b.order < a.order {
                return Reflection::MINUS_ONE;
            }
            let rho = b.coeff / a.coeff;
            let (sa, sb) = (a.s(k2), b.s(k2));
            let den = rho * sa + sb;
            Reflection::new((rho * sa - sb) / den, 2.0 * sb / den, 2.0 * rho * sa / den)
        }
    }
}

/// Fresnel coefficient of a vacuum / half-space interface with permittivity
/// `eps` at ħξ = `xi_ev` (eV) and in-plane wavenumber `k_perp` (1/nm).
pub fn fresnel(eps: f64, xi_ev: f64, k_perp: f64, pol: Polarization) -> Result<f64> {
    if !(eps >= 1.0) {
        return Err(Error::domain(format!("fresnel needs eps >= 1, got {eps}")));
    }
    if !(xi_ev >= 0.0 && k_perp >= 0.0) || (xi_ev == 0.0 && k_perp == 0.0) {
        return Err(Error::domain("fresnel needs ξ, k⊥ >= 0, not both zero"));
    }
    let kappa = CODATA.wavenumber(xi_ev);
    let kappa2 = kappa * kappa;
    let k2 = k_perp * k_perp;
    Ok(interface(&Medium::vacuum(kappa2), &Medium::finite(eps, kappa2), k2, pol).r)
}
