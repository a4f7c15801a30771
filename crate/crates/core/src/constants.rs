//! Physical constants and unit conversions.
//!
//! Internal units: energies and frequencies in eV (frequencies are stored as
//! ħξ), lengths in nm, temperatures in K, pressures in Pa.

/// CODATA 2018 values. Every unit conversion goes through this record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// ħ in eV·s
    pub hbar_ev_s: f64,
    /// k_B in eV/K
    pub kb_ev_per_k: f64,
    /// ħc in eV·nm
    pub hbar_c_ev_nm: f64,
    /// c in nm/s
    pub c_nm_per_s: f64,
    /// elementary charge, J per eV
    pub joule_per_ev: f64,
}

pub const CODATA: PhysicalConstants = PhysicalConstants {
    hbar_ev_s: 6.582_119_569e-16,
    kb_ev_per_k: 8.617_333_262e-5,
    hbar_c_ev_nm: 6.582_119_569e-16 * 2.997_924_58e17,
    c_nm_per_s: 2.997_924_58e17,
    joule_per_ev: 1.602_176_634e-19,
};

impl PhysicalConstants {
    /// Thermal energy k_B T in eV.
    #[inline]
    pub fn thermal_energy(&self, t_kelvin: f64) -> f64 {
        self.kb_ev_per_k * t_kelvin
    }

    /// ħξ_l = 2πl k_B T, in eV.
    #[inline]
    pub fn matsubara_energy(&self, l: usize, t_kelvin: f64) -> f64 {
        2.0 * std::f64::consts::PI * l as f64 * self.kb_ev_per_k * t_kelvin
    }

    /// Converts an angular frequency in rad/s to ħω in eV.
    #[inline]
    pub fn rad_per_s_to_ev(&self, omega: f64) -> f64 {
        omega * self.hbar_ev_s
    }

    /// Converts ħω in eV to rad/s.
    #[inline]
    pub fn ev_to_rad_per_s(&self, energy: f64) -> f64 {
        energy / self.hbar_ev_s
    }

    /// ξ/c in 1/nm for ħξ given in eV.
    #[inline]
    pub fn wavenumber(&self, energy_ev: f64) -> f64 {
        energy_ev / self.hbar_c_ev_nm
    }

    /// Pa per (eV/nm³).
    #[inline]
    pub fn pascal_per_ev_nm3(&self) -> f64 {
        self.joule_per_ev * 1e27
    }
}
