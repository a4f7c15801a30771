use std::io::{self, Write};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::materials::{g_function, permittivity_with, BcsParams, GOptions, MaterialModel};

/// Which material-response curve to tabulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResponseQuantity {
    /// g(ξ;T).
    G,
    /// ε(iξ) of the BCS, normal-state Drude and two-fluid models.
    Permittivity,
}

/// Response curves of one superconductor against ξ/2Δ(0).
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseSpec {
    pub name: String,
    pub material: BcsParams,
    pub quantity: ResponseQuantity,
    pub t_over_tc: Vec<f64>,
    /// Abscissae ħξ/2Δ(0).
    pub points: Vec<f64>,
    pub g_options: GOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResponseRow {
    pub t_over_tc: f64,
    pub x: f64,
    pub xi_ev: f64,
    /// g, or (ε_BCS, ε_Drude, ε_two-fluid).
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResponseTable {
    pub name: String,
    pub quantity: ResponseQuantity,
    pub material: BcsParams,
    pub rows: Vec<ResponseRow>,
}

impl ResponseSpec {
    pub fn validate(&self) -> Result<()> {
        self.material.validate()?;
        if self.points.is_empty() || self.t_over_tc.is_empty() {
            return Err(Error::domain("response spec needs at least one point and one temperature"));
        }
        if !self.points.windows(2).all(|w| w[1] > w[0]) || !(self.points[0] > 0.0) {
            return Err(Error::domain("response points must be positive and increasing"));
        }
        if let Some(t) = self.t_over_tc.iter().find(|&&t| !(t > 0.0 && t <= 1.0)) {
            return Err(Error::domain(format!("T/Tc must lie in (0, 1], got {t}")));
        }
        Ok(())
    }
}

pub fn run_response(spec: &ResponseSpec) -> Result<ResponseTable> {
    spec.validate()?;
    let p = spec.material;
    let two_gap0 = 2.0 * p.gap_profile().zero_temperature();
    let jobs: Vec<(f64, f64)> = spec
        .t_over_tc
        .iter()
        .flat_map(|&t| spec.points.iter().map(move |&x| (t, x)))
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(r, x)| {
            let t = r * p.tc;
            let xi = x * two_gap0;
            let values = match spec.quantity {
                ResponseQuantity::G => vec![g_function(xi, t, &p, &spec.g_options)?],
                ResponseQuantity::Permittivity => vec![
                    permittivity_with(&MaterialModel::Bcs(p), xi, t, &spec.g_options)?,
                    permittivity_with(&MaterialModel::Drude(p.drude), xi, t, &spec.g_options)?,
                    permittivity_with(&MaterialModel::TwoFluid(p), xi, t, &spec.g_options)?,
                ],
            };
            Ok(ResponseRow {
                t_over_tc: r,
                x,
                xi_ev: xi,
                values,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ResponseTable {
        name: spec.name.clone(),
        quantity: spec.quantity,
        material: p,
        rows,
    })
}

impl ResponseTable {
    pub fn write_csv(&self, mut w: impl Write) -> io::Result<()> {
        writeln!(w, "# supercasimir v{} scenario={}", env!("CARGO_PKG_VERSION"), self.name)?;
        writeln!(
            w,
            "# material={}; Delta0_eV={:e}",
            MaterialModel::Bcs(self.material),
            self.material.gap_profile().zero_temperature()
        )?;
        let cols = match self.quantity {
            ResponseQuantity::G => "T_over_Tc,xi_over_2Delta0,hbar_xi_eV,g",
            ResponseQuantity::Permittivity => "T_over_Tc,xi_over_2Delta0,hbar_xi_eV,eps_bcs,eps_drude,eps_twofluid",
        };
        writeln!(w, "{cols}")?;
        for r in &self.rows {
            let mut fields = vec![format!("{:e}", r.t_over_tc), format!("{:e}", r.x), format!("{:e}", r.xi_ev)];
            fields.extend(r.values.iter().map(|v| format!("{v:e}")));
            writeln!(w, "{}", fields.join(","))?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV is UTF-8")
    }
}
