use std::fmt;
use std::path::Path;

use serde::Deserialize;
use toml::Spanned;

use crate::error::{Error, Result};
use crate::materials::{BcsParams, DrudeParams, MaterialModel};

const DEFAULT_DATABASE: &str = include_str!("../../data/materials.toml");

/// Environment variable naming an alternate material database.
pub const MATERIALS_ENV: &str = "SUPERCASIMIR_MATERIALS";

/// Named materials, in file order.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialCatalog {
    entries: Vec<(String, MaterialModel)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDatabase {
    #[serde(default)]
    material: Vec<Spanned<RawMaterial>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMaterial {
    name: String,
    model: String,
    eps0: Option<f64>,
    #[serde(rename = "omega_p_eV")]
    omega_p: Option<f64>,
    #[serde(rename = "gamma0_eV")]
    gamma0: Option<f64>,
    rrr: Option<f64>,
    #[serde(rename = "tc_K")]
    tc: Option<f64>,
    eps: Option<f64>,
}

pub(crate) fn line_of(source: &str, offset: usize) -> usize {
    source[..offset.min(source.len())].matches('\n').count() + 1
}

pub(crate) fn toml_error(source: &str, e: toml::de::Error) -> Error {
    let line = e.span().map(|s| line_of(source, s.start));
    Error::config(line, e.message().to_string())
}

impl RawMaterial {
    fn build(&self) -> std::result::Result<MaterialModel, String> {
        let need = |v: Option<f64>, key: &str| v.ok_or_else(|| format!("material '{}' needs `{key}`", self.name));
        let forbid = |keys: &[(&str, Option<f64>)]| -> std::result::Result<(), String> {
            match keys.iter().find(|(_, v)| v.is_some()) {
                Some((k, _)) => Err(format!("`{k}` does not apply to {} material '{}'", self.model, self.name)),
                None => Ok(()),
            }
        };
        let drude = || -> std::result::Result<DrudeParams, String> {
            DrudeParams::new(
                self.eps0.unwrap_or(1.0),
                need(self.omega_p, "omega_p_eV")?,
                need(self.gamma0, "gamma0_eV")?,
                self.rrr.unwrap_or(1.0),
            )
            .map_err(|e| format!("material '{}': {e}", self.name))
        };
        let model = match self.model.as_str() {
            "drude" => {
                forbid(&[("tc_K", self.tc), ("eps", self.eps)])?;
                MaterialModel::Drude(drude()?)
            }
            "bcs" | "twofluid" => {
                forbid(&[("eps", self.eps)])?;
                let b = BcsParams::new(drude()?, need(self.tc, "tc_K")?)
                    .map_err(|e| format!("material '{}': {e}", self.name))?;
                if self.model == "bcs" {
                    MaterialModel::Bcs(b)
                } else {
                    MaterialModel::TwoFluid(b)
                }
            }
            "dielectric" => {
                forbid(&[
                    ("eps0", self.eps0),
                    ("omega_p_eV", self.omega_p),
                    ("gamma0_eV", self.gamma0),
                    ("rrr", self.rrr),
                    ("tc_K", self.tc),
                ])?;
                let m = MaterialModel::ConstantDielectric(need(self.eps, "eps")?);
                m.validate().map_err(|e| format!("material '{}': {e}", self.name))?;
                m
            }
            "perfect" | "vacuum" => {
                forbid(&[
                    ("eps0", self.eps0),
                    ("omega_p_eV", self.omega_p),
                    ("gamma0_eV", self.gamma0),
                    ("rrr", self.rrr),
                    ("tc_K", self.tc),
                    ("eps", self.eps),
                ])?;
                if self.model == "perfect" {
                    MaterialModel::PerfectConductor
                } else {
                    MaterialModel::Vacuum
                }
            }
            other => {
                return Err(format!(
                    "unknown model '{other}' for material '{}' (expected drude, bcs, twofluid, dielectric, perfect or vacuum)",
                    self.name
                ))
            }
        };
        Ok(model)
    }
}

impl MaterialCatalog {
    /// Parses a TOML material database.
    pub fn parse(source: &str) -> Result<Self> {
        let raw: RawDatabase = toml::from_str(source).map_err(|e| toml_error(source, e))?;
        if raw.material.is_empty() {
            return Err(Error::config(None, "no materials"));
        }
        let mut entries: Vec<(String, MaterialModel)> = Vec::with_capacity(raw.material.len());
        for spanned in &raw.material {
            let line = Some(line_of(source, spanned.span().start));
            let m = spanned.get_ref();
            if entries.iter().any(|(n, _)| n.eq_ignore_ascii_case(&m.name)) {
                return Err(Error::config(line, format!("duplicate material '{}'", m.name)));
            }
            let model = m.build().map_err(|msg| Error::config(line, msg))?;
            entries.push((m.name.clone(), model));
        }
        Ok(Self { entries })
    }

    /// The database shipped with the crate.
    pub fn builtin() -> Self {
        Self::parse(DEFAULT_DATABASE).expect("shipped material database parses")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(None, format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The database named by `SUPERCASIMIR_MATERIALS`, or the shipped one.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(MATERIALS_ENV) {
            Some(p) if !p.is_empty() => Self::load(p),
            _ => Ok(Self::builtin()),
        }
    }

    /// Looks up a material by name (case-insensitive). `vacuum` and
    /// `perfect` always resolve.
    pub fn get(&self, name: &str) -> Result<MaterialModel> {
        if let Some((_, m)) = self.entries.iter().find(|(n, _)| n.eq_ignore_ascii_case(name)) {
            return Ok(*m);
        }
        match name.to_ascii_lowercase().as_str() {
            "vacuum" => Ok(MaterialModel::Vacuum),
            "perfect" | "perfect_conductor" => Ok(MaterialModel::PerfectConductor),
            _ => Err(Error::config(
                None,
                format!("unknown material '{name}' (known: {})", self.names().join(", ")),
            )),
        }
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &MaterialModel)> {
        self.entries.iter().map(|(n, m)| (n.as_str(), m))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for MaterialCatalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, model) in &self.entries {
            writeln!(f, "{name:<8} {model}")?;
        }
        Ok(())
    }
}
