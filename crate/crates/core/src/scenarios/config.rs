use std::path::Path;

use serde::Deserialize;
use toml::Spanned;

use super::builtin::{linspace, logspace};
use super::catalog::{line_of, toml_error, MaterialCatalog};
use super::sweep::{Axis, Series, SweepMode, SweepOutput, SweepSpec, Temperature};
use crate::error::{Error, Result};
use crate::lifshitz::{CavityTemplate, Mirror, PressureOptions};
use crate::materials::{DrudeParams, MaterialModel};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: Option<String>,
    cavity: Spanned<RawCavity>,
    mirror1: Spanned<RawMirror>,
    mirror2: Spanned<RawMirror>,
    sweep: Option<Spanned<RawSweep>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCavity {
    a_nm: f64,
    #[serde(rename = "T_K")]
    t_k: Option<f64>,
    #[serde(rename = "T_over_Tc")]
    t_over_tc: Option<f64>,
    #[serde(rename = "T_ref_K")]
    t_ref_k: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMirror {
    material: Spanned<String>,
    w_nm: Option<f64>,
    substrate: Option<Spanned<String>>,
    rrr: Option<f64>,
    eps0: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    axis: Spanned<String>,
    points: Option<Vec<f64>>,
    range: Option<RawRange>,
    mode: Option<Spanned<String>>,
    output: Option<Spanned<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRange {
    from: f64,
    to: f64,
    count: usize,
    #[serde(default = "lin")]
    scale: String,
}

fn lin() -> String {
    "lin".into()
}

/// A parsed scenario file. The sweep section is optional so that the same
/// file can describe a single cavity.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioFile {
    pub name: String,
    pub template: CavityTemplate,
    pub temperature: Option<Temperature>,
    pub t_ref: Option<f64>,
    pub sweep: Option<SweepSpec>,
}

fn at<T>(source: &str, s: &Spanned<T>) -> Option<usize> {
    Some(line_of(source, s.span().start))
}

fn mirror(source: &str, raw: &Spanned<RawMirror>, catalog: &MaterialCatalog) -> Result<Mirror> {
    let r = raw.get_ref();
    let lookup = |name: &Spanned<String>| {
        catalog.get(name.get_ref()).map_err(|e| match e {
            Error::Config { message, .. } => Error::config(at(source, name), message),
            other => other,
        })
    };
    let mut film = lookup(&r.material)?;
    if r.rrr.is_some() || r.eps0.is_some() {
        let d = film.drude_params().ok_or_else(|| {
            Error::config(at(source, raw), format!("rrr/eps0 overrides need a conducting material, not {film}"))
        })?;
        film = film.with_drude(DrudeParams {
            rrr: r.rrr.unwrap_or(d.rrr),
            eps0: r.eps0.unwrap_or(d.eps0),
            ..d
        });
    }
    let m = match (r.w_nm, &r.substrate) {
        (None, None) => Mirror::HalfSpace(film),
        (Some(w), sub) => Mirror::Film {
            film,
            thickness: w,
            substrate: match sub {
                Some(s) => lookup(s)?,
                None => MaterialModel::Vacuum,
            },
        },
        (None, Some(s)) => return Err(Error::config(at(source, s), "`substrate` needs `w_nm`")),
    };
    m.validate().map_err(|e| Error::config(at(source, raw), e.to_string()))?;
    Ok(m)
}

fn parse_enum<T: std::str::FromStr<Err = Error>>(source: &str, s: &Spanned<String>) -> Result<T> {
    s.get_ref().parse().map_err(|e| match e {
        Error::Config { message, .. } => Error::config(at(source, s), message),
        other => other,
    })
}

impl ScenarioFile {
    /// Parses scenario TOML; `default_name` is used when the file has no
    /// `name` key.
    pub fn parse(source: &str, default_name: &str, catalog: &MaterialCatalog) -> Result<Self> {
        let raw: RawScenario = toml::from_str(source).map_err(|e| toml_error(source, e))?;
        let cav = raw.cavity.get_ref();
        let cav_line = at(source, &raw.cavity);
        if !(cav.a_nm >= 10.0) {
            return Err(Error::config(cav_line, format!("a_nm must be at least 10, got {}", cav.a_nm)));
        }
        let temperature = match (cav.t_k, cav.t_over_tc) {
            (Some(_), Some(_)) => {
                return Err(Error::config(cav_line, "T_K and T_over_Tc are mutually exclusive"));
            }
            (Some(t), None) => Some(Temperature::Kelvin(t)),
            (None, Some(r)) => Some(Temperature::OverTc(r)),
            (None, None) => None,
        };
        let template = CavityTemplate {
            mirror1: mirror(source, &raw.mirror1, catalog)?,
            mirror2: mirror(source, &raw.mirror2, catalog)?,
            gap: cav.a_nm,
        };
        if let Some(t) = temperature {
            t.resolve(&template).map_err(|e| Error::config(cav_line, e.to_string()))?;
        }
        let name = raw.name.unwrap_or_else(|| default_name.to_string());
        let sweep = match raw.sweep {
            None => None,
            Some(sw) => {
                let line = at(source, &sw);
                let s = sw.get_ref();
                let axis: Axis = parse_enum(source, &s.axis)?;
                let points = match (&s.points, &s.range) {
                    (Some(p), None) => p.clone(),
                    (None, Some(r)) => {
                        if r.count == 0 {
                            return Err(Error::config(line, "range count must be positive"));
                        }
                        match r.scale.as_str() {
                            "lin" => linspace(r.from, r.to, r.count),
                            "log" if r.from > 0.0 && r.to > 0.0 => logspace(r.from, r.to, r.count),
                            "log" => return Err(Error::config(line, "log range needs positive bounds")),
                            other => {
                                return Err(Error::config(line, format!("unknown scale '{other}' (expected lin or log)")))
                            }
                        }
                    }
                    _ => return Err(Error::config(line, "[sweep] needs exactly one of `points` or `range`")),
                };
                let spec = SweepSpec {
                    name: name.clone(),
                    series: vec![Series {
                        label: name.clone(),
                        base: template,
                    }],
                    axis,
                    points,
                    temperature,
                    t_ref: cav.t_ref_k,
                    mode: match &s.mode {
                        Some(m) => parse_enum(source, m)?,
                        None => SweepMode::AsModeled,
                    },
                    output: match &s.output {
                        Some(o) => parse_enum(source, o)?,
                        None => SweepOutput::DeltaPressure,
                    },
                    options: PressureOptions::default(),
                };
                spec.validate().map_err(|e| Error::config(line, e.to_string()))?;
                Some(spec)
            }
        };
        Ok(Self {
            name,
            template,
            temperature,
            t_ref: cav.t_ref_k,
            sweep,
        })
    }

    pub fn load(path: impl AsRef<Path>, catalog: &MaterialCatalog) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(None, format!("cannot read {}: {e}", path.display())))?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("scenario");
        Self::parse(&text, stem, catalog)
    }

    pub fn into_sweep(self) -> Result<SweepSpec> {
        self.sweep
            .ok_or_else(|| Error::config(None, format!("scenario '{}' has no [sweep] section", self.name)))
    }
}

/// Parses a scenario with a `[sweep]` section.
pub fn parse_scenario(source: &str, name: &str, catalog: &MaterialCatalog) -> Result<SweepSpec> {
    ScenarioFile::parse(source, name, catalog)?.into_sweep()
}

/// Loads a scenario file with a `[sweep]` section.
pub fn load_scenario(path: impl AsRef<Path>, catalog: &MaterialCatalog) -> Result<SweepSpec> {
    ScenarioFile::load(path, catalog)?.into_sweep()
}
