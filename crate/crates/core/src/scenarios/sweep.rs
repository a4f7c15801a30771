use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lifshitz::{
    combine_delta, effective_template, pressure_with, resolve_reference, CavityTemplate, DeltaMode, Mirror,
    PressureOptions, PressureResult,
};
use crate::materials::{DrudeParams, MaterialModel};

/// Swept parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    /// Temperature in K.
    Temperature,
    /// Gap width a in nm.
    Separation,
    /// Thickness of every film in the cavity, nm.
    FilmThickness,
    /// RRR of the superconducting materials.
    RrrSc,
    /// RRR of the normal (Drude) metals.
    RrrAu,
    /// Core-electron permittivity ε₀ of the superconducting materials.
    CoreEps,
}

impl Axis {
    pub const ALL: [Axis; 6] = [
        Axis::Temperature,
        Axis::Separation,
        Axis::FilmThickness,
        Axis::RrrSc,
        Axis::RrrAu,
        Axis::CoreEps,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Axis::Temperature => "temperature",
            Axis::Separation => "separation",
            Axis::FilmThickness => "film_thickness",
            Axis::RrrSc => "rrr_sc",
            Axis::RrrAu => "rrr_au",
            Axis::CoreEps => "core_eps",
        }
    }

    /// CSV column header, with unit suffix.
    pub fn column(&self) -> &'static str {
        match self {
            Axis::Temperature => "T_K",
            Axis::Separation => "a_nm",
            Axis::FilmThickness => "w_nm",
            Axis::RrrSc => "rrr_sc",
            Axis::RrrAu => "rrr_au",
            Axis::CoreEps => "eps0_sc",
        }
    }

    fn check_value(&self, x: f64) -> Result<()> {
        let ok = x.is_finite()
            && match self {
                Axis::Temperature => x > 0.0,
                Axis::Separation => x >= 10.0,
                Axis::FilmThickness => x > 0.0,
                Axis::RrrSc | Axis::RrrAu => x >= 0.1,
                Axis::CoreEps => x >= 1.0,
            };
        if ok {
            Ok(())
        } else {
            let range = match self {
                Axis::Temperature => "T > 0",
                Axis::Separation => "a >= 10 nm",
                Axis::FilmThickness => "w > 0",
                Axis::RrrSc | Axis::RrrAu => "RRR >= 0.1",
                Axis::CoreEps => "eps0 >= 1",
            };
            Err(Error::domain(format!("{} value {x} outside {range}", self.name())))
        }
    }

    /// `template` with this axis set to `x`.
    pub fn apply(&self, template: &CavityTemplate, x: f64) -> Result<CavityTemplate> {
        self.check_value(x)?;
        let mut out = *template;
        let mut touched = false;
        match self {
            Axis::Temperature => return Ok(out),
            Axis::Separation => {
                out.gap = x;
                return Ok(out);
            }
            Axis::FilmThickness => {
                for m in [&mut out.mirror1, &mut out.mirror2] {
                    if let Mirror::Film { thickness, .. } = m {
                        *thickness = x;
                        touched = true;
                    }
                }
            }
            Axis::RrrSc | Axis::RrrAu | Axis::CoreEps => {
                let axis = *self;
                let hit = std::cell::Cell::new(false);
                let f = |m: &MaterialModel| {
                    let superconducting = m.critical_temperature().is_some();
                    let target = match axis {
                        Axis::RrrAu => matches!(m, MaterialModel::Drude(_)),
                        _ => superconducting,
                    };
                    match (target, m.drude_params()) {
                        (true, Some(d)) => {
                            hit.set(true);
                            let d = if axis == Axis::CoreEps {
                                DrudeParams { eps0: x, ..d }
                            } else {
                                DrudeParams { rrr: x, ..d }
                            };
                            m.with_drude(d)
                        }
                        _ => *m,
                    }
                };
                out.mirror1 = out.mirror1.map_materials(f);
                out.mirror2 = out.mirror2.map_materials(f);
                touched = hit.get();
            }
        }
        if touched {
            Ok(out)
        } else {
            Err(Error::domain(format!("cavity has nothing to sweep along {}", self.name())))
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Axis::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Axis::ALL.iter().map(|a| a.name()).collect();
                Error::config(None, format!("unknown axis '{s}' (expected one of {})", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepMode {
    AsModeled,
    ForceNormalState,
    /// Both of the above, in two columns.
    Both,
}

impl SweepMode {
    pub fn name(&self) -> &'static str {
        match self {
            SweepMode::AsModeled => "as_modeled",
            SweepMode::ForceNormalState => "force_normal_state",
            SweepMode::Both => "both",
        }
    }

    fn delta_modes(&self) -> &'static [DeltaMode] {
        match self {
            SweepMode::AsModeled => &[DeltaMode::AsModeled],
            SweepMode::ForceNormalState => &[DeltaMode::ForceNormalState],
            SweepMode::Both => &[DeltaMode::AsModeled, DeltaMode::ForceNormalState],
        }
    }
}

impl FromStr for SweepMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as_modeled" => Ok(SweepMode::AsModeled),
            "force_normal_state" => Ok(SweepMode::ForceNormalState),
            "both" => Ok(SweepMode::Both),
            _ => Err(Error::config(
                None,
                format!("unknown mode '{s}' (expected as_modeled, force_normal_state or both)"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepOutput {
    Pressure,
    DeltaPressure,
}

impl SweepOutput {
    pub fn name(&self) -> &'static str {
        match self {
            SweepOutput::Pressure => "pressure",
            SweepOutput::DeltaPressure => "delta_pressure",
        }
    }

    fn column(&self) -> &'static str {
        match self {
            SweepOutput::Pressure => "P_Pa",
            SweepOutput::DeltaPressure => "deltaP_mPa",
        }
    }

    fn normal_column(&self) -> &'static str {
        match self {
            SweepOutput::Pressure => "P_normal_Pa",
            SweepOutput::DeltaPressure => "deltaP_normal_mPa",
        }
    }

    fn error_column(&self) -> &'static str {
        match self {
            SweepOutput::Pressure => "error_bound_Pa",
            SweepOutput::DeltaPressure => "error_bound_mPa",
        }
    }

    /// Multiplier from Pa to the column unit.
    fn scale(&self) -> f64 {
        match self {
            SweepOutput::Pressure => 1.0,
            SweepOutput::DeltaPressure => 1e3,
        }
    }
}

impl FromStr for SweepOutput {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pressure" => Ok(SweepOutput::Pressure),
            "delta_pressure" => Ok(SweepOutput::DeltaPressure),
            _ => Err(Error::config(
                None,
                format!("unknown output '{s}' (expected pressure or delta_pressure)"),
            )),
        }
    }
}

/// A temperature given either absolutely or relative to the cavity's Tc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Temperature {
    Kelvin(f64),
    OverTc(f64),
}

impl Temperature {
    pub fn resolve(&self, template: &CavityTemplate) -> Result<f64> {
        let t = match *self {
            Temperature::Kelvin(t) => t,
            Temperature::OverTc(f) => {
                let tc = template.critical_temperature().ok_or_else(|| {
                    Error::domain("T/Tc given but the cavity contains no superconductor")
                })?;
                f * tc
            }
        };
        if t > 0.0 && t.is_finite() {
            Ok(t)
        } else {
            Err(Error::domain(format!("temperature must be positive, got {t} K")))
        }
    }
}

impl fmt::Display for Temperature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Temperature::Kelvin(t) => write!(f, "{t} K"),
            Temperature::OverTc(r) => write!(f, "{r} Tc"),
        }
    }
}

/// One labelled curve of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub base: CavityTemplate,
}

/// Declarative parameter sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub name: String,
    pub series: Vec<Series>,
    pub axis: Axis,
    pub points: Vec<f64>,
    /// Fixed temperature for axes other than `Temperature`.
    pub temperature: Option<Temperature>,
    /// Reference temperature for ΔP; defaults to the highest Tc.
    pub t_ref: Option<f64>,
    pub mode: SweepMode,
    pub output: SweepOutput,
    pub options: PressureOptions,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.series.is_empty() {
            return Err(Error::domain("sweep has no series"));
        }
        if self.points.is_empty() {
            return Err(Error::domain("sweep has no points"));
        }
        let increasing = self.points.windows(2).all(|w| w[1] > w[0]);
        let decreasing = self.points.windows(2).all(|w| w[1] < w[0]);
        if !(increasing || decreasing) {
            return Err(Error::domain("sweep points must be strictly monotone"));
        }
        for s in &self.series {
            s.base.mirror1.validate()?;
            s.base.mirror2.validate()?;
            for &x in &self.points {
                let c = self.axis.apply(&s.base, x)?;
                if !(c.gap >= 10.0) {
                    return Err(Error::domain(format!("gap {} nm below 10 nm", c.gap)));
                }
                if self.axis == Axis::Temperature {
                    if let Some(tc) = c.critical_temperature() {
                        if x > tc {
                            return Err(Error::domain(format!("T = {x} K above Tc = {tc} K")));
                        }
                    }
                } else if self.temperature.is_none() {
                    return Err(Error::domain(format!("a {} sweep needs a fixed temperature", self.axis)));
                }
            }
        }
        if self.output == SweepOutput::DeltaPressure {
            for s in &self.series {
                resolve_reference(&s.base, self.t_ref)?;
            }
        }
        Ok(())
    }
}

/// Result at one sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub series: String,
    pub x: f64,
    /// P or ΔP in Pa for the primary mode (as-modeled unless only the
    /// normal state was requested).
    pub value: Option<f64>,
    /// Normal-state value in Pa when the mode is `Both`.
    pub normal: Option<f64>,
    /// Combined error bound in Pa.
    pub error_bound: f64,
    pub warning: Option<String>,
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub name: String,
    pub axis: Axis,
    pub mode: SweepMode,
    pub output: SweepOutput,
    /// Parameter echo, one `key=value` per entry.
    pub params: Vec<(String, String)>,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone)]
struct PointValue {
    value: f64,
    error: f64,
    warning: Option<String>,
}

fn evaluate_point(spec: &SweepSpec, series: &Series, x: f64, refs: &[Option<PressureResult>], mode: usize) -> Result<PointValue> {
    let dmode = spec.mode.delta_modes()[mode];
    let cavity = effective_template(&spec.axis.apply(&series.base, x)?, dmode);
    let t = match spec.axis {
        Axis::Temperature => x,
        _ => spec
            .temperature
            .ok_or_else(|| Error::domain("no fixed temperature"))?
            .resolve(&series.base)?,
    };
    match spec.output {
        SweepOutput::Pressure => {
            let p = pressure_with(&cavity.at(t), &spec.options)?;
            Ok(PointValue {
                value: p.pressure_pa,
                error: p.error_bound_pa(),
                warning: None,
            })
        }
        SweepOutput::DeltaPressure => {
            let t_ref = resolve_reference(&series.base, spec.t_ref)?;
            if t > t_ref {
                return Err(Error::domain(format!("T = {t} K above T_ref = {t_ref} K")));
            }
            let at_ref = match refs[mode] {
                Some(r) => r,
                None => pressure_with(&cavity.at(t_ref), &spec.options)?,
            };
            let at_t = if t == t_ref {
                at_ref
            } else {
                pressure_with(&cavity.at(t), &spec.options)?
            };
            let d = combine_delta(at_t, at_ref);
            Ok(PointValue {
                value: d.delta_pa,
                error: d.error_bound_pa(),
                warning: d.warning,
            })
        }
    }
}

/// Runs every point of `spec`. Per-point failures are recorded in their
/// rows; the sweep fails only when no point succeeds.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    let n_modes = spec.mode.delta_modes().len();
    // On a temperature axis the reference pressure is shared by all points.
    let refs: Vec<Vec<Option<PressureResult>>> = spec
        .series
        .par_iter()
        .map(|s| {
            (0..n_modes)
                .map(|m| {
                    if spec.axis != Axis::Temperature || spec.output != SweepOutput::DeltaPressure {
                        return None;
                    }
                    let t_ref = resolve_reference(&s.base, spec.t_ref).ok()?;
                    let cavity = effective_template(&s.base, spec.mode.delta_modes()[m]);
                    pressure_with(&cavity.at(t_ref), &spec.options).ok()
                })
                .collect()
        })
        .collect();

    let jobs: Vec<(usize, f64)> = (0..spec.series.len())
        .flat_map(|i| spec.points.iter().map(move |&x| (i, x)))
        .collect();
    let rows: Vec<SweepRow> = jobs
        .par_iter()
        .map(|&(i, x)| {
            let series = &spec.series[i];
            let results: Vec<Result<PointValue>> =
                (0..n_modes).map(|m| evaluate_point(spec, series, x, &refs[i], m)).collect();
            let failure = results
                .iter()
                .filter_map(|r| r.as_ref().err())
                .map(|e| e.to_string())
                .next();
            let ok: Vec<Option<&PointValue>> = results.iter().map(|r| r.as_ref().ok()).collect();
            let warning = ok.iter().flatten().find_map(|v| v.warning.clone());
            SweepRow {
                series: series.label.clone(),
                x,
                value: ok[0].map(|v| v.value),
                normal: ok.get(1).copied().flatten().map(|v| v.value),
                error_bound: ok.iter().flatten().map(|v| v.error).fold(0.0, f64::max),
                warning,
                failure,
            }
        })
        .collect();
    if rows.iter().all(|r| r.value.is_none() && r.normal.is_none()) {
        let first = rows.iter().find_map(|r| r.failure.clone()).unwrap_or_default();
        return Err(Error::Numerical {
            what: format!("every point of sweep '{}' failed (first: {first})", spec.name),
            estimate: f64::NAN,
            error_bound: f64::NAN,
        });
    }
    Ok(SweepTable {
        name: spec.name.clone(),
        axis: spec.axis,
        mode: spec.mode,
        output: spec.output,
        params: describe(spec),
        rows,
    })
}

fn describe_mirror(m: &Mirror) -> String {
    match m {
        Mirror::HalfSpace(model) => model.to_string(),
        Mirror::Film {
            film,
            thickness,
            substrate,
        } => format!("film({film}; w={thickness} nm; substrate={substrate})"),
    }
}

fn describe(spec: &SweepSpec) -> Vec<(String, String)> {
    let mut p = vec![
        ("axis".to_string(), spec.axis.name().to_string()),
        ("mode".to_string(), spec.mode.name().to_string()),
        ("output".to_string(), spec.output.name().to_string()),
    ];
    if let Some(t) = spec.temperature {
        p.push(("T".into(), t.to_string()));
    }
    if spec.output == SweepOutput::DeltaPressure {
        let r = spec.t_ref.map_or_else(|| "Tc".to_string(), |t| format!("{t} K"));
        p.push(("T_ref".into(), r));
    }
    p.push(("quad_tol_rel".into(), format!("{:e}", spec.options.quad_tol_rel)));
    p.push(("series_cutoff".into(), format!("{:e}", spec.options.series.cutoff_ratio)));
    p.push(("series_tol_Pa".into(), format!("{:e}", spec.options.series.tol_abs)));
    for s in &spec.series {
        p.push((
            format!("series[{}]", s.label),
            format!(
                "mirror1={} | mirror2={} | a={} nm",
                describe_mirror(&s.base.mirror1),
                describe_mirror(&s.base.mirror2),
                s.base.gap
            ),
        ));
    }
    p
}

fn csv_field(s: &str) -> String {
    s.replace([',', '\n', '\r'], ";")
}

fn num(v: Option<f64>, scale: f64) -> String {
    v.map_or_else(String::new, |v| format!("{:e}", v * scale))
}

impl SweepTable {
    pub fn write_csv(&self, mut w: impl Write) -> io::Result<()> {
        writeln!(w, "# supercasimir v{} scenario={}", env!("CARGO_PKG_VERSION"), self.name)?;
        let echo: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(w, "# {}", echo.join("; "))?;
        let out = self.output;
        let mut header = vec!["series", self.axis.column(), out.column()];
        if self.mode == SweepMode::Both {
            header.push(out.normal_column());
        }
        header.push(out.error_column());
        header.push("status");
        writeln!(w, "{}", header.join(","))?;
        let scale = out.scale();
        for r in &self.rows {
            let mut fields = vec![csv_field(&r.series), format!("{:e}", r.x), num(r.value, scale)];
            if self.mode == SweepMode::Both {
                fields.push(num(r.normal, scale));
            }
            fields.push(format!("{:e}", r.error_bound * scale));
            let status = match (&r.failure, &r.warning) {
                (Some(f), _) => format!("error: {}", csv_field(f)),
                (None, Some(wn)) => format!("warning: {}", csv_field(wn)),
                (None, None) => "ok".to_string(),
            };
            fields.push(status);
            writeln!(w, "{}", fields.join(","))?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV is UTF-8")
    }

    /// Rows of one series, in axis order.
    pub fn series(&self, label: &str) -> Vec<&SweepRow> {
        self.rows.iter().filter(|r| r.series == label).collect()
    }
}
