//! Command-line front end.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::lifshitz::{
    delta_pressure_with, pressure_with, CavityTemplate, DeltaMode, Mirror, PressureOptions, PressureResult,
};
use crate::materials::MaterialModel;
use crate::scenarios::{
    builtin_scenario, run_response, run_sweep, MaterialCatalog, Scenario, ScenarioFile, SweepSpec, Temperature,
    BUILTIN_NAMES,
};
use crate::validation;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "supercasimir", version, about = "Casimir pressure across the superconducting transition")]
pub struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Casimir pressure of one cavity.
    Pressure {
        #[command(flatten)]
        cavity: CavityArgs,
        #[command(flatten)]
        tol: ToleranceArgs,
    },
    /// Pressure change P(T) - P(T_ref) across the transition.
    Delta {
        #[command(flatten)]
        cavity: CavityArgs,
        /// Reference temperature in K (defaults to the highest Tc).
        #[arg(long = "T-ref-K")]
        t_ref_k: Option<f64>,
        #[arg(long, value_enum, default_value_t = ModeArg::AsModeled)]
        mode: ModeArg,
        #[command(flatten)]
        tol: ToleranceArgs,
    },
    /// Runs a sweep scenario and writes CSV.
    Sweep {
        /// Builtin scenario name or scenario file.
        #[arg(long, alias = "builtin")]
        scenario: String,
        /// Output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        tol: ToleranceArgs,
    },
    /// Writes g(ξ) or ε(iξ) curves (fig1, fig2).
    Response {
        #[arg(long, alias = "builtin")]
        scenario: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs the built-in validation suite.
    Validate,
    /// Lists the material catalog.
    Materials,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    AsModeled,
    ForceNormalState,
    Both,
}

#[derive(Debug, Args)]
pub struct CavityArgs {
    /// Builtin scenario name or scenario file providing defaults.
    #[arg(long, alias = "builtin")]
    pub scenario: Option<String>,
    #[arg(long)]
    pub material1: Option<String>,
    #[arg(long)]
    pub material2: Option<String>,
    /// Film thickness of mirror 1 in nm (half-space if omitted).
    #[arg(long = "w1-nm")]
    pub w1_nm: Option<f64>,
    #[arg(long = "w2-nm")]
    pub w2_nm: Option<f64>,
    /// Substrate under film 1 (vacuum if omitted).
    #[arg(long, requires = "w1_nm")]
    pub substrate1: Option<String>,
    #[arg(long, requires = "w2_nm")]
    pub substrate2: Option<String>,
    #[arg(long = "a-nm")]
    pub a_nm: Option<f64>,
    #[arg(long = "T-K", conflicts_with = "t_over_tc")]
    pub t_k: Option<f64>,
    #[arg(long = "T-over-Tc")]
    pub t_over_tc: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ToleranceArgs {
    /// Relative tolerance of each k⊥ integral.
    #[arg(long)]
    pub quad_tol_rel: Option<f64>,
    /// Absolute Matsubara-tail tolerance in Pa.
    #[arg(long = "series-tol-Pa")]
    pub series_tol_pa: Option<f64>,
    /// Stop the Matsubara sum once |term/sum| falls below this.
    #[arg(long)]
    pub series_cutoff: Option<f64>,
    /// Give up after this many Matsubara terms.
    #[arg(long)]
    pub max_terms: Option<usize>,
}

impl ToleranceArgs {
    fn apply(&self, mut o: PressureOptions) -> Result<PressureOptions, Failure> {
        let positive = |v: Option<f64>, flag: &str| match v {
            Some(x) if !(x > 0.0 && x.is_finite()) => Err(Failure::usage(format!("{flag} must be positive"))),
            _ => Ok(v),
        };
        if let Some(v) = positive(self.quad_tol_rel, "--quad-tol-rel")? {
            o.quad_tol_rel = v;
        }
        if let Some(v) = positive(self.series_tol_pa, "--series-tol-Pa")? {
            o.series.tol_abs = v;
        }
        if let Some(v) = positive(self.series_cutoff, "--series-cutoff")? {
            o.series.cutoff_ratio = v;
        }
        match self.max_terms {
            Some(0) => return Err(Failure::usage("--max-terms must be positive")),
            Some(n) => o.series.max_terms = n,
            None => {}
        }
        Ok(o)
    }
}

/// An error with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(format!("I/O: {e}"))
    }
}

fn is_file(s: &str) -> bool {
    s.ends_with(".toml") || s.contains(std::path::MAIN_SEPARATOR) || Path::new(s).is_file()
}

/// A scenario named on the command line: builtin or file.
fn scenario_from(name: &str, catalog: &MaterialCatalog) -> Result<Scenario, Failure> {
    if is_file(name) {
        let f = ScenarioFile::load(name, catalog)?;
        Ok(Scenario::Sweep(f.into_sweep()?))
    } else {
        Ok(builtin_scenario(name)?)
    }
}

#[derive(Debug)]
struct Defaults {
    template: Option<CavityTemplate>,
    temperature: Option<Temperature>,
    t_ref: Option<f64>,
}

fn defaults_from(name: &str, catalog: &MaterialCatalog) -> Result<Defaults, Failure> {
    if is_file(name) {
        let f = ScenarioFile::load(name, catalog)?;
        return Ok(Defaults {
            template: Some(f.template),
            temperature: f.temperature,
            t_ref: f.t_ref,
        });
    }
    match builtin_scenario(name)? {
        Scenario::Sweep(s) => Ok(Defaults {
            template: s.series.first().map(|s| s.base),
            temperature: s.temperature,
            t_ref: s.t_ref,
        }),
        Scenario::Response(_) => Err(Failure::usage(format!("scenario '{name}' describes response curves, not a cavity"))),
    }
}

fn mirror_from(
    base: Option<Mirror>,
    material: &Option<String>,
    w: Option<f64>,
    substrate: &Option<String>,
    which: &str,
    catalog: &MaterialCatalog,
) -> Result<Mirror, Failure> {
    let model = match (material, base) {
        (Some(m), _) => catalog.get(m)?,
        (None, Some(Mirror::HalfSpace(m))) => m,
        (None, Some(Mirror::Film { film, .. })) => film,
        (None, None) => return Err(Failure::usage(format!("--{which} is required without --scenario"))),
    };
    let sub = substrate.as_deref().map(|s| catalog.get(s)).transpose()?;
    Ok(match (w, base) {
        (Some(w), Some(Mirror::Film { substrate: s0, .. })) => Mirror::Film {
            film: model,
            thickness: w,
            substrate: sub.unwrap_or(s0),
        },
        (Some(w), _) => Mirror::Film {
            film: model,
            thickness: w,
            substrate: sub.unwrap_or(MaterialModel::Vacuum),
        },
        (None, Some(Mirror::Film { thickness, substrate: s0, .. })) if material.is_none() => Mirror::Film {
            film: model,
            thickness,
            substrate: sub.unwrap_or(s0),
        },
        _ => Mirror::HalfSpace(model),
    })
}

/// Cavity and temperature from a scenario, overridden by flags.
fn resolve_cavity(args: &CavityArgs, catalog: &MaterialCatalog) -> Result<(CavityTemplate, Defaults), Failure> {
    let d = match &args.scenario {
        Some(s) => defaults_from(s, catalog)?,
        None => Defaults {
            template: None,
            temperature: None,
            t_ref: None,
        },
    };
    let base = d.template;
    let template = CavityTemplate {
        mirror1: mirror_from(base.map(|b| b.mirror1), &args.material1, args.w1_nm, &args.substrate1, "material1", catalog)?,
        mirror2: mirror_from(base.map(|b| b.mirror2), &args.material2, args.w2_nm, &args.substrate2, "material2", catalog)?,
        gap: args
            .a_nm
            .or(base.map(|b| b.gap))
            .ok_or_else(|| Failure::usage("--a-nm is required without --scenario"))?,
    };
    let temperature = match (args.t_k, args.t_over_tc) {
        (Some(t), _) => Some(Temperature::Kelvin(t)),
        (_, Some(r)) => Some(Temperature::OverTc(r)),
        _ => d.temperature,
    };
    Ok((template, Defaults { temperature, ..d }))
}

fn temperature_of(d: &Defaults, template: &CavityTemplate) -> Result<f64, Failure> {
    let t = d
        .temperature
        .ok_or_else(|| Failure::usage("a temperature is required (--T-K or --T-over-Tc)"))?;
    Ok(t.resolve(template)?)
}

fn print_pressure(out: &mut impl Write, label: &str, p: &PressureResult) -> io::Result<()> {
    writeln!(out, "{label} = {:.9e} Pa", p.pressure_pa)?;
    writeln!(
        out,
        "  error bound {:.3e} Pa (quadrature {:.3e}, truncation {:.3e}); {} Matsubara terms",
        p.error_bound_pa(),
        p.quad_error_pa,
        p.sum_diag.truncation_bound,
        p.sum_diag.terms_used
    )
}

fn open_out(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::usage(format!("cannot create {}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run_command(cli: &Cli) -> Result<i32, Failure> {
    let catalog = MaterialCatalog::from_env()?;
    let mut stdout = io::stdout().lock();
    match &cli.command {
        Command::Pressure { cavity, tol } => {
            let opts = tol.apply(PressureOptions::default())?;
            let (template, d) = resolve_cavity(cavity, &catalog)?;
            let t = temperature_of(&d, &template)?;
            let p = pressure_with(&template.at(t), &opts)?;
            writeln!(stdout, "T = {t} K, a = {} nm", template.gap)?;
            print_pressure(&mut stdout, "P", &p)?;
        }
        Command::Delta {
            cavity,
            t_ref_k,
            mode,
            tol,
        } => {
            let opts = tol.apply(PressureOptions::default())?;
            let (template, d) = resolve_cavity(cavity, &catalog)?;
            let t = temperature_of(&d, &template)?;
            let t_ref = t_ref_k.or(d.t_ref);
            let modes: &[(DeltaMode, &str)] = match mode {
                ModeArg::AsModeled => &[(DeltaMode::AsModeled, "as modeled")],
                ModeArg::ForceNormalState => &[(DeltaMode::ForceNormalState, "normal state")],
                ModeArg::Both => &[(DeltaMode::AsModeled, "as modeled"), (DeltaMode::ForceNormalState, "normal state")],
            };
            for &(m, label) in modes {
                let r = delta_pressure_with(&template, t, t_ref, m, &opts)?;
                writeln!(stdout, "[{label}] T = {t} K, a = {} nm", template.gap)?;
                writeln!(
                    stdout,
                    "deltaP = {:.9e} mPa (error bound {:.3e} mPa)",
                    r.delta_pa * 1e3,
                    r.error_bound_pa() * 1e3
                )?;
                print_pressure(&mut stdout, "P(T)", &r.at_t)?;
                print_pressure(&mut stdout, "P(T_ref)", &r.at_ref)?;
                if let Some(w) = &r.warning {
                    eprintln!("warning: {w}");
                }
            }
        }
        Command::Sweep { scenario, out, tol } => {
            let mut spec: SweepSpec = match scenario_from(scenario, &catalog)? {
                Scenario::Sweep(s) => s,
                Scenario::Response(_) => {
                    return Err(Failure::usage(format!("'{scenario}' is a response scenario; use `response`")))
                }
            };
            spec.options = tol.apply(spec.options)?;
            let table = run_sweep(&spec)?;
            let mut w = open_out(out)?;
            table.write_csv(&mut w)?;
            w.flush()?;
            let failed = table.rows.iter().filter(|r| r.failure.is_some()).count();
            if failed > 0 {
                eprintln!("warning: {failed} of {} points failed", table.rows.len());
            }
        }
        Command::Response { scenario, out } => {
            let spec = match builtin_scenario(scenario)? {
                Scenario::Response(r) => r,
                Scenario::Sweep(_) => {
                    return Err(Failure::usage(format!("'{scenario}' is a sweep scenario; use `sweep`")))
                }
            };
            let table = run_response(&spec)?;
            let mut w = open_out(out)?;
            table.write_csv(&mut w)?;
            w.flush()?;
        }
        Command::Validate => {
            let report = validation::run_all(&mut |line| {
                let _ = writeln!(io::stdout(), "{line}");
            });
            writeln!(stdout, "{}", report.summary())?;
            if !report.all_passed() {
                return Ok(EXIT_VALIDATION);
            }
        }
        Command::Materials => {
            write!(stdout, "{catalog}")?;
            writeln!(stdout, "builtin scenarios: {}", BUILTIN_NAMES.join(", "))?;
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` and runs the command; returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return EXIT_USAGE;
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure thread pool: {e}");
            return EXIT_USAGE;
        }
    }
    match run_command(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("supercasimir").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn temperature_flags_are_exclusive() {
        let r = Cli::try_parse_from(["supercasimir", "pressure", "--T-K", "1", "--T-over-Tc", "0.5"]);
        assert!(r.is_err());
    }

    #[test]
    fn flags_override_scenario() {
        let cat = MaterialCatalog::builtin();
        let Command::Delta { cavity, .. } = parse(&["delta", "--scenario", "fig6", "--a-nm", "60", "--T-over-Tc", "0.5"]).command
        else {
            panic!()
        };
        let (t, d) = resolve_cavity(&cavity, &cat).unwrap();
        assert_eq!(t.gap, 60.0);
        assert_eq!(t.mirror1, Mirror::HalfSpace(cat.get("Au").unwrap()));
        assert_eq!(temperature_of(&d, &t).unwrap(), 6.8);
    }

    #[test]
    fn film_flags() {
        let cat = MaterialCatalog::builtin();
        let Command::Pressure { cavity, .. } = parse(&[
            "pressure", "--material1", "Al", "--material2", "Al", "--w2-nm", "18", "--substrate2", "SiN", "--a-nm",
            "100", "--T-K", "0.6",
        ])
        .command
        else {
            panic!()
        };
        let (t, _) = resolve_cavity(&cavity, &cat).unwrap();
        assert!(matches!(t.mirror1, Mirror::HalfSpace(_)));
        assert!(matches!(t.mirror2, Mirror::Film { thickness, substrate: MaterialModel::ConstantDielectric(_), .. } if thickness == 18.0));
    }

    #[test]
    fn missing_inputs_are_usage_errors() {
        let cat = MaterialCatalog::builtin();
        let Command::Pressure { cavity, .. } = parse(&["pressure", "--material1", "Au", "--a-nm", "100"]).command else {
            panic!()
        };
        assert_eq!(resolve_cavity(&cavity, &cat).unwrap_err().code, EXIT_USAGE);
    }
}
