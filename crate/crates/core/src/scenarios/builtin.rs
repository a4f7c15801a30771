use super::catalog::MaterialCatalog;
use super::response::{ResponseQuantity, ResponseSpec};
use super::sweep::{Axis, Series, SweepMode, SweepOutput, SweepSpec, Temperature};
use crate::error::{Error, Result};
use crate::lifshitz::{CavityTemplate, Mirror, PressureOptions};
use crate::materials::{BcsParams, DrudeParams, GOptions, MaterialModel};

pub const BUILTIN_NAMES: [&str; 11] = [
    "fig1",
    "fig2",
    "fig3",
    "fig4",
    "fig5",
    "fig6",
    "fig7",
    "fig8",
    "fig9",
    "fig10",
    "twofluid_comparison",
];

/// Points per builtin sweep axis.
pub const GRID_POINTS: usize = 25;

/// A named scenario: a pressure sweep or a response-curve table.
#[derive(Debug, Clone, PartialEq)]
pub enum Scenario {
    Sweep(SweepSpec),
    Response(ResponseSpec),
}

impl Scenario {
    pub fn name(&self) -> &str {
        match self {
            Scenario::Sweep(s) => &s.name,
            Scenario::Response(r) => &r.name,
        }
    }
}

pub fn linspace(from: f64, to: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![from],
        _ => (0..n)
            .map(|i| if i == n - 1 { to } else { from + (to - from) * i as f64 / (n - 1) as f64 })
            .collect(),
    }
}

pub fn logspace(from: f64, to: f64, n: usize) -> Vec<f64> {
    linspace(from.ln(), to.ln(), n)
        .into_iter()
        .enumerate()
        .map(|(i, l)| match i {
            0 => from,
            _ if i == n - 1 => to,
            _ => l.exp(),
        })
        .collect()
}

/// `grid` with `extra` merged in, sorted and deduplicated.
fn merged(mut grid: Vec<f64>, extra: &[f64]) -> Vec<f64> {
    grid.extend_from_slice(extra);
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

struct Materials {
    au: MaterialModel,
    al: MaterialModel,
    nbtin: BcsParams,
    sin: MaterialModel,
}

impl Materials {
    fn load() -> Self {
        let cat = MaterialCatalog::builtin();
        let get = |n: &str| cat.get(n).expect("shipped database entry");
        let nbtin = match get("NbTiN") {
            MaterialModel::Bcs(b) => b,
            other => unreachable!("NbTiN is {other}"),
        };
        Self {
            au: get("Au"),
            al: get("Al"),
            nbtin,
            sin: get("SiN"),
        }
    }

    fn nbtin_with(&self, f: impl Fn(DrudeParams) -> DrudeParams) -> MaterialModel {
        MaterialModel::Bcs(BcsParams {
            drude: f(self.nbtin.drude),
            ..self.nbtin
        })
    }
}

fn half(m: MaterialModel) -> Mirror {
    Mirror::HalfSpace(m)
}

fn cavity(m1: Mirror, m2: Mirror, gap: f64) -> CavityTemplate {
    CavityTemplate {
        mirror1: m1,
        mirror2: m2,
        gap,
    }
}

fn series(label: impl Into<String>, base: CavityTemplate) -> Series {
    Series {
        label: label.into(),
        base,
    }
}

fn temperature_grid(tc: f64) -> Vec<f64> {
    linspace(0.05 * tc, tc, GRID_POINTS)
}

fn sweep(name: &str, series: Vec<Series>, axis: Axis, points: Vec<f64>) -> SweepSpec {
    SweepSpec {
        name: name.to_string(),
        series,
        axis,
        points,
        temperature: (axis != Axis::Temperature).then_some(Temperature::OverTc(0.5)),
        t_ref: None,
        mode: SweepMode::AsModeled,
        output: SweepOutput::DeltaPressure,
        options: PressureOptions::default(),
    }
}

fn response(name: &str, material: BcsParams, quantity: ResponseQuantity) -> ResponseSpec {
    ResponseSpec {
        name: name.to_string(),
        material,
        quantity,
        t_over_tc: vec![0.9, 0.1],
        points: logspace(1e-2, 1e3, 51),
        g_options: GOptions::default(),
    }
}

/// The named scenario, or an error listing the valid names.
pub fn builtin_scenario(name: &str) -> Result<Scenario> {
    let m = Materials::load();
    let nbtin = MaterialModel::Bcs(m.nbtin);
    let tc_al = m.al.critical_temperature().unwrap_or_default();
    let tc_nb = m.nbtin.tc;
    let eps_pair = |base: &dyn Fn(MaterialModel) -> CavityTemplate| {
        [1.0, 10.0]
            .map(|e| series(format!("eps0={e}"), base(m.nbtin_with(|d| DrudeParams { eps0: e, ..d }))))
            .to_vec()
    };
    let a_pair = |base: &dyn Fn(f64) -> CavityTemplate| {
        [100.0, 60.0].map(|a| series(format!("a={a}"), base(a))).to_vec()
    };
    let s = match name {
        "fig1" => return Ok(Scenario::Response(response(name, m.nbtin, ResponseQuantity::G))),
        "fig2" => return Ok(Scenario::Response(response(name, m.nbtin, ResponseQuantity::Permittivity))),
        "fig3" => SweepSpec {
            mode: SweepMode::Both,
            ..sweep(
                name,
                vec![series("Al-Al", cavity(half(m.al), half(m.al), 100.0))],
                Axis::Temperature,
                temperature_grid(tc_al),
            )
        },
        "fig4" => {
            let film = Mirror::Film {
                film: m.al,
                thickness: 250.0,
                substrate: m.sin,
            };
            sweep(
                name,
                vec![series("Al/SiN", cavity(film, film, 100.0))],
                Axis::FilmThickness,
                merged(logspace(10.0, 1000.0, GRID_POINTS - 2), &[18.0, 250.0]),
            )
        }
        "fig5" => SweepSpec {
            mode: SweepMode::Both,
            ..sweep(
                name,
                eps_pair(&|nb| cavity(half(nb), half(nb), 100.0)),
                Axis::Temperature,
                temperature_grid(tc_nb),
            )
        },
        "fig6" => SweepSpec {
            mode: SweepMode::Both,
            ..sweep(
                name,
                eps_pair(&|nb| cavity(half(m.au), half(nb), 100.0)),
                Axis::Temperature,
                temperature_grid(tc_nb),
            )
        },
        "fig7" => sweep(
            name,
            [1.12, 5.0]
                .map(|r| {
                    let nb = m.nbtin_with(|d| DrudeParams { rrr: r, ..d });
                    series(format!("rrr_sc={r}"), cavity(half(m.au), half(nb), 100.0))
                })
                .to_vec(),
            Axis::Separation,
            linspace(50.0, 290.0, GRID_POINTS),
        ),
        "fig8" => sweep(
            name,
            a_pair(&|a| cavity(half(m.au), half(nbtin), a)),
            Axis::RrrSc,
            linspace(1.0, 13.0, GRID_POINTS),
        ),
        "fig9" => sweep(
            name,
            a_pair(&|a| cavity(half(m.au), half(nbtin), a)),
            Axis::RrrAu,
            linspace(1.0, 13.0, GRID_POINTS),
        ),
        "fig10" => sweep(
            name,
            [("free_standing", MaterialModel::Vacuum), ("substrate_eps10", MaterialModel::ConstantDielectric(10.0))]
                .map(|(label, substrate)| {
                    let film = Mirror::Film {
                        film: nbtin,
                        thickness: 250.0,
                        substrate,
                    };
                    series(label, cavity(half(m.au), film, 100.0))
                })
                .to_vec(),
            Axis::FilmThickness,
            merged(logspace(10.0, 2000.0, GRID_POINTS - 1), &[250.0]),
        ),
        "twofluid_comparison" => sweep(
            name,
            vec![
                series("bcs", cavity(half(m.au), half(nbtin), 100.0)),
                series("twofluid", cavity(half(m.au), half(MaterialModel::TwoFluid(m.nbtin)), 100.0)),
            ],
            Axis::Temperature,
            vec![0.1 * tc_nb],
        ),
        _ => {
            return Err(Error::config(
                None,
                format!("unknown scenario '{name}' (builtin scenarios: {})", BUILTIN_NAMES.join(", ")),
            ))
        }
    };
    Ok(Scenario::Sweep(s))
}
