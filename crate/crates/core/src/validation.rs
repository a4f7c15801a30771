//! Self-contained validation suite behind the `validate` command: physical
//! reference values and consistency checks, each reported as pass/fail.

use std::f64::consts::PI;
use std::fmt;

use crate::constants::CODATA;
use crate::error::Result;
use crate::lifshitz::{delta_pressure, pressure, CavityConfig, CavityTemplate, DeltaMode, Mirror};
use crate::materials::{
    dirty_limit_ratio, g_function, permittivity, BcsParams, DrudeParams, GOptions, MaterialModel,
};
use crate::scenarios::{builtin_scenario, run_sweep, MaterialCatalog, Scenario, SweepMode, SweepSpec, SweepTable};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub detail: String,
    pub passed: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag}  {:<34} {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn summary(&self) -> String {
        let passed = self.checks.iter().filter(|c| c.passed).count();
        format!("{passed}/{} checks passed", self.checks.len())
    }
}

struct Suite<'a> {
    report: Report,
    progress: &'a mut dyn FnMut(&str),
}

impl Suite<'_> {
    fn record(&mut self, name: &str, result: Result<(bool, String)>) {
        let (passed, detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
        let c = Check {
            name: name.to_string(),
            detail,
            passed,
        };
        (self.progress)(&c.to_string());
        self.report.checks.push(c);
    }
}

fn within(value: f64, target: f64, rel: f64) -> (bool, String) {
    let dev = value / target - 1.0;
    (dev.abs() <= rel, format!("{value:.4} vs {target} ({:+.1}%, allowed {:.0}%)", 100.0 * dev, 100.0 * rel))
}

fn mpa(template: &CavityTemplate, t: f64) -> Result<f64> {
    Ok(delta_pressure(template, t, None, DeltaMode::AsModeled)?.delta_pa * 1e3)
}

fn sweep_of(name: &str, f: impl FnOnce(SweepSpec) -> SweepSpec) -> Result<SweepTable> {
    match builtin_scenario(name)? {
        Scenario::Sweep(s) => run_sweep(&f(s)),
        Scenario::Response(_) => unreachable!("{name} is a sweep"),
    }
}

fn max_abs(values: impl Iterator<Item = Option<f64>>) -> f64 {
    values.flatten().map(f64::abs).fold(0.0, f64::max) * 1e3
}

/// Runs every check, reporting each line through `progress` as it finishes.
pub fn run_all(progress: &mut dyn FnMut(&str)) -> Report {
    let mut s = Suite {
        report: Report::default(),
        progress,
    };
    let cat = MaterialCatalog::builtin();
    let get = |n: &str| cat.get(n).expect("shipped material");
    let (au, al, nbtin, sin) = (get("Au"), get("Al"), get("NbTiN"), get("SiN"));
    let half = Mirror::HalfSpace;
    let cav = |m1, m2, gap| CavityTemplate {
        mirror1: m1,
        mirror2: m2,
        gap,
    };
    let nb_params = match nbtin {
        MaterialModel::Bcs(b) => b,
        _ => unreachable!(),
    };
    let al_params = match al {
        MaterialModel::Bcs(b) => b,
        _ => unreachable!(),
    };
    let au_nb = cav(half(au), half(nbtin), 100.0);

    s.record("ideal mirrors, a=100 nm", (|| {
        let c = cav(half(MaterialModel::PerfectConductor), half(MaterialModel::PerfectConductor), 100.0);
        let p = pressure(&c.at(1.0))?.pressure_pa;
        let hbar_c = CODATA.hbar_c_ev_nm * 1e-9 * CODATA.joule_per_ev;
        Ok(within(p, -PI * PI * hbar_c / (240.0 * 1e-28), 0.005))
    })());

    s.record("Al normal state |P| (Pa)", (|| {
        let d = MaterialModel::Drude(al_params.drude);
        let p = pressure(&cav(half(d), half(d), 100.0).at(1.2))?.pressure_pa;
        Ok(within(p.abs(), 6.8, 0.05))
    })());

    let fig3 = sweep_of("fig3", |s| s);
    s.record("Al-Al |deltaP| < 0.05 mPa", fig3.as_ref().map_err(Clone::clone).map(|t| {
        let m = max_abs(t.rows.iter().map(|r| r.value));
        let below = t.rows.iter().all(|r| matches!((r.value, r.normal), (Some(a), Some(n)) if a <= n));
        (m < 0.05 && below, format!("max {m:.4} mPa; as-modeled <= normal state: {below}"))
    }));

    let film = |w| Mirror::Film {
        film: al,
        thickness: w,
        substrate: sin,
    };
    for (w, target, tol) in [(18.0, -0.023, 0.25), (250.0, -0.041, 0.15)] {
        s.record(&format!("Al film w={w} nm on SiN (mPa)"), (|| {
            Ok(within(mpa(&cav(film(w), film(w), 100.0), 0.5 * al_params.tc)?, target, tol))
        })());
    }

    s.record("NbTiN-NbTiN / Al-Al max ratio", (|| {
        let nb = sweep_of("fig5", |mut s| {
            s.series.truncate(1);
            s.mode = SweepMode::AsModeled;
            s
        })?;
        let al_max = max_abs(fig3.as_ref().map_err(Clone::clone)?.rows.iter().map(|r| r.value));
        let nb_max = max_abs(nb.rows.iter().map(|r| r.value));
        Ok(within(nb_max / al_max, 5.0, 0.2))
    })());

    s.record("Au-NbTiN max |deltaP| (mPa)", (|| {
        let t = sweep_of("fig6", |mut s| {
            s.series.truncate(1);
            s.mode = SweepMode::AsModeled;
            s
        })?;
        Ok(within(max_abs(t.rows.iter().map(|r| r.value)), 0.42, 0.15))
    })());

    let half_tc = 0.5 * nb_params.tc;
    let d05 = delta_pressure(&au_nb, half_tc, None, DeltaMode::AsModeled);
    s.record("Au-NbTiN deltaP(0.5 Tc) (mPa)", d05.clone().map(|d| within(d.delta_pa * 1e3, -0.36, 0.15)));
    s.record("Au-NbTiN |deltaP|/|P(Tc)|", d05.map(|d| {
        let frac = d.delta_pa.abs() / d.at_ref.pressure_pa.abs();
        (frac / 8e-5 <= 1.5 && frac / 8e-5 >= 1.0 / 1.5, format!("{frac:.3e} vs 8e-5 (factor 1.5)"))
    }));

    s.record("Au-NbTiN a=60 nm (mPa)", (|| Ok(within(mpa(&cav(half(au), half(nbtin), 60.0), half_tc)?, -0.77, 0.15)))());
    s.record("Au(RRR=3)-NbTiN a=60 nm (mPa)", (|| {
        let au3 = au.with_drude(DrudeParams { rrr: 3.0, ..au.drude_params().unwrap() });
        Ok(within(mpa(&cav(half(au3), half(nbtin), 60.0), half_tc)?, -0.98, 0.15))
    })());

    s.record("eps0 = 1 vs 10 change < 5%", (|| {
        let nb10 = nbtin.with_drude(DrudeParams { eps0: 10.0, ..nb_params.drude });
        let a = mpa(&au_nb, half_tc)?;
        let b = mpa(&cav(half(au), half(nb10), 100.0), half_tc)?;
        let change = (b / a - 1.0).abs();
        Ok((change < 0.05, format!("{a:.4} vs {b:.4} mPa ({:.2}%)", 100.0 * change)))
    })());

    let t01 = 0.1 * nb_params.tc;
    let bcs = mpa(&au_nb, t01);
    let tf = mpa(&cav(half(au), half(MaterialModel::TwoFluid(nb_params)), 100.0), t01);
    s.record("two-fluid deltaP(0.1 Tc) (mPa)", tf.clone().map(|v| within(v, -265.0, 0.15)));
    s.record("two-fluid / BCS ratio > 600", (|| {
        let r = tf.clone()? / bcs.clone()?;
        Ok((r > 600.0, format!("{r:.1}")))
    })());

    // quoted at the room-temperature relaxation energies
    let room = |p: BcsParams| BcsParams { drude: DrudeParams { rrr: 1.0, ..p.drude }, ..p };
    s.record("dirty-limit ratio Al", Ok(within(dirty_limit_ratio(&room(al_params)), 5.7e-3, 0.02)));
    s.record("dirty-limit ratio NbTiN", Ok(within(dirty_limit_ratio(&room(nb_params)), 1.4e-2, 0.02)));

    s.record("g positive, zero at Tc", (|| {
        let o = GOptions::default();
        let two_gap = 2.0 * nb_params.gap_profile().zero_temperature();
        let mut ok = true;
        for r in [0.1, 0.5, 0.9] {
            for x in [0.0, 0.1, 1.0, 10.0] {
                ok &= g_function(x * two_gap, r * nb_params.tc, &nb_params, &o)? > 0.0;
            }
        }
        ok &= g_function(two_gap, nb_params.tc, &nb_params, &o)? == 0.0;
        Ok((ok, "NbTiN, 12 points".to_string()))
    })());

    s.record("eps two-fluid >= BCS >= Drude", (|| {
        let mut ok = true;
        for p in [al_params, nb_params] {
            for r in [0.1, 0.5, 0.9] {
                for xi in [1e-5, 1e-3, 1e-1] {
                    let t = r * p.tc;
                    let b = permittivity(&MaterialModel::Bcs(p), xi, t)?;
                    let d = permittivity(&MaterialModel::Drude(p.drude), xi, t)?;
                    let f = permittivity(&MaterialModel::TwoFluid(p), xi, t)?;
                    ok &= f >= b && b >= d;
                }
            }
        }
        Ok((ok, "Al and NbTiN, 18 points".to_string()))
    })());

    s.record("mirror-swap symmetry", (|| {
        let a = pressure(&au_nb.at(half_tc))?.pressure_pa;
        let b = pressure(&CavityConfig {
            mirror1: au_nb.mirror2,
            mirror2: au_nb.mirror1,
            gap: 100.0,
            temperature: half_tc,
        })?
        .pressure_pa;
        let rel = (a / b - 1.0).abs();
        Ok((rel < 1e-12, format!("relative difference {rel:.1e}")))
    })());

    s.report
}
