//! Reference values for the pressure change, computed through the public
//! API and compared with pinned targets.

use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

use supercasimir::constants::CODATA;
use supercasimir::lifshitz::{
    delta_pressure, pressure, CavityConfig, CavityTemplate, DeltaMode, DeltaResult, Mirror,
};
use supercasimir::materials::{dirty_limit_ratio, BcsParams, DrudeParams, MaterialModel};
use supercasimir::scenarios::{builtin_scenario, run_sweep, MaterialCatalog, Scenario, SweepMode, SweepTable};

use crate::Outcome;

/// (label, |ΔP|, error bound) of every ΔP computed here, in Pa.
static ERROR_LOG: Mutex<Vec<(String, f64, f64)>> = Mutex::new(Vec::new());

struct Materials {
    au: MaterialModel,
    al: BcsParams,
    nbtin: BcsParams,
    sin: MaterialModel,
}

fn materials() -> Materials {
    let cat = MaterialCatalog::builtin();
    let bcs = |n: &str| match cat.get(n).unwrap() {
        MaterialModel::Bcs(b) => b,
        other => panic!("{n} is {other}"),
    };
    Materials {
        au: cat.get("Au").unwrap(),
        al: bcs("Al"),
        nbtin: bcs("NbTiN"),
        sin: cat.get("SiN").unwrap(),
    }
}

fn half(m: MaterialModel) -> Mirror {
    Mirror::HalfSpace(m)
}

fn cavity(mirror1: Mirror, mirror2: Mirror, gap: f64) -> CavityTemplate {
    CavityTemplate { mirror1, mirror2, gap }
}

fn delta(label: &str, c: &CavityTemplate, t: f64) -> DeltaResult {
    let d = delta_pressure(c, t, None, DeltaMode::AsModeled).unwrap();
    ERROR_LOG.lock().unwrap().push((label.to_string(), d.delta_pa.abs(), d.error_bound_pa()));
    d
}

fn mpa(label: &str, c: &CavityTemplate, t: f64) -> f64 {
    delta(label, c, t).delta_pa * 1e3
}

/// |value/target - 1| <= rel.
fn within(what: &str, value: f64, target: f64, rel: f64) -> Outcome {
    let dev = value / target - 1.0;
    Outcome::new(
        dev.abs() <= rel,
        format!("{what} {value:.4} vs {target} ({:+.1}%, allowed ±{}%)", 100.0 * dev, 100.0 * rel),
    )
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let o = f();
    let took = start.elapsed();
    let ok = took <= limit;
    Outcome::new(
        o.passed && ok,
        format!("{}; runtime {:.1} s (limit {} s)", o.detail, took.as_secs_f64(), limit.as_secs()),
    )
}

fn sweep(name: &str, f: impl FnOnce(&mut supercasimir::scenarios::SweepSpec)) -> SweepTable {
    let Scenario::Sweep(mut s) = builtin_scenario(name).unwrap() else {
        panic!("{name} is not a sweep")
    };
    f(&mut s);
    let t = run_sweep(&s).unwrap();
    let mut log = ERROR_LOG.lock().unwrap();
    for r in &t.rows {
        if let Some(v) = r.value {
            log.push((format!("{name} x={}", r.x), v.abs(), r.error_bound));
        }
    }
    t
}

fn max_abs_mpa(t: &SweepTable, series: &str) -> f64 {
    t.series(series).iter().filter_map(|r| r.value).map(f64::abs).fold(0.0, f64::max) * 1e3
}

/// The Al-Al temperature sweep, shared by two criteria.
fn al_sweep() -> &'static (SweepTable, Duration) {
    static CELL: OnceLock<(SweepTable, Duration)> = OnceLock::new();
    CELL.get_or_init(|| {
        let start = Instant::now();
        let t = sweep("fig3", |_| {});
        (t, start.elapsed())
    })
}

pub fn ideal_mirrors() -> Outcome {
    timed(Duration::from_secs(5), || {
        let p = MaterialModel::PerfectConductor;
        let c = CavityConfig { mirror1: half(p), mirror2: half(p), gap: 100.0, temperature: 1.0 };
        let got = pressure(&c).unwrap().pressure_pa;
        let a: f64 = 100e-9;
        let hbar_c = CODATA.hbar_c_ev_nm * 1e-9 * CODATA.joule_per_ev;
        within("P/Pa", got, -PI * PI * hbar_c / (240.0 * a.powi(4)), 0.005)
    })
}

pub fn al_normal_state() -> Outcome {
    timed(Duration::from_secs(60), || {
        let d = MaterialModel::Drude(materials().al.drude);
        let c = CavityConfig { mirror1: half(d), mirror2: half(d), gap: 100.0, temperature: 1.2 };
        within("|P|/Pa", pressure(&c).unwrap().pressure_pa.abs(), 6.8, 0.05)
    })
}

pub fn al_bound() -> Outcome {
    let (t, took) = al_sweep();
    let rows = t.series("Al-Al");
    let tc = materials().al.tc;
    let below_tc: Vec<_> = rows.iter().filter(|r| r.x < tc).collect();
    let max = below_tc.iter().filter_map(|r| r.value).map(f64::abs).fold(0.0, f64::max) * 1e3;
    let ordered = below_tc.iter().all(|r| matches!((r.value, r.normal), (Some(a), Some(n)) if a <= n));
    let complete = below_tc.iter().all(|r| r.failure.is_none());
    let fast = took.as_secs() <= 15 * 60;
    Outcome::new(
        max < 0.05 && ordered && complete && fast,
        format!(
            "max |dP| {max:.4} mPa over {} temperatures (limit 0.05); as-modeled <= normal state: {ordered}; runtime {:.0} s (limit 900 s)",
            below_tc.len(),
            took.as_secs_f64()
        ),
    )
}

fn al_film(w: f64) -> CavityTemplate {
    let m = materials();
    let f = Mirror::Film { film: MaterialModel::Bcs(m.al), thickness: w, substrate: m.sin };
    cavity(f, f, 100.0)
}

pub fn al_thin_film() -> Outcome {
    let tc = materials().al.tc;
    within("dP(w=18 nm)/mPa", mpa("Al film 18", &al_film(18.0), 0.5 * tc), -0.023, 0.25)
}

pub fn al_thick_film() -> Outcome {
    let tc = materials().al.tc;
    let mut worst = Outcome::new(true, String::new());
    let mut details = Vec::new();
    for w in [250.0, 500.0, 1000.0] {
        let o = within(&format!("w={w}"), mpa("Al film", &al_film(w), 0.5 * tc), -0.041, 0.15);
        worst.passed &= o.passed;
        details.push(o.detail);
    }
    worst.detail = format!("dP/mPa: {}", details.join("; "));
    worst
}

pub fn nbtin_al_ratio() -> Outcome {
    let nb = sweep("fig5", |s| {
        s.series.truncate(1);
        s.mode = SweepMode::AsModeled;
    });
    let al_max = max_abs_mpa(&al_sweep().0, "Al-Al");
    let nb_max = max_abs_mpa(&nb, "eps0=1");
    let mut o = within("ratio", nb_max / al_max, 5.0, 0.2);
    o.detail = format!("{} (max |dP| {nb_max:.4} vs {al_max:.4} mPa)", o.detail);
    o
}

fn au_nbtin(gap: f64) -> CavityTemplate {
    let m = materials();
    cavity(half(m.au), half(MaterialModel::Bcs(m.nbtin)), gap)
}

pub fn au_nbtin_maximum() -> Outcome {
    let t = sweep("fig6", |s| {
        s.series.truncate(1);
        s.mode = SweepMode::AsModeled;
    });
    within("max |dP|/mPa", max_abs_mpa(&t, "eps0=1"), 0.42, 0.15)
}

pub fn au_nbtin_half_tc() -> Outcome {
    let tc = materials().nbtin.tc;
    within("dP/mPa", mpa("Au-NbTiN", &au_nbtin(100.0), 0.5 * tc), -0.36, 0.15)
}

pub fn au_nbtin_fraction() -> Outcome {
    let tc = materials().nbtin.tc;
    let d = delta("Au-NbTiN", &au_nbtin(100.0), 0.5 * tc);
    let frac = d.delta_pa.abs() / d.at_ref.pressure_pa.abs();
    let factor = frac / 8e-5;
    Outcome::new(
        (1.0 / 1.5..=1.5).contains(&factor),
        format!("|dP|/|P(Tc)| = {frac:.3e} vs 8e-5 (factor {factor:.2}, allowed 1.5)"),
    )
}

pub fn au_nbtin_60nm() -> Outcome {
    let tc = materials().nbtin.tc;
    within("dP(a=60 nm)/mPa", mpa("Au-NbTiN 60", &au_nbtin(60.0), 0.5 * tc), -0.77, 0.15)
}

pub fn au_rrr3_60nm() -> Outcome {
    let m = materials();
    let d = m.au.drude_params().unwrap();
    let au3 = m.au.with_drude(DrudeParams { rrr: 3.0, ..d });
    let c = cavity(half(au3), half(MaterialModel::Bcs(m.nbtin)), 60.0);
    within("dP/mPa", mpa("Au3-NbTiN 60", &c, 0.5 * m.nbtin.tc), -0.98, 0.15)
}

pub fn core_electron_insensitivity() -> Outcome {
    let m = materials();
    let nb10 = BcsParams { drude: DrudeParams { eps0: 10.0, ..m.nbtin.drude }, ..m.nbtin };
    let t = 0.5 * m.nbtin.tc;
    let a = mpa("Au-NbTiN eps0=1", &au_nbtin(100.0), t);
    let b = mpa("Au-NbTiN eps0=10", &cavity(half(m.au), half(MaterialModel::Bcs(nb10)), 100.0), t);
    let change = (b / a - 1.0).abs();
    Outcome::new(change < 0.05, format!("{a:.4} vs {b:.4} mPa, change {:.2}% (limit 5%)", 100.0 * change))
}

fn twofluid_pair() -> &'static (f64, f64) {
    static CELL: OnceLock<(f64, f64)> = OnceLock::new();
    CELL.get_or_init(|| {
        let m = materials();
        let t = 0.1 * m.nbtin.tc;
        let tf = cavity(half(m.au), half(MaterialModel::TwoFluid(m.nbtin)), 100.0);
        (mpa("two-fluid", &tf, t), mpa("BCS 0.1Tc", &au_nbtin(100.0), t))
    })
}

pub fn twofluid_magnitude() -> Outcome {
    within("two-fluid dP(0.1 Tc)/mPa", twofluid_pair().0, -265.0, 0.15)
}

pub fn twofluid_ratio() -> Outcome {
    let (tf, bcs) = *twofluid_pair();
    let r = tf / bcs;
    Outcome::new(r > 600.0, format!("{tf:.2} / {bcs:.4} = {r:.0} (limit > 600)"))
}

/// Evaluated at the room-temperature relaxation energies (ħγ = 0.1 eV for
/// Al, 0.465 eV for NbTiN); the shipped NbTiN RRR of 1.12 would give 1.56e-2.
pub fn dirty_limit() -> Outcome {
    let m = materials();
    let room = |p: BcsParams| BcsParams { drude: DrudeParams { rrr: 1.0, ..p.drude }, ..p };
    let a = within("Al", dirty_limit_ratio(&room(m.al)), 5.7e-3, 0.02);
    let n = within("NbTiN", dirty_limit_ratio(&room(m.nbtin)), 1.4e-2, 0.02);
    Outcome::new(a.passed && n.passed, format!("{}; {}", a.detail, n.detail))
}

/// Runs last: every ΔP computed above must carry an error bound below
/// 10⁻³·|ΔP|.
pub fn error_accounting() -> Outcome {
    let log = ERROR_LOG.lock().unwrap();
    let nonzero: Vec<_> = log.iter().filter(|(_, d, _)| *d > 0.0).collect();
    let worst = nonzero
        .iter()
        .map(|(l, d, e)| (l, e / d))
        .max_by(|a, b| a.1.total_cmp(&b.1));
    match worst {
        None => Outcome::new(false, "no pressure changes were recorded"),
        Some((label, r)) => Outcome::new(
            r < 1e-3,
            format!("{} points; worst bound/|dP| = {r:.1e} ({label}) (limit 1e-3)", nonzero.len()),
        ),
    }
}
