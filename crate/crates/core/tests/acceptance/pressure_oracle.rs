//! Lifshitz pressure against a brute-force evaluation: textbook Fresnel and
//! Airy coefficients, a plain Matsubara sum and composite Simpson on a fixed
//! grid in y = 2aq. Material permittivities come from the library.

use std::f64::consts::PI;

use supercasimir::constants::CODATA;
use supercasimir::lifshitz::{pressure, CavityConfig, Mirror};
use supercasimir::materials::{BcsParams, DrudeParams, GSource, MaterialModel, MaterialResponse};

use crate::Outcome;

const GRID: usize = 20_000;
const PA_PER_EV_NM3: f64 = 1.602176634e8;

struct Side {
    /// (ε, thickness) of the film, if any
    film: Option<(f64, f64)>,
    eps: f64,
    perfect: bool,
}

/// Resolved materials of a mirror: (film and thickness, bulk).
struct Resolved {
    film: Option<(MaterialResponse, f64)>,
    bulk: MaterialResponse,
}

fn resolve(mirror: &Mirror, t: f64) -> Resolved {
    let r = |m: &MaterialModel| MaterialResponse::resolve(m, t, &GSource::default()).unwrap();
    match mirror {
        Mirror::HalfSpace(m) => Resolved { film: None, bulk: r(m) },
        Mirror::Film {
            film,
            thickness,
            substrate,
        } => Resolved {
            film: Some((r(film), *thickness)),
            bulk: r(substrate),
        },
    }
}

fn side(m: &Resolved, xi: f64) -> Side {
    Side {
        film: m.film.as_ref().map(|(f, w)| (f.permittivity(xi).unwrap(), *w)),
        eps: m.bulk.permittivity(xi).unwrap(),
        perfect: m.bulk.is_perfect_conductor(),
    }
}

/// (r_TE, r_TM) at wavenumber q (nm⁻¹) and ξ/c = `kx` (nm⁻¹).
fn reflection(s: &Side, q: f64, kx: f64) -> (f64, f64) {
    if s.perfect {
        return (-1.0, 1.0);
    }
    let wave = |eps: f64| (q * q + (eps - 1.0) * kx * kx).sqrt();
    let sb = wave(s.eps);
    match s.film {
        None => ((q - sb) / (q + sb), (s.eps * q - sb) / (s.eps * q + sb)),
        Some((ef, w)) => {
            let sf = wave(ef);
            let e = (-2.0 * sf * w).exp();
            let airy = |r12: f64, r23: f64| (r12 + r23 * e) / (1.0 + r12 * r23 * e);
            (
                airy((q - sf) / (q + sf), (sf - sb) / (sf + sb)),
                airy((ef * q - sf) / (ef * q + sf), (s.eps * sf - ef * sb) / (s.eps * sf + ef * sb)),
            )
        }
    }
}

fn oracle(c: &CavityConfig) -> f64 {
    let kt = CODATA.kb_ev_per_k * c.temperature;
    let hc = CODATA.hbar_c_ev_nm;
    let a = c.gap;
    let step = 2.0 * PI * kt;
    let (m1, m2) = (resolve(&c.mirror1, c.temperature), resolve(&c.mirror2, c.temperature));
    let mut total = 0.0;
    for l in 0.. {
        // the static term is taken just above zero frequency
        let xi = if l == 0 { 1e-9 * step } else { l as f64 * step };
        let kx = xi / hc;
        let (s1, s2) = (side(&m1, xi), side(&m2, xi));
        let y0 = 2.0 * a * kx;
        let h = 80.0 / GRID as f64;
        let mut acc = 0.0;
        for i in 0..=GRID {
            let y = y0 + h * i as f64;
            let q = y / (2.0 * a);
            let (te1, tm1) = reflection(&s1, q, kx);
            let (te2, tm2) = reflection(&s2, q, kx);
            let f = |r: f64| {
                let x = r * (-y).exp();
                x / (1.0 - x)
            };
            let w = if i == 0 || i == GRID { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * y * y * (f(te1 * te2) + f(tm1 * tm2));
        }
        let term = acc * h / 3.0 * if l == 0 { 0.5 } else { 1.0 };
        total += term;
        if l > 0 && term.abs() < 1e-13 * total.abs() {
            break;
        }
    }
    -kt / (8.0 * PI * a.powi(3)) * total * PA_PER_EV_NM3
}

pub fn check() -> Outcome {
    let au = MaterialModel::Drude(DrudeParams::new(6.3, 9.0, 0.035, 1.0).unwrap());
    let nb = BcsParams::new(DrudeParams::new(1.0, 5.33, 0.465, 1.12).unwrap(), 13.6).unwrap();
    let al = MaterialModel::Bcs(BcsParams::new(DrudeParams::new(1.03, 13.0, 0.1, 1.0).unwrap(), 1.2).unwrap());
    let sin = MaterialModel::ConstantDielectric(7.6);
    let half = Mirror::HalfSpace;
    let configs = [
        (half(au), half(au), 100.0, 300.0),
        (half(au), half(MaterialModel::Bcs(nb)), 200.0, 10.0),
        (
            Mirror::Film { film: al, thickness: 100.0, substrate: sin },
            Mirror::Film { film: al, thickness: 100.0, substrate: sin },
            1000.0,
            0.9,
        ),
        (half(MaterialModel::PerfectConductor), half(MaterialModel::TwoFluid(nb)), 300.0, 5.0),
        (
            half(au),
            Mirror::Film {
                film: MaterialModel::Bcs(nb),
                thickness: 30.0,
                substrate: MaterialModel::ConstantDielectric(10.0),
            },
            150.0,
            12.0,
        ),
    ];
    let mut worst: f64 = 0.0;
    for (m1, m2, gap, t) in configs {
        let c = CavityConfig { mirror1: m1, mirror2: m2, gap, temperature: t };
        let got = pressure(&c).unwrap().pressure_pa;
        let want = oracle(&c);
        worst = worst.max((got / want - 1.0).abs());
    }
    Outcome::new(worst < 1e-6, format!("worst relative deviation {worst:.1e} on 5 cavities (limit 1e-6)"))
}
