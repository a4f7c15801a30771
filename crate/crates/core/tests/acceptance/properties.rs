use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use supercasimir::lifshitz::{pressure, CavityConfig, Mirror};
use supercasimir::materials::{g_function, permittivity, BcsParams, DrudeParams, GOptions, MaterialModel};

use crate::Outcome;

fn al() -> BcsParams {
    BcsParams::new(DrudeParams::new(1.03, 13.0, 0.1, 1.0).unwrap(), 1.2).unwrap()
}

fn nbtin() -> BcsParams {
    BcsParams::new(DrudeParams::new(1.0, 5.33, 0.465, 1.12).unwrap(), 13.6).unwrap()
}

fn au() -> MaterialModel {
    MaterialModel::Drude(DrudeParams::new(6.3, 9.0, 0.035, 1.0).unwrap())
}

fn material(i: usize) -> BcsParams {
    if i == 0 {
        al()
    } else {
        nbtin()
    }
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn random_point() -> impl Strategy<Value = (BcsParams, f64, f64)> {
    (0usize..2, 0.02f64..0.98, -4.0f64..3.0).prop_map(|(i, r, lx)| {
        let p = material(i);
        (p, r * p.tc, 10f64.powf(lx) * 2.0 * p.gap_profile().zero_temperature())
    })
}

/// Positivity on random points, zero at and above Tc, and monotone decay in
/// ξ up to Tc/2 (closer to Tc the curve develops a shallow maximum).
pub fn g_grid() -> Outcome {
    let positive = runner(64).run(&random_point(), |(p, t, xi)| {
        let g = g_function(xi, t, &p, &GOptions::default()).unwrap();
        prop_assert!(g > 0.0, "g({xi}; {t}) = {g}");
        Ok(())
    });
    if let Err(e) = positive {
        return Outcome::new(false, format!("positivity: {e}"));
    }
    for p in [al(), nbtin()] {
        for x in [0.0, 1e-4, 1e-2, 1.0] {
            for f in [1.0, 1.5] {
                let g = g_function(x, f * p.tc, &p, &GOptions::default()).unwrap();
                if g != 0.0 {
                    return Outcome::new(false, format!("g = {g} at T = {} K >= Tc", f * p.tc));
                }
            }
        }
        let two_gap0 = 2.0 * p.gap_profile().zero_temperature();
        for r in [0.1, 0.3, 0.5] {
            let g: Vec<f64> = (0..40)
                .map(|i| 10f64.powf(-3.0 + 0.15 * i as f64) * two_gap0)
                .map(|xi| g_function(xi, r * p.tc, &p, &GOptions::default()).unwrap())
                .collect();
            if !g.windows(2).all(|w| w[1] < w[0]) {
                return Outcome::new(false, format!("not decreasing at Tc={} K, T/Tc={r}", p.tc));
            }
        }
    }
    Outcome::new(true, "64 random points positive; zero at 16 points >= Tc; decreasing on 6 curves of 40 points")
}

pub fn permittivity_ordering() -> Outcome {
    let r = runner(64).run(&random_point(), |(p, t, xi)| {
        let bcs = permittivity(&MaterialModel::Bcs(p), xi, t).unwrap();
        let drude = permittivity(&MaterialModel::Drude(p.drude), xi, t).unwrap();
        let two = permittivity(&MaterialModel::TwoFluid(p), xi, t).unwrap();
        prop_assert!(two >= bcs && bcs >= drude, "{two} {bcs} {drude}");
        Ok(())
    });
    match r {
        Ok(()) => Outcome::new(true, "two-fluid >= BCS >= Drude on 64 random points"),
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

fn mirrors() -> Vec<Mirror> {
    let nb = MaterialModel::Bcs(nbtin());
    vec![
        Mirror::HalfSpace(au()),
        Mirror::HalfSpace(nb),
        Mirror::HalfSpace(MaterialModel::TwoFluid(nbtin())),
        Mirror::HalfSpace(MaterialModel::ConstantDielectric(7.6)),
        Mirror::Film {
            film: nb,
            thickness: 40.0,
            substrate: MaterialModel::ConstantDielectric(10.0),
        },
    ]
}

pub fn mirror_swap() -> Outcome {
    let m = mirrors();
    let strategy = (0usize..5, 0usize..5, 60.0f64..400.0, 4.0f64..13.6);
    let worst = std::cell::Cell::new(0.0f64);
    let r = runner(12).run(&strategy, |(i, j, a, t)| {
        let c = CavityConfig { mirror1: m[i], mirror2: m[j], gap: a, temperature: t };
        let s = CavityConfig { mirror1: m[j], mirror2: m[i], ..c };
        let (p, q) = (pressure(&c).unwrap().pressure_pa, pressure(&s).unwrap().pressure_pa);
        let rel = (p / q - 1.0).abs();
        prop_assert!(rel < 1e-12, "{p} vs {q}");
        worst.set(worst.get().max(rel));
        Ok(())
    });
    match r {
        Ok(()) => Outcome::new(true, format!("12 random cavities, worst relative difference {:.1e}", worst.get())),
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

/// P < 0 and |P| falling with separation.
pub fn sign_and_distance() -> Outcome {
    let m = mirrors();
    for (m1, m2) in [(m[0], m[1]), (m[1], m[4]), (m[0], m[3])] {
        let p: Vec<f64> = [50.0, 80.0, 120.0, 200.0, 400.0, 1000.0]
            .iter()
            .map(|&a| {
                pressure(&CavityConfig { mirror1: m1, mirror2: m2, gap: a, temperature: 6.8 })
                    .unwrap()
                    .pressure_pa
            })
            .collect();
        if !p.iter().all(|&x| x < 0.0) || !p.windows(2).all(|w| w[1].abs() < w[0].abs()) {
            return Outcome::new(false, format!("{p:?}"));
        }
    }
    Outcome::new(true, "3 cavities x 6 separations")
}
