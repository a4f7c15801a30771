use supercasimir::lifshitz::{CavityTemplate, Mirror, PressureOptions};
use supercasimir::materials::{BcsParams, DrudeParams, MaterialModel};
use supercasimir::scenarios::{builtin_scenario, run_sweep, Axis, Scenario, Series, SweepMode, SweepOutput, SweepSpec, Temperature};

use crate::Outcome;

fn spec() -> SweepSpec {
    let au = MaterialModel::Drude(DrudeParams::new(6.3, 9.0, 0.035, 1.0).unwrap());
    let nb = BcsParams::new(DrudeParams::new(1.0, 5.33, 0.465, 1.12).unwrap(), 13.6).unwrap();
    let base = CavityTemplate {
        mirror1: Mirror::HalfSpace(au),
        mirror2: Mirror::Film {
            film: MaterialModel::Bcs(nb),
            thickness: 60.0,
            substrate: MaterialModel::ConstantDielectric(10.0),
        },
        gap: 100.0,
    };
    SweepSpec {
        name: "determinism".into(),
        series: vec![
            Series { label: "a".into(), base },
            Series {
                label: "b".into(),
                base: CavityTemplate { gap: 150.0, ..base },
            },
        ],
        axis: Axis::FilmThickness,
        points: vec![20.0, 60.0, 200.0],
        temperature: Some(Temperature::OverTc(0.4)),
        t_ref: None,
        mode: SweepMode::Both,
        output: SweepOutput::DeltaPressure,
        options: PressureOptions::default(),
    }
}

fn csv_with_threads(n: usize) -> String {
    let builtin = match builtin_scenario("twofluid_comparison").unwrap() {
        Scenario::Sweep(s) => s,
        Scenario::Response(_) => unreachable!(),
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
    pool.install(|| run_sweep(&spec()).unwrap().to_csv_string() + &run_sweep(&builtin).unwrap().to_csv_string())
}

pub fn check() -> Outcome {
    let one = csv_with_threads(1);
    for n in [2, 4, 7] {
        if csv_with_threads(n) != one {
            return Outcome::new(false, format!("CSV with {n} threads differs from 1 thread"));
        }
    }
    Outcome::new(
        csv_with_threads(1) == one,
        "custom and builtin sweep CSVs identical for 1, 2, 4, 7 threads and a rerun",
    )
}
