use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::sum::CompensatedSum;
use crate::error::{Error, Result};

/// Value of a definite integral with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_bound: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub tol_rel: f64,
    pub tol_abs: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            tol_rel: 1e-10,
            tol_abs: 1e-300,
            max_intervals: 4000,
        }
    }
}

impl QuadOptions {
    pub fn new(tol_rel: f64, tol_abs: f64) -> Self {
        Self {
            tol_rel,
            tol_abs,
            ..Default::default()
        }
    }

    fn target(&self, value: f64) -> f64 {
        self.tol_abs.max(self.tol_rel * value.abs())
    }
}

/// Variable change used to bring [0, ∞) onto a finite domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transform {
    /// Integrand decays like exp(-x/scale): geometric panels
    /// [0, s], [s, 2s], [2s, 4s], … until the remainder is negligible.
    ExpDecay { scale: f64 },
    /// Integrand decays like a power: x = t/(1-t), t ∈ [0, 1).
    Algebraic,
}

// Gauss-Kronrod 21-point abscissae and weights (QUADPACK qk21).
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_643_474_541,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = WGK[10] * fc;
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half.abs();
    let value = res_k * half;
    res_abs *= scale;
    res_asc *= scale;
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Segment { a, b, value, error }
}

fn non_finite(what: &str) -> Error {
    Error::Numerical {
        what: format!("{what}: non-finite integrand"),
        estimate: f64::NAN,
        error_bound: f64::INFINITY,
    }
}

/// Globally adaptive Gauss-Kronrod over the segments delimited by `points`
/// (sorted, at least two). The segment with the largest error is bisected
/// until the summed error meets the target.
pub fn integrate_breakpoints<F>(f: F, points: &[f64], opts: &QuadOptions) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    if points.len() < 2 {
        return Err(Error::domain("need at least two integration limits"));
    }
    if !(opts.tol_rel > 0.0 || opts.tol_abs > 0.0) {
        return Err(Error::domain("quadrature tolerances must be positive"));
    }
    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    let mut evaluations = 0;
    for w in points.windows(2) {
        if !(w[1] >= w[0]) {
            return Err(Error::domain("integration breakpoints must be sorted"));
        }
        if w[1] == w[0] {
            continue;
        }
        let s = gk21(&f, w[0], w[1]);
        evaluations += 21;
        total += s.value;
        total_err += s.error;
        heap.push(s);
    }
    if heap.is_empty() {
        return Ok(QuadResult {
            value: 0.0,
            error_bound: 0.0,
            evaluations: 1,
        });
    }
    if !total.is_finite() {
        return Err(non_finite("integral"));
    }
    // Segments that cannot be split further without hitting rounding.
    let mut settled: Vec<Segment> = Vec::new();
    while total_err > opts.target(total) {
        if heap.len() + settled.len() >= opts.max_intervals {
            return Err(Error::Numerical {
                what: format!("adaptive quadrature ({} intervals)", opts.max_intervals),
                estimate: total,
                error_bound: total_err,
            });
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < 1e-13 * worst.a.abs().max(worst.b.abs()) {
            settled.push(worst);
            continue;
        }
        let left = gk21(&f, worst.a, mid);
        let right = gk21(&f, mid, worst.b);
        evaluations += 42;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        if !total.is_finite() {
            return Err(non_finite("integral"));
        }
        heap.push(left);
        heap.push(right);
    }
    let mut segs: Vec<Segment> = heap.into_vec();
    segs.extend(settled);
    segs.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value: CompensatedSum = segs.iter().map(|s| s.value).collect();
    let error: CompensatedSum = segs.iter().map(|s| s.error).collect();
    Ok(QuadResult {
        value: value.value(),
        error_bound: error.value(),
        evaluations,
    })
}

/// Adaptive integral of `f` over [a, b].
pub fn integrate<F>(f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    if a <= b {
        integrate_breakpoints(f, &[a, b], opts)
    } else {
        integrate_breakpoints(f, &[b, a], opts).map(|r| QuadResult {
            value: -r.value,
            ..r
        })
    }
}

/// Integral of `f` over [0, ∞).
pub fn integrate_semi_infinite<F>(
    f: F,
    transform: Transform,
    tol_rel: f64,
    tol_abs: f64,
) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    let opts = QuadOptions::new(tol_rel, tol_abs);
    match transform {
        Transform::Algebraic => {
            let g = |t: f64| {
                let s = 1.0 - t;
                let x = t / s;
                let v = f(x);
                if v == 0.0 {
                    0.0
                } else {
                    v / (s * s)
                }
            };
            integrate_breakpoints(g, &[0.0, 0.5, 1.0], &opts)
        }
        Transform::ExpDecay { scale } => {
            if !(scale > 0.0 && scale.is_finite()) {
                return Err(Error::domain("decay scale must be positive"));
            }
            // [0, 1, 2, 4, ..., 64] in units of the decay scale.
            let mut points: Vec<f64> = std::iter::once(0.0)
                .chain((0..7).map(|k| scale * (1u64 << k) as f64))
                .collect();
            loop {
                let r = integrate_breakpoints(&f, &points, &opts)?;
                let end = *points.last().unwrap();
                // tail ∫_L^∞ f ≈ f(L)·scale for exponential decay
                let tail = (f(end) * scale).abs();
                if tail <= 1e-3 * opts.target(r.value) || tail == 0.0 {
                    return Ok(QuadResult {
                        error_bound: r.error_bound + tail,
                        evaluations: r.evaluations + 1,
                        ..r
                    });
                }
                if end > 4096.0 * scale {
                    return Err(Error::Numerical {
                        what: "semi-infinite integral (integrand does not decay)".into(),
                        estimate: r.value,
                        error_bound: r.error_bound + tail,
                    });
                }
                points.push(2.0 * end);
            }
        }
    }
}
