use crate::error::{Error, Result};

/// Shape-preserving piecewise cubic Hermite interpolant. Slopes come from
/// the three-point parabola and are limited to 3·min(|δ₀|, |δ₁|) (Hyman's
/// filter) wherever the data are monotone, so monotone data give a monotone
/// interpolant while smooth data keep third-order accuracy.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        let n = xs.len();
        if n < 2 || ys.len() != n {
            return Err(Error::domain("interpolant needs at least two matching points"));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::domain("interpolation abscissae must be strictly increasing"));
        }
        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<f64> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();
        let mut slopes = vec![0.0; n];
        if n == 2 {
            slopes.fill(delta[0]);
        } else {
            for i in 1..n - 1 {
                let (d0, d1) = (delta[i - 1], delta[i]);
                let s = (h[i] * d0 + h[i - 1] * d1) / (h[i - 1] + h[i]);
                slopes[i] = if d0 * d1 > 0.0 {
                    if s * d0 <= 0.0 {
                        0.0
                    } else {
                        s.signum() * s.abs().min(3.0 * d0.abs().min(d1.abs()))
                    }
                } else if d0 == 0.0 || d1 == 0.0 {
                    0.0
                } else {
                    s
                };
            }
            slopes[0] = end_slope(h[0], h[1], delta[0], delta[1]);
            slopes[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
        }
        Ok(Self { xs, ys, slopes })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    /// Evaluates the interpolant; `x` outside the knot range is clamped.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let i = self.xs.partition_point(|&k| k <= x).clamp(1, n - 1) - 1;
        let h = self.xs[i + 1] - self.xs[i];
        let t = ((x - self.xs[i]) / h).clamp(0.0, 1.0);
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.ys[i] + h10 * h * self.slopes[i] + h01 * self.ys[i + 1] + h11 * h * self.slopes[i + 1]
    }
}

// Three-point end condition, limited so the end segment stays shape-preserving.
fn end_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if d * d0 <= 0.0 {
        0.0
    } else if d0 * d1 <= 0.0 && d.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        d
    }
}
