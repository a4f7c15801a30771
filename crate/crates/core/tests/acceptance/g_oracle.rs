//! g(ξ;T) against an independent brute-force evaluation: the textbook
//! integrand in ε, computed in double-double arithmetic so that the small
//! real part survives, integrated with composite Simpson on a log grid.

use supercasimir::constants::CODATA;
use supercasimir::materials::{bcs_gap, g_function, BcsParams, DrudeParams, GOptions};
use twofloat::TwoFloat;

use crate::Outcome;

#[derive(Clone, Copy)]
struct C {
    re: TwoFloat,
    im: TwoFloat,
}

fn dd(x: f64) -> TwoFloat {
    TwoFloat::from(x)
}

impl C {
    fn new(re: f64, im: f64) -> Self {
        C { re: dd(re), im: dd(im) }
    }
    fn add(self, o: C) -> C {
        C { re: self.re + o.re, im: self.im + o.im }
    }
    fn sub(self, o: C) -> C {
        C { re: self.re - o.re, im: self.im - o.im }
    }
    fn mul(self, o: C) -> C {
        C {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
    fn scale(self, s: TwoFloat) -> C {
        C { re: self.re * s, im: self.im * s }
    }
    fn div(self, o: C) -> C {
        let n = o.re * o.re + o.im * o.im;
        let num = self.mul(C { re: o.re, im: -o.im });
        C { re: num.re / n, im: num.im / n }
    }
    /// Principal square root.
    fn sqrt(self) -> C {
        let r = (self.re * self.re + self.im * self.im).sqrt();
        if self.re >= dd(0.0) {
            let a = ((r + self.re) / dd(2.0)).sqrt();
            C { re: a, im: self.im / (dd(2.0) * a) }
        } else {
            let b = ((r - self.re) / dd(2.0)).sqrt();
            let b = if self.im < dd(0.0) { -b } else { b };
            C { re: self.im / (dd(2.0) * b), im: b }
        }
    }
}

/// Re of the Mattis-Bardeen kernel G₊(iξ, ε), written out literally.
fn re_kernel(eps: f64, gap: f64, xi: f64, gamma: f64) -> f64 {
    let e2 = dd(eps) * dd(eps) + dd(gap) * dd(gap);
    let e = e2.sqrt();
    let d2 = C { re: dd(gap) * dd(gap), im: dd(0.0) };
    let z = C { re: e, im: dd(xi) };
    let q = z.mul(z).sub(d2).sqrt();
    let a = C { re: e, im: dd(0.0) }.mul(z).add(d2);
    let x = q.add(C::new(0.0, gamma));
    let eps2 = C { re: dd(eps) * dd(eps), im: dd(0.0) };
    let num = q.scale(dd(eps) * dd(eps)).add(x.mul(a));
    let den = q.mul(eps2.sub(x.mul(x)));
    f64::from(num.div(den).re)
}

fn g_oracle(xi: f64, t: f64, p: &BcsParams) -> f64 {
    let gap = bcs_gap(&p.gap_profile(), t).unwrap();
    let gamma = p.drude.gamma();
    let kt = CODATA.kb_ev_per_k * t;
    let f = |eps: f64| {
        let e = (eps * eps + gap * gap).sqrt();
        (e / (2.0 * kt)).tanh() / e * re_kernel(eps, gap, xi, gamma)
    };
    // ε = e^s from 1e-10 Δ to 1e4 times the largest scale
    let lo = (1e-10 * gap).ln();
    let hi = (1e4 * gap.max(gamma).max(xi).max(kt)).ln();
    let n = 40_000;
    let h = (hi - lo) / n as f64;
    let mut acc = 0.0;
    for i in 0..=n {
        let s = lo + h * i as f64;
        let w = if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(s.exp()) * s.exp();
    }
    // the integrand is flat below the grid and the kernel is even in ε
    2.0 * (acc * h / 3.0 + f(0.0) * lo.exp())
}

/// 20 points: Al and NbTiN, two temperatures, five frequencies.
pub fn check() -> Outcome {
    let al = BcsParams::new(DrudeParams::new(1.03, 13.0, 0.1, 1.0).unwrap(), 1.2).unwrap();
    let nbtin = BcsParams::new(DrudeParams::new(1.0, 5.33, 0.465, 1.12).unwrap(), 13.6).unwrap();
    let opts = GOptions {
        tol: 1e-14,
        ..Default::default()
    };
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for p in [al, nbtin] {
        let two_gap0 = 2.0 * p.gap_profile().zero_temperature();
        for r in [0.2, 0.8] {
            for x in [0.03, 0.3, 1.0, 3.0, 30.0] {
                let (xi, t) = (x * two_gap0, r * p.tc);
                let got = g_function(xi, t, &p, &opts).unwrap();
                let want = g_oracle(xi, t, &p);
                worst = worst.max((got / want - 1.0).abs());
                n += 1;
            }
        }
    }
    Outcome::new(worst < 1e-6, format!("worst relative deviation {worst:.1e} on {n} points (limit 1e-6)"))
}
