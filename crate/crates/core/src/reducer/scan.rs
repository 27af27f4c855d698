//! Float residual of a closed-form profile sampled along `xi`.

use alloc::string::ToString;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::ReduceError;
use crate::model::{BoundPDE, HyperbolicPDE};
use crate::symcore::{Assignment, BoundRational, ExpRational, Value};

const ALPHA: &str = "__alpha";

/// A profile `u = w(E)^power`, `E = exp(alpha * xi)`, with every
/// remaining symbol of `w` bound by `point`.
#[derive(Debug, Clone)]
pub struct ClosedFormSolution {
    pub w: ExpRational,
    pub point: Assignment,
    pub alpha: f64,
    pub velocity: f64,
    pub power: u32,
    /// Known singular points of `w` in `xi`.
    pub poles: Vec<f64>,
}

impl ClosedFormSolution {
    pub fn new(w: ExpRational, point: Assignment, alpha: f64, velocity: f64, power: u32) -> Self {
        ClosedFormSolution {
            w,
            point,
            alpha,
            velocity,
            power,
            poles: Vec::new(),
        }
    }

    pub fn bind(&self) -> Result<BoundProfile, ReduceError> {
        let mut pt = self.point.clone();
        pt.insert(ALPHA.to_string(), Value::Approx(self.alpha));
        let w1 = self.w.differentiate_xi(ALPHA);
        let w2 = w1.differentiate_xi(ALPHA);
        Ok(BoundProfile {
            w: self.w.bind(&pt)?,
            w1: w1.bind(&pt)?,
            w2: w2.bind(&pt)?,
            alpha: self.alpha,
            power: self.power,
        })
    }
}

/// Float evaluator of `u`, `u'`, `u''`.
#[derive(Debug, Clone)]
pub struct BoundProfile {
    w: BoundRational,
    w1: BoundRational,
    w2: BoundRational,
    alpha: f64,
    power: u32,
}

impl BoundProfile {
    pub fn w(&self, xi: f64) -> f64 {
        self.w.eval(self.alpha * xi)
    }

    pub fn u(&self, xi: f64) -> f64 {
        let w = self.w(xi);
        if self.power == 2 {
            w * w
        } else {
            w
        }
    }

    /// `(w, u, u', u'')` at `xi`.
    pub fn jet(&self, xi: f64) -> (f64, f64, f64, f64) {
        let l = self.alpha * xi;
        let (w, w1, w2) = (self.w.eval(l), self.w1.eval(l), self.w2.eval(l));
        if self.power == 2 {
            (w, w * w, 2.0 * w * w1, 2.0 * (w1 * w1 + w * w2))
        } else {
            (w, w, w1, w2)
        }
    }

    pub fn den_sign(&self, xi: f64) -> f64 {
        self.w.den_sign(self.alpha * xi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanReport {
    /// `max |residual| / (1 + max |u|)`
    pub relative: f64,
    pub max_residual: f64,
    pub max_u: f64,
    pub samples_used: usize,
}

fn pde_residual(pde: &BoundPDE, velocity: f64, power: u32, jet: (f64, f64, f64, f64)) -> f64 {
    let (w, u, u1, u2) = jet;
    let v = velocity;
    let mut r = (pde.tau * v * v - pde.kappa) * u2 + pde.a * u * u1 + pde.b * v * u1;
    for (nu, lam) in &pde.reaction {
        let t = nu.twice() as i32;
        let term = if power == 2 {
            w.powi(t)
        } else if t % 2 == 0 {
            u.powi(t / 2)
        } else {
            u.powf(t as f64 / 2.0)
        };
        r -= lam * term;
    }
    r
}

/// Samples the residual of `pde` along `sol` at `samples` equally spaced
/// points of `[lo, hi]`, skipping points within `1e-3` of declared poles.
pub fn residual_scan(
    pde: &HyperbolicPDE,
    sol: &ClosedFormSolution,
    lo: f64,
    hi: f64,
    samples: usize,
) -> Result<ScanReport, ReduceError> {
    if samples < 2 || !(lo < hi) {
        return Err(ReduceError::InvalidScan("need samples >= 2 and lo < hi".to_string()));
    }
    let bound_pde = pde.bind(&sol.point)?;
    let prof = sol.bind()?;
    let near_pole = |xi: f64| sol.poles.iter().any(|p| (xi - p).abs() < 1e-3);
    let step = (hi - lo) / (samples - 1) as f64;
    let mut max_res = 0.0f64;
    let mut max_u = 0.0f64;
    let mut used = 0;
    let mut last: Option<(f64, f64)> = None;
    for i in 0..samples {
        let xi = lo + step * i as f64;
        if near_pole(xi) {
            last = None;
            continue;
        }
        let s = prof.den_sign(xi);
        if let Some((x0, s0)) = last {
            let crosses = s != s0 && !sol.poles.iter().any(|p| *p >= x0 && *p <= xi);
            if crosses {
                return Err(ReduceError::PoleInWindow(0.5 * (x0 + xi)));
            }
        }
        last = Some((xi, s));
        let jet = prof.jet(xi);
        let r = pde_residual(&bound_pde, sol.velocity, sol.power, jet);
        if s == 0.0 || !jet.1.is_finite() || !r.is_finite() {
            return Err(ReduceError::PoleInWindow(xi));
        }
        max_res = max_res.max(r.abs());
        max_u = max_u.max(jet.1.abs());
        used += 1;
    }
    Ok(ScanReport {
        relative: max_res / (1.0 + max_u),
        max_residual: max_res,
        max_u,
        samples_used: used,
    })
}

/// Sign changes of the profile's denominator on `[lo, hi]`, refined by
/// bisection.
pub fn locate_poles(
    sol: &ClosedFormSolution,
    lo: f64,
    hi: f64,
    samples: usize,
) -> Result<Vec<f64>, ReduceError> {
    let prof = sol.bind()?;
    let step = (hi - lo) / (samples.max(2) - 1) as f64;
    let mut out = Vec::new();
    let mut x0 = lo;
    let mut s0 = prof.den_sign(lo);
    for i in 1..samples.max(2) {
        let x1 = lo + step * i as f64;
        let s1 = prof.den_sign(x1);
        if s0 == 0.0 {
            out.push(x0);
        } else if s1 != 0.0 && s1 != s0 {
            let (mut a, mut b) = (x0, x1);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                if prof.den_sign(m) == s0 {
                    a = m;
                } else {
                    b = m;
                }
            }
            out.push(0.5 * (a + b));
        }
        x0 = x1;
        s0 = s1;
    }
    if s0 == 0.0 {
        out.push(x0);
    }
    Ok(out)
}
