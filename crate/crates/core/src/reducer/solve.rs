//! Damped Gauss-Newton with seeded random starts.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AlgebraicSystem, ReduceError};
use crate::linalg;
use crate::symcore::{Assignment, CompiledPoly};

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    /// Starts are drawn uniformly from `[-start_box, start_box]`.
    pub start_box: f64,
    pub max_iter: usize,
    /// Keep solutions with `alpha = 0` (constant profiles).
    pub keep_degenerate: bool,
    pub tol: f64,
    pub dedupe: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            start_box: 3.0,
            max_iter: 200,
            keep_degenerate: false,
            tol: 1e-12,
            dedupe: 1e-8,
        }
    }
}

struct Problem {
    free: Vec<String>,
    base: Vec<f64>,
    slots: Vec<usize>,
    eqs: Vec<CompiledPoly>,
    jac: Vec<Vec<CompiledPoly>>,
}

impl Problem {
    fn point(&self, x: &[f64]) -> Vec<f64> {
        let mut p = self.base.clone();
        for (s, v) in self.slots.iter().zip(x) {
            p[*s] = *v;
        }
        p
    }

    fn residual(&self, x: &[f64]) -> Vec<f64> {
        let p = self.point(x);
        self.eqs.iter().map(|e| e.eval(&p)).collect()
    }

    fn jacobian(&self, x: &[f64]) -> Vec<f64> {
        let p = self.point(x);
        self.jac.iter().flat_map(|row| row.iter().map(|d| d.eval(&p))).collect()
    }
}

fn sup(f: &[f64]) -> f64 {
    f.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn sq(f: &[f64]) -> f64 {
    f.iter().map(|x| x * x).sum()
}

fn newton(prob: &Problem, mut x: Vec<f64>, opts: &SolveOptions) -> Option<Vec<f64>> {
    let n = x.len();
    let mut f = prob.residual(&x);
    let mut phi = sq(&f);
    let mut mu = 1e-6;
    for _ in 0..opts.max_iter {
        if !phi.is_finite() {
            return None;
        }
        if sup(&f) < opts.tol {
            return Some(x);
        }
        let jac = prob.jacobian(&x);
        let Some(dx) = linalg::damped_step(&jac, &f, n, mu) else {
            mu *= 10.0;
            if mu > 1e8 {
                return None;
            }
            continue;
        };
        let mut t = 1.0;
        let mut accepted = false;
        for halving in 0..=30 {
            let trial: Vec<f64> = x.iter().zip(&dx).map(|(a, d)| a + t * d).collect();
            let ft = prob.residual(&trial);
            let pt = sq(&ft);
            if pt < phi {
                x = trial;
                f = ft;
                phi = pt;
                accepted = true;
                mu = if halving == 0 { (mu * 0.1).max(1e-15) } else { mu * 2.0 };
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            mu *= 10.0;
            if mu > 1e8 {
                break;
            }
        }
    }
    (sup(&f) < opts.tol).then_some(x)
}

/// Finds real solutions of `system` with the variables in `fixed` held at
/// their values. Every remaining variable is solved for. Each start uses
/// its own stream of a generator seeded by `seed`, so results depend only
/// on `(seed, starts)`. Solutions are deduplicated and sorted
/// lexicographically in the sorted variable order.
pub fn solve_numeric(
    system: &AlgebraicSystem,
    fixed: &Assignment,
    seed: u64,
    starts: usize,
    opts: &SolveOptions,
) -> Result<Vec<BTreeMap<String, f64>>, ReduceError> {
    let order = system.variables();
    let free: Vec<String> = order.iter().filter(|v| !fixed.contains_key(*v)).cloned().collect();
    let base: Vec<f64> = order
        .iter()
        .map(|v| fixed.get(v).map(|x| x.to_f64()).unwrap_or(0.0))
        .collect();
    let slots: Vec<usize> = free
        .iter()
        .map(|v| order.iter().position(|o| o == v).expect("free variable in order"))
        .collect();
    let eqs = system.equations.iter().map(|e| e.compile(&order)).collect();
    let jac = system
        .equations
        .iter()
        .map(|e| free.iter().map(|v| e.derivative(v).compile(&order)).collect())
        .collect();
    let prob = Problem {
        free,
        base,
        slots,
        eqs,
        jac,
    };
    if prob.free.is_empty() {
        let f = prob.residual(&[]);
        return if sup(&f) < opts.tol {
            Ok(alloc::vec![BTreeMap::new()])
        } else {
            Err(ReduceError::NoConvergence { starts, degenerate: 0 })
        };
    }
    let alpha_slot = system
        .alpha
        .as_ref()
        .and_then(|a| prob.free.iter().position(|v| v == a));
    let alpha_fixed = system.alpha.as_ref().and_then(|a| fixed.get(a)).map(|v| v.to_f64());

    let mut found: Vec<Vec<f64>> = Vec::new();
    let mut degenerate = 0;
    for i in 0..starts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let x0: Vec<f64> = (0..prob.free.len())
            .map(|_| rng.gen_range(-opts.start_box..opts.start_box))
            .collect();
        let Some(x) = newton(&prob, x0, opts) else { continue };
        let alpha = alpha_slot.map(|k| x[k]).or(alpha_fixed);
        if !opts.keep_degenerate && alpha.is_some_and(|a| a.abs() < opts.dedupe) {
            degenerate += 1;
            continue;
        }
        if !found.iter().any(|y| dist(y, &x) < opts.dedupe) {
            found.push(x);
        }
    }
    if found.is_empty() {
        return Err(ReduceError::NoConvergence { starts, degenerate });
    }
    found.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    Ok(found
        .into_iter()
        .map(|x| prob.free.iter().cloned().zip(x).collect())
        .collect())
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}
