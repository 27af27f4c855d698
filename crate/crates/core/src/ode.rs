//! Dormand-Prince 5(4) with adaptive steps and cubic Hermite output.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node<const N: usize> {
    pub t: f64,
    pub y: [f64; N],
    pub f: [f64; N],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Halt {
    /// Step size fell below the resolution of `t`.
    Underflow(f64),
    /// The caller's stop predicate fired after an accepted step.
    Stopped(f64),
}

#[derive(Debug, Clone)]
pub struct Solution<const N: usize> {
    pub nodes: Vec<Node<N>>,
    pub halt: Option<Halt>,
}

const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

fn axpy<const N: usize>(y: &[f64; N], h: f64, ks: &[[f64; N]], coeffs: &[f64]) -> [f64; N] {
    let mut out = *y;
    for (k, c) in ks.iter().zip(coeffs) {
        if *c != 0.0 {
            for i in 0..N {
                out[i] += h * c * k[i];
            }
        }
    }
    out
}

/// Integrates `y' = f(t, y)` from `t0` towards `t1` (either direction).
/// Steps never exceed `hmax`; `stop` is consulted after every accepted
/// step.
#[allow(clippy::too_many_arguments)]
pub fn integrate<const N: usize>(
    f: impl Fn(f64, &[f64; N]) -> [f64; N],
    t0: f64,
    y0: [f64; N],
    t1: f64,
    rtol: f64,
    atol: f64,
    hmax: f64,
    mut stop: impl FnMut(&Node<N>) -> bool,
) -> Solution<N> {
    let dir = if t1 >= t0 { 1.0 } else { -1.0 };
    let span = (t1 - t0).abs();
    let mut nodes = Vec::new();
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    nodes.push(Node { t, y, f: k1 });
    if span == 0.0 {
        return Solution { nodes, halt: None };
    }
    let scale0 = y.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    let slope0 = k1.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut h = if slope0 > 0.0 {
        (0.01 * scale0 / slope0).min(0.1 * span)
    } else {
        0.01 * span
    }
    .max(1e-6 * span.min(1.0))
    .min(hmax);
    let mut err_prev: f64 = 1e-4;
    loop {
        let remaining = t1 - t;
        if remaining * dir <= 0.0 {
            return Solution { nodes, halt: None };
        }
        let mut last = false;
        if h >= remaining.abs() {
            h = remaining.abs();
            last = true;
        }
        if h <= 1e-14 * t.abs().max(1.0) {
            return Solution {
                nodes,
                halt: Some(Halt::Underflow(t)),
            };
        }
        let hs = dir * h;
        let mut ks = [[0.0; N]; 7];
        ks[0] = k1;
        for s in 0..6 {
            let ys = axpy(&y, hs, &ks[..=s], &A[s][..=s]);
            ks[s + 1] = f(t + C[s] * hs, &ys);
        }
        let y_new = axpy(&y, hs, &ks[..6], &A[5]);
        let mut err = 0.0;
        for i in 0..N {
            let mut e = 0.0;
            for (k, c) in ks.iter().zip(&E) {
                e += c * k[i];
            }
            let sc = atol + rtol * y[i].abs().max(y_new[i].abs());
            err += (hs * e / sc).powi(2);
        }
        let err = (err / N as f64).sqrt();
        if !err.is_finite() || y_new.iter().any(|v| !v.is_finite()) {
            h *= 0.2;
            continue;
        }
        if err <= 1.0 {
            t = if last { t1 } else { t + hs };
            y = y_new;
            k1 = ks[6];
            let node = Node { t, y, f: k1 };
            nodes.push(node);
            if stop(&node) {
                return Solution {
                    nodes,
                    halt: Some(Halt::Stopped(t)),
                };
            }
            // PI controller
            let fac = 0.9 * err.max(1e-10).powf(-0.7 / 5.0) * err_prev.powf(0.4 / 5.0);
            h = (h * fac.clamp(0.2, 5.0)).min(hmax);
            err_prev = err.max(1e-4);
        } else {
            h *= (0.9 * err.powf(-0.2)).clamp(0.2, 1.0);
        }
    }
}

/// Cubic Hermite value at `t` between two nodes.
pub fn hermite<const N: usize>(a: &Node<N>, b: &Node<N>, t: f64) -> [f64; N] {
    let h = b.t - a.t;
    let s = (t - a.t) / h;
    let (s2, s3) = (s * s, s * s * s);
    let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    let h10 = s3 - 2.0 * s2 + s;
    let h01 = -2.0 * s3 + 3.0 * s2;
    let h11 = s3 - s2;
    core::array::from_fn(|i| h00 * a.y[i] + h10 * h * a.f[i] + h01 * b.y[i] + h11 * h * b.f[i])
}

/// Interpolated state at `t`, `None` outside the covered range.
pub fn sample<const N: usize>(nodes: &[Node<N>], t: f64) -> Option<[f64; N]> {
    let first = nodes.first()?;
    let last = nodes.last()?;
    let (lo, hi) = if first.t <= last.t { (first.t, last.t) } else { (last.t, first.t) };
    if !(lo..=hi).contains(&t) {
        return None;
    }
    let forward = first.t <= last.t;
    let k = nodes.partition_point(|n| if forward { n.t < t } else { n.t > t });
    if k == 0 {
        return Some(first.y);
    }
    Some(hermite(&nodes[k - 1], &nodes[k], t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator() {
        let sol = integrate(|_, y: &[f64; 2]| [y[1], -y[0]], 0.0, [1.0, 0.0], 10.0, 1e-11, 1e-11, f64::INFINITY, |_| false);
        let end = sol.nodes.last().unwrap();
        assert_eq!(end.t, 10.0);
        assert!((end.y[0] - 10f64.cos()).abs() < 1e-9);
        assert!((end.y[1] + 10f64.sin()).abs() < 1e-9);
        let mid = sample(&sol.nodes, 3.3).unwrap();
        assert!((mid[0] - 3.3f64.cos()).abs() < 1e-6);
    }

    #[test]
    fn backward_and_stop() {
        let sol = integrate(|_, y: &[f64; 1]| [y[0]], 0.0, [1.0], -2.0, 1e-10, 1e-12, f64::INFINITY, |_| false);
        assert!((sol.nodes.last().unwrap().y[0] - (-2f64).exp()).abs() < 1e-10);
        let sol = integrate(|_, y: &[f64; 1]| [y[0]], 0.0, [1.0], 5.0, 1e-10, 1e-12, f64::INFINITY, |n| n.y[0] > 2.0);
        assert!(matches!(sol.halt, Some(Halt::Stopped(t)) if t > 2f64.ln() && t < 5.0));
    }
}
