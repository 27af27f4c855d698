//! Small dense linear algebra.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

/// Solves `a x = b` for a row-major `n x n` matrix by Gaussian elimination
/// with partial pivoting. Returns `None` for a numerically singular matrix.
pub fn solve(mut a: Vec<f64>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    debug_assert_eq!(a.len(), n * n);
    let scale = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return None;
    }
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))?;
        if a[piv * n + col].abs() <= scale * 1e-300 {
            return None;
        }
        if piv != col {
            for k in 0..n {
                a.swap(piv * n + k, col * n + k);
            }
            b.swap(piv, col);
        }
        let d = a[col * n + col];
        for r in col + 1..n {
            let f = a[r * n + col] / d;
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[r * n + k] -= f * a[col * n + k];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = alloc::vec![0.0; n];
    for r in (0..n).rev() {
        let mut s = b[r];
        for k in r + 1..n {
            s -= a[r * n + k] * x[k];
        }
        x[r] = s / a[r * n + r];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Solves the damped normal equations `(J^T J + mu I) dx = -J^T f` for a
/// row-major `m x n` Jacobian.
pub fn damped_step(jac: &[f64], f: &[f64], n: usize, mu: f64) -> Option<Vec<f64>> {
    let m = f.len();
    let mut ata = alloc::vec![0.0; n * n];
    let mut atb = alloc::vec![0.0; n];
    for r in 0..m {
        let row = &jac[r * n..(r + 1) * n];
        for i in 0..n {
            if row[i] == 0.0 {
                continue;
            }
            atb[i] -= row[i] * f[r];
            for j in 0..n {
                ata[i * n + j] += row[i] * row[j];
            }
        }
    }
    for i in 0..n {
        ata[i * n + i] += mu;
    }
    solve(ata, atb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn solves_pivoted_system() {
        let x = solve(vec![0.0, 1.0, 2.0, 1.0], vec![3.0, 4.0]).unwrap();
        assert!((x[0] - 0.5).abs() < 1e-15 && (x[1] - 3.0).abs() < 1e-15);
        assert!(solve(vec![1.0, 2.0, 2.0, 4.0], vec![1.0, 1.0]).is_none());
    }

    #[test]
    fn damped_step_is_newton_for_small_mu() {
        // f = (x - 1, 2 y) at (0, 1): newton step (1, -1)
        let dx = damped_step(&[1.0, 0.0, 0.0, 2.0], &[-1.0, 2.0], 2, 0.0).unwrap();
        assert!((dx[0] - 1.0).abs() < 1e-15 && (dx[1] + 1.0).abs() < 1e-15);
    }
}
