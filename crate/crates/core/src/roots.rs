//! Bracketed scalar root finding.

#[allow(unused_imports)]
use num_traits::Float;

/// Brent's method on `[a, b]`; requires a sign change.
pub fn brent(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, xtol: f64) -> Option<f64> {
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return None;
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Some(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
    }
    Some(b)
}

/// Expands `[lo, hi]` by doubling `hi - lo` until `f` changes sign, then
/// refines with [`brent`].
pub fn bracket_up(f: impl Fn(f64) -> f64, lo: f64, hi: f64, xtol: f64) -> Option<f64> {
    let flo = f(lo);
    let mut hi = hi;
    for _ in 0..200 {
        let fh = f(hi);
        if !fh.is_finite() {
            return None;
        }
        if fh.signum() != flo.signum() {
            return brent(&f, lo, hi, xtol);
        }
        hi = lo + 2.0 * (hi - lo);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let r = brent(|x| x * x - 2.0, 0.0, 2.0, 1e-15).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
        assert!(brent(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_none());
        let r = bracket_up(|x| x.ln() - 3.0, 1.0, 2.0, 1e-14).unwrap();
        assert!((r - 3f64.exp()).abs() < 1e-12);
    }
}
