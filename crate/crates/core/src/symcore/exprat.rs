//! Polynomials and rational functions in `E = exp(alpha * xi)` with
//! [`ParamPoly`] coefficients.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;
use num_traits::One;

use super::poly::ParamPoly;
use super::rational::{self, Rational};
use super::value::{Assignment, Value};
use super::{EvalError, SymError};

/// Name used for the exponential variable in text forms.
pub const E_VAR: &str = "E";

/// Dense polynomial in `E`; `coeffs[k]` multiplies `E^k`. Trailing zero
/// coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EPoly {
    coeffs: Vec<ParamPoly>,
}

impl EPoly {
    pub fn zero() -> Self {
        EPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ParamPoly::one())
    }

    pub fn constant(c: ParamPoly) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `E`.
    pub fn e() -> Self {
        Self::from_coeffs(vec![ParamPoly::zero(), ParamPoly::one()])
    }

    pub fn from_coeffs(coeffs: Vec<ParamPoly>) -> Self {
        let mut p = EPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(ParamPoly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `E`; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[ParamPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ParamPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    fn shift_down(&self, m: usize) -> EPoly {
        EPoly::from_coeffs(self.coeffs[m.min(self.coeffs.len())..].to_vec())
    }

    pub fn scale(&self, c: &ParamPoly) -> EPoly {
        EPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &EPoly) -> EPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        EPoly::from_coeffs((0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &EPoly) -> EPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        EPoly::from_coeffs((0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect())
    }

    pub fn neg(&self) -> EPoly {
        EPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &EPoly) -> EPoly {
        if self.is_zero() || other.is_zero() {
            return EPoly::zero();
        }
        let mut out = vec![ParamPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        EPoly::from_coeffs(out)
    }

    pub fn pow(&self, k: u32) -> EPoly {
        let mut acc = EPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `d/dxi` under `dE/dxi = alpha * E`: maps `c_k E^k` to
    /// `k * alpha * c_k E^k`.
    pub fn d_xi(&self, alpha: &str) -> EPoly {
        let a = ParamPoly::var(alpha);
        EPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let c = c.scale(&rational::int(k as i64));
                    if c.is_zero() {
                        c
                    } else {
                        &c * &a
                    }
                })
                .collect(),
        )
    }

    /// Exact quotient, attempted only when the divisor's top coefficient is
    /// a single term.
    pub fn div_exact(&self, d: &EPoly) -> Option<EPoly> {
        let lc = d.coeffs.last()?;
        if !lc.is_monomial() {
            return None;
        }
        if self.is_zero() {
            return Some(EPoly::zero());
        }
        let dd = d.degree();
        if self.degree() < dd {
            return None;
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![ParamPoly::zero(); self.degree() - dd + 1];
        while let Some(top) = r.last() {
            if top.is_zero() {
                r.pop();
                continue;
            }
            if r.len() - 1 < dd {
                return None;
            }
            let k = r.len() - 1 - dd;
            let c = top.div_monomial(lc)?;
            for (i, di) in d.coeffs.iter().enumerate() {
                r[i + k] = &r[i + k] - &(&c * di);
            }
            debug_assert!(r.last().is_some_and(ParamPoly::is_zero));
            r.pop();
            q[k] = c;
        }
        Some(EPoly::from_coeffs(q))
    }

    pub fn evaluate(&self, point: &Assignment, e: &Value) -> Result<Value, EvalError> {
        let mut acc = Value::int(0);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(e).add(&c.evaluate(point)?);
        }
        Ok(acc)
    }

    /// Float coefficients at a point.
    pub fn bind(&self, point: &Assignment) -> Result<Vec<f64>, EvalError> {
        self.coeffs
            .iter()
            .map(|c| c.evaluate(point).map(|v| v.to_f64()))
            .collect()
    }

    /// The same polynomial with `E` as an ordinary variable.
    pub fn to_param_poly(&self) -> ParamPoly {
        let mut acc = ParamPoly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            acc = &acc + &c.times_var_pow(E_VAR, k as u32);
        }
        acc
    }

    pub fn from_param_poly(p: &ParamPoly) -> EPoly {
        EPoly::from_coeffs(p.coefficients_in(E_VAR))
    }

    /// Splits `self = scale * E^shift * rest` with `rest` having a nonzero
    /// constant term and a unit leading rational coefficient. `rest` is
    /// `None` when it would be the constant one.
    fn split(&self) -> (Rational, usize, Option<EPoly>) {
        let shift = self.low_order();
        let rest = self.shift_down(shift);
        if rest.degree() == 0 {
            if let Some(c) = rest.coeff(0).as_constant() {
                return (c, shift, None);
            }
        }
        let c = rest.coeffs.last().map(ParamPoly::leading_coefficient).unwrap_or_else(Rational::one);
        let inv = c.recip();
        let rest = EPoly::from_coeffs(rest.coeffs.iter().map(|x| x.scale(&inv)).collect());
        (c, shift, Some(rest))
    }
}

impl fmt::Display for EPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_param_poly(), f)
    }
}

/// Rational function `num / prod(factor^mult)` in `E`.
///
/// Denominator factors are kept apart so that differentiation only raises
/// each multiplicity by one. Equality is mathematical (the difference
/// over a common denominator vanishes), not structural.
#[derive(Clone, Debug)]
pub struct ExpRational {
    num: EPoly,
    den: Vec<(EPoly, u32)>,
}

impl ExpRational {
    pub fn new(num: EPoly, den: EPoly) -> Result<Self, SymError> {
        if den.is_zero() {
            return Err(SymError::ZeroDenominator);
        }
        let mut r = ExpRational::from_epoly(num);
        r.push_factor(&den, 1);
        Ok(r)
    }

    pub fn from_epoly(num: EPoly) -> Self {
        ExpRational {
            num,
            den: Vec::new(),
        }
    }

    pub fn constant(c: ParamPoly) -> Self {
        Self::from_epoly(EPoly::constant(c))
    }

    /// `num / den^power`.
    pub fn with_power(num: EPoly, den: EPoly, power: u32) -> Result<Self, SymError> {
        if den.is_zero() {
            return Err(SymError::ZeroDenominator);
        }
        let mut r = ExpRational::from_epoly(num);
        r.push_factor(&den, power);
        Ok(r)
    }

    fn push_factor(&mut self, f: &EPoly, k: u32) {
        if k == 0 {
            return;
        }
        let (scale, shift, rest) = f.split();
        if !scale.is_one() {
            let inv = rational::powi(&scale, -(k as i32));
            self.num = self.num.scale(&ParamPoly::constant(inv));
        }
        if shift > 0 {
            self.bump(EPoly::e(), k * shift as u32);
        }
        if let Some(rest) = rest {
            self.bump(rest, k);
        }
    }

    fn bump(&mut self, f: EPoly, k: u32) {
        match self.den.iter_mut().find(|(g, _)| *g == f) {
            Some((_, m)) => *m += k,
            None => self.den.push((f, k)),
        }
    }

    pub fn numerator(&self) -> &EPoly {
        &self.num
    }

    pub fn factors(&self) -> &[(EPoly, u32)] {
        &self.den
    }

    /// Expanded denominator.
    pub fn denominator(&self) -> EPoly {
        self.den
            .iter()
            .fold(EPoly::one(), |acc, (f, k)| acc.mul(&f.pow(*k)))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn neg(&self) -> ExpRational {
        ExpRational {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &ExpRational) -> ExpRational {
        let mut out = ExpRational {
            num: self.num.mul(&other.num),
            den: self.den.clone(),
        };
        for (f, k) in &other.den {
            out.bump(f.clone(), *k);
        }
        out
    }

    pub fn add(&self, other: &ExpRational) -> ExpRational {
        let mut den: Vec<(EPoly, u32)> = self.den.clone();
        for (f, k) in &other.den {
            match den.iter_mut().find(|(g, _)| g == f) {
                Some((_, m)) => *m = (*m).max(*k),
                None => den.push((f.clone(), *k)),
            }
        }
        let lift = |r: &ExpRational| {
            den.iter().fold(r.num.clone(), |acc, (f, k)| {
                let have = r.den.iter().find(|(g, _)| g == f).map_or(0, |(_, m)| *m);
                acc.mul(&f.pow(k - have))
            })
        };
        let num = lift(self).add(&lift(other));
        ExpRational { num, den }
    }

    pub fn sub(&self, other: &ExpRational) -> ExpRational {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &ParamPoly) -> ExpRational {
        ExpRational {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> ExpRational {
        ExpRational {
            num: self.num.pow(k),
            den: self.den.iter().map(|(f, m)| (f.clone(), m * k)).collect(),
        }
    }

    pub fn div(&self, other: &ExpRational) -> Result<ExpRational, SymError> {
        if other.num.is_zero() {
            return Err(SymError::ZeroDenominator);
        }
        let mut out = ExpRational {
            num: other
                .den
                .iter()
                .fold(self.num.clone(), |acc, (f, k)| acc.mul(&f.pow(*k))),
            den: self.den.clone(),
        };
        out.push_factor(&other.num, 1);
        Ok(out)
    }

    /// `d/dxi` with `dE/dxi = alpha * E`, returned in reduced form.
    pub fn differentiate_xi(&self, alpha: &str) -> ExpRational {
        let full = self.den.iter().fold(EPoly::one(), |acc, (f, _)| acc.mul(f));
        let mut num = self.num.d_xi(alpha).mul(&full);
        for (i, (f, k)) in self.den.iter().enumerate() {
            let others = self
                .den
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(EPoly::one(), |acc, (_, (g, _))| acc.mul(g));
            let term = self
                .num
                .mul(&f.d_xi(alpha))
                .mul(&others)
                .scale(&ParamPoly::int(*k as i64));
            num = num.sub(&term);
        }
        let den = self.den.iter().map(|(f, k)| (f.clone(), k + 1)).collect();
        ExpRational { num, den }.reduced()
    }

    /// Cancels powers of `E` and whole factors that divide the numerator
    /// exactly.
    pub fn reduced(&self) -> ExpRational {
        if self.num.is_zero() {
            return ExpRational::from_epoly(EPoly::zero());
        }
        let mut num = self.num.clone();
        let mut den = Vec::with_capacity(self.den.len());
        for (f, k) in &self.den {
            let mut k = *k;
            if *f == EPoly::e() {
                let m = (num.low_order() as u32).min(k);
                num = num.shift_down(m as usize);
                k -= m;
            } else {
                while k > 0 {
                    match num.div_exact(f) {
                        Some(q) => {
                            num = q;
                            k -= 1;
                        }
                        None => break,
                    }
                }
            }
            if k > 0 {
                den.push((f.clone(), k));
            }
        }
        ExpRational { num, den }
    }

    pub fn evaluate(&self, point: &Assignment, e: &Value) -> Result<Value, EvalError> {
        let n = self.num.evaluate(point, e)?;
        let d = self.denominator_value(point, e)?;
        n.div(&d).ok_or(EvalError::DivisionByZero)
    }

    fn denominator_value(&self, point: &Assignment, e: &Value) -> Result<Value, EvalError> {
        let mut d = Value::int(1);
        for (f, k) in &self.den {
            d = d.mul(&f.evaluate(point, e)?.powi(*k));
        }
        Ok(d)
    }

    /// Float form for repeated evaluation at many points.
    pub fn bind(&self, point: &Assignment) -> Result<BoundRational, EvalError> {
        Ok(BoundRational {
            num: self.num.bind(point)?,
            den: self
                .den
                .iter()
                .map(|(f, k)| f.bind(point).map(|c| (c, *k)))
                .collect::<Result<_, _>>()?,
        })
    }

    /// Variables other than `E` that occur.
    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .num
            .coeffs()
            .iter()
            .chain(self.den.iter().flat_map(|(f, _)| f.coeffs().iter()))
            .flat_map(|c| c.vars().iter().cloned())
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

impl PartialEq for ExpRational {
    fn eq(&self, other: &ExpRational) -> bool {
        self.sub(other).num.is_zero()
    }
}

impl fmt::Display for ExpRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/({})", self.num, self.denominator())
    }
}

/// An [`ExpRational`] with float coefficients, evaluated stably at
/// `ln E`: for `|E| > 1` every polynomial is evaluated in `1/E`.
#[derive(Clone, Debug)]
pub struct BoundRational {
    num: Vec<f64>,
    den: Vec<(Vec<f64>, u32)>,
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * x + a)
}

fn deg(c: &[f64]) -> i64 {
    c.len().saturating_sub(1) as i64
}

impl BoundRational {
    pub fn eval(&self, log_e: f64) -> f64 {
        if log_e <= 0.0 {
            let e = log_e.exp();
            let d: f64 = self
                .den
                .iter()
                .map(|(f, k)| horner(f, e).powi(*k as i32))
                .product();
            return horner(&self.num, e) / d;
        }
        let x = (-log_e).exp();
        let rev = |c: &[f64]| -> f64 { c.iter().fold(0.0, |acc, a| acc * x + a) };
        let mut shift = deg(&self.num);
        let mut d = 1.0;
        for (f, k) in &self.den {
            shift -= deg(f) * *k as i64;
            d *= rev(f).powi(*k as i32);
        }
        rev(&self.num) / d * (shift as f64 * log_e).exp()
    }

    /// Sign of the denominator at `ln E`.
    pub fn den_sign(&self, log_e: f64) -> f64 {
        let e = log_e.exp();
        let x = (-log_e).exp();
        let mut s = 1.0;
        for (f, k) in &self.den {
            let v = if log_e <= 0.0 {
                horner(f, e)
            } else {
                f.iter().fold(0.0, |acc, a| acc * x + a)
            };
            if k % 2 == 1 {
                s *= v.signum();
            }
            if v == 0.0 {
                return 0.0;
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::rational::{int, ratio};

    fn p(s: &str) -> ParamPoly {
        ParamPoly::var(s)
    }

    fn epoly(c: &[ParamPoly]) -> EPoly {
        EPoly::from_coeffs(c.to_vec())
    }

    #[test]
    fn derivative_of_e_is_alpha_e() {
        let f = ExpRational::from_epoly(EPoly::e());
        let d = f.differentiate_xi("alpha");
        assert_eq!(d, ExpRational::from_epoly(EPoly::e().scale(&p("alpha"))));
    }

    #[test]
    fn quotient_rule_single_pole() {
        let one_plus_e = epoly(&[ParamPoly::one(), ParamPoly::one()]);
        let f = ExpRational::new(EPoly::one(), one_plus_e.clone()).unwrap();
        let d = f.differentiate_xi("alpha");
        let expected = ExpRational::with_power(EPoly::e().scale(&-p("alpha")), one_plus_e, 2).unwrap();
        assert_eq!(d, expected);
        assert_eq!(d.factors().len(), 1);
        assert_eq!(d.factors()[0].1, 2);
    }

    #[test]
    fn derivative_numerator_is_proportional_to_delta() {
        let f = ExpRational::new(epoly(&[p("a0"), p("a1")]), epoly(&[p("b0"), p("b1")])).unwrap();
        let d = f.differentiate_xi("alpha");
        let delta = &(&p("a1") * &p("b0")) - &(&p("a0") * &p("b1"));
        let expected = ExpRational::with_power(
            EPoly::e().scale(&(&p("alpha") * &delta)),
            epoly(&[p("b0"), p("b1")]),
            2,
        )
        .unwrap();
        assert_eq!(d, expected);
        assert_eq!(d.numerator().coeffs().len(), 2);
        assert!(d.numerator().coeff(0).is_zero());
    }

    #[test]
    fn evaluation_and_poles() {
        let f = ExpRational::new(epoly(&[p("a0"), p("a1")]), epoly(&[p("b0"), p("b1")])).unwrap();
        let mut pt = Assignment::new();
        for (k, v) in [("a0", 0), ("a1", 1), ("b0", 1), ("b1", 1)] {
            pt.insert(k.into(), Value::int(v));
        }
        assert_eq!(f.evaluate(&pt, &Value::int(1)).unwrap(), Value::ratio(1, 2));
        pt.insert("b1".into(), Value::int(-1));
        assert_eq!(f.evaluate(&pt, &Value::int(1)), Err(EvalError::DivisionByZero));
    }

    #[test]
    fn exact_division_and_cancellation() {
        let a = epoly(&[p("b0"), p("b1")]);
        let b = epoly(&[ParamPoly::int(2), ParamPoly::int(-1), p("c")]);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        let f = ExpRational::with_power(prod, a.clone(), 3).unwrap().reduced();
        assert_eq!(f.factors(), &[(a.split().2.unwrap(), 2)]);
        let g = ExpRational::new(EPoly::e().mul(&EPoly::e()), EPoly::e()).unwrap().reduced();
        assert!(g.factors().is_empty());
        assert_eq!(g.numerator(), &EPoly::e());
    }

    #[test]
    fn stable_float_evaluation_matches_direct() {
        let f = ExpRational::new(
            epoly(&[ParamPoly::int(1), ParamPoly::int(-3), ParamPoly::constant(ratio(1, 2))]),
            epoly(&[ParamPoly::int(2), ParamPoly::int(1), ParamPoly::int(1)]),
        )
        .unwrap();
        let b = f.bind(&Assignment::new()).unwrap();
        for &t in &[-3.0f64, -0.2, 0.0, 0.7, 4.0] {
            let e = t.exp();
            let direct = (1.0 - 3.0 * e + 0.5 * e * e) / (2.0 + e + e * e);
            assert!((b.eval(t) - direct).abs() < 1e-14, "{t}");
        }
        // Far tail where E^2 would overflow in the direct form.
        assert!((b.eval(400.0) - 0.5).abs() < 1e-14);
        assert_eq!(int(0), int(0));
    }
}
