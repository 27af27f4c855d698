//! Sparse multivariate polynomials over [`Rational`] in named parameters.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{self, Rational};
use super::value::{Assignment, Value};
use super::EvalError;

/// Exponent vector aligned with the owning polynomial's variable list.
///
/// Ordered graded-lexicographically: total degree first, then the
/// exponent of the first variable, then the second, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial with exact rational coefficients.
///
/// The variable list is kept sorted by name and contains only variables
/// that occur in some term; zero coefficients are never stored. Two
/// polynomials are therefore equal iff their representations are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Default for ParamPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(Vec::new()), c);
        }
        ParamPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rational::int(n))
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(Rational::one(), &[(name, 1)])
    }

    /// `c * prod(name^exp)`; repeated names multiply.
    pub fn monomial(c: Rational, powers: &[(&str, u32)]) -> Self {
        let mut p = Self::constant(c);
        for (name, e) in powers {
            if *e == 0 {
                continue;
            }
            let mut vars: Vec<String> = vec![name.to_string()];
            let mut terms = BTreeMap::new();
            terms.insert(Monomial(vec![*e]), Rational::one());
            vars.sort();
            p = &p * &ParamPoly { vars, terms };
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 if self.vars.is_empty() => self.terms.values().next().cloned(),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.vars.iter().position(|v| v == name) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Leading term in the canonical order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    /// Re-establishes the representation invariants. Operations already
    /// return normalized values; this is exposed for property checks.
    pub fn normalize(&self) -> ParamPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Self::from_raw(self.vars.clone(), terms)
    }

    fn from_raw(vars: Vec<String>, terms: BTreeMap<Monomial, Rational>) -> ParamPoly {
        let used: Vec<bool> = (0..vars.len())
            .map(|i| terms.keys().any(|m| m.0[i] != 0))
            .collect();
        if used.iter().all(|u| *u) {
            return ParamPoly { vars, terms };
        }
        let vars = vars
            .into_iter()
            .zip(&used)
            .filter(|(_, u)| **u)
            .map(|(v, _)| v)
            .collect();
        let terms = terms
            .into_iter()
            .map(|(m, c)| {
                let e = m.0.into_iter().zip(&used).filter(|(_, u)| **u).map(|(e, _)| e).collect();
                (Monomial(e), c)
            })
            .collect();
        ParamPoly { vars, terms }
    }

    fn lifted(&self, universe: &[String]) -> BTreeMap<Monomial, Rational> {
        if self.vars.as_slice() == universe {
            return self.terms.clone();
        }
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| universe.binary_search(v).expect("variable in universe"))
            .collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; universe.len()];
                for (k, &i) in idx.iter().enumerate() {
                    e[i] = m.0[k];
                }
                (Monomial(e), c.clone())
            })
            .collect()
    }

    fn universe(&self, other: &ParamPoly) -> Vec<String> {
        if self.vars == other.vars {
            return self.vars.clone();
        }
        let mut u: Vec<String> = self.vars.iter().chain(other.vars.iter()).cloned().collect();
        u.sort();
        u.dedup();
        u
    }

    fn combine(&self, other: &ParamPoly, negate: bool) -> ParamPoly {
        let universe = self.universe(other);
        let mut terms = self.lifted(&universe);
        for (m, c) in other.lifted(&universe) {
            let c = if negate { -c } else { c };
            match terms.get_mut(&m) {
                Some(acc) => {
                    *acc += c;
                    if acc.is_zero() {
                        terms.remove(&m);
                    }
                }
                None => {
                    terms.insert(m, c);
                }
            }
        }
        Self::from_raw(universe, terms)
    }

    fn product(&self, other: &ParamPoly) -> ParamPoly {
        if self.is_zero() || other.is_zero() {
            return ParamPoly::zero();
        }
        let universe = self.universe(other);
        let a = self.lifted(&universe);
        let b = other.lifted(&universe);
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                let e: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                let c = ca * cb;
                let m = Monomial(e);
                match terms.get_mut(&m) {
                    Some(acc) => *acc += c,
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Self::from_raw(universe, terms)
    }

    pub fn scale(&self, c: &Rational) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> ParamPoly {
        let mut acc = ParamPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, name: &str) -> ParamPoly {
        let Some(i) = self.vars.iter().position(|v| v == name) else {
            return ParamPoly::zero();
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut ex = m.0.clone();
            ex[i] -= 1;
            terms.insert(Monomial(ex), c * rational::int(e as i64));
        }
        Self::from_raw(self.vars.clone(), terms)
    }

    /// Exact division by a single-term polynomial, if every term is
    /// divisible.
    pub fn div_monomial(&self, divisor: &ParamPoly) -> Option<ParamPoly> {
        if !divisor.is_monomial() {
            return None;
        }
        let universe = self.universe(divisor);
        let (dm, dc) = divisor.lifted(&universe).into_iter().next()?;
        let mut terms = BTreeMap::new();
        for (m, c) in self.lifted(&universe) {
            let mut e = Vec::with_capacity(universe.len());
            for (x, y) in m.0.iter().zip(&dm.0) {
                if x < y {
                    return None;
                }
                e.push(x - y);
            }
            terms.insert(Monomial(e), c / &dc);
        }
        Some(Self::from_raw(universe, terms))
    }

    /// Substitutes exact values for some variables.
    pub fn substitute(&self, values: &BTreeMap<String, Rational>) -> ParamPoly {
        let hits: Vec<Option<&Rational>> = self.vars.iter().map(|v| values.get(v)).collect();
        if hits.iter().all(Option::is_none) {
            return self.clone();
        }
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut c = c.clone();
            let mut e = m.0.clone();
            for (i, h) in hits.iter().enumerate() {
                if let Some(x) = h {
                    if e[i] > 0 {
                        c *= num_traits::pow((*x).clone(), e[i] as usize);
                        e[i] = 0;
                    }
                }
            }
            if c.is_zero() {
                continue;
            }
            let m = Monomial(e);
            match terms.get_mut(&m) {
                Some(acc) => *acc += c,
                None => {
                    terms.insert(m, c);
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Self::from_raw(self.vars.clone(), terms)
    }

    /// Evaluates at a point; exact iff every used value is exact.
    pub fn evaluate(&self, point: &Assignment) -> Result<Value, EvalError> {
        let vals: Vec<&Value> = self
            .vars
            .iter()
            .map(|v| point.get(v).ok_or_else(|| EvalError::MissingParameter(v.clone())))
            .collect::<Result<_, _>>()?;
        if vals.iter().all(|v| v.is_exact()) {
            let xs: Vec<&Rational> = vals.iter().filter_map(|v| v.as_exact()).collect();
            let mut acc = Rational::zero();
            for (m, c) in &self.terms {
                let mut t = c.clone();
                for (x, e) in xs.iter().zip(&m.0) {
                    if *e > 0 {
                        t *= num_traits::pow((*x).clone(), *e as usize);
                    }
                }
                acc += t;
            }
            Ok(Value::Exact(acc))
        } else {
            let xs: Vec<f64> = vals.iter().map(|v| v.to_f64()).collect();
            Ok(Value::Approx(self.eval_f64_slice(&xs)))
        }
    }

    /// Float evaluation with values aligned to [`ParamPoly::vars`].
    pub fn eval_f64_slice(&self, xs: &[f64]) -> f64 {
        #[allow(unused_imports)]
        use num_traits::Float;
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = rational::to_f64(c);
            for (x, e) in xs.iter().zip(&m.0) {
                if *e > 0 {
                    t *= x.powi(*e as i32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Sum of absolute term values at a float point; the natural scale for
    /// judging a float residual of this polynomial.
    pub fn abs_term_sum(&self, point: &Assignment) -> Result<f64, EvalError> {
        #[allow(unused_imports)]
        use num_traits::Float;
        let xs: Vec<f64> = self
            .vars
            .iter()
            .map(|v| {
                point
                    .get(v)
                    .map(Value::to_f64)
                    .ok_or_else(|| EvalError::MissingParameter(v.clone()))
            })
            .collect::<Result<_, _>>()?;
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = rational::to_f64(c).abs();
            for (x, e) in xs.iter().zip(&m.0) {
                t *= x.abs().powi(*e as i32);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Compiles to a flat float form for repeated evaluation over a fixed
    /// variable order.
    pub fn compile(&self, order: &[String]) -> CompiledPoly {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| order.iter().position(|o| o == v).expect("variable in order"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let powers = idx
                    .iter()
                    .zip(&m.0)
                    .filter(|(_, e)| **e > 0)
                    .map(|(i, e)| (*i, *e))
                    .collect();
                (rational::to_f64(c), powers)
            })
            .collect();
        CompiledPoly { terms }
    }

    /// Splits `self` as a polynomial in `name` with coefficients free of it.
    pub fn coefficients_in(&self, name: &str) -> Vec<ParamPoly> {
        let Some(i) = self.vars.iter().position(|v| v == name) else {
            return vec![self.clone()];
        };
        let deg = self.degree_in(name) as usize;
        let mut parts: Vec<BTreeMap<Monomial, Rational>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[i] as usize;
            e[i] = 0;
            parts[k].insert(Monomial(e), c.clone());
        }
        parts
            .into_iter()
            .map(|t| Self::from_raw(self.vars.clone(), t))
            .collect()
    }

    /// Multiplies by `name^k`.
    pub fn times_var_pow(&self, name: &str, k: u32) -> ParamPoly {
        if k == 0 {
            return self.clone();
        }
        self * &ParamPoly::monomial(Rational::one(), &[(name, k)])
    }

    fn fmt_monomial(&self, m: &Monomial, out: &mut String) {
        let mut first = true;
        for (v, e) in self.vars.iter().zip(&m.0) {
            if *e == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            out.push_str(v);
            if *e > 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
    }
}

/// Float evaluation form produced by [`ParamPoly::compile`].
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    terms: Vec<(f64, Vec<(usize, u32)>)>,
}

impl CompiledPoly {
    pub fn eval(&self, x: &[f64]) -> f64 {
        #[allow(unused_imports)]
        use num_traits::Float;
        self.terms
            .iter()
            .map(|(c, p)| p.iter().fold(*c, |t, (i, e)| t * x[*i].powi(*e as i32)))
            .sum()
    }
}

impl fmt::Display for ParamPoly {
    /// Canonical text: terms in descending graded-lex order, rationals as
    /// `p/q`, powers as `x^k`, products with `*`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            let constant = m.degree() == 0;
            if constant || !mag.is_one() {
                out.push_str(&rational::format(&mag));
                if !constant {
                    out.push('*');
                }
            }
            self.fmt_monomial(m, &mut out);
        }
        f.write_str(&out)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&ParamPoly> for &ParamPoly {
            type Output = ParamPoly;
            fn $method(self, rhs: &ParamPoly) -> ParamPoly {
                let f: fn(&ParamPoly, &ParamPoly) -> ParamPoly = $body;
                f(self, rhs)
            }
        }
        impl $tr<ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $method(self, rhs: ParamPoly) -> ParamPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $method(self, rhs: &ParamPoly) -> ParamPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.combine(b, false));
forward_binop!(Sub, sub, |a, b| a.combine(b, true));
forward_binop!(Mul, mul, |a, b| a.product(b));

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}

impl From<Rational> for ParamPoly {
    fn from(c: Rational) -> Self {
        ParamPoly::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::rational::{int, ratio};

    fn x() -> ParamPoly {
        ParamPoly::var("x")
    }

    #[test]
    fn difference_of_squares() {
        let p = &(x() + ParamPoly::one()) * &(x() - ParamPoly::one());
        assert_eq!(p, &x().pow(2) - &ParamPoly::one());
        assert_eq!(p.to_string(), "x^2 - 1");
    }

    #[test]
    fn two_mode_product() {
        let (a1, a0, b1, b0, e) = (
            ParamPoly::var("a1"),
            ParamPoly::var("a0"),
            ParamPoly::var("b1"),
            ParamPoly::var("b0"),
            ParamPoly::var("E"),
        );
        let lhs = &(&a1 * &e + a0.clone()) * &(&b1 * &e + b0.clone());
        let rhs = &(&a1 * &b1) * &e.pow(2) + &(&(&a1 * &b0) + &(&a0 * &b1)) * &e + &a0 * &b0;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cancellation_drops_variables() {
        let p = &(x() + ParamPoly::var("y")) - &ParamPoly::var("y");
        assert_eq!(p.vars(), ["x".to_string()]);
        assert!((&x() - &x()).is_zero());
        assert!((&x() - &x()).vars().is_empty());
    }

    #[test]
    fn evaluation() {
        let p = &x().pow(2) - &ParamPoly::one();
        let mut pt = Assignment::new();
        pt.insert("x".into(), Value::int(3));
        assert_eq!(p.evaluate(&pt).unwrap(), Value::int(8));
        pt.insert("x".into(), Value::Approx(0.5));
        assert_eq!(p.evaluate(&pt).unwrap(), Value::Approx(-0.75));
        let q = ParamPoly::var("zz");
        assert_eq!(
            q.evaluate(&pt),
            Err(EvalError::MissingParameter("zz".into()))
        );
    }

    #[test]
    fn canonical_text_order() {
        let p = ParamPoly::monomial(ratio(-3, 2), &[("a0", 2), ("b1", 1)])
            + ParamPoly::monomial(int(1), &[("alpha", 1), ("v", 1)])
            + ParamPoly::int(-1)
            + ParamPoly::var("a0");
        assert_eq!(p.to_string(), "-3/2*a0^2*b1 + alpha*v + a0 - 1");
    }

    #[test]
    fn monomial_division() {
        let p = ParamPoly::monomial(int(6), &[("a", 2), ("b", 1)]) + ParamPoly::monomial(int(4), &[("a", 1), ("b", 3)]);
        let d = ParamPoly::monomial(int(2), &[("a", 1), ("b", 1)]);
        let q = p.div_monomial(&d).unwrap();
        assert_eq!(&q * &d, p);
        assert!(p.div_monomial(&ParamPoly::var("c")).is_none());
        assert!(p.div_monomial(&(ParamPoly::var("a") + ParamPoly::one())).is_none());
    }

    #[test]
    fn derivative_and_substitution() {
        let p = ParamPoly::monomial(int(3), &[("x", 2), ("y", 1)]) + ParamPoly::var("y");
        assert_eq!(p.derivative("x"), ParamPoly::monomial(int(6), &[("x", 1), ("y", 1)]));
        let mut vals = BTreeMap::new();
        vals.insert("y".to_string(), int(2));
        assert_eq!(p.substitute(&vals), ParamPoly::monomial(int(6), &[("x", 2)]) + ParamPoly::int(2));
        let parts = p.coefficients_in("x");
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], ParamPoly::var("y"));
        assert!(parts[1].is_zero());
    }
}
