//! The hyperbolic transport equation
//! `tau*u_tt + A*u*u_x + B*u_t - kappa*u_xx = sum lambda_nu * u^nu`
//! and its travelling frames.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::symcore::{rational, Assignment, EvalError, ParamPoly, Rational, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate frame: tau*v^2 - kappa vanishes")]
    DegenerateFrame,
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

/// Reaction exponent, one of `0, 1/2, 1, 3/2, 2, 3`, stored as twice its
/// value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(u8);

impl HalfInt {
    pub const ALLOWED_TWICE: [u8; 6] = [0, 1, 2, 3, 4, 6];

    pub fn from_twice(n: u8) -> Option<Self> {
        Self::ALLOWED_TWICE.contains(&n).then_some(HalfInt(n))
    }

    pub fn integer(n: u8) -> Option<Self> {
        Self::from_twice(n.checked_mul(2)?)
    }

    pub fn twice(self) -> u32 {
        self.0 as u32
    }

    pub fn is_half(self) -> bool {
        self.0 % 2 == 1
    }

    pub fn parse(text: &str) -> Option<Self> {
        let q = rational::parse(text)?;
        let twice = q * rational::int(2);
        if !rational::is_integer(&twice) || twice.is_negative() {
            return None;
        }
        let n: u8 = twice.to_integer().try_into().ok()?;
        Self::from_twice(n)
    }

    pub fn as_rational(self) -> Rational {
        rational::ratio(self.0 as i64, 2)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// An equation coefficient: a number or a named parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coef {
    Num(Rational),
    Sym(String),
}

impl Coef {
    pub fn int(n: i64) -> Self {
        Coef::Num(rational::int(n))
    }

    pub fn sym(name: &str) -> Self {
        Coef::Sym(name.to_string())
    }

    pub fn to_poly(&self) -> ParamPoly {
        match self {
            Coef::Num(q) => ParamPoly::constant(q.clone()),
            Coef::Sym(s) => ParamPoly::var(s),
        }
    }

    pub fn as_num(&self) -> Option<&Rational> {
        match self {
            Coef::Num(q) => Some(q),
            Coef::Sym(_) => None,
        }
    }

    /// True only for a numeric zero; a symbol may take any value.
    pub fn is_zero(&self) -> bool {
        matches!(self, Coef::Num(q) if q.is_zero())
    }

    pub fn value(&self, point: &Assignment) -> Result<Value, EvalError> {
        match self {
            Coef::Num(q) => Ok(Value::Exact(q.clone())),
            Coef::Sym(s) => point
                .get(s)
                .cloned()
                .ok_or_else(|| EvalError::MissingParameter(s.clone())),
        }
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coef::Num(q) => f.write_str(&rational::format(q)),
            Coef::Sym(s) => f.write_str(s),
        }
    }
}

/// `tau*u_tt + A*u*u_x + B*u_t - kappa*u_xx = sum lambda_nu * u^nu`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperbolicPDE {
    pub tau: Coef,
    pub a: Coef,
    pub b: Coef,
    pub kappa: Coef,
    pub reaction: BTreeMap<HalfInt, Coef>,
}

impl HyperbolicPDE {
    pub fn new(
        tau: Coef,
        a: Coef,
        b: Coef,
        kappa: Coef,
        reaction: BTreeMap<HalfInt, Coef>,
    ) -> Result<Self, ModelError> {
        for (name, c) in [("tau", &tau), ("A", &a), ("B", &b), ("kappa", &kappa)] {
            if let Coef::Num(q) = c {
                if q.is_negative() {
                    return Err(ModelError::Domain(format!("{name} must be non-negative")));
                }
            }
        }
        if [&tau, &a, &b, &kappa].iter().all(|c| c.is_zero()) {
            return Err(ModelError::Domain(
                "at least one of tau, A, B, kappa must be nonzero".to_string(),
            ));
        }
        for c in reaction.values() {
            if let Coef::Sym(s) = c {
                if s == crate::symcore::E_VAR {
                    return Err(ModelError::Domain("`E` is reserved".to_string()));
                }
            }
        }
        Ok(HyperbolicPDE {
            tau,
            a,
            b,
            kappa,
            reaction,
        })
    }

    pub fn has_half_integer(&self) -> bool {
        self.reaction.keys().any(|k| k.is_half())
    }

    pub fn is_numeric(&self) -> bool {
        [&self.tau, &self.a, &self.b, &self.kappa]
            .into_iter()
            .chain(self.reaction.values())
            .all(|c| c.as_num().is_some())
    }

    /// Named parameters used by the equation.
    pub fn symbols(&self) -> Vec<String> {
        let mut out: Vec<String> = [&self.tau, &self.a, &self.b, &self.kappa]
            .into_iter()
            .chain(self.reaction.values())
            .filter_map(|c| match c {
                Coef::Sym(s) => Some(s.clone()),
                Coef::Num(_) => None,
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Float coefficients at a point.
    pub fn bind(&self, point: &Assignment) -> Result<BoundPDE, EvalError> {
        Ok(BoundPDE {
            tau: self.tau.value(point)?.to_f64(),
            a: self.a.value(point)?.to_f64(),
            b: self.b.value(point)?.to_f64(),
            kappa: self.kappa.value(point)?.to_f64(),
            reaction: self
                .reaction
                .iter()
                .map(|(k, c)| c.value(point).map(|v| (*k, v.to_f64())))
                .collect::<Result<_, _>>()?,
        })
    }
}

impl fmt::Display for HyperbolicPDE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})*u_tt + ({})*u*u_x + ({})*u_t - ({})*u_xx = ",
            self.tau, self.a, self.b, self.kappa
        )?;
        if self.reaction.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.reaction.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*u^{k}")?;
        }
        Ok(())
    }
}

/// Float form of a fully specified equation.
#[derive(Debug, Clone)]
pub struct BoundPDE {
    pub tau: f64,
    pub a: f64,
    pub b: f64,
    pub kappa: f64,
    pub reaction: Vec<(HalfInt, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `xi = x + v t`
    Plus,
    /// `omega = x - D t`
    Minus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TravelFrame {
    pub symbol: String,
    pub velocity: Value,
    pub orientation: Orientation,
}

impl TravelFrame {
    pub fn xi(velocity: Value) -> Self {
        TravelFrame {
            symbol: "xi".to_string(),
            velocity,
            orientation: Orientation::Plus,
        }
    }

    pub fn omega(speed: Value) -> Self {
        TravelFrame {
            symbol: "omega".to_string(),
            velocity: speed,
            orientation: Orientation::Minus,
        }
    }

    pub fn coordinate(&self, x: f64, t: f64) -> f64 {
        let v = self.velocity.to_f64();
        match self.orientation {
            Orientation::Plus => x + v * t,
            Orientation::Minus => x - v * t,
        }
    }
}

/// `phi' = +-sqrt(c0 + c1 u + c2 u^2 + c3 u^3 + c4 u^4)` after one
/// integration of the `A = B = 0` equation in the frame `xi = x + v t`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuarticReduction {
    pub c0: Rational,
    pub c1: Rational,
    pub c2: Rational,
    pub c3: Rational,
    pub c4: Rational,
    /// `tau v^2 - kappa`
    pub h: Rational,
}

pub fn quartic_reduction(
    pde: &HyperbolicPDE,
    v: &Rational,
    c0: &Rational,
) -> Result<QuarticReduction, ModelError> {
    let num = |c: &Coef, name: &str| {
        c.as_num()
            .cloned()
            .ok_or_else(|| ModelError::NotApplicable(format!("{name} must be numeric")))
    };
    if !pde.a.is_zero() || !pde.b.is_zero() {
        return Err(ModelError::NotApplicable("requires A = B = 0".to_string()));
    }
    let tau = num(&pde.tau, "tau")?;
    let kappa = num(&pde.kappa, "kappa")?;
    let mut lam = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
    for (k, c) in &pde.reaction {
        if k.is_half() || k.twice() > 6 {
            return Err(ModelError::NotApplicable(
                "reaction exponents must lie in {0, 1, 2, 3}".to_string(),
            ));
        }
        lam[(k.twice() / 2) as usize] = num(c, "reaction coefficient")?;
    }
    let h = &tau * v * v - &kappa;
    if h.is_zero() {
        return Err(ModelError::DegenerateFrame);
    }
    let two = rational::int(2);
    let three = rational::int(3);
    Ok(QuarticReduction {
        c0: c0.clone(),
        c1: &two * &lam[0] / &h,
        c2: &lam[1] / &h,
        c3: &two * &lam[2] / (&three * &h),
        c4: &lam[3] / (&two * &h),
        h,
    })
}
