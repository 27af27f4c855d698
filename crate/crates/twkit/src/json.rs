//! JSON value conventions shared by every document.
//!
//! Exact rationals are strings (`"7/8"`, `"-3"`); floats are numbers
//! written with 17 significant digits; non-finite floats are `null`.

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Number;
use twkit_core::symcore::rational;
use twkit_core::{Rational, Value};

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn float_text(x: f64) -> String {
    format!("{x:.16e}")
}

/// A float written losslessly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let n: Number = float_text(self.0).parse().map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Null => Ok(Real(f64::NAN)),
            serde_json::Value::Number(n) => n
                .to_string()
                .parse()
                .map(Real)
                .map_err(|_| de::Error::custom(format!("{n} is not a float"))),
            other => Err(de::Error::custom(format!("expected a number, got {other}"))),
        }
    }
}

/// An exact rational. Written as a string; read from a string (`p/q` or a
/// decimal) or a JSON number taken digit for digit.
#[derive(Debug, Clone, PartialEq)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational::format(&self.0))
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let q = match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) => rational::parse(&s),
            serde_json::Value::Number(n) => number_to_rational(&n),
            other => return Err(de::Error::custom(format!("expected a rational, got {other}"))),
        };
        q.map(Exact).ok_or_else(|| de::Error::custom("not a rational"))
    }
}

/// Exact value or float: a string or a number respectively.
#[derive(Debug, Clone, PartialEq)]
pub struct Scalar(pub Value);

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match &self.0 {
            Value::Exact(q) => Exact(q.clone()).serialize(s),
            Value::Approx(x) => Real(*x).serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) => rational::parse(&s)
                .map(|q| Scalar(Value::Exact(q)))
                .ok_or_else(|| de::Error::custom(format!("`{s}` is not a rational"))),
            v @ (serde_json::Value::Number(_) | serde_json::Value::Null) => {
                Real::deserialize(v).map(|r| Scalar(Value::Approx(r.0))).map_err(de::Error::custom)
            }
            other => Err(de::Error::custom(format!("expected a string or number, got {other}"))),
        }
    }
}

/// Exact rational from the text of a JSON number.
pub fn number_to_rational(n: &Number) -> Option<Rational> {
    rational::parse(&n.to_string())
}

/// A rational as a JSON number when it has a terminating decimal
/// expansion, as a `"p/q"` string otherwise.
pub fn rational_to_json(q: &Rational) -> serde_json::Value {
    match rational::to_decimal(q).and_then(|s| s.parse::<Number>().ok()) {
        Some(n) => serde_json::Value::Number(n),
        None => serde_json::Value::String(rational::format(q)),
    }
}

/// Pretty JSON with a trailing newline.
pub fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}
