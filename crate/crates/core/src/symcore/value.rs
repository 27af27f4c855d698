use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;
use core::ops;

#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use super::rational::{self, Rational};

/// A parameter value: exact when it can be, a float otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Approx(f64),
}

/// Values for named parameters.
pub type Assignment = BTreeMap<String, Value>;

impl Value {
    pub fn int(n: i64) -> Self {
        Value::Exact(rational::int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Value::Exact(rational::ratio(n, d))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => rational::to_f64(q),
            Value::Approx(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(q) => Some(q),
            Value::Approx(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Exact(q) => q.is_zero(),
            Value::Approx(x) => *x == 0.0,
        }
    }

    pub fn add(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a + b),
            _ => Value::Approx(self.to_f64() + other.to_f64()),
        }
    }

    pub fn sub(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a - b),
            _ => Value::Approx(self.to_f64() - other.to_f64()),
        }
    }

    pub fn mul(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a * b),
            _ => Value::Approx(self.to_f64() * other.to_f64()),
        }
    }

    /// `None` on division by zero.
    pub fn div(&self, other: &Value) -> Option<Value> {
        if other.is_zero() {
            return None;
        }
        Some(match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a / b),
            _ => Value::Approx(self.to_f64() / other.to_f64()),
        })
    }

    pub fn neg(&self) -> Value {
        match self {
            Value::Exact(q) => Value::Exact(-q),
            Value::Approx(x) => Value::Approx(-x),
        }
    }

    pub fn powi(&self, k: u32) -> Value {
        match self {
            Value::Exact(q) => Value::Exact(num_traits::pow(q.clone(), k as usize)),
            Value::Approx(x) => Value::Approx(x.powi(k as i32)),
        }
    }

    /// Square root; exact when the radicand is an exact rational square.
    pub fn sqrt(&self) -> Option<Value> {
        match self {
            Value::Exact(q) => {
                if let Some(r) = rational::sqrt_exact(q) {
                    return Some(Value::Exact(r));
                }
                let x = rational::to_f64(q);
                (x >= 0.0).then(|| Value::Approx(x.sqrt()))
            }
            Value::Approx(x) => (*x >= 0.0).then(|| Value::Approx(x.sqrt())),
        }
    }

    pub fn signum(&self) -> i32 {
        let x = self.to_f64();
        if self.is_zero() {
            0
        } else if x > 0.0 {
            1
        } else {
            -1
        }
    }
}

macro_rules! value_op {
    ($tr:ident, $m:ident) => {
        impl ops::$tr<&Value> for &Value {
            type Output = Value;
            fn $m(self, rhs: &Value) -> Value {
                Value::$m(self, rhs)
            }
        }
        impl ops::$tr<Value> for Value {
            type Output = Value;
            fn $m(self, rhs: Value) -> Value {
                Value::$m(&self, &rhs)
            }
        }
        impl ops::$tr<&Value> for Value {
            type Output = Value;
            fn $m(self, rhs: &Value) -> Value {
                Value::$m(&self, rhs)
            }
        }
        impl ops::$tr<Value> for &Value {
            type Output = Value;
            fn $m(self, rhs: Value) -> Value {
                Value::$m(self, &rhs)
            }
        }
    };
}

value_op!(Add, add);
value_op!(Sub, sub);
value_op!(Mul, mul);

impl ops::Neg for Value {
    type Output = Value;
    fn neg(self) -> Value {
        Value::neg(&self)
    }
}

impl ops::Neg for &Value {
    type Output = Value;
    fn neg(self) -> Value {
        Value::neg(self)
    }
}

impl From<Rational> for Value {
    fn from(q: Rational) -> Self {
        Value::Exact(q)
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Approx(x)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) => f.write_str(&rational::format(q)),
            Value::Approx(x) => write!(f, "{:.16e}", x),
        }
    }
}
