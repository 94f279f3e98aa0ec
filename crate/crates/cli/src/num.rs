use std::fmt;

use serde::de::{Deserialize, Deserializer};
use serde::ser::{Error as _, Serialize, Serializer};
use serde_json::value::RawValue;

/// An `f64` written with 17 significant digits, enough to read back the
/// identical value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.16e}", self.0)
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return Err(S::Error::custom(format!("non-finite number {}", self.0)));
        }
        RawValue::from_string(self.to_string())
            .map_err(S::Error::custom)?
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        f64::deserialize(d).map(Num)
    }
}

impl From<f64> for Num {
    fn from(x: f64) -> Self {
        Num(x)
    }
}

/// A matrix or vector entry: a bare number or a `[re, im]` pair.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(Num),
    Complex([Num; 2]),
}

impl Entry {
    pub fn parts(self) -> (f64, f64) {
        match self {
            Entry::Real(x) => (x.0, 0.0),
            Entry::Complex([re, im]) => (re.0, im.0),
        }
    }

    pub fn is_complex(self) -> bool {
        matches!(self, Entry::Complex(_))
    }
}
