//! Parsing of real parameters written as decimals, rationals (`2/3`) or
//! simple multiples of π and e (`3pi/4`, `e/4`).

use std::f64::consts::{E, PI};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Parses `p/q`, decimals, `pi`, `3pi/4`, `3*pi/4`, `e/4`, `2*e`.
///
/// Integer numerator and denominator are divided once in floating point, so
/// `2/3` becomes the double nearest to two thirds.
pub fn parse_scalar(text: &str) -> Result<f64> {
    let bad = || Error::config("value", format!("cannot parse `{text}` as a number"));
    let mut parts = text.split('/');
    let num = parts.next().ok_or_else(bad)?;
    let den = parts.next();
    if parts.next().is_some() {
        return Err(bad());
    }
    let mut value = parse_factor(num).ok_or_else(bad)?;
    if let Some(den) = den {
        let d = parse_factor(den).ok_or_else(bad)?;
        if d == 0.0 {
            return Err(Error::config("value", format!("zero denominator in `{text}`")));
        }
        value /= d;
    }
    if !value.is_finite() {
        return Err(bad());
    }
    Ok(value)
}

fn parse_factor(s: &str) -> Option<f64> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (sign, s) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest.trim_start()),
        None => (1.0, s),
    };
    let coefficient = |c: &str| -> Option<f64> {
        let c = c.trim().trim_end_matches('*').trim();
        if c.is_empty() {
            Some(1.0)
        } else {
            c.parse::<f64>().ok()
        }
    };
    let value = if let Some(c) = s.strip_suffix("pi").or_else(|| s.strip_suffix('π')) {
        coefficient(c)? * PI
    } else if s == "e" {
        E
    } else if let Some(c) = s.strip_suffix("*e") {
        coefficient(c)? * E
    } else {
        s.parse::<f64>().ok()?
    };
    Some(sign * value)
}

/// A real number that deserializes from either a JSON number or a string
/// accepted by [`parse_scalar`].
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Default)]
pub struct Scalar(pub f64);

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar(x)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.0)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(x) => Ok(Scalar(x)),
            Raw::Text(t) => parse_scalar(&t)
                .map(Scalar)
                .map_err(serde::de::Error::custom),
        }
    }
}
