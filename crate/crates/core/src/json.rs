//! File formats: tower and bundle descriptions, and class serialization.
//!
//! Integers are written as JSON numbers when they fit in an `i64` and as
//! decimal strings otherwise; both forms are accepted on input. Class
//! coefficients are always strings.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An arbitrary precision integer in JSON.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JsonInt(pub BigInt);

impl From<BigInt> for JsonInt {
    fn from(v: BigInt) -> Self {
        JsonInt(v)
    }
}

impl From<i64> for JsonInt {
    fn from(v: i64) -> Self {
        JsonInt(BigInt::from(v))
    }
}

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct IntVisitor;

        impl Visitor<'_> for IntVisitor {
            type Value = JsonInt;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<JsonInt, E> {
                Err(E::custom(format!("expected an integer, found {v}")))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
                v.trim()
                    .parse::<BigInt>()
                    .map(JsonInt)
                    .map_err(|_| E::custom(format!("invalid integer string {v:?}")))
            }
        }

        d.deserialize_any(IntVisitor)
    }
}

pub fn to_json_row(row: &[BigInt]) -> Vec<JsonInt> {
    row.iter().cloned().map(JsonInt).collect()
}

pub fn to_json_matrix(m: &[Vec<BigInt>]) -> Vec<Vec<JsonInt>> {
    m.iter()
        .map(|row| row.iter().cloned().map(JsonInt).collect())
        .collect()
}

pub fn from_json_matrix(m: &[Vec<JsonInt>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| row.iter().map(|v| v.0.clone()).collect())
        .collect()
}

/// Tower file: `{"stages":[{"fiber_dim":N,"summands":[[...],...]}, ...]}`.
///
/// Stage `i` (1-based) lists `fiber_dim` rows of `i - 1` exponents each; the
/// trivial summand is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTower {
    pub stages: Vec<RawStage>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawStage {
    pub fiber_dim: JsonInt,
    #[serde(default)]
    pub summands: Vec<Vec<JsonInt>>,
}

/// Bundle file: `{"base_dims":[...],"exponents":[[...],...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBundle {
    pub base_dims: Vec<JsonInt>,
    pub exponents: Vec<Vec<JsonInt>>,
}

/// One term of a serialized class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerializedTerm {
    pub exponents: Vec<u32>,
    pub coeff: String,
}
