//! JSON helpers shared by reports and provenance records.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::GaussianRational;

use super::parse_constant;

/// Pretty-printed JSON; field order follows the struct definitions, so the
/// output is deterministic.
pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

pub fn serialize_gaussian<S: Serializer>(c: &GaussianRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_plain_string())
}

pub fn deserialize_gaussian<'de, D: Deserializer<'de>>(d: D) -> Result<GaussianRational, D::Error> {
    let text = String::deserialize(d)?;
    parse_constant(&text).map_err(serde::de::Error::custom)
}

pub mod gaussian_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[GaussianRational], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = v.iter().map(|c| c.to_plain_string()).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<GaussianRational>, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        v.iter()
            .map(|t| parse_constant(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod gaussian_opt_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vec<GaussianRational>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => super::gaussian_vec::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Option<Vec<GaussianRational>>, D::Error> {
        let v: Option<Vec<String>> = Option::deserialize(d)?;
        v.map(|v| {
            v.iter()
                .map(|t| parse_constant(t).map_err(serde::de::Error::custom))
                .collect()
        })
        .transpose()
    }
}
