//! Exact numbers in JSON: decimal strings (`"-12"`, `"3/4"`). Plain JSON
//! integers are accepted on input.

use serde::de::{self, Deserializer, Visitor};
use serde::Serializer;
use std::fmt;

use crate::{Int, Rat};

pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let parse_int = |t: &str| t.trim().parse::<Int>().map_err(|_| format!("invalid integer `{t}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q == Int::from(0) {
                return Err("zero denominator".into());
            }
            Ok(Rat::new(parse_int(p)?, q))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

pub fn rat_to_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decode a JSON value holding an exact rational.
pub fn rat_from_value(v: &serde_json::Value) -> Result<Rat, String> {
    match v {
        serde_json::Value::String(s) => parse_rat(s),
        serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => parse_rat(&n.to_string()),
        other => Err(format!("expected an exact number, got {other}")),
    }
}

pub fn int_from_value(v: &serde_json::Value) -> Result<Int, String> {
    let r = rat_from_value(v)?;
    if !r.is_integer() {
        return Err(format!("expected an integer, got {}", rat_to_string(&r)));
    }
    Ok(r.to_integer())
}

struct NumVisitor;

impl<'de> Visitor<'de> for NumVisitor {
    type Value = Rat;
    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an exact number as a decimal string or JSON integer")
    }
    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
        parse_rat(v).map_err(E::custom)
    }
    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rat, E> {
        Ok(Rat::from_integer(Int::from(v)))
    }
    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rat, E> {
        Ok(Rat::from_integer(Int::from(v)))
    }
}

pub mod rat {
    use super::*;
    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        d.deserialize_any(NumVisitor)
    }
}

pub mod int {
    use super::*;
    pub fn serialize<S: Serializer>(n: &Int, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        let r = d.deserialize_any(NumVisitor)?;
        if !r.is_integer() {
            return Err(de::Error::custom("expected an integer"));
        }
        Ok(r.to_integer())
    }
}

pub mod int_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::Deserialize;
    pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for n in v {
            seq.serialize_element(&n.to_string())?;
        }
        seq.end()
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        let vals = Vec::<serde_json::Value>::deserialize(d)?;
        vals.iter()
            .map(|v| int_from_value(v).map_err(de::Error::custom))
            .collect()
    }
}

pub mod opt_int {
    use super::*;
    use serde::Deserialize;
    pub fn serialize<S: Serializer>(v: &Option<Int>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(n) => s.serialize_some(&n.to_string()),
            None => s.serialize_none(),
        }
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Int>, D::Error> {
        let v = Option::<serde_json::Value>::deserialize(d)?;
        v.map(|v| int_from_value(&v).map_err(de::Error::custom))
            .transpose()
    }
}

pub mod rat_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::Deserialize;
    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for n in v {
            seq.serialize_element(&rat_to_string(n))?;
        }
        seq.end()
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let vals = Vec::<serde_json::Value>::deserialize(d)?;
        vals.iter()
            .map(|v| rat_from_value(v).map_err(de::Error::custom))
            .collect()
    }
}
