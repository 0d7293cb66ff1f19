//! JSON encodings: rationals as `"p/q"` strings, number fields by minimal
//! polynomial and isolating root disk, Siegel points by three coordinate
//! vectors, symplectic matrices as 16 row-major integers.

use std::sync::Arc;

use serde::{Deserialize, Serialize, Serializer};

use crate::exactarith::{format_rational, parse_rational, FieldElement, NumberField, QPoly, Rational, RootDisk};
use crate::siegel::{is_siegel, sp4_check, SiegelPoint, SymplecticMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JsonError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid value at {path}: {msg}")]
    Validation { path: String, msg: String },
}

impl JsonError {
    fn at(path: impl Into<String>, msg: impl ToString) -> Self {
        JsonError::Validation { path: path.into(), msg: msg.to_string() }
    }
}

pub fn ser_rational<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

pub fn ser_rationals<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(qs.iter().map(format_rational))
}

pub fn rational_at(s: &str, path: &str) -> Result<Rational, JsonError> {
    parse_rational(s).map_err(|e| JsonError::at(path, e))
}

pub fn rationals_at(v: &[String], path: &str) -> Result<Vec<Rational>, JsonError> {
    v.iter().enumerate().map(|(i, s)| rational_at(s, &format!("{}[{}]", path, i))).collect()
}

pub fn strings(qs: &[Rational]) -> Vec<String> {
    qs.iter().map(format_rational).collect()
}

pub fn from_str<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, JsonError> {
    serde_json::from_str(text).map_err(|e| JsonError::Parse(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootJson {
    pub re: String,
    pub im: String,
    pub radius: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub min_poly: Vec<String>,
    pub root: RootJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gen: Option<String>,
}

pub fn field_to_json(k: &NumberField) -> FieldJson {
    let r = k.root_hint();
    FieldJson {
        min_poly: strings(k.min_poly().coeffs()),
        root: RootJson {
            re: format_rational(&r.re),
            im: format_rational(&r.im),
            radius: format_rational(&r.radius),
        },
        gen: Some(k.gen_name().to_string()),
    }
}

pub fn field_from_json(j: &FieldJson, path: &str) -> Result<Arc<NumberField>, JsonError> {
    let poly = QPoly::new(rationals_at(&j.min_poly, &format!("{}.min_poly", path))?);
    let root = RootDisk {
        re: rational_at(&j.root.re, &format!("{}.root.re", path))?,
        im: rational_at(&j.root.im, &format!("{}.root.im", path))?,
        radius: rational_at(&j.root.radius, &format!("{}.root.radius", path))?,
    };
    let name = j.gen.as_deref().unwrap_or("a");
    NumberField::named(poly, root, name).map_err(|e| JsonError::at(path, e))
}

pub fn element_from_json(k: &Arc<NumberField>, v: &[String], path: &str) -> Result<FieldElement, JsonError> {
    FieldElement::new(k, rationals_at(v, path)?).map_err(|e| JsonError::at(path, e))
}

pub fn element_to_json(x: &FieldElement) -> Vec<String> {
    strings(x.coords())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiegelPointJson {
    pub field: FieldJson,
    pub tau: [Vec<String>; 3],
}

pub fn siegel_to_json(t: &SiegelPoint) -> SiegelPointJson {
    SiegelPointJson {
        field: field_to_json(t.tau1().field()),
        tau: [element_to_json(t.tau1()), element_to_json(t.tau2()), element_to_json(t.tau3())],
    }
}

pub fn siegel_from_json(j: &SiegelPointJson) -> Result<SiegelPoint, JsonError> {
    let k = field_from_json(&j.field, "field")?;
    let e = |i: usize| element_from_json(&k, &j.tau[i], &format!("tau[{}]", i));
    is_siegel(e(0)?, e(1)?, e(2)?).map_err(|e| JsonError::at("tau", e))
}

pub fn symplectic_to_json(m: &SymplecticMatrix) -> Vec<i64> {
    m.entries().iter().flatten().copied().collect()
}

pub fn symplectic_from_json(v: &[i64]) -> Result<SymplecticMatrix, JsonError> {
    if v.len() != 16 {
        return Err(JsonError::at("matrix", format!("expected 16 entries, got {}", v.len())));
    }
    let m: [[i64; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| v[4 * i + j]));
    sp4_check(m).map_err(|e| JsonError::at("matrix", e))
}
