//! JSON file formats for arrangements and normal systems.
//!
//! Rational numbers travel as strings in the textual form of
//! [`crate::exactmath::parse_rational`] (`"3"`, `"-3/2"`); subscripts are
//! implicit in array order (position `i - 1` holds subscript `i`).
//!
//! Arrangement file:
//! ```json
//! { "m": 2, "hyperplanes": [ { "a": ["1", "0"], "b": "0" } ] }
//! ```
//!
//! Normal-system file:
//! ```json
//! { "m": 3, "vectors": [ ["1", "0", "0"], ["0", "1", "0"] ] }
//! ```

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Hyperplane};
use crate::exactmath::{parse_rational, QVector};
use crate::normsys::NormalSystem;
use crate::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HyperplaneDto {
    a: Vec<String>,
    b: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrangementDto {
    m: usize,
    hyperplanes: Vec<HyperplaneDto>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NormalSystemDto {
    m: usize,
    vectors: Vec<Vec<String>>,
}

fn vector_from_strings(entries: &[String]) -> Result<QVector> {
    Ok(QVector::new(
        entries
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?,
    ))
}

/// Rational entries in their canonical textual form.
pub fn vector_strings(v: &QVector) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}

fn syntax_error(e: serde_json::Error) -> Error {
    Error::InvalidFile(e.to_string())
}

/// Parses an arrangement file. Syntax problems come back as
/// [`Error::InvalidFile`]; semantic problems (bad rationals, zero normals,
/// dimension mismatches) keep their own error types.
pub fn arrangement_from_json(text: &str) -> Result<Arrangement> {
    let dto: ArrangementDto = serde_json::from_str(text).map_err(syntax_error)?;
    let hyperplanes = dto
        .hyperplanes
        .iter()
        .map(|h| Hyperplane::new(vector_from_strings(&h.a)?, parse_rational(&h.b)?))
        .collect::<Result<Vec<_>>>()?;
    Arrangement::new(dto.m, hyperplanes)
}

/// Serializes an arrangement in the documented file format (pretty-printed,
/// trailing newline, byte-stable for equal inputs).
pub fn arrangement_to_json(arr: &Arrangement) -> String {
    let dto = ArrangementDto {
        m: arr.dim(),
        hyperplanes: arr
            .hyperplanes()
            .iter()
            .map(|h| HyperplaneDto {
                a: vector_strings(h.normal()),
                b: h.offset().to_string(),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&dto).expect("plain data serializes");
    text.push('\n');
    text
}

/// Parses a normal-system file. Representatives are normalized on load, so
/// scaled input vectors name the same system.
pub fn normal_system_from_json(text: &str) -> Result<NormalSystem> {
    let dto: NormalSystemDto = serde_json::from_str(text).map_err(syntax_error)?;
    let vectors = dto
        .vectors
        .iter()
        .map(|v| vector_from_strings(v))
        .collect::<Result<Vec<_>>>()?;
    NormalSystem::new(dto.m, vectors)
}

/// Serializes a normal system (normalized representatives) in the documented
/// file format.
pub fn normal_system_to_json(ns: &NormalSystem) -> String {
    let dto = NormalSystemDto {
        m: ns.dim(),
        vectors: ns.reps().iter().map(vector_strings).collect(),
    };
    let mut text = serde_json::to_string_pretty(&dto).expect("plain data serializes");
    text.push('\n');
    text
}
