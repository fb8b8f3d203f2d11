//! JSON interchange formats.
//!
//! A polynomial is a list of `[exponent, "coefficient"]` pairs in ascending
//! exponent order, with decimal-string coefficients; integer coefficients are
//! also accepted on input. A matrix is `{"rows", "cols", "entries"}` with
//! `entries` a list of rows. A class is a list of polynomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::catalog::ClassSpec;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::lefschetz::LefschetzAlgebra;
use crate::matrix::{KClass, LaurentMatrix};
use crate::moves::TwistWord;

#[derive(Deserialize)]
#[serde(untagged)]
enum Coefficient {
    Text(String),
    Int(i64),
}

impl Coefficient {
    fn into_bigint<E: de::Error>(self) -> std::result::Result<BigInt, E> {
        match self {
            Coefficient::Int(i) => Ok(i.into()),
            Coefficient::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| E::custom(format!("coefficient {s:?} is not an integer"))),
        }
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.num_terms()))?;
        for (e, c) in self.terms() {
            seq.serialize_element(&(e, c.to_string()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(i64, Coefficient)> = Vec::deserialize(d)?;
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in raw {
            *terms.entry(e).or_default() += c.into_bigint::<D::Error>()?;
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<LaurentPoly>>,
}

impl Serialize for LaurentMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows(),
            cols: self.cols(),
            entries: self.row_vecs(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(d)?;
        if repr.entries.len() != repr.rows || repr.entries.iter().any(|row| row.len() != repr.cols)
        {
            return Err(de::Error::custom(format!(
                "matrix declared {}x{} but entries have a different shape",
                repr.rows, repr.cols
            )));
        }
        let entries = repr.entries.into_iter().flatten().collect();
        LaurentMatrix::new(repr.rows, repr.cols, entries).map_err(de::Error::custom)
    }
}

impl Serialize for KClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

impl<'de> Deserialize<'de> for KClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Vec::<LaurentPoly>::deserialize(d).map(KClass::new)
    }
}

/// Arrays that hold no objects and fit on a line.
const INLINE_WIDTH: usize = 100;

/// Canonical text form: objects are indented with sorted keys, and arrays
/// without nested objects stay on one line when short enough. Ends with a
/// newline.
pub fn render(value: &serde_json::Value) -> String {
    let mut out = String::new();
    write_value(value, 0, &mut out);
    out.push('\n');
    out
}

fn has_object(value: &serde_json::Value) -> bool {
    match value {
        serde_json::Value::Object(_) => true,
        serde_json::Value::Array(items) => items.iter().any(has_object),
        _ => false,
    }
}

fn write_value(value: &serde_json::Value, depth: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |d: usize| "  ".repeat(d);
    match value {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, v)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(v, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        Value::Array(items) if !items.is_empty() => {
            let compact = value.to_string();
            if !has_object(value) && compact.len() + 2 * depth <= INLINE_WIDTH {
                out.push_str(&compact);
                return;
            }
            out.push_str("[\n");
            for (i, v) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(v, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// Serializes a big integer as a decimal string.
pub(crate) fn bigint_string<S: Serializer>(
    x: &BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// On-disk form of a Lefschetz algebra. Exactly one of `A`, `B` is present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibrationFile {
    pub n: i64,
    pub m: usize,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<LaurentMatrix>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<LaurentMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl FibrationFile {
    /// The canonical form: `B` only.
    pub fn from_algebra(alg: &LefschetzAlgebra) -> Self {
        Self {
            n: alg.n(),
            m: alg.m(),
            a: None,
            b: Some(alg.b().clone()),
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Option<Vec<String>>) -> Self {
        self.labels = labels;
        self
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        render(&serde_json::to_value(self).expect("serializable"))
    }

    /// Validates shape and consistency. `n_override` replaces the stored `n`.
    pub fn to_algebra(&self, n_override: Option<i64>) -> Result<LefschetzAlgebra> {
        let n = n_override.unwrap_or(self.n);
        let matrix = match (&self.a, &self.b) {
            (Some(a), None) => a,
            (None, Some(b)) => b,
            _ => {
                return Err(Error::Parse(
                    "fibration file needs exactly one of \"A\" and \"B\"".into(),
                ))
            }
        };
        if matrix.rows() != self.m || matrix.cols() != self.m {
            return Err(Error::DimensionMismatch(format!(
                "m = {} but the matrix is {}x{}",
                self.m,
                matrix.rows(),
                matrix.cols()
            )));
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.m {
                return Err(Error::DimensionMismatch(format!(
                    "{} labels for m = {}",
                    labels.len(),
                    self.m
                )));
            }
        }
        match (&self.a, &self.b) {
            (Some(a), _) => LefschetzAlgebra::from_a(n, a.clone()),
            (_, Some(b)) => LefschetzAlgebra::from_b(n, b.clone()),
            _ => unreachable!(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum ClassSpecEntry {
    Class {
        class: KClass,
    },
    /// `seed` is a 1-based index into the generators.
    Word {
        word: String,
        seed: usize,
    },
}

/// Classes in a fibre, for building a total space: twisting generators and
/// one entry per vanishing cycle of the total space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassSpecFile {
    #[serde(default)]
    pub generators: Vec<KClass>,
    pub classes: Vec<ClassSpecEntry>,
}

impl ClassSpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn specs(&self) -> Result<Vec<ClassSpec>> {
        self.classes
            .iter()
            .map(|entry| match entry {
                ClassSpecEntry::Class { class } => Ok(ClassSpec::Class(class.clone())),
                ClassSpecEntry::Word { word, seed } => {
                    let seed_class = seed
                        .checked_sub(1)
                        .and_then(|i| self.generators.get(i))
                        .ok_or_else(|| {
                            Error::Parse(format!(
                                "seed {seed} is not a generator index in 1..={}",
                                self.generators.len()
                            ))
                        })?;
                    Ok(ClassSpec::Word {
                        word: word.parse::<TwistWord>()?,
                        seed: seed_class.clone(),
                    })
                }
            })
            .collect()
    }
}
