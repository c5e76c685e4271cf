//! JSON forms for groups, Brandt elements and ℓ¹ vectors.
//!
//! ```text
//! group:    {"kind":"cyclic","order":6} | {"kind":"symmetric","degree":3}
//!           | {"kind":"integers"} | {"kind":"cayley","table":[[..]],"identity":0}
//! G:        3
//! S / T:    {"null":true} | {"i":0,"g":2,"j":1}
//! ℓ¹(X):    [{"basis": <X>, "coeff": "p/q"}, ...]
//! ℓ¹(X×X):  [{"left": <X>, "right": <X>, "coeff": "p/q"}, ...]
//! ```
//!
//! Coefficients are always written as `"p/q"`; entries come out in basis order.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::brandt::{BrandtElement, Triple};
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement, GroupKind};
use crate::l1::L1Vector;
use crate::scalar::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic { order: usize },
    Symmetric { degree: usize },
    Integers,
    Cayley { table: Vec<Vec<usize>>, identity: usize },
}

impl GroupSpec {
    pub fn build(&self) -> Result<Group> {
        match self {
            GroupSpec::Cyclic { order } => Group::cyclic(*order),
            GroupSpec::Symmetric { degree } => Group::symmetric(*degree),
            GroupSpec::Integers => Ok(Group::integers()),
            GroupSpec::Cayley { table, identity } => Group::from_table(table.clone(), *identity),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
    }
}

impl From<&Group> for GroupSpec {
    fn from(g: &Group) -> Self {
        match g.kind() {
            GroupKind::Integers => GroupSpec::Integers,
            GroupKind::Finite(t) => GroupSpec::Cayley { table: t.rows(), identity: t.identity() },
        }
    }
}

/// A single basis point with a JSON form.
pub trait JsonElement: Sized {
    const NAME: &'static str;
    fn to_value(&self) -> Value;
    fn from_value(v: &Value) -> Option<Self>;
}

impl JsonElement for GroupElement {
    const NAME: &'static str = "G";
    fn to_value(&self) -> Value {
        json!(self.0)
    }
    fn from_value(v: &Value) -> Option<Self> {
        v.as_i64().map(GroupElement)
    }
}

impl JsonElement for Triple {
    const NAME: &'static str = "T";
    fn to_value(&self) -> Value {
        json!({"i": self.i, "g": self.g.0, "j": self.j})
    }
    fn from_value(v: &Value) -> Option<Self> {
        let obj = v.as_object()?;
        if obj.len() != 3 {
            return None;
        }
        let i = obj.get("i")?.as_u64()? as usize;
        let g = obj.get("g")?.as_i64()?;
        let j = obj.get("j")?.as_u64()? as usize;
        Some(Triple::new(i, GroupElement(g), j))
    }
}

impl JsonElement for BrandtElement {
    const NAME: &'static str = "S";
    fn to_value(&self) -> Value {
        match self {
            BrandtElement::Null => json!({"null": true}),
            BrandtElement::Triple(t) => t.to_value(),
        }
    }
    fn from_value(v: &Value) -> Option<Self> {
        let obj = v.as_object()?;
        if obj.len() == 1 && obj.get("null") == Some(&Value::Bool(true)) {
            return Some(BrandtElement::Null);
        }
        Triple::from_value(v).map(BrandtElement::Triple)
    }
}

/// How a basis point is laid out inside one vector entry.
pub trait JsonBasis: Sized {
    const NAME: &'static str;
    fn write_fields(&self, entry: &mut Map<String, Value>);
    fn read_fields(entry: &Map<String, Value>) -> Option<Self>;
}

macro_rules! json_basis {
    ($($t:ty),*) => {$(
        impl JsonBasis for $t {
            const NAME: &'static str = <$t as JsonElement>::NAME;
            fn write_fields(&self, entry: &mut Map<String, Value>) {
                entry.insert("basis".into(), self.to_value());
            }
            fn read_fields(entry: &Map<String, Value>) -> Option<Self> {
                if entry.len() != 2 {
                    return None;
                }
                <$t>::from_value(entry.get("basis")?)
            }
        }

        impl JsonBasis for ($t, $t) {
            const NAME: &'static str = concat!(stringify!($t), " pair");
            fn write_fields(&self, entry: &mut Map<String, Value>) {
                entry.insert("left".into(), self.0.to_value());
                entry.insert("right".into(), self.1.to_value());
            }
            fn read_fields(entry: &Map<String, Value>) -> Option<Self> {
                if entry.len() != 3 {
                    return None;
                }
                Some((<$t>::from_value(entry.get("left")?)?, <$t>::from_value(entry.get("right")?)?))
            }
        }
    )*};
}

json_basis!(GroupElement, Triple, BrandtElement);

pub fn vector_to_value<B: JsonBasis + Ord + Clone>(v: &L1Vector<B, Rational>) -> Value {
    Value::Array(
        v.iter()
            .map(|(b, c)| {
                let mut entry = Map::new();
                b.write_fields(&mut entry);
                entry.insert("coeff".into(), Value::String(format_rational(c)));
                Value::Object(entry)
            })
            .collect(),
    )
}

/// Reads a vector over basis `B`; entries in another basis give [`Error::BasisMismatch`].
pub fn vector_from_value<B: JsonBasis + Ord + Clone>(v: &Value) -> Result<L1Vector<B, Rational>> {
    let entries = v.as_array().ok_or_else(|| Error::Json("an l1 element must be a JSON array".into()))?;
    let mut out = L1Vector::zero();
    for (n, entry) in entries.iter().enumerate() {
        let obj = entry.as_object().ok_or_else(|| Error::Json(format!("entry {n} is not an object")))?;
        let coeff = match obj.get("coeff") {
            Some(Value::String(s)) => parse_rational(s)?,
            Some(Value::Number(x)) if x.is_i64() => Rational::from_integer(x.as_i64().unwrap_or_default().into()),
            _ => return Err(Error::Json(format!("entry {n} lacks a \"p/q\" coeff"))),
        };
        let basis = B::read_fields(obj)
            .ok_or_else(|| Error::BasisMismatch(format!("entry {n} is not a basis point of {}", B::NAME)))?;
        out.add_term(basis, coeff);
    }
    Ok(out)
}

pub fn vector_from_str<B: JsonBasis + Ord + Clone>(text: &str) -> Result<L1Vector<B, Rational>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    vector_from_value(&v)
}

pub fn vector_to_string<B: JsonBasis + Ord + Clone>(v: &L1Vector<B, Rational>) -> String {
    serde_json::to_string_pretty(&vector_to_value(v)).expect("values serialize")
}
