//! JSON form of a gauge: `{"kind": "...", "params": {...}}`.
//!
//! | kind          | params                                              |
//! |---------------|-----------------------------------------------------|
//! | `pnorm`       | `{"dim": N, "p": p}`                                |
//! | `l1`, `linf`  | `{"dim": N}`                                        |
//! | `crystalline` | `{"vectors": [[...], ...]}`                         |
//! | `cylinder3`   | `{}` or omitted                                     |
//! | `doublecone3` | `{}` or omitted                                     |
//! | `absinner`    | `{"v": [...]}`                                      |
//! | `max`         | `{"left": <gauge>, "right": <gauge>}`               |
//! | `projected`   | `{"inner": <gauge>, "coords": [i, ...], "dim": M}`  |
//!
//! Projection indices are zero-based coordinates of `R^M`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use super::{Gauge, GaugeError};

#[derive(Debug, Clone, PartialEq)]
pub enum GaugeDescriptor {
    PNorm { dim: usize, p: f64 },
    L1 { dim: usize },
    LInf { dim: usize },
    Crystalline { vectors: Vec<Vec<f64>> },
    Cylinder3,
    DoubleCone3,
    AbsInner { v: Vec<f64> },
    Max { left: Box<GaugeDescriptor>, right: Box<GaugeDescriptor> },
    Projected { inner: Box<GaugeDescriptor>, coords: Vec<usize>, dim: usize },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    kind: String,
    #[serde(default)]
    params: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DimP {
    dim: usize,
    p: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Dim {
    dim: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Vectors {
    vectors: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Inner {
    v: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MaxParams {
    left: GaugeDescriptor,
    right: GaugeDescriptor,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProjectedParams {
    inner: GaugeDescriptor,
    coords: Vec<usize>,
    dim: usize,
}

fn params<T: serde::de::DeserializeOwned>(kind: &str, v: Value) -> Result<T, String> {
    serde_json::from_value(v).map_err(|e| format!("bad params for `{kind}`: {e}"))
}

impl GaugeDescriptor {
    fn from_raw(raw: Raw) -> Result<Self, String> {
        let Raw { kind, params: p } = raw;
        let empty = |p: &Value| p.is_null() || p.as_object().is_some_and(|m| m.is_empty());
        Ok(match kind.as_str() {
            "pnorm" => {
                let DimP { dim, p } = params(&kind, p)?;
                GaugeDescriptor::PNorm { dim, p }
            }
            "l1" => GaugeDescriptor::L1 { dim: params::<Dim>(&kind, p)?.dim },
            "linf" => GaugeDescriptor::LInf { dim: params::<Dim>(&kind, p)?.dim },
            "crystalline" => GaugeDescriptor::Crystalline { vectors: params::<Vectors>(&kind, p)?.vectors },
            "cylinder3" | "doublecone3" => {
                if !empty(&p) {
                    return Err(format!("`{kind}` takes no params"));
                }
                if kind == "cylinder3" {
                    GaugeDescriptor::Cylinder3
                } else {
                    GaugeDescriptor::DoubleCone3
                }
            }
            "absinner" => GaugeDescriptor::AbsInner { v: params::<Inner>(&kind, p)?.v },
            "max" => {
                let MaxParams { left, right } = params(&kind, p)?;
                GaugeDescriptor::Max { left: Box::new(left), right: Box::new(right) }
            }
            "projected" => {
                let ProjectedParams { inner, coords, dim } = params(&kind, p)?;
                GaugeDescriptor::Projected { inner: Box::new(inner), coords, dim }
            }
            other => return Err(format!("unknown gauge kind `{other}`")),
        })
    }

    fn to_value(&self) -> Value {
        match self {
            GaugeDescriptor::PNorm { dim, p } => json!({"kind": "pnorm", "params": {"dim": dim, "p": p}}),
            GaugeDescriptor::L1 { dim } => json!({"kind": "l1", "params": {"dim": dim}}),
            GaugeDescriptor::LInf { dim } => json!({"kind": "linf", "params": {"dim": dim}}),
            GaugeDescriptor::Crystalline { vectors } => json!({"kind": "crystalline", "params": {"vectors": vectors}}),
            GaugeDescriptor::Cylinder3 => json!({"kind": "cylinder3", "params": {}}),
            GaugeDescriptor::DoubleCone3 => json!({"kind": "doublecone3", "params": {}}),
            GaugeDescriptor::AbsInner { v } => json!({"kind": "absinner", "params": {"v": v}}),
            GaugeDescriptor::Max { left, right } => {
                json!({"kind": "max", "params": {"left": left.to_value(), "right": right.to_value()}})
            }
            GaugeDescriptor::Projected { inner, coords, dim } => json!({
                "kind": "projected",
                "params": {"inner": inner.to_value(), "coords": coords, "dim": dim}
            }),
        }
    }
}

impl Serialize for GaugeDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaugeDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Raw::deserialize(d)?;
        GaugeDescriptor::from_raw(raw).map_err(D::Error::custom)
    }
}

impl TryFrom<GaugeDescriptor> for Gauge {
    type Error = GaugeError;

    fn try_from(d: GaugeDescriptor) -> Result<Self, Self::Error> {
        match d {
            GaugeDescriptor::PNorm { dim, p } => Gauge::pnorm(dim, p),
            GaugeDescriptor::L1 { dim } => Gauge::l1(dim),
            GaugeDescriptor::LInf { dim } => Gauge::linf(dim),
            GaugeDescriptor::Crystalline { vectors } => Gauge::crystalline(vectors),
            GaugeDescriptor::Cylinder3 => Ok(Gauge::cylinder3()),
            GaugeDescriptor::DoubleCone3 => Ok(Gauge::double_cone3()),
            GaugeDescriptor::AbsInner { v } => Gauge::abs_inner(v),
            GaugeDescriptor::Max { left, right } => Gauge::make_max(Gauge::try_from(*left)?, Gauge::try_from(*right)?),
            GaugeDescriptor::Projected { inner, coords, dim } => {
                Gauge::make_projected(Gauge::try_from(*inner)?, coords, dim)
            }
        }
    }
}

impl Serialize for Gauge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.descriptor().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Gauge {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let desc = GaugeDescriptor::deserialize(d)?;
        Gauge::try_from(desc).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        let cases = [
            r#"{"kind": "pnorm", "params": {"dim": 2, "p": 3}}"#,
            r#"{"kind": "l1", "params": {"dim": 4}}"#,
            r#"{"kind": "linf", "params": {"dim": 2}}"#,
            r#"{"kind": "crystalline", "params": {"vectors": [[1, 0], [0, 1], [1, 1]]}}"#,
            r#"{"kind": "cylinder3"}"#,
            r#"{"kind": "doublecone3", "params": {}}"#,
            r#"{"kind": "absinner", "params": {"v": [1, -2]}}"#,
            r#"{"kind": "max", "params": {"left": {"kind": "l1", "params": {"dim": 2}}, "right": {"kind": "linf", "params": {"dim": 2}}}}"#,
            r#"{"kind": "projected", "params": {"inner": {"kind": "pnorm", "params": {"dim": 2, "p": 2}}, "coords": [0, 1], "dim": 3}}"#,
        ];
        for src in cases {
            let g: Gauge = serde_json::from_str(src).unwrap_or_else(|e| panic!("{src}: {e}"));
            let again: Gauge = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
            assert_eq!(g, again);
        }
    }

    #[test]
    fn rejects_malformed() {
        for src in [
            r#"{"kind": "nope"}"#,
            r#"{"kind": "linf"}"#,
            r#"{"kind": "linf", "params": {"dim": 2, "extra": 1}}"#,
            r#"{"kind": "cylinder3", "params": {"dim": 3}}"#,
            r#"{"kind": "crystalline", "params": {"vectors": [[1, 1], [2, 2]]}}"#,
            r#"{"kind": "projected", "params": {"inner": {"kind": "l1", "params": {"dim": 1}}, "coords": [5], "dim": 3}}"#,
        ] {
            assert!(serde_json::from_str::<Gauge>(src).is_err(), "{src}");
        }
    }
}
