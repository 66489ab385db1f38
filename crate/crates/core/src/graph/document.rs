//! JSON documents for graphs and comtes.
//!
//! ```json
//! {
//!   "vertices": ["a", "b"],
//!   "arrows": [
//!     {"source": "a", "target": "b", "label": "a", "flow": 0}
//!   ]
//! }
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::Value;

use super::{Arrow, Comte, DanglingReference, SelfIndexedGraph, ValidationReport};
use crate::error::DecodeError;

/// A document as written, before vertex references are resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawDocument {
    pub vertices: Vec<String>,
    pub arrows: Vec<RawArrow>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawArrow {
    pub source: String,
    pub target: String,
    pub label: String,
    pub flow: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Graph(SelfIndexedGraph),
    Comte(Comte),
}

impl Document {
    pub fn graph(&self) -> &SelfIndexedGraph {
        match self {
            Document::Graph(g) => g,
            Document::Comte(c) => c.graph(),
        }
    }

    /// The comte, or the graph with zero flow.
    pub fn into_comte(self) -> Comte {
        match self {
            Document::Graph(g) => Comte::zero_flow(g),
            Document::Comte(c) => c,
        }
    }
}

fn field(path: impl Into<String>, message: impl Into<String>) -> DecodeError {
    DecodeError::Field { path: path.into(), message: message.into() }
}

fn string_at(v: &Value, path: &str) -> Result<String, DecodeError> {
    v.as_str().map(str::to_string).ok_or_else(|| field(path, "expected a string"))
}

pub fn decode_raw(text: &str) -> Result<RawDocument, DecodeError> {
    let root: Value = serde_json::from_str(text).map_err(|e| DecodeError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = root.as_object().ok_or_else(|| field("$", "expected an object"))?;
    for key in obj.keys() {
        if key != "vertices" && key != "arrows" {
            return Err(field(key.as_str(), "unexpected field"));
        }
    }
    let verts = obj
        .get("vertices")
        .ok_or_else(|| field("vertices", "missing"))?
        .as_array()
        .ok_or_else(|| field("vertices", "expected an array"))?;
    let vertices = verts
        .iter()
        .enumerate()
        .map(|(i, v)| string_at(v, &format!("vertices[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let arrs = match obj.get("arrows") {
        None => &Vec::new() as &Vec<Value>,
        Some(a) => a.as_array().ok_or_else(|| field("arrows", "expected an array"))?,
    };
    let mut arrows = Vec::with_capacity(arrs.len());
    for (i, a) in arrs.iter().enumerate() {
        let path = format!("arrows[{i}]");
        let o = a.as_object().ok_or_else(|| field(path.clone(), "expected an object"))?;
        for key in o.keys() {
            if !["source", "target", "label", "flow"].contains(&key.as_str()) {
                return Err(field(format!("{path}.{key}"), "unexpected field"));
            }
        }
        let get = |k: &str| -> Result<String, DecodeError> {
            let p = format!("{path}.{k}");
            string_at(o.get(k).ok_or_else(|| field(p.clone(), "missing"))?, &p)
        };
        let flow = match o.get("flow") {
            None => None,
            Some(Value::Number(num)) => {
                let s = num.to_string();
                Some(
                    s.parse::<BigInt>()
                        .map_err(|_| field(format!("{path}.flow"), format!("non-integer flow {s}")))?,
                )
            }
            Some(other) => return Err(field(format!("{path}.flow"), format!("non-integer flow {other}"))),
        };
        arrows.push(RawArrow { source: get("source")?, target: get("target")?, label: get("label")?, flow });
    }
    Ok(RawDocument { vertices, arrows })
}

/// Dangling references of a raw document, plus conservation if it carries flows.
pub fn validate_document(raw: &RawDocument) -> ValidationReport {
    let names: HashMap<&str, usize> = raw.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let mut dangling = Vec::new();
    for (i, a) in raw.arrows.iter().enumerate() {
        for (f, name) in [("source", &a.source), ("target", &a.target), ("label", &a.label)] {
            if !names.contains_key(name.as_str()) {
                dangling.push(DanglingReference { arrow: i, field: f, name: name.clone() });
            }
        }
    }
    if !dangling.is_empty() || names.len() != raw.vertices.len() {
        return ValidationReport { conservation: Vec::new(), dangling };
    }
    match resolve(raw) {
        Ok(Document::Comte(c)) => super::validate(&c),
        _ => ValidationReport::default(),
    }
}

pub fn resolve(raw: &RawDocument) -> Result<Document, DecodeError> {
    let mut names: HashMap<&str, usize> = HashMap::new();
    for (i, v) in raw.vertices.iter().enumerate() {
        if names.insert(v.as_str(), i).is_some() {
            return Err(field(format!("vertices[{i}]"), format!("duplicate vertex {v:?}")));
        }
    }
    let mut arrows = Vec::with_capacity(raw.arrows.len());
    for (i, a) in raw.arrows.iter().enumerate() {
        let look = |k: &str, name: &str| {
            names
                .get(name)
                .copied()
                .ok_or_else(|| field(format!("arrows[{i}].{k}"), format!("unknown vertex {name:?}")))
        };
        arrows.push(Arrow::new(look("source", &a.source)?, look("target", &a.target)?, look("label", &a.label)?));
    }
    let with_flow = raw.arrows.iter().filter(|a| a.flow.is_some()).count();
    let g = SelfIndexedGraph::from_parts_unchecked(raw.vertices.clone(), arrows);
    if with_flow == 0 {
        return Ok(Document::Graph(g));
    }
    if with_flow != raw.arrows.len() {
        let i = raw.arrows.iter().position(|a| a.flow.is_none()).unwrap();
        return Err(field(format!("arrows[{i}].flow"), "missing (other arrows carry flows)"));
    }
    let flows = raw.arrows.iter().map(|a| a.flow.clone().unwrap()).collect();
    Ok(Document::Comte(Comte::new_unchecked(g, flows).expect("one flow per arrow")))
}

pub fn decode(text: &str) -> Result<Document, DecodeError> {
    resolve(&decode_raw(text)?)
}

/// Decodes a comte; a bare graph gets zero flow. Conservation is not checked here.
pub fn decode_comte(text: &str) -> Result<Comte, DecodeError> {
    Ok(decode(text)?.into_comte())
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn emit(g: &SelfIndexedGraph, flows: Option<&[BigInt]>) -> String {
    let mut out = String::from("{\n  \"vertices\": [");
    out.push_str(&g.vertices().iter().map(|v| quote(v)).collect::<Vec<_>>().join(", "));
    out.push_str("],\n  \"arrows\": [");
    for (i, a) in g.arrows().iter().enumerate() {
        out.push_str(if i == 0 { "\n" } else { ",\n" });
        write!(
            out,
            "    {{\"source\": {}, \"target\": {}, \"label\": {}",
            quote(g.name(a.source)),
            quote(g.name(a.target)),
            quote(g.name(a.label))
        )
        .unwrap();
        if let Some(fl) = flows {
            write!(out, ", \"flow\": {}", fl[i]).unwrap();
        }
        out.push('}');
    }
    if g.arrow_count() > 0 {
        out.push_str("\n  ");
    }
    out.push_str("]\n}\n");
    out
}

pub fn encode_graph(g: &SelfIndexedGraph) -> String {
    emit(g, None)
}

pub fn encode_comte(c: &Comte) -> String {
    emit(c.graph(), Some(c.flows()))
}

pub fn encode(d: &Document) -> String {
    match d {
        Document::Graph(g) => encode_graph(g),
        Document::Comte(c) => encode_comte(c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = r#"{
  "vertices": ["a", "b", "c"],
  "arrows": [
    {"source": "a", "target": "b", "label": "c", "flow": 1},
    {"source": "b", "target": "c", "label": "a", "flow": 1},
    {"source": "c", "target": "a", "label": "b", "flow": 1}
  ]
}
"#;

    #[test]
    fn trefoil_round_trip() {
        let d = decode(TREFOIL).unwrap();
        let Document::Comte(c) = &d else { panic!("expected a comte") };
        assert_eq!((c.graph().vertex_count(), c.graph().arrow_count()), (3, 3));
        assert_eq!(encode(&d), TREFOIL);
    }

    #[test]
    fn unknown_label_is_named() {
        let text = TREFOIL.replace("\"label\": \"a\"", "\"label\": \"zz\"");
        let err = decode(&text).unwrap_err().to_string();
        assert!(err.contains("arrows[1].label") && err.contains("zz"), "{err}");
        let report = validate_document(&decode_raw(&text).unwrap());
        assert_eq!(report.dangling.len(), 1);
    }

    #[test]
    fn fractional_flow_rejected() {
        let text = TREFOIL.replacen("\"flow\": 1", "\"flow\": 1.5", 1);
        let err = decode(&text).unwrap_err().to_string();
        assert!(err.contains("arrows[0].flow"), "{err}");
    }

    #[test]
    fn huge_flows_survive() {
        let big = "123456789012345678901234567890";
        let text = format!(
            r#"{{"vertices": ["a"], "arrows": [{{"source": "a", "target": "a", "label": "a", "flow": {big}}}]}}"#
        );
        let c = decode_comte(&text).unwrap();
        assert_eq!(c.flow(0).to_string(), big);
        assert!(encode_comte(&c).contains(big));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = decode("{\n  \"vertices\": [,]\n}").unwrap_err();
        assert!(matches!(err, DecodeError::Syntax { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn bare_graph_round_trip() {
        let g = SelfIndexedGraph::from_names(&["x", "y"], &[("x", "y", "y")]).unwrap();
        let text = encode_graph(&g);
        assert_eq!(decode(&text).unwrap(), Document::Graph(g));
        let empty = SelfIndexedGraph::empty();
        assert_eq!(decode(&encode_graph(&empty)).unwrap(), Document::Graph(empty));
    }
}
