//! JSON documents for graphs, families, weight vectors and realizations,
//! plus DOT export.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::family::{DissimilarityFamily, FamilyError};
use crate::graph::{GraphError, GraphParts, VertexId, WeightedGraph};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::realization::{Construction, Realization};
use crate::steiner::DissimilarityVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

fn field_error(field: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError::Field {
        field: field.into(),
        message: message.into(),
    }
}

/// A weight or value written either as a string (`"41/5"`, `"0.25"`) or as
/// a JSON number.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum NumberText {
    Text(String),
    Number(serde_json::Number),
}

impl NumberText {
    fn parse(&self, field: &str) -> Result<Rational, ParseError> {
        let text = match self {
            NumberText::Text(s) => s.clone(),
            NumberText::Number(n) => n.to_string(),
        };
        parse_rational(&text).map_err(|e| field_error(field, e.to_string()))
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeDoc {
    u: u32,
    v: u32,
    w: NumberText,
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphDoc {
    n: usize,
    external: Vec<u32>,
    vertices: Vec<u32>,
    edges: Vec<EdgeDoc>,
}

pub fn graph_to_value(graph: &WeightedGraph) -> Value {
    let edges: Vec<Value> = graph
        .edges()
        .map(|(e, w)| json!({"u": e.lo().0, "v": e.hi().0, "w": format_rational(w)}))
        .collect();
    json!({
        "n": graph.n(),
        "external": graph.external().iter().map(|v| v.0).collect::<Vec<_>>(),
        "vertices": graph.vertices().map(|v| v.0).collect::<Vec<_>>(),
        "edges": edges,
    })
}

pub fn encode_graph(graph: &WeightedGraph) -> String {
    serde_json::to_string_pretty(&graph_to_value(graph)).expect("graph documents serialize")
}

/// Reads a graph document. Unknown top-level fields are ignored, so a
/// realization document decodes to its graph.
pub fn decode_graph(text: &str) -> Result<WeightedGraph, ParseError> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    if doc.n != doc.external.len() {
        return Err(field_error(
            "n",
            format!("n = {} but {} external vertices are listed", doc.n, doc.external.len()),
        ));
    }
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (i, e) in doc.edges.iter().enumerate() {
        let w = e.w.parse(&format!("edges[{i}].w"))?;
        edges.push((VertexId(e.u), VertexId(e.v), w));
    }
    let parts = GraphParts {
        vertices: doc.vertices.into_iter().map(VertexId).collect(),
        edges,
        external: doc.external.into_iter().map(VertexId).collect(),
    };
    Ok(WeightedGraph::try_from(parts)?)
}

pub fn family_to_value(family: &DissimilarityFamily) -> Value {
    let hat: Map<String, Value> = family
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| ((i + 1).to_string(), Value::String(format_rational(v))))
        .collect();
    json!({"n": family.n(), "hat": hat})
}

fn values_from_array(items: &[Value], field: &str) -> Result<Vec<Rational>, ParseError> {
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let text: NumberText = serde_json::from_value(item.clone())
                .map_err(|_| field_error(format!("{field}[{i}]"), "expected a number or string"))?;
            text.parse(&format!("{field}[{i}]"))
        })
        .collect()
}

fn family_from_value(value: &Value) -> Result<DissimilarityFamily, ParseError> {
    let values = match value {
        Value::Array(items) => values_from_array(items, "values")?,
        Value::Object(map) => {
            if let Some(Value::Array(items)) = map.get("values") {
                values_from_array(items, "values")?
            } else if let Some(Value::Object(hat)) = map.get("hat") {
                let n = hat.len();
                (1..=n)
                    .map(|label| {
                        let key = label.to_string();
                        let field = format!("hat.{key}");
                        let item = hat
                            .get(&key)
                            .ok_or_else(|| field_error(&field, "missing label"))?;
                        let text: NumberText = serde_json::from_value(item.clone())
                            .map_err(|_| field_error(&field, "expected a number or string"))?;
                        text.parse(&field)
                    })
                    .collect::<Result<_, _>>()?
            } else {
                return Err(field_error("family", "expected a \"values\" array or a \"hat\" object"));
            }
        }
        _ => return Err(field_error("family", "expected an array or an object")),
    };
    if let Some(n) = value.get("n").and_then(Value::as_u64) {
        if n as usize != values.len() {
            return Err(field_error(
                "n",
                format!("n = {n} but {} values are listed", values.len()),
            ));
        }
    }
    Ok(DissimilarityFamily::new(values)?)
}

/// Reads one family: a JSON array, a `{"values": [...]}` or `{"hat": {...}}`
/// object, or plain text such as `5, 5, 6, 41/5` or `(5 5 6 41/5)`.
pub fn parse_family(text: &str) -> Result<DissimilarityFamily, ParseError> {
    let trimmed = text.trim();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        let value: Value = serde_json::from_str(trimmed)?;
        return family_from_value(&value);
    }
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(trimmed);
    let values = inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .enumerate()
        .map(|(i, s)| parse_rational(s).map_err(|e| field_error(format!("values[{i}]"), e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DissimilarityFamily::new(values)?)
}

/// Reads one family per non-empty line (JSON Lines or plain text). A
/// document whose first line is not a family on its own is read as a single
/// family.
pub fn parse_families(text: &str) -> Result<Vec<DissimilarityFamily>, ParseError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    match lines.first() {
        None => Err(field_error("input", "no family given")),
        Some((_, first)) if lines.len() > 1 && parse_family(first).is_ok() => lines
            .iter()
            .map(|(i, l)| {
                parse_family(l).map_err(|e| match e {
                    ParseError::Syntax { column, message, .. } => ParseError::Syntax {
                        line: i + 1,
                        column,
                        message,
                    },
                    other => field_error(format!("line {}", i + 1), other.to_string()),
                })
            })
            .collect(),
        Some(_) => Ok(vec![parse_family(text)?]),
    }
}

pub fn vector_to_value(vector: &DissimilarityVector) -> Value {
    let entries: Vec<Value> = vector
        .entries
        .iter()
        .map(|(subset, value)| json!({"subset": subset, "value": format_rational(value)}))
        .collect();
    json!({"n": vector.n, "k": vector.k, "entries": entries})
}

pub fn construction_name(construction: &Construction) -> &'static str {
    match construction {
        Construction::StarNewCenter => "star-new-center",
        Construction::StarAtLabel(_) => "star-at-label",
        Construction::Caterpillar { .. } => "caterpillar",
        Construction::Triangle => "triangle",
        Construction::RepeatedMax { .. } => "repeated-max",
        Construction::UniqueMax { .. } => "unique-max",
        Construction::FourWithInternal => "four-with-internal",
    }
}

/// Graph document extended with how the graph was built.
pub fn realization_to_value(realization: &Realization) -> Value {
    let mut value = graph_to_value(&realization.graph);
    let map = value.as_object_mut().expect("graph document is an object");
    map.insert(
        "construction".into(),
        Value::String(construction_name(&realization.construction).into()),
    );
    map.insert("permutation".into(), json!(realization.permutation));
    map.insert(
        "internal_vertices".into(),
        json!(realization.internal_vertices().iter().map(|v| v.0).collect::<Vec<_>>()),
    );
    map.insert("trace".into(), json!(realization.trace));
    value
}

/// Undirected DOT text; edge labels are exact weights and external vertices
/// are drawn as double circles.
pub fn to_dot(graph: &WeightedGraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in graph.vertices() {
        if graph.external().contains(&v) {
            let _ = writeln!(out, "  {v} [shape=doublecircle];");
        } else {
            let _ = writeln!(out, "  {v} [shape=circle];");
        }
    }
    for (e, w) in graph.edges() {
        let _ = writeln!(out, "  {} -- {} [label=\"{}\"];", e.lo(), e.hi(), format_rational(w));
    }
    out.push_str("}\n");
    out
}
