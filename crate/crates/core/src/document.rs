//! Labeled graph documents in JSON or TSV form.
//!
//! JSON:
//!
//! ```json
//! {"directed": true, "vertices": ["a", "b"], "arcs": [{"from": "a", "to": "b", "weight": "7/3"}]}
//! ```
//!
//! TSV: a `#directed` or `#undirected` header, then one `from<TAB>to<TAB>weight`
//! line per arc. A line holding a single label declares an isolated vertex.
//! Weights are integers, decimals or fractions, given as strings in JSON
//! (bare JSON integers are accepted too).

use std::collections::{BTreeSet, HashMap};

use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{WeightedDigraph, WeightedGraph};
use crate::weight::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct DocumentError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocumentArc {
    pub from: usize,
    pub to: usize,
    pub weight: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDocument {
    pub directed: bool,
    pub labels: Vec<String>,
    pub arcs: Vec<DocumentArc>,
}

#[derive(Deserialize)]
struct RawDocument {
    directed: bool,
    vertices: Vec<String>,
    #[serde(default)]
    arcs: Vec<RawArc>,
}

#[derive(Deserialize)]
struct RawArc {
    from: String,
    to: String,
    weight: Value,
}

impl GraphDocument {
    /// JSON when the first non-blank character is `{`, TSV otherwise.
    pub fn parse(src: &str) -> Result<Self, DocumentError> {
        if src.trim_start().starts_with('{') {
            Self::from_json(src)
        } else {
            Self::from_tsv(src)
        }
    }

    pub fn from_json(src: &str) -> Result<Self, DocumentError> {
        let raw: RawDocument = serde_json::from_str(src).map_err(|e| DocumentError {
            line: e.line(),
            column: e.column(),
            message: e
                .to_string()
                .split(" at line")
                .next()
                .unwrap_or_default()
                .to_string(),
        })?;
        let at = |token: &str, nth: usize, message: String| {
            let (line, column) = locate(src, &Value::from(token).to_string(), nth);
            DocumentError {
                line,
                column,
                message,
            }
        };
        let mut builder = Builder::new(raw.directed);
        for label in &raw.vertices {
            if !builder.declare(label) {
                return Err(at(label, 1, format!("duplicate vertex label `{label}`")));
            }
        }
        for arc in raw.arcs {
            let endpoint = |label: &str| {
                builder
                    .index
                    .get(label)
                    .copied()
                    .ok_or_else(|| at(label, 1, format!("unknown vertex `{label}`")))
            };
            let (from, to) = (endpoint(&arc.from)?, endpoint(&arc.to)?);
            let weight = match &arc.weight {
                Value::String(s) => s
                    .parse()
                    .map_err(|e: crate::weight::ParseWeightError| at(s, 0, e.to_string()))?,
                Value::Number(n) if n.is_i64() => Rational::from_integer(n.as_i64().unwrap()),
                other => {
                    let token = other.to_string();
                    let (line, column) = locate(src, &token, 0);
                    return Err(DocumentError {
                        line,
                        column,
                        message: format!(
                            "invalid weight `{token}`: write non-integer weights as strings"
                        ),
                    });
                }
            };
            builder
                .arc(from, to, weight)
                .map_err(|message| at(&arc.to, 0, message))?;
        }
        builder.finish().map_err(|message| DocumentError {
            line: 1,
            column: 1,
            message,
        })
    }

    pub fn from_tsv(src: &str) -> Result<Self, DocumentError> {
        let mut lines = src
            .lines()
            .enumerate()
            .map(|(idx, line)| (idx + 1, line.trim_end_matches('\r')))
            .filter(|(_, line)| !line.trim().is_empty());
        let header_error = |line| DocumentError {
            line,
            column: 1,
            message: "expected a `#directed` or `#undirected` header".into(),
        };
        let (header_line, header) = lines.next().ok_or_else(|| header_error(1))?;
        let directed = match header.trim() {
            "#directed" => true,
            "#undirected" => false,
            _ => return Err(header_error(header_line)),
        };
        let mut builder = Builder::new(directed);
        for (line, text) in lines {
            if text.starts_with('#') {
                continue;
            }
            let mut fields = Vec::new();
            let mut offset = 0;
            for field in text.split('\t') {
                fields.push((text[..offset].chars().count() + 1, field.trim()));
                offset += field.len() + 1;
            }
            let err = |column, message| DocumentError {
                line,
                column,
                message,
            };
            match fields.as_slice() {
                [(_, label)] => {
                    builder.declare(label);
                }
                [(c1, from), (c2, to), (c3, weight)] => {
                    let from = builder.declare_index(from).map_err(|m| err(*c1, m))?;
                    let to = builder.declare_index(to).map_err(|m| err(*c2, m))?;
                    let weight = weight
                        .parse()
                        .map_err(|e: crate::weight::ParseWeightError| err(*c3, e.to_string()))?;
                    builder.arc(from, to, weight).map_err(|m| err(*c1, m))?;
                }
                _ => {
                    return Err(err(
                        1,
                        format!(
                            "expected `from<TAB>to<TAB>weight`, found {} fields",
                            fields.len()
                        ),
                    ))
                }
            }
        }
        builder.finish().map_err(|message| DocumentError {
            line: header_line,
            column: 1,
            message,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Arcs as given; undirected edges become both orientations.
    pub fn digraph(&self) -> WeightedDigraph {
        let arcs = self.arcs.iter().flat_map(|a| {
            let back = (!self.directed).then(|| (a.to, a.from, a.weight.clone()));
            std::iter::once((a.from, a.to, a.weight.clone())).chain(back)
        });
        WeightedDigraph::from_arcs(self.vertex_count(), arcs).expect("documents have vertices")
    }

    /// The undirected graph of an undirected document.
    pub fn graph(&self) -> Option<WeightedGraph> {
        if self.directed {
            return None;
        }
        let edges = self.arcs.iter().map(|a| (a.from, a.to, a.weight.clone()));
        Some(
            WeightedGraph::from_edges(self.vertex_count(), edges).expect("documents have vertices"),
        )
    }

    pub fn from_digraph(g: &WeightedDigraph, labels: Vec<String>) -> Self {
        let arcs = g
            .arcs()
            .map(|(from, to, w)| DocumentArc {
                from,
                to,
                weight: w.clone(),
            })
            .collect();
        GraphDocument {
            directed: true,
            labels,
            arcs,
        }
    }

    pub fn from_graph(p: &WeightedGraph, labels: Vec<String>) -> Self {
        let arcs = p
            .edges()
            .map(|(from, to, w)| DocumentArc {
                from,
                to,
                weight: w.clone(),
            })
            .collect();
        GraphDocument {
            directed: false,
            labels,
            arcs,
        }
    }

    /// Vertices `0..n` labeled by their numbers.
    pub fn numbered_labels(n: usize) -> Vec<String> {
        (0..n).map(|v| v.to_string()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "directed": self.directed,
            "vertices": self.labels,
            "arcs": self.arcs.iter().map(|a| json!({
                "from": self.labels[a.from],
                "to": self.labels[a.to],
                "weight": a.weight.to_string(),
            })).collect::<Vec<_>>(),
        })
    }

    /// TSV form, declaring every vertex first so the numbering survives.
    /// Labels holding tabs or newlines do not.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from(if self.directed {
            "#directed\n"
        } else {
            "#undirected\n"
        });
        for label in &self.labels {
            out.push_str(label);
            out.push('\n');
        }
        for a in &self.arcs {
            out.push_str(&format!(
                "{}\t{}\t{}\n",
                self.labels[a.from], self.labels[a.to], a.weight
            ));
        }
        out
    }
}

struct Builder {
    directed: bool,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    arcs: Vec<DocumentArc>,
    seen: BTreeSet<(usize, usize)>,
}

impl Builder {
    fn new(directed: bool) -> Self {
        Builder {
            directed,
            labels: Vec::new(),
            index: HashMap::new(),
            arcs: Vec::new(),
            seen: BTreeSet::new(),
        }
    }

    /// False when the label already exists.
    fn declare(&mut self, label: &str) -> bool {
        if self.index.contains_key(label) {
            return false;
        }
        self.index.insert(label.to_string(), self.labels.len());
        self.labels.push(label.to_string());
        true
    }

    fn declare_index(&mut self, label: &str) -> Result<usize, String> {
        if label.is_empty() {
            return Err("empty vertex label".into());
        }
        self.declare(label);
        Ok(self.index[label])
    }

    fn arc(&mut self, from: usize, to: usize, weight: Rational) -> Result<(), String> {
        // parallel arcs are kept here and collapse in the digraph
        if !self.directed && !self.seen.insert((from.min(to), from.max(to))) {
            return Err(format!(
                "edge {} - {} listed twice",
                self.labels[from], self.labels[to]
            ));
        }
        self.arcs.push(DocumentArc { from, to, weight });
        Ok(())
    }

    fn finish(self) -> Result<GraphDocument, String> {
        if self.labels.is_empty() {
            return Err("a graph needs at least one vertex".into());
        }
        Ok(GraphDocument {
            directed: self.directed,
            labels: self.labels,
            arcs: self.arcs,
        })
    }
}

/// 1-based line and column of the `nth` (0-based) occurrence of `needle`,
/// or of the last one when there are fewer.
fn locate(src: &str, needle: &str, nth: usize) -> (usize, usize) {
    let Some(pos) = src
        .match_indices(needle)
        .map(|(pos, _)| pos)
        .take(nth + 1)
        .last()
    else {
        return (1, 1);
    };
    let before = &src[..pos];
    let line = before.matches('\n').count() + 1;
    let column = before[before.rfind('\n').map_or(0, |p| p + 1)..]
        .chars()
        .count()
        + 1;
    (line, column)
}

#[cfg(test)]
mod tests {
    use super::*;

    const THREE_CYCLE: &str = r#"{
  "directed": true,
  "vertices": ["a", "b", "c"],
  "arcs": [
    {"from": "a", "to": "b", "weight": "1"},
    {"from": "b", "to": "c", "weight": 2},
    {"from": "c", "to": "a", "weight": "3.0"},
    {"from": "b", "to": "a", "weight": "8/2"},
    {"from": "c", "to": "b", "weight": "5"},
    {"from": "a", "to": "c", "weight": "6"}
  ]
}"#;

    #[test]
    fn reads_json() {
        let doc = GraphDocument::parse(THREE_CYCLE).unwrap();
        assert_eq!(doc.labels, ["a", "b", "c"]);
        assert_eq!(doc.digraph(), crate::graph::tests::three_cycle());
    }

    #[test]
    fn json_round_trip() {
        let doc = GraphDocument::parse(THREE_CYCLE).unwrap();
        let again = GraphDocument::parse(&doc.to_json().to_string()).unwrap();
        assert_eq!(again, doc);
        let tsv = GraphDocument::parse(&doc.to_tsv()).unwrap();
        assert_eq!(tsv, doc);
    }

    #[test]
    fn reads_tsv() {
        let src = "#undirected\nx\ty\t-1.25\n\ny\tz\t7/3\nw\n";
        let doc = GraphDocument::parse(src).unwrap();
        assert!(!doc.directed);
        assert_eq!(doc.labels, ["x", "y", "z", "w"]);
        let p = doc.graph().unwrap();
        assert_eq!(p.edge(1, 0), Some(&Rational::new(-5, 4)));
        assert_eq!(p.edge(2, 1), Some(&Rational::new(7, 3)));
    }

    #[test]
    fn bad_weight_is_located() {
        let src = "#directed\na\tb\t1\nb\ta\tabc\n";
        let err = GraphDocument::parse(src).unwrap_err();
        assert_eq!((err.line, err.column), (3, 5));
        assert!(err.message.contains("abc"), "{}", err.message);

        let json = THREE_CYCLE.replace("\"3.0\"", "\"abc\"");
        let err = GraphDocument::parse(&json).unwrap_err();
        assert_eq!((err.line, err.column), (7, 40));
        assert!(err.message.contains("abc"));

        let json = THREE_CYCLE.replace("\"3.0\"", "3.5");
        let err = GraphDocument::parse(&json).unwrap_err();
        assert!(err.message.contains("3.5"));
    }

    #[test]
    fn structural_errors() {
        let err = GraphDocument::parse("{\"directed\": true, \"vertices\": [\"a\",\n \"a\"]}")
            .unwrap_err();
        assert_eq!((err.line, err.column), (2, 2));
        assert!(err.message.contains("duplicate"));

        let err = GraphDocument::parse(
            r#"{"directed": true, "vertices": ["a"], "arcs": [{"from": "a", "to": "q", "weight": "1"}]}"#,
        )
        .unwrap_err();
        assert!(err.message.contains("unknown vertex `q`"));

        let err = GraphDocument::parse("#undirected\na\tb\t1\nb\ta\t2\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("twice"));

        let doc = GraphDocument::parse("#directed\na\tb\t3\na\tb\t1\n").unwrap();
        assert_eq!(doc.arcs.len(), 2);
        assert_eq!(doc.digraph().arc(0, 1), Some(&Rational::from_integer(1)));

        let err = GraphDocument::parse("{\"directed\": tru}").unwrap_err();
        assert_eq!(err.line, 1);

        assert!(GraphDocument::parse("a\tb\t1\n").is_err());
        assert!(GraphDocument::parse("#directed\n").is_err());
        assert!(GraphDocument::parse("#directed\na\tb\n").is_err());
    }

    #[test]
    fn extra_fields_are_ignored() {
        let src = r#"{"directed": false, "vertices": ["p"], "arcs": [], "level": 3}"#;
        assert_eq!(GraphDocument::parse(src).unwrap().vertex_count(), 1);
    }
}
