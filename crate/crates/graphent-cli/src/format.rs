//! The plain-text graph format.
//!
//! One item per line, `#` starts a comment, blank lines are ignored:
//!
//! ```text
//! graph <name>
//! vertex <id>
//! edge <id> <origin-vertex> <terminus-vertex> <length>
//! ```
//!
//! The `graph` line comes first and appears exactly once.  Identifiers
//! are arbitrary whitespace-free tokens, unique within their namespace
//! (vertices and edges are separate namespaces), and must be declared
//! before use.  Each `edge` line declares one unoriented pair — the
//! reverse orientation is implicit — with a strictly positive, finite
//! decimal length (scientific notation is accepted).
//!
//! [`emit`](NamedGraph::emit) prints lengths with 17 significant digits,
//! which pins down an IEEE double exactly, so
//! `parse(emit(g)) == g` reproduces the graph *bit for bit*: names,
//! declaration order, and every length.

use std::fmt;

use graphent_core::graph::{Graph, LengthFunction, PairId};

/// A parsed graph file: topology and lengths plus the user-facing names.
///
/// Pair `i` of [`graph`](Self::graph) is the `i`-th `edge` line of the
/// file; `lengths` is indexed the same way.  The name vectors follow
/// declaration order, so emitting reproduces the input layout.
#[derive(Clone, Debug)]
pub struct NamedGraph {
    /// The token on the `graph` line.
    pub name: String,
    /// Vertex identifiers in declaration order.
    pub vertex_names: Vec<String>,
    /// Edge identifiers in declaration order (one per pair).
    pub edge_names: Vec<String>,
    /// The topology (vertices are declaration indices).
    pub graph: Graph,
    /// Pair lengths in declaration order.
    pub lengths: LengthFunction,
}

/// A parse failure, pointing at the offending line (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Line the problem was detected on; `0` for whole-file problems
    /// (empty input, no edges).
    pub line: usize,
    /// What went wrong.
    pub kind: ParseErrorKind,
}

/// The ways a graph file can be malformed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// The first directive was not `graph`, or the file had none at all.
    MissingGraphHeader,
    /// A second `graph` line.
    DuplicateGraphHeader,
    /// A directive other than `graph`, `vertex`, or `edge`.
    UnknownDirective(String),
    /// Wrong number of tokens after the directive.
    WrongFieldCount {
        /// The directive of the offending line.
        directive: &'static str,
        /// Tokens the directive needs after its keyword.
        expected: usize,
        /// Tokens actually present.
        found: usize,
    },
    /// A vertex identifier declared twice.
    DuplicateVertex(String),
    /// An edge identifier declared twice.
    DuplicateEdge(String),
    /// An edge endpoint that no `vertex` line declared.
    UnknownVertex(String),
    /// A length that does not parse as a decimal number.
    BadLength(String),
    /// A length that parses but is not strictly positive and finite.
    NonPositiveLength(String),
    /// The file declares no edges, so there is no graph to build.
    NoEdges,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "line {}: ", self.line)?;
        }
        match &self.kind {
            ParseErrorKind::MissingGraphHeader => {
                write!(f, "expected `graph <name>` as the first directive")
            }
            ParseErrorKind::DuplicateGraphHeader => {
                write!(f, "second `graph` line; a file holds one graph")
            }
            ParseErrorKind::UnknownDirective(d) => {
                write!(f, "unknown directive `{d}` (expected vertex or edge)")
            }
            ParseErrorKind::WrongFieldCount { directive, expected, found } => {
                write!(f, "`{directive}` takes {expected} field(s), found {found}")
            }
            ParseErrorKind::DuplicateVertex(v) => write!(f, "vertex `{v}` declared twice"),
            ParseErrorKind::DuplicateEdge(e) => write!(f, "edge `{e}` declared twice"),
            ParseErrorKind::UnknownVertex(v) => write!(f, "unknown vertex `{v}`"),
            ParseErrorKind::BadLength(s) => write!(f, "cannot parse length `{s}`"),
            ParseErrorKind::NonPositiveLength(s) => {
                write!(f, "length `{s}` must be strictly positive and finite")
            }
            ParseErrorKind::NoEdges => write!(f, "the file declares no edges"),
        }
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Parses the text format into a [`NamedGraph`].
///
/// # Errors
///
/// [`ParseError`] with the 1-based line number of the first problem.
pub fn parse(text: &str) -> Result<NamedGraph, ParseError> {
    let mut name: Option<String> = None;
    let mut vertex_names: Vec<String> = Vec::new();
    let mut edge_names: Vec<String> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut lengths: Vec<f64> = Vec::new();

    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(directive) = tokens.next() else { continue };
        let rest: Vec<&str> = tokens.collect();

        let expect = |directive: &'static str, expected: usize| -> Result<(), ParseError> {
            if rest.len() == expected {
                Ok(())
            } else {
                Err(err(
                    line,
                    ParseErrorKind::WrongFieldCount { directive, expected, found: rest.len() },
                ))
            }
        };

        match directive {
            "graph" => {
                expect("graph", 1)?;
                if name.is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateGraphHeader));
                }
                name = Some(rest[0].to_owned());
            }
            "vertex" => {
                if name.is_none() {
                    return Err(err(line, ParseErrorKind::MissingGraphHeader));
                }
                expect("vertex", 1)?;
                let v = rest[0];
                if vertex_names.iter().any(|n| n == v) {
                    return Err(err(line, ParseErrorKind::DuplicateVertex(v.to_owned())));
                }
                vertex_names.push(v.to_owned());
            }
            "edge" => {
                if name.is_none() {
                    return Err(err(line, ParseErrorKind::MissingGraphHeader));
                }
                expect("edge", 4)?;
                let e = rest[0];
                if edge_names.iter().any(|n| n == e) {
                    return Err(err(line, ParseErrorKind::DuplicateEdge(e.to_owned())));
                }
                let endpoint = |token: &str| -> Result<usize, ParseError> {
                    vertex_names
                        .iter()
                        .position(|n| n == token)
                        .ok_or_else(|| err(line, ParseErrorKind::UnknownVertex(token.to_owned())))
                };
                let origin = endpoint(rest[1])?;
                let terminus = endpoint(rest[2])?;
                let value: f64 = rest[3]
                    .parse()
                    .map_err(|_| err(line, ParseErrorKind::BadLength(rest[3].to_owned())))?;
                if !value.is_finite() || value <= 0.0 {
                    return Err(err(line, ParseErrorKind::NonPositiveLength(rest[3].to_owned())));
                }
                edge_names.push(e.to_owned());
                pairs.push((origin, terminus));
                lengths.push(value);
            }
            other => {
                if name.is_none() {
                    return Err(err(line, ParseErrorKind::MissingGraphHeader));
                }
                return Err(err(line, ParseErrorKind::UnknownDirective(other.to_owned())));
            }
        }
    }

    let Some(name) = name else {
        return Err(err(0, ParseErrorKind::MissingGraphHeader));
    };
    if pairs.is_empty() {
        return Err(err(0, ParseErrorKind::NoEdges));
    }
    let graph = Graph::new(vertex_names.len(), &pairs)
        .expect("endpoints are declaration indices, and at least one edge exists");
    let lengths = LengthFunction::new(lengths)
        .expect("lengths were checked strictly positive and finite");
    Ok(NamedGraph { name, vertex_names, edge_names, graph, lengths })
}

/// Formats one length with 17 significant digits (scientific notation),
/// enough to reproduce the exact IEEE double on re-parse.
#[must_use]
pub fn emit_length(value: f64) -> String {
    format!("{value:.16e}")
}

impl NamedGraph {
    /// Wraps a bare graph in generated names (`v0, v1, …` / `e0, e1, …`).
    #[must_use]
    pub fn with_default_names(name: &str, graph: Graph, lengths: LengthFunction) -> NamedGraph {
        let vertex_names = (0..graph.vertex_count()).map(|i| format!("v{i}")).collect();
        let edge_names = (0..graph.pair_count()).map(|i| format!("e{i}")).collect();
        NamedGraph { name: name.to_owned(), vertex_names, edge_names, graph, lengths }
    }

    /// Looks an edge pair up by its file identifier.
    #[must_use]
    pub fn pair_by_name(&self, name: &str) -> Option<PairId> {
        self.edge_names.iter().position(|n| n == name).map(|i| PairId(i as u32))
    }

    /// The same graph with new lengths (shares names and topology).
    #[must_use]
    pub fn with_lengths(&self, lengths: LengthFunction) -> NamedGraph {
        NamedGraph { lengths, ..self.clone() }
    }

    /// Renders the text format; [`parse`] of the result reproduces `self`
    /// exactly.
    #[must_use]
    pub fn emit(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("graph {}\n", self.name));
        for v in &self.vertex_names {
            out.push_str(&format!("vertex {v}\n"));
        }
        for (i, e) in self.edge_names.iter().enumerate() {
            let p = PairId(i as u32);
            out.push_str(&format!(
                "edge {e} {} {} {}\n",
                self.vertex_names[self.graph.origin(p.forward())],
                self.vertex_names[self.graph.terminus(p.forward())],
                emit_length(self.lengths.get(p.forward())),
            ));
        }
        out
    }
}
