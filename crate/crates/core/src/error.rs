use thiserror::Error;

use crate::element::ElementClass;
use crate::listing::{ElementId, NodeId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate node {id} on lines {first_line} and {second_line}")]
    DuplicateNode {
        id: NodeId,
        first_line: usize,
        second_line: usize,
    },

    #[error("duplicate element {id} on lines {first_line} and {second_line}")]
    DuplicateElement {
        id: ElementId,
        first_line: usize,
        second_line: usize,
    },

    #[error("element {element}: expected a continuation line after line {line}")]
    MissingContinuation { element: ElementId, line: usize },

    #[error("value column must be at least 1")]
    InvalidValueColumn,

    #[error("line {line}: value column {column} exceeds the {available} value(s) present")]
    ValueColumnOutOfRange {
        line: usize,
        column: usize,
        available: usize,
    },

    #[error("element {element}: {class} expects {expected} nodes, found {found}")]
    WrongNodeCount {
        element: ElementId,
        class: ElementClass,
        expected: usize,
        found: usize,
    },

    #[error("element {element}: shell has {distinct} distinct node(s), expected 3 or 4")]
    BadShellNodeCount { element: ElementId, distinct: usize },

    #[error("element {element}: {found} nodes exceeds the supported maximum of {max}")]
    TooManyNodes {
        element: ElementId,
        found: usize,
        max: usize,
    },

    #[error("element {element} references missing node {node}")]
    MissingNode { element: ElementId, node: NodeId },

    #[error("empty surface: no vertices remain after excluding inner nodes")]
    EmptySurface,

    #[error("empty mesh: no triangles were produced")]
    EmptyMesh,

    #[error("field {field}: missing result for node {node}")]
    MissingResult { field: String, node: NodeId },

    #[error("field {field}: no finite values")]
    EmptyField { field: String },

    #[error("invalid type mapping '{0}': expected N=CLASS with CLASS one of shell, hex8, solid92, unsupported")]
    InvalidTypeMapping(String),

    #[error("invalid document: {key}: {reason}")]
    Document { key: String, reason: String },

    #[error("unsupported document version {0}")]
    UnsupportedVersion(i64),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn document(key: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Document {
            key: key.into(),
            reason: reason.into(),
        }
    }
}
