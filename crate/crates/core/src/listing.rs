//! Parsers for solver text listings.
//!
//! Four listing kinds are understood: the node list (id followed by
//! coordinates), the element list (`EL MAT TYP REL ESY SEC NODES...`), the
//! surface-node list (a subset of node ids, coordinates optional) and the
//! per-node result list (id followed by one or more values).
//!
//! All parsers work line by line over whitespace-separated tokens. Lines that
//! do not match the data-line rule of a listing are skipped; a warning is
//! recorded only when such a line contains a token that starts with a digit,
//! which usually means a truncated or damaged export rather than a header.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type NodeId = u32;
pub type ElementId = u32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub id: NodeId,
    pub position: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub id: ElementId,
    pub material: i64,
    pub type_ref: i64,
    pub real_const: i64,
    pub esys: i64,
    pub section: i64,
    /// Original node numbers in listing order. Repeats are kept verbatim.
    pub node_ids: Vec<NodeId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseWarning {
    /// 1-based line number in the listing.
    pub line_number: usize,
    pub reason: String,
}

impl std::fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line_number, self.reason)
    }
}

/// Number of metadata columns preceding the node ids of an element row.
pub const ELEMENT_META_COLUMNS: usize = 6;

fn positive_id(token: &str) -> Option<u32> {
    token.parse::<u32>().ok().filter(|&v| v > 0)
}

fn finite_real(token: &str) -> Option<f64> {
    token.parse::<f64>().ok().filter(|v| v.is_finite())
}

// Data lines lead with a number; banners and footers lead with a word.
fn leads_with_number(tokens: &[&str]) -> bool {
    let Some(first) = tokens.first().map(|t| t.as_bytes()) else {
        return false;
    };
    let digits = match first {
        [b'+' | b'-' | b'.', rest @ ..] => rest,
        all => all,
    };
    digits.first().is_some_and(u8::is_ascii_digit)
}

fn numbered_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.split_whitespace().collect()))
}

fn skip_line(tokens: &[&str], line_number: usize, what: &str, warnings: &mut Vec<ParseWarning>) {
    if leads_with_number(tokens) {
        warnings.push(ParseWarning {
            line_number,
            reason: format!("unparsable {what} line skipped"),
        });
    }
}

/// Parse a node listing into records in line order.
///
/// A data line starts with a positive integer id followed by at least three
/// finite reals; the first three become the position and any further columns
/// (rotation angles and the like) are ignored.
pub fn parse_node_list(text: &str) -> Result<(Vec<NodeRecord>, Vec<ParseWarning>)> {
    let mut nodes = Vec::new();
    let mut warnings = Vec::new();
    let mut seen: HashMap<NodeId, usize> = HashMap::new();

    for (line_number, tokens) in numbered_lines(text) {
        let record = match tokens.as_slice() {
            [id, x, y, z, ..] => positive_id(id).and_then(|id| {
                Some(NodeRecord {
                    id,
                    position: [finite_real(x)?, finite_real(y)?, finite_real(z)?],
                })
            }),
            _ => None,
        };
        let Some(record) = record else {
            skip_line(&tokens, line_number, "node", &mut warnings);
            continue;
        };
        if let Some(&first_line) = seen.get(&record.id) {
            return Err(Error::DuplicateNode {
                id: record.id,
                first_line,
                second_line: line_number,
            });
        }
        seen.insert(record.id, line_number);
        nodes.push(record);
    }
    Ok((nodes, warnings))
}

/// Parse an element listing.
///
/// A data line holds at least seven integer tokens: six metadata columns
/// (`EL MAT TYP REL ESY SEC`) followed by the node ids. Solvers wrap long
/// node lists, so when `expected_node_counts[type_ref]` asks for more nodes
/// than the row carries, the immediately following all-integer lines are
/// consumed as continuations.
pub fn parse_element_list(
    text: &str,
    expected_node_counts: &BTreeMap<i64, usize>,
) -> Result<(Vec<ElementRecord>, Vec<ParseWarning>)> {
    let mut elements = Vec::new();
    let mut warnings = Vec::new();
    let mut seen: HashMap<ElementId, usize> = HashMap::new();

    let lines: Vec<(usize, Vec<&str>)> = numbered_lines(text).collect();
    let mut cursor = 0;
    while cursor < lines.len() {
        let (line_number, tokens) = &lines[cursor];
        cursor += 1;

        let Some(mut record) = element_row(tokens) else {
            skip_line(tokens, *line_number, "element", &mut warnings);
            continue;
        };

        let expected = expected_node_counts
            .get(&record.type_ref)
            .copied()
            .unwrap_or(0);
        let mut last_line = *line_number;
        while record.node_ids.len() < expected {
            let missing = expected - record.node_ids.len();
            let continuation = lines
                .get(cursor)
                .and_then(|(_, tokens)| continuation_row(tokens))
                .filter(|ids| ids.len() <= missing);
            let Some(ids) = continuation else {
                return Err(Error::MissingContinuation {
                    element: record.id,
                    line: last_line,
                });
            };
            record.node_ids.extend(ids);
            last_line = lines[cursor].0;
            cursor += 1;
        }

        if let Some(&first_line) = seen.get(&record.id) {
            return Err(Error::DuplicateElement {
                id: record.id,
                first_line,
                second_line: *line_number,
            });
        }
        seen.insert(record.id, *line_number);
        elements.push(record);
    }
    Ok((elements, warnings))
}

fn element_row(tokens: &[&str]) -> Option<ElementRecord> {
    if tokens.len() <= ELEMENT_META_COLUMNS {
        return None;
    }
    let mut meta = [0i64; ELEMENT_META_COLUMNS];
    for (slot, token) in meta.iter_mut().zip(tokens) {
        *slot = token.parse().ok()?;
    }
    let id = u32::try_from(meta[0]).ok().filter(|&id| id > 0)?;
    let node_ids = continuation_row(&tokens[ELEMENT_META_COLUMNS..])?;
    Some(ElementRecord {
        id,
        material: meta[1],
        type_ref: meta[2],
        real_const: meta[3],
        esys: meta[4],
        section: meta[5],
        node_ids,
    })
}

fn continuation_row(tokens: &[&str]) -> Option<Vec<NodeId>> {
    if tokens.is_empty() {
        return None;
    }
    tokens.iter().map(|t| positive_id(t)).collect()
}

/// Collect the node ids of a surface-node listing.
///
/// Any line whose first token is a positive integer and whose remaining
/// tokens (if any) are finite reals contributes its id.
pub fn parse_surface_node_list(text: &str) -> (BTreeSet<NodeId>, Vec<ParseWarning>) {
    let mut ids = BTreeSet::new();
    let mut warnings = Vec::new();
    for (line_number, tokens) in numbered_lines(text) {
        let id = match tokens.split_first() {
            Some((first, rest)) if rest.iter().all(|t| finite_real(t).is_some()) => {
                positive_id(first)
            }
            _ => None,
        };
        match id {
            Some(id) => {
                ids.insert(id);
            }
            None => skip_line(&tokens, line_number, "surface node", &mut warnings),
        }
    }
    (ids, warnings)
}

/// Parse a per-node result listing, taking the `value_column`-th value
/// (1-based, counted after the node id) of every data line.
pub fn parse_result_list(
    text: &str,
    value_column: usize,
) -> Result<(BTreeMap<NodeId, f64>, Vec<ParseWarning>)> {
    if value_column == 0 {
        return Err(Error::InvalidValueColumn);
    }
    let mut values = BTreeMap::new();
    let mut warnings = Vec::new();

    for (line_number, tokens) in numbered_lines(text) {
        let row = tokens.split_first().and_then(|(first, rest)| {
            let id = positive_id(first)?;
            let reals: Option<Vec<f64>> = rest.iter().map(|t| finite_real(t)).collect();
            reals.filter(|r| !r.is_empty()).map(|r| (id, r))
        });
        let Some((id, reals)) = row else {
            skip_line(&tokens, line_number, "result", &mut warnings);
            continue;
        };
        let Some(&value) = reals.get(value_column - 1) else {
            return Err(Error::ValueColumnOutOfRange {
                line: line_number,
                column: value_column,
                available: reals.len(),
            });
        };
        if values.insert(id, value).is_some() {
            warnings.push(ParseWarning {
                line_number,
                reason: format!("node {id} listed again; later value kept"),
            });
        }
    }
    Ok((values, warnings))
}

/// Canonical node listing, one `id x y z` row per record.
pub fn write_node_list(nodes: &[NodeRecord]) -> String {
    let mut out = String::new();
    for node in nodes {
        let [x, y, z] = node.position;
        let _ = writeln!(out, "{} {x:?} {y:?} {z:?}", node.id);
    }
    out
}

/// Canonical element listing. Node ids are never wrapped onto
/// continuation lines.
pub fn write_element_list(elements: &[ElementRecord]) -> String {
    let mut out = String::new();
    for e in elements {
        let _ = write!(
            out,
            "{} {} {} {} {} {}",
            e.id, e.material, e.type_ref, e.real_const, e.esys, e.section
        );
        for id in &e.node_ids {
            let _ = write!(out, " {id}");
        }
        out.push('\n');
    }
    out
}

pub fn write_result_list(values: &BTreeMap<NodeId, f64>) -> String {
    let mut out = String::new();
    for (id, value) in values {
        let _ = writeln!(out, "{id} {value:?}");
    }
    out
}
