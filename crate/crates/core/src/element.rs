//! Element classification and surface node maps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::listing::{ElementRecord, NodeId};

/// Largest node list a [`NodeMap`] can describe.
pub const MAX_ELEMENT_NODES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementClass {
    /// Triangular or quadrilateral shell, 3 or 4 distinct nodes.
    Shell,
    /// 8-node brick.
    Hex8,
    /// 10-node tetrahedron with midside nodes.
    Solid92,
    Unsupported,
}

impl ElementClass {
    /// Node-list length a listing row must reach before it is complete.
    pub fn expected_node_count(self) -> Option<usize> {
        match self {
            ElementClass::Hex8 => Some(8),
            ElementClass::Solid92 => Some(10),
            ElementClass::Shell | ElementClass::Unsupported => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ElementClass::Shell => "shell",
            ElementClass::Hex8 => "hex8",
            ElementClass::Solid92 => "solid92",
            ElementClass::Unsupported => "unsupported",
        }
    }
}

impl fmt::Display for ElementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ElementClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "shell" => Ok(ElementClass::Shell),
            "hex8" | "hex" | "box" => Ok(ElementClass::Hex8),
            "solid92" | "tet10" => Ok(ElementClass::Solid92),
            "unsupported" | "none" => Ok(ElementClass::Unsupported),
            _ => Err(Error::InvalidTypeMapping(s.to_string())),
        }
    }
}

/// Maps the TYP column of an element listing onto an [`ElementClass`].
///
/// TYP indexes a model-specific element-type table, so the mapping is
/// user-supplied. Unmapped references classify as `Unsupported`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeMapping {
    classes: BTreeMap<i64, ElementClass>,
}

impl Default for TypeMapping {
    fn default() -> Self {
        TypeMapping {
            classes: BTreeMap::from([(1, ElementClass::Hex8), (2, ElementClass::Shell)]),
        }
    }
}

impl TypeMapping {
    pub fn empty() -> Self {
        TypeMapping {
            classes: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, type_ref: i64, class: ElementClass) -> Option<ElementClass> {
        self.classes.insert(type_ref, class)
    }

    pub fn class_of(&self, type_ref: i64) -> ElementClass {
        self.classes
            .get(&type_ref)
            .copied()
            .unwrap_or(ElementClass::Unsupported)
    }

    /// Per-TYP node counts for the element-list parser's continuation rule.
    pub fn expected_node_counts(&self) -> BTreeMap<i64, usize> {
        self.classes
            .iter()
            .filter_map(|(&t, c)| c.expected_node_count().map(|n| (t, n)))
            .collect()
    }

    /// Parse one `N=CLASS` pair, e.g. `3=solid92`.
    pub fn parse_pair(pair: &str) -> Result<(i64, ElementClass)> {
        let bad = || Error::InvalidTypeMapping(pair.to_string());
        let (typ, class) = pair.split_once('=').ok_or_else(bad)?;
        let typ = typ.trim().parse::<i64>().map_err(|_| bad())?;
        let class = class.parse::<ElementClass>().map_err(|_| bad())?;
        Ok((typ, class))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, ElementClass)> + '_ {
        self.classes.iter().map(|(&t, &c)| (t, c))
    }
}

impl FromIterator<(i64, ElementClass)> for TypeMapping {
    fn from_iter<I: IntoIterator<Item = (i64, ElementClass)>>(iter: I) -> Self {
        TypeMapping {
            classes: iter.into_iter().collect(),
        }
    }
}

/// Per-element mask of nodes to skip. Bit `i` (least significant first)
/// corresponds to local node `i + 1`; a set bit means the node is not used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct NodeMap {
    bits: u64,
    width: u8,
}

impl NodeMap {
    pub fn empty(width: usize) -> Self {
        assert!(width <= MAX_ELEMENT_NODES, "node map width {width} too large");
        NodeMap {
            bits: 0,
            width: width as u8,
        }
    }

    /// Build a map from raw bits; bits at or above `width` are discarded.
    pub fn from_bits(bits: u64, width: usize) -> Self {
        let mut map = NodeMap::empty(width);
        map.bits = bits & map.mask();
        map
    }

    fn mask(&self) -> u64 {
        if self.width as usize == MAX_ELEMENT_NODES {
            u64::MAX
        } else {
            (1u64 << self.width) - 1
        }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn is_skipped(&self, local: usize) -> bool {
        local < self.width() && self.bits & (1 << local) != 0
    }

    pub fn skip(&mut self, local: usize) {
        assert!(local < self.width(), "local node {local} out of range");
        self.bits |= 1 << local;
    }

    pub fn skipped_count(&self) -> usize {
        self.bits.count_ones() as usize
    }
}

impl fmt::Binary for NodeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.bits, width = self.width())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedElement {
    pub record: ElementRecord,
    pub class: ElementClass,
    /// Number of distinct node ids before any masking.
    pub distinct_node_count: usize,
    pub node_map: NodeMap,
}

/// Attach a class to a parsed element and check its node list fits the class.
pub fn classify(record: ElementRecord, mapping: &TypeMapping) -> Result<ClassifiedElement> {
    let class = mapping.class_of(record.type_ref);
    let found = record.node_ids.len();
    if found > MAX_ELEMENT_NODES {
        return Err(Error::TooManyNodes {
            element: record.id,
            found,
            max: MAX_ELEMENT_NODES,
        });
    }
    let distinct_node_count = record.node_ids.iter().collect::<BTreeSet<_>>().len();

    match class {
        ElementClass::Shell if !(3..=4).contains(&distinct_node_count) => {
            return Err(Error::BadShellNodeCount {
                element: record.id,
                distinct: distinct_node_count,
            });
        }
        ElementClass::Hex8 | ElementClass::Solid92 => {
            let expected = class.expected_node_count().unwrap_or_default();
            if found != expected {
                return Err(Error::WrongNodeCount {
                    element: record.id,
                    class,
                    expected,
                    found,
                });
            }
        }
        _ => {}
    }

    Ok(ClassifiedElement {
        node_map: NodeMap::empty(found),
        record,
        class,
        distinct_node_count,
    })
}

/// Mark every local node that is absent from the surface set.
pub fn compute_node_map(element: &ClassifiedElement, surface: &BTreeSet<NodeId>) -> NodeMap {
    let mut map = NodeMap::empty(element.record.node_ids.len());
    for (local, id) in element.record.node_ids.iter().enumerate() {
        if !surface.contains(id) {
            map.skip(local);
        }
    }
    map
}
