//! Viewer-ready mesh, per-vertex scalar fields and conversion accounting.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::listing::NodeId;

/// Triangle mesh over renumbered vertices.
///
/// Vertex `v` came from solver node `node_id_map[v]`; ids ascend with `v`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct VrMesh {
    pub vertices: Vec<[f64; 3]>,
    pub triangles: Vec<[u32; 3]>,
    pub normals: Vec<[f64; 3]>,
    pub node_id_map: Vec<NodeId>,
    pub fields: BTreeMap<String, ScalarField>,
}

impl VrMesh {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    /// Insert a field, replacing any field of the same name.
    pub fn insert_field(&mut self, field: ScalarField) -> Option<ScalarField> {
        self.fields.insert(field.name.clone(), field)
    }
}

/// Named per-vertex values. `NaN` marks a vertex whose value was missing
/// from the source listing (only produced when filling is requested).
#[derive(Debug, Clone)]
pub struct ScalarField {
    pub name: String,
    pub values: Vec<f64>,
    pub min: f64,
    pub max: f64,
    pub units: Option<String>,
}

impl ScalarField {
    /// Build a field and compute its range over the present values.
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Self {
        let (min, max) = value_range(&values);
        ScalarField {
            name: name.into(),
            values,
            min,
            max,
            units: None,
        }
    }

    pub fn with_units(mut self, units: impl Into<String>) -> Self {
        self.units = Some(units.into());
        self
    }

    pub fn present_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().copied().filter(|v| !v.is_nan())
    }
}

/// Min and max over the non-NaN values, `(NaN, NaN)` when there are none.
pub fn value_range(values: &[f64]) -> (f64, f64) {
    values
        .iter()
        .copied()
        .filter(|v| !v.is_nan())
        .fold(None, |acc: Option<(f64, f64)>, v| match acc {
            None => Some((v, v)),
            Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
        })
        .unwrap_or((f64::NAN, f64::NAN))
}

fn same_bits(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits())
}

// Bitwise comparison, so missing values (NaN) compare equal to themselves.
impl PartialEq for ScalarField {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.units == other.units
            && same_bits(&self.values, &other.values)
            && self.min.to_bits() == other.min.to_bits()
            && self.max.to_bits() == other.max.to_bits()
    }
}

/// Element, node and triangle accounting for one conversion.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConversionReport {
    pub input_nodes: usize,
    pub input_elements: usize,
    /// Size of the surface-node list; absent in full mode.
    pub surface_nodes: Option<usize>,
    /// Input nodes not on the surface list (0 in full mode).
    pub excluded_nodes: usize,
    /// Input nodes kept by the surface list (all input nodes in full mode).
    pub retained_nodes: usize,
    pub elements_per_class: BTreeMap<String, usize>,
    pub unsupported_elements: usize,
    pub emitted_triangles: usize,
    /// Supported elements that produced no triangle.
    pub dropped_empty_elements: usize,
    /// Retained nodes not referenced by any emitted triangle.
    pub orphan_vertices_removed: usize,
    pub degenerate_triangles: usize,
    pub degenerate_triangles_removed: usize,
    /// Triangles discarded because two corners shared a node id.
    pub collapsed_triangles: usize,
    pub duplicate_faces_removed: usize,
    /// Vertices whose normal fell back to +Z (no non-degenerate incident face).
    pub fallback_normals: usize,
    pub vertices: usize,
}
