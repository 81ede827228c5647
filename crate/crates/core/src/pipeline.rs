//! Listing records to [`VrMesh`]: classify, mask, triangulate, renumber.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::element::{classify, compute_node_map, ElementClass, TypeMapping};
use crate::error::{Error, Result};
use crate::geometry::{is_degenerate, vertex_normals};
use crate::listing::{ElementRecord, NodeId, NodeRecord};
use crate::mesh::{ConversionReport, ScalarField, VrMesh};
use crate::triangulate::{triangulate, IdTriangle};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Remove every face whose node-id set occurs on more than one element.
    pub dedup_faces: bool,
    /// Remove zero-area triangles instead of only counting them.
    pub drop_degenerate: bool,
    /// Return an empty mesh instead of failing when nothing survives.
    pub allow_empty: bool,
}

/// What to do when a retained vertex has no value in a result listing.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum MissingPolicy {
    #[default]
    Error,
    /// Store `NaN`, written as `null` in vrmesh documents.
    Fill,
}

/// Triangles of every element in (element id, face, triangle) order, as
/// original node ids, together with the counts gathered on the way.
#[derive(Debug, Clone, Default)]
pub struct Triangulation {
    pub triangles: Vec<IdTriangle>,
    pub report: ConversionReport,
}

/// Classify and triangulate all elements. With `surface` set, every element
/// gets a node map skipping the nodes missing from it; otherwise all maps
/// are zero and the full triangulation results.
pub fn triangulate_elements(
    nodes: &[NodeRecord],
    elements: &[ElementRecord],
    mapping: &TypeMapping,
    surface: Option<&BTreeSet<NodeId>>,
) -> Result<Triangulation> {
    let known: BTreeSet<NodeId> = nodes.iter().map(|n| n.id).collect();
    let mut report = ConversionReport {
        input_nodes: known.len(),
        input_elements: elements.len(),
        surface_nodes: surface.map(BTreeSet::len),
        ..Default::default()
    };
    let retained = match surface {
        Some(s) => known.intersection(s).count(),
        None => known.len(),
    };
    report.retained_nodes = retained;
    report.excluded_nodes = known.len() - retained;

    let mut triangles = Vec::new();
    for record in elements {
        if let Some(&node) = record.node_ids.iter().find(|id| !known.contains(id)) {
            return Err(Error::MissingNode {
                element: record.id,
                node,
            });
        }
        let mut element = classify(record.clone(), mapping)?;
        *report
            .elements_per_class
            .entry(element.class.name().to_string())
            .or_default() += 1;
        if element.class == ElementClass::Unsupported {
            report.unsupported_elements += 1;
            continue;
        }
        if let Some(surface) = surface {
            element.node_map = compute_node_map(&element, surface);
        }
        let out = triangulate(&element);
        report.collapsed_triangles += out.collapsed;
        if out.triangles.is_empty() {
            report.dropped_empty_elements += 1;
        }
        triangles.extend(out.triangles);
    }
    triangles.sort_by_key(|t| (t.source_element, t.face_index, t.tri_index));
    Ok(Triangulation { triangles, report })
}

/// Drop every face (all triangles sharing element and face index) whose set
/// of node ids is produced by more than one face. Returns the number of
/// faces removed.
pub fn remove_shared_faces(triangles: &mut Vec<IdTriangle>) -> usize {
    let mut face_ids: BTreeMap<(u32, u8), BTreeSet<NodeId>> = BTreeMap::new();
    for t in triangles.iter() {
        face_ids
            .entry((t.source_element, t.face_index))
            .or_default()
            .extend(t.ids());
    }
    let mut occurrences: HashMap<&BTreeSet<NodeId>, usize> = HashMap::new();
    for ids in face_ids.values() {
        *occurrences.entry(ids).or_default() += 1;
    }
    let shared: BTreeSet<(u32, u8)> = face_ids
        .iter()
        .filter(|(_, ids)| occurrences[ids] > 1)
        .map(|(&key, _)| key)
        .collect();
    triangles.retain(|t| !shared.contains(&(t.source_element, t.face_index)));
    shared.len()
}

/// Compact original ids onto `0..len` in ascending id order.
pub fn renumber(used: &BTreeSet<NodeId>) -> BTreeMap<NodeId, u32> {
    used.iter().enumerate().map(|(v, &id)| (id, v as u32)).collect()
}

/// Run the whole conversion from parsed listings to a mesh with normals.
///
/// Result fields are attached separately with [`remap_field`].
pub fn build_mesh(
    nodes: &[NodeRecord],
    elements: &[ElementRecord],
    mapping: &TypeMapping,
    surface: Option<&BTreeSet<NodeId>>,
    options: &BuildOptions,
) -> Result<(VrMesh, ConversionReport)> {
    let Triangulation {
        mut triangles,
        mut report,
    } = triangulate_elements(nodes, elements, mapping, surface)?;

    if options.dedup_faces {
        report.duplicate_faces_removed = remove_shared_faces(&mut triangles);
    }

    let positions: HashMap<NodeId, [f64; 3]> = nodes.iter().map(|n| (n.id, n.position)).collect();
    let before = triangles.len();
    let mut degenerate = 0;
    triangles.retain(|t| {
        let [a, b, c] = t.ids().map(|id| positions[&id]);
        let flat = is_degenerate(a, b, c);
        degenerate += usize::from(flat);
        !(options.drop_degenerate && flat)
    });
    report.degenerate_triangles = degenerate;
    report.degenerate_triangles_removed = before - triangles.len();
    report.emitted_triangles = triangles.len();

    let mut used: Vec<NodeId> = triangles.iter().flat_map(IdTriangle::ids).collect();
    used.sort_unstable();
    used.dedup();
    if used.is_empty() && !options.allow_empty {
        return Err(if surface.is_some() {
            Error::EmptySurface
        } else {
            Error::EmptyMesh
        });
    }
    report.orphan_vertices_removed = report.retained_nodes - used.len();

    // `used` is sorted, so a vertex index is its position in it
    let index: HashMap<NodeId, u32> = used.iter().enumerate().map(|(v, &id)| (id, v as u32)).collect();
    let vertices: Vec<[f64; 3]> = used.iter().map(|id| positions[id]).collect();
    let tri_indices: Vec<[u32; 3]> = triangles
        .iter()
        .map(|t| t.ids().map(|id| index[&id]))
        .collect();
    let normals = vertex_normals(&vertices, &tri_indices);
    report.fallback_normals = normals.fallback.len();
    report.vertices = vertices.len();

    let mesh = VrMesh {
        vertices,
        triangles: tri_indices,
        normals: normals.normals,
        node_id_map: used,
        fields: BTreeMap::new(),
    };
    Ok((mesh, report))
}

/// Pick the values of the retained vertices out of a per-node result map.
/// Entries for nodes that are not vertices are ignored.
pub fn remap_field(
    name: &str,
    raw: &BTreeMap<NodeId, f64>,
    node_id_map: &[NodeId],
    policy: MissingPolicy,
) -> Result<ScalarField> {
    let values = node_id_map
        .iter()
        .map(|id| match (raw.get(id), policy) {
            (Some(&v), _) => Ok(v),
            (None, MissingPolicy::Fill) => Ok(f64::NAN),
            (None, MissingPolicy::Error) => Err(Error::MissingResult {
                field: name.to_string(),
                node: *id,
            }),
        })
        .collect::<Result<Vec<f64>>>()?;
    let field = ScalarField::new(name, values);
    if !node_id_map.is_empty() && field.min.is_nan() {
        return Err(Error::EmptyField {
            field: name.to_string(),
        });
    }
    Ok(field)
}

/// Per-vertex result listing in solver style: 1-based vertex number and
/// value, one per line. Missing values are left out.
pub fn write_remapped_results(field: &ScalarField) -> String {
    let mut out = String::new();
    for (v, value) in field.values.iter().enumerate() {
        if !value.is_nan() {
            let _ = writeln!(out, "{} {value:?}", v + 1);
        }
    }
    out
}
