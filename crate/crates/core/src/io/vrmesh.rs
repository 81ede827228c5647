//! The `vrmesh` JSON document.
//!
//! ```text
//! {"format":"vrmesh","version":1,
//!  "vertices":[[x,y,z],...],"triangles":[[a,b,c],...],"normals":[[nx,ny,nz],...],
//!  "node_id_map":[id,...],
//!  "fields":{"NAME":{"values":[...],"min":m,"max":M,"units":"..."}},
//!  "provenance":{...conversion counts...}}
//! ```
//!
//! Documents are written compactly on one line with keys in the order
//! above, reals in shortest round-trip form and a single trailing LF.
//! Missing field values are `null`.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{Read, Write};

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::listing::NodeId;
use crate::mesh::{value_range, ConversionReport, ScalarField, VrMesh};

pub const FORMAT_NAME: &str = "vrmesh";
pub const FORMAT_VERSION: i64 = 1;

const TOP_LEVEL_KEYS: [&str; 8] = [
    "format",
    "version",
    "vertices",
    "triangles",
    "normals",
    "node_id_map",
    "fields",
    "provenance",
];
const FIELD_KEYS: [&str; 4] = ["values", "min", "max", "units"];

#[derive(Serialize)]
struct DocumentOut<'a> {
    format: &'static str,
    version: i64,
    vertices: &'a [[f64; 3]],
    triangles: &'a [[u32; 3]],
    normals: &'a [[f64; 3]],
    node_id_map: &'a [NodeId],
    fields: BTreeMap<&'a str, FieldOut<'a>>,
    provenance: &'a ConversionReport,
}

// serde_json writes non-finite floats as null, which is how missing
// values are stored.
#[derive(Serialize)]
struct FieldOut<'a> {
    values: &'a [f64],
    min: f64,
    max: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    units: Option<&'a str>,
}

/// A document read back from disk.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedMesh {
    pub mesh: VrMesh,
    pub report: Option<ConversionReport>,
    pub warnings: Vec<String>,
}

pub fn write_vrmesh<W: Write>(mesh: &VrMesh, report: &ConversionReport, mut sink: W) -> Result<()> {
    let doc = DocumentOut {
        format: FORMAT_NAME,
        version: FORMAT_VERSION,
        vertices: &mesh.vertices,
        triangles: &mesh.triangles,
        normals: &mesh.normals,
        node_id_map: &mesh.node_id_map,
        fields: mesh
            .fields
            .iter()
            .map(|(name, f)| {
                (
                    name.as_str(),
                    FieldOut {
                        values: &f.values,
                        min: f.min,
                        max: f.max,
                        units: f.units.as_deref(),
                    },
                )
            })
            .collect(),
        provenance: report,
    };
    serde_json::to_writer(&mut sink, &doc)?;
    sink.write_all(b"\n")?;
    sink.flush()?;
    Ok(())
}

pub fn vrmesh_to_vec(mesh: &VrMesh, report: &ConversionReport) -> Vec<u8> {
    let mut out = Vec::new();
    write_vrmesh(mesh, report, &mut out).expect("writing to a Vec cannot fail");
    out
}

pub fn read_vrmesh<R: Read>(mut source: R) -> Result<LoadedMesh> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    read_vrmesh_slice(&bytes)
}

pub fn read_vrmesh_slice(bytes: &[u8]) -> Result<LoadedMesh> {
    read_document(bytes, true)
}

/// Read a document checking its structure only. Out-of-range triangle
/// indices and `null` coordinates (read as NaN) are let through so that
/// [`crate::validate`] can report them.
pub fn read_vrmesh_lenient(bytes: &[u8]) -> Result<LoadedMesh> {
    read_document(bytes, false)
}

fn read_document(bytes: &[u8], strict: bool) -> Result<LoadedMesh> {
    let root: Value = serde_json::from_slice(bytes)?;
    let Value::Object(root) = root else {
        return Err(Error::document("$", "expected a JSON object"));
    };
    let mut warnings = Vec::new();
    for key in root.keys() {
        if !TOP_LEVEL_KEYS.contains(&key.as_str()) {
            warnings.push(format!("unknown key '{key}' ignored"));
        }
    }

    match root.get("format") {
        Some(Value::String(s)) if s == FORMAT_NAME => {}
        _ => return Err(Error::document("format", "expected \"vrmesh\"")),
    }
    let version = required(&root, "version")?
        .as_i64()
        .ok_or_else(|| Error::document("version", "expected an integer"))?;
    if version != FORMAT_VERSION {
        return Err(Error::UnsupportedVersion(version));
    }

    let vertices = read_points(required(&root, "vertices")?, "vertices", strict)?;
    let normals = read_points(required(&root, "normals")?, "normals", strict)?;
    if normals.len() != vertices.len() {
        return Err(length_mismatch("normals", normals.len(), vertices.len()));
    }
    let bound = if strict { vertices.len() } else { u32::MAX as usize + 1 };
    let triangles = read_triangles(required(&root, "triangles")?, bound)?;
    let node_id_map = read_node_ids(required(&root, "node_id_map")?, vertices.len())?;
    let fields = read_fields(required(&root, "fields")?, vertices.len(), &mut warnings)?;
    let report = root
        .get("provenance")
        .map(|v| {
            serde_json::from_value::<ConversionReport>(v.clone())
                .map_err(|e| Error::document("provenance", e.to_string()))
        })
        .transpose()?;

    Ok(LoadedMesh {
        mesh: VrMesh {
            vertices,
            triangles,
            normals,
            node_id_map,
            fields,
        },
        report,
        warnings,
    })
}

fn required<'a>(root: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    root.get(key)
        .ok_or_else(|| Error::document(key, "missing"))
}

fn length_mismatch(key: &str, found: usize, expected: usize) -> Error {
    Error::document(key, format!("length {found} does not match vertex count {expected}"))
}

fn array<'a>(value: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    value
        .as_array()
        .ok_or_else(|| Error::document(key, "expected an array"))
}

fn read_points(value: &Value, key: &str, strict: bool) -> Result<Vec<[f64; 3]>> {
    array(value, key)?
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let bad = || Error::document(format!("{key}[{i}]"), "expected 3 finite numbers");
            let coords = item.as_array().filter(|a| a.len() == 3).ok_or_else(bad)?;
            let mut p = [0.0; 3];
            for (slot, c) in p.iter_mut().zip(coords) {
                *slot = match c {
                    Value::Null if !strict => f64::NAN,
                    c => c.as_f64().filter(|v| v.is_finite()).ok_or_else(bad)?,
                };
            }
            Ok(p)
        })
        .collect()
}

fn read_triangles(value: &Value, vertex_count: usize) -> Result<Vec<[u32; 3]>> {
    array(value, "triangles")?
        .iter()
        .enumerate()
        .map(|(t, item)| {
            let bad = || Error::document(format!("triangles[{t}]"), "expected 3 vertex indices");
            let idx = item.as_array().filter(|a| a.len() == 3).ok_or_else(bad)?;
            let mut tri = [0u32; 3];
            for (slot, i) in tri.iter_mut().zip(idx) {
                let i = i.as_u64().ok_or_else(bad)?;
                if i >= vertex_count as u64 {
                    return Err(Error::document(
                        format!("triangle {t}"),
                        format!("index out of range ({i} >= {vertex_count})"),
                    ));
                }
                *slot = i as u32;
            }
            Ok(tri)
        })
        .collect()
}

fn read_node_ids(value: &Value, vertex_count: usize) -> Result<Vec<NodeId>> {
    let items = array(value, "node_id_map")?;
    if items.len() != vertex_count {
        return Err(length_mismatch("node_id_map", items.len(), vertex_count));
    }
    let mut seen = BTreeSet::new();
    items
        .iter()
        .enumerate()
        .map(|(v, item)| {
            let key = || format!("node_id_map[{v}]");
            let id = item
                .as_u64()
                .and_then(|id| NodeId::try_from(id).ok())
                .filter(|&id| id > 0)
                .ok_or_else(|| Error::document(key(), "expected a positive node id"))?;
            if !seen.insert(id) {
                return Err(Error::document(key(), format!("node id {id} repeated")));
            }
            Ok(id)
        })
        .collect()
}

fn read_fields(
    value: &Value,
    vertex_count: usize,
    warnings: &mut Vec<String>,
) -> Result<BTreeMap<String, ScalarField>> {
    let Value::Object(fields) = value else {
        return Err(Error::document("fields", "expected an object"));
    };
    let mut out = BTreeMap::new();
    for (name, field) in fields {
        let key = format!("fields.{name}");
        let Value::Object(field) = field else {
            return Err(Error::document(key, "expected an object"));
        };
        for k in field.keys() {
            if !FIELD_KEYS.contains(&k.as_str()) {
                warnings.push(format!("unknown key '{key}.{k}' ignored"));
            }
        }
        let values_key = format!("{key}.values");
        let values = field
            .get("values")
            .ok_or_else(|| Error::document(&values_key, "missing"))?;
        let values = array(values, &values_key)?;
        if values.len() != vertex_count {
            return Err(length_mismatch(&values_key, values.len(), vertex_count));
        }
        let values = values
            .iter()
            .enumerate()
            .map(|(i, v)| optional_real(v, || format!("{values_key}[{i}]")))
            .collect::<Result<Vec<f64>>>()?;

        let min = optional_real(
            field.get("min").unwrap_or(&Value::Null),
            || format!("{key}.min"),
        )?;
        let max = optional_real(
            field.get("max").unwrap_or(&Value::Null),
            || format!("{key}.max"),
        )?;
        let (lo, hi) = value_range(&values);
        if lo.to_bits() != min.to_bits() || hi.to_bits() != max.to_bits() {
            return Err(Error::document(key, "min/max do not match the values"));
        }

        let units = match field.get("units") {
            None => None,
            Some(Value::String(u)) => Some(u.clone()),
            Some(_) => return Err(Error::document(format!("{key}.units"), "expected a string")),
        };
        out.insert(
            name.clone(),
            ScalarField {
                name: name.clone(),
                values,
                min,
                max,
                units,
            },
        );
    }
    Ok(out)
}

/// A finite number, or `null` for a missing value.
fn optional_real(value: &Value, key: impl Fn() -> String) -> Result<f64> {
    match value {
        Value::Null => Ok(f64::NAN),
        v => v
            .as_f64()
            .filter(|x| x.is_finite())
            .ok_or_else(|| Error::document(key(), "expected a finite number or null")),
    }
}
