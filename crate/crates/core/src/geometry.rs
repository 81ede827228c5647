//! Normals, validation and summary statistics for triangle meshes.

use std::collections::HashSet;
use std::fmt;

use crate::mesh::VrMesh;

pub type Vec3 = [f64; 3];

/// Normal assigned to vertices with no usable incident face.
pub const FALLBACK_NORMAL: Vec3 = [0.0, 0.0, 1.0];

/// Relative tolerance on `|cross|` against the squared longest edge.
pub const DEGENERATE_TOLERANCE: f64 = 1e-12;

pub fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

/// Unnormalized face normal (twice the area vector), or `None` when the
/// triangle is degenerate.
fn area_vector(p0: Vec3, p1: Vec3, p2: Vec3) -> Option<Vec3> {
    let e0 = sub(p1, p0);
    let e1 = sub(p2, p0);
    let e2 = sub(p2, p1);
    let n = cross(e0, e1);
    let len = norm(n);
    let longest = dot(e0, e0).max(dot(e1, e1)).max(dot(e2, e2));
    if !len.is_finite() || len <= DEGENERATE_TOLERANCE * longest {
        None
    } else {
        Some(n)
    }
}

/// Right-handed unit normal of `(p0, p1, p2)`; `None` marks a degenerate
/// (collinear, coincident or non-finite) triangle.
pub fn face_normal(p0: Vec3, p1: Vec3, p2: Vec3) -> Option<Vec3> {
    area_vector(p0, p1, p2).map(|n| scale(n, 1.0 / norm(n)))
}

pub fn is_degenerate(p0: Vec3, p1: Vec3, p2: Vec3) -> bool {
    area_vector(p0, p1, p2).is_none()
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexNormals {
    pub normals: Vec<Vec3>,
    /// Vertices that received [`FALLBACK_NORMAL`].
    pub fallback: Vec<usize>,
}

/// Area-weighted vertex normals.
///
/// Triangles with an out-of-range index are ignored.
pub fn vertex_normals(vertices: &[Vec3], triangles: &[[u32; 3]]) -> VertexNormals {
    let mut sums = vec![[0.0; 3]; vertices.len()];
    for tri in triangles {
        let idx = tri.map(|i| i as usize);
        if idx.iter().any(|&i| i >= vertices.len()) {
            continue;
        }
        let Some(n) = area_vector(vertices[idx[0]], vertices[idx[1]], vertices[idx[2]]) else {
            continue;
        };
        for i in idx {
            for k in 0..3 {
                sums[i][k] += n[k];
            }
        }
    }

    let mut fallback = Vec::new();
    let normals = sums
        .into_iter()
        .enumerate()
        .map(|(v, s)| {
            let len = norm(s);
            if len > 0.0 && len.is_finite() {
                scale(s, 1.0 / len)
            } else {
                fallback.push(v);
                FALLBACK_NORMAL
            }
        })
        .collect();
    VertexNormals { normals, fallback }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IssueKind {
    IndexOutOfRange,
    DegenerateTriangle,
    DuplicateTriangle,
    NonFiniteCoordinate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Triangle(usize),
    Vertex(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MeshIssue {
    pub kind: IssueKind,
    pub location: Location,
}

impl fmt::Display for MeshIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            IssueKind::IndexOutOfRange => "index out of range",
            IssueKind::DegenerateTriangle => "degenerate triangle",
            IssueKind::DuplicateTriangle => "duplicate triangle",
            IssueKind::NonFiniteCoordinate => "non-finite coordinate",
        };
        match self.location {
            Location::Triangle(t) => write!(f, "triangle {t}: {what}"),
            Location::Vertex(v) => write!(f, "vertex {v}: {what}"),
        }
    }
}

/// Report every problem found in `mesh`.
///
/// Duplicates are detected on the unordered index triple, so a face listed
/// twice with opposite windings is reported; the first occurrence is not.
pub fn validate(mesh: &VrMesh) -> Vec<MeshIssue> {
    let mut issues = Vec::new();
    for (v, p) in mesh.vertices.iter().enumerate() {
        if p.iter().any(|c| !c.is_finite()) {
            issues.push(MeshIssue {
                kind: IssueKind::NonFiniteCoordinate,
                location: Location::Vertex(v),
            });
        }
    }

    let n = mesh.vertices.len();
    let mut seen = HashSet::new();
    for (t, tri) in mesh.triangles.iter().enumerate() {
        let issue = |kind| MeshIssue {
            kind,
            location: Location::Triangle(t),
        };
        if tri.iter().any(|&i| i as usize >= n) {
            issues.push(issue(IssueKind::IndexOutOfRange));
            continue;
        }
        let [a, b, c] = tri.map(|i| mesh.vertices[i as usize]);
        let repeated = tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2];
        if repeated || is_degenerate(a, b, c) {
            issues.push(issue(IssueKind::DegenerateTriangle));
        }
        let mut key = *tri;
        key.sort_unstable();
        if !seen.insert(key) {
            issues.push(issue(IssueKind::DuplicateTriangle));
        }
    }
    issues
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldStats {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub missing: usize,
    pub units: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeshStats {
    pub vertex_count: usize,
    pub triangle_count: usize,
    /// `(min, max)` corners; `None` for a mesh without vertices.
    pub bounding_box: Option<(Vec3, Vec3)>,
    pub fields: Vec<FieldStats>,
}

pub fn stats(mesh: &VrMesh) -> MeshStats {
    let bounding_box = mesh.vertices.iter().fold(None, |acc: Option<(Vec3, Vec3)>, p| {
        Some(match acc {
            None => (*p, *p),
            Some((lo, hi)) => (
                [lo[0].min(p[0]), lo[1].min(p[1]), lo[2].min(p[2])],
                [hi[0].max(p[0]), hi[1].max(p[1]), hi[2].max(p[2])],
            ),
        })
    });

    let fields = mesh
        .fields
        .values()
        .map(|f| {
            let present: Vec<f64> = f.present_values().collect();
            let mean = present.iter().sum::<f64>() / present.len() as f64;
            FieldStats {
                name: f.name.clone(),
                min: f.min,
                max: f.max,
                mean,
                missing: f.values.len() - present.len(),
                units: f.units.clone(),
            }
        })
        .collect();

    MeshStats {
        vertex_count: mesh.vertices.len(),
        triangle_count: mesh.triangles.len(),
        bounding_box,
        fields,
    }
}

impl fmt::Display for MeshStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices: {}", self.vertex_count)?;
        writeln!(f, "triangles: {}", self.triangle_count)?;
        match self.bounding_box {
            Some((lo, hi)) => writeln!(
                f,
                "bbox: ({}, {}, {}) - ({}, {}, {})",
                lo[0], lo[1], lo[2], hi[0], hi[1], hi[2]
            )?,
            None => writeln!(f, "bbox: none")?,
        }
        for field in &self.fields {
            let units = field
                .units
                .as_deref()
                .map(|u| format!(" [{u}]"))
                .unwrap_or_default();
            write!(
                f,
                "field {}{units}: min {} max {} mean {}",
                field.name, field.min, field.max, field.mean
            )?;
            if field.missing > 0 {
                write!(f, " missing {}", field.missing)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::ScalarField;
    use proptest::prelude::*;

    fn close(a: Vec3, b: Vec3, tol: f64) -> bool {
        (0..3).all(|k| (a[k] - b[k]).abs() <= tol)
    }

    fn unit_cube() -> VrMesh {
        let vertices = vec![
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [1.0, 1.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
            [1.0, 0.0, 1.0],
            [1.0, 1.0, 1.0],
            [0.0, 1.0, 1.0],
        ];
        let mut triangles = Vec::new();
        for q in crate::triangulate::HEX_FACES {
            triangles.push([q[0], q[1], q[2]].map(|i| i as u32));
            triangles.push([q[0], q[2], q[3]].map(|i| i as u32));
        }
        let normals = vertex_normals(&vertices, &triangles).normals;
        VrMesh {
            node_id_map: (1..=8).collect(),
            vertices,
            triangles,
            normals,
            fields: Default::default(),
        }
    }

    #[test]
    fn face_normal_examples() {
        assert_eq!(face_normal([0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]), Some([0.0, 0.0, 1.0]));
        assert_eq!(face_normal([0.0; 3], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0]), Some([0.0, 0.0, -1.0]));
        assert_eq!(face_normal([0.0; 3], [1.0, 0.0, 0.0], [2.0, 0.0, 0.0]), None);
        assert_eq!(face_normal([1.0; 3], [1.0; 3], [1.0; 3]), None);
        assert_eq!(face_normal([f64::NAN, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]), None);
    }

    #[test]
    fn flat_plate_normals() {
        let vertices = vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0], [2.0, 0.5, 0.0]];
        let triangles = vec![[0, 1, 2], [0, 2, 3], [1, 4, 2]];
        let vn = vertex_normals(&vertices, &triangles);
        assert!(vn.fallback.is_empty());
        assert!(vn.normals.iter().all(|n| *n == [0.0, 0.0, 1.0]));
    }

    #[test]
    fn single_triangle_normals() {
        let vertices = vec![[0.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 3.0]];
        let vn = vertex_normals(&vertices, &[[0, 1, 2]]);
        let face = face_normal(vertices[0], vertices[1], vertices[2]).unwrap();
        assert!(vn.normals.iter().all(|n| *n == face));
    }

    #[test]
    fn isolated_and_degenerate_vertices_fall_back() {
        let vertices = vec![[0.0; 3], [1.0, 0.0, 0.0], [2.0, 0.0, 0.0], [5.0, 5.0, 5.0]];
        let vn = vertex_normals(&vertices, &[[0, 1, 2]]);
        assert_eq!(vn.fallback, vec![0, 1, 2, 3]);
        assert!(vn.normals.iter().all(|n| *n == FALLBACK_NORMAL));
    }

    #[test]
    fn cube_normals_point_outward() {
        let cube = unit_cube();
        for (p, n) in cube.vertices.iter().zip(&cube.normals) {
            assert!((norm(*n) - 1.0).abs() < 1e-12);
            assert!(dot(*n, sub(*p, [0.5; 3])) > 0.0);
        }
    }

    #[test]
    fn validate_examples() {
        let mut cube = unit_cube();
        assert!(validate(&cube).is_empty());

        cube.triangles.push([0, 1, 99]);
        assert_eq!(
            validate(&cube),
            vec![MeshIssue { kind: IssueKind::IndexOutOfRange, location: Location::Triangle(12) }]
        );

        let mut cube = unit_cube();
        let dup = cube.triangles[3];
        cube.triangles.push(dup);
        assert_eq!(
            validate(&cube),
            vec![MeshIssue { kind: IssueKind::DuplicateTriangle, location: Location::Triangle(12) }]
        );
    }

    #[test]
    fn validate_reports_every_kind() {
        let mut cube = unit_cube();
        cube.vertices[7] = [f64::INFINITY, 1.0, 1.0];
        cube.triangles.push([0, 0, 1]);
        cube.triangles.push([2, 1, 0]);
        cube.triangles.push([0, 1, 42]);
        let kinds: HashSet<IssueKind> = validate(&cube).into_iter().map(|i| i.kind).collect();
        assert_eq!(kinds.len(), 4);
    }

    #[test]
    fn stats_examples() {
        let mut cube = unit_cube();
        let s = stats(&cube);
        assert_eq!(s.bounding_box, Some(([0.0; 3], [1.0; 3])));
        assert_eq!(s.triangle_count, 12);
        assert!(s.fields.is_empty());

        cube.insert_field(ScalarField::new("TEMP", (0..8).map(f64::from).collect()));
        let s = stats(&cube);
        let field = &cube.fields["TEMP"];
        assert_eq!((s.fields[0].min, s.fields[0].max), (field.min, field.max));
        assert_eq!(s.fields[0].mean, 3.5);
        assert!(s.to_string().contains("vertices: 8"));
    }

    fn rotation(axis: Vec3, angle: f64) -> [[f64; 3]; 3] {
        let k = scale(axis, 1.0 / norm(axis));
        let (s, c) = angle.sin_cos();
        let t = 1.0 - c;
        [
            [t * k[0] * k[0] + c, t * k[0] * k[1] - s * k[2], t * k[0] * k[2] + s * k[1]],
            [t * k[0] * k[1] + s * k[2], t * k[1] * k[1] + c, t * k[1] * k[2] - s * k[0]],
            [t * k[0] * k[2] - s * k[1], t * k[1] * k[2] + s * k[0], t * k[2] * k[2] + c],
        ]
    }

    fn apply(r: &[[f64; 3]; 3], p: Vec3) -> Vec3 {
        [dot(r[0], p), dot(r[1], p), dot(r[2], p)]
    }

    proptest! {
        #[test]
        fn face_normal_rotates_with_the_triangle(
            pts in prop::array::uniform3(prop::array::uniform3(-10.0f64..10.0)),
            axis in prop::array::uniform3(-1.0f64..1.0),
            angle in -3.2f64..3.2,
        ) {
            prop_assume!(norm(axis) > 1e-3);
            let [p0, p1, p2] = pts;
            prop_assume!(norm(cross(sub(p1, p0), sub(p2, p0))) > 1e-3);
            let r = rotation(axis, angle);
            let n = face_normal(p0, p1, p2).unwrap();
            let rn = face_normal(apply(&r, p0), apply(&r, p1), apply(&r, p2)).unwrap();
            prop_assert!(close(rn, apply(&r, n), 1e-9));
        }

        #[test]
        fn vertex_normals_are_unit(
            vertices in prop::collection::vec(prop::array::uniform3(-5.0f64..5.0), 3..20),
            raw in prop::collection::vec(prop::array::uniform3(0u32..20), 0..30),
        ) {
            let n = vertices.len() as u32;
            let triangles: Vec<[u32; 3]> = raw.into_iter().map(|t| t.map(|i| i % n)).collect();
            let vn = vertex_normals(&vertices, &triangles);
            prop_assert_eq!(vn.normals.len(), vertices.len());
            for (v, nrm) in vn.normals.iter().enumerate() {
                if !vn.fallback.contains(&v) {
                    prop_assert!((norm(*nrm) - 1.0).abs() <= 1e-6);
                }
            }
        }
    }
}
