//! Per-element triangulation over original node ids.
//!
//! Each supported class is split face by face. A face of a solid element is
//! emitted only when none of its nodes is masked by the element's node map,
//! so an all-zero map yields the full (unoptimized) triangulation and
//! setting bits can only remove triangles.

use crate::element::{ClassifiedElement, ElementClass};
use crate::listing::{ElementId, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IdTriangle {
    pub a: NodeId,
    pub b: NodeId,
    pub c: NodeId,
    pub source_element: ElementId,
    pub face_index: u8,
    pub tri_index: u8,
}

impl IdTriangle {
    pub fn ids(&self) -> [NodeId; 3] {
        [self.a, self.b, self.c]
    }

    fn has_repeat(&self) -> bool {
        self.a == self.b || self.b == self.c || self.a == self.c
    }
}

/// Hex faces as local node quadruples. With locals 0-3 forming the bottom
/// quad (counterclockwise seen from above) and 4-7 directly above them, every
/// face winds counterclockwise seen from outside.
pub const HEX_FACES: [[usize; 4]; 6] = [
    [0, 3, 2, 1],
    [4, 5, 6, 7],
    [0, 1, 5, 4],
    [1, 2, 6, 5],
    [2, 3, 7, 6],
    [3, 0, 4, 7],
];

/// Faces of the 10-node tet as `(corners, midsides)`. Corners I J K L are
/// locals 0-3; midsides M=IJ N=JK O=KI P=IL Q=JL R=KL are locals 4-9. The
/// midside `m[k]` lies between `corners[k]` and `corners[(k + 1) % 3]`.
pub const TET_FACES: [([usize; 3], [usize; 3]); 4] = [
    ([0, 1, 2], [4, 5, 6]),
    ([0, 3, 1], [7, 8, 4]),
    ([1, 3, 2], [8, 9, 5]),
    ([2, 3, 0], [9, 7, 6]),
];

/// Result of triangulating one element.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ElementTriangles {
    pub triangles: Vec<IdTriangle>,
    /// Triangles discarded because two of their corners share a node id
    /// (collapsed faces of degenerate solids).
    pub collapsed: usize,
}

/// Split a quad along its 0-2 diagonal.
pub fn split_quad(q: [NodeId; 4]) -> [[NodeId; 3]; 2] {
    [[q[0], q[1], q[2]], [q[0], q[2], q[3]]]
}

pub fn triangulate(element: &ClassifiedElement) -> ElementTriangles {
    match element.class {
        ElementClass::Shell => triangulate_shell(element),
        ElementClass::Hex8 => triangulate_hex(element),
        ElementClass::Solid92 => triangulate_solid92(element),
        ElementClass::Unsupported => ElementTriangles::default(),
    }
}

fn push(out: &mut ElementTriangles, element: ElementId, face_index: u8, tris: &[[NodeId; 3]]) {
    for (tri_index, &[a, b, c]) in tris.iter().enumerate() {
        let tri = IdTriangle {
            a,
            b,
            c,
            source_element: element,
            face_index,
            tri_index: tri_index as u8,
        };
        if tri.has_repeat() {
            out.collapsed += 1;
        } else {
            out.triangles.push(tri);
        }
    }
}

/// Shells drop masked nodes, then collapse repeated ids keeping the first
/// occurrence. Three survivors give a triangle, four a split quad, fewer
/// give nothing.
pub fn triangulate_shell(element: &ClassifiedElement) -> ElementTriangles {
    let mut survivors: Vec<NodeId> = Vec::with_capacity(4);
    for (local, &id) in element.record.node_ids.iter().enumerate() {
        if !element.node_map.is_skipped(local) && !survivors.contains(&id) {
            survivors.push(id);
        }
    }
    let mut out = ElementTriangles::default();
    match *survivors.as_slice() {
        [a, b, c] => push(&mut out, element.record.id, 0, &[[a, b, c]]),
        [a, b, c, d] => push(&mut out, element.record.id, 0, &split_quad([a, b, c, d])),
        _ => {}
    }
    out
}

pub fn triangulate_hex(element: &ClassifiedElement) -> ElementTriangles {
    let ids = &element.record.node_ids;
    let mut out = ElementTriangles::default();
    for (face_index, face) in HEX_FACES.iter().enumerate() {
        if face.iter().any(|&l| element.node_map.is_skipped(l)) {
            continue;
        }
        let quad = face.map(|l| ids[l]);
        push(&mut out, element.record.id, face_index as u8, &split_quad(quad));
    }
    out
}

pub fn triangulate_solid92(element: &ClassifiedElement) -> ElementTriangles {
    let ids = &element.record.node_ids;
    let mut out = ElementTriangles::default();
    for (face_index, (corners, mids)) in TET_FACES.iter().enumerate() {
        let map = &element.node_map;
        if corners.iter().chain(mids).any(|&l| map.is_skipped(l)) {
            continue;
        }
        let [c0, c1, c2] = corners.map(|l| ids[l]);
        let [m0, m1, m2] = mids.map(|l| ids[l]);
        push(
            &mut out,
            element.record.id,
            face_index as u8,
            &[[c0, m0, m2], [m0, c1, m1], [m2, m1, c2], [m0, m1, m2]],
        );
    }
    out
}
