//! Test oracles that do not go through node maps or the face tables.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use fea2vr_core::{NodeId, NodeRecord};

pub type Face = BTreeSet<NodeId>;

fn key(p: [f64; 3]) -> [i64; 3] {
    p.map(|c| c.round() as i64)
}

/// Boundary quads of an `nx × ny × nz` grid of unit cells, found by walking
/// every cell and keeping the faces whose neighbouring cell lies outside the
/// grid. Node ids are looked up by coordinate.
pub fn boundary_quads(nodes: &[NodeRecord], nx: i64, ny: i64, nz: i64) -> BTreeSet<Face> {
    let by_position: BTreeMap<[i64; 3], NodeId> = nodes.iter().map(|n| (key(n.position), n.id)).collect();
    let inside = |c: [i64; 3]| (0..nx).contains(&c[0]) && (0..ny).contains(&c[1]) && (0..nz).contains(&c[2]);

    let mut faces = BTreeSet::new();
    for i in 0..nx {
        for j in 0..ny {
            for k in 0..nz {
                let cell = [i, j, k];
                for axis in 0..3 {
                    for side in [0, 1] {
                        let mut neighbour = cell;
                        neighbour[axis] += if side == 0 { -1 } else { 1 };
                        if inside(neighbour) {
                            continue;
                        }
                        // the four corners of the cell with coordinate `axis` fixed
                        let mut face = Face::new();
                        for a in [0, 1] {
                            for b in [0, 1] {
                                let mut corner = cell;
                                corner[axis] += side;
                                corner[(axis + 1) % 3] += a;
                                corner[(axis + 2) % 3] += b;
                                face.insert(by_position[&corner]);
                            }
                        }
                        faces.insert(face);
                    }
                }
            }
        }
    }
    faces
}

/// Nodes lying on the boundary of the grid's bounding box.
pub fn boundary_nodes(nodes: &[NodeRecord], nx: i64, ny: i64, nz: i64) -> BTreeSet<NodeId> {
    nodes
        .iter()
        .filter(|n| {
            let [x, y, z] = key(n.position);
            x == 0 || x == nx || y == 0 || y == ny || z == 0 || z == nz
        })
        .map(|n| n.id)
        .collect()
}

/// Group consecutive triangle pairs of a split-quad mesh back into quads,
/// keyed by original node id.
pub fn quads_from_pairs(triangles: &[[u32; 3]], node_id_map: &[NodeId]) -> Option<BTreeSet<Face>> {
    if !triangles.len().is_multiple_of(2) {
        return None;
    }
    let mut faces = BTreeSet::new();
    for pair in triangles.chunks(2) {
        let face: Face = pair.iter().flatten().map(|&v| node_id_map[v as usize]).collect();
        if face.len() != 4 || !faces.insert(face) {
            return None;
        }
    }
    Some(faces)
}
