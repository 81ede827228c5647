//! Small generated models for tests, benchmarks and demos.

use std::collections::BTreeSet;

use crate::listing::{
    write_element_list, write_node_list, ElementRecord, NodeId, NodeRecord,
};

/// TYP reference used for hex elements in generated models.
pub const HEX_TYPE_REF: i64 = 1;
/// TYP reference used for 10-node tets in generated models.
pub const TET_TYPE_REF: i64 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct SampleModel {
    pub nodes: Vec<NodeRecord>,
    pub elements: Vec<ElementRecord>,
    /// Nodes on the outer boundary of the model.
    pub surface: BTreeSet<NodeId>,
}

impl SampleModel {
    pub fn node_listing(&self) -> String {
        format!("NODE X Y Z\n{}", write_node_list(&self.nodes))
    }

    pub fn element_listing(&self) -> String {
        format!("EL MAT TYP REL ESY SEC NODES\n{}", write_element_list(&self.elements))
    }

    pub fn surface_listing(&self) -> String {
        self.surface.iter().map(|id| format!("{id}\n")).collect()
    }
}

/// Node id of grid point `(i, j, k)` in an `nx × ny × nz` cell grid.
pub fn grid_node_id(nx: usize, ny: usize, i: usize, j: usize, k: usize) -> NodeId {
    (1 + i + (nx + 1) * (j + (ny + 1) * k)) as NodeId
}

/// Structured grid of unit hex cells with standard local ordering
/// (bottom quad counterclockwise from above, then the top quad).
pub fn hex_grid(nx: usize, ny: usize, nz: usize) -> SampleModel {
    let mut nodes = Vec::with_capacity((nx + 1) * (ny + 1) * (nz + 1));
    let mut surface = BTreeSet::new();
    for k in 0..=nz {
        for j in 0..=ny {
            for i in 0..=nx {
                let id = grid_node_id(nx, ny, i, j, k);
                nodes.push(NodeRecord {
                    id,
                    position: [i as f64, j as f64, k as f64],
                });
                if i == 0 || i == nx || j == 0 || j == ny || k == 0 || k == nz {
                    surface.insert(id);
                }
            }
        }
    }

    let mut elements = Vec::with_capacity(nx * ny * nz);
    for k in 0..nz {
        for j in 0..ny {
            for i in 0..nx {
                let n = |di, dj, dk| grid_node_id(nx, ny, i + di, j + dj, k + dk);
                let id = elements.len() as u32 + 1;
                elements.push(ElementRecord {
                    id,
                    material: 1,
                    type_ref: HEX_TYPE_REF,
                    real_const: 1,
                    esys: 0,
                    section: 1,
                    node_ids: vec![
                        n(0, 0, 0),
                        n(1, 0, 0),
                        n(1, 1, 0),
                        n(0, 1, 0),
                        n(0, 0, 1),
                        n(1, 0, 1),
                        n(1, 1, 1),
                        n(0, 1, 1),
                    ],
                });
            }
        }
    }
    SampleModel {
        nodes,
        elements,
        surface,
    }
}

pub fn unit_cube() -> SampleModel {
    hex_grid(1, 1, 1)
}

/// One 10-node tetrahedron (corners then IJ JK KI IL JL KL midsides),
/// corners placed so the tet face table winds outward.
pub fn quadratic_tet() -> SampleModel {
    let corners = [[0.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]];
    let mid = |a: usize, b: usize| -> [f64; 3] {
        let (p, q) = (corners[a], corners[b]);
        [(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0, (p[2] + q[2]) / 2.0]
    };
    let positions = [
        corners[0],
        corners[1],
        corners[2],
        corners[3],
        mid(0, 1),
        mid(1, 2),
        mid(2, 0),
        mid(0, 3),
        mid(1, 3),
        mid(2, 3),
    ];
    let nodes: Vec<NodeRecord> = positions
        .iter()
        .enumerate()
        .map(|(i, &position)| NodeRecord {
            id: i as NodeId + 1,
            position,
        })
        .collect();
    let surface = nodes.iter().map(|n| n.id).collect();
    SampleModel {
        elements: vec![ElementRecord {
            id: 1,
            material: 1,
            type_ref: TET_TYPE_REF,
            real_const: 1,
            esys: 0,
            section: 1,
            node_ids: (1..=10).collect(),
        }],
        nodes,
        surface,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_sizes() {
        let g = hex_grid(3, 3, 3);
        assert_eq!(g.nodes.len(), 64);
        assert_eq!(g.elements.len(), 27);
        assert_eq!(g.surface.len(), 56);
        let g = hex_grid(2, 2, 2);
        assert_eq!(g.surface.len(), 26);
        assert!(!g.surface.contains(&grid_node_id(2, 2, 1, 1, 1)));
    }
}
