//! Conversion of finite-element solver listings into a compact triangle
//! mesh with per-vertex result fields.
//!
//! The pipeline reads node, element, surface-node and result listings
//! ([`listing`]), classifies elements and computes per-element node maps
//! that mark inner nodes ([`element`]), splits elements into triangles
//! ([`triangulate`]), then renumbers the surviving nodes and attaches the
//! result fields ([`pipeline`]). [`geometry`] adds normals and checks, and
//! [`io`] writes the `vrmesh` document consumed by the viewer, or OBJ.
//!
//! ```
//! use fea2vr_core::{build_mesh, samples, BuildOptions, TypeMapping};
//!
//! let grid = samples::hex_grid(3, 3, 3);
//! let (mesh, report) = build_mesh(
//!     &grid.nodes,
//!     &grid.elements,
//!     &TypeMapping::default(),
//!     Some(&grid.surface),
//!     &BuildOptions::default(),
//! )?;
//! assert_eq!(mesh.vertex_count(), 56);
//! assert_eq!(report.emitted_triangles, 108);
//! # Ok::<(), fea2vr_core::Error>(())
//! ```

pub mod element;
pub mod error;
pub mod geometry;
pub mod io;
pub mod listing;
pub mod mesh;
pub mod pipeline;
pub mod samples;
pub mod triangulate;

pub use element::{classify, compute_node_map, ClassifiedElement, ElementClass, NodeMap, TypeMapping};
pub use error::{Error, Result};
pub use geometry::{face_normal, stats, validate, vertex_normals, IssueKind, MeshIssue, MeshStats};
pub use io::{
    read_vrmesh, read_vrmesh_lenient, read_vrmesh_slice, vrmesh_to_vec, write_obj, write_vrmesh,
    LoadedMesh,
};
pub use listing::{
    parse_element_list, parse_node_list, parse_result_list, parse_surface_node_list, ElementId,
    ElementRecord, NodeId, NodeRecord, ParseWarning,
};
pub use mesh::{ConversionReport, ScalarField, VrMesh};
pub use pipeline::{build_mesh, remap_field, renumber, BuildOptions, MissingPolicy};
pub use triangulate::{split_quad, triangulate, IdTriangle};
