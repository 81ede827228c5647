//! Mesh serialization: the `vrmesh` JSON document and OBJ export.

pub mod obj;
pub mod vrmesh;

pub use obj::{obj_to_string, write_obj};
pub use vrmesh::{read_vrmesh, read_vrmesh_lenient, read_vrmesh_slice, vrmesh_to_vec, write_vrmesh, LoadedMesh};
