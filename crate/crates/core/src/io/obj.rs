//! Wavefront OBJ export: positions, vertex normals and faces only.

use std::io::Write;

use crate::error::Result;
use crate::mesh::VrMesh;

pub fn write_obj<W: Write>(mesh: &VrMesh, mut sink: W) -> Result<()> {
    writeln!(sink, "# fea2vr OBJ export")?;
    for [x, y, z] in &mesh.vertices {
        writeln!(sink, "v {x:?} {y:?} {z:?}")?;
    }
    let with_normals = !mesh.vertices.is_empty() && mesh.normals.len() == mesh.vertices.len();
    if with_normals {
        for [x, y, z] in &mesh.normals {
            writeln!(sink, "vn {x:?} {y:?} {z:?}")?;
        }
    }
    for tri in &mesh.triangles {
        let [a, b, c] = tri.map(|i| i + 1);
        if with_normals {
            writeln!(sink, "f {a}//{a} {b}//{b} {c}//{c}")?;
        } else {
            writeln!(sink, "f {a} {b} {c}")?;
        }
    }
    sink.flush()?;
    Ok(())
}

pub fn obj_to_string(mesh: &VrMesh) -> String {
    let mut out = Vec::new();
    write_obj(mesh, &mut out).expect("writing to a Vec cannot fail");
    String::from_utf8(out).expect("OBJ output is ASCII")
}
