use std::fmt::Write as _;

use super::{fixed, ExportArtifact, ExportKind};
use crate::geometry::Scene;

/// Wavefront OBJ with world-space vertices, plus its MTL library.
///
/// `mtl_name` is the file name written after `mtllib`. Normals are not
/// emitted; faces are plain `f a b c` with 1-based indices.
pub fn export_obj(scene: &Scene, mtl_name: &str) -> (ExportArtifact, ExportArtifact) {
    let world = scene.world_transforms();
    let mut obj = String::from("# codeforest\n");
    if !scene.meshes.is_empty() {
        writeln!(obj, "mtllib {mtl_name}").unwrap();
    }
    let mut base = 1usize;
    for (i, node) in scene.mesh_nodes() {
        let mesh = &scene.meshes[node.mesh.expect("mesh node")];
        let (t, s) = world[i];
        writeln!(obj, "o {}", node.name).unwrap();
        writeln!(obj, "usemtl {}", scene.materials[mesh.material].name).unwrap();
        for p in &mesh.positions {
            let v: Vec<String> = (0..3).map(|k| fixed(t[k] + s * f64::from(p[k]), 6)).collect();
            writeln!(obj, "v {} {} {}", v[0], v[1], v[2]).unwrap();
        }
        for tri in mesh.indices.chunks_exact(3) {
            let f: Vec<usize> = tri.iter().map(|&ix| base + ix as usize).collect();
            writeln!(obj, "f {} {} {}", f[0], f[1], f[2]).unwrap();
        }
        base += mesh.vertex_count();
    }

    let mut mtl = String::from("# codeforest\n");
    if !scene.meshes.is_empty() {
        for m in &scene.materials {
            let c = m.base_color.map(f64::from);
            writeln!(mtl, "\nnewmtl {}", m.name).unwrap();
            writeln!(mtl, "Kd {} {} {}", fixed(c[0], 6), fixed(c[1], 6), fixed(c[2], 6)).unwrap();
            writeln!(mtl, "d {}", fixed(c[3], 6)).unwrap();
            writeln!(mtl, "illum 1").unwrap();
        }
    }
    (
        ExportArtifact {
            kind: ExportKind::Obj,
            bytes: obj.into_bytes(),
        },
        ExportArtifact {
            kind: ExportKind::Mtl,
            bytes: mtl.into_bytes(),
        },
    )
}
