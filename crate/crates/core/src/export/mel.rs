use std::fmt::Write as _;

use super::{fixed, ExportArtifact, ExportKind};
use crate::geometry::{Scene, Shape};

/// Maya object name for a scene node: every non-alphanumeric becomes `_`.
pub fn sanitize_name(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect()
}

/// A MEL script that rebuilds every mesh node.
///
/// Trunks and canopies become `polyCylinder` / `polySphere` moved into place.
/// Islands and channels are rebuilt facet by facet in world space and merged
/// with `polyUnite`. Every object is renamed after its node, and the script
/// ends with `select -cl;`.
pub fn export_mel(scene: &Scene) -> ExportArtifact {
    let world = scene.world_transforms();
    let mut out = String::new();
    let mut declared = false;
    for (i, node) in scene.mesh_nodes() {
        if !declared {
            out.push_str("// codeforest\nstring $n[];\nstring $f[];\nstring $parts[];\n");
            declared = true;
        }
        let (t, s) = world[i];
        let mesh = &scene.meshes[node.mesh.expect("mesh node")];
        writeln!(out, "\n// {}", node.name).unwrap();
        match node.shape.unwrap_or(Shape::Faceted) {
            Shape::Cylinder { radius, height, segments } => {
                writeln!(
                    out,
                    "$n = `polyCylinder -r {} -h {} -sx {segments} -sy 1 -sc 1 -ax 0 1 0 -ch 0`;",
                    fixed(radius * s, 6),
                    fixed(height * s, 6)
                )
                .unwrap();
                write_move(&mut out, t);
            }
            Shape::Sphere { radius, segments } => {
                writeln!(
                    out,
                    "$n = `polySphere -r {} -sx {segments} -sy {segments} -ax 0 1 0 -ch 0`;",
                    fixed(radius * s, 6)
                )
                .unwrap();
                write_move(&mut out, t);
            }
            Shape::Faceted => {
                out.push_str("clear $parts;\n");
                for tri in mesh.indices.chunks_exact(3) {
                    out.push_str("$f = `polyCreateFacet -ch 0");
                    for &ix in tri {
                        let p = mesh.positions[ix as usize];
                        let v: Vec<String> = (0..3).map(|k| fixed(t[k] + s * f64::from(p[k]), 6)).collect();
                        write!(out, " -p {} {} {}", v[0], v[1], v[2]).unwrap();
                    }
                    out.push_str("`;\n$parts[size($parts)] = $f[0];\n");
                }
                out.push_str("$n = `polyUnite -ch 0 $parts`;\n");
            }
        }
        writeln!(out, "rename $n[0] \"{}\";", sanitize_name(&node.name)).unwrap();
    }
    if declared {
        out.push('\n');
    }
    out.push_str("select -cl;\n");
    ExportArtifact {
        kind: ExportKind::Mel,
        bytes: out.into_bytes(),
    }
}

fn write_move(out: &mut String, t: [f64; 3]) {
    writeln!(out, "move -a {} {} {} $n[0];", fixed(t[0], 6), fixed(t[1], 6), fixed(t[2], 6)).unwrap();
}
