//! Single-file glTF 2.0 with the buffer embedded as a base64 data URI.
//!
//! Top-level keys appear in this order: `asset`, `scene`, `scenes`, `nodes`,
//! `meshes`, `materials`, `accessors`, `bufferViews`, `buffers`. Empty arrays
//! are left out. Each mesh owns three buffer views (positions, normals,
//! `u32` indices) laid out back to back.

use base64::engine::general_purpose::STANDARD;
use base64::Engine;
use serde::Serialize;

use super::{ExportArtifact, ExportError, ExportKind};
use crate::geometry::Scene;

const FLOAT: u32 = 5126;
const UNSIGNED_INT: u32 = 5125;
const ARRAY_BUFFER: u32 = 34962;
const ELEMENT_ARRAY_BUFFER: u32 = 34963;
const TRIANGLES: u32 = 4;

#[derive(Serialize)]
struct Root {
    asset: Asset,
    scene: usize,
    scenes: Vec<SceneDef>,
    nodes: Vec<Node>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    meshes: Vec<MeshDef>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    materials: Vec<MaterialDef>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    accessors: Vec<Accessor>,
    #[serde(rename = "bufferViews", skip_serializing_if = "Vec::is_empty")]
    buffer_views: Vec<BufferView>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    buffers: Vec<Buffer>,
}

#[derive(Serialize)]
struct Asset {
    version: &'static str,
    generator: &'static str,
}

#[derive(Serialize)]
struct SceneDef {
    nodes: Vec<usize>,
}

#[derive(Serialize)]
struct Node {
    name: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    children: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mesh: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    translation: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    scale: Option<[f64; 3]>,
}

#[derive(Serialize)]
struct MeshDef {
    primitives: Vec<Primitive>,
}

#[derive(Serialize)]
struct Primitive {
    attributes: Attributes,
    indices: usize,
    material: usize,
    mode: u32,
}

#[derive(Serialize)]
struct Attributes {
    #[serde(rename = "POSITION")]
    position: usize,
    #[serde(rename = "NORMAL")]
    normal: usize,
}

#[derive(Serialize)]
struct MaterialDef {
    name: String,
    #[serde(rename = "pbrMetallicRoughness")]
    pbr: Pbr,
    #[serde(rename = "alphaMode", skip_serializing_if = "Option::is_none")]
    alpha_mode: Option<&'static str>,
    #[serde(rename = "doubleSided")]
    double_sided: bool,
}

#[derive(Serialize)]
struct Pbr {
    #[serde(rename = "baseColorFactor")]
    base_color_factor: [f32; 4],
    #[serde(rename = "metallicFactor")]
    metallic_factor: f32,
    #[serde(rename = "roughnessFactor")]
    roughness_factor: f32,
}

#[derive(Serialize)]
struct Accessor {
    #[serde(rename = "bufferView")]
    buffer_view: usize,
    #[serde(rename = "componentType")]
    component_type: u32,
    count: usize,
    #[serde(rename = "type")]
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    min: Option<[f32; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max: Option<[f32; 3]>,
}

#[derive(Serialize)]
struct BufferView {
    buffer: usize,
    #[serde(rename = "byteOffset")]
    byte_offset: usize,
    #[serde(rename = "byteLength")]
    byte_length: usize,
    target: u32,
}

#[derive(Serialize)]
struct Buffer {
    #[serde(rename = "byteLength")]
    byte_length: usize,
    uri: String,
}

pub fn export_gltf(scene: &Scene) -> Result<ExportArtifact, ExportError> {
    let mut bin: Vec<u8> = Vec::new();
    let mut accessors = Vec::new();
    let mut buffer_views = Vec::new();
    let mut meshes = Vec::new();

    for (i, mesh) in scene.meshes.iter().enumerate() {
        let limit = u32::MAX as usize;
        if mesh.vertex_count() > limit || mesh.indices.len() > limit {
            return Err(ExportError::SceneTooLarge {
                mesh: i,
                count: mesh.vertex_count().max(mesh.indices.len()),
            });
        }
        let (min, max) = mesh.bounds().unwrap_or(([0.0; 3], [0.0; 3]));

        let mut view = |bytes: &[u8], target: u32| {
            buffer_views.push(BufferView {
                buffer: 0,
                byte_offset: bin.len(),
                byte_length: bytes.len(),
                target,
            });
            bin.extend_from_slice(bytes);
            buffer_views.len() - 1
        };
        let positions: Vec<u8> = mesh.positions.iter().flatten().flat_map(|f| f.to_le_bytes()).collect();
        let normals: Vec<u8> = mesh.normals.iter().flatten().flat_map(|f| f.to_le_bytes()).collect();
        let indices: Vec<u8> = mesh.indices.iter().flat_map(|i| i.to_le_bytes()).collect();
        let (pv, nv, iv) = (
            view(&positions, ARRAY_BUFFER),
            view(&normals, ARRAY_BUFFER),
            view(&indices, ELEMENT_ARRAY_BUFFER),
        );

        let base = accessors.len();
        accessors.push(Accessor {
            buffer_view: pv,
            component_type: FLOAT,
            count: mesh.vertex_count(),
            kind: "VEC3",
            min: Some(min),
            max: Some(max),
        });
        accessors.push(Accessor {
            buffer_view: nv,
            component_type: FLOAT,
            count: mesh.vertex_count(),
            kind: "VEC3",
            min: None,
            max: None,
        });
        accessors.push(Accessor {
            buffer_view: iv,
            component_type: UNSIGNED_INT,
            count: mesh.indices.len(),
            kind: "SCALAR",
            min: None,
            max: None,
        });
        meshes.push(MeshDef {
            primitives: vec![Primitive {
                attributes: Attributes {
                    position: base,
                    normal: base + 1,
                },
                indices: base + 2,
                material: mesh.material,
                mode: TRIANGLES,
            }],
        });
    }

    let nodes = scene
        .nodes
        .iter()
        .map(|n| Node {
            name: n.name.clone(),
            children: n.children.clone(),
            mesh: n.mesh,
            translation: (n.translation != [0.0; 3]).then_some(n.translation),
            scale: (n.scale != 1.0).then_some([n.scale; 3]),
        })
        .collect();

    let materials = if scene.meshes.is_empty() {
        Vec::new()
    } else {
        scene
            .materials
            .iter()
            .map(|m| MaterialDef {
                name: m.name.clone(),
                pbr: Pbr {
                    base_color_factor: m.base_color,
                    metallic_factor: 0.0,
                    roughness_factor: 1.0,
                },
                alpha_mode: (m.base_color[3] < 1.0).then_some("BLEND"),
                double_sided: false,
            })
            .collect()
    };

    let buffers = if bin.is_empty() {
        Vec::new()
    } else {
        vec![Buffer {
            byte_length: bin.len(),
            uri: format!("data:application/octet-stream;base64,{}", STANDARD.encode(&bin)),
        }]
    };

    let root = Root {
        asset: Asset {
            version: "2.0",
            generator: "codeforest",
        },
        scene: 0,
        scenes: vec![SceneDef { nodes: vec![0] }],
        nodes,
        meshes,
        materials,
        accessors,
        buffer_views,
        buffers,
    };
    let mut bytes = serde_json::to_vec_pretty(&root).expect("glTF document serializes");
    bytes.push(b'\n');
    Ok(ExportArtifact {
        kind: ExportKind::Gltf,
        bytes,
    })
}
