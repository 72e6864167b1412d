//! Meshes, materials and the named scene graph.
//!
//! Node names follow a fixed scheme that downstream tools can rely on:
//!
//! | node | name |
//! |------|------|
//! | root | `forest` |
//! | package | `island:<pkg>` |
//! | class | `tree:<pkg>.<Class>` |
//! | trunk / canopy | `trunk:<pkg>.<Class>`, `canopy:<pkg>.<Class>` |
//! | method | `leaf:<pkg>.<Class>.<method>[#k]` |
//! | inheritance edge | `channel:<Parent>-><Child>` |
//!
//! Overloaded methods get `#2`, `#3`, … in declaration order; any other
//! collision is resolved the same way.

pub mod mesh;
mod scene;

use thiserror::Error;

pub use mesh::Mesh;
pub use scene::{build_scene, build_tree, Scene, SceneNode, SceneParams, Shape, TreeGeometry, TreeParams, TreePart, TreeSize};

use crate::model::MethodKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("channel segment {0} has zero length")]
    DegenerateSegment(usize),
    #[error("at least 8 segments are required, got {0}")]
    TooFewSegments(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Material {
    pub name: String,
    /// Linear RGBA in [0, 1].
    pub base_color: [f32; 4],
}

pub const TRUNK: usize = 0;
pub const CANOPY: usize = 1;
pub const ISLAND: usize = 2;
pub const WATER: usize = 3;
const LEAF_BASE: usize = 4;

/// Material index of the leaf colour for a method kind.
pub fn leaf_material(kind: MethodKind) -> usize {
    LEAF_BASE
        + match kind {
            MethodKind::Accessor => 0,
            MethodKind::Mutator => 1,
            MethodKind::Constructor => 2,
            MethodKind::Other => 3,
        }
}

pub const MATERIAL_NAMES: [&str; 8] = [
    "trunk",
    "canopy",
    "island",
    "water",
    "leaf_accessor",
    "leaf_mutator",
    "leaf_constructor",
    "leaf_other",
];

/// The fixed palette, indexed by the material constants above.
pub fn default_palette() -> Vec<Material> {
    let colors: [[f32; 4]; 8] = [
        [0.45, 0.30, 0.18, 1.0],
        [0.20, 0.55, 0.25, 0.85],
        [0.86, 0.78, 0.55, 1.0],
        [0.20, 0.45, 0.85, 0.9],
        [0.30, 0.80, 0.95, 1.0],
        [0.95, 0.75, 0.15, 1.0],
        [0.85, 0.25, 0.25, 1.0],
        [0.60, 0.40, 0.80, 1.0],
    ];
    MATERIAL_NAMES
        .iter()
        .zip(colors)
        .map(|(name, base_color)| Material {
            name: (*name).to_owned(),
            base_color,
        })
        .collect()
}
