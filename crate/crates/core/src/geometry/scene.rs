use std::collections::{BTreeMap, BTreeSet};

use super::mesh::{self, Mesh};
use super::{default_palette, leaf_material, GeometryError, Material, CANOPY, ISLAND, TRUNK, WATER};
use crate::layout::{fibonacci_sphere, ForestLayout, TreePlacement};
use crate::model::{ClassMetrics, CodeModel, MethodKind, Metrics};

/// Metric-to-size mapping for trees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeParams {
    /// Trunk height = h0 + h1·ln(1 + loc).
    pub h0: f64,
    pub h1: f64,
    /// Trunk radius = r0·(1 + c·fan_out / max_fan_out).
    pub r0: f64,
    pub c: f64,
    /// Canopy radius = max(canopy_coefficient·√method_count, canopy_min).
    pub canopy_coefficient: f64,
    pub canopy_min: f64,
    pub leaf_radius: f64,
}

impl Default for TreeParams {
    fn default() -> Self {
        TreeParams {
            h0: 1.0,
            h1: 0.4,
            r0: 0.15,
            c: 1.0,
            canopy_coefficient: 0.5,
            canopy_min: 0.4,
            leaf_radius: 0.12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeSize {
    pub trunk_height: f64,
    pub trunk_radius: f64,
    pub canopy_radius: f64,
    pub leaf_radius: f64,
}

impl TreeParams {
    pub fn size(&self, metrics: &ClassMetrics, max_fan_out: usize) -> TreeSize {
        let fan = if max_fan_out == 0 {
            0.0
        } else {
            metrics.fan_out as f64 / max_fan_out as f64
        };
        TreeSize {
            trunk_height: self.h0 + self.h1 * (1.0 + f64::from(metrics.loc)).ln(),
            trunk_radius: self.r0 * (1.0 + self.c * fan),
            canopy_radius: (self.canopy_coefficient * (metrics.method_count as f64).sqrt()).max(self.canopy_min),
            leaf_radius: self.leaf_radius,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SceneParams {
    pub tree: TreeParams,
    pub segments: usize,
    /// Island tier height; must match the layout's `tier_drop`.
    pub tier_drop: f64,
    pub channel_width: f64,
    pub palette: Vec<Material>,
}

impl Default for SceneParams {
    fn default() -> Self {
        SceneParams {
            tree: TreeParams::default(),
            segments: 12,
            tier_drop: 1.0,
            channel_width: 0.3,
            palette: default_palette(),
        }
    }
}

/// The parametric shape behind a mesh, for exporters that can recreate it natively.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    Cylinder {
        radius: f64,
        height: f64,
        segments: usize,
    },
    Sphere {
        radius: f64,
        segments: usize,
    },
    /// Arbitrary triangles; only the mesh describes it.
    Faceted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SceneNode {
    pub name: String,
    /// Relative to the parent node.
    pub translation: [f64; 3],
    pub scale: f64,
    pub mesh: Option<usize>,
    pub shape: Option<Shape>,
    pub children: Vec<usize>,
}

impl SceneNode {
    fn group(name: String, translation: [f64; 3]) -> SceneNode {
        SceneNode {
            name,
            translation,
            scale: 1.0,
            mesh: None,
            shape: None,
            children: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    /// Pre-order; node 0 is the `forest` root.
    pub nodes: Vec<SceneNode>,
    pub meshes: Vec<Mesh>,
    pub materials: Vec<Material>,
}

impl Scene {
    pub fn empty(materials: Vec<Material>) -> Scene {
        Scene {
            nodes: vec![SceneNode::group("forest".into(), [0.0; 3])],
            meshes: Vec::new(),
            materials,
        }
    }

    fn add(&mut self, parent: Option<usize>, node: SceneNode) -> usize {
        let at = self.nodes.len();
        self.nodes.push(node);
        if let Some(p) = parent {
            self.nodes[p].children.push(at);
        }
        at
    }

    fn add_mesh(&mut self, parent: usize, name: String, translation: [f64; 3], mesh: Mesh, shape: Shape) -> usize {
        let mesh_index = self.meshes.len();
        self.meshes.push(mesh);
        self.add(
            Some(parent),
            SceneNode {
                name,
                translation,
                scale: 1.0,
                mesh: Some(mesh_index),
                shape: Some(shape),
                children: Vec::new(),
            },
        )
    }

    /// World translation and scale of every node.
    pub fn world_transforms(&self) -> Vec<([f64; 3], f64)> {
        let mut out = vec![([0.0; 3], 1.0); self.nodes.len()];
        let root = &self.nodes[0];
        out[0] = (root.translation, root.scale);
        // Pre-order guarantees parents come first.
        for (i, node) in self.nodes.iter().enumerate() {
            let (t, s) = out[i];
            for &c in &node.children {
                let child = &self.nodes[c];
                out[c] = (
                    [
                        t[0] + s * child.translation[0],
                        t[1] + s * child.translation[1],
                        t[2] + s * child.translation[2],
                    ],
                    s * child.scale,
                );
            }
        }
        out
    }

    /// Nodes that carry a mesh, in node order.
    pub fn mesh_nodes(&self) -> impl Iterator<Item = (usize, &SceneNode)> {
        self.nodes.iter().enumerate().filter(|(_, n)| n.mesh.is_some())
    }

    pub fn count_prefix(&self, prefix: &str) -> usize {
        self.nodes.iter().filter(|n| n.name.starts_with(prefix)).count()
    }

    /// Node names are unique, the graph is a tree rooted at node 0, and every mesh is valid.
    pub fn validate(&self) -> Result<(), String> {
        let mut names = BTreeSet::new();
        for n in &self.nodes {
            if !names.insert(n.name.as_str()) {
                return Err(format!("duplicate node name {}", n.name));
            }
        }
        let mut parent_count = vec![0usize; self.nodes.len()];
        for n in &self.nodes {
            for &c in &n.children {
                parent_count[c] += 1;
            }
        }
        if parent_count[0] != 0 || parent_count[1..].iter().any(|&p| p != 1) {
            return Err("node graph is not a tree rooted at node 0".into());
        }
        for (i, m) in self.meshes.iter().enumerate() {
            m.validate().map_err(|e| format!("mesh {i}: {e}"))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TreePart {
    pub name: String,
    /// Relative to the tree's base point.
    pub translation: [f64; 3],
    pub mesh: Mesh,
    pub shape: Shape,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TreeGeometry {
    pub trunk: TreePart,
    pub canopy: TreePart,
    /// One per method, declaration order.
    pub leaves: Vec<TreePart>,
}

/// Trunk, canopy and one leaf per method for one class.
///
/// `qualified` is `<pkg>.<Class>`; `method_names` and `kinds` are in
/// declaration order.
pub fn build_tree(qualified: &str, method_names: &[&str], kinds: &[MethodKind], size: TreeSize, segments: usize) -> TreeGeometry {
    debug_assert_eq!(method_names.len(), kinds.len());
    let trunk = TreePart {
        name: format!("trunk:{qualified}"),
        translation: [0.0, size.trunk_height / 2.0, 0.0],
        mesh: mesh::cylinder(size.trunk_radius, size.trunk_height, segments, TRUNK),
        shape: Shape::Cylinder {
            radius: size.trunk_radius,
            height: size.trunk_height,
            segments,
        },
    };
    let canopy_centre = [0.0, size.trunk_height + 0.6 * size.canopy_radius, 0.0];
    let canopy = TreePart {
        name: format!("canopy:{qualified}"),
        translation: canopy_centre,
        mesh: mesh::sphere(size.canopy_radius, segments, CANOPY),
        shape: Shape::Sphere {
            radius: size.canopy_radius,
            segments,
        },
    };

    let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
    let n = method_names.len();
    let leaves = method_names
        .iter()
        .zip(kinds)
        .enumerate()
        .map(|(i, (&name, &kind))| {
            let count = seen.entry(name).or_default();
            *count += 1;
            let suffix = if *count > 1 { format!("#{count}") } else { String::new() };
            let dir = fibonacci_sphere(i, n);
            TreePart {
                name: format!("leaf:{qualified}.{name}{suffix}"),
                translation: [
                    canopy_centre[0] + size.canopy_radius * dir[0],
                    canopy_centre[1] + size.canopy_radius * dir[1],
                    canopy_centre[2] + size.canopy_radius * dir[2],
                ],
                mesh: mesh::sphere(size.leaf_radius, segments, leaf_material(kind)),
                shape: Shape::Sphere {
                    radius: size.leaf_radius,
                    segments,
                },
            }
        })
        .collect();
    TreeGeometry { trunk, canopy, leaves }
}

/// Lift of channel ribbons above the terrain they run over.
const WATER_LIFT: f64 = 0.02;

/// Assembles islands, trees and channels into one scene.
///
/// Hierarchy: `forest` → islands → trees → trunk, canopy, leaves. Channels
/// within one package hang under that island after its trees; channels
/// between packages hang under the root after all islands.
pub fn build_scene(model: &CodeModel, metrics: &Metrics, layout: &ForestLayout, params: &SceneParams) -> Result<Scene, GeometryError> {
    let mut scene = Scene::empty(params.palette.clone());
    let max_fan_out = metrics.max_fan_out();

    for island in &layout.islands {
        let package = &model.packages[island.package];
        let centre = [island.center[0], 0.0, island.center[1]];
        let island_node = scene.add(Some(0), SceneNode::group(format!("island:{}", package.name), centre));
        let island_mesh = mesh::island(&island.tier_heights, &island.tier_radii, params.tier_drop, params.segments, ISLAND)?;
        let terrain = scene.meshes.len();
        scene.meshes.push(island_mesh);
        scene.nodes[island_node].mesh = Some(terrain);
        scene.nodes[island_node].shape = Some(Shape::Faceted);

        for &class in &package.classes {
            let placement: &TreePlacement = &layout.trees[class];
            let record = &model.classes[class];
            let qualified = format!("{}.{}", package.name, record.decl.name);
            let local = [
                placement.position[0] - centre[0],
                placement.trunk_base_y,
                placement.position[1] - centre[2],
            ];
            let tree_node = scene.add(Some(island_node), SceneNode::group(format!("tree:{qualified}"), local));
            let names: Vec<&str> = record.decl.methods.iter().map(|m| m.name.as_str()).collect();
            let size = params.tree.size(&metrics.classes[class], max_fan_out);
            let geometry = build_tree(&qualified, &names, &metrics.classes[class].kinds, size, params.segments);
            for part in std::iter::once(geometry.trunk)
                .chain(std::iter::once(geometry.canopy))
                .chain(geometry.leaves)
            {
                scene.add_mesh(tree_node, part.name, part.translation, part.mesh, part.shape);
            }
        }

        for channel in &layout.channels {
            let (p, c) = (model.classes[channel.parent].package, model.classes[channel.child].package);
            if p == island.package && c == island.package {
                let local: Vec<[f64; 3]> = channel.points.iter().map(|q| [q[0] - centre[0], q[1], q[2] - centre[2]]).collect();
                let ribbon = mesh::ribbon(&local, params.channel_width, WATER)?;
                let name = channel_name(model, channel.parent, channel.child);
                scene.add_mesh(island_node, name, [0.0, WATER_LIFT, 0.0], ribbon, Shape::Faceted);
            }
        }
    }

    for channel in &layout.channels {
        if model.classes[channel.parent].package != model.classes[channel.child].package {
            let ribbon = mesh::ribbon(&channel.points, params.channel_width, WATER)?;
            let name = channel_name(model, channel.parent, channel.child);
            scene.add_mesh(0, name, [0.0, WATER_LIFT, 0.0], ribbon, Shape::Faceted);
        }
    }

    dedupe_names(&mut scene);
    // Cross-package channels were appended after the islands but belong
    // directly to the root; node order is still pre-order because the root's
    // later children follow every island subtree.
    Ok(scene)
}

fn channel_name(model: &CodeModel, parent: usize, child: usize) -> String {
    format!("channel:{}->{}", model.classes[parent].decl.name, model.classes[child].decl.name)
}

fn dedupe_names(scene: &mut Scene) {
    let mut used: BTreeMap<String, usize> = BTreeMap::new();
    for node in &mut scene.nodes {
        let count = used.entry(node.name.clone()).or_default();
        *count += 1;
        if *count > 1 {
            let mut k = *count;
            let mut candidate = format!("{}#{k}", node.name);
            while used.contains_key(&candidate) {
                k += 1;
                candidate = format!("{}#{k}", node.name);
            }
            used.insert(candidate.clone(), 1);
            node.name = candidate;
        }
    }
}
