//! Ground-plane layout: one terraced island per package, one tree per class,
//! one downhill water channel per inheritance edge.
//!
//! Everything here is a pure function of the model and [`LayoutParams`].
//! Randomness comes from a ChaCha stream keyed by (seed, island, layer,
//! attempt), so results do not depend on thread scheduling.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::model::{longest_path_layers, CodeModel, InheritanceEdge, ModelError};

/// Golden angle in radians, π·(3 − √5).
pub const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayoutParams {
    pub seed: u64,
    pub island_margin: f64,
    pub s_min: f64,
    pub tier_drop: f64,
    pub base_radius_per_class: f64,
}

impl Default for LayoutParams {
    fn default() -> Self {
        LayoutParams {
            seed: 1,
            island_margin: 4.0,
            s_min: 2.0,
            tier_drop: 1.0,
            base_radius_per_class: 1.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IslandLayout {
    pub package: usize,
    /// (x, z)
    pub center: [f64; 2],
    pub radius: f64,
    /// Surface height of each tier, summit first.
    pub tier_heights: Vec<f64>,
    /// Outer radius of each tier's flat top; the last equals `radius`.
    pub tier_radii: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TreePlacement {
    pub class: usize,
    /// World (x, z).
    pub position: [f64; 2],
    pub layer: usize,
    pub trunk_base_y: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelPath {
    pub parent: usize,
    pub child: usize,
    /// World (x, y, z), parent first.
    pub points: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ForestLayout {
    /// Inheritance layer per class.
    pub layers: Vec<usize>,
    /// One per package, in package order.
    pub islands: Vec<IslandLayout>,
    /// One per class, in class order.
    pub trees: Vec<TreePlacement>,
    /// One per inheritance edge, in edge order.
    pub channels: Vec<ChannelPath>,
}

impl ForestLayout {
    pub fn compute(model: &CodeModel, params: &LayoutParams) -> Result<ForestLayout, ModelError> {
        let layers = assign_layers(model)?;
        let locals = local_placements(model, &layers, params);
        let islands = place_islands(model, &layers, &locals, params);
        let trees = place_trees(&islands, &locals, &layers, model.classes.len());
        let channels = route_channels(model, &trees, &model.inheritance_edges, params);
        Ok(ForestLayout {
            layers,
            islands,
            trees,
            channels,
        })
    }
}

/// Longest path from any root ancestor; roots and classes without supertypes get 0.
pub fn assign_layers(model: &CodeModel) -> Result<Vec<usize>, ModelError> {
    longest_path_layers(model.classes.len(), &model.inheritance_edges).ok_or_else(|| {
        // Classes that can never lose all their parents sit on or below a cycle.
        let mut pending = vec![0usize; model.classes.len()];
        for e in &model.inheritance_edges {
            pending[e.child] += 1;
        }
        let mut free: Vec<usize> = (0..pending.len()).filter(|&c| pending[c] == 0).collect();
        while let Some(c) = free.pop() {
            for e in model.inheritance_edges.iter().filter(|e| e.parent == c) {
                pending[e.child] -= 1;
                if pending[e.child] == 0 {
                    free.push(e.child);
                }
            }
        }
        let stuck = (0..pending.len())
            .filter(|&c| pending[c] > 0)
            .map(|c| model.classes[c].decl.name.clone());
        ModelError::InheritanceCycle(stuck.collect())
    })
}

fn tier_height(global_max_layer: usize, layer: usize, params: &LayoutParams) -> f64 {
    (global_max_layer - layer) as f64 * params.tier_drop
}

/// Tree positions relative to the island center plus the tier radii they need.
#[derive(Debug, Clone)]
struct LocalIsland {
    /// (class, offset) in class order.
    trees: Vec<(usize, [f64; 2])>,
    tier_radii: Vec<f64>,
}

fn local_placements(model: &CodeModel, layers: &[usize], params: &LayoutParams) -> Vec<LocalIsland> {
    model
        .packages
        .par_iter()
        .enumerate()
        .map(|(island, pkg)| local_island(island, &pkg.classes, layers, params))
        .collect()
}

fn local_island(island: usize, members: &[usize], layers: &[usize], params: &LayoutParams) -> LocalIsland {
    let max_layer = members.iter().map(|&c| layers[c]).max().unwrap_or(0);
    let mut tier_radii = Vec::with_capacity(max_layer + 1);
    let mut offsets: Vec<(usize, [f64; 2])> = Vec::with_capacity(members.len());
    for layer in 0..=max_layer {
        let in_layer: Vec<usize> = members.iter().copied().filter(|&c| layers[c] == layer).collect();
        let inner = match layer {
            0 => 0.0,
            _ => tier_radii[layer - 1] + 0.5 * params.s_min,
        };
        if in_layer.is_empty() {
            tier_radii.push(inner + 0.5 * params.s_min);
            continue;
        }
        let ring = ring_positions(island, layer, in_layer.len(), inner, params);
        let outer = ring.iter().map(|p| p[0].hypot(p[1])).fold(0.0, f64::max) + 0.5 * params.s_min;
        tier_radii.push(outer);
        offsets.extend(in_layer.into_iter().zip(ring));
    }
    offsets.sort_by_key(|&(c, _)| c);
    LocalIsland {
        trees: offsets,
        tier_radii,
    }
}

/// Golden-angle stepping on a disc (`inner` = 0) or an annulus starting at `inner`.
///
/// Radii follow r_i = sqrt(r0² + c²·i), equal area per tree. The spacing
/// `c` grows until every pair is at least `s_min` apart after jitter.
fn ring_positions(island: usize, layer: usize, n: usize, inner: f64, params: &LayoutParams) -> Vec<[f64; 2]> {
    let s_min = params.s_min;
    let jitter_max = 0.25 * s_min;
    // Jitter can pull annulus trees inward; start far enough out to stay clear of the tier above.
    let r0 = if layer == 0 { 0.0 } else { inner + jitter_max };
    let mut spacing = 0.9 * s_min;
    for attempt in 0u64.. {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        rng.set_stream(((island as u64) << 32) ^ ((layer as u64) << 16) ^ attempt);
        let start: f64 = rng.gen::<f64>() * TAU;
        let points: Vec<[f64; 2]> = (0..n)
            .map(|i| {
                let radius = (r0 * r0 + spacing * spacing * i as f64).sqrt();
                let angle = start + i as f64 * GOLDEN_ANGLE;
                let (jr, ja): (f64, f64) = (rng.gen::<f64>().sqrt() * jitter_max, rng.gen::<f64>() * TAU);
                if layer == 0 && i == 0 {
                    // The summit tree stays on the summit.
                    return [0.0, 0.0];
                }
                [radius * angle.cos() + jr * ja.cos(), radius * angle.sin() + jr * ja.sin()]
            })
            .collect();
        if min_pairwise_distance(&points) >= s_min {
            return points;
        }
        spacing *= 1.1;
        debug_assert!(attempt < 200, "spacing failed to converge");
    }
    unreachable!()
}

/// Smallest distance between any two points; infinity for fewer than two.
pub fn min_pairwise_distance(points: &[[f64; 2]]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            best = best.min((a[0] - b[0]).hypot(a[1] - b[1]));
        }
    }
    best
}

/// Sizes each island and walks a spiral outward until it clears the islands already placed.
fn place_islands(model: &CodeModel, layers: &[usize], locals: &[LocalIsland], params: &LayoutParams) -> Vec<IslandLayout> {
    let global_max = layers.iter().copied().max().unwrap_or(0);
    let sized: Vec<(f64, Vec<f64>)> = model
        .packages
        .iter()
        .zip(locals)
        .map(|(pkg, local)| {
            let formula = (params.base_radius_per_class * (pkg.classes.len() as f64).sqrt()).max(2.0 * params.s_min);
            let mut tier_radii = local.tier_radii.clone();
            let last = tier_radii.last_mut().expect("at least one tier");
            *last = last.max(formula);
            (*last, tier_radii)
        })
        .collect();
    let widest = sized.iter().map(|(r, _)| *r).fold(0.0, f64::max);
    // One spiral turn moves outward by a full island diameter plus margin.
    let pitch = (2.0 * widest + params.island_margin) / TAU;

    let mut islands: Vec<IslandLayout> = Vec::with_capacity(sized.len());
    let mut t = 0.0f64;
    for (package, (radius, tier_radii)) in sized.into_iter().enumerate() {
        let center = loop {
            let candidate = [pitch * t * t.cos(), pitch * t * t.sin()];
            let clear = islands.iter().all(|other| {
                let d = (candidate[0] - other.center[0]).hypot(candidate[1] - other.center[1]);
                d >= radius + other.radius + params.island_margin
            });
            if clear {
                break candidate;
            }
            t += 0.05;
        };
        let tier_heights = (0..tier_radii.len()).map(|k| tier_height(global_max, k, params)).collect();
        islands.push(IslandLayout {
            package,
            center,
            radius,
            tier_heights,
            tier_radii,
        });
    }
    islands
}

fn place_trees(islands: &[IslandLayout], locals: &[LocalIsland], layers: &[usize], class_count: usize) -> Vec<TreePlacement> {
    let mut trees: Vec<Option<TreePlacement>> = vec![None; class_count];
    for (island, local) in islands.iter().zip(locals) {
        for &(class, offset) in &local.trees {
            let layer = layers[class];
            trees[class] = Some(TreePlacement {
                class,
                position: [island.center[0] + offset[0], island.center[1] + offset[1]],
                layer,
                trunk_base_y: island.tier_heights[layer],
            });
        }
    }
    trees.into_iter().map(|t| t.expect("every class belongs to a package")).collect()
}

/// Polylines from parent tree to child tree, stepping down one tier at a time.
///
/// Within an island the path alternates flat runs and drops: 2·n + 1 equal
/// pieces for a drop of n tiers. Between islands it is a single straight
/// segment.
pub fn route_channels(model: &CodeModel, trees: &[TreePlacement], edges: &[InheritanceEdge], params: &LayoutParams) -> Vec<ChannelPath> {
    let global_max = trees.iter().map(|t| t.layer).max().unwrap_or(0);
    edges
        .iter()
        .map(|e| {
            let parent = &trees[e.parent];
            let child = &trees[e.child];
            let start = [parent.position[0], parent.trunk_base_y, parent.position[1]];
            let end = [child.position[0], child.trunk_base_y, child.position[1]];
            let same_island = model.classes[e.parent].package == model.classes[e.child].package;
            let mut points = vec![start];
            if same_island && child.layer > parent.layer {
                let drops = child.layer - parent.layer;
                let pieces = 2 * drops + 1;
                for i in 1..pieces {
                    let t = i as f64 / pieces as f64;
                    let y = tier_height(global_max, parent.layer + i / 2, params);
                    points.push([lerp(start[0], end[0], t), y, lerp(start[2], end[2], t)]);
                }
            }
            points.push(end);
            ChannelPath {
                parent: e.parent,
                child: e.child,
                points,
            }
        })
        .collect()
}

fn lerp(a: f64, b: f64, t: f64) -> f64 {
    a + (b - a) * t
}

/// Angle helper shared with geometry: the i-th of n golden-angle directions on a unit sphere.
pub fn fibonacci_sphere(i: usize, n: usize) -> [f64; 3] {
    let y = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
    let r = (1.0 - y * y).max(0.0).sqrt();
    let a = i as f64 * GOLDEN_ANGLE;
    [r * a.cos(), y, r * a.sin()]
}
