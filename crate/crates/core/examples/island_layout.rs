//! Lay out islands and trees and print their positions.

use std::path::Path;

use codeforest::layout::ForestLayout;
use codeforest::pipeline::analyze_dir;
use codeforest::Config;

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/inventory");
    let analysis = analyze_dir(&root).expect("fixture directory");
    let model = &analysis.model;
    let layout = ForestLayout::compute(model, &Config::default().layout).expect("acyclic fixture");

    for island in &layout.islands {
        println!(
            "island {:<20} center ({:>7.3}, {:>7.3}) radius {:.3} tiers {:?}",
            model.packages[island.package].name, island.center[0], island.center[1], island.radius, island.tier_heights
        );
    }
    for t in &layout.trees {
        println!(
            "  tree {:<28} layer {} at ({:>7.3}, {:>7.3}) y {:.1}",
            model.classes[t.class].name(),
            t.layer,
            t.position[0],
            t.position[1],
            t.trunk_base_y
        );
    }
    for ch in &layout.channels {
        println!(
            "  channel {} -> {}: {} points",
            model.classes[ch.child].name(),
            model.classes[ch.parent].name(),
            ch.points.len()
        );
    }
}
