//! Print per-class metrics for a source tree.
//!
//! `cargo run --example metrics_table [root]`

use std::path::PathBuf;

use codeforest::pipeline::analyze_dir;

fn main() {
    let root = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/inventory"));
    let analysis = analyze_dir(&root).unwrap_or_else(|e| {
        eprintln!("{e}");
        std::process::exit(1);
    });
    println!(
        "{:<32} {:>7} {:>5} {:>5} {:>6} {:>7} {:>8}",
        "class", "methods", "loc", "depth", "fan_in", "fan_out", "cohesion"
    );
    for (class, m) in analysis.model.classes.iter().zip(&analysis.metrics.classes) {
        println!(
            "{:<32} {:>7} {:>5} {:>5} {:>6} {:>7} {:>8.4}",
            class.name(),
            m.method_count,
            m.loc,
            m.depth,
            m.fan_in,
            m.fan_out,
            m.cohesion
        );
    }
    println!("{}", analysis.summary());
}
