//! Write a glTF 2.0 scene for a source tree.
//!
//! `cargo run --example export_gltf [root] [out.gltf]`

use std::path::PathBuf;

use codeforest::export::export_gltf;
use codeforest::pipeline::{analyze_dir, build_scene};
use codeforest::Config;

fn main() {
    let mut args = std::env::args_os().skip(1);
    let root = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/owner_user"));
    let out = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("codeforest.gltf"));

    let analysis = analyze_dir(&root).expect("analyzable source tree");
    let scene = build_scene(&analysis, &Config::default()).expect("scene");
    let artifact = export_gltf(&scene).expect("scene fits in u32 indices");
    std::fs::write(&out, &artifact.bytes).expect("writable output");
    println!("{} nodes, {} meshes -> {}", scene.nodes.len(), scene.meshes.len(), out.display());
}
