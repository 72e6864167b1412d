//! Print the Maya MEL script for the two-class example.

use std::path::Path;

use codeforest::export::export_mel;
use codeforest::pipeline::{analyze_dir, build_scene};
use codeforest::Config;

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/owner_user");
    let analysis = analyze_dir(&root).expect("fixture directory");
    let scene = build_scene(&analysis, &Config::default()).expect("scene");
    print!("{}", export_mel(&scene).text());
}
