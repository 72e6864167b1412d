//! Write an OBJ file and its material library.

use std::path::{Path, PathBuf};

use codeforest::export::export_obj;
use codeforest::pipeline::{analyze_dir, build_scene};
use codeforest::Config;

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/calls");
    let out = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("codeforest.obj"));
    let mtl_path = out.with_extension("mtl");
    let mtl_name = mtl_path.file_name().unwrap().to_string_lossy().into_owned();

    let analysis = analyze_dir(&root).expect("fixture directory");
    let scene = build_scene(&analysis, &Config::default()).expect("scene");
    let (obj, mtl) = export_obj(&scene, &mtl_name);
    std::fs::write(&out, &obj.bytes).expect("writable output");
    std::fs::write(&mtl_path, &mtl.bytes).expect("writable output");
    let vertices = obj.text().lines().filter(|l| l.starts_with("v ")).count();
    println!(
        "{} objects, {} vertices -> {} + {}",
        scene.mesh_nodes().count(),
        vertices,
        out.display(),
        mtl_path.display()
    );
}
