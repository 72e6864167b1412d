//! Static metrics for a Java subset, rendered as a forest of islands.
//!
//! The pipeline runs in five stages, each usable on its own:
//!
//! 1. [`lexer`] and [`parser`] turn `.java` files into class and method
//!    declarations; [`corpus`] does this for a whole directory.
//! 2. [`model`] groups classes by package, resolves inheritance and calls,
//!    and computes per-class metrics.
//! 3. [`layout`] places one island per package, one tree per class and one
//!    water channel per inheritance edge.
//! 4. [`geometry`] builds meshes and a named scene graph.
//! 5. [`export`] writes glTF 2.0, OBJ/MTL, a Maya MEL script, or a JSON
//!    metrics report.
//!
//! ```no_run
//! use codeforest::{pipeline, Config, export};
//!
//! let config = Config::default();
//! let analysis = pipeline::analyze_dir("src/main/java".as_ref())?;
//! let scene = pipeline::build_scene(&analysis, &config)?;
//! let gltf = export::export_gltf(&scene)?;
//! std::fs::write("forest.gltf", gltf.bytes)?;
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod cli;
pub mod config;
pub mod corpus;
pub mod export;
pub mod geometry;
pub mod layout;
pub mod lexer;
pub mod model;
pub mod parser;
pub mod pipeline;

pub use config::Config;
