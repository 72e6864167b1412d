//! Byte-deterministic writers for the scene and the metrics report.
//!
//! Reals are formatted with fixed precision (`{:.6}` for OBJ and MEL,
//! `{:.4}` in the report; glTF uses shortest round-trip via `serde_json`),
//! and negative zero is printed as zero.

mod gltf;
mod mel;
mod obj;
mod report;

use thiserror::Error;

pub use gltf::export_gltf;
pub use mel::{export_mel, sanitize_name};
pub use obj::export_obj;
pub use report::export_report;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportKind {
    Gltf,
    Obj,
    Mtl,
    Mel,
    Report,
}

impl ExportKind {
    pub fn extension(self) -> &'static str {
        match self {
            ExportKind::Gltf => "gltf",
            ExportKind::Obj => "obj",
            ExportKind::Mtl => "mtl",
            ExportKind::Mel => "mel",
            ExportKind::Report => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExportArtifact {
    pub kind: ExportKind,
    pub bytes: Vec<u8>,
}

impl ExportArtifact {
    pub fn text(&self) -> &str {
        std::str::from_utf8(&self.bytes).expect("exporters emit UTF-8")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExportError {
    #[error("mesh {mesh} has {count} elements, more than a glTF accessor can address")]
    SceneTooLarge { mesh: usize, count: usize },
}

/// `{:.prec}` with `-0.000…` folded to `0.000…`.
pub(crate) fn fixed(value: f64, precision: usize) -> String {
    let s = format!("{value:.precision$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_owned(),
        _ => s,
    }
}
