//! The stages wired together, for callers that want the whole run.

use std::path::Path;

use thiserror::Error;

use crate::config::Config;
use crate::corpus::{parse_corpus, parse_sources, CorpusError, ParsedCorpus};
use crate::export::{export_gltf, export_mel, export_obj, ExportArtifact, ExportError};
use crate::geometry::{self, GeometryError, Scene};
use crate::layout::ForestLayout;
use crate::model::{compute_metrics, CodeModel, Metrics, ModelError};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Export(#[from] ExportError),
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub corpus: ParsedCorpus,
    pub model: CodeModel,
    pub metrics: Metrics,
}

impl Analysis {
    pub fn from_corpus(corpus: ParsedCorpus) -> Result<Analysis, ModelError> {
        let model = CodeModel::from_corpus(&corpus)?;
        let metrics = compute_metrics(&model);
        Ok(Analysis { corpus, model, metrics })
    }

    /// `classes=<n> methods=<m> loc=<l> inheritance=<k>`
    pub fn summary(&self) -> String {
        let t = self.metrics.totals;
        format!(
            "classes={} methods={} loc={} inheritance={}",
            t.classes, t.methods, t.loc, t.inheritance_edges
        )
    }
}

pub fn analyze_dir(root: &Path) -> Result<Analysis, PipelineError> {
    Ok(Analysis::from_corpus(parse_corpus(root)?)?)
}

/// In-memory variant of [`analyze_dir`]; keys are corpus-relative paths.
pub fn analyze_sources(sources: Vec<(String, Vec<u8>)>) -> Result<Analysis, ModelError> {
    Analysis::from_corpus(parse_sources(sources))
}

pub fn build_scene(analysis: &Analysis, config: &Config) -> Result<Scene, PipelineError> {
    let layout = ForestLayout::compute(&analysis.model, &config.layout)?;
    Ok(geometry::build_scene(
        &analysis.model,
        &analysis.metrics,
        &layout,
        &config.scene_params(),
    )?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SceneFormat {
    Gltf,
    Obj,
    Mel,
}

/// Serializes a scene. OBJ yields the `.obj` then the `.mtl` named `mtl_name`.
pub fn render(scene: &Scene, format: SceneFormat, mtl_name: &str) -> Result<Vec<ExportArtifact>, PipelineError> {
    Ok(match format {
        SceneFormat::Gltf => vec![export_gltf(scene)?],
        SceneFormat::Obj => {
            let (obj, mtl) = export_obj(scene, mtl_name);
            vec![obj, mtl]
        }
        SceneFormat::Mel => vec![export_mel(scene)],
    })
}
