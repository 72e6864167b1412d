//! Argument parsing and the two subcommands behind the `codeforest` binary.
//!
//! Exit codes: 0 success, 1 model or output failure (e.g. an inheritance
//! cycle), 2 bad arguments, bad config or a missing source root.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::{load_config, Config};
use crate::corpus::{parse_corpus, CorpusError, Diagnostic};
use crate::export::export_report;
use crate::pipeline::{self, Analysis, SceneFormat};

#[derive(Debug, Parser)]
#[command(name = "codeforest", version, about = "Java metrics as a forest of islands")]
pub struct Cli {
    /// Worker threads for parsing and layout (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the metrics report and print a one-line summary.
    Analyze {
        root: PathBuf,
        #[arg(long)]
        report: PathBuf,
    },
    /// Write the scene as glTF, OBJ (+ sibling .mtl) or a MEL script.
    Render {
        root: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides the config seed.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Gltf,
    Obj,
    Mel,
}

impl From<Format> for SceneFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Gltf => SceneFormat::Gltf,
            Format::Obj => SceneFormat::Obj,
            Format::Mel => SceneFormat::Mel,
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut (dyn Write + Send), stderr: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.unwrap_or(0)).build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_FAILURE;
        }
    };
    pool.install(|| execute(&cli.command, stdout, stderr))
}

fn execute(command: &Command, stdout: &mut (dyn Write + Send), stderr: &mut (dyn Write + Send)) -> i32 {
    match command {
        Command::Analyze { root, report } => {
            let analysis = match analyze(root, stderr) {
                Ok(a) => a,
                Err(code) => return code,
            };
            let artifact = export_report(&analysis.model, &analysis.metrics);
            if let Err(code) = write_file(report, &artifact.bytes, stderr) {
                return code;
            }
            let _ = writeln!(stdout, "{}", analysis.summary());
            EXIT_OK
        }
        Command::Render {
            root,
            out,
            format,
            config,
            seed,
        } => {
            let mut cfg = match config {
                Some(path) => match load_config(path) {
                    Ok(c) => c,
                    Err(e) => {
                        let _ = writeln!(stderr, "error: {e}");
                        return EXIT_USAGE;
                    }
                },
                None => Config::default(),
            };
            if let Some(seed) = seed {
                cfg.layout.seed = *seed;
            }
            let analysis = match analyze(root, stderr) {
                Ok(a) => a,
                Err(code) => return code,
            };
            let scene = match pipeline::build_scene(&analysis, &cfg) {
                Ok(s) => s,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    return EXIT_FAILURE;
                }
            };
            let mtl_path = out.with_extension("mtl");
            let mtl_name = mtl_path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            let artifacts = match pipeline::render(&scene, (*format).into(), &mtl_name) {
                Ok(a) => a,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    return EXIT_FAILURE;
                }
            };
            for (i, artifact) in artifacts.iter().enumerate() {
                let path = if i == 0 { out.as_path() } else { mtl_path.as_path() };
                if let Err(code) = write_file(path, &artifact.bytes, stderr) {
                    return code;
                }
            }
            let _ = writeln!(stdout, "{}", analysis.summary());
            EXIT_OK
        }
    }
}

fn analyze(root: &Path, stderr: &mut (dyn Write + Send)) -> Result<Analysis, i32> {
    let corpus = match parse_corpus(root) {
        Ok(c) => c,
        Err(e @ CorpusError::RootNotFound(_)) => {
            let _ = writeln!(stderr, "error: {e}");
            return Err(EXIT_USAGE);
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return Err(EXIT_FAILURE);
        }
    };
    for d in &corpus.diagnostics {
        match d {
            Diagnostic::NoSourceFiles => {
                let _ = writeln!(stderr, "{d}");
            }
            _ => {
                let _ = writeln!(stderr, "skipped {d}");
            }
        }
    }
    Analysis::from_corpus(corpus).map_err(|e| {
        let _ = writeln!(stderr, "error: {e}");
        EXIT_FAILURE
    })
}

fn write_file(path: &Path, bytes: &[u8], stderr: &mut (dyn Write + Send)) -> Result<(), i32> {
    std::fs::write(path, bytes).map_err(|e| {
        let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
        EXIT_FAILURE
    })
}
