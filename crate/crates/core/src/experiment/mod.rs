//! Configurable experiments and their CSV/JSON reports.
//!
//! An experiment is described by a JSON document (see [`parse_config`]) and
//! produces one report. Reports are deterministic: the same configuration
//! and seed give byte-identical output. Every report starts with a header
//! recording the norm convention, the rule for infinite sums, the
//! quadrature sizes and the tool version.

mod config;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub use config::{parse_config, ClassTask, ExperimentConfig, Format, SequenceSpec, Task, TASKS};
pub use report::render;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "MBESOV_OUT_DIR";

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid configuration:\n  {}", .0.join("\n  "))]
    Config(Vec<String>),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Compute(#[from] crate::Error),
}

impl ExperimentError {
    /// Process exit status for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            ExperimentError::Config(_) | ExperimentError::Compute(_) => 2,
            ExperimentError::Io { .. } => 3,
        }
    }
}

/// Reads and parses a configuration file.
pub fn load_config(path: &Path) -> Result<ExperimentConfig, ExperimentError> {
    let text = std::fs::read_to_string(path).map_err(|source| ExperimentError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let doc: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| ExperimentError::Config(vec![format!("{}: {e}", path.display())]))?;
    parse_config(&doc)
}

/// Where a report goes: the configured path, else `<$MBESOV_OUT_DIR>/<task>.<ext>`,
/// else standard output (`None`).
pub fn output_path(cfg: &ExperimentConfig) -> Option<PathBuf> {
    if let Some(p) = &cfg.output {
        return Some(p.clone());
    }
    let dir = std::env::var_os(OUT_DIR_ENV)?;
    let ext = match cfg.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    Some(PathBuf::from(dir).join(format!("{}.{ext}", cfg.task.name())))
}

/// Renders the report and writes it out. Returns the file written, if any.
///
/// Verdicts such as "unbounded" are part of the report, not failures.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Option<PathBuf>, ExperimentError> {
    let text = render(cfg)?;
    match output_path(cfg) {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(|source| ExperimentError::Io {
                    path: parent.to_path_buf(),
                    source,
                })?;
            }
            std::fs::write(&path, text).map_err(|source| ExperimentError::Io {
                path: path.clone(),
                source,
            })?;
            Ok(Some(path))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| ExperimentError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })?;
            Ok(None)
        }
    }
}
