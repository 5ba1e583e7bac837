//! Graphs shipped as data: one graph6 line per file under the fixture
//! directory: `$SPINWEB_FIXTURES` if set, else `./fixtures` when present,
//! else the workspace copy this crate was built from.

use crate::graph::{parse_graph6, Graph, Graph6Error};
use std::path::{Path, PathBuf};
use thiserror::Error;

/// Fixture names accepted by [`load`]; the file is `<name>.g6`.
pub const NAMES: [&str; 3] = ["schlafli", "higman_sims", "mclaughlin"];

pub const ENV_VAR: &str = "SPINWEB_FIXTURES";

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("cannot read fixture {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("fixture {path}: {source}")]
    Parse { path: PathBuf, source: Graph6Error },
}

pub fn default_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(ENV_VAR) {
        return PathBuf::from(dir);
    }
    let local = PathBuf::from("fixtures");
    if local.is_dir() {
        return local;
    }
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn load(dir: &Path, name: &str) -> Result<Graph, FixtureError> {
    let path = dir.join(format!("{name}.g6"));
    let text = std::fs::read(&path).map_err(|source| FixtureError::Io { path: path.clone(), source })?;
    parse_graph6(&text).map_err(|source| FixtureError::Parse { path, source })
}
