//! Resolving algebra names: catalog entries or definition files.

use std::path::{Path, PathBuf};

use braidkit_core::catalog::{self, Definition, Loaded};
use braidkit_core::Error;

use crate::error::CliError;
use crate::format::parse_definition;

/// Extension of definition files, used to find `over=NAME` next to a file.
pub const EXTENSION: &str = "bk";

const MAX_DEPTH: usize = 8;

fn is_path(spec: &str) -> bool {
    spec.contains('/') || spec.ends_with(&format!(".{EXTENSION}")) || Path::new(spec).is_file()
}

pub fn read_definition(path: &Path) -> Result<Definition, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    parse_definition(&text).map_err(|error| CliError::InFile { path: path.display().to_string(), error })
}

/// The definition named by `spec` without building it.
pub fn definition(spec: &str) -> Result<Definition, CliError> {
    if is_path(spec) {
        read_definition(Path::new(spec))
    } else {
        Ok(catalog::definition(spec)?)
    }
}

fn build_file(path: &Path, depth: usize) -> Result<Loaded, CliError> {
    if depth > MAX_DEPTH {
        return Err(CliError::Usage(format!("`over` chain too deep at {}", path.display())));
    }
    let def = read_definition(path)?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut nested: Option<CliError> = None;
    let built = catalog::build(&def, &mut |over| match resolve_over(&dir, over, depth) {
        Ok(l) => Ok(l),
        Err(e) => {
            let msg = e.to_string();
            nested = Some(e);
            Err(Error::Invalid(msg))
        }
    });
    match (built, nested) {
        (Ok(l), _) => Ok(l),
        (Err(_), Some(e)) => Err(e),
        (Err(e), None) => Err(CliError::InFile { path: path.display().to_string(), error: e }),
    }
}

fn resolve_over(dir: &Path, name: &str, depth: usize) -> Result<Loaded, CliError> {
    let sibling: PathBuf = dir.join(format!("{name}.{EXTENSION}"));
    if sibling.is_file() {
        build_file(&sibling, depth + 1)
    } else {
        Ok(catalog::load(name)?)
    }
}

/// Load a catalog name or a definition file path.
pub fn load(spec: &str) -> Result<Loaded, CliError> {
    if is_path(spec) {
        build_file(Path::new(spec), 0)
    } else {
        Ok(catalog::load(spec)?)
    }
}
