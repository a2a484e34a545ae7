//! Content-addressed store of constructed operators.

use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use selfdual::diffop::DiffOp;
use selfdual::intertwiner::{AnsatzSpec, Certificate};

use crate::exit::{CliError, MISSING_ARTIFACT};

pub const DEFAULT_DIR: &str = ".selfdual-cache";

#[derive(Serialize)]
struct Key<'a> {
    spec: &'a AnsatzSpec,
    grow: bool,
    cap: usize,
}

/// `d{n}-{sha256 prefix}` of the canonical JSON of the search parameters.
pub fn stem(spec: &AnsatzSpec, grow: bool, cap: usize) -> String {
    let key = serde_json::to_vec(&Key { spec, grow, cap }).expect("key serializes");
    let digest = Sha256::digest(&key);
    format!("d{}-{}", spec.n, &hex::encode(digest)[..16])
}

pub fn operator_path(dir: &Path, stem: &str) -> PathBuf {
    dir.join(format!("{stem}.json"))
}

pub fn certificate_path(operator: &Path) -> PathBuf {
    let mut s = operator.as_os_str().to_owned();
    s.push(".certificate.json");
    PathBuf::from(s)
}

pub fn store(dir: &Path, stem: &str, d: &DiffOp, cert: &Certificate) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir)?;
    let path = operator_path(dir, stem);
    write_json(&path, d)?;
    write_json(&certificate_path(&path), cert)?;
    Ok(path)
}

pub fn load(dir: &Path, stem: &str) -> Result<DiffOp, CliError> {
    let path = operator_path(dir, stem);
    let text = std::fs::read_to_string(&path).map_err(|e| {
        CliError::new(MISSING_ARTIFACT, format!("no cached operator at {} ({e}); run `construct` first", path.display()))
    })?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::new(MISSING_ARTIFACT, format!("cached operator {} is unreadable: {e}", path.display())))
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(path: &Path, v: &T) -> Result<(), CliError> {
    std::fs::write(path, to_json(v))?;
    Ok(())
}
