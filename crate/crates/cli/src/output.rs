//! Artifact writing: config hashing, atomic file writes, and the CSV
//! projection of trial reports.

use std::path::Path;

use bornsim_core::experiments::TrialReport;
use sha2::{Digest, Sha256};

use crate::config::ResolvedConfig;
use crate::CliError;

/// SHA-256 (hex) of the canonical JSON of the resolved config.  Stable for
/// equal configs regardless of where flags or file values came from.
pub fn config_hash(config: &ResolvedConfig) -> String {
    let canonical = serde_json::to_vec(config).expect("config serialization cannot fail");
    hex::encode(Sha256::digest(&canonical))
}

/// Writes `bytes` to `path` atomically: a temp file in the same directory
/// is renamed into place, so readers never observe a half-written artifact.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    if let Some(dir) = dir {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Io(format!("creating {}: {e}", dir.display())))?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp.{}", std::process::id()));
    let tmp = std::path::PathBuf::from(tmp);
    std::fs::write(&tmp, bytes)
        .map_err(|e| CliError::Io(format!("writing {}: {e}", tmp.display())))?;
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        CliError::Io(format!("renaming into {}: {e}", path.display()))
    })
}

/// Serializes `value` as pretty JSON (with a trailing newline) and writes it
/// atomically.
pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut bytes = serde_json::to_vec_pretty(value)
        .map_err(|e| CliError::Io(format!("serializing {}: {e}", path.display())))?;
    bytes.push(b'\n');
    atomic_write(path, &bytes)
}

/// Writes one or more trial reports as CSV with the fixed header
/// `policy, leaf_index, outcomes, observed, expected, n, chi2, p`, preceded
/// by a comment line naming the seed and config hash.  One row per leaf per
/// report; `outcomes` is the leaf's outcome tuple joined with `-`.
pub fn write_csv(
    path: &Path,
    reports: &[&TrialReport],
    seed: u64,
    config_hash: &str,
) -> Result<(), CliError> {
    let mut text = String::new();
    text.push_str(&format!("# seed={seed} config_hash={config_hash}\n"));
    text.push_str("policy, leaf_index, outcomes, observed, expected, n, chi2, p\n");
    for report in reports {
        for (leaf, outcomes) in report.leaf_outcomes.iter().enumerate() {
            let joined = outcomes
                .iter()
                .map(|o| o.to_string())
                .collect::<Vec<_>>()
                .join("-");
            text.push_str(&format!(
                "{}, {}, {}, {}, {}, {}, {}, {}\n",
                report.policy,
                leaf,
                joined,
                report.observed[leaf],
                report.expected[leaf],
                report.n_trials,
                report.chi_square,
                report.p_value,
            ));
        }
    }
    atomic_write(path, text.as_bytes())
}
