//! Output routing: stdout or `--out PATH` plus a manifest sidecar
//! recording the command line, seed, versions, and file digests. Re-running
//! the manifest's command reproduces the data file byte for byte.

use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
struct RunManifest {
    command: Vec<String>,
    seed: Option<u64>,
    package: &'static str,
    version: &'static str,
    created_utc: String,
    outputs: Vec<OutputDigest>,
}

#[derive(Debug, Serialize)]
struct OutputDigest {
    path: String,
    sha256: String,
    bytes: usize,
}

/// Send `payload` to stdout, or to `out` with a `<out>.manifest.json`
/// sidecar.
pub fn deliver(payload: &str, out: Option<&Path>, seed: Option<u64>) -> anyhow::Result<()> {
    match out {
        None => {
            print!("{payload}");
            if !payload.ends_with('\n') {
                println!();
            }
            Ok(())
        }
        Some(path) => {
            std::fs::write(path, payload)
                .with_context(|| format!("writing {}", path.display()))?;
            let manifest = RunManifest {
                command: std::env::args().collect(),
                seed,
                package: env!("CARGO_PKG_NAME"),
                version: env!("CARGO_PKG_VERSION"),
                created_utc: chrono::Utc::now().to_rfc3339(),
                outputs: vec![OutputDigest {
                    path: path.display().to_string(),
                    sha256: hex::encode(Sha256::digest(payload.as_bytes())),
                    bytes: payload.len(),
                }],
            };
            let manifest_path = manifest_sidecar_path(path);
            std::fs::write(
                &manifest_path,
                serde_json::to_string_pretty(&manifest)?,
            )
            .with_context(|| format!("writing {}", manifest_path.display()))?;
            eprintln!(
                "wrote {} ({} bytes), manifest {}",
                path.display(),
                payload.len(),
                manifest_path.display()
            );
            Ok(())
        }
    }
}

pub fn manifest_sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    out.with_file_name(name)
}
