//! Run plumbing shared by every subcommand: input hashing, output routing,
//! and the manifest side file.
//!
//! A command handler never writes anything itself. It loads inputs through
//! [`Runner::load_input`] (which records a SHA-256 digest for the manifest)
//! and returns an [`Output`]; [`Runner::finish`] then routes the result to
//! stdout or `-o` and emits exactly one manifest per run. Manifests carry
//! the timing; everything else a command prints is a pure function of its
//! inputs, flags, and seed.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use kpfree::generators::RNG_ALGORITHM;
use kpfree::{Error, Result};

/// One input file and the digest of its raw bytes.
#[derive(Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Reproducibility record written alongside every run.
#[derive(Serialize)]
pub struct RunManifest {
    pub command: String,
    pub argv: Vec<String>,
    pub inputs: Vec<InputDigest>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<Vec<usize>>,
    pub seed: u64,
    pub jobs: usize,
    pub version: String,
    pub rng_algorithm: String,
    pub elapsed_ms: u64,
    pub summary: String,
    pub fallback_used: bool,
    pub exceptional: bool,
}

/// What a command handler hands back for routing.
pub struct Output {
    pub result: serde_json::Value,
    pub summary: String,
    pub fallback_used: bool,
    pub exceptional: bool,
    /// Non-JSON payload (a serialized graph) that takes the `-o` slot when
    /// present; the JSON result is still shown in stdout mode.
    pub file_payload: Option<String>,
}

impl Output {
    pub fn json(result: serde_json::Value, summary: String) -> Output {
        Output {
            result,
            summary,
            fallback_used: false,
            exceptional: false,
            file_payload: None,
        }
    }
}

pub struct Runner {
    command: &'static str,
    argv: Vec<String>,
    seed: u64,
    jobs: usize,
    out: Option<PathBuf>,
    started: Instant,
    inputs: Vec<InputDigest>,
    spec: Option<Vec<usize>>,
}

impl Runner {
    pub fn new(command: &'static str, seed: u64, jobs: usize, out: Option<PathBuf>) -> Runner {
        Runner {
            command,
            argv: std::env::args().skip(1).collect(),
            seed,
            jobs,
            out,
            started: Instant::now(),
            inputs: Vec::new(),
            spec: None,
        }
    }

    /// Reads an input file, recording its digest in the manifest.
    pub fn load_input(&mut self, path: &Path) -> Result<String> {
        let bytes = fs::read(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: sha256_hex(&bytes),
        });
        String::from_utf8(bytes)
            .map_err(|_| Error::Input(format!("{} is not valid UTF-8", path.display())))
    }

    /// Records the class orders the command was asked for.
    pub fn set_spec(&mut self, orders: &[usize]) {
        self.spec = Some(orders.to_vec());
    }

    /// Writes the result and its manifest.
    pub fn finish(self, output: Output) -> Result<()> {
        let manifest = RunManifest {
            command: self.command.to_string(),
            argv: self.argv,
            inputs: self.inputs,
            spec: self.spec,
            seed: self.seed,
            jobs: self.jobs,
            version: kpfree::VERSION.to_string(),
            rng_algorithm: RNG_ALGORITHM.to_string(),
            elapsed_ms: self.started.elapsed().as_millis() as u64,
            summary: output.summary,
            fallback_used: output.fallback_used,
            exceptional: output.exceptional,
        };
        match &self.out {
            Some(path) => {
                let payload = match output.file_payload {
                    Some(text) => text,
                    None => pretty(&output.result)?,
                };
                fs::write(path, payload)?;
                let manifest_path = PathBuf::from(format!("{}.manifest.json", path.display()));
                fs::write(manifest_path, pretty(&to_value(&manifest)?)?)?;
            }
            None => {
                let envelope = serde_json::json!({
                    "result": output.result,
                    "manifest": to_value(&manifest)?,
                });
                println!("{}", pretty(&envelope)?.trim_end());
            }
        }
        Ok(())
    }
}

fn pretty(value: &serde_json::Value) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Internal(format!("serializing result: {e}")))?;
    text.push('\n');
    Ok(text)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Serialization failures are library bugs, not user mistakes.
pub fn to_value<T: Serialize>(doc: &T) -> Result<serde_json::Value> {
    serde_json::to_value(doc).map_err(|e| Error::Internal(format!("encoding result: {e}")))
}
