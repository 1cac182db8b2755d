//! Run manifests: enough to reproduce a run bit-for-bit in single-worker
//! mode (command line, seed, budgets, input/output digests, wall time).

use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Serialize)]
struct FileDigest {
    path: String,
    sha256: String,
}

#[derive(Serialize)]
pub struct RunManifest {
    command: Vec<String>,
    seed: u64,
    budget_nodes: Option<u64>,
    budget_secs: Option<f64>,
    workers: usize,
    inputs: Vec<FileDigest>,
    outputs: Vec<FileDigest>,
    wall_time_secs: f64,
    exit_code: i32,
    #[serde(skip)]
    started: Instant,
}

fn digest(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl RunManifest {
    pub fn new(seed: u64, budget_nodes: Option<u64>, budget_secs: Option<f64>, workers: usize) -> Self {
        RunManifest {
            command: std::env::args().collect(),
            seed,
            budget_nodes,
            budget_secs,
            workers,
            inputs: Vec::new(),
            outputs: Vec::new(),
            wall_time_secs: 0.0,
            exit_code: 0,
            started: Instant::now(),
        }
    }

    pub fn record_input(&mut self, name: &str, bytes: &[u8]) {
        self.inputs.push(FileDigest { path: name.to_string(), sha256: digest(bytes) });
    }

    pub fn record_output(&mut self, name: &str, bytes: &[u8]) {
        self.outputs.push(FileDigest { path: name.to_string(), sha256: digest(bytes) });
    }

    pub fn write(mut self, path: &Path, exit_code: i32) -> std::io::Result<()> {
        self.wall_time_secs = self.started.elapsed().as_secs_f64();
        self.exit_code = exit_code;
        let json = serde_json::to_string_pretty(&self).expect("manifest serializes");
        std::fs::write(path, json)
    }
}
