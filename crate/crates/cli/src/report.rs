use std::fmt::Write as _;
use std::time::Duration;

use sha2::{Digest, Sha256};

/// One run of a subcommand: what was asked, what it read, what it found.
///
/// The payload depends only on the inputs and seeds; timing lives in the
/// header so that payloads of identical runs compare byte for byte.
#[derive(Debug, Default)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub payload: String,
    pub wall: Duration,
}

impl RunReport {
    pub fn new(command: String) -> RunReport {
        RunReport { command, ..RunReport::default() }
    }

    /// Records an input by label and the SHA-256 of its bytes.
    pub fn input(&mut self, label: impl Into<String>, bytes: &[u8]) {
        self.inputs.push((label.into(), hex::encode(Sha256::digest(bytes))));
    }

    pub fn line(&mut self, text: impl AsRef<str>) {
        self.payload.push_str(text.as_ref());
        if !self.payload.ends_with('\n') {
            self.payload.push('\n');
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        for (label, digest) in &self.inputs {
            writeln!(out, "input {label}: sha256:{digest}").unwrap();
        }
        writeln!(out, "wall_ms: {}", self.wall.as_millis()).unwrap();
        out.push_str("---\n");
        out.push_str(&self.payload);
        out
    }
}

/// The payload section of a rendered report.
#[cfg(test)]
pub fn payload_of(rendered: &str) -> &str {
    rendered.split_once("---\n").map_or("", |(_, p)| p)
}
