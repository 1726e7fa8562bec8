//! Flat `key = value` reports, sorted by key so identical runs print
//! identical bytes.

use std::collections::BTreeMap;
use std::fmt;

use sha2::{Digest, Sha256};

use crate::flow::DepthReport;
use crate::sim::DeterminismReport;
use crate::translate::{ParallelReport, TranslationStats};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    entries: BTreeMap<String, String>,
}

/// Lowercase hex SHA-256 of `bytes`.
pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl Report {
    /// A report echoing `command` and the digest of the input text.
    pub fn new(command: &str, input: &str) -> Report {
        let mut r = Report::default();
        r.set("command", command);
        r.set("input_sha256", sha256_hex(input.as_bytes()));
        r
    }

    pub fn set(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.entries.insert(key.into(), value.to_string());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn translation(&mut self, s: &TranslationStats) {
        let fields = [
            ("wires", s.wires),
            ("j_gates", s.j_gates),
            ("cz_gates", s.cz_gates),
            ("cluster_positions", s.cluster_positions),
            ("qubits", s.qubits),
            ("measurements", s.measurements),
            ("auxiliary", s.auxiliary),
            ("max_degree", s.max_degree),
            ("preparation_depth", s.preparation_depth),
            ("circuit_depth", s.circuit_depth),
            ("flow_depth", s.flow_depth),
            ("quantum_depth", s.quantum_depth),
        ];
        for (k, v) in fields {
            self.set(format!("translation.{k}"), v);
        }
    }

    /// Summary figures of a depth analysis; the per-path detail is left to
    /// the `paths` listing.
    pub fn depth(&mut self, d: &DepthReport) {
        self.set("depth.flow_depth", d.flow_depth);
        self.set("depth.quantum_depth_bound", d.quantum_depth_bound);
        self.set("depth.characterized_depth", d.characterized_depth);
        self.set("depth.classical_depth", d.classical_depth);
        self.set("depth.paths", d.paths.len());
    }

    pub fn parallel(&mut self, p: &ParallelReport) {
        self.translation(&p.translation);
        self.depth(&p.depth);
        self.set("output.d_prime", p.d_prime);
        self.set("output.pattern_depth", p.pattern_depth);
        self.set("output.circuit_depth", p.output_depth);
        self.set("output.wires", p.output_wires);
        self.set("output.ancillas", p.ancillas);
        self.set("output.max_fan_in", p.max_fan_in);
    }

    /// Determinism flags under `<prefix>.determinism.`.
    pub fn determinism(&mut self, prefix: &str, d: &DeterminismReport) {
        self.set(
            format!("{prefix}.determinism.deterministic"),
            d.deterministic,
        );
        self.set(format!("{prefix}.determinism.strong"), d.strong);
        self.set(format!("{prefix}.determinism.uniform"), d.uniform);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}
