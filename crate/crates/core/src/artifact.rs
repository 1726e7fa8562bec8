//! A circuit or pattern file, recognized by its header line.

use crate::circuit::{Dialect, Gate};
use crate::error::{ParseError, Result};
use crate::sim::{
    circuit_unitary, coherent_map, normalize_isometry, pattern_operator_ordered, Matrix, SimAngles,
};
use crate::text::{
    parse_circuit_file, parse_pattern_file, serialize_circuit_file, serialize_pattern_file,
    CircuitFile, PatternFile,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Artifact {
    Circuit(CircuitFile),
    Pattern(PatternFile),
}

impl Artifact {
    pub fn parse(text: &str) -> Result<Artifact, ParseError> {
        let first = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty());
        match first.and_then(|l| l.split_whitespace().next()) {
            Some("circuit") => parse_circuit_file(text).map(Artifact::Circuit),
            Some("pattern") => parse_pattern_file(text).map(Artifact::Pattern),
            _ => Err(ParseError::syntax(
                1,
                "expected a `circuit` or `pattern` header",
            )),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Artifact::Circuit(_) => "circuit",
            Artifact::Pattern(_) => "pattern",
        }
    }

    pub fn serialize(&self) -> String {
        match self {
            Artifact::Circuit(c) => serialize_circuit_file(c),
            Artifact::Pattern(p) => serialize_pattern_file(p),
        }
    }

    /// The linear map from the listed inputs to the listed outputs.
    ///
    /// Plain source circuits give their unitary. Circuits with logical wire
    /// lists or `MZ` annotations give the post-selected map rescaled to an
    /// isometry. Patterns give the rescaled branch-zero map, which is the
    /// realized operator when the pattern is strongly deterministic.
    pub fn operator(&self, angles: &SimAngles) -> Result<Matrix> {
        match self {
            Artifact::Circuit(f) => {
                let c = &f.circuit;
                let has_mz = c.gates.iter().any(|g| matches!(g, Gate::Mz(_)));
                if c.dialect == Dialect::Source || (!has_mz && !f.has_logical_wires()) {
                    circuit_unitary(c)
                } else {
                    let m = coherent_map(c, &f.inputs, &f.outputs)?;
                    Ok(normalize_isometry(&m))
                }
            }
            Artifact::Pattern(f) => {
                pattern_operator_ordered(&f.pattern, angles, &f.inputs, &f.outputs)
            }
        }
    }
}
