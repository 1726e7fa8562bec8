use thiserror::Error;

use crate::Qubit;

/// Failure while reading the circuit or pattern text formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: gate `{gate}` is not allowed in a source-dialect circuit")]
    Dialect { line: usize, gate: String },
}

impl ParseError {
    pub(crate) fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn at_line(self, line: usize) -> ParseError {
        match self {
            ParseError::Syntax { msg, .. } => ParseError::Syntax { line, msg },
            ParseError::Dialect { gate, .. } => ParseError::Dialect { line, gate },
        }
    }

    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. } | ParseError::Dialect { line, .. } => *line,
        }
    }
}

/// Errors raised by the analysis and transformation passes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("pattern is not definite: {0}")]
    Invalid(String),
    #[error("pattern is not in standard form")]
    NotStandard,
    #[error("pattern still has Z-dependent measurements; shift signals first")]
    NotShifted,
    #[error("flow search needs |I| <= |O| (got {inputs} inputs, {outputs} outputs)")]
    UnequalInputOutput { inputs: usize, outputs: usize },
    #[error("geometry has no flow")]
    NoFlow,
    #[error("no angle given for measured qubit {0}")]
    MissingAngle(Qubit),
    #[error("pattern does not have the flow form: {0}")]
    NotFlowForm(String),
    #[error("circuit is not in the {expected} dialect")]
    Dialect { expected: &'static str },
    #[error("word entry {0} is not a Pauli class")]
    NonPauliWord(usize),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("simulation error: {0}")]
    Sim(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
