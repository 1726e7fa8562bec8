//! Measurement patterns and the definiteness check.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::angle::Angle;
use crate::geometry::Geometry;
use crate::signal::Signal;

/// A qubit identifier, shared between circuit wires and pattern qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Qubit(pub u32);

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u32> for Qubit {
    fn from(v: u32) -> Qubit {
        Qubit(v)
    }
}

/// An unordered pair of distinct qubits, stored with the smaller id first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(Qubit, Qubit);

impl Edge {
    /// Panics when `a == b`.
    pub fn new(a: Qubit, b: Qubit) -> Edge {
        assert_ne!(a, b, "an edge needs two distinct qubits");
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn lo(self) -> Qubit {
        self.0
    }

    pub fn hi(self) -> Qubit {
        self.1
    }

    pub fn touches(self, q: Qubit) -> bool {
        self.0 == q || self.1 == q
    }

    /// The endpoint that is not `q`.
    pub fn other(self, q: Qubit) -> Qubit {
        if self.0 == q {
            self.1
        } else {
            self.0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Command {
    Prep(Qubit),
    Ent(Edge),
    Meas {
        q: Qubit,
        angle: Angle,
        s: Signal,
        t: Signal,
    },
    CorrX {
        q: Qubit,
        s: Signal,
    },
    CorrZ {
        q: Qubit,
        s: Signal,
    },
    Shift {
        q: Qubit,
        t: Signal,
    },
}

impl Command {
    pub fn ent(a: u32, b: u32) -> Command {
        Command::Ent(Edge::new(Qubit(a), Qubit(b)))
    }

    pub fn meas(q: u32, angle: Angle, s: Signal, t: Signal) -> Command {
        Command::Meas {
            q: Qubit(q),
            angle,
            s,
            t,
        }
    }

    /// Qubits the command acts on.
    pub fn qubits(&self) -> Vec<Qubit> {
        match self {
            Command::Ent(e) => vec![e.lo(), e.hi()],
            Command::Prep(q)
            | Command::Meas { q, .. }
            | Command::CorrX { q, .. }
            | Command::CorrZ { q, .. }
            | Command::Shift { q, .. } => vec![*q],
        }
    }

    /// Union of the signal domains the command reads.
    pub fn dependencies(&self) -> BTreeSet<Qubit> {
        match self {
            Command::Meas { s, t, .. } => s.iter().chain(t.iter()).collect(),
            Command::CorrX { s, .. } | Command::CorrZ { s, .. } => s.domain().clone(),
            Command::Shift { t, .. } => t.domain().clone(),
            Command::Prep(_) | Command::Ent(_) => BTreeSet::new(),
        }
    }

    pub fn kind(&self) -> CommandKind {
        match self {
            Command::Prep(_) => CommandKind::Prep,
            Command::Ent(_) => CommandKind::Ent,
            Command::Meas { .. } => CommandKind::Meas,
            Command::CorrX { .. } | Command::CorrZ { .. } => CommandKind::Corr,
            Command::Shift { .. } => CommandKind::Shift,
        }
    }
}

/// Coarse command classes, ordered as they appear in a standard pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CommandKind {
    Prep,
    Ent,
    Meas,
    Corr,
    Shift,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub qubits: BTreeSet<Qubit>,
    pub inputs: BTreeSet<Qubit>,
    pub outputs: BTreeSet<Qubit>,
    /// Commands in execution order, earliest first.
    pub commands: Vec<Command>,
}

/// The definiteness rule a command breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// A signal mentions a qubit that has not been measured yet.
    DependsOnUnmeasured,
    /// A command other than a shift touches an already measured qubit.
    ActsOnMeasured,
    /// An output qubit is measured.
    MeasuresOutput,
    /// A non-output qubit is never measured.
    UnmeasuredNonOutput,
    /// An input qubit is prepared.
    PreparesInput,
    /// A non-input qubit is used before (or without) its preparation.
    NotPrepared,
    /// The qubit is not declared in V, or I/O are not subsets of V.
    UnknownQubit,
}

impl Rule {
    pub fn describe(self) -> &'static str {
        match self {
            Rule::DependsOnUnmeasured => "depends on unmeasured qubit",
            Rule::ActsOnMeasured => "acts on measured qubit",
            Rule::MeasuresOutput => "measures an output qubit",
            Rule::UnmeasuredNonOutput => "non-output qubit never measured",
            Rule::PreparesInput => "prepares an input qubit",
            Rule::NotPrepared => "uses a qubit before preparing it",
            Rule::UnknownQubit => "qubit outside V",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Offending command index; `None` for end-of-pattern conditions.
    pub index: Option<usize>,
    pub qubit: Qubit,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl Pattern {
    pub fn new(
        qubits: impl IntoIterator<Item = u32>,
        inputs: impl IntoIterator<Item = u32>,
        outputs: impl IntoIterator<Item = u32>,
        commands: Vec<Command>,
    ) -> Pattern {
        Pattern {
            qubits: qubits.into_iter().map(Qubit).collect(),
            inputs: inputs.into_iter().map(Qubit).collect(),
            outputs: outputs.into_iter().map(Qubit).collect(),
            commands,
        }
    }

    /// Qubits measured somewhere in the pattern, in measurement order.
    pub fn measured(&self) -> Vec<Qubit> {
        self.commands
            .iter()
            .filter_map(|c| match c {
                Command::Meas { q, .. } => Some(*q),
                _ => None,
            })
            .collect()
    }

    pub fn non_outputs(&self) -> BTreeSet<Qubit> {
        self.qubits.difference(&self.outputs).copied().collect()
    }

    /// Measurement angles keyed by qubit.
    pub fn angles(&self) -> BTreeMap<Qubit, Angle> {
        self.commands
            .iter()
            .filter_map(|c| match c {
                Command::Meas { q, angle, .. } => Some((*q, angle.clone())),
                _ => None,
            })
            .collect()
    }

    pub fn validate(&self) -> ValidationReport {
        validate_pattern(self)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().ok
    }

    /// True for the shape `N* E* M* (X|Z)*` without shift commands.
    pub fn is_standard(&self) -> bool {
        let mut last = CommandKind::Prep;
        for c in &self.commands {
            let k = c.kind();
            if k == CommandKind::Shift || k < last {
                return false;
            }
            last = k;
        }
        true
    }

    /// No measurement keeps a Z-dependency and no shift command remains.
    pub fn is_shifted(&self) -> bool {
        self.commands.iter().all(|c| match c {
            Command::Meas { t, .. } => t.is_empty(),
            Command::Shift { .. } => false,
            _ => true,
        })
    }

    pub fn geometry(&self) -> Geometry {
        geometry_of(self)
    }
}

/// Checks the three definiteness rules and reports every breach.
pub fn validate_pattern(p: &Pattern) -> ValidationReport {
    let mut out = Vec::new();
    let mut push = |index: Option<usize>, qubit: Qubit, rule: Rule| {
        out.push(Violation { index, qubit, rule });
    };
    for &q in p.inputs.iter().chain(p.outputs.iter()) {
        if !p.qubits.contains(&q) {
            push(None, q, Rule::UnknownQubit);
        }
    }
    let mut measured: BTreeSet<Qubit> = BTreeSet::new();
    let mut prepared: BTreeSet<Qubit> = p.inputs.clone();
    for (i, c) in p.commands.iter().enumerate() {
        for d in c.dependencies() {
            if !measured.contains(&d) {
                push(Some(i), d, Rule::DependsOnUnmeasured);
            }
        }
        for q in c.qubits() {
            if !p.qubits.contains(&q) {
                push(Some(i), q, Rule::UnknownQubit);
                continue;
            }
            match c {
                Command::Shift { .. } => {
                    if !measured.contains(&q) {
                        push(Some(i), q, Rule::DependsOnUnmeasured);
                    }
                }
                Command::Prep(_) => {
                    if p.inputs.contains(&q) {
                        push(Some(i), q, Rule::PreparesInput);
                    } else if measured.contains(&q) {
                        push(Some(i), q, Rule::ActsOnMeasured);
                    } else if !prepared.insert(q) {
                        push(Some(i), q, Rule::NotPrepared);
                    }
                }
                _ => {
                    if measured.contains(&q) {
                        push(Some(i), q, Rule::ActsOnMeasured);
                    } else if !prepared.contains(&q) {
                        push(Some(i), q, Rule::NotPrepared);
                    }
                }
            }
        }
        if let Command::Meas { q, .. } = c {
            if p.outputs.contains(q) {
                push(Some(i), *q, Rule::MeasuresOutput);
            }
            measured.insert(*q);
        }
    }
    for &q in &p.qubits {
        if !p.outputs.contains(&q) && !measured.contains(&q) {
            push(None, q, Rule::UnmeasuredNonOutput);
        }
        if !p.inputs.contains(&q) && !prepared.contains(&q) {
            push(None, q, Rule::NotPrepared);
        }
    }
    ValidationReport {
        ok: out.is_empty(),
        violations: out,
    }
}

/// Forgets measurements and corrections. Repeated entanglement of the same
/// pair cancels, since `E` is an involution.
pub fn geometry_of(p: &Pattern) -> Geometry {
    let mut edges = BTreeSet::new();
    for c in &p.commands {
        if let Command::Ent(e) = c {
            if !edges.remove(e) {
                edges.insert(*e);
            }
        }
    }
    Geometry::new(p.qubits.clone(), edges, p.inputs.clone(), p.outputs.clone())
}
