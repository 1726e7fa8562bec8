use std::collections::{BTreeMap, BTreeSet};

use crate::angle::Angle;
use crate::circuit::{Circuit, Dialect, Gate};
use crate::depth::{preparation_depth, quantum_depth};
use crate::error::{Error, Result};
use crate::flow::{find_flow, Flow};
use crate::geometry::Geometry;
use crate::pattern::{Command, Edge, Pattern, Qubit};
use crate::rewrite::{signal_shift, standardize};
use crate::signal::Signal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// One pattern qubit per wire plus one per `J` gate.
    Direct,
    /// Like `Direct`, after inserting `J(0)·J(0)` between any two `CZ` that
    /// follow each other on a wire, which bounds the vertex degree.
    Cluster,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Input,
    Output,
    /// A wire without `J` gates: its only vertex is both.
    InputOutput,
    Auxiliary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledVertex {
    pub id: Qubit,
    pub label: Label,
    pub wire: u32,
    /// The `α` of the `J(α)` that measures this vertex.
    pub angle: Option<Angle>,
}

/// Size and depth figures of a translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationStats {
    pub wires: usize,
    /// `J` gates of the CZ-normalized input, before any cluster insertion.
    pub j_gates: usize,
    pub cz_gates: usize,
    /// Places where two `CZ` met on a wire and a `J(0)·J(0)` pair was put
    /// between them (cluster variant only).
    pub cluster_positions: usize,
    pub qubits: usize,
    pub measurements: usize,
    pub auxiliary: usize,
    pub max_degree: usize,
    pub preparation_depth: usize,
    /// Depth of the normalized source circuit.
    pub circuit_depth: usize,
    pub flow_depth: usize,
    /// Quantum depth of the standardized, signal-shifted pattern.
    pub quantum_depth: usize,
}

#[derive(Debug, Clone)]
pub struct Translation {
    /// The circuit actually translated: CZ-normalized, with the cluster
    /// insertions when requested.
    pub circuit: Circuit,
    /// Concatenation of the gate patterns.
    pub wild: Pattern,
    /// `wild` after standardization; it has the flow form.
    pub standard: Pattern,
    /// `standard` after signal shifting.
    pub pattern: Pattern,
    pub geometry: Geometry,
    pub flow: Flow,
    pub vertices: Vec<LabelledVertex>,
    /// Vertices of each wire from input to output.
    pub wires: Vec<Vec<Qubit>>,
    pub stats: TranslationStats,
}

impl Translation {
    pub fn wire_inputs(&self) -> Vec<Qubit> {
        self.wires.iter().map(|w| w[0]).collect()
    }

    pub fn wire_outputs(&self) -> Vec<Qubit> {
        self.wires
            .iter()
            .map(|w| *w.last().expect("a wire has a vertex"))
            .collect()
    }
}

fn insert_cluster_segments(c: &Circuit) -> (Circuit, usize) {
    let mut out = Circuit::new(c.n, Dialect::Source);
    let mut after_cz = vec![false; c.n as usize];
    let mut inserted = 0;
    for g in &c.gates {
        match *g {
            Gate::Cz(a, b) => {
                for w in [a, b] {
                    if after_cz[w as usize] {
                        out.push(Gate::J(w, Angle::zero()));
                        out.push(Gate::J(w, Angle::zero()));
                        inserted += 1;
                    }
                    after_cz[w as usize] = true;
                }
            }
            Gate::J(w, _) => after_cz[w as usize] = false,
            _ => {}
        }
        out.push(g.clone());
    }
    (out, inserted)
}

/// Translates a `{J, CZ}` circuit gate by gate.
///
/// Wire `w` starts at vertex `w`; each `J(α)` on a wire prepares the next
/// free vertex `q`, entangles it with the wire's current vertex `v` and
/// measures `v` at angle `−α` with the correction `X_q^{s_v}`. A `CZ`
/// entangles the current vertices of its wires. The concatenation is then
/// standardized and signal-shifted.
pub fn circuit_to_pattern(c: &Circuit, variant: Variant) -> Result<Translation> {
    if c.dialect != Dialect::Source {
        return Err(Error::Dialect { expected: "source" });
    }
    c.check()?;
    let normalized = c.normalize_cz();
    let j_gates = normalized
        .gates
        .iter()
        .filter(|g| matches!(g, Gate::J(..)))
        .count();
    let cz_gates = normalized.two_qubit_count();
    let (circuit, cluster_positions) = match variant {
        Variant::Direct => (normalized, 0),
        Variant::Cluster => insert_cluster_segments(&normalized),
    };

    let n = circuit.n;
    let mut wires: Vec<Vec<Qubit>> = (0..n).map(|w| vec![Qubit(w)]).collect();
    let mut next = n;
    let mut commands = Vec::new();
    let mut measured_angle: BTreeMap<Qubit, (u32, Angle)> = BTreeMap::new();
    let mut wire_flow: BTreeMap<Qubit, Qubit> = BTreeMap::new();
    for g in &circuit.gates {
        match g {
            Gate::J(w, alpha) => {
                let cur = *wires[*w as usize].last().expect("non-empty");
                let q = Qubit(next);
                next += 1;
                commands.push(Command::Prep(q));
                commands.push(Command::Ent(Edge::new(cur, q)));
                commands.push(Command::Meas {
                    q: cur,
                    angle: alpha.neg(),
                    s: Signal::empty(),
                    t: Signal::empty(),
                });
                commands.push(Command::CorrX {
                    q,
                    s: Signal::single(cur),
                });
                measured_angle.insert(cur, (*w, alpha.clone()));
                wire_flow.insert(cur, q);
                wires[*w as usize].push(q);
            }
            Gate::Cz(a, b) => {
                let va = *wires[*a as usize].last().expect("non-empty");
                let vb = *wires[*b as usize].last().expect("non-empty");
                commands.push(Command::Ent(Edge::new(va, vb)));
            }
            _ => unreachable!("checked source dialect"),
        }
    }
    let inputs: BTreeSet<Qubit> = wires.iter().map(|w| w[0]).collect();
    let outputs: BTreeSet<Qubit> = wires
        .iter()
        .map(|w| *w.last().expect("non-empty"))
        .collect();
    let wild = Pattern {
        qubits: (0..next).map(Qubit).collect(),
        inputs: inputs.clone(),
        outputs: outputs.clone(),
        commands,
    };
    let standard = standardize(&wild)?.0;
    let pattern = signal_shift(&standard)?.0;
    let geometry = standard.geometry();
    let flow = find_flow(&geometry)?;
    if flow.f != wire_flow {
        return Err(Error::Invalid(
            "flow of the translated geometry differs from the wire paths".into(),
        ));
    }

    let mut vertices = Vec::with_capacity(next as usize);
    for (w, verts) in wires.iter().enumerate() {
        for &v in verts {
            let label = match (inputs.contains(&v), outputs.contains(&v)) {
                (true, true) => Label::InputOutput,
                (true, false) => Label::Input,
                (false, true) => Label::Output,
                (false, false) => Label::Auxiliary,
            };
            vertices.push(LabelledVertex {
                id: v,
                label,
                wire: w as u32,
                angle: measured_angle.get(&v).map(|(_, a)| a.clone()),
            });
        }
    }
    vertices.sort_by_key(|v| v.id);

    let stats = TranslationStats {
        wires: n as usize,
        j_gates,
        cz_gates,
        cluster_positions,
        qubits: wild.qubits.len(),
        measurements: wild.measured().len(),
        auxiliary: vertices
            .iter()
            .filter(|v| v.label == Label::Auxiliary)
            .count(),
        max_degree: geometry.max_degree(),
        preparation_depth: preparation_depth(&geometry).0,
        circuit_depth: circuit.normalize_cz().depth(),
        flow_depth: flow.depth(),
        quantum_depth: quantum_depth(&pattern)?,
    };
    Ok(Translation {
        circuit,
        wild,
        standard,
        pattern,
        geometry,
        flow,
        vertices,
        wires,
        stats,
    })
}
