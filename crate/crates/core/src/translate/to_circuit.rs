use std::collections::BTreeMap;

use crate::circuit::{Circuit, Dialect, Gate};
use crate::depth::preparation_depth;
use crate::error::{Error, Result};
use crate::pattern::{Command, Pattern, Qubit};
use crate::signal::Signal;

/// How the parity of a signal reaches the gate it controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FanInMode {
    /// One controlled gate per signal qubit, straight onto the target.
    Linear,
    /// The parity is collected into fresh ancillas along a balanced binary
    /// tree, used once, then uncomputed so the ancillas return to `|0⟩`.
    Tree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FanInKind {
    X,
    Z,
}

/// One controlled Pauli driven by the parity of `sources`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanIn {
    pub target: u32,
    pub kind: FanInKind,
    pub sources: Vec<u32>,
    pub ancillas: Vec<u32>,
    /// Tree mode: levels of ancillas between the sources and the root.
    /// Linear mode: the number of controlled gates on the target.
    pub height: usize,
}

/// A coherent circuit with the bookkeeping needed to read it back.
#[derive(Debug, Clone)]
pub struct CoherentCircuit {
    pub circuit: Circuit,
    pub wire_of: BTreeMap<Qubit, u32>,
    /// Wires of the pattern inputs, by ascending qubit.
    pub inputs: Vec<u32>,
    /// Wires of the pattern outputs, by ascending qubit.
    pub outputs: Vec<u32>,
    /// Wires that end in a computational-basis measurement.
    pub measured: Vec<u32>,
    pub ancillas: Vec<u32>,
    pub fanins: Vec<FanIn>,
}

struct Builder {
    gates: Vec<Gate>,
    next_wire: u32,
    mode: FanInMode,
    ancillas: Vec<u32>,
    fanins: Vec<FanIn>,
}

impl Builder {
    fn controlled(&mut self, control: u32, target: u32, kind: FanInKind) {
        self.gates.push(match kind {
            FanInKind::X => Gate::Cx { control, target },
            FanInKind::Z => Gate::Cz(control, target),
        });
    }

    fn fan_in(&mut self, sources: Vec<u32>, target: u32, kind: FanInKind) {
        let k = sources.len();
        if k == 0 {
            return;
        }
        if self.mode == FanInMode::Linear || k == 1 {
            for &s in &sources {
                self.controlled(s, target, kind);
            }
            self.fanins.push(FanIn {
                target,
                kind,
                height: if self.mode == FanInMode::Linear { k } else { 0 },
                sources,
                ancillas: Vec::new(),
            });
            return;
        }
        let mut compute = Vec::new();
        let mut ancillas = Vec::new();
        let mut level = sources.clone();
        let mut height = 0;
        while level.len() > 1 {
            let mut up = Vec::with_capacity(level.len().div_ceil(2));
            for pair in level.chunks(2) {
                if let [a, b] = *pair {
                    let c = self.next_wire;
                    self.next_wire += 1;
                    ancillas.push(c);
                    compute.push(Gate::Cx {
                        control: a,
                        target: c,
                    });
                    compute.push(Gate::Cx {
                        control: b,
                        target: c,
                    });
                    up.push(c);
                } else {
                    up.push(pair[0]);
                }
            }
            level = up;
            height += 1;
        }
        self.gates.extend(compute.iter().cloned());
        self.controlled(level[0], target, kind);
        self.gates.extend(compute.into_iter().rev());
        self.ancillas.extend(&ancillas);
        self.fanins.push(FanIn {
            target,
            kind,
            sources,
            ancillas,
            height,
        });
    }
}

/// The coherent circuit of a standard, signal-shifted pattern.
///
/// Pattern qubits become wires in ascending order. Non-input wires get `H`,
/// the entanglement graph is laid out one edge-colour class at a time, each
/// measurement `M^α` with X-dependency `s` becomes an X fan-in from `s`
/// followed by `Z(−α)` and `H`, corrections become controlled-X or
/// controlled-Z fan-ins, and measured wires end with `MZ`. Gates are listed
/// in the order of their as-soon-as-possible time step.
pub fn pattern_to_circuit(p: &Pattern, mode: FanInMode) -> Result<CoherentCircuit> {
    let report = p.validate();
    if let Some(v) = report.violations.first() {
        return Err(Error::Invalid(format!(
            "{} at qubit {}",
            v.rule.describe(),
            v.qubit
        )));
    }
    if !p.is_standard() {
        return Err(Error::NotStandard);
    }
    if !p.is_shifted() {
        return Err(Error::NotShifted);
    }
    let wire_of: BTreeMap<Qubit, u32> = p
        .qubits
        .iter()
        .enumerate()
        .map(|(i, &q)| (q, i as u32))
        .collect();
    let wires = |s: &Signal| s.iter().map(|q| wire_of[&q]).collect::<Vec<_>>();
    let mut b = Builder {
        gates: Vec::new(),
        next_wire: p.qubits.len() as u32,
        mode,
        ancillas: Vec::new(),
        fanins: Vec::new(),
    };
    for q in p.qubits.difference(&p.inputs) {
        b.gates.push(Gate::H(wire_of[q]));
    }
    let g = p.geometry();
    for class in preparation_depth(&g).1.classes() {
        for e in class {
            b.gates.push(Gate::Cz(wire_of[&e.lo()], wire_of[&e.hi()]));
        }
    }
    for c in &p.commands {
        match c {
            Command::Meas { q, angle, s, .. } => {
                let w = wire_of[q];
                b.fan_in(wires(s), w, FanInKind::X);
                b.gates.push(Gate::Zp(w, angle.neg()));
                b.gates.push(Gate::H(w));
            }
            Command::CorrX { q, s } => b.fan_in(wires(s), wire_of[q], FanInKind::X),
            Command::CorrZ { q, s } => b.fan_in(wires(s), wire_of[q], FanInKind::Z),
            Command::Prep(_) | Command::Ent(_) | Command::Shift { .. } => {}
        }
    }
    let measured: Vec<u32> = p.measured().iter().map(|q| wire_of[q]).collect();
    b.gates.extend(measured.iter().map(|&w| Gate::Mz(w)));

    let mut circuit = Circuit {
        n: b.next_wire,
        gates: b.gates,
        dialect: Dialect::Target,
    };
    let (steps, _) = circuit.schedule();
    let mut order: Vec<usize> = (0..circuit.gates.len()).collect();
    order.sort_by_key(|&i| steps[i]);
    circuit.gates = order
        .into_iter()
        .map(|i| circuit.gates[i].clone())
        .collect();
    circuit.check()?;

    Ok(CoherentCircuit {
        circuit,
        inputs: p.inputs.iter().map(|q| wire_of[q]).collect(),
        outputs: p.outputs.iter().map(|q| wire_of[q]).collect(),
        wire_of,
        measured,
        ancillas: b.ancillas,
        fanins: b.fanins,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;

    fn j_pattern(alpha: Angle) -> Pattern {
        Pattern::new(
            [0, 1],
            [0],
            [1],
            vec![
                Command::Prep(Qubit(1)),
                Command::ent(0, 1),
                Command::meas(0, alpha.neg(), Signal::empty(), Signal::empty()),
                Command::CorrX {
                    q: Qubit(1),
                    s: Signal::single(Qubit(0)),
                },
            ],
        )
    }

    #[test]
    fn j_pattern_gate_list() {
        let cc = pattern_to_circuit(&j_pattern(Angle::new(1, 3)), FanInMode::Linear).unwrap();
        assert_eq!(
            cc.circuit.gates,
            vec![
                Gate::H(1),
                Gate::Cz(0, 1),
                Gate::Zp(0, Angle::new(1, 3)),
                Gate::H(0),
                Gate::Cx {
                    control: 0,
                    target: 1
                },
                Gate::Mz(0),
            ]
        );
        assert_eq!(cc.measured, vec![0]);
    }

    #[test]
    fn rejects_z_dependent_measurements() {
        let mut p = j_pattern(Angle::zero());
        p.qubits.insert(Qubit(2));
        p.outputs = [Qubit(2)].into();
        p.commands = vec![
            Command::Prep(Qubit(1)),
            Command::Prep(Qubit(2)),
            Command::ent(0, 1),
            Command::ent(1, 2),
            Command::meas(0, Angle::zero(), Signal::empty(), Signal::empty()),
            Command::meas(1, Angle::zero(), Signal::empty(), Signal::single(Qubit(0))),
        ];
        assert!(matches!(
            pattern_to_circuit(&p, FanInMode::Tree),
            Err(Error::NotShifted)
        ));
    }

    #[test]
    fn tree_fan_in_shape() {
        let mut b = Builder {
            gates: Vec::new(),
            next_wire: 10,
            mode: FanInMode::Tree,
            ancillas: Vec::new(),
            fanins: Vec::new(),
        };
        b.fan_in((0..5).collect(), 9, FanInKind::X);
        let f = &b.fanins[0];
        assert_eq!(f.ancillas.len(), 4);
        assert_eq!(f.height, 3);
        // compute, one controlled gate, uncompute
        assert_eq!(b.gates.len(), 2 * 4 + 1 + 2 * 4);
    }
}
