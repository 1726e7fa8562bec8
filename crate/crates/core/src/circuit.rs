//! Gate-level circuits in the source `{J, CZ}` and target dialects.

use std::fmt;

use crate::angle::Angle;
use crate::error::{Error, Result};

/// Gate family a circuit is restricted to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dialect {
    /// Only `J(α)` and `CZ`.
    Source,
    /// `H`, `Z(α)`, `CX`, `CZ` and computational-basis measurement.
    Target,
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dialect::Source => "source",
            Dialect::Target => "target",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gate {
    /// `J(α) = H·Z(α)` where `Z(α) = diag(1, e^{iα})`.
    J(u32, Angle),
    Cz(u32, u32),
    H(u32),
    /// Phase gate `diag(1, e^{iα})`.
    Zp(u32, Angle),
    Cx {
        control: u32,
        target: u32,
    },
    /// Computational-basis measurement, kept as a terminal annotation.
    Mz(u32),
}

impl Gate {
    pub fn wires(&self) -> Vec<u32> {
        match *self {
            Gate::J(q, _) | Gate::H(q) | Gate::Zp(q, _) | Gate::Mz(q) => vec![q],
            Gate::Cz(a, b) => vec![a, b],
            Gate::Cx { control, target } => vec![control, target],
        }
    }

    pub fn allowed_in(&self, dialect: Dialect) -> bool {
        match dialect {
            Dialect::Source => matches!(self, Gate::J(..) | Gate::Cz(..)),
            Dialect::Target => !matches!(self, Gate::J(..)),
        }
    }

    pub fn mnemonic(&self) -> &'static str {
        match self {
            Gate::J(..) => "J",
            Gate::Cz(..) => "CZ",
            Gate::H(_) => "H",
            Gate::Zp(..) => "ZP",
            Gate::Cx { .. } => "CX",
            Gate::Mz(_) => "MZ",
        }
    }

    fn same_cz_pair(&self, other: &Gate) -> bool {
        match (self, other) {
            (Gate::Cz(a, b), Gate::Cz(c, d)) => (a, b) == (c, d) || (a, b) == (d, c),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    pub n: u32,
    pub gates: Vec<Gate>,
    pub dialect: Dialect,
}

impl Circuit {
    pub fn new(n: u32, dialect: Dialect) -> Circuit {
        Circuit {
            n,
            gates: Vec::new(),
            dialect,
        }
    }

    pub fn source(n: u32, gates: Vec<Gate>) -> Circuit {
        Circuit {
            n,
            gates,
            dialect: Dialect::Source,
        }
    }

    pub fn push(&mut self, g: Gate) {
        self.gates.push(g);
    }

    /// Checks wire bounds, distinct two-qubit operands and dialect membership.
    pub fn check(&self) -> Result<()> {
        for g in &self.gates {
            let w = g.wires();
            if w.iter().any(|&q| q >= self.n) {
                return Err(Error::Unsupported(format!(
                    "gate {} uses a wire outside 0..{}",
                    g.mnemonic(),
                    self.n
                )));
            }
            if w.len() == 2 && w[0] == w[1] {
                return Err(Error::Unsupported(format!(
                    "gate {} needs two distinct wires",
                    g.mnemonic()
                )));
            }
            if !g.allowed_in(self.dialect) {
                return Err(Error::Dialect {
                    expected: if self.dialect == Dialect::Source {
                        "source"
                    } else {
                        "target"
                    },
                });
            }
        }
        Ok(())
    }

    pub fn two_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.wires().len() == 2).count()
    }

    /// Cancels pairs of `CZ` on the same wires with nothing in between on
    /// either wire, repeating until none remain.
    pub fn normalize_cz(&self) -> Circuit {
        let mut out: Vec<Gate> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let cancel = if matches!(g, Gate::Cz(..)) {
                let wires = g.wires();
                out.iter()
                    .rposition(|h| h.wires().iter().any(|w| wires.contains(w)))
                    .filter(|&k| out[k].same_cz_pair(g))
            } else {
                None
            };
            match cancel {
                Some(k) => {
                    out.remove(k);
                }
                None => out.push(g.clone()),
            }
        }
        Circuit {
            n: self.n,
            gates: out,
            dialect: self.dialect,
        }
    }

    /// Start time of every gate under as-soon-as-possible scheduling, where a
    /// wire takes part in one gate per time step. Returns `(steps, depth)`.
    pub fn schedule(&self) -> (Vec<usize>, usize) {
        let mut ready = vec![0usize; self.n as usize];
        let mut steps = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let w = g.wires();
            let t = w.iter().map(|&q| ready[q as usize]).max().unwrap_or(0);
            for &q in &w {
                ready[q as usize] = t + 1;
            }
            steps.push(t);
        }
        let depth = ready.into_iter().max().unwrap_or(0);
        (steps, depth)
    }

    /// Layer count of [`Circuit::schedule`]; terminal `MZ` annotations are
    /// not counted.
    pub fn depth(&self) -> usize {
        let unitary = Circuit {
            n: self.n,
            gates: self
                .gates
                .iter()
                .filter(|g| !matches!(g, Gate::Mz(_)))
                .cloned()
                .collect(),
            dialect: self.dialect,
        };
        unitary.schedule().1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cz_pairs_cancel_when_adjacent() {
        let c = Circuit::source(3, vec![Gate::Cz(0, 1), Gate::Cz(1, 0), Gate::Cz(1, 2)]);
        assert_eq!(c.normalize_cz().gates, vec![Gate::Cz(1, 2)]);
    }

    #[test]
    fn cz_pairs_survive_interleaved_gate() {
        let c = Circuit::source(
            2,
            vec![Gate::Cz(0, 1), Gate::J(0, Angle::zero()), Gate::Cz(0, 1)],
        );
        assert_eq!(c.normalize_cz().gates.len(), 3);
    }

    #[test]
    fn nested_pairs_cancel() {
        let c = Circuit::source(
            3,
            vec![
                Gate::Cz(0, 1),
                Gate::Cz(1, 2),
                Gate::Cz(1, 2),
                Gate::Cz(0, 1),
            ],
        );
        assert!(c.normalize_cz().gates.is_empty());
    }

    #[test]
    fn depth_counts_parallel_layers() {
        let c = Circuit::source(
            4,
            vec![
                Gate::Cz(0, 1),
                Gate::Cz(2, 3),
                Gate::Cz(1, 2),
                Gate::J(0, Angle::zero()),
            ],
        );
        assert_eq!(c.depth(), 2);
    }

    #[test]
    fn check_rejects_dialect_mix() {
        let mut c = Circuit::source(2, vec![]);
        c.push(Gate::H(0));
        assert!(matches!(c.check(), Err(Error::Dialect { .. })));
    }
}
