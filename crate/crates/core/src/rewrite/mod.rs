//! Standardization, signal shifting and Pauli simplification.
//!
//! Command sequences are in execution order, so the algebraic rule
//! `E_ij X_i^s ⇒ X_i^s Z_j^s E_ij` reads here as
//! `[X_i^s, E_ij] ⇒ [E_ij, Z_j^s, X_i^s]`.

mod shift;
mod standardize;

use std::collections::BTreeMap;
use std::fmt;

pub use shift::{pauli_simplify, signal_shift};
pub use standardize::standardize;

use crate::error::{Error, Result};
use crate::pattern::{Command, Pattern, Qubit};
use crate::signal::Signal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleName {
    /// `[X_i^s, E_ij] ⇒ [E_ij, Z_j^s, X_i^s]`
    EntX,
    /// `[Z_i^s, E_ij] ⇒ [E_ij, Z_i^s]`
    EntZ,
    /// `[X_i^r, M_i^{s,t}] ⇒ [M_i^{s+r,t}]`
    MeasX,
    /// `[Z_i^r, M_i^{s,t}] ⇒ [M_i^{s,t+r}]`
    MeasZ,
    /// Swap of adjacent commands on disjoint qubits.
    Commute,
    /// Drop the X-dependency of an X-type measurement.
    PauliX,
    /// Turn the X-dependency of a Y-type measurement into a Z-dependency.
    PauliY,
    /// `M_i^{s,t} ⇒ M_i^{s} S_i^t`, the shift being kept aside.
    Split,
    /// Push the pending shift of the measurement at `before` past the
    /// command at `after`, substituting `s_i ↦ s_i + t` in its signals.
    Propagate,
    /// Discard the pending shift of the measurement at `before`.
    Drop,
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One rewrite step: the rule, the index of the redex before the step, and
/// the index the moved or rewritten command occupies afterwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub rule: RuleName,
    pub before: usize,
    pub after: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RewriteTrace {
    pub steps: Vec<Step>,
}

impl RewriteTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub(crate) fn push(&mut self, rule: RuleName, before: usize, after: usize) {
        self.steps.push(Step {
            rule,
            before,
            after,
        });
    }
}

fn corr_signal(c: &Command) -> Option<(Qubit, &Signal, bool)> {
    match c {
        Command::CorrX { q, s } => Some((*q, s, true)),
        Command::CorrZ { q, s } => Some((*q, s, false)),
        _ => None,
    }
}

/// Applies a recorded trace to `p`, step by step.
pub fn replay(p: &Pattern, trace: &RewriteTrace) -> Result<Pattern> {
    let mut cmds = p.commands.clone();
    let mut pending: BTreeMap<usize, (Qubit, Signal)> = BTreeMap::new();
    let bad = |s: &Step| Error::Unsupported(format!("trace step {s:?} does not apply"));
    for step in &trace.steps {
        let i = step.before;
        match step.rule {
            RuleName::EntX | RuleName::EntZ => {
                let (Some(c), Some(Command::Ent(e))) = (cmds.get(i), cmds.get(i + 1)) else {
                    return Err(bad(step));
                };
                let e = *e;
                let (q, s, is_x) = corr_signal(c).ok_or_else(|| bad(step))?;
                let s = s.clone();
                let mut repl = vec![Command::Ent(e)];
                if is_x {
                    repl.push(Command::CorrZ {
                        q: e.other(q),
                        s: s.clone(),
                    });
                    repl.push(Command::CorrX { q, s });
                } else {
                    repl.push(Command::CorrZ { q, s });
                }
                cmds.splice(i..i + 2, repl);
            }
            RuleName::MeasX | RuleName::MeasZ => {
                let c = cmds.get(i).cloned().ok_or_else(|| bad(step))?;
                let (_, r, is_x) = corr_signal(&c).ok_or_else(|| bad(step))?;
                match cmds.get_mut(i + 1) {
                    Some(Command::Meas { s, t, .. }) => {
                        if is_x {
                            *s += r;
                        } else {
                            *t += r;
                        }
                    }
                    _ => return Err(bad(step)),
                }
                cmds.remove(i);
            }
            RuleName::Commute => {
                if i + 1 >= cmds.len() {
                    return Err(bad(step));
                }
                cmds.swap(i, i + 1);
            }
            RuleName::PauliX | RuleName::PauliY => match cmds.get_mut(i) {
                Some(Command::Meas { s, t, .. }) => {
                    if step.rule == RuleName::PauliY {
                        *t += &*s;
                    }
                    *s = Signal::empty();
                }
                _ => return Err(bad(step)),
            },
            RuleName::Split => match cmds.get_mut(i) {
                Some(Command::Meas { q, t, .. }) => {
                    pending.insert(i, (*q, std::mem::take(t)));
                }
                _ => return Err(bad(step)),
            },
            RuleName::Propagate => {
                let (q, t) = pending.get(&i).cloned().ok_or_else(|| bad(step))?;
                let target = cmds.get_mut(step.after).ok_or_else(|| bad(step))?;
                substitute(target, q, &t);
            }
            RuleName::Drop => {
                pending.remove(&i).ok_or_else(|| bad(step))?;
            }
        }
    }
    Ok(Pattern {
        commands: cmds,
        ..p.clone()
    })
}

/// Replaces `s_q` by `s_q + t` in every signal of `c`; true if anything
/// changed.
pub(crate) fn substitute(c: &mut Command, q: Qubit, t: &Signal) -> bool {
    match c {
        Command::Meas { s, t: tt, .. } => {
            let a = s.substitute(q, t);
            let b = tt.substitute(q, t);
            a || b
        }
        Command::CorrX { s, .. } | Command::CorrZ { s, .. } => s.substitute(q, t),
        Command::Shift { t: tt, .. } => tt.substitute(q, t),
        Command::Prep(_) | Command::Ent(_) => false,
    }
}
