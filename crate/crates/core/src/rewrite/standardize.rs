use super::{RewriteTrace, RuleName};
use crate::error::{Error, Result};
use crate::pattern::{Command, CommandKind, Pattern};

/// Which rule rewrites the out-of-order adjacent pair `(a, b)`.
fn rule_for(a: &Command, b: &Command) -> Option<RuleName> {
    if a.kind() <= b.kind() {
        return None;
    }
    let shared = a.qubits().iter().any(|q| b.qubits().contains(q));
    if !shared {
        return Some(RuleName::Commute);
    }
    match (a, b) {
        (Command::CorrX { .. }, Command::Ent(_)) => Some(RuleName::EntX),
        (Command::CorrZ { .. }, Command::Ent(_)) => Some(RuleName::EntZ),
        (Command::CorrX { .. }, Command::Meas { .. }) => Some(RuleName::MeasX),
        (Command::CorrZ { .. }, Command::Meas { .. }) => Some(RuleName::MeasZ),
        _ => None,
    }
}

/// Rewrites a definite pattern into the order preparations, entanglements,
/// measurements, corrections.
///
/// The leftmost out-of-order adjacent pair is rewritten first; the pair
/// determines the rule, so the result is deterministic.
pub fn standardize(p: &Pattern) -> Result<(Pattern, RewriteTrace)> {
    let report = p.validate();
    if let Some(v) = report.violations.first() {
        return Err(Error::Invalid(format!(
            "{} at qubit {}",
            v.rule.describe(),
            v.qubit
        )));
    }
    if p.commands.iter().any(|c| c.kind() == CommandKind::Shift) {
        return Err(Error::Unsupported(
            "standardization input must not contain shift commands".into(),
        ));
    }
    let mut cmds = p.commands.clone();
    let mut trace = RewriteTrace::default();
    let mut i = 0;
    while i + 1 < cmds.len() {
        let Some(rule) = rule_for(&cmds[i], &cmds[i + 1]) else {
            i += 1;
            continue;
        };
        match rule {
            RuleName::Commute => {
                cmds.swap(i, i + 1);
                trace.push(rule, i, i + 1);
            }
            RuleName::EntX | RuleName::EntZ => {
                let Command::Ent(e) = cmds[i + 1] else {
                    unreachable!()
                };
                let corr = cmds[i].clone();
                let mut repl = vec![Command::Ent(e)];
                match corr {
                    Command::CorrX { q, s } => {
                        repl.push(Command::CorrZ {
                            q: e.other(q),
                            s: s.clone(),
                        });
                        repl.push(Command::CorrX { q, s });
                    }
                    other => repl.push(other),
                }
                let last = i + repl.len() - 1;
                cmds.splice(i..i + 2, repl);
                trace.push(rule, i, last);
            }
            RuleName::MeasX | RuleName::MeasZ => {
                let corr = cmds.remove(i);
                let r = match &corr {
                    Command::CorrX { s, .. } | Command::CorrZ { s, .. } => s,
                    _ => unreachable!(),
                };
                if let Command::Meas { s, t, .. } = &mut cmds[i] {
                    if rule == RuleName::MeasX {
                        *s += r;
                    } else {
                        *t += r;
                    }
                }
                trace.push(rule, i, i);
            }
            _ => unreachable!("standardization only uses the four rules and commutation"),
        }
        i = i.saturating_sub(1);
    }
    let out = Pattern {
        commands: cmds,
        ..p.clone()
    };
    debug_assert!(out.is_standard());
    Ok((out, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::Qubit;
    use crate::rewrite::replay;
    use crate::{Angle, Signal};

    #[test]
    fn single_ex_application() {
        // X_1^{s_0} then E_12, with qubit 0 measured first.
        let p = Pattern::new(
            [0, 1, 2],
            [0, 1, 2],
            [1, 2],
            vec![
                Command::meas(0, Angle::zero(), Signal::empty(), Signal::empty()),
                Command::CorrX {
                    q: Qubit(1),
                    s: Signal::single(Qubit(0)),
                },
                Command::ent(1, 2),
            ],
        );
        let (q, trace) = standardize(&p).unwrap();
        assert!(q.is_standard());
        assert!(trace.steps.iter().any(|s| s.rule == RuleName::EntX));
        assert!(q.commands.contains(&Command::CorrZ {
            q: Qubit(2),
            s: Signal::single(Qubit(0)),
        }));
        assert_eq!(replay(&p, &trace).unwrap(), q);
    }

    #[test]
    fn standard_pattern_is_fixpoint() {
        let p = Pattern::new(
            [1, 2],
            [1],
            [2],
            vec![
                Command::Prep(Qubit(2)),
                Command::ent(1, 2),
                Command::meas(1, Angle::new(1, 4), Signal::empty(), Signal::empty()),
                Command::CorrX {
                    q: Qubit(2),
                    s: Signal::single(Qubit(1)),
                },
            ],
        );
        let (q, trace) = standardize(&p).unwrap();
        assert_eq!(q, p);
        assert!(trace.is_empty());
    }
}
