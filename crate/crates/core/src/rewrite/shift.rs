use super::{substitute, RewriteTrace, RuleName};
use crate::angle::PauliClass;
use crate::error::{Error, Result};
use crate::pattern::{Command, Pattern};

/// Removes every Z-dependency from the measurements of a standard pattern.
///
/// Each `M_i^{s,t}` with non-empty `t` is split into `M_i^s` and a shift
/// `S_i^t`; the shift is pushed eagerly past every later command, replacing
/// `s_i` by `s_i + t` wherever it appears, and is then dropped at the end of
/// the pattern where it has no effect on the state.
pub fn signal_shift(p: &Pattern) -> Result<(Pattern, RewriteTrace)> {
    if !p.is_standard() {
        return Err(Error::NotStandard);
    }
    let mut cmds = p.commands.clone();
    let mut trace = RewriteTrace::default();
    for i in 0..cmds.len() {
        let (q, t) = match &mut cmds[i] {
            Command::Meas { q, t, .. } if !t.is_empty() => (*q, std::mem::take(t)),
            _ => continue,
        };
        trace.push(RuleName::Split, i, i);
        for (j, c) in cmds.iter_mut().enumerate().skip(i + 1) {
            if substitute(c, q, &t) {
                trace.push(RuleName::Propagate, i, j);
            }
        }
        trace.push(RuleName::Drop, i, cmds.len());
    }
    Ok((
        Pattern {
            commands: cmds,
            ..p.clone()
        },
        trace,
    ))
}

/// Simplifies the X-dependency of Pauli measurements in a standard pattern:
/// X-type angles ignore it, Y-type angles turn it into a Z-dependency.
pub fn pauli_simplify(p: &Pattern) -> Result<(Pattern, RewriteTrace)> {
    if !p.is_standard() {
        return Err(Error::NotStandard);
    }
    let mut cmds = p.commands.clone();
    let mut trace = RewriteTrace::default();
    for (i, c) in cmds.iter_mut().enumerate() {
        let Command::Meas { angle, s, t, .. } = c else {
            continue;
        };
        if s.is_empty() {
            continue;
        }
        match angle.class() {
            PauliClass::X => {
                *s = Default::default();
                trace.push(RuleName::PauliX, i, i);
            }
            PauliClass::Y => {
                *t += &*s;
                *s = Default::default();
                trace.push(RuleName::PauliY, i, i);
            }
            PauliClass::NonPauli => {}
        }
    }
    Ok((
        Pattern {
            commands: cmds,
            ..p.clone()
        },
        trace,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::Qubit;
    use crate::rewrite::replay;
    use crate::{Angle, Signal};

    fn line3() -> Pattern {
        // 0 - 1 - 2 with 2 the output; qubit 1 carries a Z-dependency on 0.
        Pattern::new(
            [0, 1, 2],
            [0],
            [2],
            vec![
                Command::Prep(Qubit(1)),
                Command::Prep(Qubit(2)),
                Command::ent(0, 1),
                Command::ent(1, 2),
                Command::meas(0, Angle::new(1, 4), Signal::empty(), Signal::empty()),
                Command::meas(
                    1,
                    Angle::new(1, 3),
                    Signal::single(Qubit(0)),
                    Signal::empty(),
                ),
                Command::CorrX {
                    q: Qubit(2),
                    s: Signal::single(Qubit(1)),
                },
                Command::CorrZ {
                    q: Qubit(2),
                    s: Signal::single(Qubit(0)),
                },
            ],
        )
    }

    #[test]
    fn shift_moves_dependency_into_later_signals() {
        let mut p = line3();
        // Give qubit 1 a Z-dependency on 0 instead.
        if let Command::Meas { s, t, .. } = &mut p.commands[5] {
            *t = std::mem::take(s);
        }
        let (q, trace) = signal_shift(&p).unwrap();
        assert!(q.is_shifted());
        // s_1 became s_1 + s_0 in the X correction on the output.
        assert_eq!(
            q.commands[6],
            Command::CorrX {
                q: Qubit(2),
                s: [Qubit(0), Qubit(1)].into_iter().collect(),
            }
        );
        assert_eq!(replay(&p, &trace).unwrap(), q);
    }

    #[test]
    fn pauli_rules() {
        let mut p = line3();
        if let Command::Meas { angle, .. } = &mut p.commands[5] {
            *angle = Angle::new(1, 2);
        }
        let (q, trace) = pauli_simplify(&p).unwrap();
        assert_eq!(trace.steps[0].rule, RuleName::PauliY);
        assert_eq!(
            q.commands[5],
            Command::meas(
                1,
                Angle::new(1, 2),
                Signal::empty(),
                Signal::single(Qubit(0))
            )
        );
        if let Command::Meas { angle, .. } = &mut p.commands[5] {
            *angle = Angle::pi();
        }
        let (q, _) = pauli_simplify(&p).unwrap();
        assert_eq!(
            q.commands[5],
            Command::meas(1, Angle::pi(), Signal::empty(), Signal::empty())
        );
    }

    #[test]
    fn rejects_wild_input() {
        let mut p = line3();
        p.commands.swap(3, 4);
        assert!(matches!(signal_shift(&p), Err(Error::NotStandard)));
        assert!(matches!(pauli_simplify(&p), Err(Error::NotStandard)));
    }
}
