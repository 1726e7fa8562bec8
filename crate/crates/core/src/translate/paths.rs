use std::collections::BTreeSet;
use std::fmt;

use crate::angle::{Angle, PauliClass};
use crate::circuit::{Circuit, Dialect, Gate};
use crate::error::{Error, Result};
use crate::flow::{simplify, Simplified, Token, MAX_PATHS};

/// The stretch of a wire between two `J` gates: `index` counts the `J`
/// gates before it, and the `J` that ends it (if any) is the `index`-th.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub wire: u32,
    pub index: usize,
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{}.{}", self.wire, self.index)
    }
}

/// A path along wires and `CZ` jumps, with the classes of the `J` gates it
/// passes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitPath {
    pub segments: Vec<Segment>,
    /// `true` where the step is a jump through a `CZ`.
    pub jumps: Vec<bool>,
    /// Classes of the `J` gates ending the visited segments, `|` at jumps.
    pub word: String,
    pub simplified: String,
    /// Largest dependent stretch of non-Pauli `J` gates after simplification.
    pub longest: usize,
}

impl fmt::Display for CircuitPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.segments[0])?;
        for (s, &jump) in self.segments[1..].iter().zip(&self.jumps) {
            write!(f, " {} {s}", if jump { "--" } else { "->" })?;
        }
        Ok(())
    }
}

struct Walk<'a> {
    js: &'a [Vec<Angle>],
    cz: &'a BTreeSet<(Segment, Segment)>,
    found: Vec<(Vec<Segment>, Vec<bool>)>,
}

impl Walk<'_> {
    fn is_output(&self, s: Segment) -> bool {
        s.index == self.js[s.wire as usize].len()
    }

    fn partners(&self, s: Segment) -> impl Iterator<Item = Segment> + '_ {
        self.cz.iter().filter_map(move |&(a, b)| {
            if a == s {
                Some(b)
            } else if b == s {
                Some(a)
            } else {
                None
            }
        })
    }

    fn extend(&mut self, segs: &mut Vec<Segment>, jumps: &mut Vec<bool>) -> Result<()> {
        let s = *segs.last().expect("non-empty");
        if self.is_output(s) {
            if self.found.len() >= MAX_PATHS {
                return Err(Error::Resource(format!(
                    "more than {MAX_PATHS} circuit paths"
                )));
            }
            self.found.push((segs.clone(), jumps.clone()));
        }
        let mut moves: Vec<(Segment, bool)> = Vec::new();
        if !self.is_output(s) {
            moves.push((
                Segment {
                    wire: s.wire,
                    index: s.index + 1,
                },
                false,
            ));
        }
        if jumps.last() == Some(&false) {
            moves.extend(self.partners(s).map(|t| (t, true)));
        }
        moves.sort();
        for (t, jump) in moves {
            if segs.contains(&t) {
                continue;
            }
            segs.push(t);
            jumps.push(jump);
            self.extend(segs, jumps)?;
            segs.pop();
            jumps.pop();
        }
        Ok(())
    }
}

fn is_window(short: &(Vec<Segment>, Vec<bool>), long: &(Vec<Segment>, Vec<bool>)) -> bool {
    let n = short.0.len();
    n < long.0.len()
        && long
            .0
            .windows(n)
            .zip(long.1.windows(n - 1))
            .any(|(s, j)| s == short.0.as_slice() && j == short.1.as_slice())
}

/// Influencing paths read directly off a `{J, CZ}` circuit, and the largest
/// dependent stretch `D′` over all of them.
///
/// A path starts at the beginning of a wire, passes at least the first `J`
/// of it, moves forward along wires or jumps through a `CZ` (never two jumps
/// without a `J` in between) and ends at the end of a wire. Paths that are
/// a contiguous piece of a longer one are dropped. The circuit is
/// CZ-normalized first.
pub fn circuit_influencing_paths(c: &Circuit) -> Result<(Vec<CircuitPath>, usize)> {
    if c.dialect != Dialect::Source {
        return Err(Error::Dialect { expected: "source" });
    }
    c.check()?;
    let c = c.normalize_cz();
    let mut js: Vec<Vec<Angle>> = vec![Vec::new(); c.n as usize];
    let mut cz: BTreeSet<(Segment, Segment)> = BTreeSet::new();
    for g in &c.gates {
        match g {
            Gate::J(w, a) => js[*w as usize].push(a.clone()),
            Gate::Cz(a, b) => {
                let sa = Segment {
                    wire: *a,
                    index: js[*a as usize].len(),
                };
                let sb = Segment {
                    wire: *b,
                    index: js[*b as usize].len(),
                };
                let key = (sa.min(sb), sa.max(sb));
                if !cz.remove(&key) {
                    cz.insert(key);
                }
            }
            _ => unreachable!("checked source dialect"),
        }
    }
    let mut walk = Walk {
        js: &js,
        cz: &cz,
        found: Vec::new(),
    };
    for w in 0..c.n {
        if js[w as usize].is_empty() {
            continue;
        }
        let mut segs = vec![Segment { wire: w, index: 0 }, Segment { wire: w, index: 1 }];
        let mut jumps = vec![false];
        walk.extend(&mut segs, &mut jumps)?;
    }
    let mut found = walk.found;
    found.sort();
    found.dedup();
    let keep: Vec<bool> = found
        .iter()
        .map(|p| !found.iter().any(|q| is_window(p, q)))
        .collect();
    let paths: Vec<CircuitPath> = found
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|((segments, jumps), _)| describe(&js, segments, jumps))
        .collect();
    let d_prime = paths.iter().map(|p| p.longest).max().unwrap_or(0);
    Ok((paths, d_prime))
}

fn describe(js: &[Vec<Angle>], segments: Vec<Segment>, jumps: Vec<bool>) -> CircuitPath {
    let class =
        |s: Segment| -> Option<PauliClass> { js[s.wire as usize].get(s.index).map(Angle::class) };
    let connector = |i: usize| (i > 0 && jumps[i - 1]) || jumps.get(i).copied().unwrap_or(false);
    let mut tokens = Vec::new();
    let mut word = String::new();
    for (i, &s) in segments.iter().enumerate() {
        if i > 0 && jumps[i - 1] {
            tokens.push(Token::Break);
            word.push('|');
        }
        if let Some(cls) = class(s) {
            word.push(cls.letter());
            if !connector(i) {
                tokens.push(Token::Letter(cls));
            }
        }
    }
    let Simplified { longest, text, .. } = simplify(&tokens, false);
    CircuitPath {
        segments,
        jumps,
        word,
        simplified: text,
        longest,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_generic_j_on_one_wire() {
        let c = Circuit::source(
            1,
            vec![
                Gate::J(0, Angle::symbolic(0)),
                Gate::J(0, Angle::symbolic(1)),
            ],
        );
        let (paths, d) = circuit_influencing_paths(&c).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].word, "NN");
        assert_eq!(d, 2);
    }

    #[test]
    fn hadamard_resets_the_dependency() {
        let c = Circuit::source(
            1,
            vec![
                Gate::J(0, Angle::symbolic(0)),
                Gate::J(0, Angle::zero()),
                Gate::J(0, Angle::symbolic(1)),
            ],
        );
        let (paths, d) = circuit_influencing_paths(&c).unwrap();
        assert_eq!(paths[0].word, "NXN");
        assert_eq!(d, 1);
    }

    #[test]
    fn empty_circuit_has_no_paths() {
        let (paths, d) = circuit_influencing_paths(&Circuit::source(2, vec![])).unwrap();
        assert!(paths.is_empty());
        assert_eq!(d, 0);
    }
}
