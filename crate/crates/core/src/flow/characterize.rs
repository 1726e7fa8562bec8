use std::collections::{BTreeMap, BTreeSet};

use super::paths::{EdgeKind, InfluencingPath};
use super::{flow_of_pattern, influencing_paths, Angles};
use crate::angle::PauliClass;
use crate::depth::execution_digraph;
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::pattern::{Command, Pattern, Qubit};
use crate::rewrite::{pauli_simplify, signal_shift};

/// Membership in `(X)^odd (Y (X)^odd)^*`.
pub fn is_reset_sequence(word: &[PauliClass]) -> Result<bool> {
    if let Some(i) = word.iter().position(|c| !c.is_pauli()) {
        return Err(Error::NonPauliWord(i));
    }
    Ok(word
        .split(|&c| c == PauliClass::Y)
        .all(|run| run.len() % 2 == 1))
}

/// Depth analysis of one influencing path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathDepth {
    pub path: InfluencingPath,
    /// Flow edges.
    pub e: usize,
    /// Non-flow edges.
    pub n: usize,
    /// Flow edges into a Pauli-measured qubit.
    pub p: usize,
    /// Loop edges (0 or 1).
    pub l: usize,
    /// Angle classes of the measured vertices in path order, with `|` at
    /// each non-flow edge.
    pub word: String,
    /// The deepest dependent stretch after simplification, e.g. `P N^2 P`.
    pub simplified: String,
    pub depth: usize,
}

impl PathDepth {
    pub fn bound(&self) -> i64 {
        self.e as i64 - (self.n + self.p + self.l) as i64 + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthReport {
    /// Number of flow layers, outputs included.
    pub flow_depth: usize,
    /// Maximum over paths of `e - (n + p + l) + 1`.
    pub quantum_depth_bound: i64,
    /// Maximum path depth after word simplification.
    pub characterized_depth: usize,
    /// Pipeline classical depth of the Pauli-simplified, signal-shifted
    /// pattern.
    pub classical_depth: usize,
    pub paths: Vec<PathDepth>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Token {
    Letter(PauliClass),
    /// A non-flow edge; its endpoints carry no letter.
    Break,
}

fn analyse(g: &Geometry, angles: &Angles, path: InfluencingPath) -> PathDepth {
    let verts = path.distinct();
    let kinds = path.step_kinds();
    let looped = path.starts_with_loop();
    let measured = |v: Qubit| !g.outputs.contains(&v);
    let class = |v: Qubit| angles[&v].class();

    let mut connector: BTreeSet<usize> = BTreeSet::new();
    for (i, k) in kinds.iter().enumerate() {
        if *k == EdgeKind::NonFlow {
            connector.insert(i);
            connector.insert(i + 1);
        }
    }
    if looped {
        connector.remove(&0);
    }

    let mut tokens = Vec::new();
    let mut word = String::new();
    for (i, &v) in verts.iter().enumerate() {
        if i > 0 && kinds[i - 1] == EdgeKind::NonFlow {
            tokens.push(Token::Break);
            word.push('|');
        }
        if measured(v) {
            word.push(class(v).letter());
            if !connector.contains(&i) {
                tokens.push(Token::Letter(class(v)));
            }
        }
    }

    let e = path.count(EdgeKind::Flow);
    let n = path.count(EdgeKind::NonFlow);
    let l = path.count(EdgeKind::Loop);
    let p = verts
        .windows(2)
        .zip(&kinds)
        .filter(|(w, k)| **k == EdgeKind::Flow && measured(w[1]) && class(w[1]).is_pauli())
        .count();

    let Simplified {
        depth,
        text: simplified,
        ..
    } = simplify(&tokens, looped);
    PathDepth {
        path,
        e,
        n,
        p,
        l,
        word,
        simplified,
        depth,
    }
}

/// Outcome of simplifying one token word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Simplified {
    pub depth: usize,
    /// Size of the largest dependent stretch of non-Pauli letters; a word
    /// with Pauli letters only counts as 1, an empty word as 0.
    pub longest: usize,
    pub text: String,
}

/// Applies the simplification rule to a token word: two consecutive
/// non-Pauli letters stay dependent unless one of the Pauli blocks between
/// them (blocks are cut at non-flow edges) is a reset sequence. A dependent
/// stretch of `d` letters has depth `d + 2` when some measured letter
/// precedes it and `d + 1` when it opens the path or follows only the loop
/// vertex.
pub(crate) fn simplify(tokens: &[Token], looped: bool) -> Simplified {
    let letters: Vec<(usize, PauliClass)> = tokens
        .iter()
        .enumerate()
        .filter_map(|(i, t)| match t {
            Token::Letter(c) => Some((i, *c)),
            Token::Break => None,
        })
        .collect();
    if letters.is_empty() {
        return Simplified {
            depth: 0,
            longest: 0,
            text: String::new(),
        };
    }
    let ns: Vec<usize> = letters
        .iter()
        .filter(|(_, c)| *c == PauliClass::NonPauli)
        .map(|&(i, _)| i)
        .collect();
    if ns.is_empty() {
        return Simplified {
            depth: 2,
            longest: 1,
            text: "P P".into(),
        };
    }
    let mut groups: Vec<Vec<usize>> = vec![vec![ns[0]]];
    for w in ns.windows(2) {
        let between = &tokens[w[0] + 1..w[1]];
        let reset = between
            .split(|t| *t == Token::Break)
            .filter(|b| !b.is_empty())
            .any(|block| {
                let classes: Vec<PauliClass> = block
                    .iter()
                    .map(|t| match t {
                        Token::Letter(c) => *c,
                        Token::Break => unreachable!(),
                    })
                    .collect();
                is_reset_sequence(&classes).unwrap_or(false)
            });
        if reset {
            groups.push(vec![w[1]]);
        } else {
            groups.last_mut().expect("non-empty").push(w[1]);
        }
    }
    let first_letter = letters[0].0;
    let (depth, text) = groups
        .iter()
        .map(|grp| {
            let d = grp.len();
            let lead = if grp[0] == first_letter {
                ""
            } else if looped && letters.get(1).map(|l| l.0) == Some(grp[0]) {
                "Y "
            } else {
                "P "
            };
            let depth = d + 1 + usize::from(lead == "P ");
            let power = if d == 1 {
                "N".to_string()
            } else {
                format!("N^{d}")
            };
            (depth, format!("{lead}{power} P"))
        })
        .max_by_key(|(d, _)| *d)
        .expect("at least one group");
    Simplified {
        depth,
        longest: groups.iter().map(Vec::len).max().unwrap_or(0),
        text,
    }
}

/// Depth of a flow pattern predicted from the angle words of its influencing
/// paths, with the flow-edge bound and the classical depth alongside.
pub fn characterized_depth(p: &Pattern) -> Result<DepthReport> {
    let (g, flow, angles) = flow_of_pattern(p)?;
    let paths = influencing_paths(&g, &flow, Some(&angles))?;
    let paths: Vec<PathDepth> = paths
        .into_iter()
        .map(|path| analyse(&g, &angles, path))
        .collect();
    let rewritten = signal_shift(&pauli_simplify(p)?.0)?.0;
    Ok(DepthReport {
        flow_depth: flow.depth(),
        quantum_depth_bound: paths.iter().map(PathDepth::bound).max().unwrap_or(0),
        characterized_depth: paths.iter().map(|d| d.depth).max().unwrap_or(0),
        classical_depth: classical_depth(&rewritten, None)?,
        paths,
    })
}

/// Maximum over Pauli influencing paths of `e - (n + p + l) + 1`.
pub fn depth_upper_bound(p: &Pattern) -> Result<i64> {
    Ok(characterized_depth(p)?.quantum_depth_bound)
}

fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Classical cost of computing signals: `ceil(log2(max(1, |s| + |t|)))` per
/// command. For a qubit, the largest cost among its commands; for the whole
/// pattern, the sum over execution layers of the largest qubit cost in the
/// layer.
pub fn classical_depth(p: &Pattern, v: Option<Qubit>) -> Result<usize> {
    if !p.is_standard() {
        return Err(Error::NotStandard);
    }
    let mut cost: BTreeMap<Qubit, usize> = BTreeMap::new();
    for c in &p.commands {
        let (q, size) = match c {
            Command::Meas { q, s, t, .. } => (*q, s.len() + t.len()),
            Command::CorrX { q, s } | Command::CorrZ { q, s } => (*q, s.len()),
            _ => continue,
        };
        let e = cost.entry(q).or_insert(0);
        *e = (*e).max(ceil_log2(size.max(1)));
    }
    if let Some(v) = v {
        return Ok(cost.get(&v).copied().unwrap_or(0));
    }
    let levels = execution_digraph(p)?.levels()?;
    let mut per_layer: BTreeMap<usize, usize> = BTreeMap::new();
    for (q, c) in cost {
        let e = per_layer.entry(levels[&q]).or_insert(0);
        *e = (*e).max(c);
    }
    Ok(per_layer.values().sum())
}
