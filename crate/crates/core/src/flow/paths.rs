use std::collections::{BTreeSet, HashSet};
use std::fmt;

use super::{Angles, Flow};
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::pattern::Qubit;

/// Enumeration aborts with a resource error beyond this many paths.
pub const MAX_PATHS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Flow,
    NonFlow,
    /// The self-edge of a Y-plane loop vertex; it always comes first.
    Loop,
}

/// A path through the geometry. A loop contributes its vertex twice, so
/// `kinds.len() + 1 == vertices.len()` always holds.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfluencingPath {
    pub vertices: Vec<Qubit>,
    pub kinds: Vec<EdgeKind>,
}

impl InfluencingPath {
    pub fn starts_with_loop(&self) -> bool {
        self.kinds.first() == Some(&EdgeKind::Loop)
    }

    pub fn count(&self, kind: EdgeKind) -> usize {
        self.kinds.iter().filter(|&&k| k == kind).count()
    }

    pub fn last(&self) -> Qubit {
        *self.vertices.last().expect("paths are non-empty")
    }

    /// The distinct vertices in path order.
    pub fn distinct(&self) -> Vec<Qubit> {
        let mut out = self.vertices.clone();
        out.dedup();
        out
    }

    /// Index of `v` on the path, counting a loop vertex once.
    pub fn position(&self, v: Qubit) -> Option<usize> {
        self.distinct().iter().position(|&x| x == v)
    }

    /// Edge kinds with the loop folded away, aligned with [`Self::distinct`].
    pub fn step_kinds(&self) -> Vec<EdgeKind> {
        self.kinds
            .iter()
            .copied()
            .filter(|&k| k != EdgeKind::Loop)
            .collect()
    }

    fn is_window_of(&self, other: &InfluencingPath) -> bool {
        let n = self.vertices.len();
        n < other.vertices.len()
            && other
                .vertices
                .windows(n)
                .zip(other.kinds.windows(n - 1))
                .any(|(vs, ks)| vs == self.vertices.as_slice() && ks == self.kinds.as_slice())
    }
}

impl fmt::Display for InfluencingPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vertices[0])?;
        for (v, k) in self.vertices[1..].iter().zip(&self.kinds) {
            let arrow = match k {
                EdgeKind::Flow => "->",
                EdgeKind::NonFlow => "--",
                EdgeKind::Loop => "~",
            };
            write!(f, " {arrow} {v}")?;
        }
        Ok(())
    }
}

struct Search<'a> {
    g: &'a Geometry,
    flow: &'a Flow,
    cap: usize,
    found: Vec<InfluencingPath>,
}

impl Search<'_> {
    fn extend(&mut self, path: &mut InfluencingPath, on_path: &mut BTreeSet<Qubit>) -> Result<()> {
        let v = path.last();
        let last_kind = *path.kinds.last().expect("a search starts with one edge");
        if self.g.outputs.contains(&v) && last_kind != EdgeKind::Loop {
            if self.found.len() >= self.cap {
                return Err(Error::Resource(format!(
                    "more than {} influencing paths",
                    self.cap
                )));
            }
            self.found.push(path.clone());
        }
        let fv = self.flow.f.get(&v).copied().filter(|&w| w != v);
        let mut steps: Vec<(Qubit, EdgeKind)> = Vec::new();
        if let Some(w) = fv {
            steps.push((w, EdgeKind::Flow));
        }
        if last_kind != EdgeKind::NonFlow {
            for w in self.g.neighbors(v) {
                let flow_edge = Some(w) == fv || self.flow.f.get(&w) == Some(&v);
                if !flow_edge {
                    steps.push((w, EdgeKind::NonFlow));
                }
            }
        }
        steps.sort();
        for (w, kind) in steps {
            if on_path.contains(&w) {
                continue;
            }
            on_path.insert(w);
            path.vertices.push(w);
            path.kinds.push(kind);
            self.extend(path, on_path)?;
            path.vertices.pop();
            path.kinds.pop();
            on_path.remove(&w);
        }
        Ok(())
    }
}

/// All maximal influencing paths of a geometry with flow, in lexicographic
/// order of their vertex sequences.
///
/// A path starts at an input with its flow edge, or at a loop vertex when
/// `angles` admit one, follows flow edges forwards only, never uses two
/// non-flow edges in a row and ends at an output. Paths that occur as a
/// contiguous piece of a longer path are dropped.
pub fn influencing_paths(
    g: &Geometry,
    flow: &Flow,
    angles: Option<&Angles>,
) -> Result<Vec<InfluencingPath>> {
    influencing_paths_capped(g, flow, angles, MAX_PATHS)
}

pub fn influencing_paths_capped(
    g: &Geometry,
    flow: &Flow,
    angles: Option<&Angles>,
    cap: usize,
) -> Result<Vec<InfluencingPath>> {
    let flow = match angles {
        Some(a) => flow.with_pauli_loops(g, a),
        None => Flow {
            loops: BTreeSet::new(),
            ..flow.clone()
        },
    };
    let mut search = Search {
        g,
        flow: &flow,
        cap,
        found: Vec::new(),
    };
    let mut starts: Vec<(Qubit, Qubit, EdgeKind)> = g
        .inputs
        .iter()
        .filter_map(|&i| flow.f.get(&i).map(|&fi| (i, fi, EdgeKind::Flow)))
        .collect();
    starts.extend(flow.loops.iter().map(|&v| (v, v, EdgeKind::Loop)));
    starts.sort();
    for (a, b, kind) in starts {
        let mut path = InfluencingPath {
            vertices: vec![a, b],
            kinds: vec![kind],
        };
        let mut on_path = BTreeSet::from([a, b]);
        search.extend(&mut path, &mut on_path)?;
    }
    Ok(maximal(search.found))
}

fn maximal(mut paths: Vec<InfluencingPath>) -> Vec<InfluencingPath> {
    paths.sort();
    paths.dedup();
    let mut dominated: HashSet<usize> = HashSet::new();
    for (i, p) in paths.iter().enumerate() {
        if paths.iter().any(|q| p.is_window_of(q)) {
            dominated.insert(i);
        }
    }
    paths
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !dominated.contains(i))
        .map(|(_, p)| p)
        .collect()
}
