use std::collections::{BTreeMap, BTreeSet};

use super::coloring::preparation_depth;
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::pattern::{Command, CommandKind, Edge, Pattern, Qubit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArcKind {
    /// The target's measurement angle sign or X correction depends on the source.
    Xdep,
    /// The target's angle offset or Z correction depends on the source.
    Zdep,
    /// An entangling command issued after measurements or corrections began.
    Edge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExecutionDigraph {
    pub nodes: BTreeSet<Qubit>,
    pub arcs: BTreeSet<(Qubit, Qubit, ArcKind)>,
    /// Qubits carrying at least one measurement or correction.
    pub active: BTreeSet<Qubit>,
}

impl ExecutionDigraph {
    pub fn successors(&self, v: Qubit) -> impl Iterator<Item = Qubit> + '_ {
        self.arcs
            .iter()
            .filter(move |a| a.0 == v && a.2 != ArcKind::Edge)
            .map(|a| a.1)
    }

    /// Longest-path level of every node counted in vertices; nodes that are
    /// neither active nor touched by a dependency arc get level 0.
    pub fn levels(&self) -> Result<BTreeMap<Qubit, usize>> {
        let order = self.topological_order()?;
        let mut level: BTreeMap<Qubit, usize> = self
            .nodes
            .iter()
            .map(|&v| (v, usize::from(self.active.contains(&v))))
            .collect();
        for v in order {
            let lv = level[&v];
            if lv == 0 {
                continue;
            }
            for w in self.successors(v).collect::<Vec<_>>() {
                let e = level.get_mut(&w).expect("arc endpoints are nodes");
                *e = (*e).max(lv + 1);
            }
        }
        Ok(level)
    }

    /// Number of vertices on a longest dependency path.
    pub fn depth(&self) -> Result<usize> {
        Ok(self.levels()?.values().copied().max().unwrap_or(0))
    }

    /// Depth recomputed by peeling sources layer by layer.
    pub fn layered_depth(&self) -> Result<usize> {
        let mut indeg: BTreeMap<Qubit, usize> = self.nodes.iter().map(|&v| (v, 0)).collect();
        for a in self.arcs.iter().filter(|a| a.2 != ArcKind::Edge) {
            *indeg.get_mut(&a.1).unwrap() += 1;
        }
        let mut layer: Vec<Qubit> = indeg
            .iter()
            .filter(|&(_, &d)| d == 0)
            .map(|(&v, _)| v)
            .collect();
        let mut seen = 0;
        let mut depth = 0;
        while !layer.is_empty() {
            seen += layer.len();
            if layer.iter().any(|v| self.active.contains(v)) {
                depth += 1;
            }
            let mut next = Vec::new();
            for v in layer {
                for w in self.successors(v).collect::<Vec<_>>() {
                    let d = indeg.get_mut(&w).unwrap();
                    *d -= 1;
                    if *d == 0 {
                        next.push(w);
                    }
                }
            }
            layer = next;
        }
        if seen != self.nodes.len() {
            return Err(Error::Invalid("execution digraph has a cycle".into()));
        }
        Ok(depth)
    }

    fn topological_order(&self) -> Result<Vec<Qubit>> {
        let mut indeg: BTreeMap<Qubit, usize> = self.nodes.iter().map(|&v| (v, 0)).collect();
        for a in self.arcs.iter().filter(|a| a.2 != ArcKind::Edge) {
            *indeg.get_mut(&a.1).unwrap() += 1;
        }
        let mut stack: Vec<Qubit> = indeg
            .iter()
            .filter(|&(_, &d)| d == 0)
            .map(|(&v, _)| v)
            .collect();
        let mut order = Vec::with_capacity(self.nodes.len());
        while let Some(v) = stack.pop() {
            order.push(v);
            for w in self.successors(v).collect::<Vec<_>>() {
                let d = indeg.get_mut(&w).unwrap();
                *d -= 1;
                if *d == 0 {
                    stack.push(w);
                }
            }
        }
        if order.len() != self.nodes.len() {
            return Err(Error::Invalid("execution digraph has a cycle".into()));
        }
        Ok(order)
    }
}

/// Builds the qubit-level dependency digraph of a pattern.
///
/// Entangling commands that follow a measurement or correction contribute
/// `Edge` arcs (from the smaller to the larger qubit id); they are shown in
/// DOT output but ignored by the depth computations, which handle
/// non-standard patterns through [`combined_depth`].
pub fn execution_digraph(p: &Pattern) -> Result<ExecutionDigraph> {
    let report = p.validate();
    if let Some(v) = report.violations.first() {
        return Err(Error::Invalid(format!(
            "{} at qubit {}",
            v.rule.describe(),
            v.qubit
        )));
    }
    let mut arcs = BTreeSet::new();
    let mut active = BTreeSet::new();
    let mut started = false;
    for c in &p.commands {
        match c {
            Command::Meas { q, s, t, .. } => {
                active.insert(*q);
                arcs.extend(s.iter().map(|i| (i, *q, ArcKind::Xdep)));
                arcs.extend(t.iter().map(|i| (i, *q, ArcKind::Zdep)));
            }
            Command::CorrX { q, s } => {
                active.insert(*q);
                arcs.extend(s.iter().map(|i| (i, *q, ArcKind::Xdep)));
            }
            Command::CorrZ { q, s } => {
                active.insert(*q);
                arcs.extend(s.iter().map(|i| (i, *q, ArcKind::Zdep)));
            }
            Command::Ent(e) if started => {
                arcs.insert((e.lo(), e.hi(), ArcKind::Edge));
            }
            _ => {}
        }
        started |= c.kind() >= CommandKind::Meas;
    }
    let g = ExecutionDigraph {
        nodes: p.qubits.clone(),
        arcs,
        active,
    };
    g.topological_order()?;
    Ok(g)
}

/// Quantum computation depth: vertices on a critical path of the execution
/// digraph for standard patterns (0 when no qubit is measured or corrected).
/// Non-standard patterns are measured with [`combined_depth`].
pub fn quantum_depth(p: &Pattern) -> Result<usize> {
    if p.is_standard() {
        execution_digraph(p)?.depth()
    } else {
        combined_depth(p)
    }
}

/// Joint preparation and computation depth of an arbitrary pattern.
///
/// Commands are scheduled in order. A maximal run of consecutive entangling
/// commands starts once all its qubits are free and lasts as many steps as
/// the colours of its edge colouring. A measurement or correction on `q`
/// occupies the step after both its qubit and every qubit in its signals are
/// done; a measurement and the corrections on the same qubit share a node,
/// as in the execution digraph.
pub fn combined_depth(p: &Pattern) -> Result<usize> {
    let report = p.validate();
    if let Some(v) = report.violations.first() {
        return Err(Error::Invalid(format!(
            "{} at qubit {}",
            v.rule.describe(),
            v.qubit
        )));
    }
    let mut ready: BTreeMap<Qubit, usize> = BTreeMap::new();
    let mut node: BTreeMap<Qubit, usize> = BTreeMap::new();
    let get = |m: &BTreeMap<Qubit, usize>, q: Qubit| m.get(&q).copied().unwrap_or(0);
    let mut k = 0;
    while k < p.commands.len() {
        match &p.commands[k] {
            Command::Ent(_) => {
                let mut run: BTreeSet<Edge> = BTreeSet::new();
                while let Some(Command::Ent(e)) = p.commands.get(k) {
                    if !run.remove(e) {
                        run.insert(*e);
                    }
                    k += 1;
                }
                let g = Geometry::new(BTreeSet::new(), run, BTreeSet::new(), BTreeSet::new());
                let cost = preparation_depth(&g).0;
                let qs: Vec<Qubit> = g.vertices().iter().copied().collect();
                let base = qs
                    .iter()
                    .map(|&q| get(&ready, q).max(get(&node, q)))
                    .max()
                    .unwrap_or(0);
                for q in qs {
                    ready.insert(q, base + cost);
                }
                continue;
            }
            c @ (Command::Meas { q, .. } | Command::CorrX { q, .. } | Command::CorrZ { q, .. }) => {
                let start = c
                    .dependencies()
                    .into_iter()
                    .map(|d| get(&node, d))
                    .chain([get(&ready, *q)])
                    .max()
                    .unwrap_or(0);
                let e = node.entry(*q).or_insert(0);
                *e = (*e).max(start + 1);
            }
            Command::Prep(_) | Command::Shift { .. } => {}
        }
        k += 1;
    }
    Ok(node
        .values()
        .chain(ready.values())
        .copied()
        .max()
        .unwrap_or(0))
}
