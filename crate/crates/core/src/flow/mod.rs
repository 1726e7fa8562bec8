//! Flows on geometries, the standard dependent pattern they induce, and the
//! path-based depth analysis built on them.

mod characterize;
mod paths;

use std::collections::{BTreeMap, BTreeSet};

pub use characterize::{
    characterized_depth, classical_depth, depth_upper_bound, is_reset_sequence, DepthReport,
    PathDepth,
};
pub(crate) use characterize::{simplify, Simplified, Token};
pub use paths::{
    influencing_paths, influencing_paths_capped, EdgeKind, InfluencingPath, MAX_PATHS,
};

use crate::angle::{Angle, PauliClass};
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::pattern::{Command, Pattern, Qubit};
use crate::signal::Signal;

pub type Angles = BTreeMap<Qubit, Angle>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    /// The flow function on non-output qubits.
    pub f: BTreeMap<Qubit, Qubit>,
    /// Vertices grouped by dependency level, first measured layer first and
    /// the outputs last.
    pub layers: Vec<BTreeSet<Qubit>>,
    /// Qubits allowed to point to themselves because they are measured in
    /// the Y plane and are neither inputs nor flow images.
    pub loops: BTreeSet<Qubit>,
}

impl Flow {
    /// Number of layers.
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn layer_of(&self, v: Qubit) -> Option<usize> {
        self.layers.iter().position(|l| l.contains(&v))
    }

    /// The unique `w` with `f(w) = v`, if any.
    pub fn preimage(&self, v: Qubit) -> Option<Qubit> {
        self.f.iter().find(|&(_, &t)| t == v).map(|(&w, _)| w)
    }

    pub fn is_flow_edge(&self, from: Qubit, to: Qubit) -> bool {
        self.f.get(&from) == Some(&to)
    }

    /// Checks the flow conditions against `g`: every non-output `x` is
    /// adjacent to and strictly before `f(x)`, and strictly before every
    /// other neighbour of `f(x)`; `f` is injective into the non-inputs.
    pub fn check(&self, g: &Geometry) -> Result<()> {
        let bad = |m: String| Err(Error::Invalid(m));
        let non_out = g.non_outputs();
        if self.f.keys().copied().collect::<BTreeSet<_>>() != non_out {
            return bad("flow domain differs from the non-outputs".into());
        }
        let mut seen = BTreeSet::new();
        for (&x, &fx) in &self.f {
            if g.inputs.contains(&fx) {
                return bad(format!("f({x}) = {fx} is an input"));
            }
            if !seen.insert(fx) {
                return bad(format!("f is not injective at {fx}"));
            }
            if !g.adjacent(x, fx) {
                return bad(format!("{x} is not adjacent to f({x}) = {fx}"));
            }
            let lx = self.layer_of(x);
            let before = |y: Qubit| match (lx, self.layer_of(y)) {
                (Some(a), Some(b)) => a < b,
                _ => false,
            };
            if !before(fx) {
                return bad(format!("{x} is not before f({x}) = {fx}"));
            }
            if let Some(y) = g.neighbors(fx).find(|&y| y != x && !before(y)) {
                return bad(format!("{x} is not before {y}, a neighbour of f({x})"));
            }
        }
        let covered: usize = self.layers.iter().map(BTreeSet::len).sum();
        if covered != g.vertices().len() {
            return bad("layers do not partition the vertices".into());
        }
        Ok(())
    }

    /// Adds the Y-plane loops allowed by `angles`: a non-input vertex that is
    /// no vertex's flow image and carries a Y-type angle.
    pub fn with_pauli_loops(&self, g: &Geometry, angles: &Angles) -> Flow {
        let images: BTreeSet<Qubit> = self.f.values().copied().collect();
        let loops = g
            .non_outputs()
            .into_iter()
            .filter(|v| !g.inputs.contains(v) && !images.contains(v))
            .filter(|v| angles.get(v).is_some_and(|a| a.class() == PauliClass::Y))
            .collect();
        Flow {
            loops,
            ..self.clone()
        }
    }
}

/// Finds a flow of a geometry with no more inputs than outputs.
///
/// Works backwards from the outputs: in each sweep, every processed
/// non-input vertex with exactly one unprocessed neighbour becomes that
/// neighbour's flow image, and the neighbours found in the sweep form the
/// next layer.
pub fn find_flow(g: &Geometry) -> Result<Flow> {
    if g.inputs.len() > g.outputs.len() {
        return Err(Error::UnequalInputOutput {
            inputs: g.inputs.len(),
            outputs: g.outputs.len(),
        });
    }
    let mut processed: BTreeSet<Qubit> = g.outputs.clone();
    let mut f = BTreeMap::new();
    let mut back_layers = vec![g.outputs.clone()];
    let total = g.vertices().len();
    while processed.len() < total {
        let mut found: BTreeMap<Qubit, Qubit> = BTreeMap::new();
        for &u in processed.iter().filter(|u| !g.inputs.contains(u)) {
            let mut open = g.neighbors(u).filter(|w| !processed.contains(w));
            if let (Some(w), None) = (open.next(), open.next()) {
                found.entry(w).or_insert(u);
            }
        }
        if found.is_empty() {
            return Err(Error::NoFlow);
        }
        processed.extend(found.keys().copied());
        back_layers.push(found.keys().copied().collect());
        f.extend(found);
    }
    back_layers.reverse();
    let flow = Flow {
        f,
        layers: back_layers,
        loops: BTreeSet::new(),
    };
    debug_assert!(flow.check(g).is_ok());
    Ok(flow)
}

fn check_angles(g: &Geometry, angles: &Angles) -> Result<()> {
    if let Some(q) = g
        .non_outputs()
        .into_iter()
        .find(|q| !angles.contains_key(q))
    {
        return Err(Error::MissingAngle(q));
    }
    if let Some(q) = angles.keys().find(|q| !g.non_outputs().contains(q)) {
        return Err(Error::Invalid(format!(
            "angle given for unmeasured qubit {q}"
        )));
    }
    Ok(())
}

/// Z-dependencies of `i`: every `j != i` whose flow image neighbours `i`.
fn z_domain(g: &Geometry, flow: &Flow, i: Qubit) -> Vec<Qubit> {
    flow.f
        .iter()
        .filter(|&(&j, &fj)| j != i && fj != j && g.adjacent(fj, i))
        .map(|(&j, _)| j)
        .collect()
}

/// The standard pattern a flow induces: preparations, the entanglement graph,
/// measurements in layer order with `s = {f⁻¹(i)}` and
/// `t = {j : f(j) ∼ i, j ≠ i}`, then the output corrections, one Z command
/// per dependency.
pub fn flow_pattern(g: &Geometry, flow: &Flow, angles: &Angles) -> Result<Pattern> {
    check_angles(g, angles)?;
    let mut commands: Vec<Command> = g.non_inputs().into_iter().map(Command::Prep).collect();
    commands.extend(g.edges().iter().map(|&e| Command::Ent(e)));
    let x_of = |i: Qubit| {
        flow.preimage(i)
            .filter(|&w| w != i)
            .map(Signal::single)
            .unwrap_or_default()
    };
    for layer in &flow.layers {
        for &i in layer.iter().filter(|i| !g.outputs.contains(i)) {
            commands.push(Command::Meas {
                q: i,
                angle: angles[&i].clone(),
                s: x_of(i),
                t: z_domain(g, flow, i).into_iter().collect(),
            });
        }
    }
    for &o in &g.outputs {
        let s = x_of(o);
        if !s.is_empty() {
            commands.push(Command::CorrX { q: o, s });
        }
        for j in z_domain(g, flow, o) {
            commands.push(Command::CorrZ {
                q: o,
                s: Signal::single(j),
            });
        }
    }
    Ok(Pattern {
        qubits: g.vertices().clone(),
        inputs: g.inputs.clone(),
        outputs: g.outputs.clone(),
        commands,
    })
}

/// Per-qubit signal summary used to compare patterns up to command order.
fn signal_profile(p: &Pattern) -> BTreeMap<(Qubit, u8), Signal> {
    let mut out: BTreeMap<(Qubit, u8), Signal> = BTreeMap::new();
    for c in &p.commands {
        match c {
            Command::Meas { q, s, t, .. } => {
                *out.entry((*q, 0)).or_default() += s;
                *out.entry((*q, 1)).or_default() += t;
            }
            Command::CorrX { q, s } => *out.entry((*q, 2)).or_default() += s,
            Command::CorrZ { q, s } => *out.entry((*q, 3)).or_default() += s,
            _ => {}
        }
    }
    out.retain(|_, s| !s.is_empty());
    out
}

/// Recovers the flow of a pattern that has the standard flow shape, along
/// with its geometry and angles.
pub fn flow_of_pattern(p: &Pattern) -> Result<(Geometry, Flow, Angles)> {
    if !p.is_standard() {
        return Err(Error::NotFlowForm("pattern is not standard".into()));
    }
    let g = p.geometry();
    let flow = find_flow(&g)?;
    let angles = p.angles();
    let expected =
        flow_pattern(&g, &flow, &angles).map_err(|e| Error::NotFlowForm(e.to_string()))?;
    if signal_profile(&expected) != signal_profile(p) {
        return Err(Error::NotFlowForm(
            "signals differ from those the flow prescribes".into(),
        ));
    }
    let order: Vec<Qubit> = p.measured();
    let pos = |q: Qubit| order.iter().position(|&x| x == q);
    let consistent = flow
        .f
        .iter()
        .all(|(&x, &fx)| g.outputs.contains(&fx) || pos(x) < pos(fx));
    if !consistent || order.len() != g.non_outputs().len() {
        return Err(Error::NotFlowForm(
            "measurement order breaks the flow".into(),
        ));
    }
    Ok((g, flow, angles))
}
