//! Reference instances and seeded random generators shared by the tests,
//! the command-line tool and the C interface.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::angle::{Angle, PauliClass};
use crate::circuit::{Circuit, Gate};
use crate::flow::{find_flow, flow_pattern, Angles, Flow};
use crate::geometry::Geometry;
use crate::pattern::{Command, Edge, Pattern, Qubit};
use crate::signal::Signal;

/// Seven vertices `a..g` numbered `0..6` with inputs `{a, b}` and outputs
/// `{e, f, g}`.
pub fn seven_vertex_geometry() -> Geometry {
    Geometry::from_edges(
        0..7,
        &[(0, 2), (1, 2), (1, 3), (2, 4), (2, 5), (3, 5), (3, 6)],
        [0, 1],
        [4, 5, 6],
    )
}

/// Distinct symbolic angles on every non-output vertex, tagged by id.
pub fn generic_angles(g: &Geometry) -> Angles {
    g.non_outputs()
        .into_iter()
        .map(|q| (q, Angle::symbolic(q.0)))
        .collect()
}

/// The flow pattern of [`seven_vertex_geometry`] with generic angles.
pub fn seven_vertex_pattern() -> Pattern {
    let g = seven_vertex_geometry();
    let flow = find_flow(&g).expect("the seven-vertex geometry has a flow");
    flow_pattern(&g, &flow, &generic_angles(&g)).expect("angles cover the non-outputs")
}

/// A representative angle of each class: `0` for X, `π/2` for Y and a
/// symbolic angle (tagged `tag`) otherwise.
pub fn angle_of_class(class: PauliClass, tag: u32) -> Angle {
    match class {
        PauliClass::X => Angle::zero(),
        PauliClass::Y => Angle::new(1, 2),
        PauliClass::NonPauli => Angle::symbolic(tag),
    }
}

/// The flow pattern on the path `0 - 1 - … - L` with input `0`, output `L`
/// and vertex `i` measured with the class `word[i]`.
pub fn line_pattern(word: &[PauliClass]) -> Pattern {
    let len = word.len() as u32;
    let edges: Vec<(u32, u32)> = (0..len).map(|i| (i, i + 1)).collect();
    let g = Geometry::from_edges(0..=len, &edges, [0], [len]);
    let flow = find_flow(&g).expect("a path has a flow");
    let angles: Angles = word
        .iter()
        .enumerate()
        .map(|(i, &c)| (Qubit(i as u32), angle_of_class(c, i as u32)))
        .collect();
    flow_pattern(&g, &flow, &angles).expect("angles cover the path")
}

/// Three wires: `J(α)` on 0, `CZ(0,1)`, `J(β)` on 1, `CZ(1,2)`, `CZ(0,1)`,
/// `J(γ)` on 0, with symbolic angles.
pub fn three_wire_circuit() -> Circuit {
    Circuit::source(
        3,
        vec![
            Gate::J(0, Angle::symbolic(0)),
            Gate::Cz(0, 1),
            Gate::J(1, Angle::symbolic(1)),
            Gate::Cz(1, 2),
            Gate::Cz(0, 1),
            Gate::J(0, Angle::symbolic(2)),
        ],
    )
}

/// Appends `CX(control → target)` as `H_t · CZ · H_t` with `H = J(0)`.
fn push_cx(gates: &mut Vec<Gate>, control: u32, target: u32) {
    gates.push(Gate::J(target, Angle::zero()));
    gates.push(Gate::Cz(control, target));
    gates.push(Gate::J(target, Angle::zero()));
}

/// Removes pairs of `J(0)` that meet on a wire, repeating until none remain.
pub fn cancel_hadamard_pairs(c: &Circuit) -> Circuit {
    let mut out: Vec<Gate> = Vec::with_capacity(c.gates.len());
    for g in &c.gates {
        if let Gate::J(w, a) = g {
            if *a == Angle::zero() {
                let prev = out.iter().rposition(|h| h.wires().contains(w));
                if let Some(k) = prev.filter(|&k| out[k] == *g) {
                    out.remove(k);
                    continue;
                }
            }
        }
        out.push(g.clone());
    }
    Circuit::source(c.n, out)
}

/// An 8-wire CNOT network that folds the parity of all wires into wire 7
/// and then spreads partial parities back, written in `{J, CZ}`.
pub fn parity_circuit() -> Circuit {
    let layers: [&[(u32, u32)]; 5] = [
        &[(0, 1), (2, 3), (4, 5), (6, 7)],
        &[(1, 3), (5, 7)],
        &[(3, 7)],
        &[(1, 3)],
        &[(0, 1), (2, 3), (4, 5)],
    ];
    let mut gates = Vec::new();
    for layer in layers {
        for &(c, t) in layer {
            push_cx(&mut gates, c, t);
        }
    }
    cancel_hadamard_pairs(&Circuit::source(8, gates))
}

/// `n` wires and `n` columns. In each column every wire `i < n−1` gets a
/// generic `J`, a `CZ` to wire `i+1` and the reset `J(0)³`; the last wire
/// gets a generic `J` and the reset.
pub fn reset_ladder(n: u32) -> Circuit {
    let mut gates = Vec::new();
    let mut tag = 0;
    let mut generic = |w: u32, gates: &mut Vec<Gate>| {
        gates.push(Gate::J(w, Angle::symbolic(tag)));
        tag += 1;
    };
    let reset = |w: u32, gates: &mut Vec<Gate>| {
        gates.extend(std::iter::repeat_n(Gate::J(w, Angle::zero()), 3));
    };
    for _ in 0..n {
        for i in 0..n.saturating_sub(1) {
            generic(i, &mut gates);
            gates.push(Gate::Cz(i, i + 1));
            reset(i, &mut gates);
        }
        if n > 0 {
            generic(n - 1, &mut gates);
            reset(n - 1, &mut gates);
        }
    }
    Circuit::source(n, gates)
}

/// A random geometry with flow: `wires` chains of random length joined by
/// random cross edges, at most `max_qubits` vertices and `max_measured`
/// non-outputs. Draws until the flow search succeeds.
pub fn random_flow_geometry(
    rng: &mut impl Rng,
    max_qubits: u32,
    max_measured: u32,
) -> (Geometry, Flow) {
    loop {
        let wires = rng.gen_range(1..=max_qubits.min(3));
        let budget = (max_qubits - wires).min(max_measured);
        let extra = rng.gen_range(0..=budget);
        let mut lens = vec![0u32; wires as usize];
        for _ in 0..extra {
            lens[rng.gen_range(0..wires as usize)] += 1;
        }
        let mut next = wires;
        let mut chains: Vec<Vec<u32>> = Vec::new();
        let mut edges = Vec::new();
        for (w, &len) in lens.iter().enumerate() {
            let mut chain = vec![w as u32];
            for _ in 0..len {
                edges.push((*chain.last().expect("non-empty"), next));
                chain.push(next);
                next += 1;
            }
            chains.push(chain);
        }
        let all: Vec<u32> = (0..next).collect();
        let cross = rng.gen_range(0..=next);
        for _ in 0..cross {
            let (a, b) = (
                *all.choose(rng).expect("non-empty"),
                *all.choose(rng).expect("non-empty"),
            );
            let same_chain = chains.iter().any(|c| c.contains(&a) && c.contains(&b));
            if a != b && !same_chain && !edges.contains(&(a, b)) && !edges.contains(&(b, a)) {
                edges.push((a, b));
            }
        }
        let g = Geometry::from_edges(
            all.iter().copied(),
            &edges,
            chains.iter().map(|c| c[0]),
            chains.iter().map(|c| *c.last().expect("non-empty")),
        );
        if let Ok(flow) = find_flow(&g) {
            return (g, flow);
        }
    }
}

/// Angles drawn from the Pauli angles, a few non-Pauli multiples of `π`
/// and symbolic angles.
pub fn random_angles(rng: &mut impl Rng, g: &Geometry) -> Angles {
    g.non_outputs()
        .into_iter()
        .map(|q| (q, random_angle(rng, q.0)))
        .collect()
}

fn random_angle(rng: &mut impl Rng, tag: u32) -> Angle {
    match rng.gen_range(0..8) {
        0 => Angle::zero(),
        1 => Angle::pi(),
        2 => Angle::new(1, 2),
        3 => Angle::new(3, 2),
        4 => Angle::new(1, 4),
        5 => Angle::new(2, 3),
        6 => Angle::new(7, 5),
        _ => Angle::symbolic(tag),
    }
}

/// A wild pattern equal to the flow pattern of `(g, flow, angles)`.
///
/// Each measurement is followed at once by its own corrections, and each
/// entangling command is put off to a random point no later than the first
/// measurement of its ends. When an `X_u` correction comes before a pending
/// `E_uw`, the `Z_w` that the flow pattern pairs with it is left out, since
/// moving `X_u` past `E_uw` creates it.
pub fn wild_flow_pattern(
    rng: &mut impl Rng,
    g: &Geometry,
    flow: &Flow,
    angles: &Angles,
) -> Pattern {
    let mut commands: Vec<Command> = g.non_inputs().into_iter().map(Command::Prep).collect();
    let mut pending: Vec<Edge> = g.edges().iter().copied().collect();
    let mut flush = |commands: &mut Vec<Command>, pending: &mut Vec<Edge>, q: Option<Qubit>| {
        pending.retain(|&e| {
            let forced = q.is_some_and(|q| e.touches(q));
            if forced || rng.gen_bool(0.3) {
                commands.push(Command::Ent(e));
                false
            } else {
                true
            }
        });
    };
    let order = flow
        .layers
        .iter()
        .flatten()
        .filter(|v| !g.outputs.contains(v));
    for &i in order {
        flush(&mut commands, &mut pending, Some(i));
        commands.push(Command::Meas {
            q: i,
            angle: angles[&i].clone(),
            s: Signal::empty(),
            t: Signal::empty(),
        });
        let fi = flow.f[&i];
        let s = Signal::single(i);
        commands.push(Command::CorrX {
            q: fi,
            s: s.clone(),
        });
        for k in g.neighbors(fi).filter(|&k| k != i) {
            if !pending.contains(&Edge::new(fi, k)) {
                commands.push(Command::CorrZ { q: k, s: s.clone() });
            }
        }
    }
    commands.extend(pending.into_iter().map(Command::Ent));
    Pattern {
        qubits: g.vertices().clone(),
        inputs: g.inputs.clone(),
        outputs: g.outputs.clone(),
        commands,
    }
}

/// A random `{J, CZ}` circuit. With `clifford` the `J` angles are multiples
/// of `π/2`.
pub fn random_source_circuit(rng: &mut impl Rng, n: u32, gates: usize, clifford: bool) -> Circuit {
    let mut out = Vec::with_capacity(gates);
    for k in 0..gates {
        if n >= 2 && rng.gen_bool(0.4) {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            out.push(Gate::Cz(a, b));
        } else {
            let w = rng.gen_range(0..n);
            let angle = if clifford {
                Angle::new(rng.gen_range(0..4), 2)
            } else {
                random_angle(rng, k as u32)
            };
            out.push(Gate::J(w, angle));
        }
    }
    Circuit::source(n, out)
}

/// Seed of the generated part of the corpus.
pub const CORPUS_SEED: u64 = 0xC0_4B05;

/// Every word over `{N, X, Y}` of length 1 to `max_len`, in length then
/// lexicographic order.
pub fn all_words(max_len: usize) -> Vec<Vec<PauliClass>> {
    let letters = [PauliClass::NonPauli, PauliClass::X, PauliClass::Y];
    let mut out = Vec::new();
    let mut layer: Vec<Vec<PauliClass>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                letters.iter().map(move |&c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

pub fn word_name(word: &[PauliClass]) -> String {
    word.iter().map(|c| c.letter()).collect()
}

/// Source circuits with at most 5 wires and 12 gates: a few hand-written
/// ones and a seeded random sample, generic and Clifford.
pub fn corpus_circuits() -> Vec<(String, Circuit)> {
    let mut out = vec![
        ("identity_2".to_string(), Circuit::source(2, vec![])),
        (
            "single_j".to_string(),
            Circuit::source(1, vec![Gate::J(0, Angle::new(1, 4))]),
        ),
        ("three_wire".to_string(), three_wire_circuit()),
        (
            "cz_pair".to_string(),
            Circuit::source(
                2,
                vec![Gate::Cz(0, 1), Gate::Cz(0, 1), Gate::J(1, Angle::new(1, 3))],
            ),
        ),
        (
            "hadamard_reset".to_string(),
            Circuit::source(
                1,
                vec![
                    Gate::J(0, Angle::symbolic(0)),
                    Gate::J(0, Angle::zero()),
                    Gate::J(0, Angle::symbolic(1)),
                ],
            ),
        ),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    for k in 0..40 {
        let n = rng.gen_range(1..=5);
        let gates = rng.gen_range(1..=12);
        let clifford = k % 4 == 3;
        let tag = if clifford { "clifford" } else { "random" };
        out.push((
            format!("{tag}_{k:02}"),
            random_source_circuit(&mut rng, n, gates, clifford),
        ));
    }
    out
}

/// Flow patterns: the seven-vertex pattern, line patterns for every word up
/// to length 5, and seeded random flow geometries with mixed angles.
pub fn corpus_patterns() -> Vec<(String, Pattern)> {
    let mut out = vec![("seven_vertex".to_string(), seven_vertex_pattern())];
    for w in all_words(5) {
        out.push((format!("line_{}", word_name(&w)), line_pattern(&w)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED + 1);
    for k in 0..40 {
        let (g, flow) = random_flow_geometry(&mut rng, 8, 6);
        let angles = random_angles(&mut rng, &g);
        let p = flow_pattern(&g, &flow, &angles).expect("angles cover the non-outputs");
        out.push((format!("random_{k:02}"), p));
    }
    out
}
