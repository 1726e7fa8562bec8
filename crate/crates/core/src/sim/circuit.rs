use std::collections::{BTreeSet, VecDeque};
use std::f64::consts::FRAC_1_SQRT_2;

use super::register::{Register, C};
use super::{symbol_value, Matrix, MAX_ACTIVE_QUBITS, MAX_DENSE_QUBITS, NORM_TOL};
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// 2×2 matrix of a single-qubit gate. Panics on two-qubit gates or `MZ`.
pub fn gate_matrix_1q(g: &Gate) -> [[C; 2]; 2] {
    let r = FRAC_1_SQRT_2;
    match g {
        Gate::J(_, a) => {
            let e = C::from_polar(1.0, a.radians_with(symbol_value));
            [[c(r, 0.0), e * r], [c(r, 0.0), -e * r]]
        }
        Gate::H(_) => [[c(r, 0.0), c(r, 0.0)], [c(r, 0.0), c(-r, 0.0)]],
        Gate::Zp(_, a) => [
            [c(1.0, 0.0), c(0.0, 0.0)],
            [
                c(0.0, 0.0),
                C::from_polar(1.0, a.radians_with(symbol_value)),
            ],
        ],
        other => panic!("{} is not a single-qubit unitary", other.mnemonic()),
    }
}

fn apply(reg: &mut Register<u32>, g: &Gate) {
    match *g {
        Gate::J(q, _) | Gate::H(q) | Gate::Zp(q, _) => reg.apply1(q, gate_matrix_1q(g)),
        Gate::Cz(a, b) => reg.cz(a, b),
        Gate::Cx { control, target } => reg.cx(control, target),
        Gate::Mz(_) => {}
    }
}

/// Unitary of a measurement-free circuit on at most 12 wires; wire 0 is the
/// most significant bit.
pub fn circuit_unitary(circ: &Circuit) -> Result<Matrix> {
    if circ.n > MAX_DENSE_QUBITS {
        return Err(Error::Sim(format!(
            "{} wires exceed the dense limit of {MAX_DENSE_QUBITS}",
            circ.n
        )));
    }
    if circ.gates.iter().any(|g| matches!(g, Gate::Mz(_))) {
        return Err(Error::Sim("circuit contains measurements".into()));
    }
    circ.check()?;
    let wires: Vec<u32> = (0..circ.n).collect();
    let dim = 1usize << circ.n;
    let mut m = Matrix::zeros(dim, dim);
    for col in 0..dim {
        let mut reg = Register::basis(wires.clone(), col, MAX_DENSE_QUBITS as usize)?;
        for g in &circ.gates {
            apply(&mut reg, g);
        }
        if (reg.norm_sqr() - 1.0).abs() > NORM_TOL {
            return Err(Error::Sim("state norm drifted".into()));
        }
        for (row, a) in reg.amplitudes_in(&wires).into_iter().enumerate() {
            m[(row, col)] = a;
        }
    }
    Ok(m)
}

/// Post-selected map of a coherent circuit from `inputs` to `outputs`.
///
/// Every wire outside `inputs` starts in `|0⟩`; every wire outside `outputs`
/// is projected onto `|0⟩` after its last gate (`MZ` annotations are
/// ignored). Wires are swept in a dependency-respecting order that allocates
/// them late and retires them early, so circuits much wider than
/// [`MAX_ACTIVE_QUBITS`] can be evaluated when their interaction structure is
/// narrow. The result is not renormalized.
pub fn coherent_map(circ: &Circuit, inputs: &[u32], outputs: &[u32]) -> Result<Matrix> {
    circ.check()?;
    let out_set: BTreeSet<u32> = outputs.iter().copied().collect();
    let gates = prune_settled(circ, inputs, &out_set);
    let order = sweep_order(circ.n, &gates, inputs);
    let mut last_use = vec![None; circ.n as usize];
    for (pos, &gi) in order.iter().enumerate() {
        for w in gates[gi].wires() {
            last_use[w as usize] = Some(pos);
        }
    }
    let zero = [c(1.0, 0.0), c(0.0, 0.0)];
    let din = 1usize << inputs.len();
    let dout = 1usize << outputs.len();
    let mut m = Matrix::zeros(dout, din);
    for col in 0..din {
        let mut reg = Register::basis(inputs.to_vec(), col, MAX_ACTIVE_QUBITS)?;
        for &w in inputs {
            if last_use[w as usize].is_none() && !out_set.contains(&w) {
                reg.project_out(w, zero);
            }
        }
        for (pos, &gi) in order.iter().enumerate() {
            let g = gates[gi];
            for w in g.wires() {
                if !reg.contains(w) {
                    reg.push(w, zero)?;
                }
            }
            apply(&mut reg, g);
            for w in g.wires() {
                if last_use[w as usize] == Some(pos) && !out_set.contains(&w) {
                    reg.project_out(w, zero);
                }
            }
        }
        for &w in outputs {
            if !reg.contains(w) {
                reg.push(w, zero)?;
            }
        }
        for (row, a) in reg.amplitudes_in(outputs).into_iter().enumerate() {
            m[(row, col)] = a;
        }
    }
    Ok(m)
}

/// True when `g` leaves `|0⟩` on wire `w` unchanged and does nothing else
/// in that case: controls, CZ and phase gates.
fn fixes_zero(g: &Gate, w: u32) -> bool {
    match *g {
        Gate::Cx { control, .. } => control == w,
        Gate::Cz(..) | Gate::Zp(..) | Gate::Mz(_) => true,
        Gate::J(..) | Gate::H(_) => false,
    }
}

/// Drops every gate that provably acts as the identity.
///
/// A non-output wire is post-selected on `|0⟩`, and that projector commutes
/// back past gates that fix `|0⟩` on it, up to the last gate that does not.
/// Together with the wires still in their initial `|0⟩`, this gives a set
/// of wires known to hold `|0⟩` at each gate; a control, `CZ` or phase on
/// such a wire does nothing. `MZ` annotations are dropped as well.
fn prune_settled<'a>(circ: &'a Circuit, inputs: &[u32], outputs: &BTreeSet<u32>) -> Vec<&'a Gate> {
    let mut settle: Vec<Option<usize>> = vec![None; circ.n as usize];
    for (k, g) in circ.gates.iter().enumerate() {
        for w in g.wires() {
            if !fixes_zero(g, w) {
                settle[w as usize] = Some(k);
            }
        }
    }
    let mut fresh: Vec<bool> = (0..circ.n).map(|w| !inputs.contains(&w)).collect();
    let mut kept = Vec::with_capacity(circ.gates.len());
    for (k, g) in circ.gates.iter().enumerate() {
        let zero = |w: u32| {
            fresh[w as usize] || (!outputs.contains(&w) && settle[w as usize].is_none_or(|s| k > s))
        };
        let idle = match *g {
            Gate::Mz(_) => true,
            Gate::Cx { control, .. } => zero(control),
            Gate::Cz(a, b) => zero(a) || zero(b),
            Gate::Zp(w, _) => zero(w),
            Gate::J(..) | Gate::H(_) => false,
        };
        if idle {
            continue;
        }
        for w in g.wires() {
            if !fixes_zero(g, w) {
                fresh[w as usize] = false;
            }
        }
        kept.push(g);
    }
    kept
}

/// The gate that must run next for wire `w` to make progress: the front of
/// its queue, or, when that gate still waits on another wire, whatever that
/// wire has to run first.
fn blocking_gate(gates: &[&Gate], queues: &[VecDeque<usize>], w: u32) -> usize {
    let mut g = *queues[w as usize].front().expect("wire has work left");
    loop {
        let waiting = gates[g]
            .wires()
            .into_iter()
            .find(|&u| queues[u as usize].front() != Some(&g));
        match waiting {
            Some(u) => g = *queues[u as usize].front().expect("a gate ahead"),
            None => return g,
        }
    }
}

/// A linear extension of the per-wire gate order that keeps few wires live:
/// gates on live wires run first; otherwise the live wire with the least
/// work left is driven towards retirement.
fn sweep_order(n: u32, gates: &[&Gate], inputs: &[u32]) -> Vec<usize> {
    let mut queues: Vec<VecDeque<usize>> = vec![VecDeque::new(); n as usize];
    for (i, g) in gates.iter().enumerate() {
        for w in g.wires() {
            queues[w as usize].push_back(i);
        }
    }
    let mut live: BTreeSet<u32> = inputs.iter().copied().collect();
    let mut done = vec![false; gates.len()];
    let mut order = Vec::with_capacity(gates.len());
    let mut frontier: BTreeSet<usize> = BTreeSet::new();
    let ready = |i: usize, queues: &[VecDeque<usize>]| {
        gates[i]
            .wires()
            .iter()
            .all(|&w| queues[w as usize].front() == Some(&i))
    };
    for q in &queues {
        if let Some(&i) = q.front() {
            if ready(i, &queues) {
                frontier.insert(i);
            }
        }
    }
    loop {
        let fresh = |i: usize, live: &BTreeSet<u32>| {
            gates[i]
                .wires()
                .iter()
                .filter(|w| !live.contains(w))
                .count()
        };
        let free = frontier.iter().copied().find(|&i| fresh(i, &live) == 0);
        let pick = free
            .or_else(|| {
                let target = live
                    .iter()
                    .copied()
                    .filter(|w| !queues[*w as usize].is_empty())
                    .min_by_key(|w| (queues[*w as usize].len(), *w))?;
                Some(blocking_gate(gates, &queues, target))
            })
            .or_else(|| {
                frontier
                    .iter()
                    .copied()
                    .min_by_key(|&i| (fresh(i, &live), i))
            });
        let Some(pick) = pick else { break };
        frontier.remove(&pick);
        done[pick] = true;
        order.push(pick);
        for w in gates[pick].wires() {
            live.insert(w);
            queues[w as usize].pop_front();
        }
        for w in gates[pick].wires() {
            if let Some(&i) = queues[w as usize].front() {
                if !done[i] && ready(i, &queues) {
                    frontier.insert(i);
                }
            }
        }
    }
    debug_assert_eq!(order.len(), gates.len());
    order
}
