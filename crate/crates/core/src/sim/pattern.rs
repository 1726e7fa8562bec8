use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::register::{Register, C};
use super::{equiv_up_to_phase, symbol_value, Matrix, EQ_TOL, MAX_ACTIVE_QUBITS, UNIFORM_SEED};
use crate::angle::{Angle, PauliClass};
use crate::error::{Error, Result};
use crate::pattern::{Command, Edge, Pattern, Qubit};

/// Outcome bit of every measured qubit (`true` = the `|−_α⟩` projection).
pub type Outcomes = BTreeMap<Qubit, bool>;

/// Numeric values used for measurement angles during simulation.
#[derive(Debug, Clone, Default)]
pub struct SimAngles {
    /// Values for symbolic angle tags; unknown tags get a fixed generic value.
    pub symbols: BTreeMap<u32, f64>,
    /// Replacement base angle (radians) for individual qubits.
    pub overrides: BTreeMap<Qubit, f64>,
}

impl SimAngles {
    fn symbol(&self, tag: u32) -> f64 {
        self.symbols
            .get(&tag)
            .copied()
            .unwrap_or_else(|| symbol_value(tag))
    }

    /// Radians of `(−1)^s·α + t·π` for the measurement of `q`.
    fn adapted(&self, q: Qubit, angle: &Angle, s: bool, t: bool) -> f64 {
        match self.overrides.get(&q) {
            Some(&base) => {
                let a = if s { -base } else { base };
                if t {
                    a + PI
                } else {
                    a
                }
            }
            None => angle.adapt(s, t).radians_with(|tag| self.symbol(tag)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BranchResult {
    pub outcomes: Outcomes,
    /// Branch probability averaged over a uniformly random input basis
    /// state, `‖A‖²_F / 2^|I|`.
    pub probability: f64,
    /// Map from the input space (inputs ascending) to the output space
    /// (outputs ascending).
    pub map: Matrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeterminismReport {
    /// All non-zero branch maps are proportional.
    pub deterministic: bool,
    /// All branch maps are equal up to a global phase.
    pub strong: bool,
    /// Strong for the given angles and for every resampled angle assignment.
    pub uniform: bool,
    /// Two branches whose maps disagree, when `strong` fails.
    pub witness: Option<(Outcomes, Outcomes)>,
}

struct Sweep<'a> {
    reg: Register<Qubit>,
    pending_prep: BTreeSet<Qubit>,
    pending_ent: BTreeSet<Edge>,
    value: BTreeMap<Qubit, bool>,
    outcomes: &'a Outcomes,
}

impl Sweep<'_> {
    fn alloc(&mut self, q: Qubit) -> Result<()> {
        if self.pending_prep.remove(&q) {
            let r = C::new(FRAC_1_SQRT_2, 0.0);
            self.reg.push(q, [r, r])?;
        } else if !self.reg.contains(q) {
            return Err(Error::Invalid(format!("qubit {q} used while not live")));
        }
        Ok(())
    }

    /// Makes `q` live and applies every deferred entangling command on it.
    fn touch(&mut self, q: Qubit) -> Result<()> {
        self.alloc(q)?;
        let incident: Vec<Edge> = self
            .pending_ent
            .iter()
            .filter(|e| e.touches(q))
            .copied()
            .collect();
        for e in incident {
            self.pending_ent.remove(&e);
            self.alloc(e.other(q))?;
            self.reg.cz(e.lo(), e.hi());
        }
        Ok(())
    }

    fn eval(&self, s: &crate::Signal) -> bool {
        s.eval(|d| self.value.get(&d).copied().unwrap_or(false))
    }
}

fn run_column(
    p: &Pattern,
    outcomes: &Outcomes,
    angles: &SimAngles,
    in_order: &[Qubit],
    col: usize,
) -> Result<Register<Qubit>> {
    let mut sw = Sweep {
        reg: Register::basis(in_order.to_vec(), col, MAX_ACTIVE_QUBITS)?,
        pending_prep: BTreeSet::new(),
        pending_ent: BTreeSet::new(),
        value: BTreeMap::new(),
        outcomes,
    };
    let x = [
        [C::new(0.0, 0.0), C::new(1.0, 0.0)],
        [C::new(1.0, 0.0), C::new(0.0, 0.0)],
    ];
    let z = [
        [C::new(1.0, 0.0), C::new(0.0, 0.0)],
        [C::new(0.0, 0.0), C::new(-1.0, 0.0)],
    ];
    for cmd in &p.commands {
        match cmd {
            Command::Prep(q) => {
                sw.pending_prep.insert(*q);
            }
            Command::Ent(e) => {
                if !sw.pending_ent.remove(e) {
                    sw.pending_ent.insert(*e);
                }
            }
            Command::Meas { q, angle, s, t } => {
                sw.touch(*q)?;
                let r = angles.adapted(*q, angle, sw.eval(s), sw.eval(t));
                let o = *sw
                    .outcomes
                    .get(q)
                    .ok_or_else(|| Error::Sim(format!("no outcome given for qubit {q}")))?;
                let sign = if o { -FRAC_1_SQRT_2 } else { FRAC_1_SQRT_2 };
                let bra = [C::new(FRAC_1_SQRT_2, 0.0), C::from_polar(sign, -r)];
                sw.reg.project_out(*q, bra);
                sw.value.insert(*q, o);
            }
            Command::CorrX { q, s } | Command::CorrZ { q, s } => {
                sw.touch(*q)?;
                if sw.eval(s) {
                    let m = if matches!(cmd, Command::CorrX { .. }) {
                        x
                    } else {
                        z
                    };
                    sw.reg.apply1(*q, m);
                }
            }
            Command::Shift { q, t } => {
                let flip = sw.eval(t);
                *sw.value.entry(*q).or_default() ^= flip;
            }
        }
    }
    let rest: Vec<Qubit> = sw.pending_prep.iter().copied().collect();
    for q in rest {
        sw.alloc(q)?;
    }
    let edges: Vec<Edge> = std::mem::take(&mut sw.pending_ent).into_iter().collect();
    for e in edges {
        sw.reg.cz(e.lo(), e.hi());
    }
    Ok(sw.reg)
}

/// Branch map for fixed outcomes with explicit input/output qubit orders.
pub fn branch_map(
    p: &Pattern,
    outcomes: &Outcomes,
    angles: &SimAngles,
    in_order: &[Qubit],
    out_order: &[Qubit],
) -> Result<Matrix> {
    let din = 1usize << in_order.len();
    let dout = 1usize << out_order.len();
    let mut m = Matrix::zeros(dout, din);
    for col in 0..din {
        let reg = run_column(p, outcomes, angles, in_order, col)?;
        if reg.labels().len() != out_order.len() || out_order.iter().any(|&q| !reg.contains(q)) {
            return Err(Error::Invalid(
                "live qubits at the end differ from the requested outputs".into(),
            ));
        }
        for (row, a) in reg.amplitudes_in(out_order).into_iter().enumerate() {
            m[(row, col)] = a;
        }
    }
    Ok(m)
}

fn ensure_valid(p: &Pattern) -> Result<()> {
    let r = p.validate();
    match r.violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::Invalid(format!(
            "{} (qubit {}, command {:?})",
            v.rule.describe(),
            v.qubit,
            v.index
        ))),
    }
}

/// Runs one branch over all computational-basis inputs.
pub fn run_pattern_branch(
    p: &Pattern,
    outcomes: &Outcomes,
    angles: &SimAngles,
) -> Result<BranchResult> {
    ensure_valid(p)?;
    let ins: Vec<Qubit> = p.inputs.iter().copied().collect();
    let outs: Vec<Qubit> = p.outputs.iter().copied().collect();
    let map = branch_map(p, outcomes, angles, &ins, &outs)?;
    let probability = map.iter().map(|a| a.norm_sqr()).sum::<f64>() / (1usize << ins.len()) as f64;
    Ok(BranchResult {
        outcomes: outcomes.clone(),
        probability,
        map,
    })
}

fn all_outcomes(measured: &[Qubit]) -> impl Iterator<Item = Outcomes> + '_ {
    (0..1usize << measured.len()).map(move |bits| {
        measured
            .iter()
            .enumerate()
            .map(|(k, &q)| (q, bits >> k & 1 == 1))
            .collect()
    })
}

struct BranchComparison {
    deterministic: bool,
    strong: bool,
    /// First pair of outcome strings whose branches differ.
    witness: Option<(Outcomes, Outcomes)>,
}

fn strong_check(p: &Pattern, angles: &SimAngles) -> Result<BranchComparison> {
    let measured = p.measured();
    let mut first: Option<BranchResult> = None;
    let mut deterministic = true;
    let mut strong = true;
    let mut witness = None;
    for o in all_outcomes(&measured) {
        let b = run_pattern_branch(p, &o, angles)?;
        let Some(f) = &first else {
            first = Some(b);
            continue;
        };
        let same_prob = (b.probability - f.probability).abs() <= EQ_TOL;
        let proportional = equiv_up_to_phase(
            &super::normalize_isometry(&b.map),
            &super::normalize_isometry(&f.map),
            1e-7,
        )?;
        if !proportional && b.probability > EQ_TOL && f.probability > EQ_TOL {
            deterministic = false;
        }
        if !(same_prob && equiv_up_to_phase(&b.map, &f.map, EQ_TOL)?) {
            strong = false;
            if witness.is_none() {
                witness = Some((f.outcomes.clone(), b.outcomes.clone()));
            }
        }
    }
    Ok(BranchComparison {
        deterministic,
        strong,
        witness,
    })
}

/// Enumerates every branch (at most 2^10) and classifies determinism.
///
/// The uniform check repeats the strong check three times with every
/// non-Pauli measurement angle replaced by a value drawn from a generator
/// seeded with [`UNIFORM_SEED`].
pub fn check_determinism(p: &Pattern, angles: &SimAngles) -> Result<DeterminismReport> {
    ensure_valid(p)?;
    let measured = p.measured();
    if measured.len() > 10 {
        return Err(Error::Resource(format!(
            "{} measured qubits exceed the branch enumeration cap of 10",
            measured.len()
        )));
    }
    let BranchComparison {
        deterministic,
        strong,
        witness,
    } = strong_check(p, angles)?;
    let mut uniform = strong;
    if uniform {
        let mut rng = ChaCha8Rng::seed_from_u64(UNIFORM_SEED);
        let generic: Vec<Qubit> = p
            .angles()
            .into_iter()
            .filter(|(_, a)| a.class() == PauliClass::NonPauli)
            .map(|(q, _)| q)
            .collect();
        for _ in 0..3 {
            let mut sample = angles.clone();
            for &q in &generic {
                sample.overrides.insert(q, rng.gen_range(0.0..TAU));
            }
            if !strong_check(p, &sample)?.strong {
                uniform = false;
                break;
            }
        }
    }
    Ok(DeterminismReport {
        deterministic,
        strong: strong && deterministic,
        uniform,
        witness,
    })
}

/// Branch-zero map rescaled by `2^{|Oᶜ|/2}`, with explicit qubit orders.
/// Meaningful for strongly deterministic patterns; determinism is not checked.
pub fn pattern_operator_ordered(
    p: &Pattern,
    angles: &SimAngles,
    in_order: &[Qubit],
    out_order: &[Qubit],
) -> Result<Matrix> {
    ensure_valid(p)?;
    let measured = p.measured();
    let zero: Outcomes = measured.iter().map(|&q| (q, false)).collect();
    let m = branch_map(p, &zero, angles, in_order, out_order)?;
    let scale = 2f64.powf(measured.len() as f64 / 2.0);
    Ok(m * C::new(scale, 0.0))
}

/// The operator realized by a strongly deterministic pattern.
pub fn pattern_operator(p: &Pattern, angles: &SimAngles) -> Result<Matrix> {
    let rep = check_determinism(p, angles)?;
    if !rep.strong {
        return Err(Error::Sim("pattern is not strongly deterministic".into()));
    }
    let ins: Vec<Qubit> = p.inputs.iter().copied().collect();
    let outs: Vec<Qubit> = p.outputs.iter().copied().collect();
    pattern_operator_ordered(p, angles, &ins, &outs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Circuit, Gate};
    use crate::sim::circuit_unitary;
    use crate::Signal;

    fn j_pattern(a: Angle) -> Pattern {
        Pattern::new(
            [1, 2],
            [1],
            [2],
            vec![
                Command::Prep(Qubit(2)),
                Command::ent(1, 2),
                Command::meas(1, a.neg(), Signal::empty(), Signal::empty()),
                Command::CorrX {
                    q: Qubit(2),
                    s: Signal::single(Qubit(1)),
                },
            ],
        )
    }

    fn teleport() -> Pattern {
        Pattern::new(
            [0, 1, 2],
            [0],
            [2],
            vec![
                Command::Prep(Qubit(1)),
                Command::Prep(Qubit(2)),
                Command::ent(0, 1),
                Command::ent(1, 2),
                Command::meas(0, Angle::zero(), Signal::empty(), Signal::empty()),
                Command::meas(1, Angle::zero(), Signal::empty(), Signal::empty()),
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
    fn j_pattern_realizes_j() {
        for (n, d) in [(0, 1), (1, 4), (1, 2), (5, 3)] {
            let a = Angle::new(n, d);
            let p = j_pattern(a.clone());
            let rep = check_determinism(&p, &SimAngles::default()).unwrap();
            assert!(rep.strong && rep.uniform);
            let op = pattern_operator(&p, &SimAngles::default()).unwrap();
            let u = circuit_unitary(&Circuit::source(1, vec![Gate::J(0, a)])).unwrap();
            assert!(equiv_up_to_phase(&op, &u, EQ_TOL).unwrap());
        }
    }

    #[test]
    fn half_pi_measurement_gives_hi() {
        let p = j_pattern(Angle::new(3, 2));
        let op = pattern_operator(&p, &SimAngles::default()).unwrap();
        let r = FRAC_1_SQRT_2;
        let hi = Matrix::from_row_slice(
            2,
            2,
            &[
                C::new(r, 0.0),
                C::new(0.0, -r),
                C::new(r, 0.0),
                C::new(0.0, r),
            ],
        );
        assert!(equiv_up_to_phase(&op, &hi, EQ_TOL).unwrap());
    }

    #[test]
    fn teleportation_branch_is_identity_with_quarter_probability() {
        let p = teleport();
        let zero: Outcomes = [(Qubit(0), false), (Qubit(1), false)].into();
        let b = run_pattern_branch(&p, &zero, &SimAngles::default()).unwrap();
        assert!((b.probability - 0.25).abs() < 1e-12);
        let scaled = &b.map * C::new(2.0, 0.0);
        assert!(equiv_up_to_phase(&scaled, &Matrix::identity(2, 2), EQ_TOL).unwrap());
        let op = pattern_operator(&p, &SimAngles::default()).unwrap();
        assert!(equiv_up_to_phase(&op, &Matrix::identity(2, 2), EQ_TOL).unwrap());
    }

    #[test]
    fn probabilities_sum_to_one() {
        let p = teleport();
        let total: f64 = all_outcomes(&p.measured())
            .map(|o| {
                run_pattern_branch(&p, &o, &SimAngles::default())
                    .unwrap()
                    .probability
            })
            .sum();
        assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn missing_correction_breaks_strong_determinism() {
        let mut p = teleport();
        p.commands.pop();
        let rep = check_determinism(&p, &SimAngles::default()).unwrap();
        assert!(!rep.strong);
        assert!(rep.witness.is_some());
    }

    #[test]
    fn measurement_free_pattern_is_product_of_cz() {
        let p = Pattern::new([0, 1], [0, 1], [0, 1], vec![Command::ent(0, 1)]);
        let rep = check_determinism(&p, &SimAngles::default()).unwrap();
        assert!(rep.strong);
        let op = pattern_operator(&p, &SimAngles::default()).unwrap();
        let cz = circuit_unitary(&Circuit::source(2, vec![Gate::Cz(0, 1)])).unwrap();
        assert!(equiv_up_to_phase(&op, &cz, EQ_TOL).unwrap());
    }

    #[test]
    fn missing_outcome_is_error() {
        let p = teleport();
        assert!(run_pattern_branch(&p, &Outcomes::new(), &SimAngles::default()).is_err());
    }
}
