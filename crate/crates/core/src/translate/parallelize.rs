use super::paths::circuit_influencing_paths;
use super::to_circuit::{pattern_to_circuit, CoherentCircuit, FanInMode};
use super::to_pattern::{circuit_to_pattern, Translation, TranslationStats, Variant};
use crate::circuit::Circuit;
use crate::depth::quantum_depth;
use crate::error::Result;
use crate::flow::{characterized_depth, DepthReport};
use crate::pattern::Pattern;
use crate::rewrite::{pauli_simplify, signal_shift};
use crate::sim::{coherent_map, normalize_isometry, Matrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelReport {
    pub translation: TranslationStats,
    pub depth: DepthReport,
    /// Largest dependent stretch of non-Pauli `J` gates on a circuit path.
    pub d_prime: usize,
    /// Quantum depth of the Pauli-simplified, signal-shifted pattern.
    pub pattern_depth: usize,
    /// Depth of the coherent circuit, terminal measurements excluded.
    pub output_depth: usize,
    pub output_wires: usize,
    pub ancillas: usize,
    pub max_fan_in: usize,
}

#[derive(Debug, Clone)]
pub struct Parallelized {
    pub translation: Translation,
    pub rewritten: Pattern,
    pub coherent: CoherentCircuit,
    /// Coherent-circuit wires holding source wire `w`'s input and output.
    pub logical_inputs: Vec<u32>,
    pub logical_outputs: Vec<u32>,
    pub report: ParallelReport,
}

impl Parallelized {
    /// Map of the coherent circuit from the logical inputs to the logical
    /// outputs with every other wire starting in and post-selected on
    /// `|0⟩`, rescaled to an isometry.
    pub fn logical_map(&self) -> Result<Matrix> {
        let m = coherent_map(
            &self.coherent.circuit,
            &self.logical_inputs,
            &self.logical_outputs,
        )?;
        Ok(normalize_isometry(&m))
    }
}

/// Translates a `{J, CZ}` circuit to a pattern, removes the Pauli and
/// Z-dependencies, and turns the result back into a circuit with tree
/// fan-ins.
pub fn parallelize_circuit(c: &Circuit) -> Result<Parallelized> {
    let translation = circuit_to_pattern(c, Variant::Direct)?;
    let simplified = pauli_simplify(&translation.pattern)?.0;
    let rewritten = signal_shift(&simplified)?.0;
    let depth = characterized_depth(&translation.standard)?;
    let (_, d_prime) = circuit_influencing_paths(c)?;
    let coherent = pattern_to_circuit(&rewritten, FanInMode::Tree)?;
    let wire = |q| coherent.wire_of[&q];
    let logical_inputs = translation.wire_inputs().into_iter().map(wire).collect();
    let logical_outputs = translation.wire_outputs().into_iter().map(wire).collect();
    let report = ParallelReport {
        translation: translation.stats.clone(),
        depth,
        d_prime,
        pattern_depth: quantum_depth(&rewritten)?,
        output_depth: coherent.circuit.depth(),
        output_wires: coherent.circuit.n as usize,
        ancillas: coherent.ancillas.len(),
        max_fan_in: coherent
            .fanins
            .iter()
            .map(|f| f.sources.len())
            .max()
            .unwrap_or(0),
    };
    Ok(Parallelized {
        translation,
        rewritten,
        coherent,
        logical_inputs,
        logical_outputs,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;
    use crate::circuit::Gate;
    use crate::sim::{circuit_unitary, equiv_up_to_phase, EQ_TOL};

    #[test]
    fn identity_circuit() {
        let c = Circuit::source(2, vec![]);
        let par = parallelize_circuit(&c).unwrap();
        assert_eq!(par.report.d_prime, 0);
        assert_eq!(par.report.output_depth, 0);
        let u = circuit_unitary(&c).unwrap();
        assert!(equiv_up_to_phase(&par.logical_map().unwrap(), &u, EQ_TOL).unwrap());
    }

    #[test]
    fn two_wire_round_trip() {
        let c = Circuit::source(
            2,
            vec![
                Gate::J(0, Angle::new(1, 4)),
                Gate::Cz(0, 1),
                Gate::J(1, Angle::symbolic(3)),
                Gate::J(0, Angle::new(1, 2)),
                Gate::Cz(0, 1),
                Gate::J(1, Angle::new(1, 1)),
            ],
        );
        let par = parallelize_circuit(&c).unwrap();
        let u = circuit_unitary(&c).unwrap();
        assert!(equiv_up_to_phase(&par.logical_map().unwrap(), &u, EQ_TOL).unwrap());
    }
}
