//! Circuit to pattern translation, the coherent circuit of a pattern, and
//! the parallelization pipeline that chains them through the rewrites.

mod parallelize;
mod paths;
mod to_circuit;
mod to_pattern;

use std::fmt;

pub use parallelize::{parallelize_circuit, ParallelReport, Parallelized};
pub use paths::{circuit_influencing_paths, CircuitPath, Segment};
pub use to_circuit::{pattern_to_circuit, CoherentCircuit, FanIn, FanInKind, FanInMode};
pub use to_pattern::{
    circuit_to_pattern, Label, LabelledVertex, Translation, TranslationStats, Variant,
};

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Direct => "direct",
            Variant::Cluster => "cluster",
        })
    }
}

impl fmt::Display for FanInMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FanInMode::Linear => "linear",
            FanInMode::Tree => "tree",
        })
    }
}
