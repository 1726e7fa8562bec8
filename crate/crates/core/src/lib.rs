//! Compiler toolkit for measurement-based quantum computation.
//!
//! Circuits over `{J(α), CZ}` are translated into measurement patterns,
//! rewritten into standard and signal-shifted form, analysed through flows and
//! influencing paths, and translated back into a parallel coherent circuit.
//! A dense statevector simulator checks every transformation on small inputs.

pub mod angle;
pub mod artifact;
pub mod circuit;
pub mod depth;
pub mod error;
pub mod fixtures;
pub mod flow;
pub mod geometry;
pub mod pattern;
pub mod report;
pub mod rewrite;
pub mod signal;
pub mod sim;
pub mod text;
pub mod translate;

pub use angle::{Angle, PauliClass};
pub use circuit::{Circuit, Dialect, Gate};
pub use error::{Error, ParseError, Result};
pub use geometry::Geometry;
pub use pattern::{Command, Edge, Pattern, Qubit, ValidationReport};
pub use signal::Signal;
