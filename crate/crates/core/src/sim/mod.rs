//! Dense statevector oracle for circuits and patterns.
//!
//! Qubit order convention: when a matrix acts on a list of qubits, the
//! qubit with the smallest identifier is the most significant bit of the
//! row/column index.

mod circuit;
mod pattern;
mod register;

use nalgebra::DMatrix;

pub use circuit::{circuit_unitary, coherent_map, gate_matrix_1q};
pub use pattern::{
    branch_map, check_determinism, pattern_operator, pattern_operator_ordered, run_pattern_branch,
    BranchResult, DeterminismReport, Outcomes, SimAngles,
};
pub use register::C;

use crate::error::{Error, Result};

pub type Matrix = DMatrix<C>;

/// Equivalence tolerance for operators.
pub const EQ_TOL: f64 = 1e-9;
/// Allowed drift of a state norm.
pub const NORM_TOL: f64 = 1e-12;
/// Largest circuit handed to [`circuit_unitary`].
pub const MAX_DENSE_QUBITS: u32 = 12;
/// Largest register kept alive while sweeping a pattern or coherent circuit.
pub const MAX_ACTIVE_QUBITS: usize = 16;
/// Seed for the angle resampling of the uniform-determinism check.
pub const UNIFORM_SEED: u64 = 0x5EED;

/// Radians assigned to a symbolic angle tag when no value is supplied.
pub fn symbol_value(tag: u32) -> f64 {
    (0.271_828_182_8 + 0.577_215_664_9 * f64::from(tag + 1)) % std::f64::consts::TAU
}

/// True when `a = λ·b` for a unit complex `λ`, entrywise within `tol`.
///
/// `λ` is read off at the entry of `b` with the largest magnitude.
pub fn equiv_up_to_phase(a: &Matrix, b: &Matrix, tol: f64) -> Result<bool> {
    if a.shape() != b.shape() {
        return Err(Error::Sim(format!(
            "shape mismatch {:?} vs {:?}",
            a.shape(),
            b.shape()
        )));
    }
    let Some((k, bk)) = b
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
    else {
        return Ok(true);
    };
    if bk.norm() <= tol {
        return Ok(a.iter().all(|x| x.norm() <= tol));
    }
    let ratio = a.as_slice()[k] / bk;
    let lambda = if ratio.norm() == 0.0 {
        C::new(1.0, 0.0)
    } else {
        ratio / ratio.norm()
    };
    Ok(a.iter()
        .zip(b.iter())
        .all(|(x, y)| (x - lambda * y).norm() <= tol))
}

/// `m` scaled so that its Frobenius norm equals `sqrt(columns)`, the norm of
/// an isometry of that width.
pub fn normalize_isometry(m: &Matrix) -> Matrix {
    let f = m.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if f == 0.0 {
        return m.clone();
    }
    m * C::new((m.ncols() as f64).sqrt() / f, 0.0)
}

/// Largest entry of `|M†M − 1|`.
pub fn isometry_defect(m: &Matrix) -> f64 {
    let g = m.adjoint() * m;
    let id = Matrix::identity(g.nrows(), g.ncols());
    (g - id).iter().map(|x| x.norm()).fold(0.0, f64::max)
}
