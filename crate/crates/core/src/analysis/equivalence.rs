//! Circuit equivalence up to an unconditional global sign or phase.

use num_traits::Float;

use crate::circuit::{Circuit, SemanticsMode};
use crate::error::{AnalysisError, CircuitError};
use crate::linalg::{self, Matrix, Scalar, ONE};
use crate::sim::{Simulator, FULL_MATRIX_MAX_REGISTERS};

/// Columns with norm at or below this are skipped when fixing the scale.
const SCALE_COLUMN_NORM: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    /// Unit factor `s` with `first ≈ s · second`.
    pub scale: Scalar,
    pub max_deviation: f64,
}

/// Compares `a` against `s · b` for the unit scalar `s` fixed by the first
/// column pair of nonnegligible norm. With `phase = false`, `s` is `±1`.
pub fn matrices_equivalent(a: &Matrix, b: &Matrix, phase: bool, eps: f64) -> Result<EquivalenceReport, AnalysisError> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(crate::error::LinalgError::DimensionMismatch {
            left: (a.rows(), a.cols()),
            right: (b.rows(), b.cols()),
        }
        .into());
    }
    let scale = (0..a.cols())
        .map(|j| (a.column(j), b.column(j)))
        .find(|(ca, cb)| linalg::l2_norm_of(ca) > SCALE_COLUMN_NORM && linalg::l2_norm_of(cb) > SCALE_COLUMN_NORM)
        .map_or(ONE, |(ca, cb)| unit_factor(linalg::inner_of(&cb, &ca), phase));
    let max_deviation = a.max_deviation(&b.scale(scale))?;
    Ok(EquivalenceReport {
        equivalent: max_deviation <= eps,
        scale,
        max_deviation,
    })
}

/// Nearest admissible unit scalar to the overlap `⟨b_j, a_j⟩`.
fn unit_factor(overlap: Scalar, phase: bool) -> Scalar {
    if phase {
        let r = overlap.norm();
        if r > 0.0 {
            overlap / r
        } else {
            ONE
        }
    } else if overlap.re < 0.0 {
        -ONE
    } else {
        ONE
    }
}

fn require_quantum(c: &Circuit) -> Result<(), AnalysisError> {
    if c.mode().is_quantum() {
        Ok(())
    } else {
        Err(CircuitError::WrongMode {
            operation: "equivalence checking",
            expected: "a quantum mode",
            found: c.mode(),
        }
        .into())
    }
}

fn phase_allowed(a: &Circuit, b: &Circuit) -> bool {
    a.mode() == SemanticsMode::QuantumComplex || b.mode() == SemanticsMode::QuantumComplex
}

pub fn circuits_equivalent(c1: &Circuit, c2: &Circuit, eps: f64) -> Result<EquivalenceReport, AnalysisError> {
    require_quantum(c1)?;
    require_quantum(c2)?;
    if c1.n() != c2.n() {
        return Err(CircuitError::WidthMismatch {
            left: c1.n(),
            right: c2.n(),
        }
        .into());
    }
    let sim = Simulator::default();
    let m1 = sim.full_matrix(c1)?;
    let m2 = sim.full_matrix(c2)?;
    matrices_equivalent(&m1, &m2, phase_allowed(c1, c2), eps)
}

/// Compares `extended`, which carries one extra last register initialized
/// to 0, against `original` on the subspace where that register is 0. Mass
/// leaking into the ancilla-1 half counts as deviation.
pub fn equivalent_with_clean_ancilla(
    original: &Circuit,
    extended: &Circuit,
    eps: f64,
) -> Result<EquivalenceReport, AnalysisError> {
    require_quantum(original)?;
    require_quantum(extended)?;
    if extended.n() != original.n() + 1 {
        return Err(CircuitError::WidthMismatch {
            left: original.n() + 1,
            right: extended.n(),
        }
        .into());
    }
    if extended.n() > FULL_MATRIX_MAX_REGISTERS {
        return Err(crate::error::SimError::WidthCap {
            n: extended.n(),
            cap: FULL_MATRIX_MAX_REGISTERS,
        }
        .into());
    }
    let sim = Simulator::default();
    let m_orig = sim.full_matrix(original)?;
    let m_ext = sim.full_matrix(extended)?;
    let dim = m_orig.rows();
    let mut restricted = Matrix::identity(dim);
    let mut leak: f64 = 0.0;
    for col in 0..dim {
        let mut col_leak = 0.0;
        for row in 0..dim {
            restricted[(row, col)] = m_ext[(2 * row, 2 * col)];
            col_leak += m_ext[(2 * row + 1, 2 * col)].norm_sqr();
        }
        leak = leak.max(Float::sqrt(col_leak));
    }
    let mut report = matrices_equivalent(&restricted, &m_orig, phase_allowed(original, extended), eps)?;
    report.max_deviation = report.max_deviation.max(leak);
    report.equivalent = report.max_deviation <= eps;
    Ok(report)
}
