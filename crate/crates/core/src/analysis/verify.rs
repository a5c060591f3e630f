//! Reversibility, clean-ancilla and simplex checks.

use alloc::vec::Vec;

use crate::circuit::{Circuit, SemanticsMode};
use crate::error::AnalysisError;
use crate::linalg::{self, DEFAULT_EPS};
use crate::sim::{Simulator, StateVector};

/// Whether the circuit's whole matrix is invertible in its mode's sense:
/// a permutation for the classical modes, orthogonal or unitary otherwise.
pub fn check_reversible(c: &Circuit) -> Result<bool, AnalysisError> {
    let m = Simulator::default().full_matrix(c)?;
    Ok(match c.mode() {
        SemanticsMode::Deterministic | SemanticsMode::Probabilistic => linalg::is_permutation(&m, DEFAULT_EPS)?,
        SemanticsMode::QuantumReal => linalg::is_orthogonal(&m, DEFAULT_EPS)?,
        SemanticsMode::QuantumComplex => linalg::is_unitary(&m, DEFAULT_EPS)?,
    })
}

fn check_ancilla_set(c: &Circuit, ancillas: &[usize]) -> Result<(), AnalysisError> {
    match ancillas.iter().find(|&&r| r <= c.k() || r > c.n()) {
        Some(&register) => Err(AnalysisError::BadAncilla {
            register,
            n: c.n(),
            k: c.k(),
        }),
        None => Ok(()),
    }
}

/// Largest probability mass, over all inputs, on final states where some
/// listed ancilla differs from its initial value.
pub fn ancilla_leak(c: &Circuit, ancillas: &[usize]) -> Result<f64, AnalysisError> {
    ancilla_leak_with(&Simulator::default(), c, ancillas)
}

pub fn ancilla_leak_with(sim: &Simulator, c: &Circuit, ancillas: &[usize]) -> Result<f64, AnalysisError> {
    check_ancilla_set(c, ancillas)?;
    let n = c.n();
    // expected value of each ancilla bit, as (bit position, bit)
    let expected: Vec<(usize, usize)> = ancillas
        .iter()
        .map(|&r| (n - r, c.init_of(r).unwrap_or(0) as usize))
        .collect();
    let mut worst: f64 = 0.0;
    for input in 0..1usize << c.k() {
        let bits: Vec<u8> = (0..c.k()).map(|i| ((input >> (c.k() - 1 - i)) & 1) as u8).collect();
        let s = sim.run(c, &bits)?;
        let leak: f64 = s
            .probabilities()?
            .iter()
            .enumerate()
            .filter(|(idx, _)| expected.iter().any(|&(pos, bit)| (idx >> pos) & 1 != bit))
            .map(|(_, p)| p)
            .sum();
        worst = worst.max(leak);
    }
    Ok(worst)
}

pub fn check_clean_ancilla(c: &Circuit, ancillas: &[usize], eps: f64) -> Result<bool, AnalysisError> {
    Ok(ancilla_leak(c, ancillas)? <= eps)
}

/// Nonnegative real entries summing to 1, each within `eps`.
pub fn simplex_membership(s: &StateVector, eps: f64) -> bool {
    if s.amplitudes().iter().any(|z| z.im != 0.0) {
        return false;
    }
    let nonneg = s.amplitudes().iter().all(|z| z.re >= -eps);
    let l1 = s.l1_norm().unwrap_or(f64::INFINITY);
    nonneg && (l1 - 1.0).abs() <= eps
}
