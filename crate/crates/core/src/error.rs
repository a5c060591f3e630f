use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::circuit::{SemanticsMode, Violation};
use crate::linalg::Field;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("vectors and matrices need at least one entry")]
    Empty,
    #[error("non-finite entry")]
    NonFinite,
    #[error("{rows}x{cols} matrix needs {} entries, got {got}", rows * cols)]
    EntryCount { rows: usize, cols: usize, got: usize },
    #[error("ragged matrix rows: expected {expected} entries, got {got}")]
    RaggedRows { expected: usize, got: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("operation requires a {expected}-valued operand")]
    FieldMismatch { expected: Field },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GateError {
    #[error("unknown gate `{0}`")]
    Unknown(String),
    #[error("coin-flip bias {name}={value} outside [0,1]")]
    BiasOutOfRange { name: &'static str, value: f64 },
    #[error("gate arity must be at least 1")]
    ZeroArity,
    #[error("gate `{name}` of arity {arity} needs a {dim}x{dim} matrix, got {rows}x{cols}")]
    Dimension {
        name: String,
        arity: usize,
        dim: usize,
        rows: usize,
        cols: usize,
    },
    #[error("gate `{0}` cannot use a built-in gate name")]
    ReservedName(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircuitError {
    #[error("invalid circuit: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error("register count mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },
    #[error("{gate} is not admissible in {mode} mode")]
    ModeMismatch { gate: String, mode: SemanticsMode },
    #[error("gate {0} has no straight-line form")]
    NotStraightLine(String),
    #[error("{operation} requires {expected}, circuit is {found}")]
    WrongMode {
        operation: &'static str,
        expected: &'static str,
        found: SemanticsMode,
    },
}

fn join(vs: &[Violation]) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    for (i, v) in vs.iter().enumerate() {
        if i > 0 {
            out.push_str("; ");
        }
        let _ = write!(out, "{v}");
    }
    out
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error("expected {expected} input bits, got {got}")]
    InputLength { expected: usize, got: usize },
    #[error("input bit {value} at position {position} is not 0 or 1")]
    InputBit { position: usize, value: u8 },
    #[error("{n} registers exceeds the width cap of {cap}")]
    WidthCap { n: usize, cap: usize },
    #[error("output count {ell} out of range 1..={n}")]
    OutputRange { ell: usize, n: usize },
    #[error("state invariant violated after gate {step}: {detail}")]
    Invariant { step: usize, detail: String },
    #[error("state is not normalized (total probability {total})")]
    Unnormalized { total: f64 },
    #[error("{0}")]
    Gate(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error("register r{register} is not a noninput register of a {n}-register circuit with {k} inputs")]
    BadAncilla { register: usize, n: usize, k: usize },
    #[error("probability {0} outside [0,1]")]
    ProbabilityRange(f64),
    #[error("acceptance sets overlap")]
    Overlap,
    #[error("bad interval: {0}")]
    BadInterval(String),
}
