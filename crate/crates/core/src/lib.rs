//! A unified circuit model over `n` bit registers.
//!
//! The same [`Circuit`] value can be read in four semantics: deterministic
//! Boolean, probabilistic (columnwise stochastic gates), real-amplitude
//! quantum (orthogonal gates) and complex-amplitude quantum (unitary gates).
//!
//! - [`linalg`]: dense vectors and matrices, norms, matrix-class predicates
//!   and the real embedding `ρ` of complex matrices.
//! - [`gates`]: the built-in gate library, coin flips and custom gates.
//! - [`circuit`]: the circuit model and its validation.
//! - [`sim`]: state-vector simulation and output observation.
//! - [`analysis`]: reversibility, clean ancillas, equivalence up to global
//!   phase, the complex-to-real transform, Toffoli decomposition and
//!   acceptance criteria.
//!
//! ```
//! use qcir_core::{Circuit, SemanticsMode, gates::Builtin, sim};
//!
//! let hzh = Circuit::builder("hzh", SemanticsMode::QuantumReal, 1)
//!     .builtin(Builtin::H, &[1])
//!     .builtin(Builtin::Z, &[1])
//!     .builtin(Builtin::H, &[1])
//!     .build()
//!     .unwrap();
//! let out = sim::observe_outputs(&sim::run(&hzh, &[]).unwrap(), 1).unwrap();
//! assert!((out.prob("1") - 1.0).abs() < 1e-12);
//! ```
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod analysis;
pub mod circuit;
pub mod error;
pub mod gates;
pub mod linalg;
pub mod sim;

pub use circuit::{Circuit, CircuitBuilder, GateApplication, SemanticsMode, Violation};
pub use error::{AnalysisError, CircuitError, GateError, LinalgError, SimError};
pub use gates::{Builtin, ClassFlags, CoinFlipParams, GateSpec};
pub use linalg::{Field, Matrix, Scalar, Vector};
pub use sim::{BasisState, OutcomeDistribution, SimOptions, Simulator, StateVector};
