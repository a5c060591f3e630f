//! File format, command line and acceptance criteria syntax for
//! [`qcir_core`] circuits.

pub mod cli;
pub mod criterion;
pub mod dsl;

pub use qcir_core;
