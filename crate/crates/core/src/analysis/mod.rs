//! Verification passes, circuit transforms, and acceptance criteria.

mod acceptance;
mod equivalence;
mod transform;
mod verify;

pub use acceptance::{evaluate_acceptance, AcceptanceCriterion, Interval, IntervalSet, Verdict};
pub use equivalence::{circuits_equivalent, equivalent_with_clean_ancilla, matrices_equivalent, EquivalenceReport};
pub use transform::{lift_to_quantum_real, rho_transform, toffoli_to_cht, TOFFOLI_TEMPLATE};
pub use verify::{ancilla_leak, ancilla_leak_with, check_clean_ancilla, check_reversible, simplex_membership};
