//! Circuit rewrites: complex-to-real embedding and Toffoli substitution.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::circuit::{Circuit, CircuitBuilder, GateApplication, SemanticsMode};
use crate::error::{AnalysisError, CircuitError};
use crate::gates::{self, Builtin, GateSpec};
use crate::linalg::{rho_embed, Field};

/// Replaces every complex gate `M` on targets `t` by the real gate `ρ(M)` on
/// `(t..., n+1)`, where `n+1` is a new ancilla initialized to 0. Real gates are
/// kept as they are.
pub fn rho_transform(c: &Circuit) -> Result<Circuit, AnalysisError> {
    if c.mode() != SemanticsMode::QuantumComplex {
        return Err(CircuitError::WrongMode {
            operation: "the complex-to-real transform",
            expected: "quantum-complex",
            found: c.mode(),
        }
        .into());
    }
    let ancilla = c.n() + 1;
    let mut names: BTreeSet<String> = c.gates().iter().map(|ga| ga.gate().name().to_string()).collect();
    // one embedded gate per distinct source gate
    let mut cache: Vec<(Arc<GateSpec>, Arc<GateSpec>)> = Vec::new();
    let mut b = extend(c, SemanticsMode::QuantumReal);
    for ga in c.gates() {
        if ga.gate().field() == Field::Real {
            b.push(ga.clone());
            continue;
        }
        let src = ga.gate_arc();
        let embedded = match cache.iter().find(|(s, _)| Arc::ptr_eq(s, src) || **s == **src) {
            Some((_, e)) => e.clone(),
            None => {
                let e = Arc::new(embed_gate(src, &mut names)?);
                cache.push((src.clone(), e.clone()));
                e
            }
        };
        let mut targets = ga.targets().to_vec();
        targets.push(ancilla);
        b.push(GateApplication::new(embedded, targets));
    }
    Ok(b.build()?)
}

fn embed_gate(g: &GateSpec, names: &mut BTreeSet<String>) -> Result<GateSpec, AnalysisError> {
    let m = rho_embed(g.matrix());
    let arity = g.arity() + 1;
    if let Some(b) = [Builtin::T, Builtin::Tinv]
        .into_iter()
        .find(|b| b.arity() == arity && gates::builtin(*b).matrix() == &m)
    {
        return Ok(gates::builtin(b));
    }
    let mut name = format!("rho_{}", g.name());
    let mut suffix = 2;
    while names.contains(&name) || gates::is_reserved_name(&name) {
        name = format!("rho_{}_{suffix}", g.name());
        suffix += 1;
    }
    names.insert(name.clone());
    Ok(gates::custom(&name, arity, m)?)
}

/// Builder with the same metadata as `c` plus one trailing ancilla at 0.
fn extend(c: &Circuit, mode: SemanticsMode) -> CircuitBuilder {
    let mut b = Circuit::builder(c.name(), mode, c.n() + 1)
        .inputs(c.k())
        .outputs(c.ell());
    for (i, &v) in c.ancilla_init().iter().enumerate() {
        b = b.init(c.k() + 1 + i, v);
    }
    b
}

/// Substitution for one Toffoli on local registers `1, 2` (controls), `3`
/// (target) and `4` (ancilla at 0). Obtained by embedding the usual
/// complex-amplitude decomposition over `{H, PHASE8, PHASE8†, CNOT}`:
/// each phase gate on `q` becomes `T` (or `TINV`) on `(q, 4)`.
pub const TOFFOLI_TEMPLATE: [(Builtin, &[usize]); 15] = [
    (Builtin::H, &[3]),
    (Builtin::Cnot, &[2, 3]),
    (Builtin::Tinv, &[3, 4]),
    (Builtin::Cnot, &[1, 3]),
    (Builtin::T, &[3, 4]),
    (Builtin::Cnot, &[2, 3]),
    (Builtin::Tinv, &[3, 4]),
    (Builtin::Cnot, &[1, 3]),
    (Builtin::T, &[2, 4]),
    (Builtin::T, &[3, 4]),
    (Builtin::H, &[3]),
    (Builtin::Cnot, &[1, 2]),
    (Builtin::T, &[1, 4]),
    (Builtin::Tinv, &[2, 4]),
    (Builtin::Cnot, &[1, 2]),
];

/// Real-amplitude view of a classical circuit whose gates are all reversible.
pub fn lift_to_quantum_real(c: &Circuit) -> Result<Circuit, AnalysisError> {
    match c.mode() {
        SemanticsMode::QuantumReal => Ok(c.clone()),
        SemanticsMode::QuantumComplex => Err(CircuitError::WrongMode {
            operation: "lifting",
            expected: "a real-valued mode",
            found: c.mode(),
        }
        .into()),
        _ => Ok(c.with_mode(SemanticsMode::QuantumReal)?),
    }
}

/// Replaces each Toffoli by [`TOFFOLI_TEMPLATE`], sharing a single ancilla
/// appended as the last register. Circuits without Toffoli gates come back
/// unchanged.
pub fn toffoli_to_cht(c: &Circuit) -> Result<Circuit, AnalysisError> {
    if c.mode() != SemanticsMode::QuantumReal {
        return Err(CircuitError::WrongMode {
            operation: "Toffoli decomposition",
            expected: "quantum-real",
            found: c.mode(),
        }
        .into());
    }
    let is_toffoli = |ga: &GateApplication| ga.gate().builtin() == Some(Builtin::Toffoli);
    if !c.gates().iter().any(is_toffoli) {
        return Ok(c.clone());
    }
    let ancilla = c.n() + 1;
    let palette: Vec<(Builtin, Arc<GateSpec>)> = [Builtin::H, Builtin::Cnot, Builtin::T, Builtin::Tinv]
        .into_iter()
        .map(|b| (b, Arc::new(gates::builtin(b))))
        .collect();
    let lookup = |b: Builtin| {
        palette
            .iter()
            .find(|(p, _)| *p == b)
            .map(|(_, g)| g.clone())
            .expect("template uses palette gates")
    };
    let mut b = extend(c, SemanticsMode::QuantumReal);
    for ga in c.gates() {
        if !is_toffoli(ga) {
            b.push(ga.clone());
            continue;
        }
        let t = ga.targets();
        let local = [t[0], t[1], t[2], ancilla];
        for (gate, regs) in TOFFOLI_TEMPLATE {
            let targets = regs.iter().map(|&r| local[r - 1]).collect();
            b.push(GateApplication::new(lookup(gate), targets));
        }
    }
    Ok(b.build()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::equivalence::{circuits_equivalent, equivalent_with_clean_ancilla};
    use crate::analysis::verify::check_clean_ancilla;
    use crate::linalg::{adjoint, Matrix};
    use crate::sim::{full_matrix, observe_outputs, run};

    fn phase8_dagger() -> Arc<GateSpec> {
        let m = adjoint(gates::builtin(Builtin::Phase8).matrix());
        Arc::new(gates::custom("PHASE8DG", 1, m).unwrap())
    }

    /// The complex-amplitude Toffoli decomposition the template is derived from.
    fn complex_toffoli_decomposition() -> Circuit {
        let p = Arc::new(gates::builtin(Builtin::Phase8));
        let pd = phase8_dagger();
        Circuit::builder("tof", SemanticsMode::QuantumComplex, 3)
            .builtin(Builtin::H, &[3])
            .builtin(Builtin::Cnot, &[2, 3])
            .gate(pd.clone(), &[3])
            .builtin(Builtin::Cnot, &[1, 3])
            .gate(p.clone(), &[3])
            .builtin(Builtin::Cnot, &[2, 3])
            .gate(pd.clone(), &[3])
            .builtin(Builtin::Cnot, &[1, 3])
            .gate(p.clone(), &[2])
            .gate(p.clone(), &[3])
            .builtin(Builtin::H, &[3])
            .builtin(Builtin::Cnot, &[1, 2])
            .gate(p, &[1])
            .gate(pd, &[2])
            .builtin(Builtin::Cnot, &[1, 2])
            .build()
            .unwrap()
    }

    fn toffoli_circuit(mode: SemanticsMode) -> Circuit {
        Circuit::builder("t", mode, 3)
            .inputs(3)
            .outputs(3)
            .builtin(Builtin::Toffoli, &[1, 2, 3])
            .build()
            .unwrap()
    }

    #[test]
    fn complex_decomposition_is_exactly_toffoli() {
        let r = circuits_equivalent(
            &complex_toffoli_decomposition(),
            &toffoli_circuit(SemanticsMode::QuantumComplex),
            1e-12,
        )
        .unwrap();
        assert!(r.equivalent, "{r:?}");
        assert!((r.scale - crate::linalg::ONE).norm() < 1e-12);
    }

    #[test]
    fn template_is_the_embedded_decomposition() {
        let embedded = rho_transform(&complex_toffoli_decomposition()).unwrap();
        let names: Vec<(String, Vec<usize>)> = embedded
            .gates()
            .iter()
            .map(|ga| (ga.gate().name().to_string(), ga.targets().to_vec()))
            .collect();
        let template: Vec<(String, Vec<usize>)> = TOFFOLI_TEMPLATE
            .iter()
            .map(|(b, t)| (b.name().to_string(), t.to_vec()))
            .collect();
        assert_eq!(names, template);
    }

    #[test]
    fn phase8_becomes_t() {
        let c = Circuit::builder("p", SemanticsMode::QuantumComplex, 1)
            .builtin(Builtin::Phase8, &[1])
            .build()
            .unwrap();
        let r = rho_transform(&c).unwrap();
        assert_eq!(r.n(), 2);
        assert_eq!(r.mode(), SemanticsMode::QuantumReal);
        assert_eq!(r.gates().len(), 1);
        assert_eq!(r.gates()[0].gate().builtin(), Some(Builtin::T));
        assert_eq!(r.gates()[0].targets(), &[1, 2]);
        assert_eq!(r.init_of(2), Some(0));
    }

    #[test]
    fn real_gates_pass_through() {
        let c = Circuit::builder("r", SemanticsMode::QuantumComplex, 2)
            .inputs(1)
            .outputs(1)
            .init(2, 1)
            .builtin(Builtin::H, &[1])
            .builtin(Builtin::Cnot, &[1, 2])
            .build()
            .unwrap();
        let r = rho_transform(&c).unwrap();
        assert_eq!(r.n(), 3);
        assert_eq!(r.k(), 1);
        assert_eq!(r.ell(), 1);
        assert_eq!(r.ancilla_init(), &[1, 0]);
        assert_eq!(r.gates(), c.gates());
    }

    #[test]
    fn custom_complex_gate_gets_embedded_once() {
        let y = gates::custom(
            "Y",
            1,
            Matrix::new(
                2,
                2,
                alloc::vec![
                    crate::linalg::ZERO,
                    -num_complex::Complex64::i(),
                    num_complex::Complex64::i(),
                    crate::linalg::ZERO,
                ],
            )
            .unwrap(),
        )
        .unwrap();
        let y = Arc::new(y);
        let c = Circuit::builder("y", SemanticsMode::QuantumComplex, 2)
            .gate(y.clone(), &[1])
            .gate(y, &[2])
            .build()
            .unwrap();
        let r = rho_transform(&c).unwrap();
        assert_eq!(r.gates()[0].gate().name(), "rho_Y");
        assert!(Arc::ptr_eq(r.gates()[0].gate_arc(), r.gates()[1].gate_arc()));
        let a = observe_outputs(&run(&c, &[]).unwrap(), 2).unwrap();
        let b = observe_outputs(&run(&r, &[]).unwrap(), 2).unwrap();
        assert!(a.max_difference(&b) <= 1e-12);
    }

    #[test]
    fn rho_structure_on_whole_circuit() {
        let c = complex_toffoli_decomposition();
        let r = rho_transform(&c).unwrap();
        let lhs = full_matrix(&r).unwrap();
        let rhs = rho_embed(&full_matrix(&c).unwrap());
        assert!(lhs.max_deviation(&rhs).unwrap() <= 1e-9);
    }

    #[test]
    fn rho_rejects_real_mode() {
        assert!(rho_transform(&toffoli_circuit(SemanticsMode::QuantumReal)).is_err());
    }

    #[test]
    fn single_toffoli_decomposes_cleanly() {
        let orig = toffoli_circuit(SemanticsMode::QuantumReal);
        let out = toffoli_to_cht(&orig).unwrap();
        assert_eq!(out.n(), 4);
        assert_eq!(out.gates().len(), TOFFOLI_TEMPLATE.len());
        assert!(out.gates().iter().all(|ga| matches!(
            ga.gate().builtin(),
            Some(Builtin::H | Builtin::Cnot | Builtin::T | Builtin::Tinv)
        )));
        let r = equivalent_with_clean_ancilla(&orig, &out, 1e-9).unwrap();
        assert!(r.equivalent, "{r:?}");
        assert!(check_clean_ancilla(&out, &[4], 1e-9).unwrap());
        let tof_i = Circuit::builder("ti", SemanticsMode::QuantumReal, 4)
            .builtin(Builtin::Toffoli, &[1, 2, 3])
            .build()
            .unwrap();
        // The template is exactly Toffoli ⊗ I on all 16 basis states.
        assert!(circuits_equivalent(&out, &tof_i, 1e-9).unwrap().equivalent);
    }

    #[test]
    fn ancilla_is_shared_and_only_added_when_needed() {
        let two = Circuit::builder("t2", SemanticsMode::QuantumReal, 4)
            .builtin(Builtin::Toffoli, &[1, 2, 3])
            .builtin(Builtin::H, &[4])
            .builtin(Builtin::Toffoli, &[4, 3, 1])
            .build()
            .unwrap();
        let out = toffoli_to_cht(&two).unwrap();
        assert_eq!(out.n(), 5);
        assert_eq!(out.gates().len(), 2 * TOFFOLI_TEMPLATE.len() + 1);
        assert!(equivalent_with_clean_ancilla(&two, &out, 1e-9).unwrap().equivalent);

        let none = Circuit::builder("n", SemanticsMode::QuantumReal, 2)
            .builtin(Builtin::Cnot, &[1, 2])
            .build()
            .unwrap();
        assert_eq!(toffoli_to_cht(&none).unwrap(), none);
        assert!(toffoli_to_cht(&toffoli_circuit(SemanticsMode::Deterministic)).is_err());
    }

    #[test]
    fn lifting() {
        let det = toffoli_circuit(SemanticsMode::Deterministic);
        assert_eq!(lift_to_quantum_real(&det).unwrap().mode(), SemanticsMode::QuantumReal);
        let and = Circuit::builder("a", SemanticsMode::Deterministic, 2)
            .builtin(Builtin::And, &[1, 2])
            .build()
            .unwrap();
        assert!(lift_to_quantum_real(&and).is_err());
    }
}
