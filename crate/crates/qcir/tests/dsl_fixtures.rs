mod common;

use proptest::prelude::*;
use qcir::dsl::{self, ErrorKind};
use qcir_core::gates::{self, Builtin, CoinFlipParams};
use qcir_core::{Circuit, SemanticsMode};
use std::sync::Arc;

#[test]
fn fixtures_round_trip_to_a_fixpoint() {
    let names = common::good_fixtures();
    assert!(names.len() >= 15, "{names:?}");
    for name in names {
        let c = common::fixture(&name);
        let text = dsl::serialize(&c);
        let again = dsl::parse(&text).unwrap_or_else(|e| panic!("{name}: {e:?}\n{text}"));
        assert!(dsl::structurally_equal(&c, &again, 1e-12), "{name}");
        assert_eq!(dsl::serialize(&again), text, "{name}");
    }
}

#[test]
fn malformed_fixtures_report_their_line() {
    for (name, line) in common::MALFORMED {
        let errs = dsl::parse(&common::fixture_text(&format!("malformed/{name}"))).unwrap_err();
        assert_eq!(errs.len(), 1, "{name}: {errs:?}");
        assert_eq!(errs[0].span.line, line, "{name}: {}", errs[0]);
        assert!(!errs[0].message.is_empty());
    }
}

#[test]
fn error_kinds() {
    let kind = |name: &str| dsl::parse(&common::fixture_text(&format!("malformed/{name}"))).unwrap_err()[0].kind;
    assert_eq!(kind("02_bad_character.qcir"), ErrorKind::Lex);
    assert_eq!(kind("01_unknown_statement.qcir"), ErrorKind::Syntax);
    assert_eq!(kind("07_bad_number.qcir"), ErrorKind::Syntax);
    assert_eq!(kind("04_duplicate_register.qcir"), ErrorKind::Semantic);
    assert_eq!(kind("10_not_admissible.qcir"), ErrorKind::Semantic);
}

#[test]
fn independent_errors_are_all_reported() {
    let errs = dsl::parse(&common::fixture_text("malformed/multiple_errors.qcir")).unwrap_err();
    let lines: Vec<usize> = errs.iter().map(|e| e.span.line).collect();
    assert_eq!(lines, [5, 6, 7, 8, 9], "{errs:?}");
}

#[test]
fn example_program_keeps_gate_order() {
    let c = common::fixture("example3.qcir");
    assert_eq!(c.gates().len(), 3);
    let names: Vec<&str> = c.gates().iter().map(|g| g.gate().name()).collect();
    assert_eq!(names, ["AND", "NOT", "OR"]);
    assert_eq!(
        c.to_straight_line().unwrap(),
        ["r2 := r2 AND r1", "r1 := NOT r1", "r2 := r2 OR r3"]
    );
}

#[test]
fn straight_line_listing_parses_back() {
    let c = common::fixture("example3.qcir");
    let mut src = String::from("registers 3\nmode deterministic\ninputs 3\noutputs 1\ncircuit example3\n");
    for l in c.to_straight_line().unwrap() {
        src.push_str(&l);
        src.push('\n');
    }
    assert_eq!(dsl::parse(&src).unwrap(), c);
}

#[test]
fn identical_sources_give_identical_circuits() {
    for name in common::good_fixtures() {
        assert_eq!(common::fixture(&name), common::fixture(&name));
    }
}

fn arb_circuit() -> impl Strategy<Value = Circuit> {
    let mode = prop::sample::select(SemanticsMode::ALL.to_vec());
    (mode, 1usize..=5, any::<u64>())
        .prop_flat_map(|(mode, n, _)| {
            let gate = (
                0usize..8,
                prop::collection::vec(1usize..=n, 3),
                0.0f64..=1.0,
                0.0f64..=1.0,
            );
            (
                Just(mode),
                Just(n),
                0..=n,
                1..=n,
                prop::collection::vec(any::<bool>(), n),
                prop::collection::vec(gate, 0..12),
            )
        })
        .prop_map(|(mode, n, k, ell, inits, gs)| {
            let mut b = Circuit::builder("prop", mode, n).inputs(k).outputs(ell);
            for r in k + 1..=n {
                b = b.init(r, inits[r - 1] as u8);
            }
            let palette: &[Builtin] = match mode {
                SemanticsMode::Deterministic | SemanticsMode::Probabilistic => {
                    &[Builtin::Not, Builtin::And, Builtin::Or, Builtin::Cnot, Builtin::Toffoli]
                }
                SemanticsMode::QuantumReal => &[Builtin::H, Builtin::Z, Builtin::Cnot, Builtin::T, Builtin::Toffoli],
                SemanticsMode::QuantumComplex => &[Builtin::H, Builtin::Phase8, Builtin::Cnot, Builtin::Tinv],
            };
            for (i, (choice, regs, p, q)) in gs.into_iter().enumerate() {
                let mut targets = Vec::new();
                for r in regs {
                    if !targets.contains(&r) {
                        targets.push(r);
                    }
                }
                if mode == SemanticsMode::Probabilistic && choice == 7 {
                    let flip = gates::coin_flip(CoinFlipParams::new(p, q).unwrap());
                    b = b.gate(Arc::new(flip), &targets[..1]);
                    continue;
                }
                if mode == SemanticsMode::QuantumComplex && choice == 6 {
                    let m = gates::builtin(Builtin::H)
                        .matrix()
                        .scale(qcir_core::Scalar::new(p, (1.0 - p * p).sqrt()));
                    b = b.gate(Arc::new(gates::custom(&format!("PH{i}"), 1, m).unwrap()), &targets[..1]);
                    continue;
                }
                let g = palette[choice % palette.len()];
                if g.arity() <= targets.len() {
                    b = b.builtin(g, &targets[..g.arity()]);
                }
            }
            b.build().unwrap()
        })
}

proptest! {
    #[test]
    fn serialize_then_parse_is_identity(c in arb_circuit()) {
        let text = dsl::serialize(&c);
        let again = dsl::parse(&text).unwrap();
        prop_assert!(dsl::structurally_equal(&c, &again, 1e-12), "{}", text);
        prop_assert_eq!(dsl::serialize(&again), text);
    }
}
