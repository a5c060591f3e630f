//! Circuit data model.
//!
//! Registers are numbered `1..=n`. The first `k` registers are inputs and the
//! first `ell` are outputs; every noninput register carries a fixed initial
//! bit. Gates apply in list order.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::CircuitError;
use crate::gates::{Builtin, ClassFlags, GateSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemanticsMode {
    Deterministic,
    Probabilistic,
    QuantumReal,
    QuantumComplex,
}

impl SemanticsMode {
    pub const ALL: [SemanticsMode; 4] = [
        SemanticsMode::Deterministic,
        SemanticsMode::Probabilistic,
        SemanticsMode::QuantumReal,
        SemanticsMode::QuantumComplex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SemanticsMode::Deterministic => "deterministic",
            SemanticsMode::Probabilistic => "probabilistic",
            SemanticsMode::QuantumReal => "quantum-real",
            SemanticsMode::QuantumComplex => "quantum-complex",
        }
    }

    /// The matrix class every gate must belong to in this mode.
    pub fn required_class(self) -> &'static str {
        match self {
            SemanticsMode::Deterministic => "boolean",
            SemanticsMode::Probabilistic => "stochastic",
            SemanticsMode::QuantumReal => "orthogonal",
            SemanticsMode::QuantumComplex => "unitary",
        }
    }

    pub fn admits(self, flags: ClassFlags) -> bool {
        match self {
            SemanticsMode::Deterministic => flags.boolean,
            SemanticsMode::Probabilistic => flags.stochastic,
            SemanticsMode::QuantumReal => flags.orthogonal,
            SemanticsMode::QuantumComplex => flags.unitary,
        }
    }

    pub fn is_quantum(self) -> bool {
        matches!(self, SemanticsMode::QuantumReal | SemanticsMode::QuantumComplex)
    }

    /// Deterministic, probabilistic and quantum-real states have real amplitudes.
    pub fn is_real(self) -> bool {
        self != SemanticsMode::QuantumComplex
    }
}

impl fmt::Display for SemanticsMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownMode(pub String);

impl fmt::Display for UnknownMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown mode `{}`", self.0)
    }
}

impl FromStr for SemanticsMode {
    type Err = UnknownMode;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SemanticsMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| UnknownMode(s.to_string()))
    }
}

/// One gate acting on an ordered list of registers.
#[derive(Debug, Clone, PartialEq)]
pub struct GateApplication {
    gate: Arc<GateSpec>,
    targets: Vec<usize>,
}

impl GateApplication {
    pub fn new(gate: Arc<GateSpec>, targets: Vec<usize>) -> Self {
        GateApplication { gate, targets }
    }

    pub fn gate(&self) -> &GateSpec {
        &self.gate
    }

    pub fn gate_arc(&self) -> &Arc<GateSpec> {
        &self.gate
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    /// Problems with this application in an `n`-register circuit of `mode`.
    pub fn violations(&self, n: usize, mode: SemanticsMode, position: Option<usize>) -> Vec<Violation> {
        let mut out = Vec::new();
        let gate = self.gate.to_string();
        if self.targets.len() != self.gate.arity() {
            out.push(Violation::Arity {
                position,
                gate: gate.clone(),
                arity: self.gate.arity(),
                got: self.targets.len(),
            });
        }
        for (i, &r) in self.targets.iter().enumerate() {
            if r == 0 || r > n {
                out.push(Violation::RegisterOutOfRange {
                    position,
                    register: r,
                    n,
                });
            } else if self.targets[..i].contains(&r) {
                out.push(Violation::DuplicateRegister { position, register: r });
            }
        }
        if !mode.admits(self.gate.flags()) {
            out.push(Violation::NotAdmissible {
                position,
                gate,
                class: mode.required_class(),
                mode,
            });
        }
        out
    }
}

/// A single problem reported by validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoRegisters,
    InputsExceedRegisters {
        k: usize,
        n: usize,
    },
    OutputsExceedRegisters {
        ell: usize,
        n: usize,
    },
    InitOnInput {
        register: usize,
    },
    InitOutOfRange {
        register: usize,
        n: usize,
    },
    InitValue {
        register: usize,
        value: u8,
    },
    Arity {
        position: Option<usize>,
        gate: String,
        arity: usize,
        got: usize,
    },
    RegisterOutOfRange {
        position: Option<usize>,
        register: usize,
        n: usize,
    },
    DuplicateRegister {
        position: Option<usize>,
        register: usize,
    },
    NotAdmissible {
        position: Option<usize>,
        gate: String,
        class: &'static str,
        mode: SemanticsMode,
    },
}

impl Violation {
    /// Index of the offending gate in the gate list, if the violation is about a gate.
    pub fn position(&self) -> Option<usize> {
        match self {
            Violation::Arity { position, .. }
            | Violation::RegisterOutOfRange { position, .. }
            | Violation::DuplicateRegister { position, .. }
            | Violation::NotAdmissible { position, .. } => *position,
            _ => None,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = |f: &mut fmt::Formatter<'_>, p: &Option<usize>| match p {
            Some(i) => write!(f, "gate #{}: ", i + 1),
            None => Ok(()),
        };
        match self {
            Violation::NoRegisters => f.write_str("circuit needs at least one register"),
            Violation::InputsExceedRegisters { k, n } => write!(f, "{k} inputs exceed {n} registers"),
            Violation::OutputsExceedRegisters { ell, n } => write!(f, "{ell} outputs exceed {n} registers"),
            Violation::InitOnInput { register } => write!(f, "r{register} is an input and cannot be initialized"),
            Violation::InitOutOfRange { register, n } => {
                write!(f, "init of r{register} out of range 1..={n}")
            }
            Violation::InitValue { register, value } => {
                write!(f, "init value {value} for r{register} is not 0 or 1")
            }
            Violation::Arity {
                position,
                gate,
                arity,
                got,
            } => {
                at(f, position)?;
                write!(f, "{gate} takes {arity} registers, got {got}")
            }
            Violation::RegisterOutOfRange { position, register, n } => {
                at(f, position)?;
                write!(f, "register r{register} out of range 1..={n}")
            }
            Violation::DuplicateRegister { position, register } => {
                at(f, position)?;
                write!(f, "duplicate register r{register}")
            }
            Violation::NotAdmissible {
                position,
                gate,
                class,
                mode,
            } => {
                at(f, position)?;
                write!(f, "gate {gate} not {class} (required by {mode} mode)")
            }
        }
    }
}

/// An unvalidated circuit description. [`CircuitBuilder::build`] turns it
/// into a [`Circuit`] when [`CircuitBuilder::validate`] reports nothing.
#[derive(Debug, Clone)]
pub struct CircuitBuilder {
    name: String,
    mode: SemanticsMode,
    n: usize,
    k: usize,
    ell: usize,
    inits: Vec<(usize, u8)>,
    gates: Vec<GateApplication>,
}

impl CircuitBuilder {
    pub fn new(name: &str, mode: SemanticsMode, n: usize) -> Self {
        CircuitBuilder {
            name: name.to_string(),
            mode,
            n,
            k: 0,
            ell: n,
            inits: Vec::new(),
            gates: Vec::new(),
        }
    }

    pub fn inputs(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn outputs(mut self, ell: usize) -> Self {
        self.ell = ell;
        self
    }

    /// Sets the initial value of a noninput register.
    pub fn init(mut self, register: usize, value: u8) -> Self {
        self.inits.push((register, value));
        self
    }

    pub fn gate(mut self, gate: Arc<GateSpec>, targets: &[usize]) -> Self {
        self.gates.push(GateApplication::new(gate, targets.to_vec()));
        self
    }

    pub fn builtin(self, b: Builtin, targets: &[usize]) -> Self {
        self.gate(Arc::new(crate::gates::builtin(b)), targets)
    }

    pub fn push(&mut self, ga: GateApplication) {
        self.gates.push(ga);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> SemanticsMode {
        self.mode
    }

    /// Every problem with this description; empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = self.header_violations();
        for (i, ga) in self.gates.iter().enumerate() {
            out.extend(ga.violations(self.n, self.mode, Some(i)));
        }
        out
    }

    /// Violations that do not involve any gate.
    pub fn header_violations(&self) -> Vec<Violation> {
        let (n, k) = (self.n, self.k);
        let mut out = Vec::new();
        if n == 0 {
            out.push(Violation::NoRegisters);
        }
        if k > n {
            out.push(Violation::InputsExceedRegisters { k, n });
        }
        if self.ell > n {
            out.push(Violation::OutputsExceedRegisters { ell: self.ell, n });
        }
        for &(register, value) in &self.inits {
            if register == 0 || register > n {
                out.push(Violation::InitOutOfRange { register, n });
            } else if register <= k {
                out.push(Violation::InitOnInput { register });
            }
            if value > 1 {
                out.push(Violation::InitValue { register, value });
            }
        }
        out
    }

    pub fn build(self) -> Result<Circuit, CircuitError> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(CircuitError::Invalid(violations));
        }
        let mut ancilla_init = vec![0u8; self.n - self.k];
        for (register, value) in self.inits {
            ancilla_init[register - self.k - 1] = value;
        }
        Ok(Circuit {
            name: self.name,
            mode: self.mode,
            n: self.n,
            k: self.k,
            ell: self.ell,
            ancilla_init,
            gates: self.gates,
        })
    }
}

/// A validated circuit. Edits return new values.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    name: String,
    mode: SemanticsMode,
    n: usize,
    k: usize,
    ell: usize,
    ancilla_init: Vec<u8>,
    gates: Vec<GateApplication>,
}

impl Circuit {
    pub fn builder(name: &str, mode: SemanticsMode, n: usize) -> CircuitBuilder {
        CircuitBuilder::new(name, mode, n)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mode(&self) -> SemanticsMode {
        self.mode
    }

    /// Register count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Input count.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Output count.
    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Initial bits of registers `k+1..=n`.
    pub fn ancilla_init(&self) -> &[u8] {
        &self.ancilla_init
    }

    /// Initial bit of a noninput register.
    pub fn init_of(&self, register: usize) -> Option<u8> {
        register
            .checked_sub(self.k + 1)
            .and_then(|i| self.ancilla_init.get(i).copied())
    }

    pub fn gates(&self) -> &[GateApplication] {
        &self.gates
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Re-runs every check. Always empty for a constructed circuit.
    pub fn validate(&self) -> Vec<Violation> {
        self.to_builder().validate()
    }

    pub fn to_builder(&self) -> CircuitBuilder {
        CircuitBuilder {
            name: self.name.clone(),
            mode: self.mode,
            n: self.n,
            k: self.k,
            ell: self.ell,
            inits: self
                .ancilla_init
                .iter()
                .enumerate()
                .map(|(i, &v)| (self.k + 1 + i, v))
                .collect(),
            gates: self.gates.clone(),
        }
    }

    pub fn append(&self, ga: GateApplication) -> Result<Circuit, CircuitError> {
        let violations = ga.violations(self.n, self.mode, Some(self.gates.len()));
        if !violations.is_empty() {
            return Err(CircuitError::Invalid(violations));
        }
        let mut out = self.clone();
        out.gates.push(ga);
        Ok(out)
    }

    /// Gates of `self` followed by gates of `other`; metadata from `self`.
    pub fn concat(&self, other: &Circuit) -> Result<Circuit, CircuitError> {
        if self.n != other.n {
            return Err(CircuitError::WidthMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if let Some(bad) = other.gates.iter().find(|ga| !self.mode.admits(ga.gate().flags())) {
            return Err(CircuitError::ModeMismatch {
                gate: bad.gate().to_string(),
                mode: self.mode,
            });
        }
        let mut out = self.clone();
        out.gates.extend(other.gates.iter().cloned());
        Ok(out)
    }

    /// The same circuit reinterpreted under another mode.
    pub fn with_mode(&self, mode: SemanticsMode) -> Result<Circuit, CircuitError> {
        let mut b = self.to_builder();
        b.mode = mode;
        b.build()
    }

    pub fn renamed(&self, name: &str) -> Circuit {
        Circuit {
            name: name.to_string(),
            ..self.clone()
        }
    }

    /// Straight-line program listing, one assignment per gate.
    pub fn to_straight_line(&self) -> Result<Vec<String>, CircuitError> {
        if self.mode != SemanticsMode::Deterministic {
            return Err(CircuitError::WrongMode {
                operation: "straight-line listing",
                expected: "deterministic",
                found: self.mode,
            });
        }
        self.gates
            .iter()
            .map(|ga| {
                let t = ga.targets();
                match ga.gate().builtin() {
                    Some(Builtin::Not) => Ok(alloc::format!("r{0} := NOT r{0}", t[0])),
                    Some(b) => match b.connective() {
                        Some(op) => Ok(alloc::format!("r{1} := r{1} {op} r{0}", t[0], t[1])),
                        None => Err(CircuitError::NotStraightLine(ga.gate().to_string())),
                    },
                    None => Err(CircuitError::NotStraightLine(ga.gate().to_string())),
                }
            })
            .collect()
    }
}
