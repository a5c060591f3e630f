//! State-vector evaluation in all four semantics modes.
//!
//! Basis index of `(x_1, ..., x_n)` is `Σ x_i 2^(n-i)`: register 1 is the most
//! significant bit. A gate's targets map onto its matrix index in listed
//! order, first listed most significant.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, GateApplication, SemanticsMode};
use crate::error::{CircuitError, SimError};
use crate::linalg::{self, Field, Matrix, Scalar, Vector, ONE, ZERO};

/// Default register cap for state vectors (16M amplitudes).
pub const DEFAULT_MAX_REGISTERS: usize = 24;
/// Register cap for materializing a whole-circuit matrix.
pub const FULL_MATRIX_MAX_REGISTERS: usize = 12;
/// Tolerance on l1 / l2 norm conservation.
pub const NORM_TOLERANCE: f64 = 1e-9;
/// Probabilistic coefficients in `(-NEGATIVE_CLAMP, 0)` are read as zero.
pub const NEGATIVE_CLAMP: f64 = 1e-12;

/// A definite assignment of bits to registers, register 1 first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisState {
    bits: Vec<u8>,
}

impl BasisState {
    pub fn new(bits: Vec<u8>) -> Result<Self, SimError> {
        if let Some((position, &value)) = bits.iter().enumerate().find(|(_, &b)| b > 1) {
            return Err(SimError::InputBit { position, value });
        }
        Ok(BasisState { bits })
    }

    pub fn from_index(index: usize, n: usize) -> Self {
        BasisState {
            bits: (0..n).map(|i| ((index >> (n - 1 - i)) & 1) as u8).collect(),
        }
    }

    pub fn index(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for BasisState {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .bytes()
            .enumerate()
            .map(|(position, c)| match c {
                b'0' => Ok(0),
                b'1' => Ok(1),
                other => Err(SimError::InputBit { position, value: other }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BasisState { bits })
    }
}

/// `2^n` amplitudes tagged with the semantics they evolve under.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    mode: SemanticsMode,
    amps: Vec<Scalar>,
}

impl StateVector {
    pub fn basis(n: usize, mode: SemanticsMode, index: usize) -> Self {
        let mut amps = vec![ZERO; 1 << n];
        amps[index] = ONE;
        StateVector { n, mode, amps }
    }

    /// Wraps raw amplitudes; the length must be a power of two.
    pub fn from_amplitudes(mode: SemanticsMode, amps: Vec<Scalar>) -> Result<Self, SimError> {
        if amps.is_empty() || !amps.len().is_power_of_two() {
            return Err(SimError::Gate(format!(
                "{} amplitudes is not a power of two",
                amps.len()
            )));
        }
        let n = amps.len().trailing_zeros() as usize;
        Ok(StateVector { n, mode, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> SemanticsMode {
        self.mode
    }

    pub fn amplitudes(&self) -> &[Scalar] {
        &self.amps
    }

    pub fn amplitude(&self, state: &BasisState) -> Scalar {
        self.amps[state.index()]
    }

    pub fn to_vector(&self) -> Vector {
        Vector::new(self.amps.clone()).expect("state vectors are nonempty")
    }

    pub fn field(&self) -> Field {
        self.to_vector().field()
    }

    pub fn l1_norm(&self) -> Option<f64> {
        linalg::l1_norm_of(&self.amps).ok()
    }

    pub fn l2_norm(&self) -> f64 {
        linalg::l2_norm_of(&self.amps)
    }

    /// Probability of each basis state: raw coefficients in the classical
    /// modes, squared moduli in the quantum modes.
    pub fn probabilities(&self) -> Result<Vec<f64>, SimError> {
        if self.mode.is_quantum() {
            return Ok(self.amps.iter().map(|z| z.norm_sqr()).collect());
        }
        self.amps
            .iter()
            .enumerate()
            .map(|(i, z)| {
                if z.re < -NEGATIVE_CLAMP || z.im != 0.0 {
                    Err(SimError::Invariant {
                        step: 0,
                        detail: format!("coefficient of basis state {i} is {z}"),
                    })
                } else {
                    Ok(z.re.max(0.0))
                }
            })
            .collect()
    }

    /// Checks norm conservation (and nonnegativity in the classical modes).
    pub fn check_invariants(&self, step: usize) -> Result<(), SimError> {
        let fail = |detail: String| Err(SimError::Invariant { step, detail });
        if self.mode.is_quantum() {
            let norm = self.l2_norm();
            if (norm - 1.0).abs() > NORM_TOLERANCE {
                return fail(format!("l2 norm {norm}"));
            }
            return Ok(());
        }
        if let Some(z) = self.amps.iter().find(|z| z.re < -NEGATIVE_CLAMP || z.im != 0.0) {
            return fail(format!("coefficient {z} outside the simplex"));
        }
        let norm = self.l1_norm().unwrap_or(f64::INFINITY);
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return fail(format!("l1 norm {norm}"));
        }
        Ok(())
    }

    /// Applies one gate in place.
    pub fn apply(&mut self, ga: &GateApplication) -> Result<(), SimError> {
        let violations = ga.violations(self.n, self.mode, None);
        if !violations.is_empty() {
            return Err(CircuitError::Invalid(violations).into());
        }
        apply_kernel(&mut self.amps, self.n, ga.targets(), ga.gate().matrix());
        Ok(())
    }
}

/// Nonzero entries of each matrix row.
struct SparseRows<T> {
    rows: Vec<Vec<(usize, T)>>,
}

impl<T: Copy> SparseRows<T> {
    fn new(m: &Matrix, pick: impl Fn(Scalar) -> Option<T>) -> Self {
        let rows = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter_map(|(j, &z)| pick(z).map(|v| (j, v)))
                    .collect()
            })
            .collect();
        SparseRows { rows }
    }
}

/// Inserts a zero bit at each of `positions` (ascending) into `x`.
#[inline]
fn deposit(mut x: usize, positions: &[usize]) -> usize {
    for &p in positions {
        let low = x & ((1 << p) - 1);
        x = ((x >> p) << (p + 1)) | low;
    }
    x
}

/// For each setting of the non-target bits, multiplies the `2^arity`
/// sub-vector addressed by `targets` by `m`.
fn apply_kernel(amps: &mut [Scalar], n: usize, targets: &[usize], m: &Matrix) {
    let arity = targets.len();
    let dim = 1usize << arity;
    let bitpos: Vec<usize> = targets.iter().map(|&r| n - r).collect();
    let offsets: Vec<usize> = (0..dim)
        .map(|sub| {
            (0..arity)
                .filter(|&j| (sub >> (arity - 1 - j)) & 1 == 1)
                .map(|j| 1usize << bitpos[j])
                .sum()
        })
        .collect();
    let mut sorted = bitpos;
    sorted.sort_unstable();
    let groups = 1usize << (n - arity);

    let real_path = m.field() == Field::Real && amps.iter().all(|z| z.im == 0.0);
    if real_path {
        let rows = SparseRows::new(m, |z| (z.re != 0.0).then_some(z.re));
        let mut input = vec![0.0f64; dim];
        for g in 0..groups {
            let base = deposit(g, &sorted);
            for (slot, off) in input.iter_mut().zip(&offsets) {
                *slot = amps[base + off].re;
            }
            for (row, entries) in rows.rows.iter().enumerate() {
                let acc: f64 = entries.iter().map(|&(col, v)| v * input[col]).sum();
                amps[base + offsets[row]] = Scalar::new(acc, 0.0);
            }
        }
    } else {
        let rows = SparseRows::new(m, |z| (z != ZERO).then_some(z));
        let mut input = vec![ZERO; dim];
        for g in 0..groups {
            let base = deposit(g, &sorted);
            for (slot, off) in input.iter_mut().zip(&offsets) {
                *slot = amps[base + off];
            }
            for (row, entries) in rows.rows.iter().enumerate() {
                let acc: Scalar = entries.iter().map(|&(col, v)| v * input[col]).sum();
                amps[base + offsets[row]] = acc;
            }
        }
    }
}

/// Map from output tuples to their probability. Zero-probability tuples are omitted.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution {
    ell: usize,
    probs: BTreeMap<BasisState, f64>,
}

impl OutcomeDistribution {
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn get(&self, outcome: &BasisState) -> f64 {
        self.probs.get(outcome).copied().unwrap_or(0.0)
    }

    /// Probability of the tuple spelled as a bit string, e.g. `"01"`.
    pub fn prob(&self, bits: &str) -> f64 {
        bits.parse::<BasisState>().map_or(0.0, |b| self.get(&b))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisState, f64)> {
        self.probs.iter().map(|(k, v)| (k, *v))
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.probs.values().sum()
    }

    /// Largest absolute difference over the union of supports.
    pub fn max_difference(&self, other: &OutcomeDistribution) -> f64 {
        self.probs
            .keys()
            .chain(other.probs.keys())
            .map(|k| (self.get(k) - other.get(k)).abs())
            .fold(0.0, f64::max)
    }
}

/// Marginal distribution of the first `ell` registers.
pub fn observe_outputs(s: &StateVector, ell: usize) -> Result<OutcomeDistribution, SimError> {
    if ell == 0 || ell > s.n {
        return Err(SimError::OutputRange { ell, n: s.n });
    }
    let shift = s.n - ell;
    let mut marginal = vec![0.0f64; 1 << ell];
    for (i, p) in s.probabilities()?.into_iter().enumerate() {
        marginal[i >> shift] += p;
    }
    let probs = marginal
        .into_iter()
        .enumerate()
        .filter(|&(_, p)| p > 0.0)
        .map(|(i, p)| (BasisState::from_index(i, ell), p))
        .collect();
    Ok(OutcomeDistribution { ell, probs })
}

/// Evaluation settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimOptions {
    pub max_registers: usize,
    /// Check norm conservation after every gate.
    pub check_invariants: bool,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions {
            max_registers: DEFAULT_MAX_REGISTERS,
            check_invariants: cfg!(debug_assertions),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Simulator {
    opts: SimOptions,
}

impl Simulator {
    pub fn new(opts: SimOptions) -> Self {
        Simulator { opts }
    }

    pub fn options(&self) -> SimOptions {
        self.opts
    }

    fn check_width(&self, n: usize, cap: usize) -> Result<(), SimError> {
        if n > cap {
            Err(SimError::WidthCap { n, cap })
        } else {
            Ok(())
        }
    }

    /// Inputs in registers `1..=k`, ancilla initial values in the rest.
    pub fn initial_state(&self, c: &Circuit, input: &[u8]) -> Result<StateVector, SimError> {
        let basis = initial_basis(c, input)?;
        self.check_width(c.n(), self.opts.max_registers)?;
        Ok(StateVector::basis(c.n(), c.mode(), basis.index()))
    }

    pub fn run(&self, c: &Circuit, input: &[u8]) -> Result<StateVector, SimError> {
        self.run_traced(c, input, |_, _| {})
    }

    /// Like [`Simulator::run`], calling `observe(step, state)` on the initial
    /// state (step 0) and after every gate (step `i`).
    pub fn run_traced(
        &self,
        c: &Circuit,
        input: &[u8],
        mut observe: impl FnMut(usize, &StateVector),
    ) -> Result<StateVector, SimError> {
        let mut s = self.initial_state(c, input)?;
        observe(0, &s);
        self.evolve(c, &mut s, &mut observe)?;
        Ok(s)
    }

    fn evolve(
        &self,
        c: &Circuit,
        s: &mut StateVector,
        observe: &mut impl FnMut(usize, &StateVector),
    ) -> Result<(), SimError> {
        for (i, ga) in c.gates().iter().enumerate() {
            s.apply(ga)?;
            if self.opts.check_invariants {
                s.check_invariants(i + 1)?;
            }
            observe(i + 1, s);
        }
        Ok(())
    }

    /// The `2^n x 2^n` matrix of the whole circuit, column `j` being the image
    /// of basis state `j` (inputs and ancilla values ignored).
    pub fn full_matrix(&self, c: &Circuit) -> Result<Matrix, SimError> {
        self.check_width(c.n(), FULL_MATRIX_MAX_REGISTERS.min(self.opts.max_registers))?;
        let dim = 1usize << c.n();
        let mut m = Matrix::zeros(dim, dim);
        for col in 0..dim {
            let mut s = StateVector::basis(c.n(), c.mode(), col);
            self.evolve(c, &mut s, &mut |_, _| {})?;
            for (row, &a) in s.amps.iter().enumerate() {
                m[(row, col)] = a;
            }
        }
        Ok(m)
    }
}

fn initial_basis(c: &Circuit, input: &[u8]) -> Result<BasisState, SimError> {
    if input.len() != c.k() {
        return Err(SimError::InputLength {
            expected: c.k(),
            got: input.len(),
        });
    }
    let mut bits = input.to_vec();
    bits.extend_from_slice(c.ancilla_init());
    BasisState::new(bits)
}

pub fn initial_state(c: &Circuit, input: &[u8]) -> Result<StateVector, SimError> {
    Simulator::default().initial_state(c, input)
}

/// Functional form of [`StateVector::apply`].
pub fn apply_gate(s: &StateVector, ga: &GateApplication) -> Result<StateVector, SimError> {
    let mut out = s.clone();
    out.apply(ga)?;
    Ok(out)
}

pub fn run(c: &Circuit, input: &[u8]) -> Result<StateVector, SimError> {
    Simulator::default().run(c, input)
}

pub fn full_matrix(c: &Circuit) -> Result<Matrix, SimError> {
    Simulator::default().full_matrix(c)
}

/// Tracks a single bit tuple through a circuit of Boolean gates.
pub fn run_deterministic(c: &Circuit, input: &[u8]) -> Result<BasisState, SimError> {
    let mut bits = initial_basis(c, input)?.bits;
    for ga in c.gates() {
        let t = ga.targets();
        let arity = t.len();
        let sub = t.iter().fold(0usize, |acc, &r| (acc << 1) | bits[r - 1] as usize);
        let image = ga
            .gate()
            .boolean_image(sub)
            .ok_or_else(|| SimError::Gate(format!("{} is not a Boolean gate", ga.gate())))?;
        for (j, &r) in t.iter().enumerate() {
            bits[r - 1] = ((image >> (arity - 1 - j)) & 1) as u8;
        }
    }
    Ok(BasisState { bits })
}

/// Draws one basis state with its mode-appropriate probability.
pub fn sample(s: &StateVector, seed: u64) -> Result<BasisState, SimError> {
    let probs = s.probabilities()?;
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > NORM_TOLERANCE {
        return Err(SimError::Unnormalized { total });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r: f64 = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut last = 0;
    for (i, &p) in probs.iter().enumerate() {
        if p <= 0.0 {
            continue;
        }
        acc += p;
        last = i;
        if r < acc {
            return Ok(BasisState::from_index(i, s.n));
        }
    }
    Ok(BasisState::from_index(last, s.n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{self, Builtin, CoinFlipParams};
    use alloc::string::ToString;
    use alloc::sync::Arc;
    use core::f64::consts::FRAC_1_SQRT_2;

    fn example3() -> Circuit {
        Circuit::builder("example", SemanticsMode::Deterministic, 3)
            .inputs(3)
            .builtin(Builtin::And, &[1, 2])
            .builtin(Builtin::Not, &[1])
            .builtin(Builtin::Or, &[3, 2])
            .build()
            .unwrap()
    }

    fn single(mode: SemanticsMode, gates: &[Builtin]) -> Circuit {
        gates
            .iter()
            .fold(Circuit::builder("c", mode, 1), |b, &g| b.builtin(g, &[1]))
            .build()
            .unwrap()
    }

    fn ga(b: Builtin, t: &[usize]) -> GateApplication {
        GateApplication::new(Arc::new(gates::builtin(b)), t.to_vec())
    }

    #[test]
    fn basis_index_is_lexicographic() {
        let b: BasisState = "011".parse().unwrap();
        assert_eq!(b.index(), 3);
        assert_eq!(BasisState::from_index(6, 3).to_string(), "110");
        assert!("012".parse::<BasisState>().is_err());
    }

    #[test]
    fn initial_state_examples() {
        let c = example3();
        let s = initial_state(&c, &[1, 0, 1]).unwrap();
        assert_eq!(s.amplitude(&"101".parse().unwrap()), ONE);
        assert_eq!(s.amplitudes().iter().filter(|&&z| z != ZERO).count(), 1);

        let anc = Circuit::builder("a", SemanticsMode::Deterministic, 3)
            .init(2, 1)
            .build()
            .unwrap();
        let s = initial_state(&anc, &[]).unwrap();
        assert_eq!(s.amplitude(&"010".parse().unwrap()), ONE);

        assert!(matches!(
            initial_state(&c, &[1, 2, 0]),
            Err(SimError::InputBit { position: 1, value: 2 })
        ));
        assert!(matches!(
            initial_state(&c, &[1]),
            Err(SimError::InputLength { expected: 3, got: 1 })
        ));
    }

    #[test]
    fn hadamard_on_zero() {
        let s = StateVector::basis(1, SemanticsMode::QuantumReal, 0);
        let out = apply_gate(&s, &ga(Builtin::H, &[1])).unwrap();
        assert_eq!(out.amplitudes()[0].re, FRAC_1_SQRT_2);
        assert_eq!(out.amplitudes()[1].re, FRAC_1_SQRT_2);
        let d = observe_outputs(&out, 1).unwrap();
        // (1/√2)² computed directly
        let half = FRAC_1_SQRT_2 * FRAC_1_SQRT_2;
        assert_eq!(d.prob("0"), half);
        assert_eq!(d.prob("1"), half);
    }

    #[test]
    fn coin_flip_on_zero() {
        let flip = gates::coin_flip(CoinFlipParams::new(5.0 / 8.0, 0.25).unwrap());
        let s = StateVector::basis(1, SemanticsMode::Probabilistic, 0);
        let out = apply_gate(&s, &GateApplication::new(Arc::new(flip), vec![1])).unwrap();
        assert_eq!(out.amplitudes(), &[Scalar::new(0.625, 0.0), Scalar::new(0.375, 0.0)]);
    }

    #[test]
    fn toffoli_on_110() {
        let s = StateVector::basis(3, SemanticsMode::Deterministic, 0b110);
        let out = apply_gate(&s, &ga(Builtin::Toffoli, &[1, 2, 3])).unwrap();
        assert_eq!(out.amplitudes()[0b111], ONE);
    }

    #[test]
    fn apply_rejects_inadmissible_gate() {
        let s = StateVector::basis(2, SemanticsMode::QuantumReal, 0);
        assert!(apply_gate(&s, &ga(Builtin::And, &[1, 2])).is_err());
        assert!(apply_gate(&s, &ga(Builtin::H, &[3])).is_err());
    }

    #[test]
    fn run_examples() {
        let out = run(&example3(), &[1, 0, 1]).unwrap();
        assert_eq!(out.amplitude(&"011".parse().unwrap()), ONE);

        let hzh = single(SemanticsMode::QuantumReal, &[Builtin::H, Builtin::Z, Builtin::H]);
        let out = run(&hzh, &[]).unwrap();
        assert!((out.amplitudes()[1].re - 1.0).abs() < 1e-15);
        assert!(out.amplitudes()[0].norm() < 1e-15);
    }

    #[test]
    fn hh_cnot_intermediate_state() {
        // Hand multiplication of the first three steps from |00>:
        // H⊗H gives ½(1,1,1,1); CNOT permutes |10>,|11>, leaving ½(1,1,1,1).
        let c = Circuit::builder("nc", SemanticsMode::QuantumReal, 2)
            .builtin(Builtin::H, &[1])
            .builtin(Builtin::H, &[2])
            .builtin(Builtin::Cnot, &[1, 2])
            .builtin(Builtin::H, &[1])
            .builtin(Builtin::H, &[2])
            .build()
            .unwrap();
        let mut after_cnot = None;
        Simulator::default()
            .run_traced(&c, &[], |step, s| {
                if step == 3 {
                    after_cnot = Some(s.clone());
                }
            })
            .unwrap();
        let s = after_cnot.unwrap();
        for a in s.amplitudes() {
            assert!((a.re - 0.5).abs() < 1e-15 && a.im == 0.0);
        }
    }

    #[test]
    fn observe_examples() {
        let s = StateVector::basis(3, SemanticsMode::QuantumReal, 0b011);
        let d = observe_outputs(&s, 2).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.prob("01"), 1.0);
        assert!(matches!(observe_outputs(&s, 0), Err(SimError::OutputRange { .. })));
        assert!(observe_outputs(&s, 4).is_err());
    }

    #[test]
    fn probabilistic_negativity_is_clamped_or_rejected() {
        let tiny = StateVector::from_amplitudes(
            SemanticsMode::Probabilistic,
            vec![Scalar::new(1.0, 0.0), Scalar::new(-1e-13, 0.0)],
        )
        .unwrap();
        let d = observe_outputs(&tiny, 1).unwrap();
        assert_eq!(d.prob("1"), 0.0);
        let bad = StateVector::from_amplitudes(
            SemanticsMode::Probabilistic,
            vec![Scalar::new(1.1, 0.0), Scalar::new(-0.1, 0.0)],
        )
        .unwrap();
        assert!(observe_outputs(&bad, 1).is_err());
    }

    #[test]
    fn deterministic_examples() {
        let copy = Circuit::builder("copy", SemanticsMode::Deterministic, 2)
            .inputs(1)
            .builtin(Builtin::Or, &[1, 2])
            .build()
            .unwrap();
        assert_eq!(run_deterministic(&copy, &[1]).unwrap().to_string(), "11");
        assert_eq!(run_deterministic(&copy, &[0]).unwrap().to_string(), "00");
        assert_eq!(run_deterministic(&example3(), &[1, 1, 0]).unwrap().to_string(), "010");
        let empty = Circuit::builder("e", SemanticsMode::Deterministic, 3)
            .inputs(3)
            .build()
            .unwrap();
        assert_eq!(run_deterministic(&empty, &[1, 0, 1]).unwrap().to_string(), "101");
        let h = single(SemanticsMode::QuantumReal, &[Builtin::H]);
        assert!(matches!(run_deterministic(&h, &[]), Err(SimError::Gate(_))));
    }

    #[test]
    fn sample_examples() {
        let basis = StateVector::basis(3, SemanticsMode::QuantumReal, 5);
        for seed in 0..20 {
            assert_eq!(sample(&basis, seed).unwrap().index(), 5);
        }
        let h = run(&single(SemanticsMode::QuantumReal, &[Builtin::H]), &[]).unwrap();
        assert_eq!(sample(&h, 42).unwrap(), sample(&h, 42).unwrap());
        let unnormalized = StateVector::from_amplitudes(
            SemanticsMode::QuantumReal,
            vec![Scalar::new(1.0, 0.0), Scalar::new(1.0, 0.0)],
        )
        .unwrap();
        assert!(matches!(sample(&unnormalized, 0), Err(SimError::Unnormalized { .. })));
    }

    #[test]
    fn sample_frequency_of_hadamard() {
        // 10^5 Bernoulli(1/2) draws: sd = 0.00158, so ±0.01 is > 6 sd.
        let h = run(&single(SemanticsMode::QuantumReal, &[Builtin::H]), &[]).unwrap();
        let trials = 100_000u64;
        let ones = (0..trials)
            .filter(|&seed| sample(&h, seed).unwrap().index() == 1)
            .count();
        let freq = ones as f64 / trials as f64;
        assert!((freq - 0.5).abs() <= 0.01, "{freq}");
    }

    #[test]
    fn full_matrix_examples() {
        let hzh = single(SemanticsMode::QuantumReal, &[Builtin::H, Builtin::Z, Builtin::H]);
        let not = gates::builtin(Builtin::Not).matrix().clone();
        assert!(full_matrix(&hzh).unwrap().max_deviation(&not).unwrap() < 1e-15);
        let hih = single(SemanticsMode::QuantumReal, &[Builtin::H, Builtin::Ident, Builtin::H]);
        assert!(full_matrix(&hih).unwrap().max_deviation(&Matrix::identity(2)).unwrap() < 1e-15);
        let empty = Circuit::builder("e", SemanticsMode::QuantumReal, 2).build().unwrap();
        assert_eq!(full_matrix(&empty).unwrap(), Matrix::identity(4));
        let wide = Circuit::builder("w", SemanticsMode::QuantumReal, 13).build().unwrap();
        assert!(matches!(full_matrix(&wide), Err(SimError::WidthCap { cap: 12, .. })));
    }

    #[test]
    fn width_cap_applies_to_state_vectors() {
        let c = Circuit::builder("w", SemanticsMode::QuantumReal, 5).build().unwrap();
        let sim = Simulator::new(SimOptions {
            max_registers: 4,
            ..SimOptions::default()
        });
        assert!(matches!(sim.run(&c, &[]), Err(SimError::WidthCap { n: 5, cap: 4 })));
    }

    #[test]
    fn cnot_kernel_matches_full_matrix_on_both_orders() {
        for targets in [[1, 2], [2, 1]] {
            let c = Circuit::builder("c", SemanticsMode::QuantumReal, 2)
                .builtin(Builtin::Cnot, &targets)
                .build()
                .unwrap();
            let m = full_matrix(&c).unwrap();
            for j in 0..4 {
                let s = StateVector::basis(2, SemanticsMode::QuantumReal, j);
                let out = apply_gate(&s, &ga(Builtin::Cnot, &targets)).unwrap();
                assert_eq!(out.amplitudes(), &m.column(j)[..]);
            }
        }
        // CNOT with control r2: |01> <-> |11>
        let c = Circuit::builder("c", SemanticsMode::QuantumReal, 2)
            .builtin(Builtin::Cnot, &[2, 1])
            .build()
            .unwrap();
        assert_eq!(full_matrix(&c).unwrap()[(0b11, 0b01)], ONE);
    }

    #[test]
    fn invariant_checks_catch_drift() {
        let bad = gates::custom("shrink", 1, Matrix::from_real(2, 2, &[0.5, 0.0, 0.0, 0.5]).unwrap()).unwrap();
        let s = StateVector::basis(1, SemanticsMode::QuantumReal, 0);
        let out = apply_gate(
            &StateVector::basis(1, SemanticsMode::QuantumComplex, 0),
            &GateApplication::new(Arc::new(gates::builtin(Builtin::H)), vec![1]),
        )
        .unwrap();
        assert!(out.check_invariants(1).is_ok());
        // the shrink gate is not orthogonal, so apply rejects it outright
        assert!(apply_gate(&s, &GateApplication::new(Arc::new(bad), vec![1])).is_err());
        let drifted = StateVector::from_amplitudes(
            SemanticsMode::QuantumReal,
            vec![Scalar::new(0.5, 0.0), Scalar::new(0.5, 0.0)],
        )
        .unwrap();
        assert!(matches!(
            drifted.check_invariants(3),
            Err(SimError::Invariant { step: 3, .. })
        ));
    }
}
