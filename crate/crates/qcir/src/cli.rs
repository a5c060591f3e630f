//! The `qcir` command line.
//!
//! Exit codes: 0 success, 1 failed check or simulation invariant, 2 usage,
//! I/O or parse error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use qcir_core::analysis::{
    self, ancilla_leak_with, evaluate_acceptance, matrices_equivalent, AcceptanceCriterion, EquivalenceReport,
};
use qcir_core::error::{AnalysisError, CircuitError, SimError};
use qcir_core::linalg::{rho_embed, Scalar};
use qcir_core::sim::{self, observe_outputs, OutcomeDistribution, SimOptions, Simulator, StateVector};
use qcir_core::{Circuit, SemanticsMode};

use crate::{criterion, dsl};

/// Environment variable overriding the simulator's register cap.
pub const MAX_QUBITS_ENV: &str = "QCIR_MAX_QUBITS";

/// Amplitudes at or below this modulus are not printed.
const PRINT_THRESHOLD: f64 = 1e-12;

const TABLE_DIGITS: usize = 12;

#[derive(Parser, Debug)]
#[command(
    name = "qcir",
    version,
    about = "Simulate, verify and transform bit-register circuits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate a circuit on one input and print its final state and output distribution
    Run(RunArgs),
    /// Run structural checks
    Verify(VerifyArgs),
    /// Compare two circuits up to a global sign or phase
    Equiv(EquivArgs),
    /// Rewrite a circuit with a transformation pass
    Transpile(TranspileArgs),
    /// Classify the probability of observing 1 against an acceptance criterion
    Accept(AcceptArgs),
    /// Print the canonical form of a circuit file
    Fmt(FmtArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    file: PathBuf,
    /// Input bits for registers 1..=k, e.g. 101
    #[arg(long, default_value = "")]
    input: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Print the state after every gate
    #[arg(long)]
    trace: bool,
    /// Draw this many samples of the output registers
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    file: PathBuf,
    /// Check to run; repeat for several
    #[arg(long = "check", value_enum, default_values_t = [Check::Class])]
    checks: Vec<Check>,
    /// Ancilla registers for clean-ancilla, e.g. r3,r4 (default: every noninput, nonoutput register)
    #[arg(long, value_delimiter = ',')]
    ancilla: Vec<String>,
    #[arg(long, default_value_t = 1e-9)]
    eps: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    Class,
    Reversible,
    CleanAncilla,
    Simplex,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::Class => "class",
            Check::Reversible => "reversible",
            Check::CleanAncilla => "clean-ancilla",
            Check::Simplex => "simplex",
        }
    }
}

#[derive(Args, Debug)]
struct EquivArgs {
    first: PathBuf,
    second: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    eps: f64,
}

#[derive(Args, Debug)]
struct TranspileArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    pass: Pass,
    /// Output file (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Pass {
    ToReal,
    ToffoliToCht,
}

#[derive(Args, Debug)]
struct AcceptArgs {
    file: PathBuf,
    #[arg(long, default_value = "")]
    input: String,
    /// Named criterion: P, NP, RP, BPP, PP, EQP, CEQP, RQP, BQP
    #[arg(long, conflicts_with_all = ["reject", "accept"])]
    criterion: Option<String>,
    /// Reject set, e.g. "[0,1/3]"
    #[arg(long, requires = "accept")]
    reject: Option<String>,
    /// Accept set, e.g. "[2/3,1]"
    #[arg(long, requires = "reject")]
    accept: Option<String>,
}

#[derive(Args, Debug)]
struct FmtArgs {
    file: PathBuf,
    /// Exit with 1 if the file is not already canonical
    #[arg(long, conflicts_with = "write")]
    check: bool,
    /// Rewrite the file in place
    #[arg(long)]
    write: bool,
}

/// A failed command: exit status and message for standard error.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn failed(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Invariant { .. } | SimError::Unnormalized { .. } => failed(e.to_string()),
            _ => usage(e.to_string()),
        }
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Sim(s) => s.into(),
            other => usage(other.to_string()),
        }
    }
}

impl From<CircuitError> for Failure {
    fn from(e: CircuitError) -> Self {
        usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        usage(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the command line `args` (program name first), writing to `out` and
/// `err`, and returns the exit status.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return 2;
            }
            let _ = write!(out, "{text}");
            return 0;
        }
    };
    let result = simulator().and_then(|sim| match cli.command {
        Command::Run(a) => cmd_run(&sim, a, out),
        Command::Verify(a) => cmd_verify(&sim, a, out),
        Command::Equiv(a) => cmd_equiv(&sim, a, out),
        Command::Transpile(a) => cmd_transpile(&sim, a, out, err),
        Command::Accept(a) => cmd_accept(&sim, a, out),
        Command::Fmt(a) => cmd_fmt(a, out),
    });
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn simulator() -> Result<Simulator, Failure> {
    let mut opts = SimOptions {
        check_invariants: true,
        ..SimOptions::default()
    };
    if let Ok(v) = std::env::var(MAX_QUBITS_ENV) {
        opts.max_registers = v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{MAX_QUBITS_ENV} must be a register count, found `{v}`")))?;
    }
    Ok(Simulator::new(opts))
}

fn load(path: &Path) -> Result<(Circuit, String), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    match dsl::parse(&text) {
        Ok(c) => Ok((c, text)),
        Err(errors) => {
            let mut message = String::new();
            for (i, e) in errors.iter().enumerate() {
                if i > 0 {
                    message.push('\n');
                }
                let _ = write!(message, "{}:{e}", path.display());
            }
            Err(usage(message))
        }
    }
}

fn parse_bits(s: &str, k: usize) -> Result<Vec<u8>, Failure> {
    let bits: Vec<u8> = s
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(usage(format!("input `{s}` may only contain 0 and 1"))),
        })
        .collect::<Result<_, _>>()?;
    if bits.len() != k {
        return Err(usage(format!(
            "circuit has {k} input registers, --input gives {}",
            bits.len()
        )));
    }
    Ok(bits)
}

/// `x` rounded to `sig` significant digits, without trailing zeros.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..sig as i32).contains(&exp) {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn format_amplitude(z: Scalar) -> String {
    let re = (z.re.abs() > PRINT_THRESHOLD).then_some(z.re);
    let im = (z.im.abs() > PRINT_THRESHOLD).then_some(z.im);
    match (re, im) {
        (_, None) => format_sig(z.re, TABLE_DIGITS),
        (None, Some(y)) => format!("{}i", format_sig(y, TABLE_DIGITS)),
        (Some(x), Some(y)) => {
            let sign = if y < 0.0 { '-' } else { '+' };
            format!(
                "{}{sign}{}i",
                format_sig(x, TABLE_DIGITS),
                format_sig(y.abs(), TABLE_DIGITS)
            )
        }
    }
}

fn basis_label(index: usize, n: usize) -> String {
    sim::BasisState::from_index(index, n).to_string()
}

fn nonzero(s: &StateVector) -> impl Iterator<Item = (usize, Scalar)> + '_ {
    s.amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, z)| z.norm() > PRINT_THRESHOLD)
        .map(|(i, z)| (i, *z))
}

fn state_table(s: &StateVector) -> String {
    nonzero(s)
        .map(|(i, z)| format!("{}: {}", basis_label(i, s.n()), format_amplitude(z)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn state_json(s: &StateVector) -> Value {
    let mut m = Map::new();
    for (i, z) in nonzero(s) {
        m.insert(basis_label(i, s.n()), json!([z.re, z.im]));
    }
    Value::Object(m)
}

fn distribution_table(d: &OutcomeDistribution) -> String {
    d.iter()
        .map(|(o, p)| format!("{o}: {}", format_sig(p, TABLE_DIGITS)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn distribution_json(d: &OutcomeDistribution) -> Value {
    Value::Object(d.iter().map(|(o, p)| (o.to_string(), json!(p))).collect())
}

fn cmd_run(sim: &Simulator, a: RunArgs, out: &mut dyn Write) -> Outcome {
    let (c, _) = load(&a.file)?;
    let input = parse_bits(&a.input, c.k())?;
    let mut trace: Vec<(usize, StateVector)> = Vec::new();
    let state = if a.trace {
        sim.run_traced(&c, &input, |i, s| trace.push((i, s.clone())))?
    } else {
        sim.run(&c, &input)?
    };
    let dist = observe_outputs(&state, c.ell())?;
    let bits = if c.mode() == SemanticsMode::Deterministic {
        Some(sim::run_deterministic(&c, &input)?)
    } else {
        None
    };
    let samples = match a.sample {
        Some(count) => {
            let mut counts: BTreeMap<String, usize> = BTreeMap::new();
            for i in 0..count {
                let drawn = sim::sample(&state, a.seed.wrapping_add(i as u64))?;
                let key: String = drawn.to_string().chars().take(c.ell()).collect();
                *counts.entry(key).or_default() += 1;
            }
            Some(counts)
        }
        None => None,
    };
    let gate_label = |i: usize| {
        let ga = &c.gates()[i - 1];
        let regs: Vec<String> = ga.targets().iter().map(|r| format!("r{r}")).collect();
        format!("{} {}", ga.gate(), regs.join(" "))
    };
    match a.format {
        Format::Table => {
            for (i, s) in &trace {
                let label = if *i == 0 { "initial".to_string() } else { gate_label(*i) };
                writeln!(out, "step {i} ({label}) {}", state_table(s))?;
            }
            match &bits {
                Some(b) => writeln!(out, "state {b}")?,
                None => writeln!(out, "state {}", state_table(&state))?,
            }
            writeln!(out, "distribution {}", distribution_table(&dist))?;
            if let Some(counts) = &samples {
                let text: Vec<String> = counts.iter().map(|(k, v)| format!("{k}: {v}")).collect();
                writeln!(out, "samples {}", text.join(", "))?;
            }
        }
        Format::Json => {
            let mut doc = Map::new();
            doc.insert("circuit".into(), json!(c.name()));
            doc.insert("mode".into(), json!(c.mode().name()));
            doc.insert("input".into(), json!(a.input));
            if let Some(b) = &bits {
                doc.insert("state".into(), json!(b.to_string()));
            }
            doc.insert("amplitudes".into(), state_json(&state));
            doc.insert("distribution".into(), distribution_json(&dist));
            if let Some(counts) = samples {
                doc.insert("seed".into(), json!(a.seed));
                doc.insert("samples".into(), json!(counts));
            }
            if a.trace {
                let steps: Vec<Value> = trace
                    .iter()
                    .map(|(i, s)| {
                        let gate = if *i == 0 { Value::Null } else { json!(gate_label(*i)) };
                        json!({ "step": i, "gate": gate, "amplitudes": state_json(s) })
                    })
                    .collect();
                doc.insert("trace".into(), Value::Array(steps));
            }
            writeln!(
                out,
                "{}",
                serde_json::to_string(&Value::Object(doc)).expect("json values serialize")
            )?;
        }
    }
    Ok(0)
}

fn all_inputs(k: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..1usize << k).map(move |x| (0..k).map(|i| ((x >> (k - 1 - i)) & 1) as u8).collect())
}

fn parse_ancillas(c: &Circuit, given: &[String]) -> Result<Vec<usize>, Failure> {
    if given.is_empty() {
        return Ok((c.k().max(c.ell()) + 1..=c.n()).collect());
    }
    given
        .iter()
        .map(|s| {
            let t = s.trim();
            t.strip_prefix('r')
                .unwrap_or(t)
                .parse::<usize>()
                .map_err(|_| usage(format!("bad ancilla register `{s}`")))
        })
        .collect()
}

fn cmd_verify(sim: &Simulator, a: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let (c, _) = load(&a.file)?;
    let mut code = 0;
    for check in &a.checks {
        let (pass, detail) = match check {
            Check::Class => {
                let bad: Vec<String> = c.validate().iter().map(|v| v.to_string()).collect();
                if bad.is_empty() {
                    (
                        true,
                        format!("{} gates, all {}", c.gates().len(), c.mode().required_class()),
                    )
                } else {
                    (false, bad.join("; "))
                }
            }
            Check::Reversible => {
                let m = sim.full_matrix(&c)?;
                let ok = match c.mode() {
                    SemanticsMode::Deterministic | SemanticsMode::Probabilistic => {
                        qcir_core::linalg::is_permutation(&m, a.eps)
                    }
                    SemanticsMode::QuantumReal => qcir_core::linalg::is_orthogonal(&m, a.eps),
                    SemanticsMode::QuantumComplex => qcir_core::linalg::is_unitary(&m, a.eps),
                }
                .map_err(|e| usage(e.to_string()))?;
                let class = match c.mode() {
                    SemanticsMode::Deterministic | SemanticsMode::Probabilistic => "a permutation",
                    SemanticsMode::QuantumReal => "orthogonal",
                    SemanticsMode::QuantumComplex => "unitary",
                };
                let verb = if ok { "is" } else { "is not" };
                (ok, format!("circuit matrix {verb} {class}"))
            }
            Check::CleanAncilla => {
                let ancillas = parse_ancillas(&c, &a.ancilla)?;
                if ancillas.is_empty() {
                    (true, "no ancillas".to_string())
                } else {
                    let leak = ancilla_leak_with(sim, &c, &ancillas)?;
                    let regs: Vec<String> = ancillas.iter().map(|r| format!("r{r}")).collect();
                    (
                        leak <= a.eps,
                        format!("{} leak {}", regs.join(","), format_sig(leak, TABLE_DIGITS)),
                    )
                }
            }
            Check::Simplex => {
                let plain = Simulator::new(SimOptions {
                    check_invariants: false,
                    ..sim.options()
                });
                let mut states = 0usize;
                let mut bad: Option<usize> = None;
                for input in all_inputs(c.k()) {
                    plain.run_traced(&c, &input, |step, s| {
                        states += 1;
                        let ok = if c.mode().is_quantum() {
                            (s.l2_norm() - 1.0).abs() <= a.eps
                        } else {
                            analysis::simplex_membership(s, a.eps)
                        };
                        if !ok && bad.is_none() {
                            bad = Some(step);
                        }
                    })?;
                }
                let what = if c.mode().is_quantum() {
                    "unit l2 norm"
                } else {
                    "in the simplex"
                };
                match bad {
                    None => (true, format!("{states} states {what}")),
                    Some(step) => (false, format!("state after step {step} not {what}")),
                }
            }
        };
        let word = if pass { "PASS" } else { "FAIL" };
        writeln!(out, "{word} {}: {detail}", check.name())?;
        if !pass {
            code = 1;
        }
    }
    Ok(code)
}

fn format_scale(s: Scalar) -> String {
    format_amplitude(s)
}

fn cmd_equiv(sim: &Simulator, a: EquivArgs, out: &mut dyn Write) -> Outcome {
    let (c1, _) = load(&a.first)?;
    let (c2, _) = load(&a.second)?;
    if c1.n() != c2.n() {
        return Err(usage(format!("width mismatch: {} vs {} registers", c1.n(), c2.n())));
    }
    let report: EquivalenceReport = if c1.mode().is_quantum() && c2.mode().is_quantum() {
        analysis::circuits_equivalent(&c1, &c2, a.eps)?
    } else {
        matrices_equivalent(&sim.full_matrix(&c1)?, &sim.full_matrix(&c2)?, false, a.eps)?
    };
    let dev = format_sig(report.max_deviation, TABLE_DIGITS);
    if report.equivalent {
        writeln!(out, "EQUIVALENT s={} (max deviation {dev})", format_scale(report.scale))?;
        Ok(0)
    } else {
        writeln!(
            out,
            "DISTINCT max deviation {dev} (best scale s={})",
            format_scale(report.scale)
        )?;
        Ok(1)
    }
}

fn summary(pass: &str, before: &Circuit, after: &Circuit, check: &str) -> String {
    format!(
        "{pass}: registers {} -> {} (+{}), gates {} -> {}; {check}",
        before.n(),
        after.n(),
        after.n() - before.n(),
        before.gates().len(),
        after.gates().len()
    )
}

/// Inputs compared exhaustively by post-transpile verification.
const VERIFY_INPUT_BITS: usize = 10;

fn distributions_agree(sim: &Simulator, a: &Circuit, b: &Circuit) -> Result<(bool, usize), Failure> {
    let mut count = 0;
    for input in all_inputs(a.k().min(VERIFY_INPUT_BITS)) {
        let mut input = input;
        input.resize(a.k(), 0);
        let da = observe_outputs(&sim.run(a, &input)?, a.ell())?;
        let db = observe_outputs(&sim.run(b, &input)?, b.ell())?;
        if da.max_difference(&db) > 1e-9 {
            return Ok((false, count));
        }
        count += 1;
    }
    Ok((true, count))
}

fn cmd_transpile(sim: &Simulator, a: TranspileArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let (c, _) = load(&a.file)?;
    let (result, check) = match a.pass {
        Pass::ToReal => {
            if c.mode() != SemanticsMode::QuantumComplex {
                return Err(usage(format!(
                    "to-real needs a quantum-complex circuit, found {}",
                    c.mode()
                )));
            }
            let r = analysis::rho_transform(&c)?;
            let (ok, inputs) = distributions_agree(sim, &c, &r)?;
            if !ok {
                return Err(failed(
                    "transformed circuit changes an output distribution; nothing written",
                ));
            }
            let mut check = format!("distributions agree on {inputs} inputs");
            if r.n() <= sim::FULL_MATRIX_MAX_REGISTERS.min(sim.options().max_registers) {
                let dev = sim
                    .full_matrix(&r)?
                    .max_deviation(&rho_embed(&sim.full_matrix(&c)?))
                    .map_err(|e| usage(e.to_string()))?;
                if dev > 1e-9 {
                    return Err(failed(format!(
                        "transformed matrix deviates from the embedding by {dev}; nothing written"
                    )));
                }
                check.push_str(", matrix is the real embedding");
            }
            (r, check)
        }
        Pass::ToffoliToCht => {
            let lifted = match c.mode() {
                SemanticsMode::QuantumReal => c.clone(),
                SemanticsMode::QuantumComplex => {
                    return Err(usage(
                        "toffoli-to-cht needs a real-valued circuit, found quantum-complex",
                    ))
                }
                _ => analysis::lift_to_quantum_real(&c)
                    .map_err(|e| usage(format!("cannot lift to quantum-real: {e}")))?,
            };
            let r = analysis::toffoli_to_cht(&lifted)?;
            if r.n() == lifted.n() {
                (r, "no Toffoli gates".to_string())
            } else {
                let ancilla = r.n();
                let leak = ancilla_leak_with(sim, &r, &[ancilla])?;
                if leak > 1e-9 {
                    return Err(failed(format!("ancilla r{ancilla} leaks {leak}; nothing written")));
                }
                let mut check = format!("ancilla r{ancilla} clean");
                if r.n() <= sim::FULL_MATRIX_MAX_REGISTERS.min(sim.options().max_registers) {
                    let rep = analysis::equivalent_with_clean_ancilla(&lifted, &r, 1e-9)?;
                    if !rep.equivalent {
                        return Err(failed(format!(
                            "decomposition deviates by {}; nothing written",
                            rep.max_deviation
                        )));
                    }
                    check.push_str(&format!(", equivalent with s={}", format_scale(rep.scale)));
                }
                (r, check)
            }
        }
    };
    let pass = match a.pass {
        Pass::ToReal => "to-real",
        Pass::ToffoliToCht => "toffoli-to-cht",
    };
    let text = dsl::serialize(&result);
    let line = summary(pass, &c, &result, &check);
    match &a.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            writeln!(out, "{line}; wrote {}", path.display())?;
        }
        None => {
            write!(out, "{text}")?;
            writeln!(err, "{line}")?;
        }
    }
    Ok(0)
}

fn cmd_accept(sim: &Simulator, a: AcceptArgs, out: &mut dyn Write) -> Outcome {
    let (c, _) = load(&a.file)?;
    if c.ell() != 1 {
        return Err(usage(format!(
            "accept needs exactly one output register, circuit has {}",
            c.ell()
        )));
    }
    let crit = match (&a.criterion, &a.reject, &a.accept) {
        (Some(name), _, _) => AcceptanceCriterion::preset(name).ok_or_else(|| {
            usage(format!(
                "unknown criterion `{name}` (known: {})",
                AcceptanceCriterion::PRESETS.join(", ")
            ))
        })?,
        (None, Some(r), Some(acc)) => criterion::parse_criterion(r, acc).map_err(usage)?,
        _ => return Err(usage("pass --criterion NAME or both --reject and --accept")),
    };
    let input = parse_bits(&a.input, c.k())?;
    let dist = observe_outputs(&sim.run(&c, &input)?, 1)?;
    // guard against rounding just outside [0,1]
    let p = dist.prob("1").clamp(0.0, 1.0);
    let verdict = evaluate_acceptance(p, &crit)?;
    writeln!(out, "p = {}", format_sig(p, TABLE_DIGITS))?;
    writeln!(out, "verdict {verdict}")?;
    writeln!(out, "criterion reject {} accept {}", crit.reject(), crit.accept())?;
    Ok(0)
}

fn cmd_fmt(a: FmtArgs, out: &mut dyn Write) -> Outcome {
    let (c, text) = load(&a.file)?;
    let canonical = dsl::serialize(&c);
    if a.check {
        if text == canonical {
            return Ok(0);
        }
        writeln!(out, "{} is not canonical", a.file.display())?;
        return Ok(1);
    }
    if a.write {
        if text != canonical {
            std::fs::write(&a.file, &canonical)?;
        }
        return Ok(0);
    }
    write!(out, "{canonical}")?;
    Ok(0)
}
