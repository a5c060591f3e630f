//! Named gates, the biased coin flip, and user-defined gates.
//!
//! Register order inside a gate follows the listed targets, first listed
//! most significant. Dyadic Boolean gates keep the first register (control)
//! and write the result into the second (target); Toffoli writes into the
//! third.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::GateError;
use crate::linalg::{self, real, Field, Matrix, DEFAULT_EPS, ONE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Builtin {
    Not,
    And,
    Or,
    Xor,
    Cnot,
    Toffoli,
    H,
    Z,
    Ident,
    T,
    Tinv,
    Phase8,
}

impl Builtin {
    pub const ALL: [Builtin; 12] = [
        Builtin::Not,
        Builtin::And,
        Builtin::Or,
        Builtin::Xor,
        Builtin::Cnot,
        Builtin::Toffoli,
        Builtin::H,
        Builtin::Z,
        Builtin::Ident,
        Builtin::T,
        Builtin::Tinv,
        Builtin::Phase8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Not => "NOT",
            Builtin::And => "AND",
            Builtin::Or => "OR",
            Builtin::Xor => "XOR",
            Builtin::Cnot => "CNOT",
            Builtin::Toffoli => "TOFFOLI",
            Builtin::H => "H",
            Builtin::Z => "Z",
            Builtin::Ident => "IDENT",
            Builtin::T => "T",
            Builtin::Tinv => "TINV",
            Builtin::Phase8 => "PHASE8",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Builtin::Not | Builtin::H | Builtin::Z | Builtin::Ident | Builtin::Phase8 => 1,
            Builtin::And | Builtin::Or | Builtin::Xor | Builtin::Cnot | Builtin::T | Builtin::Tinv => 2,
            Builtin::Toffoli => 3,
        }
    }

    /// Operator symbol used in straight-line listings, for the gates that have one.
    pub fn connective(self) -> Option<&'static str> {
        match self {
            Builtin::And => Some("AND"),
            Builtin::Or => Some("OR"),
            Builtin::Xor | Builtin::Cnot => Some("XOR"),
            _ => None,
        }
    }

    fn matrix(self) -> Matrix {
        let (c, s) = (Float::cos(FRAC_PI_4), Float::sin(FRAC_PI_4));
        match self {
            Builtin::Not => boolean_matrix(1, |x| x ^ 1),
            Builtin::And => boolean_matrix(2, |x| dyadic(x, |a, b| a & b)),
            Builtin::Or => boolean_matrix(2, |x| dyadic(x, |a, b| a | b)),
            Builtin::Xor | Builtin::Cnot => boolean_matrix(2, |x| dyadic(x, |a, b| a ^ b)),
            Builtin::Toffoli => boolean_matrix(3, |x| {
                let (a, b) = ((x >> 2) & 1, (x >> 1) & 1);
                x ^ (a & b)
            }),
            Builtin::H => {
                let h = FRAC_1_SQRT_2;
                real_matrix(2, &[h, h, h, -h])
            }
            Builtin::Z => Matrix::diagonal(&[ONE, -ONE]),
            Builtin::Ident => Matrix::identity(2),
            Builtin::T => real_matrix(
                4,
                &[
                    1., 0., 0., 0., //
                    0., 1., 0., 0., //
                    0., 0., c, -s, //
                    0., 0., s, c,
                ],
            ),
            Builtin::Tinv => real_matrix(
                4,
                &[
                    1., 0., 0., 0., //
                    0., 1., 0., 0., //
                    0., 0., c, s, //
                    0., 0., -s, c,
                ],
            ),
            Builtin::Phase8 => Matrix::diagonal(&[ONE, Complex64::new(c, s)]),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = GateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| GateError::Unknown(s.to_string()))
    }
}

/// Applies a dyadic connective to the (control, target) pair packed in `x`.
fn dyadic(x: usize, op: impl Fn(usize, usize) -> usize) -> usize {
    let (a, b) = ((x >> 1) & 1, x & 1);
    (a << 1) | op(a, b)
}

fn boolean_matrix(arity: usize, f: impl Fn(usize) -> usize) -> Matrix {
    let dim = 1 << arity;
    let mut m = Matrix::zeros(dim, dim);
    for col in 0..dim {
        m[(f(col), col)] = ONE;
    }
    m
}

fn real_matrix(dim: usize, entries: &[f64]) -> Matrix {
    Matrix::from_real(dim, dim, entries).expect("builtin matrices are well formed")
}

/// Biases of a coin-flip gate: column 0 is `(p, 1-p)`, column 1 is `(q, 1-q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinFlipParams {
    p: f64,
    q: f64,
}

impl CoinFlipParams {
    pub fn new(p: f64, q: f64) -> Result<Self, GateError> {
        for (name, value) in [("p", p), ("q", q)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(GateError::BiasOutOfRange { name, value });
            }
        }
        Ok(CoinFlipParams { p, q })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    Builtin(Builtin),
    CoinFlip(CoinFlipParams),
    Custom,
}

/// Which matrix classes a gate belongs to, evaluated at [`DEFAULT_EPS`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassFlags {
    pub boolean: bool,
    pub stochastic: bool,
    pub orthogonal: bool,
    pub unitary: bool,
    pub permutation: bool,
}

impl fmt::Display for ClassFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        write!(
            f,
            "boolean={} stochastic={} orthogonal={} unitary={} permutation={}",
            yn(self.boolean),
            yn(self.stochastic),
            yn(self.orthogonal),
            yn(self.unitary),
            yn(self.permutation)
        )
    }
}

pub fn classify_matrix(m: &Matrix) -> ClassFlags {
    let eps = DEFAULT_EPS;
    if !m.is_square() {
        return ClassFlags::default();
    }
    let unitary = linalg::is_unitary(m, eps).unwrap_or(false);
    if m.field() == Field::Complex {
        return ClassFlags {
            unitary,
            ..ClassFlags::default()
        };
    }
    let stochastic = linalg::is_columnwise_stochastic(m, eps).unwrap_or(false);
    let zero_one = m
        .entries()
        .iter()
        .all(|z| z.re.abs() <= eps || (z.re - 1.0).abs() <= eps);
    ClassFlags {
        boolean: stochastic && zero_one,
        stochastic,
        orthogonal: linalg::is_orthogonal(m, eps).unwrap_or(false),
        unitary,
        permutation: linalg::is_permutation(m, eps).unwrap_or(false),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GateSpec {
    name: String,
    arity: usize,
    kind: GateKind,
    matrix: Matrix,
    flags: ClassFlags,
    /// For Boolean gates: input sub-index to output sub-index.
    table: Option<Vec<usize>>,
}

impl GateSpec {
    fn assemble(name: String, arity: usize, kind: GateKind, matrix: Matrix) -> Self {
        let flags = classify_matrix(&matrix);
        let table = flags.boolean.then(|| {
            (0..matrix.cols())
                .map(|col| {
                    (0..matrix.rows())
                        .find(|&row| (matrix[(row, col)].re - 1.0).abs() <= DEFAULT_EPS)
                        .expect("boolean column has a one")
                })
                .collect()
        });
        GateSpec {
            name,
            arity,
            kind,
            matrix,
            flags,
            table,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn kind(&self) -> &GateKind {
        &self.kind
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    pub fn flags(&self) -> ClassFlags {
        self.flags
    }

    pub fn builtin(&self) -> Option<Builtin> {
        match self.kind {
            GateKind::Builtin(b) => Some(b),
            _ => None,
        }
    }

    /// Output sub-index for a Boolean gate given its input sub-index.
    pub fn boolean_image(&self, input: usize) -> Option<usize> {
        self.table.as_ref().map(|t| t[input])
    }

    /// Same gate with every entry multiplied by `s`.
    pub fn scaled(&self, name: &str, s: Complex64) -> Result<GateSpec, GateError> {
        custom(name, self.arity, self.matrix.scale(s))
    }
}

impl fmt::Display for GateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GateKind::CoinFlip(c) => write!(f, "FLIP({},{})", c.p, c.q),
            _ => f.write_str(&self.name),
        }
    }
}

pub fn builtin(b: Builtin) -> GateSpec {
    GateSpec::assemble(b.name().to_string(), b.arity(), GateKind::Builtin(b), b.matrix())
}

/// Looks up a built-in gate by its upper-case name.
pub fn builtin_by_name(name: &str) -> Result<GateSpec, GateError> {
    name.parse().map(builtin)
}

pub fn coin_flip(params: CoinFlipParams) -> GateSpec {
    let (p, q) = (params.p, params.q);
    let matrix = Matrix::new(2, 2, alloc::vec![real(p), real(q), real(1.0 - p), real(1.0 - q)])
        .expect("coin-flip matrix is 2x2");
    GateSpec::assemble("FLIP".to_string(), 1, GateKind::CoinFlip(params), matrix)
}

/// `FLIP` and the built-in names, in any letter case.
pub fn is_reserved_name(name: &str) -> bool {
    name.eq_ignore_ascii_case("FLIP") || Builtin::ALL.iter().any(|b| b.name().eq_ignore_ascii_case(name))
}

pub fn custom(name: &str, arity: usize, matrix: Matrix) -> Result<GateSpec, GateError> {
    if is_reserved_name(name) {
        return Err(GateError::ReservedName(name.to_string()));
    }
    if arity == 0 {
        return Err(GateError::ZeroArity);
    }
    let dim = 1usize.checked_shl(arity as u32).unwrap_or(0);
    if matrix.rows() != dim || matrix.cols() != dim {
        return Err(GateError::Dimension {
            name: name.to_string(),
            arity,
            dim,
            rows: matrix.rows(),
            cols: matrix.cols(),
        });
    }
    Ok(GateSpec::assemble(name.to_string(), arity, GateKind::Custom, matrix))
}

pub fn classify(g: &GateSpec) -> ClassFlags {
    g.flags
}
