#![allow(dead_code)]

use std::sync::Arc;

use qcir_core::gates::{self, Builtin, CoinFlipParams, GateSpec};
use qcir_core::linalg::{self, Matrix, Scalar};
use qcir_core::{Circuit, CircuitBuilder, SemanticsMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` distinct registers from `1..=n`, in random order.
pub fn distinct_targets(rng: &mut impl Rng, n: usize, count: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..=n).collect();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let i = rng.random_range(0..pool.len());
        out.push(pool.swap_remove(i));
    }
    out
}

pub fn random_circuit(rng: &mut impl Rng, mode: SemanticsMode, n: usize, gates: usize, palette: &[Builtin]) -> Circuit {
    let usable: Vec<Builtin> = palette.iter().copied().filter(|b| b.arity() <= n).collect();
    let k = rng.random_range(0..=n);
    let mut b = Circuit::builder("random", mode, n)
        .inputs(k)
        .outputs(rng.random_range(1..=n));
    for r in k + 1..=n {
        b = b.init(r, rng.random_range(0..2));
    }
    for _ in 0..gates {
        let g = usable[rng.random_range(0..usable.len())];
        let t = distinct_targets(rng, n, g.arity());
        b = b.builtin(g, &t);
    }
    b.build().unwrap()
}

pub const BOOLEAN: [Builtin; 7] = [
    Builtin::Not,
    Builtin::And,
    Builtin::Or,
    Builtin::Xor,
    Builtin::Cnot,
    Builtin::Toffoli,
    Builtin::Ident,
];
pub const REVERSIBLE: [Builtin; 4] = [Builtin::Not, Builtin::Cnot, Builtin::Toffoli, Builtin::Ident];
pub const REAL_QUANTUM: [Builtin; 7] = [
    Builtin::Not,
    Builtin::Cnot,
    Builtin::Toffoli,
    Builtin::H,
    Builtin::Z,
    Builtin::T,
    Builtin::Tinv,
];
pub const COMPLEX_QUANTUM: [Builtin; 4] = [Builtin::H, Builtin::Phase8, Builtin::Cnot, Builtin::Z];

/// Every bit vector of length `k`, register 1 first.
pub fn all_inputs(k: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..1usize << k).map(move |x| (0..k).map(|i| ((x >> (k - 1 - i)) & 1) as u8).collect())
}

pub fn random_complex(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    let entries = (0..rows * cols)
        .map(|_| Scalar::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    Matrix::new(rows, cols, entries).unwrap()
}

/// Haar-ish random unitary: Gram-Schmidt on a random complex matrix.
pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> Matrix {
    loop {
        let m = random_complex(rng, dim, dim);
        let mut cols: Vec<Vec<Scalar>> = Vec::new();
        let mut ok = true;
        for j in 0..dim {
            let mut v = m.column(j);
            for u in &cols {
                let proj: Scalar = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= proj * ui;
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-3 {
                ok = false;
                break;
            }
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
        if ok {
            let rows = (0..dim).map(|i| (0..dim).map(|j| cols[j][i]).collect()).collect();
            return Matrix::from_rows(rows).unwrap();
        }
    }
}

pub fn random_permutation(rng: &mut impl Rng, dim: usize) -> Matrix {
    let perm = distinct_targets(rng, dim, dim);
    let mut rows = vec![vec![Scalar::new(0.0, 0.0); dim]; dim];
    for (col, &row) in perm.iter().enumerate() {
        rows[row - 1][col] = Scalar::new(1.0, 0.0);
    }
    Matrix::from_rows(rows).unwrap()
}

pub fn random_stochastic(rng: &mut impl Rng, dim: usize) -> Matrix {
    let cols: Vec<Vec<f64>> = (0..dim)
        .map(|_| {
            let col: Vec<f64> = (0..dim).map(|_| rng.random::<f64>()).collect();
            let total: f64 = col.iter().sum();
            col.into_iter().map(|x| x / total).collect()
        })
        .collect();
    let rows = (0..dim)
        .map(|i| (0..dim).map(|j| linalg::real(cols[j][i])).collect())
        .collect();
    Matrix::from_rows(rows).unwrap()
}

pub fn fair_flip() -> Arc<GateSpec> {
    Arc::new(gates::coin_flip(CoinFlipParams::new(0.5, 0.5).unwrap()))
}

/// Boolean gates that overwrite one register with a constant.
pub fn constant_gates() -> [Arc<GateSpec>; 2] {
    let zero = Matrix::from_real(2, 2, &[1.0, 1.0, 0.0, 0.0]).unwrap();
    let one = Matrix::from_real(2, 2, &[0.0, 0.0, 1.0, 1.0]).unwrap();
    [
        Arc::new(gates::custom("SET0", 1, zero).unwrap()),
        Arc::new(gates::custom("SET1", 1, one).unwrap()),
    ]
}

pub fn copy_header(c: &Circuit, mode: SemanticsMode) -> CircuitBuilder {
    let mut b = Circuit::builder(c.name(), mode, c.n()).inputs(c.k()).outputs(c.ell());
    for (i, &v) in c.ancilla_init().iter().enumerate() {
        b = b.init(c.k() + 1 + i, v);
    }
    b
}
