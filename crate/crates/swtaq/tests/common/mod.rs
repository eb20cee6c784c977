//! Dense exact state-vector simulation, used as an oracle for transducers.
//!
//! Amplitudes are indexed by basis bitstrings with qubit 1 as the most
//! significant bit, i.e. the leaf order of a perfect tree whose root level is
//! qubit 1. Gates are applied straight from their 2x2 matrices.
#![allow(dead_code)]

use swtaq::gates::{GateSpec, Unitary2};
use swtaq::Algebraic;

pub type Dense = Vec<Algebraic>;

fn bit(idx: usize, q: usize, qubits: usize) -> bool {
    idx >> (qubits - q) & 1 == 1
}

/// U on qubit `target`, applied only where every control qubit is 1.
pub fn apply_controlled(v: &Dense, u: &Unitary2, target: usize, controls: &[usize], qubits: usize) -> Dense {
    let [a, b, c, d] = u.entries();
    let mask = 1usize << (qubits - target);
    let mut out = v.clone();
    for idx in 0..v.len() {
        if idx & mask != 0 || !controls.iter().all(|&q| bit(idx, q, qubits)) {
            continue;
        }
        let (x0, x1) = (&v[idx], &v[idx | mask]);
        out[idx] = &(a * x0) + &(b * x1);
        out[idx | mask] = &(c * x0) + &(d * x1);
    }
    out
}

fn reverse_bits(x: usize, n: usize) -> usize {
    (0..n).fold(0, |acc, i| acc << 1 | (x >> i & 1))
}

/// Row `j` of the returned matrix is the bit-reversed row of the DFT:
/// out[j] = sum_k e^{2 pi i rev(j) k / 2^n} x[k] / sqrt2^n.
pub fn qft_matrix(m: usize, n: usize) -> Vec<Vec<Algebraic>> {
    let size = 1usize << n;
    assert!(2 * m % size == 0, "modulus too small for a {n}-qubit QFT");
    let scale = Algebraic::inv_sqrt2_pow(m, n as u32);
    (0..size)
        .map(|j| {
            (0..size)
                .map(|k| {
                    let e = (reverse_bits(j, n) * k * (2 * m / size)) as i64;
                    &Algebraic::omega_pow(m, e) * &scale
                })
                .collect()
        })
        .collect()
}

/// QFT without the final reversal on qubits first..first+n-1.
pub fn apply_qft(v: &Dense, m: usize, first: usize, n: usize, qubits: usize) -> Dense {
    let f = qft_matrix(m, n);
    let below = qubits - (first + n - 1);
    let low_mask = (1usize << below) - 1;
    let mut out = vec![Algebraic::zero(m); v.len()];
    for idx in 0..v.len() {
        let k = (idx >> below) & ((1 << n) - 1);
        let outer = idx & !(((1 << n) - 1) << below);
        for (j, row) in f.iter().enumerate() {
            let dst = outer | (j << below) | (idx & low_mask);
            out[dst] = &out[dst] + &(&row[k] * &v[idx]);
        }
    }
    out
}

pub fn apply_gate(v: &Dense, g: &GateSpec, m: usize, qubits: usize) -> Dense {
    match g {
        GateSpec::Single { u, target } => apply_controlled(v, u, *target, &[], qubits),
        GateSpec::Controlled { u, target, controls } => apply_controlled(v, u, *target, controls, qubits),
        GateSpec::Broadcast { u } => (1..=qubits).fold(v.clone(), |acc, q| apply_controlled(&acc, u, q, &[], qubits)),
        GateSpec::Qft { first, n } => apply_qft(v, m, *first, *n, qubits),
        GateSpec::Composite(gs) => gs.iter().fold(v.clone(), |acc, g| apply_gate(&acc, g, m, qubits)),
    }
}

pub fn simulate(gates: &[GateSpec], v: &Dense, m: usize, qubits: usize) -> Dense {
    gates.iter().fold(v.clone(), |acc, g| apply_gate(&acc, g, m, qubits))
}

pub fn basis(m: usize, qubits: usize, idx: usize) -> Dense {
    let mut v = vec![Algebraic::zero(m); 1 << qubits];
    v[idx] = Algebraic::one(m);
    v
}

/// Sum of squared magnitudes.
pub fn norm_sqr(v: &Dense) -> Algebraic {
    v.iter().fold(Algebraic::zero(v[0].m()), |acc, x| &acc + &x.norm_sqr())
}

/// Approximate complex value, used for a float cross-check of the exact
/// arithmetic.
pub fn approx(x: &Algebraic) -> num_complex::Complex64 {
    let m = x.m();
    let mut z = num_complex::Complex64::new(0.0, 0.0);
    for (j, c) in x.coeffs().iter().enumerate() {
        let c: f64 = c.to_string().parse().unwrap();
        z += num_complex::Complex64::from_polar(c, std::f64::consts::PI * j as f64 / m as f64);
    }
    z / 2f64.sqrt().powi(x.k() as i32)
}

pub mod laws;
pub mod random;
