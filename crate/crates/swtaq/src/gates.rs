// SPDX-License-Identifier: Apache-2.0
//! Transducers for quantum gates.
//!
//! Qubit `x_i` of an `n`-qubit circuit is the tree level labelled `x{i}`
//! (1-based, `x1` at the root). The left child of a node is the 0 branch.

use thiserror::Error;

use crate::algebra::{AlgebraError, Algebraic};
use crate::forms::LinearForm;
use crate::wtt::{add, compose_all, Side, Wtt, WttTransition};
use crate::ModelError;

pub use crate::wtt::identity as identity_wtt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GateError {
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("modulus m={m} cannot express {what}")]
    UnsupportedModulus { m: usize, what: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Label of qubit `i`.
pub fn qubit_symbol(i: usize) -> String {
    format!("x{i}")
}

/// Labels `x1..x{n}`.
pub fn qubit_symbols(n: usize) -> Vec<String> {
    (1..=n).map(qubit_symbol).collect()
}

/// A 2x2 matrix [[a, b], [c, d]] with exact entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unitary2 {
    pub a: Algebraic,
    pub b: Algebraic,
    pub c: Algebraic,
    pub d: Algebraic,
}

fn need(m: usize, min: usize, what: &str) -> Result<(), GateError> {
    if m < min {
        return Err(GateError::UnsupportedModulus {
            m,
            what: what.to_string(),
        });
    }
    Ok(())
}

impl Unitary2 {
    pub fn new(a: Algebraic, b: Algebraic, c: Algebraic, d: Algebraic) -> Self {
        Unitary2 { a, b, c, d }
    }

    pub fn m(&self) -> usize {
        self.a.m()
    }

    pub fn identity(m: usize) -> Self {
        Self::diag(Algebraic::one(m), Algebraic::one(m))
    }

    pub fn diag(a: Algebraic, d: Algebraic) -> Self {
        let m = a.m();
        Unitary2::new(a, Algebraic::zero(m), Algebraic::zero(m), d)
    }

    pub fn x(m: usize) -> Self {
        let (z, o) = (Algebraic::zero(m), Algebraic::one(m));
        Unitary2::new(z.clone(), o.clone(), o, z)
    }

    pub fn z(m: usize) -> Self {
        Self::diag(Algebraic::one(m), -Algebraic::one(m))
    }

    pub fn h(m: usize) -> Result<Self, GateError> {
        need(m, 4, "1/sqrt(2)")?;
        let s = Algebraic::inv_sqrt2_pow(m, 1);
        Ok(Unitary2::new(s.clone(), s.clone(), s.clone(), -s))
    }

    /// diag(1, e^{2 pi i / 2^k}).
    pub fn phase_root(m: usize, k: u32) -> Result<Self, GateError> {
        // e^{2 pi i / 2^k} = w^{2m / 2^k}
        let num = 2 * m as u64;
        let den = 1u64.checked_shl(k).unwrap_or(0);
        if den == 0 || num % den != 0 {
            return Err(GateError::UnsupportedModulus {
                m,
                what: format!("the phase e^(2 pi i / 2^{k})"),
            });
        }
        Ok(Self::diag(
            Algebraic::one(m),
            Algebraic::omega_pow(m, (num / den) as i64),
        ))
    }

    /// Built-in gates by (case-insensitive) name.
    pub fn named(name: &str, m: usize) -> Result<Self, GateError> {
        let up = name.to_ascii_uppercase();
        let w = |j: i64| Algebraic::omega_pow(m, j);
        let half = |x: Algebraic| -> Result<Algebraic, GateError> {
            need(m, 4, "1/2")?;
            Ok(&x * &Algebraic::inv_sqrt2_pow(m, 2))
        };
        let i_unit = || -> Result<Algebraic, GateError> {
            need(m, 2, "i")?;
            Ok(Algebraic::imag(m)?)
        };
        Ok(match up.as_str() {
            "I" | "ID" => Self::identity(m),
            "X" => Self::x(m),
            "Z" => Self::z(m),
            "Y" => {
                let i = i_unit()?;
                let zero = Algebraic::zero(m);
                Unitary2::new(zero.clone(), -i.clone(), i, zero)
            }
            "H" => Self::h(m)?,
            "S" => Self::diag(Algebraic::one(m), i_unit()?),
            "SDG" => Self::diag(Algebraic::one(m), -i_unit()?),
            "T" => {
                need(m, 4, "e^(i pi/4)")?;
                Self::diag(Algebraic::one(m), w((m / 4) as i64))
            }
            "TDG" => {
                need(m, 4, "e^(-i pi/4)")?;
                Self::diag(Algebraic::one(m), w(-((m / 4) as i64)))
            }
            // sqrt(X) = 1/2 [[1+i, 1-i], [1-i, 1+i]]
            "SX" | "SXDG" => {
                let i = i_unit()?;
                let one = Algebraic::one(m);
                let p = half(&one + &i)?;
                let q = half(&one - &i)?;
                if up == "SX" {
                    Unitary2::new(p.clone(), q.clone(), q, p)
                } else {
                    Unitary2::new(q.clone(), p.clone(), p, q)
                }
            }
            // 1/sqrt2 [[1, -i], [-i, 1]]
            "RX90" => {
                let s = Self::h(m)?.a;
                let mi = &(-i_unit()?) * &s;
                Unitary2::new(s.clone(), mi.clone(), mi, s)
            }
            // diag(e^{-i pi/4}, e^{i pi/4})
            "RZ90" => {
                need(m, 4, "e^(i pi/4)")?;
                Self::diag(w(-((m / 4) as i64)), w((m / 4) as i64))
            }
            other => {
                if let Some(k) = other.strip_prefix('R').and_then(|k| k.parse::<u32>().ok()) {
                    Self::phase_root(m, k)?
                } else {
                    return Err(GateError::InvalidGate(format!("unknown gate `{name}`")));
                }
            }
        })
    }

    /// Parses `(a|b|c|d)` with scalar literals.
    pub fn parse(text: &str, m: usize) -> Result<Self, GateError> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| GateError::InvalidGate(format!("expected `(a|b|c|d)`, got `{t}`")))?;
        let parts: Vec<&str> = inner.split('|').collect();
        if parts.len() != 4 {
            return Err(GateError::InvalidGate(format!("expected four entries in `{t}`")));
        }
        let v = parts
            .iter()
            .map(|p| Algebraic::parse(p, m))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Unitary2::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()))
    }

    pub fn dagger(&self) -> Self {
        Unitary2::new(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Unitary2::new(
            &(&self.a * &o.a) + &(&self.b * &o.c),
            &(&self.a * &o.b) + &(&self.b * &o.d),
            &(&self.c * &o.a) + &(&self.d * &o.c),
            &(&self.c * &o.b) + &(&self.d * &o.d),
        )
    }

    /// U U^dagger = I, exactly.
    pub fn is_unitary(&self) -> bool {
        self.mul(&self.dagger()) == Self::identity(self.m())
    }

    pub fn entries(&self) -> [&Algebraic; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

fn gt(q: usize, side: Side, c: Algebraic) -> LinearForm<(usize, Side)> {
    LinearForm::single((q, side), c)
}

/// The 2x2 action on the two children, feeding state `next`.
fn gate_transition(u: &Unitary2, next: usize) -> WttTransition {
    WttTransition {
        left: LinearForm::from_terms([
            ((next, Side::L), u.a.clone()),
            ((next, Side::R), u.b.clone()),
        ]),
        right: LinearForm::from_terms([
            ((next, Side::L), u.c.clone()),
            ((next, Side::R), u.d.clone()),
        ]),
    }
}

fn wire_transition(m: usize, next: usize) -> WttTransition {
    WttTransition {
        left: gt(next, Side::L, Algebraic::one(m)),
        right: gt(next, Side::R, Algebraic::one(m)),
    }
}

fn check_qubit(i: usize, qubits: usize) -> Result<(), GateError> {
    if i == 0 || i > qubits {
        return Err(GateError::InvalidGate(format!(
            "qubit index {i} outside 1..={qubits}"
        )));
    }
    Ok(())
}

/// U on qubit `i` of a `qubits`-qubit circuit: counter states q0..q{qubits},
/// q{qubits} the only leaf.
pub fn single_qubit_wtt(u: &Unitary2, i: usize, qubits: usize) -> Result<Wtt, GateError> {
    check_qubit(i, qubits)?;
    let m = u.m();
    let mut t = Wtt::new(m, "q0");
    let ids: Vec<usize> = (0..=qubits).map(|j| t.add_state(&format!("q{j}"))).collect();
    t.add_leaf(ids[qubits]);
    for j in 0..qubits {
        let sym = t.add_symbol(&qubit_symbol(j + 1));
        let tr = if j == i - 1 {
            gate_transition(u, ids[j + 1])
        } else {
            wire_transition(m, ids[j + 1])
        };
        t.add_transition(ids[j], sym, tr.left, tr.right)?;
    }
    Ok(t)
}

/// Identity on `qubits` qubits, with the counter states of `single_qubit_wtt`.
pub fn wire_wtt(m: usize, qubits: usize) -> Result<Wtt, GateError> {
    single_qubit_wtt(&Unitary2::identity(m), 1, qubits)
}

/// Sets every coefficient of the `side` output form of transitions over
/// `symbol` to zero. Supports are kept.
pub fn zero_side(t: &Wtt, symbol: &str, side: Side) -> Wtt {
    let mut out = t.clone();
    let Some(sym) = t.symbol_id(symbol) else {
        return out;
    };
    for q in 0..t.num_states() {
        if let Some(tr) = t.transition(q, sym) {
            let mut tr = tr.clone();
            match side {
                Side::L => tr.left = tr.left.zeroed(),
                Side::R => tr.right = tr.right.zeroed(),
            }
            out.set_transition(q, sym, tr);
        }
    }
    out
}

/// U on `target`, applied where every qubit in `controls` is 1.
pub fn controlled_wtt(
    u: &Unitary2,
    target: usize,
    controls: &[usize],
    qubits: usize,
) -> Result<Wtt, GateError> {
    check_qubit(target, qubits)?;
    for (k, &c) in controls.iter().enumerate() {
        check_qubit(c, qubits)?;
        if c == target || controls[..k].contains(&c) {
            return Err(GateError::InvalidGate(format!(
                "qubit {c} used twice in a controlled gate"
            )));
        }
    }
    let wire = wire_wtt(u.m(), qubits)?;
    let mut cur = single_qubit_wtt(u, target, qubits)?;
    for &c in controls {
        let sym = qubit_symbol(c);
        cur = add(&zero_side(&cur, &sym, Side::L), &zero_side(&wire, &sym, Side::R))?;
        cur = cur.compact_names("c");
    }
    Ok(cur)
}

/// U on every qubit: one root-and-leaf state `s` with a transition per symbol.
pub fn broadcast_wtt<S: AsRef<str>>(u: &Unitary2, symbols: &[S]) -> Wtt {
    let mut t = Wtt::new(u.m(), "s");
    t.add_leaf(0);
    for a in symbols {
        let sym = t.add_symbol(a.as_ref());
        let tr = gate_transition(u, 0);
        t.add_transition(0, sym, tr.left, tr.right)
            .expect("distinct symbols");
    }
    t
}

/// e^{2 pi i / 2^k}; needs 2^k to divide 2m.
fn gamma(m: usize, k: usize) -> Result<Algebraic, GateError> {
    Ok(Unitary2::phase_root(m, k as u32)?.d)
}

fn check_qft(m: usize, first: usize, n: usize, qubits: usize) -> Result<(), GateError> {
    if n == 0 || first == 0 || first + n - 1 > qubits {
        return Err(GateError::InvalidGate(format!(
            "QFT range {first}..{} outside 1..={qubits}",
            first + n - 1
        )));
    }
    need(m, 4, "1/sqrt(2)")?;
    if n >= 64 || (1u128 << n) > 2 * m as u128 {
        return Err(GateError::UnsupportedModulus {
            m,
            what: format!("the QFT phases e^(2 pi i / 2^k) for k <= {n}"),
        });
    }
    Ok(())
}

/// Box i of the QFT on qubits first..first+n-1: H on qubit first+i-1 followed
/// by the controlled rotations R_2..R_{n-i+1} it controls.
///
/// After H, the right (|1>) output carries a phase chain `p{a}` that
/// multiplies the 1-branch of every later qubit in the range by its phase.
/// The chain continues on both children so that each later qubit contributes
/// its phase independently.
pub fn qft_box(m: usize, first: usize, n: usize, i: usize, qubits: usize) -> Result<Wtt, GateError> {
    check_qft(m, first, n, qubits)?;
    if i == 0 || i > n {
        return Err(GateError::InvalidGate(format!("QFT box {i} outside 1..={n}")));
    }
    let one = Algebraic::one(m);
    let s = Algebraic::inv_sqrt2_pow(m, 1);
    let h_level = first + i - 1;
    let last = first + n - 1;
    let mut t = Wtt::new(m, "c1");
    for a in 1..=qubits {
        t.add_symbol(&qubit_symbol(a));
    }
    let id = |t: &mut Wtt, a: usize| t.add_state(&format!("id{a}"));
    for a in 1..=qubits {
        let sym = a - 1;
        let next = id(&mut t, a + 1);
        let cur = id(&mut t, a);
        let w = wire_transition(m, next);
        t.add_transition(cur, sym, w.left, w.right)?;
    }
    let leaf = id(&mut t, qubits + 1);
    t.add_leaf(leaf);
    // counting down to the H level
    for a in 1..h_level {
        let cur = t.add_state(&format!("c{a}"));
        let next = t.add_state(&format!("c{}", a + 1));
        let w = wire_transition(m, next);
        t.add_transition(cur, a - 1, w.left, w.right)?;
    }
    let hq = t.add_state(&format!("c{h_level}"));
    let after = if h_level < last {
        t.add_state(&format!("p{}", h_level + 1))
    } else {
        id(&mut t, h_level + 1)
    };
    let id_next = id(&mut t, h_level + 1);
    t.add_transition(
        hq,
        h_level - 1,
        LinearForm::from_terms([((id_next, Side::L), s.clone()), ((id_next, Side::R), s.clone())]),
        LinearForm::from_terms([((after, Side::L), s.clone()), ((after, Side::R), -s.clone())]),
    )?;
    for a in h_level + 1..=last {
        let cur = t.add_state(&format!("p{a}"));
        let next = if a < last {
            t.add_state(&format!("p{}", a + 1))
        } else {
            id(&mut t, a + 1)
        };
        let g = gamma(m, a - h_level + 1)?;
        t.add_transition(cur, a - 1, gt(next, Side::L, one.clone()), gt(next, Side::R, g))?;
    }
    Ok(t.trim())
}

/// QFT (without the final qubit reversal) on qubits first..first+n-1, built by
/// composing the n boxes.
pub fn qft_range_wtt(m: usize, first: usize, n: usize, qubits: usize) -> Result<Wtt, GateError> {
    check_qft(m, first, n, qubits)?;
    let boxes = (1..=n)
        .map(|i| qft_box(m, first, n, i, qubits))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(compose_all(&boxes)?.compact_names("f"))
}

/// QFT on qubits 1..n of a `qubits`-qubit circuit, via box composition.
pub fn qft_wtt(m: usize, n: usize, qubits: usize) -> Result<Wtt, GateError> {
    qft_range_wtt(m, 1, n, qubits)
}

/// The same QFT written down directly: a state (a, S) at level a remembers
/// the set S of earlier output qubits that are 1; each contributes a phase
/// when the input bit at level a is 1.
pub fn qft_direct_wtt(m: usize, first: usize, n: usize, qubits: usize) -> Result<Wtt, GateError> {
    check_qft(m, first, n, qubits)?;
    let last = first + n - 1;
    let s = Algebraic::inv_sqrt2_pow(m, 1);
    let one = Algebraic::one(m);
    let mut t = Wtt::new(m, "d1");
    for a in 1..=qubits {
        t.add_symbol(&qubit_symbol(a));
    }
    let name = |a: usize, set: u64| -> String {
        if a < first || a > last {
            format!("d{a}")
        } else {
            let bits: Vec<String> = (0..n)
                .filter(|j| set >> j & 1 == 1)
                .map(|j| (first + j).to_string())
                .collect();
            format!("d{a}{{{}}}", bits.join(","))
        }
    };
    let root = t.add_state(&name(1, 0));
    t.set_root(root);
    let mut frontier = vec![0u64];
    for a in 1..=qubits {
        let sym = a - 1;
        let mut next_frontier = Vec::new();
        for &set in &frontier {
            let cur = t.add_state(&name(a, set));
            if a < first || a > last {
                let next = t.add_state(&name(a + 1, set));
                let w = wire_transition(m, next);
                t.add_transition(cur, sym, w.left, w.right)?;
                if !next_frontier.contains(&set) {
                    next_frontier.push(set);
                }
                continue;
            }
            let mut phase = one.clone();
            for j in 0..(a - first) {
                if set >> j & 1 == 1 {
                    phase = &phase * &gamma(m, a - (first + j) + 1)?;
                }
            }
            let set1 = set | 1 << (a - first);
            let n0 = t.add_state(&name(a + 1, set));
            let n1 = t.add_state(&name(a + 1, set1));
            t.add_transition(
                cur,
                sym,
                LinearForm::from_terms([
                    ((n0, Side::L), s.clone()),
                    ((n0, Side::R), &s * &phase),
                ]),
                LinearForm::from_terms([
                    ((n1, Side::L), s.clone()),
                    ((n1, Side::R), -(&s * &phase)),
                ]),
            )?;
            for x in [set, set1] {
                if !next_frontier.contains(&x) {
                    next_frontier.push(x);
                }
            }
        }
        frontier = next_frontier;
    }
    // beyond the range all sets behave alike; leaves at the bottom
    for &set in &frontier {
        let q = t.add_state(&name(qubits + 1, set));
        t.add_leaf(q);
    }
    Ok(t.trim())
}

/// A gate as written in a circuit file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GateSpec {
    Single { u: Unitary2, target: usize },
    Controlled { u: Unitary2, target: usize, controls: Vec<usize> },
    Broadcast { u: Unitary2 },
    Qft { first: usize, n: usize },
    Composite(Vec<GateSpec>),
}

impl GateSpec {
    /// Transducer for this gate in a `qubits`-qubit circuit over modulus `m`.
    pub fn build(&self, m: usize, qubits: usize) -> Result<Wtt, GateError> {
        match self {
            GateSpec::Single { u, target } => single_qubit_wtt(u, *target, qubits),
            GateSpec::Controlled { u, target, controls } => {
                controlled_wtt(u, *target, controls, qubits)
            }
            GateSpec::Broadcast { u } => Ok(broadcast_wtt(u, &qubit_symbols(qubits))),
            GateSpec::Qft { first, n } => qft_range_wtt(m, *first, *n, qubits),
            GateSpec::Composite(gs) => {
                if gs.is_empty() {
                    return wire_wtt(m, qubits);
                }
                let ts = gs
                    .iter()
                    .map(|g| g.build(m, qubits))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(compose_all(&ts)?)
            }
        }
    }
}
