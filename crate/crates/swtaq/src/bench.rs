// SPDX-License-Identifier: Apache-2.0
//! Case-study models for size-parameterized verification.
//!
//! Every builder returns a [`Check`]: either a pre/post pair with a circuit
//! to push through the precondition, or a set of bases with two circuits
//! whose images must coincide. Circuits that are staircases of a box are
//! built with [`parameterize`]; the trees they act on carry primed symbols on
//! their last levels (see `paramgen`).
//!
//! The adder and syndrome-extraction pre/post automata are reconstructions.
//! Their postconditions use a guess-and-check encoding: a level whose output
//! bit depends on a bit further down emits both children with a guessed
//! value, and the level that reveals the bit keeps weight 1 on the correct
//! guess and 0 on the other.

use crate::algebra::Algebraic;
use crate::fixtures;
use crate::gates::{GateError, GateSpec, Unitary2};
use crate::paramgen::{parameterize, primed, prime_tail, validate_box, BoxTransducer, Dir, ParamError, ID};
use crate::swta::Swta;
use crate::verify::Mode;
use crate::wtt::{compose_all, Side, Wtt};
use crate::ModelError;

pub const M: usize = 4;

/// One transducer of a pipeline, with a display name.
#[derive(Clone, Debug)]
pub struct Stage {
    pub name: String,
    pub wtt: Wtt,
    /// Box, offset and direction when `wtt` is a staircase.
    pub staircase: Option<(Wtt, usize, Dir)>,
}

impl Stage {
    pub fn new(name: &str, wtt: Wtt) -> Self {
        Stage {
            name: name.to_string(),
            wtt,
            staircase: None,
        }
    }

    pub fn staircase(name: &str, bx: &BoxTransducer, n: usize, dir: Dir) -> Result<Self, ParamError> {
        Ok(Stage {
            name: name.to_string(),
            wtt: parameterize(bx, n, dir)?,
            staircase: Some((bx.wtt().clone(), n, dir)),
        })
    }
}

#[derive(Clone, Debug)]
pub enum Check {
    /// post relates to circuit(pre).
    Verify {
        pre: Swta,
        circuit: Vec<Stage>,
        post: Swta,
        mode: Mode,
    },
    /// left(bases) and right(bases) are functionally equal.
    Equiv {
        bases: Swta,
        left: Vec<Stage>,
        right: Vec<Stage>,
    },
}

pub const NAMES: [&str; 5] = ["bv", "grover", "adder", "qecc", "heisenberg"];

pub fn by_name(name: &str) -> Result<Check, BenchError> {
    match name {
        "bv" => bv(),
        "bv-flipped" => bv_flipped(),
        "grover" => grover(),
        "adder" => adder(),
        "qecc" => qecc(),
        "heisenberg" => heisenberg(),
        _ => Err(BenchError::Unknown(name.to_string())),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("unknown benchmark `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn one() -> Algebraic {
    Algebraic::one(M)
}

fn zero() -> Algebraic {
    Algebraic::zero(M)
}

fn half_sqrt() -> Algebraic {
    Algebraic::inv_sqrt2_pow(M, 1)
}

/// Color of an input bit.
fn color(bit: bool) -> &'static str {
    if bit {
        "2"
    } else {
        "1"
    }
}

/// A transition that puts `c * next` on the `bit` side and `0 * next` on the
/// other one.
fn put(a: &mut Swta, q: &str, sym: &str, col: &str, bit: bool, c: Algebraic, next: &str) -> Result<(), ModelError> {
    let (l, r) = if bit {
        (vec![(next, zero())], vec![(next, c)])
    } else {
        (vec![(next, c)], vec![(next, zero())])
    };
    a.add_named(q, sym, col, &l, &r)
}

// ---------------------------------------------------------------------------
// boxes and helper transducers

/// Turns a fixed-size gate transducer over `x1..xk` into a box over
/// `symbols`: each level's transitions fire on every symbol, and the leaf
/// states become `id` with its loops.
pub fn boxify(t: &Wtt, symbols: &[&str]) -> Result<BoxTransducer, ParamError> {
    let name = |q: usize| -> String {
        if t.is_leaf(q) {
            ID.to_string()
        } else if t.state_name(q) == ID {
            format!("{ID}_")
        } else {
            t.state_name(q).to_string()
        }
    };
    let mut out = Wtt::new(t.m(), &name(t.root()));
    let ids: Vec<usize> = (0..t.num_states()).map(|q| out.add_state(&name(q))).collect();
    let syms: Vec<usize> = symbols.iter().map(|s| out.add_symbol(s)).collect();
    for q in 0..t.num_states() {
        if t.is_leaf(q) {
            continue;
        }
        for tr in t.transitions(q).values() {
            let l = tr.left.map_keys(|(p, d)| (ids[*p], *d));
            let r = tr.right.map_keys(|(p, d)| (ids[*p], *d));
            for &s in &syms {
                out.add_transition(ids[q], s, l.clone(), r.clone())?;
            }
        }
    }
    let id = out.add_state(ID);
    out.add_leaf(id);
    for &s in &syms {
        out.add_transition(
            id,
            s,
            crate::wtt::GroundForm::single((id, Side::L), one()),
            crate::wtt::GroundForm::single((id, Side::R), one()),
        )?;
    }
    validate_box(&out.trim())
}

fn gates_wtt(gates: &[GateSpec], qubits: usize) -> Result<Wtt, GateError> {
    GateSpec::Composite(gates.to_vec()).build(M, qubits)
}

fn cx(c: usize, t: usize) -> GateSpec {
    GateSpec::Controlled {
        u: Unitary2::x(M),
        target: t,
        controls: vec![c],
    }
}

fn ccx(c1: usize, c2: usize, t: usize) -> GateSpec {
    GateSpec::Controlled {
        u: Unitary2::x(M),
        target: t,
        controls: vec![c1, c2],
    }
}

fn single(name: &str, t: usize) -> GateSpec {
    GateSpec::Single {
        u: Unitary2::named(name, M).expect("built-in gate"),
        target: t,
    }
}

/// MAJ on (c, b, a) = qubits (1, 2, 3).
pub fn maj_gates() -> Vec<GateSpec> {
    vec![cx(3, 2), cx(3, 1), ccx(1, 2, 3)]
}

/// UMA (two-CNOT form) on (c, b, a).
pub fn uma_gates() -> Vec<GateSpec> {
    vec![ccx(1, 2, 3), cx(3, 1), cx(1, 2)]
}

pub fn maj_box() -> Result<BoxTransducer, BenchError> {
    Ok(boxify(&gates_wtt(&maj_gates(), 3)?, &["x"])?)
}

pub fn uma_box() -> Result<BoxTransducer, BenchError> {
    Ok(boxify(&gates_wtt(&uma_gates(), 3)?, &["x"])?)
}

/// Syndrome box on (x_{i-1}, a_i, x_i).
pub fn qecc_gates() -> Vec<GateSpec> {
    vec![cx(1, 2), cx(3, 2)]
}

pub fn qecc_box() -> Result<BoxTransducer, BenchError> {
    Ok(boxify(&gates_wtt(&qecc_gates(), 3)?, &["x"])?)
}

pub fn ccx_box() -> Result<BoxTransducer, BenchError> {
    Ok(boxify(&gates_wtt(&[ccx(1, 2, 3)], 3)?, &["w", "a"])?)
}

/// ZZ rotation by 2*delta with delta = pi/4: CX, Rz on the target, CX.
fn rzz() -> Vec<GateSpec> {
    vec![cx(1, 2), single("RZ90", 2), cx(1, 2)]
}

fn on_both(name: &str) -> Vec<GateSpec> {
    vec![single(name, 1), single(name, 2)]
}

/// One Trotter box: XX, YY and ZZ rotations on a pair of neighbours.
pub fn heisenberg_gates() -> Vec<GateSpec> {
    let mut g = Vec::new();
    g.extend(on_both("H"));
    g.extend(rzz());
    g.extend(on_both("H"));
    g.extend(on_both("SDG"));
    g.extend(on_both("H"));
    g.extend(rzz());
    g.extend(on_both("H"));
    g.extend(on_both("S"));
    g.extend(rzz());
    g
}

/// The same box with H.H removed and H.Sdg.H replaced by sqrt(X)^dagger.
pub fn heisenberg_opt_gates() -> Vec<GateSpec> {
    let mut g = Vec::new();
    g.extend(on_both("H"));
    g.extend(rzz());
    g.extend(on_both("SXDG"));
    g.extend(rzz());
    g.extend(on_both("H"));
    g.extend(on_both("S"));
    g.extend(rzz());
    g
}

pub fn heisenberg_box() -> Result<BoxTransducer, BenchError> {
    Ok(boxify(&gates_wtt(&heisenberg_gates(), 2)?, &["x"])?)
}

pub fn heisenberg_opt_box() -> Result<BoxTransducer, BenchError> {
    Ok(boxify(&gates_wtt(&heisenberg_opt_gates(), 2)?, &["x"])?)
}

/// U on the levels labelled by `on`, identity on the `pass` levels.
pub fn local_wtt(u: &Unitary2, on: &[&str], pass: &[&str]) -> Wtt {
    let mut t = Wtt::new(u.m(), "s");
    t.add_leaf(0);
    for a in on {
        let [ua, ub, uc, ud] = u.entries();
        t.add_named(
            "s",
            a,
            &[("s", Side::L, ua.clone()), ("s", Side::R, ub.clone())],
            &[("s", Side::L, uc.clone()), ("s", Side::R, ud.clone())],
        )
        .expect("distinct symbols");
    }
    for a in pass {
        t.add_named("s", a, &[("s", Side::L, one())], &[("s", Side::R, one())])
            .expect("distinct symbols");
    }
    t
}

fn id_loops(t: &mut Wtt, symbols: &[&str]) -> Result<(), ModelError> {
    for a in symbols {
        t.add_named(ID, a, &[(ID, Side::L, one())], &[(ID, Side::R, one())])?;
    }
    Ok(())
}

/// CX from a_n onto the carry-out qubit z: the last three levels of an
/// adder tree are b_n', a_n', z'.
pub fn adder_carry_cx() -> Result<Wtt, ModelError> {
    let xp = primed("x");
    let mut t = Wtt::new(M, "t");
    t.add_named("t", "x", &[("t", Side::L, one())], &[("t", Side::R, one())])?;
    t.add_named("t", &xp, &[("p", Side::L, one())], &[("p", Side::R, one())])?;
    t.add_named("p", &xp, &[("keep", Side::L, one())], &[("flip", Side::R, one())])?;
    t.add_named("keep", &xp, &[(ID, Side::L, one())], &[(ID, Side::R, one())])?;
    t.add_named("flip", &xp, &[(ID, Side::R, one())], &[(ID, Side::L, one())])?;
    let id = t.add_state(ID);
    t.add_leaf(id);
    Ok(t)
}

/// Z controlled by every working qubit (levels `w`, `w'`); ancilla levels
/// pass through.
pub fn grover_mcz() -> Result<Wtt, ModelError> {
    let (wp, ap) = (primed("w"), primed("a"));
    let mut t = Wtt::new(M, "t");
    t.add_named("t", "w", &[(ID, Side::L, one())], &[("t", Side::R, one())])?;
    t.add_named("t", "a", &[("t", Side::L, one())], &[("t", Side::R, one())])?;
    t.add_named("t", &wp, &[(ID, Side::L, one())], &[("t", Side::R, -one())])?;
    t.add_named("t", &ap, &[("t", Side::L, one())], &[("t", Side::R, one())])?;
    id_loops(&mut t, &["w", "a", &wp, &ap])?;
    let (q, id) = (t.root(), t.state_id(ID).expect("id added"));
    t.add_leaf(q);
    t.add_leaf(id);
    Ok(t)
}

/// Z on the last ancilla (the only `a'` level).
pub fn grover_z_last() -> Result<Wtt, ModelError> {
    let (wp, ap) = (primed("w"), primed("a"));
    let mut t = Wtt::new(M, "t");
    for a in ["w", "a", wp.as_str()] {
        t.add_named("t", a, &[("t", Side::L, one())], &[("t", Side::R, one())])?;
    }
    t.add_named("t", &ap, &[(ID, Side::L, one())], &[(ID, Side::R, -one())])?;
    let id = t.add_state(ID);
    t.add_leaf(id);
    Ok(t)
}

// ---------------------------------------------------------------------------
// level layouts of the fixed-size instances

pub fn adder_labels(n: usize) -> Vec<String> {
    let h = 2 * n + 2;
    (0..h).map(|i| if i + 3 >= h { primed("x") } else { "x".into() }).collect()
}

pub fn qecc_labels(n: usize) -> Vec<String> {
    let h = 2 * n - 1;
    (0..h).map(|i| if i + 2 >= h { primed("x") } else { "x".into() }).collect()
}

pub fn grover_labels(n: usize) -> Vec<String> {
    let mut v = vec!["w".to_string()];
    for _ in 2..=n {
        v.push("w".into());
        v.push("a".into());
    }
    let h = v.len();
    for s in &mut v[h - 2..] {
        *s = primed(s);
    }
    v
}

pub fn heisenberg_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| if i + 2 >= n { primed("x") } else { "x".into() }).collect()
}

/// Fixed-size adder on 2n+2 qubits (c, b1, a1, ..., bn, an, z).
pub fn adder_circuit(n: usize) -> Vec<GateSpec> {
    let shift = |gs: Vec<GateSpec>, by: usize| gs.into_iter().map(|g| shift_gate(g, by)).collect::<Vec<_>>();
    let mut out = Vec::new();
    for i in 1..=n {
        out.extend(shift(maj_gates(), 2 * i - 2));
    }
    out.push(cx(2 * n + 1, 2 * n + 2));
    for i in (1..=n).rev() {
        out.extend(shift(uma_gates(), 2 * i - 2));
    }
    out
}

/// Fixed-size syndrome extraction on 2n-1 qubits (x1, a2, x2, ..., an, xn).
pub fn qecc_circuit(n: usize) -> Vec<GateSpec> {
    (2..=n)
        .flat_map(|i| qecc_gates().into_iter().map(move |g| shift_gate(g, 2 * i - 4)))
        .collect()
}

/// Renumbers the qubits of a gate by `by`.
pub fn shift_gate(g: GateSpec, by: usize) -> GateSpec {
    match g {
        GateSpec::Single { u, target } => GateSpec::Single { u, target: target + by },
        GateSpec::Controlled { u, target, controls } => GateSpec::Controlled {
            u,
            target: target + by,
            controls: controls.into_iter().map(|c| c + by).collect(),
        },
        GateSpec::Qft { first, n } => GateSpec::Qft { first: first + by, n },
        GateSpec::Broadcast { u } => GateSpec::Broadcast { u },
        GateSpec::Composite(gs) => GateSpec::Composite(gs.into_iter().map(|g| shift_gate(g, by)).collect()),
    }
}

// ---------------------------------------------------------------------------
// Bernstein-Vazirani

pub fn bv() -> Result<Check, BenchError> {
    Ok(Check::Verify {
        pre: fixtures::bv_pre(),
        circuit: bv_circuit(),
        post: fixtures::bv_post(),
        mode: Mode::Equal,
    })
}

pub fn bv_flipped() -> Result<Check, BenchError> {
    Ok(Check::Verify {
        pre: fixtures::bv_pre(),
        circuit: bv_circuit(),
        post: fixtures::bv_post_flipped(),
        mode: Mode::Equal,
    })
}

pub fn bv_circuit() -> Vec<Stage> {
    vec![
        Stage::new("H", fixtures::bv_h()),
        Stage::new("oracle", fixtures::bv_cx()),
        Stage::new("H", fixtures::bv_h()),
    ]
}

// ---------------------------------------------------------------------------
// ripple-carry adder

/// All inputs |c, b1, a1, ..., bn, an, 0>, n >= 1.
pub fn adder_pre() -> Result<Swta, ModelError> {
    let xp = primed("x");
    let mut a = Swta::new(M, "C");
    for bit in [false, true] {
        let c = color(bit);
        put(&mut a, "C", "x", c, bit, one(), "B")?;
        put(&mut a, "B", "x", c, bit, one(), "A")?;
        put(&mut a, "B", &xp, c, bit, one(), "A'")?;
        put(&mut a, "A", "x", c, bit, one(), "B")?;
        put(&mut a, "A'", &xp, c, bit, one(), "Z")?;
    }
    put(&mut a, "Z", &xp, color(false), false, one(), "F")?;
    let f = a.add_state("F");
    a.add_leaf(f);
    Ok(a)
}

/// Outputs |c, s1, a1, ..., sn, an, carry>: b_i holds the sum bit, z the
/// final carry, everything else unchanged.
pub fn adder_post() -> Result<Swta, ModelError> {
    let xp = primed("x");
    let mut a = Swta::new(M, "C");
    let b = |k: bool| format!("B{}", k as u8);
    let g = |k: bool, bb: bool, s: bool, p: bool| {
        format!("G{}{}{}{}", k as u8, bb as u8, s as u8, if p { "'" } else { "" })
    };
    let z = |k: bool| format!("Z{}", k as u8);
    for bit in [false, true] {
        put(&mut a, "C", "x", color(bit), bit, one(), &b(bit))?;
    }
    for k in [false, true] {
        for bb in [false, true] {
            let c = color(bb);
            for (sym, p) in [("x", false), (xp.as_str(), true)] {
                a.add_named(
                    &b(k),
                    sym,
                    c,
                    &[(&g(k, bb, false, p), one())],
                    &[(&g(k, bb, true, p), one())],
                )?;
            }
            for s in [false, true] {
                for av in [false, true] {
                    let carry = (k && bb) || (k && av) || (bb && av);
                    let w = if k ^ bb ^ av == s { one() } else { zero() };
                    put(&mut a, &g(k, bb, s, false), "x", color(av), av, w.clone(), &b(carry))?;
                    put(&mut a, &g(k, bb, s, true), &xp, color(av), av, w, &z(carry))?;
                }
            }
        }
        put(&mut a, &z(k), &xp, color(false), k, one(), "F")?;
    }
    let f = a.add_state("F");
    a.add_leaf(f);
    Ok(a)
}

pub fn adder_circuit_stages() -> Result<Vec<Stage>, BenchError> {
    Ok(vec![
        Stage::staircase("MAJ staircase", &maj_box()?, 2, Dir::Right)?,
        Stage::new("CX(an, z)", adder_carry_cx()?),
        Stage::staircase("UMA staircase", &uma_box()?, 2, Dir::Left)?,
    ])
}

pub fn adder() -> Result<Check, BenchError> {
    Ok(Check::Verify {
        pre: adder_pre()?,
        circuit: adder_circuit_stages()?,
        post: adder_post()?,
        mode: Mode::Equal,
    })
}

// ---------------------------------------------------------------------------
// repetition-code syndrome extraction

/// Data bit of branch `t` (false: the w branch, true: its complement).
fn data_bit(t: bool, flipped: bool) -> bool {
    t ^ flipped
}

/// (|w> + |~w>)/sqrt2 on the data qubits, w with at most one 1, ancillas 0.
/// Color 2 on a data level marks the error position.
pub fn qecc_pre() -> Result<Swta, ModelError> {
    let xp = primed("x");
    let mut a = Swta::new(M, "P");
    let anc = |t: bool, u: bool| format!("A{}{}", t as u8, u as u8);
    let dat = |t: bool, u: bool, p: bool| format!("D{}{}{}", t as u8, u as u8, if p { "'" } else { "" });
    // w branch (t = false) takes the error bit, the complement its negation
    a.add_named("P", "x", "1", &[(&anc(false, false), half_sqrt())], &[(&anc(true, false), half_sqrt())])?;
    a.add_named("P", "x", "2", &[(&anc(true, true), half_sqrt())], &[(&anc(false, true), half_sqrt())])?;
    for t in [false, true] {
        for u in [false, true] {
            put(&mut a, &anc(t, u), "x", "1", false, one(), &dat(t, u, false))?;
            put(&mut a, &anc(t, u), &xp, "1", false, one(), &dat(t, u, true))?;
            for (sym, p) in [("x", false), (xp.as_str(), true)] {
                let next = |u2: bool| if p { "F".to_string() } else { anc(t, u2) };
                put(&mut a, &dat(t, u, p), sym, "1", data_bit(t, false), one(), &next(u))?;
                if !u {
                    put(&mut a, &dat(t, u, p), sym, "2", data_bit(t, true), one(), &next(true))?;
                }
            }
        }
    }
    let f = a.add_state("F");
    a.add_leaf(f);
    Ok(a)
}

/// Same data, ancilla a_i = x_{i-1} xor x_i.
pub fn qecc_post() -> Result<Swta, ModelError> {
    let xp = primed("x");
    let mut a = Swta::new(M, "P");
    let anc = |t: bool, u: bool, prev: bool| format!("A{}{}{}", t as u8, u as u8, prev as u8);
    let g = |t: bool, u: bool, prev: bool, s: bool, p: bool| {
        format!(
            "G{}{}{}{}{}",
            t as u8,
            u as u8,
            prev as u8,
            s as u8,
            if p { "'" } else { "" }
        )
    };
    a.add_named(
        "P",
        "x",
        "1",
        &[(&anc(false, false, false), half_sqrt())],
        &[(&anc(true, false, true), half_sqrt())],
    )?;
    a.add_named(
        "P",
        "x",
        "2",
        &[(&anc(true, true, false), half_sqrt())],
        &[(&anc(false, true, true), half_sqrt())],
    )?;
    for t in [false, true] {
        for u in [false, true] {
            for prev in [false, true] {
                for (sym, p) in [("x", false), (xp.as_str(), true)] {
                    a.add_named(
                        &anc(t, u, prev),
                        sym,
                        "1",
                        &[(&g(t, u, prev, false, p), one())],
                        &[(&g(t, u, prev, true, p), one())],
                    )?;
                    for s in [false, true] {
                        let errs: &[bool] = if u { &[false] } else { &[false, true] };
                        for &e in errs {
                            let d = data_bit(t, e);
                            let w = if prev ^ d == s { one() } else { zero() };
                            let next = if p { "F".to_string() } else { anc(t, u || e, d) };
                            put(&mut a, &g(t, u, prev, s, p), sym, color(e), d, w, &next)?;
                        }
                    }
                }
            }
        }
    }
    let f = a.add_state("F");
    a.add_leaf(f);
    Ok(a.trim())
}

pub fn qecc() -> Result<Check, BenchError> {
    Ok(Check::Verify {
        pre: qecc_pre()?,
        circuit: vec![Stage::staircase("syndrome staircase", &qecc_box()?, 2, Dir::Right)?],
        post: qecc_post()?,
        mode: Mode::Equal,
    })
}

// ---------------------------------------------------------------------------
// Grover iteration

/// All working-qubit bases with ancillas 0, layout w1 w2 a1 w3 a2 ...
pub fn grover_bases() -> Result<Swta, ModelError> {
    let (wp, ap) = (primed("w"), primed("a"));
    let mut a = Swta::new(M, "R");
    for bit in [false, true] {
        let c = color(bit);
        put(&mut a, "R", "w", c, bit, one(), "N")?;
        put(&mut a, "N", "w", c, bit, one(), "A")?;
        put(&mut a, "N", &wp, c, bit, one(), "A'")?;
    }
    put(&mut a, "A", "a", "1", false, one(), "N")?;
    put(&mut a, "A'", &ap, "1", false, one(), "F")?;
    let f = a.add_state("F");
    a.add_leaf(f);
    Ok(a)
}

fn grover_sandwich(phase: &[Stage]) -> Result<Vec<Stage>, BenchError> {
    let (wp, ap) = (primed("w"), primed("a"));
    let on = ["w", wp.as_str()];
    let pass = ["a", ap.as_str()];
    let h = local_wtt(&Unitary2::h(M)?, &on, &pass);
    let x = local_wtt(&Unitary2::x(M), &on, &pass);
    let mut out = vec![Stage::new("H", h.clone()), Stage::new("X", x.clone())];
    out.extend(phase.iter().cloned());
    out.push(Stage::new("X", x.clone()));
    out.push(Stage::new("H", h.clone()));
    out.push(Stage::new("X", x.clone()));
    out.extend(phase.iter().cloned());
    out.push(Stage::new("X", x));
    out.push(Stage::new("H", h));
    Ok(out)
}

/// C1 with a multi-controlled Z.
pub fn grover_c1() -> Result<Vec<Stage>, BenchError> {
    grover_sandwich(&[Stage::new("MCZ", grover_mcz()?)])
}

/// C2: the multi-controlled Z as a Toffoli chain into the ancillas, Z on
/// the last ancilla, and the chain undone.
pub fn grover_c2() -> Result<Vec<Stage>, BenchError> {
    let bx = ccx_box()?;
    grover_sandwich(&[
        Stage::staircase("CCX chain", &bx, 2, Dir::Right)?,
        Stage::new("Z", grover_z_last()?),
        Stage::staircase("CCX chain undone", &bx, 2, Dir::Left)?,
    ])
}

pub fn grover() -> Result<Check, BenchError> {
    Ok(Check::Equiv {
        bases: grover_bases()?,
        left: grover_c1()?,
        right: grover_c2()?,
    })
}

// ---------------------------------------------------------------------------
// Heisenberg chain, one Trotter step

/// All bases on x-labelled levels with the last two levels primed.
pub fn heisenberg_bases() -> Result<Swta, ModelError> {
    let mut a = Swta::new(M, "q");
    for bit in [false, true] {
        put(&mut a, "q", "x", color(bit), bit, one(), "q")?;
    }
    a.add_leaf(0);
    prime_tail(&a, 2)
}

pub fn heisenberg() -> Result<Check, BenchError> {
    Ok(Check::Equiv {
        bases: heisenberg_bases()?,
        left: vec![Stage::staircase("Trotter step", &heisenberg_box()?, 1, Dir::Right)?],
        right: vec![Stage::staircase("optimized Trotter step", &heisenberg_opt_box()?, 1, Dir::Right)?],
    })
}

/// The composed transducer of a pipeline (for size reports).
pub fn compose_stages(stages: &[Stage]) -> Result<Wtt, ModelError> {
    compose_all(&stages.iter().map(|s| s.wtt.clone()).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paramgen::staircase_shape;
    use crate::text::parse_wtt;
    use crate::trees::PerfectTree;
    use crate::verify::functional_relate;
    use crate::wtt::image_all;

    /// Listing of the MAJ box as a transducer over x.
    const MAJ_LISTING: &str = "\
wtt m=4
root a
leaves id
trans a x -> (b(L) + c(R) | e(L) + d(R))
trans b x -> (f(L) | f(R))
trans c x -> (h(R) | h(L))
trans d x -> (f(L) | k(R))
trans e x -> (h(R) | g(L))
trans f x -> (id(L) | 0*id(R))
trans g x -> (id(R) | 0*id(L))
trans h x -> (0*id(L) | id(R))
trans k x -> (0*id(R) | id(L))
trans id x -> (id(L) | id(R))
";

    fn all_bases(labels: &[String]) -> Vec<PerfectTree> {
        (0..1usize << labels.len())
            .map(|i| PerfectTree::basis(labels.to_vec(), i, M))
            .collect()
    }

    #[test]
    fn maj_box_matches_listing() {
        let ours = maj_box().unwrap();
        let listed = parse_wtt(MAJ_LISTING).unwrap();
        let labels = vec!["x".to_string(); 3];
        for t in all_bases(&labels) {
            assert_eq!(ours.wtt().apply(&t), listed.apply(&t));
        }
        assert_eq!(ours.span(), 3);
    }

    #[test]
    fn boxes_have_expected_spans() {
        assert_eq!(uma_box().unwrap().span(), 3);
        assert_eq!(qecc_box().unwrap().span(), 3);
        assert_eq!(ccx_box().unwrap().span(), 3);
        assert_eq!(heisenberg_box().unwrap().span(), 2);
        assert_eq!(heisenberg_opt_box().unwrap().span(), 2);
    }

    #[test]
    fn layouts_match_staircase_shapes() {
        let maj = maj_box().unwrap();
        for n in 1..5 {
            let (h, p) = staircase_shape(&maj, 2, n);
            let labels = adder_labels(n);
            assert_eq!(h + 1, labels.len());
            assert_eq!(labels.iter().position(|s| s.ends_with('\'')), Some(p));
        }
        let q = qecc_box().unwrap();
        for n in 2..6 {
            let (h, p) = staircase_shape(&q, 2, n - 1);
            let labels = qecc_labels(n);
            assert_eq!(h, labels.len());
            assert_eq!(labels.iter().position(|s| s.ends_with('\'')), Some(p));
        }
        assert_eq!(grover_labels(3), ["w", "w", "a", "w'", "a'"]);
    }

    #[test]
    fn adder_pre_accepts_bases_with_zero_ancilla() {
        let pre = adder_pre().unwrap();
        let labels = adder_labels(2);
        let h = labels.len();
        for (i, t) in all_bases(&labels).into_iter().enumerate() {
            assert_eq!(pre.accepts(&t), i & 1 == 0, "basis {i:0h$b}");
        }
    }

    #[test]
    fn qecc_post_on_single_error() {
        // n = 3: x1 a2 x2 a3 x3; error on x2
        let post = qecc_post().unwrap();
        let w = crate::swta::word(&[("x", "1"), ("x", "1"), ("x", "2"), ("x'", "1"), ("x'", "1")]);
        let t = post.eval(&w).unwrap();
        // w = 0 0 1 0 0 with syndromes a2 = 1, a3 = 1 -> 01110, complement 11011
        let mut nz: Vec<usize> = (0..32).filter(|&i| !t.leaves()[i].is_zero()).collect();
        nz.sort();
        assert_eq!(nz, vec![0b01110, 0b11011]);
    }

    #[test]
    fn bv_holds() {
        let Check::Verify { pre, circuit, post, mode } = bv().unwrap() else {
            panic!()
        };
        let ts: Vec<Wtt> = circuit.into_iter().map(|s| s.wtt).collect();
        let img = image_all(&ts, &pre).unwrap();
        assert!(functional_relate(&img, &post, mode).unwrap().holds);
    }

    #[test]
    fn shift_gate_moves_every_index() {
        let g = shift_gate(ccx(1, 2, 3), 4);
        assert_eq!(g, ccx(5, 6, 7));
    }
}
