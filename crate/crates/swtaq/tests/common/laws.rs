//! Law checks shared by the proptest suites and the acceptance harness.
//! Each returns `Err(description)` on the first violation.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::random;
use swtaq::bench::{self, boxify, shift_gate};
use swtaq::gates::{qubit_symbols, GateSpec, Unitary2};
use swtaq::paramgen::{explicit_staircase, parameterize, prime_labels, staircase_shape, BoxTransducer, Dir};
use swtaq::trees::TreeStyle;
use swtaq::verify::{bounded_oracle, functional_relate, Mode, WitnessKind};
use swtaq::wtt::{compose, image};
use swtaq::{Algebraic, PerfectTree};

pub type Law = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn key(t: &PerfectTree) -> String {
    format!("{}:{}", t.labels().join(","), t.render(TreeStyle::Vector))
}

/// (T2 o T1)(t) = T2(T1(t)), undefinedness included.
pub fn composition(seed: u64) -> Law {
    let mut r = random::rng(seed);
    let t1 = random::wtt(&mut r, 3);
    let t2 = random::wtt(&mut r, 3);
    let c = compose(&t2, &t1).map_err(|e| e.to_string())?;
    for _ in 0..6 {
        let h = r.gen_range(0..=4);
        let t = random::tree(&mut r, &["a", "b"], h);
        let direct = t1.apply(&t).and_then(|u| t2.apply(&u));
        ensure!(c.apply(&t) == direct, "seed {seed}: composition differs on {}", key(&t));
    }
    Ok(())
}

/// Trees of image(T, A) up to depth 3 are T applied to trees of A.
pub fn image_language(seed: u64) -> Law {
    let mut r = random::rng(seed);
    let a = random::swta(&mut r, 3);
    let t = random::wtt(&mut r, 3);
    let img = image(&t, &a).map_err(|e| e.to_string())?;
    ensure!(img.colors() == a.colors(), "seed {seed}: colors changed");
    let (mut want, mut got) = (BTreeSet::new(), BTreeSet::new());
    for w in random::words(&a, 3) {
        if let Some(out) = a.eval(&w).and_then(|s| t.apply(&s)) {
            want.insert(key(&out));
        }
        if let Some(out) = img.eval(&w) {
            ensure!(a.eval(&w).is_some(), "seed {seed}: image defined outside the domain at {w:?}");
            got.insert(key(&out));
        }
    }
    ensure!(got == want, "seed {seed}: languages differ");
    Ok(())
}

/// The domain DFA accepts exactly the words on which the SWTA is defined.
pub fn domain_dfa(seed: u64) -> Law {
    let mut r = random::rng(seed);
    let a = random::swta(&mut r, 4);
    let mut dfa = a.domain_dfa();
    for n in 0..=4 {
        for w in a.all_words(n) {
            let names = a.word_names(&w);
            ensure!(dfa.accepts_word(&w) == a.eval(&names).is_some(), "seed {seed}: {names:?}");
        }
    }
    Ok(())
}

/// Outcome of one differential run, for counting.
pub struct Differential {
    pub holds: bool,
    pub max_basis: usize,
    pub dim: usize,
}

/// functional_relate never claims holds where the oracle finds a
/// difference, and its witnesses are genuine.
pub fn differential(seed: u64) -> Result<Differential, String> {
    let mut r = random::rng(seed);
    let a = random::swta(&mut r, 3);
    let kind = r.gen_range(0..3);
    let b = match kind {
        0 => random::split_state(&a, &mut r),
        1 => random::perturb(&a, &mut r),
        _ => random::swta(&mut r, 3),
    };
    let mode = if r.gen_bool(0.5) { Mode::Equal } else { Mode::Included };
    let v = functional_relate(&a, &b, mode).map_err(|e| e.to_string())?;
    let o = bounded_oracle(&a, &b, 4, mode);
    ensure!(v.stats.max_basis <= v.stats.dim, "seed {seed}: basis exceeds dimension");
    ensure!(!v.holds || o.holds, "seed {seed}: verifier holds, oracle found {:?}", o.witness);
    ensure!(kind != 0 || v.holds, "seed {seed}: splitting a state changed the function");
    if let Some(w) = &v.witness {
        let (x, y) = (a.eval(&w.word), b.eval(&w.word));
        let ok = match w.kind {
            WitnessKind::OnlyLeft => x.is_some() && y.is_none(),
            WitnessKind::OnlyRight => x.is_none() && y.is_some() && mode == Mode::Equal,
            WitnessKind::Value => x.is_some() && y.is_some() && x != y,
        };
        ensure!(ok, "seed {seed}: spurious witness {w}");
    }
    Ok(Differential {
        holds: v.holds,
        max_basis: v.stats.max_basis,
        dim: v.stats.dim,
    })
}

pub const GATE_NAMES: [&str; 15] = ["I", "X", "Y", "Z", "H", "S", "SDG", "T", "TDG", "SX", "SXDG", "RX90", "RZ90", "R3", "R4"];

/// Gate transducer vs dense matrix on every basis tree.
pub fn gate_on_bases(g: &GateSpec, m: usize, qubits: usize) -> Law {
    let t = g.build(m, qubits).map_err(|e| e.to_string())?;
    for i in 0..1usize << qubits {
        let want = super::apply_gate(&super::basis(m, qubits, i), g, m, qubits);
        let got = t.apply(&PerfectTree::basis(qubit_symbols(qubits), i, m));
        ensure!(
            got.as_ref().map(|x| x.leaves()) == Some(want.as_slice()),
            "{g:?} on {qubits} qubits differs at basis {i}"
        );
    }
    Ok(())
}

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0..1usize << items.len())
        .map(|mask| items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect())
        .collect()
}

/// Every gate the constructors support on `qubits` qubits: each named gate
/// on each target under each control set, broadcasts and QFT ranges.
pub fn all_gates(m: usize, qubits: usize) -> Vec<GateSpec> {
    let mut out = Vec::new();
    for name in GATE_NAMES {
        let u = Unitary2::named(name, m).unwrap();
        out.push(GateSpec::Broadcast { u: u.clone() });
        for target in 1..=qubits {
            let others: Vec<usize> = (1..=qubits).filter(|&q| q != target).collect();
            for controls in subsets(&others) {
                out.push(if controls.is_empty() {
                    GateSpec::Single { u: u.clone(), target }
                } else {
                    GateSpec::Controlled { u: u.clone(), target, controls }
                });
            }
        }
    }
    for first in 1..=qubits {
        for n in 1..=qubits - first + 1 {
            if 1usize << n <= 2 * m {
                out.push(GateSpec::Qft { first, n });
            }
        }
    }
    out
}

/// Sum |leaf|^2 = 1 survives every gate, from a random normalized tree.
pub fn normalization(seed: u64) -> Law {
    let m = 8;
    let mut r = random::rng(seed);
    let qubits = r.gen_range(1..=4usize);
    let j = r.gen_range(0..=qubits);
    let mut idx: Vec<usize> = (0..1usize << qubits).collect();
    idx.shuffle(&mut r);
    let mut leaves = vec![Algebraic::zero(m); 1 << qubits];
    for &i in &idx[..1 << j] {
        leaves[i] = &Algebraic::omega_pow(m, r.gen_range(0..16)) * &Algebraic::inv_sqrt2_pow(m, j as u32);
    }
    let t = PerfectTree::from_parts(qubit_symbols(qubits), leaves).unwrap();
    ensure!(t.norm_sqr().is_one(), "seed {seed}: generator produced an unnormalized tree");
    for g in all_gates(m, qubits) {
        let out = g.build(m, qubits).map_err(|e| e.to_string())?.apply(&t);
        ensure!(out.is_some_and(|o| o.norm_sqr().is_one()), "seed {seed}: {g:?} breaks normalization");
    }
    Ok(())
}

pub fn h_box() -> BoxTransducer {
    let g = GateSpec::Single { u: Unitary2::h(4).unwrap(), target: 1 };
    boxify(&g.build(4, 1).unwrap(), &["x"]).unwrap()
}

pub fn cnot_box() -> BoxTransducer {
    let g = GateSpec::Controlled { u: Unitary2::x(4), target: 2, controls: vec![1] };
    boxify(&g.build(4, 2).unwrap(), &["x"]).unwrap()
}

/// The boxes the staircase law is checked on, with their gate lists.
pub fn staircase_boxes() -> Vec<(&'static str, BoxTransducer, Vec<GateSpec>)> {
    vec![
        ("MAJ", bench::maj_box().unwrap(), bench::maj_gates()),
        ("H", h_box(), vec![GateSpec::Single { u: Unitary2::h(4).unwrap(), target: 1 }]),
        ("CNOT", cnot_box(), vec![GateSpec::Controlled { u: Unitary2::x(4), target: 2, controls: vec![1] }]),
    ]
}

/// parameterize agrees with the explicit composition of j shifted boxes and
/// with dense simulation of the shifted gate lists, for j = 1..=4.
pub fn staircase(name: &str, bx: &BoxTransducer, gates: &[GateSpec], seed: u64) -> Law {
    let mut r = random::rng(seed);
    for n in 1..=2 {
        for dir in [Dir::Right, Dir::Left] {
            let p = parameterize(bx, n, dir).map_err(|e| e.to_string())?;
            for j in 1..=4 {
                let e = explicit_staircase(bx, n, dir, j).map_err(|e| e.to_string())?;
                let (h, first_primed) = staircase_shape(bx, n, j);
                let labels = prime_labels(&vec!["x".to_string(); h], first_primed);
                let mut order: Vec<usize> = (0..j).collect();
                if dir == Dir::Left {
                    order.reverse();
                }
                let dense: Vec<GateSpec> = order
                    .iter()
                    .flat_map(|&b| gates.iter().map(move |g| shift_gate(g.clone(), b * n)))
                    .collect();
                // all basis trees up to height 6, a sample above, and a few
                // random trees
                let idx: Vec<usize> = if h <= 6 {
                    (0..1usize << h).collect()
                } else {
                    (0..24).map(|_| r.gen_range(0..1usize << h)).collect()
                };
                let mut inputs: Vec<PerfectTree> =
                    idx.into_iter().map(|i| PerfectTree::basis(labels.clone(), i, 4)).collect();
                for _ in 0..4 {
                    let leaves = (0..1usize << h).map(|_| random::coeff(&mut r)).collect();
                    inputs.push(PerfectTree::from_parts(labels.clone(), leaves).unwrap());
                }
                for t in inputs {
                    let got = p.apply(&t);
                    ensure!(got == e.apply(&t), "{name} n={n} {dir:?} j={j}: staircase vs explicit");
                    let want = super::simulate(&dense, &t.leaves().to_vec(), 4, h);
                    ensure!(
                        got.as_ref().map(|x| x.leaves()) == Some(want.as_slice()),
                        "{name} n={n} {dir:?} j={j}: staircase vs dense"
                    );
                }
            }
        }
    }
    Ok(())
}
