//! Small random SWTAs, WTTs and trees, driven by a seeded ChaCha RNG.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use swtaq::forms::LinearForm;
use swtaq::swta::Swta;
use swtaq::wtt::{GroundForm, Side, Wtt};
use swtaq::{Algebraic, PerfectTree};

pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub const M: usize = 4;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A coefficient from a small set that exercises every part of the
/// representation (zero, signs, sqrt2 denominators, roots of unity).
pub fn coeff(r: &mut Rng8) -> Algebraic {
    match r.gen_range(0..8) {
        0 => Algebraic::zero(M),
        1 | 2 => Algebraic::one(M),
        3 => Algebraic::from_int(M, -1),
        4 => Algebraic::from_int(M, 2),
        5 => Algebraic::inv_sqrt2_pow(M, 1),
        6 => Algebraic::omega_pow(M, r.gen_range(1..8)),
        _ => &Algebraic::imag(M).unwrap() * &Algebraic::inv_sqrt2_pow(M, 2),
    }
}

pub fn tree(r: &mut Rng8, symbols: &[&str], height: usize) -> PerfectTree {
    let labels: Vec<String> = (0..height).map(|_| symbols.choose(r).unwrap().to_string()).collect();
    let leaves = (0..1usize << height).map(|_| coeff(r)).collect();
    PerfectTree::from_parts(labels, leaves).unwrap()
}

fn form<K: Ord + Clone>(r: &mut Rng8, keys: &[K]) -> LinearForm<K> {
    let n = r.gen_range(1..=2);
    LinearForm::from_terms((0..n).map(|_| (keys.choose(r).unwrap().clone(), coeff(r))))
}

/// Up to `max_states` states over symbols `a`, `b` and colors `1`, `2`.
pub fn swta(r: &mut Rng8, max_states: usize) -> Swta {
    let n = r.gen_range(1..=max_states);
    let mut a = Swta::new(M, "q0");
    let ids: Vec<usize> = (0..n).map(|i| a.add_state(&format!("q{i}"))).collect();
    let syms = [a.add_symbol("a"), a.add_symbol("b")];
    let cols = [a.add_color("1"), a.add_color("2")];
    // at least one leaf so that something is defined
    a.add_leaf(ids[n - 1]);
    for &q in &ids[..n - 1] {
        if r.gen_bool(0.45) {
            a.add_leaf(q);
        }
    }
    for &q in &ids {
        for &s in &syms {
            for &c in &cols {
                let p = if s == syms[0] { 0.9 } else { 0.25 };
                if r.gen_bool(p) {
                    let (lf, rf) = (form(r, &ids), form(r, &ids));
                    a.add_transition(q, s, c, lf, rf).unwrap();
                }
            }
        }
    }
    a
}

/// Up to `max_states` states over symbols `a`, `b`.
pub fn wtt(r: &mut Rng8, max_states: usize) -> Wtt {
    let n = r.gen_range(1..=max_states);
    let mut t = Wtt::new(M, "p0");
    let ids: Vec<usize> = (0..n).map(|i| t.add_state(&format!("p{i}"))).collect();
    let syms = [t.add_symbol("a"), t.add_symbol("b")];
    let keys: Vec<(usize, Side)> = ids.iter().flat_map(|&q| [(q, Side::L), (q, Side::R)]).collect();
    for &q in &ids {
        if r.gen_bool(0.6) {
            t.add_leaf(q);
        }
        for &s in &syms {
            let p = if s == syms[0] { 0.9 } else { 0.6 };
            if r.gen_bool(p) {
                let (lf, rf): (GroundForm, GroundForm) = (form(r, &keys), form(r, &keys));
                t.add_transition(q, s, lf, rf).unwrap();
            }
        }
    }
    t
}

/// A functionally equivalent copy: state `q` (not the root) is split into
/// two halves that share its transitions.
pub fn split_state(a: &Swta, r: &mut Rng8) -> Swta {
    let n = a.num_states();
    if n < 2 {
        return a.clone();
    }
    let q = r.gen_range(1..n);
    let mut b = Swta::new(M, a.state_name(a.root()));
    for s in a.states() {
        b.add_state(s);
    }
    let twin = b.add_state("twin");
    for s in a.symbols() {
        b.add_symbol(s);
    }
    for c in a.colors() {
        b.add_color(c);
    }
    let half = Algebraic::inv_sqrt2_pow(M, 2);
    let rewrite = |f: &LinearForm<usize>| -> LinearForm<usize> {
        let mut out = LinearForm::empty();
        for (p, c) in f.iter() {
            if *p == q {
                out.add_term(q, c * &half);
                out.add_term(twin, c * &half);
            } else {
                out.add_term(*p, c.clone());
            }
        }
        out
    };
    for p in 0..n {
        if a.is_leaf(p) {
            b.add_leaf(p);
            if p == q {
                b.add_leaf(twin);
            }
        }
        for (&(s, c), tr) in a.transitions(p) {
            let (l, rr) = (rewrite(&tr.left), rewrite(&tr.right));
            b.add_transition(p, s, c, l.clone(), rr.clone()).unwrap();
            if p == q {
                b.add_transition(twin, s, c, l, rr).unwrap();
            }
        }
    }
    b
}

/// A copy with one coefficient doubled.
pub fn perturb(a: &Swta, r: &mut Rng8) -> Swta {
    let all: Vec<(usize, (usize, usize))> = (0..a.num_states())
        .flat_map(|q| a.transitions(q).keys().map(move |k| (q, *k)))
        .collect();
    let Some(&(q, (s, c))) = all.choose(r) else {
        return a.clone();
    };
    let tr = a.transitions(q)[&(s, c)].clone();
    let two = Algebraic::from_int(M, 2);
    let left = if r.gen_bool(0.5) { tr.left.scaled(&two) } else { tr.left.clone() };
    let right = if left == tr.left { tr.right.scaled(&two) } else { tr.right.clone() };
    let mut fresh = Swta::new(M, a.state_name(a.root()));
    for st in a.states() {
        fresh.add_state(st);
    }
    for sy in a.symbols() {
        fresh.add_symbol(sy);
    }
    for co in a.colors() {
        fresh.add_color(co);
    }
    for p in 0..a.num_states() {
        if a.is_leaf(p) {
            fresh.add_leaf(p);
        }
        for (&key, t) in a.transitions(p) {
            let (l, rr) = if (p, key) == (q, (s, c)) {
                (left.clone(), right.clone())
            } else {
                (t.left.clone(), t.right.clone())
            };
            fresh.add_transition(p, key.0, key.1, l, rr).unwrap();
        }
    }
    fresh
}

/// Every word over the SWTA's letters up to `max_len`, with names.
pub fn words(a: &Swta, max_len: usize) -> Vec<Vec<(String, String)>> {
    (0..=max_len)
        .flat_map(|n| a.all_words(n))
        .map(|w| a.word_names(&w))
        .collect()
}
