// SPDX-License-Identifier: Apache-2.0
//! Transducer composition and addition.

use std::collections::{HashMap, VecDeque};

use super::image::uses_side;
use super::{GroundForm, Side, Wtt, WttTransition};
use crate::algebra::Algebraic;
use crate::forms::LinearForm;
use crate::ModelError;

/// <q1, q2> with q2 = None for the pass-through component that copies T1.
type Key = (usize, Option<usize>);

fn subst_gt(
    x: &GroundForm,
    l1: &GroundForm,
    r1: &GroundForm,
) -> LinearForm<(Key, Side)> {
    let mut out = LinearForm::empty();
    for ((q2, side), c) in x.iter() {
        let src = match side {
            Side::L => l1,
            Side::R => r1,
        };
        for ((p1, d), e) in src.iter() {
            out.add_term(((*p1, Some(*q2)), *d), c * e);
        }
    }
    out
}

/// T2 after T1, restricted to pairs reachable from <r1,r2>. The pass-through
/// component plays the same role as in `image`: it keeps T1's states alive
/// when T2 ignores one of T1's output subtrees.
pub fn compose(t2: &Wtt, t1: &Wtt) -> Result<Wtt, ModelError> {
    if t1.m() != t2.m() {
        return Err(ModelError::Modulus {
            expected: t1.m(),
            got: t2.m(),
        });
    }
    let m = t1.m();
    let sym_map: Vec<Option<usize>> = t1.symbols().iter().map(|s| t2.symbol_id(s)).collect();
    let name = |k: &Key| match k.1 {
        Some(q) => format!("<{},{}>", t1.state_name(k.0), t2.state_name(q)),
        None => format!("<{},_>", t1.state_name(k.0)),
    };
    let root: Key = (t1.root(), Some(t2.root()));
    let mut out = Wtt::new(m, &name(&root));
    for s in t1.symbols() {
        out.add_symbol(s);
    }
    let mut ids: HashMap<Key, usize> = HashMap::from([(root, out.root())]);
    let mut queue = VecDeque::from([root]);
    while let Some(key) = queue.pop_front() {
        let id = ids[&key];
        let (q1, q2) = key;
        if t1.is_leaf(q1) && q2.is_none_or(|q| t2.is_leaf(q)) {
            out.add_leaf(id);
        }
        for (&sym, tr1) in t1.transitions(q1) {
            if tr1.left.is_empty() || tr1.right.is_empty() {
                continue;
            }
            let (l, r): (LinearForm<(Key, Side)>, LinearForm<(Key, Side)>) = match q2 {
                None => (
                    tr1.left.map_keys(|(p, d)| ((*p, None), *d)),
                    tr1.right.map_keys(|(p, d)| ((*p, None), *d)),
                ),
                Some(q2) => {
                    let Some(tr2) = sym_map[sym].and_then(|s| t2.transition(q2, s)) else {
                        continue;
                    };
                    if tr2.left.is_empty() || tr2.right.is_empty() {
                        continue;
                    }
                    let mut l = subst_gt(&tr2.left, &tr1.left, &tr1.right);
                    let r = subst_gt(&tr2.right, &tr1.left, &tr1.right);
                    for (side, src) in [(Side::L, &tr1.left), (Side::R, &tr1.right)] {
                        if !uses_side(tr2, side) {
                            for (p1, d) in src.support() {
                                l.add_term(((*p1, None), *d), Algebraic::zero(m));
                            }
                        }
                    }
                    (l, r)
                }
            };
            let mut intern = |k: &Key| -> usize {
                if let Some(&i) = ids.get(k) {
                    return i;
                }
                let i = out.add_fresh_state(&name(k));
                ids.insert(*k, i);
                queue.push_back(*k);
                i
            };
            let lf: GroundForm = l
                .iter()
                .map(|((k, d), c)| ((intern(k), *d), c.clone()))
                .collect();
            let rf: GroundForm = r
                .iter()
                .map(|((k, d), c)| ((intern(k), *d), c.clone()))
                .collect();
            out.add_transition(id, sym, lf, rf)?;
        }
    }
    Ok(out)
}

/// Composition of a time-ordered sequence: `ts[0]` acts first.
pub fn compose_all(ts: &[Wtt]) -> Result<Wtt, ModelError> {
    let mut it = ts.iter();
    let Some(first) = it.next() else {
        return Err(ModelError::Invalid("empty transducer sequence".into()));
    };
    let mut cur = first.clone();
    for t in it {
        cur = compose(t, &cur)?;
    }
    Ok(cur)
}

/// Ta + Tb: a fresh root whose transitions sum the two roots' forms.
///
/// Both roots must fire on the same symbols and neither may be a leaf state
/// (the sum would then have to double a bare leaf, which no state expresses).
pub fn add(ta: &Wtt, tb: &Wtt) -> Result<Wtt, ModelError> {
    if ta.m() != tb.m() {
        return Err(ModelError::Modulus {
            expected: ta.m(),
            got: tb.m(),
        });
    }
    if ta.is_leaf(ta.root()) || tb.is_leaf(tb.root()) {
        return Err(ModelError::Invalid("cannot add transducers whose root is a leaf".into()));
    }
    let syms_a: Vec<&String> = ta.transitions(ta.root()).keys().map(|&s| &ta.symbols()[s]).collect();
    let mut syms_b: Vec<&String> = tb.transitions(tb.root()).keys().map(|&s| &tb.symbols()[s]).collect();
    let mut sorted_a = syms_a.clone();
    sorted_a.sort();
    syms_b.sort();
    if sorted_a != syms_b {
        return Err(ModelError::Invalid(
            "root transitions of the summands use different symbols".into(),
        ));
    }
    let mut out = Wtt::new(ta.m(), "root");
    let mut maps = Vec::new();
    for (prefix, t) in [("a", ta), ("b", tb)] {
        let ids: Vec<usize> = t
            .states()
            .iter()
            .map(|s| out.add_state(&format!("{prefix}.{s}")))
            .collect();
        let syms: Vec<usize> = t.symbols().iter().map(|s| out.add_symbol(s)).collect();
        for (q, &id) in ids.iter().enumerate() {
            if t.is_leaf(q) {
                out.add_leaf(id);
            }
            for (&s, tr) in t.transitions(q) {
                out.add_transition(
                    id,
                    syms[s],
                    tr.left.map_keys(|(p, d)| (ids[*p], *d)),
                    tr.right.map_keys(|(p, d)| (ids[*p], *d)),
                )?;
            }
        }
        maps.push((ids, syms));
    }
    let root = out.root();
    for (idx, t) in [ta, tb].into_iter().enumerate() {
        let (ids, syms) = &maps[idx];
        for (&s, tr) in t.transitions(t.root()) {
            let l = tr.left.map_keys(|(p, d)| (ids[*p], *d));
            let r = tr.right.map_keys(|(p, d)| (ids[*p], *d));
            let sym = syms[s];
            let merged = match out.transition(root, sym) {
                None => WttTransition { left: l, right: r },
                Some(old) => {
                    let mut nl = old.left.clone();
                    nl.add_form(&l);
                    let mut nr = old.right.clone();
                    nr.add_form(&r);
                    WttTransition { left: nl, right: nr }
                }
            };
            out.set_transition(root, sym, merged);
        }
    }
    Ok(out.trim())
}
