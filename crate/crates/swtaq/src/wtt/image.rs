// SPDX-License-Identifier: Apache-2.0
//! Image of an SWTA under a transducer.

use std::collections::{HashMap, VecDeque};

use super::{Side, Wtt};
use crate::algebra::Algebraic;
use crate::forms::LinearForm;
use crate::swta::{StateForm, Swta};
use crate::ModelError;

/// Product key: SWTA state with a transducer state, or with `None` for the
/// pass-through component (see `image`).
type Key = (usize, Option<usize>);

/// x(l, r): replaces q(L) by sum_p l[p] <p,q> and q(R) by sum_p r[p] <p,q>.
pub fn substitute<K: Ord + Clone>(
    x: &LinearForm<(K, Side)>,
    l: &StateForm,
    r: &StateForm,
) -> LinearForm<(usize, K)> {
    let mut out = LinearForm::empty();
    for ((q, side), c) in x.iter() {
        let src = match side {
            Side::L => l,
            Side::R => r,
        };
        for (p, e) in src.iter() {
            out.add_term((*p, q.clone()), c * e);
        }
    }
    out
}

pub(crate) fn uses_side(t: &super::WttTransition, side: Side) -> bool {
    t.left
        .support()
        .chain(t.right.support())
        .any(|(_, s)| *s == side)
}

/// Product SWTA recognizing T(L(A)), restricted to reachable pairs.
///
/// When a transducer transition ignores one input subtree, the SWTA states of
/// that subtree would vanish from the product and the result would be defined
/// on words where A is not. Those states are kept alive with 0-coefficient
/// terms over a pass-through component `<p,_>` that copies A's behaviour.
pub fn image(t: &Wtt, a: &Swta) -> Result<Swta, ModelError> {
    if t.m() != a.m() {
        return Err(ModelError::Modulus {
            expected: a.m(),
            got: t.m(),
        });
    }
    let m = a.m();
    let sym_map: Vec<Option<usize>> = a.symbols().iter().map(|s| t.symbol_id(s)).collect();
    let name = |k: &Key| match k.1 {
        Some(q) => format!("<{},{}>", a.state_name(k.0), t.state_name(q)),
        None => format!("<{},_>", a.state_name(k.0)),
    };
    let root: Key = (a.root(), Some(t.root()));
    let mut out = Swta::new(m, &name(&root));
    for s in a.symbols() {
        out.add_symbol(s);
    }
    for c in a.colors() {
        out.add_color(c);
    }
    let mut ids: HashMap<Key, usize> = HashMap::new();
    ids.insert(root, out.root());
    let mut queue = VecDeque::from([root]);
    while let Some(key) = queue.pop_front() {
        let id = ids[&key];
        let (s, q) = key;
        let leaf = a.is_leaf(s) && q.is_none_or(|q| t.is_leaf(q));
        if leaf {
            out.add_leaf(id);
        }
        for (&(sym, col), at) in a.transitions(s) {
            if at.left.is_empty() || at.right.is_empty() {
                continue;
            }
            let (l, r) = match q {
                None => (
                    at.left.map_keys(|p| (*p, None)),
                    at.right.map_keys(|p| (*p, None)),
                ),
                Some(q) => {
                    let Some(tt) = sym_map[sym].and_then(|ts| t.transition(q, ts)) else {
                        continue;
                    };
                    if tt.left.is_empty() || tt.right.is_empty() {
                        continue;
                    }
                    let mut l: LinearForm<Key> = substitute(&tt.left, &at.left, &at.right)
                        .map_keys(|(p, q2)| (*p, Some(*q2)));
                    let r: LinearForm<Key> = substitute(&tt.right, &at.left, &at.right)
                        .map_keys(|(p, q2)| (*p, Some(*q2)));
                    for (side, src) in [(Side::L, &at.left), (Side::R, &at.right)] {
                        if !uses_side(tt, side) {
                            for p in src.support() {
                                l.add_term((*p, None), Algebraic::zero(m));
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
            let lf: StateForm = l.iter().map(|(k, c)| (intern(k), c.clone())).collect();
            let rf: StateForm = r.iter().map(|(k, c)| (intern(k), c.clone())).collect();
            out.add_transition(id, sym, col, lf, rf)?;
        }
    }
    Ok(out)
}

/// Applies a sequence of transducers in order (first element first).
pub fn image_all(ts: &[Wtt], a: &Swta) -> Result<Swta, ModelError> {
    let mut cur = a.clone();
    for t in ts {
        cur = image(t, &cur)?;
    }
    Ok(cur)
}
