// SPDX-License-Identifier: Apache-2.0
//! Language union.

use super::{Swta, Transition};
use crate::ModelError;

/// Union of two SWTAs. States and colors are renamed apart with `a.`/`b.`
/// prefixes; a fresh root `root` copies both roots' transitions.
pub fn union(a: &Swta, b: &Swta) -> Result<Swta, ModelError> {
    if a.m() != b.m() {
        return Err(ModelError::Modulus {
            expected: a.m(),
            got: b.m(),
        });
    }
    let mut c = Swta::new(a.m(), "root");
    let root = c.root();
    let mut root_is_leaf = false;
    for (side, src) in [("a", a), ("b", b)] {
        let ids: Vec<usize> = src
            .states()
            .iter()
            .map(|s| c.add_state(&format!("{side}.{s}")))
            .collect();
        let syms: Vec<usize> = src.symbols().iter().map(|s| c.add_symbol(s)).collect();
        let cols: Vec<usize> = src
            .colors()
            .iter()
            .map(|s| c.add_color(&format!("{side}.{s}")))
            .collect();
        for (q, &id) in ids.iter().enumerate() {
            if src.is_leaf(q) {
                c.add_leaf(id);
                if q == src.root() {
                    root_is_leaf = true;
                }
            }
            for (&(s, col), t) in src.transitions(q) {
                let t2 = Transition {
                    left: t.left.map_keys(|p| ids[*p]),
                    right: t.right.map_keys(|p| ids[*p]),
                };
                c.add_transition(id, syms[s], cols[col], t2.left.clone(), t2.right.clone())?;
                if q == src.root() {
                    c.add_transition(root, syms[s], cols[col], t2.left, t2.right)?;
                }
            }
        }
    }
    if root_is_leaf {
        c.add_leaf(root);
    }
    Ok(c)
}
