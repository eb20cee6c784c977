// SPDX-License-Identifier: Apache-2.0
//! Weighted tree transducers.

mod compose;
mod image;

pub use compose::{add, compose, compose_all};
pub use image::{image, image_all, substitute};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;

use crate::algebra::Algebraic;
use crate::forms::LinearForm;
use crate::swta::intern;
use crate::trees::PerfectTree;
use crate::ModelError;

pub type StateId = usize;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Side {
    L,
    R,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::L => "L",
            Side::R => "R",
        })
    }
}

/// Ground term q(L) or q(R).
pub type GroundTerm = (StateId, Side);
pub type GroundForm = LinearForm<GroundTerm>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WttTransition {
    pub left: GroundForm,
    pub right: GroundForm,
}

#[derive(Clone, Debug)]
pub struct Wtt {
    m: usize,
    states: Vec<String>,
    state_index: HashMap<String, StateId>,
    symbols: Vec<String>,
    root: StateId,
    leaves: BTreeSet<StateId>,
    trans: Vec<BTreeMap<usize, WttTransition>>,
}

type Memo = HashMap<(StateId, usize, usize), Option<Rc<Vec<Algebraic>>>>;

impl Wtt {
    pub fn new(m: usize, root: &str) -> Self {
        let mut t = Wtt {
            m,
            states: Vec::new(),
            state_index: HashMap::new(),
            symbols: Vec::new(),
            root: 0,
            leaves: BTreeSet::new(),
            trans: Vec::new(),
        };
        t.root = t.add_state(root);
        t
    }

    pub fn add_state(&mut self, name: &str) -> StateId {
        if let Some(&id) = self.state_index.get(name) {
            return id;
        }
        let id = self.states.len();
        self.states.push(name.to_string());
        self.state_index.insert(name.to_string(), id);
        self.trans.push(BTreeMap::new());
        id
    }

    /// Adds a new state; if `name` is taken a `#n` suffix keeps it unique.
    pub fn add_fresh_state(&mut self, name: &str) -> StateId {
        let mut candidate = name.to_string();
        let mut n = 1;
        while self.state_index.contains_key(&candidate) {
            candidate = format!("{name}#{n}");
            n += 1;
        }
        self.add_state(&candidate)
    }

    pub fn add_symbol(&mut self, name: &str) -> usize {
        intern(&mut self.symbols, name)
    }

    pub fn set_root(&mut self, q: StateId) {
        self.root = q;
    }

    pub fn add_leaf(&mut self, q: StateId) {
        self.leaves.insert(q);
    }

    pub fn add_transition(
        &mut self,
        q: StateId,
        sym: usize,
        left: GroundForm,
        right: GroundForm,
    ) -> Result<(), ModelError> {
        for ((p, _), c) in left.iter().chain(right.iter()) {
            if *p >= self.states.len() {
                return Err(ModelError::Unknown(format!("state id {p}")));
            }
            if c.m() != self.m {
                return Err(ModelError::Modulus {
                    expected: self.m,
                    got: c.m(),
                });
            }
        }
        if self.trans[q].contains_key(&sym) {
            return Err(ModelError::Duplicate(format!(
                "transition {} {}",
                self.states[q], self.symbols[sym]
            )));
        }
        self.trans[q].insert(sym, WttTransition { left, right });
        Ok(())
    }

    /// Name-based convenience for hand-written transducers.
    pub fn add_named(
        &mut self,
        q: &str,
        a: &str,
        left: &[(&str, Side, Algebraic)],
        right: &[(&str, Side, Algebraic)],
    ) -> Result<(), ModelError> {
        let q = self.add_state(q);
        let sym = self.add_symbol(a);
        let mut form = |terms: &[(&str, Side, Algebraic)]| -> GroundForm {
            LinearForm::from_terms(
                terms
                    .iter()
                    .map(|(p, s, x)| ((self.add_state(p), *s), x.clone())),
            )
        };
        let l = form(left);
        let r = form(right);
        self.add_transition(q, sym, l, r)
    }

    /// Replace an existing transition (used by zeroing constructions).
    pub fn set_transition(&mut self, q: StateId, sym: usize, t: WttTransition) {
        self.trans[q].insert(sym, t);
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.trans.iter().map(BTreeMap::len).sum()
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.states[q]
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.state_index.get(name).copied()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol_id(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == name)
    }

    pub fn root(&self) -> StateId {
        self.root
    }

    pub fn leaves(&self) -> &BTreeSet<StateId> {
        &self.leaves
    }

    pub fn is_leaf(&self, q: StateId) -> bool {
        self.leaves.contains(&q)
    }

    pub fn transitions(&self, q: StateId) -> &BTreeMap<usize, WttTransition> {
        &self.trans[q]
    }

    pub fn transition(&self, q: StateId, sym: usize) -> Option<&WttTransition> {
        self.trans[q].get(&sym)
    }

    pub fn transition_named(&self, q: &str, a: &str) -> Option<&WttTransition> {
        self.transition(self.state_id(q)?, self.symbol_id(a)?)
    }

    /// T_r(t); `None` is the undefined result.
    pub fn apply(&self, t: &PerfectTree) -> Option<PerfectTree> {
        self.apply_from(self.root, t)
    }

    pub fn apply_from(&self, q: StateId, t: &PerfectTree) -> Option<PerfectTree> {
        let syms: Vec<Option<usize>> = t.labels().iter().map(|l| self.symbol_id(l)).collect();
        let mut memo = Memo::new();
        let leaves = self.apply_rec(q, t, &syms, 0, 0, &mut memo)?;
        Some(PerfectTree::from_parts(t.labels().to_vec(), (*leaves).clone()).expect("shape"))
    }

    fn apply_rec(
        &self,
        q: StateId,
        t: &PerfectTree,
        syms: &[Option<usize>],
        depth: usize,
        index: usize,
        memo: &mut Memo,
    ) -> Option<Rc<Vec<Algebraic>>> {
        if let Some(v) = memo.get(&(q, depth, index)) {
            return v.clone();
        }
        let h = t.height();
        let out = if depth == h {
            self.is_leaf(q)
                .then(|| Rc::new(vec![t.leaves()[index].clone()]))
        } else {
            syms[depth]
                .and_then(|a| self.transition(q, a))
                .and_then(|tr| {
                    let mut l = self.apply_form(&tr.left, t, syms, depth + 1, index, memo)?;
                    let r = self.apply_form(&tr.right, t, syms, depth + 1, index, memo)?;
                    l.extend(r);
                    Some(Rc::new(l))
                })
        };
        memo.insert((q, depth, index), out.clone());
        out
    }

    /// Evaluates a ground-term form over the children of node (depth-1, index).
    fn apply_form(
        &self,
        f: &GroundForm,
        t: &PerfectTree,
        syms: &[Option<usize>],
        depth: usize,
        index: usize,
        memo: &mut Memo,
    ) -> Option<Vec<Algebraic>> {
        if f.is_empty() {
            return None;
        }
        let n = 1usize << (t.height() - depth);
        let mut acc = vec![Algebraic::zero(self.m); n];
        for ((p, side), c) in f.iter() {
            let child = 2 * index + usize::from(*side == Side::R);
            let sub = self.apply_rec(*p, t, syms, depth, child, memo)?;
            if c.is_zero() {
                continue;
            }
            let unit = c.is_one();
            for (x, y) in acc.iter_mut().zip(sub.iter()) {
                if y.is_zero() {
                    continue;
                }
                let term = if unit { y.clone() } else { c * y };
                *x = if x.is_zero() { term } else { &*x + &term };
            }
        }
        Some(acc)
    }

    /// States reachable from the root.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.states.len()];
        let mut stack = vec![self.root];
        seen[self.root] = true;
        while let Some(q) = stack.pop() {
            for t in self.trans[q].values() {
                for (p, _) in t.left.support().chain(t.right.support()) {
                    if !seen[*p] {
                        seen[*p] = true;
                        stack.push(*p);
                    }
                }
            }
        }
        seen
    }

    /// Drops unreachable states.
    pub fn trim(&self) -> Wtt {
        let keep = self.reachable();
        let mut out = Wtt::new(self.m, &self.states[self.root]);
        out.symbols = self.symbols.clone();
        let mut map = vec![usize::MAX; self.states.len()];
        for (q, name) in self.states.iter().enumerate() {
            if keep[q] {
                map[q] = out.add_state(name);
            }
        }
        for (q, tr) in self.trans.iter().enumerate() {
            if !keep[q] {
                continue;
            }
            if self.is_leaf(q) {
                out.add_leaf(map[q]);
            }
            for (&a, t) in tr {
                out.trans[map[q]].insert(
                    a,
                    WttTransition {
                        left: t.left.map_keys(|(p, s)| (map[*p], *s)),
                        right: t.right.map_keys(|(p, s)| (map[*p], *s)),
                    },
                );
            }
        }
        out
    }

    pub fn rename_states<F: Fn(&str) -> String>(&self, f: F) -> Wtt {
        let mut out = self.clone();
        out.states = self.states.iter().map(|s| f(s)).collect();
        out.state_index = out
            .states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        assert_eq!(out.state_index.len(), out.states.len(), "rename collided");
        out
    }

    /// Renames states to `prefix0`, `prefix1`, ... in id order.
    pub fn compact_names(&self, prefix: &str) -> Wtt {
        let mut out = self.clone();
        out.states = (0..self.states.len()).map(|i| format!("{prefix}{i}")).collect();
        out.state_index = out
            .states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        out
    }

    /// Copy where every symbol `a` listed in `map` also gets the transitions
    /// of its source symbol (e.g. primed copies behaving like the original).
    pub fn alias_symbols(&self, map: &[(&str, &str)]) -> Wtt {
        let mut out = self.clone();
        for (alias, src) in map {
            let Some(s) = self.symbol_id(src) else { continue };
            let a = out.add_symbol(alias);
            for q in 0..out.states.len() {
                if let Some(t) = self.trans[q].get(&s).cloned() {
                    out.trans[q].entry(a).or_insert(t);
                }
            }
        }
        out
    }

    /// Largest coefficient bit length.
    pub fn max_coeff_bits(&self) -> u64 {
        self.trans
            .iter()
            .flat_map(|tr| tr.values())
            .flat_map(|t| t.left.iter().chain(t.right.iter()))
            .map(|(_, c)| c.max_bits())
            .max()
            .unwrap_or(0)
    }
}

/// Identity transducer over `symbols`, one root-and-leaf state.
pub fn identity(m: usize, symbols: &[&str]) -> Wtt {
    let mut t = Wtt::new(m, "id");
    t.add_leaf(0);
    let one = Algebraic::one(m);
    for a in symbols {
        t.add_named("id", a, &[("id", Side::L, one.clone())], &[("id", Side::R, one.clone())])
            .expect("fresh symbol");
    }
    t
}
