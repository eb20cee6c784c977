// SPDX-License-Identifier: Apache-2.0
//! Synchronized weighted tree automata.

mod domain;
mod union;

pub use domain::DomainDfa;
pub use union::union;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use crate::algebra::Algebraic;
use crate::forms::LinearForm;
use crate::trees::PerfectTree;
use crate::ModelError;

pub type StateId = usize;
pub type StateForm = LinearForm<StateId>;
/// A symbol-color word, by name.
pub type Word = Vec<(String, String)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub left: StateForm,
    pub right: StateForm,
}

#[derive(Clone, Debug)]
pub struct Swta {
    m: usize,
    states: Vec<String>,
    state_index: HashMap<String, StateId>,
    symbols: Vec<String>,
    colors: Vec<String>,
    root: StateId,
    leaves: BTreeSet<StateId>,
    trans: Vec<BTreeMap<(usize, usize), Transition>>,
}

pub fn word(letters: &[(&str, &str)]) -> Word {
    letters
        .iter()
        .map(|(a, c)| (a.to_string(), c.to_string()))
        .collect()
}

impl Swta {
    pub fn new(m: usize, root: &str) -> Self {
        let mut a = Swta {
            m,
            states: Vec::new(),
            state_index: HashMap::new(),
            symbols: Vec::new(),
            colors: Vec::new(),
            root: 0,
            leaves: BTreeSet::new(),
            trans: Vec::new(),
        };
        a.root = a.add_state(root);
        a
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

    pub fn add_color(&mut self, name: &str) -> usize {
        intern(&mut self.colors, name)
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
        color: usize,
        left: StateForm,
        right: StateForm,
    ) -> Result<(), ModelError> {
        for (p, c) in left.iter().chain(right.iter()) {
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
        if self.trans[q].contains_key(&(sym, color)) {
            return Err(ModelError::Duplicate(format!(
                "transition {} {} {}",
                self.states[q], self.symbols[sym], self.colors[color]
            )));
        }
        self.trans[q].insert((sym, color), Transition { left, right });
        Ok(())
    }

    /// Name-based convenience for hand-written models.
    pub fn add_named(
        &mut self,
        q: &str,
        a: &str,
        c: &str,
        left: &[(&str, Algebraic)],
        right: &[(&str, Algebraic)],
    ) -> Result<(), ModelError> {
        let q = self.add_state(q);
        let sym = self.add_symbol(a);
        let col = self.add_color(c);
        let mut form = |terms: &[(&str, Algebraic)]| -> StateForm {
            LinearForm::from_terms(terms.iter().map(|(p, x)| (self.add_state(p), x.clone())))
        };
        let l = form(left);
        let r = form(right);
        self.add_transition(q, sym, col, l, r)
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

    pub fn colors(&self) -> &[String] {
        &self.colors
    }

    pub fn symbol_id(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == name)
    }

    pub fn color_id(&self, name: &str) -> Option<usize> {
        self.colors.iter().position(|s| s == name)
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

    pub fn transitions(&self, q: StateId) -> &BTreeMap<(usize, usize), Transition> {
        &self.trans[q]
    }

    pub fn transition(&self, q: StateId, sym: usize, color: usize) -> Option<&Transition> {
        self.trans[q].get(&(sym, color))
    }

    /// Looks up a transition by names.
    pub fn transition_named(&self, q: &str, a: &str, c: &str) -> Option<&Transition> {
        let q = self.state_id(q)?;
        self.transition(q, self.symbol_id(a)?, self.color_id(c)?)
    }

    /// Word by names to word by ids; `None` if it mentions unknown letters
    /// (the tree function is then undefined).
    pub fn word_ids(&self, w: &[(String, String)]) -> Option<Vec<(usize, usize)>> {
        w.iter()
            .map(|(a, c)| Some((self.symbol_id(a)?, self.color_id(c)?)))
            .collect()
    }

    pub fn word_names(&self, w: &[(usize, usize)]) -> Word {
        w.iter()
            .map(|&(a, c)| (self.symbols[a].clone(), self.colors[c].clone()))
            .collect()
    }

    /// The tree function from state `q`.
    pub fn evaluate(&self, q: StateId, w: &[(String, String)]) -> Option<PerfectTree> {
        let ids = self.word_ids(w)?;
        self.evaluate_ids(q, &ids)
    }

    /// The tree function from the root.
    pub fn eval(&self, w: &[(String, String)]) -> Option<PerfectTree> {
        self.evaluate(self.root, w)
    }

    pub fn evaluate_ids(&self, q: StateId, w: &[(usize, usize)]) -> Option<PerfectTree> {
        let mut memo = HashMap::new();
        let leaves = self.eval_rec(q, w, 0, &mut memo)?;
        let labels = w.iter().map(|&(a, _)| self.symbols[a].clone()).collect();
        Some(PerfectTree::from_parts(labels, (*leaves).clone()).expect("dense tree shape"))
    }

    fn eval_rec(
        &self,
        q: StateId,
        w: &[(usize, usize)],
        i: usize,
        memo: &mut HashMap<(StateId, usize), Option<Rc<Vec<Algebraic>>>>,
    ) -> Option<Rc<Vec<Algebraic>>> {
        if let Some(v) = memo.get(&(q, i)) {
            return v.clone();
        }
        let out = if i == w.len() {
            self.is_leaf(q).then(|| Rc::new(vec![Algebraic::one(self.m)]))
        } else {
            let (a, c) = w[i];
            self.transition(q, a, c).and_then(|t| {
                let l = self.eval_form(&t.left, w, i + 1, memo)?;
                let r = self.eval_form(&t.right, w, i + 1, memo)?;
                let mut v = l;
                v.extend(r);
                Some(Rc::new(v))
            })
        };
        memo.insert((q, i), out.clone());
        out
    }

    fn eval_form(
        &self,
        f: &StateForm,
        w: &[(usize, usize)],
        i: usize,
        memo: &mut HashMap<(StateId, usize), Option<Rc<Vec<Algebraic>>>>,
    ) -> Option<Vec<Algebraic>> {
        if f.is_empty() {
            return None;
        }
        let n = 1usize << (w.len() - i);
        let mut acc = vec![Algebraic::zero(self.m); n];
        for (p, c) in f.iter() {
            let sub = self.eval_rec(*p, w, i, memo)?;
            if c.is_zero() {
                continue;
            }
            for (x, y) in acc.iter_mut().zip(sub.iter()) {
                if !y.is_zero() {
                    *x = &*x + &(c * y);
                }
            }
        }
        Some(acc)
    }

    /// All letters (symbol id, color id) in lexicographic order.
    pub fn letters(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.symbols.len() {
            for c in 0..self.colors.len() {
                out.push((a, c));
            }
        }
        out
    }

    /// Whether `t` is produced by some word of length h(t). Exponential in
    /// h(t) (colors vary per level); meant for small trees.
    pub fn accepts(&self, t: &PerfectTree) -> bool {
        let Some(syms) = t
            .labels()
            .iter()
            .map(|l| self.symbol_id(l))
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        let mut dfa = DomainDfa::new(self);
        let mut word = Vec::with_capacity(syms.len());
        let g0 = dfa.initial();
        self.accepts_rec(t, &syms, &mut dfa, g0, &mut word)
    }

    fn accepts_rec(
        &self,
        t: &PerfectTree,
        syms: &[usize],
        dfa: &mut DomainDfa<'_>,
        g: usize,
        word: &mut Vec<(usize, usize)>,
    ) -> bool {
        if word.len() == syms.len() {
            return dfa.is_accepting(g)
                && self.evaluate_ids(self.root, word).as_ref() == Some(t);
        }
        let a = syms[word.len()];
        for c in 0..self.colors.len() {
            if let Some(g2) = dfa.step(g, (a, c)) {
                word.push((a, c));
                if self.accepts_rec(t, syms, dfa, g2, word) {
                    return true;
                }
                word.pop();
            }
        }
        false
    }

    /// Copy with zero-coefficient terms dropped (see `LinearForm::pruned`).
    /// This may enlarge the domain when a pruned state was the only one that
    /// could fail at some height.
    pub fn prune_zero_terms(&self) -> Swta {
        let mut out = self.clone();
        for tr in &mut out.trans {
            for t in tr.values_mut() {
                t.left = t.left.pruned();
                t.right = t.right.pruned();
            }
        }
        out
    }

    /// States reachable from the root through transition supports.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.states.len()];
        let mut stack = vec![self.root];
        seen[self.root] = true;
        while let Some(q) = stack.pop() {
            for t in self.trans[q].values() {
                for p in t.left.support().chain(t.right.support()) {
                    if !seen[*p] {
                        seen[*p] = true;
                        stack.push(*p);
                    }
                }
            }
        }
        seen
    }

    /// Drops unreachable states, keeping the relative order of the rest.
    pub fn trim(&self) -> Swta {
        let keep = self.reachable();
        let mut out = Swta::new(self.m, &self.states[self.root]);
        out.symbols = self.symbols.clone();
        out.colors = self.colors.clone();
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
            for (&(a, c), t) in tr {
                out.trans[map[q]].insert(
                    (a, c),
                    Transition {
                        left: t.left.map_keys(|p| map[*p]),
                        right: t.right.map_keys(|p| map[*p]),
                    },
                );
            }
        }
        out
    }

    /// Copy with every state renamed by `f`. Names must stay distinct.
    pub fn rename_states<F: Fn(&str) -> String>(&self, f: F) -> Swta {
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

    /// Copy with every color renamed by `f`.
    pub fn rename_colors<F: Fn(&str) -> String>(&self, f: F) -> Swta {
        let mut out = self.clone();
        out.colors = self.colors.iter().map(|s| f(s)).collect();
        out
    }


    /// Words of exactly length `len` over all letters, lexicographic.
    pub fn all_words(&self, len: usize) -> Vec<Vec<(usize, usize)>> {
        let letters = self.letters();
        let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * letters.len());
            for w in &out {
                for &l in &letters {
                    let mut w2 = w.clone();
                    w2.push(l);
                    next.push(w2);
                }
            }
            out = next;
        }
        out
    }

    /// Coefficient bit-length maximum over all transitions.
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

pub(crate) fn intern(v: &mut Vec<String>, name: &str) -> usize {
    match v.iter().position(|s| s == name) {
        Some(i) => i,
        None => {
            v.push(name.to_string());
            v.len() - 1
        }
    }
}

#[cfg(test)]
mod tests;
