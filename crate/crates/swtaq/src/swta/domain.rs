// SPDX-License-Identifier: Apache-2.0
//! On-the-fly subset automaton recognizing the domain of the tree function.

use std::collections::HashMap;

use super::{StateId, Swta};

/// States are subsets of SWTA states, keyed by sorted id vectors. A step in
/// which some member of the subset has no transition for the letter (or an
/// empty form) goes to the implicit rejecting sink, reported as `None`.
pub struct DomainDfa<'a> {
    swta: &'a Swta,
    subsets: Vec<Vec<StateId>>,
    index: HashMap<Vec<StateId>, usize>,
    steps: HashMap<(usize, (usize, usize)), Option<usize>>,
}

impl<'a> DomainDfa<'a> {
    pub fn new(swta: &'a Swta) -> Self {
        let mut d = DomainDfa {
            swta,
            subsets: Vec::new(),
            index: HashMap::new(),
            steps: HashMap::new(),
        };
        d.intern(vec![swta.root()]);
        d
    }

    fn intern(&mut self, s: Vec<StateId>) -> usize {
        if let Some(&i) = self.index.get(&s) {
            return i;
        }
        let i = self.subsets.len();
        self.index.insert(s.clone(), i);
        self.subsets.push(s);
        i
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn subset(&self, g: usize) -> &[StateId] {
        &self.subsets[g]
    }

    pub fn num_explored(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_accepting(&self, g: usize) -> bool {
        let s = &self.subsets[g];
        !s.is_empty() && s.iter().all(|q| self.swta.is_leaf(*q))
    }

    pub fn step(&mut self, g: usize, letter: (usize, usize)) -> Option<usize> {
        if let Some(r) = self.steps.get(&(g, letter)) {
            return *r;
        }
        let mut next: Vec<StateId> = Vec::new();
        let mut dead = false;
        for &q in &self.subsets[g] {
            match self.swta.transition(q, letter.0, letter.1) {
                Some(t) if !t.left.is_empty() && !t.right.is_empty() => {
                    next.extend(t.left.support().chain(t.right.support()).copied());
                }
                _ => {
                    dead = true;
                    break;
                }
            }
        }
        let r = if dead {
            None
        } else {
            next.sort_unstable();
            next.dedup();
            Some(self.intern(next))
        };
        self.steps.insert((g, letter), r);
        r
    }

    pub fn run(&mut self, w: &[(usize, usize)]) -> Option<usize> {
        let mut g = self.initial();
        for &l in w {
            g = self.step(g, l)?;
        }
        Some(g)
    }

    pub fn accepts_word(&mut self, w: &[(usize, usize)]) -> bool {
        self.run(w).is_some_and(|g| self.is_accepting(g))
    }

    /// Depth-first search for an accepted word; `None` iff the language is
    /// empty.
    pub fn find_accepted(&mut self) -> Option<Vec<(usize, usize)>> {
        let letters = self.swta.letters();
        let mut visited = vec![false; 1];
        let mut stack: Vec<(usize, Vec<(usize, usize)>)> = vec![(self.initial(), Vec::new())];
        visited[0] = true;
        while let Some((g, w)) = stack.pop() {
            if self.is_accepting(g) {
                return Some(w);
            }
            // Reverse so the lexicographically first letter is explored first.
            for &l in letters.iter().rev() {
                if let Some(g2) = self.step(g, l) {
                    if visited.len() <= g2 {
                        visited.resize(g2 + 1, false);
                    }
                    if !visited[g2] {
                        visited[g2] = true;
                        let mut w2 = w.clone();
                        w2.push(l);
                        stack.push((g2, w2));
                    }
                }
            }
        }
        None
    }
}

impl Swta {
    pub fn domain_dfa(&self) -> DomainDfa<'_> {
        DomainDfa::new(self)
    }

    /// Language emptiness via the domain automaton.
    pub fn is_empty(&self) -> bool {
        self.domain_dfa().find_accepted().is_none()
    }

    /// A word in the domain, if any.
    pub fn find_word(&self) -> Option<Vec<(usize, usize)>> {
        self.domain_dfa().find_accepted()
    }
}
