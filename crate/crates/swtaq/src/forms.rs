// SPDX-License-Identifier: Apache-2.0
//! Linear forms: finite partial maps from keys to scalars.
//!
//! A key that is present with coefficient 0 is different from an absent key;
//! the support drives reachability and domains.

use std::collections::BTreeMap;

use crate::algebra::Algebraic;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearForm<K: Ord> {
    entries: BTreeMap<K, Algebraic>,
}

impl<K: Ord> Default for LinearForm<K> {
    fn default() -> Self {
        LinearForm {
            entries: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> LinearForm<K> {
    /// The designated empty form `0`.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(k: K, c: Algebraic) -> Self {
        let mut f = Self::empty();
        f.add_term(k, c);
        f
    }

    /// Builds a form, summing coefficients of repeated keys.
    pub fn from_terms<I: IntoIterator<Item = (K, Algebraic)>>(terms: I) -> Self {
        let mut f = Self::empty();
        for (k, c) in terms {
            f.add_term(k, c);
        }
        f
    }

    /// Adds `c * k`; the key stays present even if the sum is zero.
    pub fn add_term(&mut self, k: K, c: Algebraic) {
        match self.entries.get_mut(&k) {
            Some(old) => *old = &*old + &c,
            None => {
                self.entries.insert(k, c);
            }
        }
    }

    pub fn add_form(&mut self, other: &Self) {
        for (k, c) in &other.entries {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn scaled(&self, c: &Algebraic) -> Self {
        LinearForm {
            entries: self
                .entries
                .iter()
                .map(|(k, v)| (k.clone(), c * v))
                .collect(),
        }
    }

    /// Same support, all coefficients zero.
    pub fn zeroed(&self) -> Self {
        LinearForm {
            entries: self
                .entries
                .iter()
                .map(|(k, v)| (k.clone(), Algebraic::zero(v.m())))
                .collect(),
        }
    }

    pub fn map_keys<K2: Ord + Clone, F: FnMut(&K) -> K2>(&self, mut f: F) -> LinearForm<K2> {
        LinearForm::from_terms(self.entries.iter().map(|(k, v)| (f(k), v.clone())))
    }

    pub fn get(&self, k: &K) -> Option<&Algebraic> {
        self.entries.get(k)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Algebraic)> {
        self.entries.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &K> {
        self.entries.keys()
    }

    /// Drops zero-coefficient terms but keeps one term if all are zero, so an
    /// all-zero form does not turn into the (undefined) empty form.
    pub fn pruned(&self) -> Self {
        let mut out: BTreeMap<K, Algebraic> = self
            .entries
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        if out.is_empty() {
            if let Some((k, v)) = self.entries.iter().next() {
                out.insert(k.clone(), v.clone());
            }
        }
        LinearForm { entries: out }
    }
}

impl<K: Ord + Clone> FromIterator<(K, Algebraic)> for LinearForm<K> {
    fn from_iter<I: IntoIterator<Item = (K, Algebraic)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}
