// SPDX-License-Identifier: Apache-2.0
//! Functional equivalence and inclusion of SWTAs.
//!
//! Two SWTAs are related in two stages: their domains are compared on the
//! product of the domain automata, then the difference automaton A - B is
//! encoded as a linear transition system whose reachable vectors are
//! collected per state (Karr). A target state reached with a vector whose
//! leaf value is nonzero is a point where the tree functions differ.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use crate::algebra::{axpy, AlgebraError, Algebraic, Basis, FieldScalar, SparseVec};
use crate::forms::LinearForm;
use crate::swta::{DomainDfa, Swta, Word};
use crate::wtt::Side;
use crate::ModelError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Equal,
    Included,
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "equal" | "eq" => Ok(Mode::Equal),
            "include" | "included" | "inclusion" => Ok(Mode::Included),
            _ => Err(format!("mode must be `equal` or `include`, got `{s}`")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Equal => "equal",
            Mode::Included => "include",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// The word is in the domain of the left automaton only.
    OnlyLeft,
    /// The word is in the domain of the right automaton only.
    OnlyRight,
    /// Both are defined and the trees differ at `branch`.
    Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub word: Word,
    /// Path to a differing leaf (only for `Value`; may be empty otherwise).
    pub branch: Vec<Side>,
    pub kind: WitnessKind,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.word.iter().map(|(a, c)| format!("<{a},{c}>")).collect();
        let b: String = self
            .branch
            .iter()
            .map(|s| if *s == Side::L { '0' } else { '1' })
            .collect();
        let kind = match self.kind {
            WitnessKind::OnlyLeft => "defined on the left only",
            WitnessKind::OnlyRight => "defined on the right only",
            WitnessKind::Value => "values differ",
        };
        write!(f, "word {} ({kind})", if w.is_empty() { "eps".into() } else { w.join("") })?;
        if self.kind == WitnessKind::Value {
            write!(f, " at branch {}", if b.is_empty() { "eps" } else { &b })?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// Product states visited by the domain comparison.
    pub domain_states: usize,
    /// LTS states materialized.
    pub lts_states: usize,
    /// Vectors inserted into some basis.
    pub vectors: usize,
    /// Largest per-state basis.
    pub max_basis: usize,
    /// Vector dimension (states of the difference automaton).
    pub dim: usize,
    /// Largest numerator/denominator bit length among inserted vectors.
    pub max_coeff_bits: u64,
    /// Words evaluated by the bounded oracle.
    pub words: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub stats: Stats,
}

impl Verdict {
    fn holds(stats: Stats) -> Self {
        Verdict {
            holds: true,
            witness: None,
            stats,
        }
    }

    fn fails(w: Witness, stats: Stats) -> Self {
        Verdict {
            holds: false,
            witness: Some(w),
            stats,
        }
    }
}

/// The difference automaton: A and B renamed apart (`a.`/`b.`), colors
/// matched by name, and a fresh root `diff` whose single transition on
/// (alpha, first color) is (r_A - r_B | r_A - r_B). Alpha is A's first symbol.
pub fn diff_swta(a: &Swta, b: &Swta) -> Result<Swta, ModelError> {
    if a.m() != b.m() {
        return Err(ModelError::Modulus {
            expected: a.m(),
            got: b.m(),
        });
    }
    let m = a.m();
    let mut d = Swta::new(m, "diff");
    let alpha = a
        .symbols()
        .first()
        .or(b.symbols().first())
        .cloned()
        .unwrap_or_else(|| "a".to_string());
    let color = a
        .colors()
        .first()
        .or(b.colors().first())
        .cloned()
        .unwrap_or_else(|| "1".to_string());
    let alpha_id = d.add_symbol(&alpha);
    let color_id = d.add_color(&color);
    let mut roots = Vec::new();
    for (prefix, src) in [("a", a), ("b", b)] {
        let ids: Vec<usize> = src
            .states()
            .iter()
            .map(|s| d.add_state(&format!("{prefix}.{s}")))
            .collect();
        let syms: Vec<usize> = src.symbols().iter().map(|s| d.add_symbol(s)).collect();
        let cols: Vec<usize> = src.colors().iter().map(|c| d.add_color(c)).collect();
        for (q, &id) in ids.iter().enumerate() {
            if src.is_leaf(q) {
                d.add_leaf(id);
            }
            for (&(s, c), t) in src.transitions(q) {
                d.add_transition(
                    id,
                    syms[s],
                    cols[c],
                    t.left.map_keys(|p| ids[*p]),
                    t.right.map_keys(|p| ids[*p]),
                )?;
            }
        }
        roots.push(ids[src.root()]);
    }
    let form = LinearForm::from_terms([
        (roots[0], Algebraic::one(m)),
        (roots[1], -Algebraic::one(m)),
    ]);
    d.add_transition(d.root(), alpha_id, color_id, form.clone(), form)?;
    Ok(d)
}

/// A linear transition system explored on the fly.
pub trait LinearSystem {
    type Label: Clone;

    fn dim(&self) -> usize;
    fn initial(&mut self) -> (usize, SparseVec);
    /// Outgoing edges as (label, target state, matrix id).
    fn edges(&mut self, s: usize) -> Vec<(Self::Label, usize, usize)>;
    /// Applies matrix `mat` to `v`.
    fn apply(&self, mat: usize, v: &SparseVec) -> SparseVec;
    fn is_target(&self, s: usize) -> bool;
    /// Whether `v` at target `s` violates the invariant.
    fn violates(&self, s: usize, v: &SparseVec) -> bool;
    fn num_states(&self) -> usize;
}

/// Matrix as rows: row q is the image of the unit vector e_q.
pub type Rows = Vec<SparseVec>;

fn apply_rows(rows: &Rows, v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (q, x) in v {
        if let Some(row) = rows.get(*q) {
            if !row.is_empty() {
                out = axpy(&out, x, row);
            }
        }
    }
    out
}

/// An LTS given explicitly; the invariant is "every vector at a target is 0".
#[derive(Clone, Debug)]
pub struct ExplicitLts {
    pub dim: usize,
    pub initial_state: usize,
    pub initial_vector: SparseVec,
    pub targets: Vec<bool>,
    pub matrices: Vec<Rows>,
    /// (from, label, to, matrix)
    pub edges: Vec<(usize, String, usize, usize)>,
}

impl LinearSystem for ExplicitLts {
    type Label = String;

    fn dim(&self) -> usize {
        self.dim
    }

    fn initial(&mut self) -> (usize, SparseVec) {
        (self.initial_state, self.initial_vector.clone())
    }

    fn edges(&mut self, s: usize) -> Vec<(String, usize, usize)> {
        self.edges
            .iter()
            .filter(|e| e.0 == s)
            .map(|e| (e.1.clone(), e.2, e.3))
            .collect()
    }

    fn apply(&self, mat: usize, v: &SparseVec) -> SparseVec {
        apply_rows(&self.matrices[mat], v)
    }

    fn is_target(&self, s: usize) -> bool {
        self.targets[s]
    }

    fn violates(&self, _s: usize, v: &SparseVec) -> bool {
        !v.is_empty()
    }

    fn num_states(&self) -> usize {
        self.targets.len()
    }
}

/// The LTS of an SWTA. States are pairs (U, g) of the support reached along
/// one branch and the domain-automaton state; edges are labelled by a
/// letter and a side. At a target (g accepting) the observed value is the
/// leaf value sum_q x_q.
pub struct Lts<'a> {
    d: &'a Swta,
    dfa: DomainDfa<'a>,
    states: Vec<(Vec<usize>, usize)>,
    index: HashMap<(Vec<usize>, usize), usize>,
    mats: Vec<Rc<Rows>>,
    mat_index: HashMap<((usize, usize), Side), usize>,
    letters: Vec<(usize, usize)>,
    zero_vector_test: bool,
}

pub type LtsLabel = ((usize, usize), Side);

impl<'a> Lts<'a> {
    fn intern(&mut self, u: Vec<usize>, g: usize) -> usize {
        let key = (u, g);
        if let Some(&i) = self.index.get(&key) {
            return i;
        }
        let i = self.states.len();
        self.states.push(key.clone());
        self.index.insert(key, i);
        i
    }

    /// Uses the plain "vector is zero" test at targets instead of the leaf
    /// value; kept for comparison in tests.
    pub fn with_zero_vector_test(mut self) -> Self {
        self.zero_vector_test = true;
        self
    }

    pub fn state(&self, s: usize) -> (&[usize], usize) {
        (&self.states[s].0, self.states[s].1)
    }

    /// M(a, c, side), built once per letter and side.
    pub fn matrix(&mut self, letter: (usize, usize), side: Side) -> Result<usize, AlgebraError> {
        if let Some(&i) = self.mat_index.get(&(letter, side)) {
            return Ok(i);
        }
        let mut rows = Vec::with_capacity(self.d.num_states());
        for q in 0..self.d.num_states() {
            let row = match self.d.transition(q, letter.0, letter.1) {
                Some(t) => {
                    let f = if side == Side::L { &t.left } else { &t.right };
                    let mut v: SparseVec = Vec::new();
                    for (p, c) in f.iter() {
                        let x = FieldScalar::embed(c)?;
                        if !x.is_zero() {
                            v.push((*p, x));
                        }
                    }
                    v
                }
                None => Vec::new(),
            };
            rows.push(row);
        }
        let i = self.mats.len();
        self.mats.push(Rc::new(rows));
        self.mat_index.insert((letter, side), i);
        Ok(i)
    }

    pub fn rows(&self, mat: usize) -> &Rows {
        &self.mats[mat]
    }

    pub fn label_of(&self, s: usize) -> &(Vec<usize>, usize) {
        &self.states[s]
    }
}

pub fn build_lts(d: &Swta) -> Lts<'_> {
    let mut lts = Lts {
        d,
        dfa: DomainDfa::new(d),
        states: Vec::new(),
        index: HashMap::new(),
        mats: Vec::new(),
        mat_index: HashMap::new(),
        letters: d.letters(),
        zero_vector_test: false,
    };
    let g0 = lts.dfa.initial();
    lts.intern(vec![d.root()], g0);
    lts
}

impl LinearSystem for Lts<'_> {
    type Label = LtsLabel;

    fn dim(&self) -> usize {
        self.d.num_states()
    }

    fn initial(&mut self) -> (usize, SparseVec) {
        (0, vec![(self.d.root(), FieldScalar::one(self.d.m()))])
    }

    fn edges(&mut self, s: usize) -> Vec<(LtsLabel, usize, usize)> {
        let (u, g) = self.states[s].clone();
        let mut out = Vec::new();
        for letter in self.letters.clone() {
            let Some(g2) = self.dfa.step(g, letter) else {
                continue;
            };
            for side in [Side::L, Side::R] {
                let mut u2: Vec<usize> = Vec::new();
                for &q in &u {
                    let t = self
                        .d
                        .transition(q, letter.0, letter.1)
                        .expect("domain step implies transitions");
                    let f = if side == Side::L { &t.left } else { &t.right };
                    u2.extend(f.support().copied());
                }
                u2.sort_unstable();
                u2.dedup();
                let mat = self
                    .matrix(letter, side)
                    .expect("scalars of one SWTA share a valid modulus");
                let t = self.intern(u2, g2);
                out.push(((letter, side), t, mat));
            }
        }
        out
    }

    fn apply(&self, mat: usize, v: &SparseVec) -> SparseVec {
        apply_rows(&self.mats[mat], v)
    }

    fn is_target(&self, s: usize) -> bool {
        self.dfa.is_accepting(self.states[s].1)
    }

    fn violates(&self, _s: usize, v: &SparseVec) -> bool {
        if self.zero_vector_test {
            return !v.is_empty();
        }
        let mut sum = FieldScalar::zero(self.d.m());
        for (_, x) in v {
            sum = sum.add(x);
        }
        !sum.is_zero()
    }

    fn num_states(&self) -> usize {
        self.states.len()
    }
}

/// Result of the zero-invariant check; `path` is a label sequence from the
/// initial state to a violating target.
#[derive(Clone, Debug)]
pub struct KarrResult<L> {
    pub holds: bool,
    pub path: Option<Vec<L>>,
    pub stats: Stats,
}

/// Karr-style saturation: every state keeps a basis of the vectors that
/// reach it; only vectors that enlarge a basis are propagated. Stops at the
/// first violating vector.
pub fn zero_invariant<S: LinearSystem>(sys: &mut S) -> KarrResult<S::Label> {
    let dim = sys.dim();
    let m_hint = sys_modulus(sys);
    let mut bases: Vec<Basis> = Vec::new();
    let mut stats = Stats {
        dim,
        ..Stats::default()
    };
    // node: (state, vector, parent node, label)
    let mut nodes: Vec<(usize, SparseVec, Option<(usize, S::Label)>)> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut edge_cache: HashMap<usize, Vec<(S::Label, usize, usize)>> = HashMap::new();

    let (s0, v0) = sys.initial();
    let mut pending = vec![(s0, v0, None)];
    loop {
        for (s, v, parent) in pending.drain(..) {
            if bases.len() <= s.max(sys.num_states()) {
                bases.resize_with(s.max(sys.num_states()) + 1, || Basis::new(dim, m_hint));
            }
            if !bases[s].insert_sparse(&v).expect("vector fits the LTS dimension") {
                continue;
            }
            assert!(bases[s].len() <= dim, "basis exceeds the number of variables");
            stats.vectors += 1;
            stats.max_basis = stats.max_basis.max(bases[s].len());
            for (_, x) in &v {
                stats.max_coeff_bits = stats.max_coeff_bits.max(x.max_bits());
            }
            let id = nodes.len();
            let violating = sys.is_target(s) && sys.violates(s, &v);
            nodes.push((s, v, parent));
            if violating {
                let mut path = Vec::new();
                let mut cur = id;
                while let Some((p, l)) = nodes[cur].2.clone() {
                    path.push(l);
                    cur = p;
                }
                path.reverse();
                stats.lts_states = sys.num_states();
                return KarrResult {
                    holds: false,
                    path: Some(path),
                    stats,
                };
            }
            queue.push_back(id);
        }
        let Some(id) = queue.pop_front() else { break };
        let s = nodes[id].0;
        let edges = edge_cache.entry(s).or_insert_with(|| sys.edges(s)).clone();
        for (label, t, mat) in edges {
            let v2 = sys.apply(mat, &nodes[id].1);
            if v2.is_empty() {
                continue;
            }
            pending.push((t, v2, Some((id, label))));
        }
    }
    stats.lts_states = sys.num_states();
    KarrResult {
        holds: true,
        path: None,
        stats,
    }
}

fn sys_modulus<S: LinearSystem>(sys: &mut S) -> usize {
    let (_, v) = sys.initial();
    v.first().map_or(crate::algebra::DEFAULT_M, |(_, x)| x.m())
}

/// Letter by names in `a`, if both symbol and color exist there.
fn letter_in(a: &Swta, sym: &str, col: &str) -> Option<(usize, usize)> {
    Some((a.symbol_id(sym)?, a.color_id(col)?))
}

/// All (symbol, color) names of either automaton, in a fixed order.
fn joint_letters(a: &Swta, b: &Swta) -> Vec<(String, String)> {
    let mut syms: Vec<String> = a.symbols().to_vec();
    for s in b.symbols() {
        if !syms.contains(s) {
            syms.push(s.clone());
        }
    }
    let mut cols: Vec<String> = a.colors().to_vec();
    for c in b.colors() {
        if !cols.contains(c) {
            cols.push(c.clone());
        }
    }
    let mut out = Vec::new();
    for s in &syms {
        for c in &cols {
            out.push((s.clone(), c.clone()));
        }
    }
    out
}

/// Compares dom(A) and dom(B) by breadth-first search over pairs of domain
/// automaton states (the first witness found is a shortest one).
pub fn domain_relate(a: &Swta, b: &Swta, mode: Mode) -> Verdict {
    let letters = joint_letters(a, b);
    let mut da = DomainDfa::new(a);
    let mut db = DomainDfa::new(b);
    type Pair = (Option<usize>, Option<usize>);
    let start: Pair = (Some(da.initial()), Some(db.initial()));
    let mut seen: HashMap<Pair, Option<(Pair, usize)>> = HashMap::from([(start, None)]);
    let mut queue = VecDeque::from([start]);
    let mut stats = Stats::default();
    while let Some(p) = queue.pop_front() {
        stats.domain_states += 1;
        let acc_a = p.0.is_some_and(|g| da.is_accepting(g));
        let acc_b = p.1.is_some_and(|g| db.is_accepting(g));
        let bad = match mode {
            Mode::Equal => acc_a != acc_b,
            Mode::Included => acc_a && !acc_b,
        };
        if bad {
            let mut word = Vec::new();
            let mut cur = p;
            while let Some((prev, l)) = seen[&cur] {
                word.push(letters[l].clone());
                cur = prev;
            }
            word.reverse();
            let kind = if acc_a {
                WitnessKind::OnlyLeft
            } else {
                WitnessKind::OnlyRight
            };
            return Verdict::fails(
                Witness {
                    word,
                    branch: Vec::new(),
                    kind,
                },
                stats,
            );
        }
        for (li, (s, c)) in letters.iter().enumerate() {
            let na = p.0.and_then(|g| letter_in(a, s, c).and_then(|l| da.step(g, l)));
            let nb = p.1.and_then(|g| letter_in(b, s, c).and_then(|l| db.step(g, l)));
            let useful = match mode {
                Mode::Equal => na.is_some() || nb.is_some(),
                Mode::Included => na.is_some(),
            };
            if !useful {
                continue;
            }
            let q = (na, nb);
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(q) {
                e.insert(Some((p, li)));
                queue.push_back(q);
            }
        }
    }
    Verdict::holds(stats)
}

/// Functional equivalence (`Equal`) or inclusion of tree functions.
pub fn functional_relate(a: &Swta, b: &Swta, mode: Mode) -> Result<Verdict, ModelError> {
    let dom = domain_relate(a, b, mode);
    if !dom.holds {
        return Ok(dom);
    }
    let d = diff_swta(a, b)?;
    // surface modulus problems as errors before exploring
    for q in 0..d.num_states() {
        for t in d.transitions(q).values() {
            for (_, c) in t.left.iter().chain(t.right.iter()) {
                FieldScalar::embed(c)?;
            }
        }
    }
    let mut lts = build_lts(&d);
    let res = zero_invariant(&mut lts);
    let mut stats = res.stats;
    stats.domain_states = dom.stats.domain_states;
    match res.path {
        None => Ok(Verdict::holds(stats)),
        Some(path) => {
            // the first letter is the artificial root of the difference
            let word: Word = path
                .iter()
                .skip(1)
                .map(|(l, _)| (d.symbols()[l.0].clone(), d.colors()[l.1].clone()))
                .collect();
            let branch = path.iter().skip(1).map(|(_, s)| *s).collect();
            Ok(Verdict::fails(
                Witness {
                    word,
                    branch,
                    kind: WitnessKind::Value,
                },
                stats,
            ))
        }
    }
}

/// Brute force over all words of length at most `max_len`. A failing
/// verdict is a real counterexample; a holding one is only bounded evidence.
pub fn bounded_oracle(a: &Swta, b: &Swta, max_len: usize, mode: Mode) -> Verdict {
    let letters = joint_letters(a, b);
    let mut stats = Stats::default();
    let mut words: Vec<Word> = vec![Vec::new()];
    for len in 0..=max_len {
        for w in &words {
            stats.words += 1;
            let ta = a.eval(w);
            let tb = b.eval(w);
            let kind = match (&ta, &tb) {
                (Some(x), Some(y)) if x != y => Some(WitnessKind::Value),
                (Some(_), None) => Some(WitnessKind::OnlyLeft),
                (None, Some(_)) if mode == Mode::Equal => Some(WitnessKind::OnlyRight),
                _ => None,
            };
            if let Some(kind) = kind {
                let branch = match (&ta, &tb) {
                    (Some(x), Some(y)) => first_difference(x.leaves(), y.leaves(), w.len()),
                    _ => Vec::new(),
                };
                return Verdict::fails(
                    Witness {
                        word: w.clone(),
                        branch,
                        kind,
                    },
                    stats,
                );
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::with_capacity(words.len() * letters.len());
        for w in &words {
            for l in &letters {
                let mut w2 = w.clone();
                w2.push(l.clone());
                next.push(w2);
            }
        }
        words = next;
    }
    Verdict::holds(stats)
}

fn first_difference(x: &[Algebraic], y: &[Algebraic], h: usize) -> Vec<Side> {
    let Some(i) = (0..x.len()).find(|&i| x[i] != y[i]) else {
        return Vec::new();
    };
    (0..h)
        .map(|d| if (i >> (h - 1 - d)) & 1 == 1 { Side::R } else { Side::L })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{a_ex, b_ex, b_ex_len2};
    use crate::swta::word;

    #[test]
    fn diff_values() {
        let d = diff_swta(&a_ex(), &b_ex()).unwrap();
        let t = d.eval(&word(&[("a", "1"), ("a", "1"), ("a", "1")])).unwrap();
        let want: Vec<Algebraic> = [4, -1, 0, 0, 4, -1, 0, 0]
            .iter()
            .map(|&v| Algebraic::from_int(4, v))
            .collect();
        assert_eq!(t.leaves(), &want[..]);
    }

    #[test]
    fn a_ex_b_ex_differ() {
        let v = functional_relate(&a_ex(), &b_ex_len2(), Mode::Equal).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        assert_eq!(w.kind, WitnessKind::Value);
        let (ta, tb) = (a_ex().eval(&w.word), b_ex().eval(&w.word));
        assert_ne!(ta, tb);
        assert!(!bounded_oracle(&a_ex(), &b_ex(), 2, Mode::Equal).holds);
    }

    #[test]
    fn reflexive() {
        for a in [a_ex(), b_ex()] {
            assert!(functional_relate(&a, &a, Mode::Equal).unwrap().holds);
            assert!(functional_relate(&a, &a, Mode::Included).unwrap().holds);
            assert!(bounded_oracle(&a, &a, 3, Mode::Equal).holds);
        }
    }

    #[test]
    fn domains_of_examples_agree() {
        assert!(domain_relate(&a_ex(), &b_ex_len2(), Mode::Equal).holds);
        // the leaf loops of b_ex extend its domain to every length >= 2
        let v = domain_relate(&a_ex(), &b_ex(), Mode::Equal);
        let w = v.witness.unwrap();
        assert_eq!((w.word.len(), w.kind), (3, WitnessKind::OnlyRight));
        assert!(domain_relate(&a_ex(), &b_ex(), Mode::Included).holds);
    }

    #[test]
    fn value_witness_extends_first_differing_word() {
        let d = diff_swta(&a_ex(), &b_ex()).unwrap();
        let mut lts = build_lts(&d);
        let r = zero_invariant(&mut lts);
        assert!(!r.holds);
        let path = r.path.unwrap();
        assert_eq!(path.len(), 3);
        let a1 = (d.symbol_id("a").unwrap(), d.color_id("1").unwrap());
        assert!(path.iter().all(|(l, _)| *l == a1));
    }

    #[test]
    fn extra_color_breaks_domain_equality() {
        let b = a_ex();
        let mut a = a_ex();
        let one = Algebraic::one(4);
        let sym = a.symbol_id("a").unwrap();
        let col = a.add_color("3");
        let u = a.state_id("u").unwrap();
        let v = a.state_id("v").unwrap();
        a.add_transition(a.root(), sym, col, LinearForm::single(u, one.clone()), LinearForm::single(v, one))
            .unwrap();
        let v = domain_relate(&a, &b, Mode::Equal);
        assert!(!v.holds);
        let w = v.witness.unwrap();
        assert_eq!(w.word.len(), 1);
        assert_eq!(w.kind, WitnessKind::OnlyLeft);
        assert!(domain_relate(&b, &a, Mode::Included).holds);
    }

    #[test]
    fn trivial_explicit_lts() {
        let one = FieldScalar::one(4);
        let ident: Rows = vec![vec![(0, one.clone())], vec![(1, one.clone())]];
        let mut lts = ExplicitLts {
            dim: 2,
            initial_state: 0,
            initial_vector: vec![(0, one.clone())],
            targets: vec![true],
            matrices: vec![ident],
            edges: vec![(0, "loop".into(), 0, 0)],
        };
        let r = zero_invariant(&mut lts);
        assert!(!r.holds);
        assert_eq!(r.path.unwrap().len(), 0);
        lts.initial_vector = Vec::new();
        assert!(zero_invariant(&mut lts).holds);
    }

    #[test]
    fn root_matrix_row() {
        let d = diff_swta(&a_ex(), &b_ex()).unwrap();
        let mut lts = build_lts(&d);
        let letter = (d.symbol_id("a").unwrap(), d.color_id("1").unwrap());
        let mat = lts.matrix(letter, Side::L).unwrap();
        let row = &lts.rows(mat)[d.root()];
        let ra = d.state_id("a.q").unwrap();
        let rb = d.state_id("b.f").unwrap();
        let mut want = vec![(ra, FieldScalar::one(4)), (rb, FieldScalar::one(4).neg())];
        want.sort_by_key(|e| e.0);
        assert_eq!(row, &want);
    }

    #[test]
    fn zero_vector_test_is_too_strict() {
        // A - A is never the zero vector at leaves, but its leaf value is 0
        let a = a_ex();
        let d = diff_swta(&a, &a).unwrap();
        let mut strict = build_lts(&d).with_zero_vector_test();
        assert!(!zero_invariant(&mut strict).holds);
        let mut lts = build_lts(&d);
        assert!(zero_invariant(&mut lts).holds);
    }

    #[test]
    fn scaling_flips_value_verdict_only() {
        let a = a_ex();
        let mut scaled = a_ex();
        let q = scaled.root();
        let sym = scaled.symbol_id("a").unwrap();
        let col = scaled.color_id("1").unwrap();
        let t = scaled.transition(q, sym, col).unwrap().clone();
        let two = Algebraic::from_int(4, 2);
        let mut rebuilt = Swta::new(4, "q");
        for (name, id) in scaled.states().iter().zip(0..) {
            let n = rebuilt.add_state(name);
            assert_eq!(n, id);
            if scaled.is_leaf(id) {
                rebuilt.add_leaf(n);
            }
        }
        for s in scaled.symbols() {
            rebuilt.add_symbol(s);
        }
        for c in scaled.colors() {
            rebuilt.add_color(c);
        }
        for p in 0..scaled.num_states() {
            for (&(s, c), tr) in scaled.transitions(p) {
                let (l, r) = if p == q && s == sym && c == col {
                    (t.left.scaled(&two), tr.right.clone())
                } else {
                    (tr.left.clone(), tr.right.clone())
                };
                rebuilt.add_transition(p, s, c, l, r).unwrap();
            }
        }
        scaled = rebuilt;
        assert!(domain_relate(&a, &scaled, Mode::Equal).holds);
        assert!(!functional_relate(&a, &scaled, Mode::Equal).unwrap().holds);
    }
}
