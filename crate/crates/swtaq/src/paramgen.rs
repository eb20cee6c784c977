// SPDX-License-Identifier: Apache-2.0
//! Size-parameterized transducers: an unbounded staircase of one box.
//!
//! A box is a transducer whose only leaf state is `id`, with `id` looping on
//! every symbol and every other state living at one fixed depth. The
//! staircase starts a box at the root and a new one every `n` levels. The
//! levels from the last box's final spawning point downwards are labelled
//! with primed symbols `a'`; that is how the deterministic transducer learns
//! that no further box follows.

use std::collections::{BTreeMap, HashMap, VecDeque};

use thiserror::Error;

use crate::algebra::Algebraic;
use crate::forms::LinearForm;
use crate::swta::Swta;
use crate::wtt::{compose_all, GroundForm, Side, Wtt};
use crate::ModelError;

/// Name of the identity state of a box.
pub const ID: &str = "id";

/// Default bound on the number of simultaneously active boxes.
pub const DEFAULT_TUPLE_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("box has no state `id` or its leaf set is not exactly {{id}}")]
    MissingId,
    #[error("state `id` lacks the loop id -> (id(L) | id(R)) on symbol `{0}`")]
    MissingIdLoop(String),
    #[error("state `{state}` occurs at depths {d1} and {d2}")]
    DepthConflict { state: String, d1: usize, d2: usize },
    #[error("the box root is `id`")]
    RootIsId,
    #[error("offset must be at least 1")]
    InvalidOffset,
    #[error("more than {cap} active boxes in one state; the box is not a staircase")]
    TupleCap { cap: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    Left,
    Right,
}

impl std::fmt::Display for Dir {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Dir::Left => "left",
            Dir::Right => "right",
        })
    }
}

impl std::str::FromStr for Dir {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "left" => Ok(Dir::Left),
            "right" => Ok(Dir::Right),
            _ => Err(format!("direction must be `left` or `right`, got `{s}`")),
        }
    }
}

pub fn primed(sym: &str) -> String {
    format!("{sym}'")
}

pub fn is_primed(sym: &str) -> bool {
    sym.ends_with('\'')
}

/// A validated box with its depth function.
#[derive(Clone, Debug)]
pub struct BoxTransducer {
    wtt: Wtt,
    id: usize,
    depth: Vec<Option<usize>>,
}

impl BoxTransducer {
    pub fn wtt(&self) -> &Wtt {
        &self.wtt
    }

    pub fn id_state(&self) -> usize {
        self.id
    }

    /// d(q); `None` for `id` and for unreachable states.
    pub fn depth(&self, q: usize) -> Option<usize> {
        self.depth[q]
    }

    /// Number of levels read by non-id states.
    pub fn span(&self) -> usize {
        self.depth.iter().flatten().max().map_or(0, |d| d + 1)
    }

    /// Unprimed symbols, in box order.
    pub fn base_symbols(&self) -> Vec<String> {
        self.wtt
            .symbols()
            .iter()
            .filter(|s| !is_primed(s))
            .cloned()
            .collect()
    }
}

pub fn validate_box(t: &Wtt) -> Result<BoxTransducer, ParamError> {
    let id = t.state_id(ID).ok_or(ParamError::MissingId)?;
    if t.leaves().len() != 1 || !t.is_leaf(id) {
        return Err(ParamError::MissingId);
    }
    if t.root() == id {
        return Err(ParamError::RootIsId);
    }
    let one = Algebraic::one(t.m());
    let loop_l = GroundForm::single((id, Side::L), one.clone());
    let loop_r = GroundForm::single((id, Side::R), one);
    for (s, name) in t.symbols().iter().enumerate() {
        match t.transition(id, s) {
            Some(tr) if tr.left == loop_l && tr.right == loop_r => {}
            _ => return Err(ParamError::MissingIdLoop(name.clone())),
        }
    }
    let mut depth = vec![None; t.num_states()];
    depth[t.root()] = Some(0);
    let mut queue = VecDeque::from([t.root()]);
    while let Some(q) = queue.pop_front() {
        let d = depth[q].expect("queued states have a depth");
        for tr in t.transitions(q).values() {
            for (p, _) in tr.left.support().chain(tr.right.support()) {
                if *p == id {
                    continue;
                }
                match depth[*p] {
                    None => {
                        depth[*p] = Some(d + 1);
                        queue.push_back(*p);
                    }
                    Some(e) if e != d + 1 => {
                        return Err(ParamError::DepthConflict {
                            state: t.state_name(*p).to_string(),
                            d1: e,
                            d2: d + 1,
                        })
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(BoxTransducer {
        wtt: t.clone(),
        id,
        depth,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Bgn,
    End,
}

/// Box-state tuple (oldest box first, `id` removed) with its tag.
type Tuple = Vec<usize>;
type TupleForm = LinearForm<(Tuple, Side)>;

/// Worklist key: offsets are part of the key for `Bgn` states so that boxes
/// whose states die out before the next spawn point still spawn on time.
type Key = (Tuple, Tag, usize);

/// (ℓ2, r2) ∘ (ℓ1, r1) where (ℓ2, r2) is the transition of `q` on `sym`;
/// `q`'s box acts after the boxes already in the tuples.
fn compose_step(bx: &Wtt, q: usize, sym: usize, cur: &(TupleForm, TupleForm)) -> Option<(TupleForm, TupleForm)> {
    let tr = bx.transition(q, sym)?;
    if tr.left.is_empty() || tr.right.is_empty() {
        return None;
    }
    let subst = |x: &GroundForm| {
        let mut out = TupleForm::empty();
        for ((p, side), c) in x.iter() {
            let src = match side {
                Side::L => &cur.0,
                Side::R => &cur.1,
            };
            for ((tuple, s), e) in src.iter() {
                let mut t2 = tuple.clone();
                t2.push(*p);
                out.add_term((t2, *s), c * e);
            }
        }
        out
    };
    Some((subst(&tr.left), subst(&tr.right)))
}

fn unit_pair(m: usize) -> (TupleForm, TupleForm) {
    (
        TupleForm::single((Vec::new(), Side::L), Algebraic::one(m)),
        TupleForm::single((Vec::new(), Side::R), Algebraic::one(m)),
    )
}

/// Staircase transducer of `bx` stepping by `n` qubits per box, growing in
/// direction `dir`; one transducer for every number of boxes.
pub fn parameterize(bx: &BoxTransducer, n: usize, dir: Dir) -> Result<Wtt, ParamError> {
    parameterize_with_cap(bx, n, dir, DEFAULT_TUPLE_CAP)
}

pub fn parameterize_with_cap(
    bx: &BoxTransducer,
    n: usize,
    dir: Dir,
    cap: usize,
) -> Result<Wtt, ParamError> {
    if n == 0 {
        return Err(ParamError::InvalidOffset);
    }
    let t = &bx.wtt;
    let m = t.m();
    let id = bx.id;
    let root = t.root();
    let base: Vec<(usize, String)> = t
        .symbols()
        .iter()
        .enumerate()
        .filter(|(_, s)| !is_primed(s))
        .map(|(i, s)| (i, s.clone()))
        .collect();

    let mut seen_names: HashMap<(Tuple, Tag), usize> = HashMap::new();
    let mut name_of = |key: &Key| -> String {
        let (tuple, tag, off) = key;
        let inner: Vec<&str> = tuple.iter().map(|&q| t.state_name(q)).collect();
        let mut s = format!("<{}>", inner.join(","));
        if *tag == Tag::End {
            s.push_str("/e");
        }
        let count = seen_names.entry((tuple.clone(), *tag)).or_insert(0);
        *count += 1;
        if *count > 1 {
            s.push_str(&format!("@{off}"));
        }
        s
    };

    let start: Key = (vec![root], Tag::Bgn, n);
    let mut out = Wtt::new(m, &name_of(&start));
    for (_, s) in &base {
        out.add_symbol(s);
    }
    for (_, s) in &base {
        out.add_symbol(&primed(s));
    }
    let mut ids: HashMap<Key, usize> = HashMap::from([(start.clone(), out.root())]);
    let mut queue = VecDeque::from([start]);
    while let Some(key) = queue.pop_front() {
        let qid = ids[&key];
        let (tuple, tag, i) = key.clone();
        if tuple.len() > cap {
            return Err(ParamError::TupleCap { cap });
        }
        if tuple.is_empty() {
            out.add_leaf(qid);
        }
        for (sym, name) in &base {
            let mut cur = unit_pair(m);
            let mut defined = true;
            for &q in &tuple {
                match compose_step(t, q, *sym, &cur) {
                    Some(next) => cur = next,
                    None => {
                        defined = false;
                        break;
                    }
                }
            }
            if !defined {
                continue;
            }
            let strip = |f: &TupleForm| -> TupleForm {
                f.map_keys(|(tp, s)| (tp.iter().copied().filter(|&q| q != id).collect(), *s))
            };
            let (l, r) = (strip(&cur.0), strip(&cur.1));
            let mut emit: Vec<(String, TupleForm, TupleForm, Tag, usize)> = Vec::new();
            if i != 1 || tag == Tag::End {
                let out_sym = if tag == Tag::Bgn { name.clone() } else { primed(name) };
                emit.push((out_sym, l, r, tag, i.saturating_sub(1)));
            } else {
                emit.push((primed(name), l.clone(), r.clone(), Tag::End, 0));
                let spawn = |f: &TupleForm| -> TupleForm {
                    f.map_keys(|(tp, s)| {
                        let mut t2 = tp.clone();
                        match dir {
                            Dir::Right => t2.push(root),
                            Dir::Left => t2.insert(0, root),
                        }
                        (t2, *s)
                    })
                };
                emit.push((name.clone(), spawn(&l), spawn(&r), Tag::Bgn, n));
            }
            for (out_sym, l, r, new_tag, pos) in emit {
                let mut intern = |tp: &Tuple| -> usize {
                    let off = if new_tag == Tag::Bgn { pos } else { 0 };
                    let k: Key = (tp.clone(), new_tag, off);
                    if let Some(&q) = ids.get(&k) {
                        return q;
                    }
                    let q = out.add_fresh_state(&name_of(&k));
                    ids.insert(k.clone(), q);
                    queue.push_back(k);
                    q
                };
                let lf: GroundForm = l.iter().map(|((tp, s), c)| ((intern(tp), *s), c.clone())).collect();
                let rf: GroundForm = r.iter().map(|((tp, s), c)| ((intern(tp), *s), c.clone())).collect();
                let s = out.add_symbol(&out_sym);
                out.add_transition(qid, s, lf, rf)?;
            }
        }
    }
    Ok(out)
}

/// Levels of one box instance that a staircase of `boxes` boxes needs, and
/// the first primed level: returns (height, first_primed_level).
pub fn staircase_shape(bx: &BoxTransducer, n: usize, boxes: usize) -> (usize, usize) {
    assert!(boxes >= 1 && n >= 1);
    let last_start = (boxes - 1) * n;
    let height = last_start + bx.span().max(n);
    (height, last_start + n - 1)
}

/// Tree labels for a staircase input: `syms[level]` with levels from
/// `first_primed` on primed.
pub fn prime_labels(labels: &[String], first_primed: usize) -> Vec<String> {
    labels
        .iter()
        .enumerate()
        .map(|(i, s)| if i >= first_primed { primed(s) } else { s.clone() })
        .collect()
}

/// One box starting at level `start`: counter states above it, the box's
/// own transitions (also firing on primed symbols) from there on.
pub fn shifted_box(bx: &BoxTransducer, start: usize) -> Result<Wtt, ParamError> {
    let t = &bx.wtt;
    let m = t.m();
    let base = bx.base_symbols();
    let aliases: Vec<(String, String)> = base.iter().map(|s| (primed(s), s.clone())).collect();
    let alias_refs: Vec<(&str, &str)> = aliases.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let body = t.alias_symbols(&alias_refs);
    let box_root = format!("b.{}", body.state_name(body.root()));
    let mut out = Wtt::new(m, if start == 0 { &box_root } else { "s0" });
    let mut symbols: Vec<String> = base.clone();
    symbols.extend(base.iter().map(|s| primed(s)));
    let sym_ids: Vec<usize> = symbols.iter().map(|s| out.add_symbol(s)).collect();
    let ids: Vec<usize> = body
        .states()
        .iter()
        .map(|name| out.add_state(&format!("b.{name}")))
        .collect();
    for q in 0..body.num_states() {
        if body.is_leaf(q) {
            out.add_leaf(ids[q]);
        }
        for (&s, tr) in body.transitions(q) {
            let sym = out.add_symbol(&body.symbols()[s]);
            out.add_transition(
                ids[q],
                sym,
                tr.left.map_keys(|(p, d)| (ids[*p], *d)),
                tr.right.map_keys(|(p, d)| (ids[*p], *d)),
            )?;
        }
    }
    let one = Algebraic::one(m);
    for j in 0..start {
        let cur = out.add_state(&format!("s{j}"));
        let next = if j + 1 == start { ids[body.root()] } else { out.add_state(&format!("s{}", j + 1)) };
        for &s in &sym_ids {
            out.add_transition(
                cur,
                s,
                GroundForm::single((next, Side::L), one.clone()),
                GroundForm::single((next, Side::R), one.clone()),
            )?;
        }
    }
    Ok(out.trim())
}

/// The explicit composition of `boxes` shifted boxes, in time order
/// (dir=right: box 0 acts first; dir=left: box 0 acts last).
pub fn explicit_staircase(bx: &BoxTransducer, n: usize, dir: Dir, boxes: usize) -> Result<Wtt, ParamError> {
    if n == 0 {
        return Err(ParamError::InvalidOffset);
    }
    let mut ts = (0..boxes)
        .map(|j| shifted_box(bx, j * n))
        .collect::<Result<Vec<_>, _>>()?;
    if dir == Dir::Left {
        ts.reverse();
    }
    Ok(compose_all(&ts)?)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
enum Phase {
    Free,
    Count(usize),
}

/// Relabels an SWTA so that the last `k` levels of every tree use primed
/// symbols. Trees of height below `k` are dropped.
pub fn prime_tail(a: &Swta, k: usize) -> Result<Swta, ModelError> {
    if k == 0 {
        return Ok(a.clone());
    }
    let m = a.m();
    let name = |q: usize, ph: Phase| match ph {
        Phase::Free => a.state_name(q).to_string(),
        Phase::Count(j) => format!("{}'{j}", a.state_name(q)),
    };
    let mut out = Swta::new(m, &name(a.root(), Phase::Free));
    let syms: Vec<usize> = a.symbols().iter().map(|s| out.add_symbol(s)).collect();
    let psyms: Vec<usize> = a.symbols().iter().map(|s| out.add_symbol(&primed(s))).collect();
    let cols: Vec<usize> = a.colors().iter().map(|c| out.add_color(c)).collect();
    let mut ids: BTreeMap<(usize, Phase), usize> = BTreeMap::new();
    ids.insert((a.root(), Phase::Free), out.root());
    let mut queue = VecDeque::from([(a.root(), Phase::Free)]);
    while let Some((q, ph)) = queue.pop_front() {
        let qid = ids[&(q, ph)];
        if ph == Phase::Count(0) {
            if a.is_leaf(q) {
                out.add_leaf(qid);
            }
            continue;
        }
        for (&(s, c), tr) in a.transitions(q) {
            let moves: Vec<(usize, Phase)> = match ph {
                Phase::Free => vec![(syms[s], Phase::Free), (psyms[s], Phase::Count(k - 1))],
                Phase::Count(j) => vec![(psyms[s], Phase::Count(j - 1))],
            };
            for (sym, next) in moves {
                let mut intern = |p: usize| -> usize {
                    *ids.entry((p, next)).or_insert_with(|| {
                        queue.push_back((p, next));
                        out.add_fresh_state(&name(p, next))
                    })
                };
                let l = tr.left.map_keys(|p| intern(*p));
                let r = tr.right.map_keys(|p| intern(*p));
                out.add_transition(qid, sym, cols[c], l, r)?;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_wtt;

    pub(crate) const MAJ: &str = "\
wtt m=4
root a
leaves id
trans a x -> (b(L) + c(R) | e(L) + d(R))
trans b x -> (f(L) | f(R))
trans c x -> (h(R) | h(L))
trans d x -> (f(L) | k(R))
trans e x -> (h(R) | g(L))
trans f x -> (id(L) | 0*id(R))
trans g x -> (id(R) | 0*id(L))
trans h x -> (0*id(L) | id(R))
trans k x -> (0*id(R) | id(L))
trans id x -> (id(L) | id(R))
";

    fn maj() -> BoxTransducer {
        validate_box(&parse_wtt(MAJ).unwrap()).unwrap()
    }

    #[test]
    fn maj_depths() {
        let b = maj();
        let t = b.wtt();
        let d = |s: &str| b.depth(t.state_id(s).unwrap());
        assert_eq!(d("a"), Some(0));
        for s in ["b", "c", "d", "e"] {
            assert_eq!(d(s), Some(1));
        }
        for s in ["f", "g", "h", "k"] {
            assert_eq!(d(s), Some(2));
        }
        assert_eq!(b.span(), 3);
    }

    #[test]
    fn root_is_id_rejected() {
        let t = crate::wtt::identity(4, &["x"]);
        assert_eq!(validate_box(&t).unwrap_err(), ParamError::RootIsId);
    }

    #[test]
    fn missing_loop_rejected() {
        let t = parse_wtt("wtt m=4\nroot a\nleaves id\ntrans a x -> (id(L) | id(R))\n").unwrap();
        assert_eq!(validate_box(&t).unwrap_err(), ParamError::MissingIdLoop("x".into()));
    }

    #[test]
    fn depth_conflict() {
        let text = "\
wtt m=4
root a
leaves id
trans a x -> (p(L) | p(R))
trans p x -> (p(L) | id(R))
trans id x -> (id(L) | id(R))
";
        let e = validate_box(&parse_wtt(text).unwrap()).unwrap_err();
        assert!(matches!(e, ParamError::DepthConflict { .. }), "{e:?}");
    }

    fn form_eq(t: &Wtt, f: &GroundForm, want: &[(&str, Side, i64)]) {
        let got: Vec<(String, Side, Algebraic)> = f
            .iter()
            .map(|((q, s), c)| (t.state_name(*q).to_string(), *s, c.clone()))
            .collect();
        let mut want: Vec<(String, Side, Algebraic)> = want
            .iter()
            .map(|(q, s, c)| (q.to_string(), *s, Algebraic::from_int(4, *c)))
            .collect();
        let mut got = got;
        got.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
        want.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
        assert_eq!(got, want);
    }

    #[test]
    fn maj_worked_transitions() {
        let p = parameterize(&maj(), 2, Dir::Right).unwrap();
        let tr = p.transition_named("<a>", "x").unwrap();
        form_eq(&p, &tr.left, &[("<b>", Side::L, 1), ("<c>", Side::R, 1)]);
        form_eq(&p, &tr.right, &[("<e>", Side::L, 1), ("<d>", Side::R, 1)]);
        let tr = p.transition_named("<b>", "x").unwrap();
        form_eq(&p, &tr.left, &[("<f,a>", Side::L, 1)]);
        form_eq(&p, &tr.right, &[("<f,a>", Side::R, 1)]);
        let tr = p.transition_named("<b>", "x'").unwrap();
        form_eq(&p, &tr.left, &[("<f>/e", Side::L, 1)]);
        form_eq(&p, &tr.right, &[("<f>/e", Side::R, 1)]);
        let tr = p.transition_named("<f,a>", "x").unwrap();
        form_eq(&p, &tr.left, &[("<b>", Side::L, 1), ("<c>", Side::R, 0)]);
        form_eq(&p, &tr.right, &[("<e>", Side::L, 1), ("<d>", Side::R, 0)]);
    }

    #[test]
    fn end_never_reaches_bgn() {
        let p = parameterize(&maj(), 2, Dir::Right).unwrap();
        for q in 0..p.num_states() {
            if !p.state_name(q).contains("/e") {
                continue;
            }
            for tr in p.transitions(q).values() {
                for (r, _) in tr.left.support().chain(tr.right.support()) {
                    assert!(p.state_name(*r).contains("/e"));
                }
            }
        }
    }

    #[test]
    fn prime_tail_relabels() {
        let a = crate::fixtures::a_bases();
        let p = prime_tail(&a, 2).unwrap();
        let w = crate::swta::word(&[("a", "1"), ("a'", "2"), ("a'", "1")]);
        let t = p.eval(&w).unwrap();
        assert_eq!(t.labels(), &["a", "a'", "a'"]);
        assert!(p.eval(&crate::swta::word(&[("a", "1"), ("a", "2"), ("a'", "1")])).is_none());
        assert!(p.eval(&crate::swta::word(&[("a'", "1")])).is_none());
    }
}
