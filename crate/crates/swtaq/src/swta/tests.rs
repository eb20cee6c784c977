use super::*;
use crate::algebra::Algebraic;
use crate::fixtures::{a_bases, a_ex, b_ex};
use crate::text::parse_swta;

fn ints(xs: &[i64]) -> Vec<Algebraic> {
    xs.iter().map(|&x| Algebraic::from_int(4, x)).collect()
}

#[test]
fn a_ex_first_word() {
    let t = a_ex().eval(&word(&[("a", "1"), ("a", "2")])).unwrap();
    assert_eq!(t.leaves(), ints(&[0, 0, 0, 1]).as_slice());
    assert!(a_ex().accepts(&t));
}

#[test]
fn undefined_outside_domain() {
    let a = a_ex();
    assert!(a.eval(&word(&[("a", "1")])).is_none());
    assert!(a.eval(&word(&[("a", "1"), ("a", "1"), ("a", "1")])).is_none());
    assert!(a.eval(&word(&[("a", "3"), ("a", "1")])).is_none());
    assert!(a.eval(&word(&[("b", "1"), ("a", "1")])).is_none());
}

#[test]
fn empty_word_needs_leaf_root() {
    assert!(a_ex().eval(&[]).is_none());
    let t = a_bases().eval(&[]).unwrap();
    assert_eq!(t.leaves(), ints(&[1]).as_slice());
}

#[test]
fn bases_language() {
    let a = a_bases();
    let labels = vec!["a".to_string(); 3];
    for i in 0..8 {
        assert!(a.accepts(&PerfectTree::basis(labels.clone(), i, 4)));
    }
    let zero = PerfectTree::zeros(labels.clone(), 4);
    assert!(!a.accepts(&zero));
    let two = PerfectTree::from_parts(labels, ints(&[0, 0, 2, 0, 0, 0, 0, 0])).unwrap();
    assert!(!a.accepts(&two));
}

#[test]
fn emptiness() {
    assert!(!a_ex().is_empty());
    let w = a_ex().find_word().unwrap();
    assert_eq!(w.len(), 2);
    // q needs p, which never terminates
    let dead = parse_swta("swta m=4\nroot q\nleaves l\ncolors 1\ntrans q a 1 -> (p | l)\ntrans p a 1 -> (p | p)\n").unwrap();
    assert!(dead.is_empty());
    assert!(dead.find_word().is_none());
}

#[test]
fn domain_dfa_merges_subsets() {
    let a = a_ex();
    let mut d = a.domain_dfa();
    let l1 = (a.symbol_id("a").unwrap(), a.color_id("1").unwrap());
    let g = d.step(d.initial(), l1).unwrap();
    assert_eq!(d.subset(g).len(), 2);
    let g2 = d.step(g, l1).unwrap();
    assert!(d.is_accepting(g2));
    assert!(d.step(g2, l1).is_none());
}

#[test]
fn union_keeps_both_functions() {
    let (a, b) = (a_ex(), b_ex());
    let u = union(&a, &b).unwrap();
    for w in a.all_words(2) {
        let names = a.word_names(&w);
        let ta = a.eval(&names).unwrap();
        let ua = u.eval(&[(names[0].0.clone(), format!("a.{}", names[0].1)), (names[1].0.clone(), format!("a.{}", names[1].1))]).unwrap();
        assert_eq!(ta, ua);
        assert!(u.accepts(&b.eval(&names).unwrap()));
    }
}

#[test]
fn union_rejects_mixed_modulus() {
    let mut b = Swta::new(8, "q");
    let q = b.root();
    b.add_leaf(q);
    assert!(matches!(union(&a_ex(), &b), Err(ModelError::Modulus { .. })));
}

#[test]
fn trim_drops_unreachable() {
    let mut a = parse_swta("swta m=4\nroot q\nleaves l\ncolors 1\ntrans q a 1 -> (l | l)\ntrans x a 1 -> (l | l)\n").unwrap();
    let before = a.eval(&word(&[("a", "1")]));
    a = a.trim();
    assert_eq!(a.num_states(), 2);
    assert_eq!(a.eval(&word(&[("a", "1")])), before);
}

#[test]
fn zero_terms_keep_definedness() {
    // 0*p still requires p to be defined
    let a = parse_swta("swta m=4\nroot q\nleaves l\ncolors 1\ntrans q a 1 -> (l | l + 0*p)\ntrans p a 1 -> (l | l)\n").unwrap();
    assert!(a.eval(&word(&[("a", "1")])).is_none());
    let t = a.eval(&word(&[("a", "1"), ("a", "1")]));
    assert!(t.is_none(), "l has no transition at depth 1");
    let pruned = a.prune_zero_terms();
    assert!(pruned.eval(&word(&[("a", "1")])).is_some());
}

#[test]
fn duplicate_transition_is_an_error() {
    let mut a = a_ex();
    let q = a.root();
    let (s, c) = (a.symbol_id("a").unwrap(), a.color_id("1").unwrap());
    let f = a.transitions(q)[&(s, c)].clone();
    assert!(a.add_transition(q, s, c, f.left, f.right).is_err());
}
