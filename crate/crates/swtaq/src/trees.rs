// SPDX-License-Identifier: Apache-2.0
//! Perfect binary trees with symbol-labelled inner levels and scalar leaves.
//!
//! Every node at one depth carries the same symbol, so labels are stored per
//! level and leaves as a dense vector (left to right, i.e. the state vector).

use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, Algebraic};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("incompatible trees: {0}")]
    Incompatible(String),
    #[error("position {0} is outside the tree")]
    PositionError(String),
    #[error("malformed tree: {0}")]
    Malformed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PerfectTree {
    labels: Vec<String>,
    leaves: Vec<Algebraic>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeStyle {
    Vector,
    Dirac,
}

impl PerfectTree {
    pub fn leaf(x: Algebraic) -> Self {
        PerfectTree {
            labels: Vec::new(),
            leaves: vec![x],
        }
    }

    pub fn from_parts(labels: Vec<String>, leaves: Vec<Algebraic>) -> Result<Self, TreeError> {
        let h = labels.len();
        if h >= usize::BITS as usize || leaves.len() != 1usize << h {
            return Err(TreeError::Malformed(format!(
                "height {h} needs {} leaves, got {}",
                1u128 << h.min(127),
                leaves.len()
            )));
        }
        let m = leaves[0].m();
        if leaves.iter().any(|x| x.m() != m) {
            return Err(TreeError::Malformed("leaves use different moduli".into()));
        }
        Ok(PerfectTree { labels, leaves })
    }

    /// Computational basis state |index> (qubit 1 is the most significant bit).
    pub fn basis(labels: Vec<String>, index: usize, m: usize) -> Self {
        let n = 1usize << labels.len();
        let mut leaves = vec![Algebraic::zero(m); n];
        leaves[index] = Algebraic::one(m);
        PerfectTree { labels, leaves }
    }

    pub fn zeros(labels: Vec<String>, m: usize) -> Self {
        let n = 1usize << labels.len();
        PerfectTree {
            labels,
            leaves: vec![Algebraic::zero(m); n],
        }
    }

    pub fn cons(a: &str, t0: &PerfectTree, t1: &PerfectTree) -> Result<Self, TreeError> {
        if t0.labels != t1.labels {
            return Err(TreeError::Incompatible(
                "children differ in height or labels".into(),
            ));
        }
        let mut labels = Vec::with_capacity(t0.labels.len() + 1);
        labels.push(a.to_string());
        labels.extend(t0.labels.iter().cloned());
        let mut leaves = t0.leaves.clone();
        leaves.extend(t1.leaves.iter().cloned());
        Ok(PerfectTree { labels, leaves })
    }

    pub fn height(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leaves(&self) -> &[Algebraic] {
        &self.leaves
    }

    pub fn m(&self) -> usize {
        self.leaves[0].m()
    }

    pub fn compatible(&self, other: &PerfectTree) -> bool {
        self.labels == other.labels
    }

    /// Linear combination `sum a_i t_i` of compatible trees.
    pub fn combine(terms: &[(Algebraic, &PerfectTree)]) -> Result<PerfectTree, TreeError> {
        let Some((_, first)) = terms.first() else {
            return Err(TreeError::Incompatible("empty combination".into()));
        };
        let mut leaves = vec![Algebraic::zero(first.m()); first.leaves.len()];
        for (a, t) in terms {
            if !t.compatible(first) {
                return Err(TreeError::Incompatible(
                    "operands differ in height or labels".into(),
                ));
            }
            if a.is_zero() {
                continue;
            }
            for (acc, x) in leaves.iter_mut().zip(&t.leaves) {
                if !x.is_zero() {
                    *acc = acc.checked_add(&a.checked_mul(x)?)?;
                }
            }
        }
        Ok(PerfectTree {
            labels: first.labels.clone(),
            leaves,
        })
    }

    /// Subtree at a branch word over {0,1}.
    pub fn subtree(&self, u: &[u8]) -> Result<PerfectTree, TreeError> {
        if u.len() > self.height() || u.iter().any(|&b| b > 1) {
            return Err(TreeError::PositionError(
                u.iter().map(|b| b.to_string()).collect(),
            ));
        }
        let rest = self.height() - u.len();
        let mut start = 0usize;
        for &b in u {
            start = start * 2 + b as usize;
        }
        start <<= rest;
        Ok(PerfectTree {
            labels: self.labels[u.len()..].to_vec(),
            leaves: self.leaves[start..start + (1usize << rest)].to_vec(),
        })
    }

    /// Sum of squared magnitudes, exactly.
    pub fn norm_sqr(&self) -> Algebraic {
        self.leaves
            .iter()
            .fold(Algebraic::zero(self.m()), |acc, x| &acc + &x.norm_sqr())
    }

    pub fn is_zero(&self) -> bool {
        self.leaves.iter().all(Algebraic::is_zero)
    }

    /// Parse `tree h=<n> labels=<a,b,...> leaves=[<scalar>,...]`.
    pub fn parse(text: &str, m: usize) -> Result<PerfectTree, TreeError> {
        let bad = |msg: &str| TreeError::Malformed(format!("{msg} in `{}`", text.trim()));
        let s = text.trim();
        let rest = s.strip_prefix("tree").ok_or_else(|| bad("missing `tree`"))?;
        let lpos = rest.find("leaves=[").ok_or_else(|| bad("missing leaves"))?;
        let head = &rest[..lpos];
        let body = rest[lpos + 8..]
            .trim_end()
            .strip_suffix(']')
            .ok_or_else(|| bad("unterminated leaves"))?;
        let mut h: Option<usize> = None;
        let mut labels: Vec<String> = Vec::new();
        for tok in head.split_whitespace() {
            if let Some(v) = tok.strip_prefix("h=") {
                h = Some(v.parse().map_err(|_| bad("bad height"))?);
            } else if let Some(v) = tok.strip_prefix("labels=") {
                labels = v
                    .split(',')
                    .filter(|x| !x.is_empty())
                    .map(str::to_string)
                    .collect();
            } else {
                return Err(bad("unexpected token"));
            }
        }
        let h = h.ok_or_else(|| bad("missing h="))?;
        if labels.len() != h {
            return Err(bad("label count differs from height"));
        }
        let leaves = split_top_level(body)
            .into_iter()
            .map(|x| Algebraic::parse(x, m))
            .collect::<Result<Vec<_>, _>>()?;
        PerfectTree::from_parts(labels, leaves)
    }

    pub fn render(&self, style: TreeStyle) -> String {
        match style {
            TreeStyle::Vector => {
                let xs: Vec<String> = self.leaves.iter().map(|x| x.to_string()).collect();
                format!("[{}]", xs.join(","))
            }
            TreeStyle::Dirac => {
                if self.height() == 0 {
                    return self.leaves[0].to_string();
                }
                let h = self.height();
                let terms: Vec<String> = self
                    .leaves
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| format!("{x}|{:0h$b}>", i))
                    .collect();
                if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join(" + ")
                }
            }
        }
    }
}

/// Split on commas that are not inside parentheses.
pub(crate) fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    let last = s[start..].trim();
    if !last.is_empty() || !out.is_empty() {
        out.push(last);
    }
    out
}

impl fmt::Display for PerfectTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tree h={} labels={} leaves={}",
            self.height(),
            self.labels.join(","),
            self.render(TreeStyle::Vector)
        )
    }
}

impl fmt::Debug for PerfectTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
