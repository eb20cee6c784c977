// SPDX-License-Identifier: Apache-2.0
//! Incremental row-echelon basis over the cyclotomic field.

use super::{AlgebraError, FieldScalar};

/// Sparse vector: strictly increasing indices, no explicit zeros.
pub type SparseVec = Vec<(usize, FieldScalar)>;

/// `y += c * x` on sparse vectors.
pub fn axpy(y: &SparseVec, c: &FieldScalar, x: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let take_y = j >= x.len() || (i < y.len() && y[i].0 < x[j].0);
        let take_x = i >= y.len() || (j < x.len() && x[j].0 < y[i].0);
        if take_y {
            out.push(y[i].clone());
            i += 1;
        } else if take_x {
            out.push((x[j].0, c.mul(&x[j].1)));
            j += 1;
        } else {
            let v = y[i].1.add(&c.mul(&x[j].1));
            if !v.is_zero() {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

fn lookup(v: &SparseVec, idx: usize) -> Option<&FieldScalar> {
    v.binary_search_by_key(&idx, |e| e.0).ok().map(|p| &v[p].1)
}

/// Semi-reduced echelon basis: row i is zero at the pivots of rows 0..i and
/// has a 1 at its own pivot.
#[derive(Clone, Debug)]
pub struct Basis {
    dim: usize,
    m: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Basis {
    pub fn new(dim: usize, m: usize) -> Self {
        Basis {
            dim,
            m,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after elimination against the current rows.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = lookup(&v, p) {
                let c = c.neg();
                v = axpy(&v, &c, row);
            }
        }
        v
    }

    /// Insert a dense vector; returns whether the span grew.
    pub fn span_insert(&mut self, v: &[FieldScalar]) -> Result<bool, AlgebraError> {
        if v.len() != self.dim {
            return Err(AlgebraError::InvalidVector {
                expected: self.dim,
                got: v.len(),
            });
        }
        let sparse = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect();
        self.insert_sparse(&sparse)
    }

    pub fn insert_sparse(&mut self, v: &SparseVec) -> Result<bool, AlgebraError> {
        if let Some(&(i, _)) = v.last() {
            if i >= self.dim {
                return Err(AlgebraError::InvalidVector {
                    expected: self.dim,
                    got: i + 1,
                });
            }
        }
        let r = self.reduce(v);
        let Some((p, lead)) = r.first().cloned() else {
            return Ok(false);
        };
        let inv = lead.invert()?;
        let row: SparseVec = r.into_iter().map(|(i, x)| (i, x.mul(&inv))).collect();
        self.rows.push(row);
        self.pivots.push(p);
        debug_assert!(self.rows.len() <= self.dim);
        Ok(true)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn modulus(&self) -> usize {
        self.m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebraic;

    fn f(n: i64) -> FieldScalar {
        FieldScalar::embed(&Algebraic::from_int(4, n)).unwrap()
    }

    #[test]
    fn first_insert_grows() {
        let mut b = Basis::new(3, 4);
        assert!(b.span_insert(&[f(1), f(2), f(0)]).unwrap());
        assert_eq!(b.len(), 1);
    }

    #[test]
    fn multiple_is_not_added() {
        let mut b = Basis::new(3, 4);
        b.span_insert(&[f(1), f(2), f(0)]).unwrap();
        assert!(!b.span_insert(&[f(2), f(4), f(0)]).unwrap());
    }

    #[test]
    fn full_dimension_saturates() {
        let mut b = Basis::new(2, 4);
        assert!(b.span_insert(&[f(1), f(1)]).unwrap());
        assert!(b.span_insert(&[f(1), f(-1)]).unwrap());
        assert!(!b.span_insert(&[f(7), f(3)]).unwrap());
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn dimension_mismatch() {
        let mut b = Basis::new(2, 4);
        assert!(matches!(
            b.span_insert(&[f(1)]),
            Err(AlgebraError::InvalidVector { .. })
        ));
    }

    #[test]
    fn pivots_are_one() {
        let mut b = Basis::new(2, 4);
        b.span_insert(&[f(0), f(5)]).unwrap();
        let row = &b.rows()[0];
        assert_eq!(row[0].1, f(1));
    }
}
