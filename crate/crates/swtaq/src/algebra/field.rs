// SPDX-License-Identifier: Apache-2.0
//! The cyclotomic field Q(w) = Q[x]/(x^m + 1), used where division is needed.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{AlgebraError, Algebraic};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    coeffs: Vec<BigRational>,
}

impl FieldScalar {
    pub fn zero(m: usize) -> Self {
        FieldScalar {
            coeffs: vec![BigRational::zero(); m],
        }
    }

    pub fn one(m: usize) -> Self {
        let mut f = Self::zero(m);
        f.coeffs[0] = BigRational::one();
        f
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Result<Self, AlgebraError> {
        super::scalar::check_modulus(coeffs.len())?;
        Ok(FieldScalar { coeffs })
    }

    pub fn m(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Largest bit length among numerators and denominators.
    pub fn max_bits(&self) -> u64 {
        self.coeffs
            .iter()
            .map(|c| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }

    /// Embed a ring value, folding 1/sqrt(2)^k into rational coefficients.
    pub fn embed(x: &Algebraic) -> Result<Self, AlgebraError> {
        let m = x.m();
        let k = x.k();
        let mut f = FieldScalar {
            coeffs: x.coeffs().iter().map(|a| BigRational::from(a.clone())).collect(),
        };
        if k % 2 == 1 {
            if m < 4 {
                return Err(AlgebraError::InvalidScalar(format!(
                    "m={m} cannot embed an odd power of 1/sqrt(2)"
                )));
            }
            // 1/sqrt2 = sqrt2 / 2 = (w^{m/4} - w^{3m/4}) / 2
            let mut s = Self::zero(m);
            s.coeffs[m / 4] = BigRational::new(1.into(), 2.into());
            s.coeffs[3 * m / 4] = BigRational::new((-1).into(), 2.into());
            f = f.mul(&s);
        }
        let half_pow = BigRational::new(BigInt::one(), BigInt::one() << (k / 2));
        for c in &mut f.coeffs {
            *c *= &half_pow;
        }
        Ok(f)
    }

    pub fn add(&self, o: &Self) -> Self {
        FieldScalar {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        FieldScalar {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        FieldScalar {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let m = self.m();
        let mut c = vec![BigRational::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a * b;
                if i + j < m {
                    c[i + j] += p;
                } else {
                    c[i + j - m] -= p;
                }
            }
        }
        FieldScalar { coeffs: c }
    }

    /// Multiplicative inverse via the m x m system "x * y = 1".
    pub fn invert(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let m = self.m();
        // Column j of the matrix holds the coefficients of x * w^j.
        let mut rows: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); m + 1]; m];
        for j in 0..m {
            for (i, a) in self.coeffs.iter().enumerate() {
                if i + j < m {
                    rows[i + j][j] += a;
                } else {
                    rows[i + j - m][j] -= a;
                }
            }
        }
        rows[0][m] = BigRational::one();
        for col in 0..m {
            let piv = (col..m)
                .find(|&r| !rows[r][col].is_zero())
                .ok_or(AlgebraError::DivisionByZero)?;
            rows.swap(col, piv);
            let inv = rows[col][col].recip();
            for v in rows[col].iter_mut() {
                *v *= &inv;
            }
            for r in 0..m {
                if r != col && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    for c in col..=m {
                        let t = &rows[col][c] * &f;
                        rows[r][c] -= t;
                    }
                }
            }
        }
        Ok(FieldScalar {
            coeffs: rows.into_iter().map(|r| r[m].clone()).collect(),
        })
    }

    /// Floating-point evaluation, for diagnostics.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let m = self.m() as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for (i, a) in self.coeffs.iter().enumerate() {
            let a = a.to_f64().unwrap_or(f64::NAN);
            let th = std::f64::consts::PI * i as f64 / m;
            re += a * th.cos();
            im += a * th.sin();
        }
        (re, im)
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(c: &[i64], k: u32) -> FieldScalar {
        FieldScalar::embed(&Algebraic::from_i64s(c, k).unwrap()).unwrap()
    }

    #[test]
    fn invert_omega() {
        let w = e(&[0, 1, 0, 0], 0);
        assert_eq!(w.invert().unwrap(), e(&[0, 0, 0, -1], 0));
    }

    #[test]
    fn invert_inv_sqrt2() {
        let h = e(&[1, 0, 0, 0], 1);
        assert_eq!(h.invert().unwrap(), e(&[0, 1, 0, -1], 0));
    }

    #[test]
    fn invert_one_plus_omega() {
        let x = e(&[1, 1, 0, 0], 0);
        let y = x.invert().unwrap();
        assert_eq!(x.mul(&y), FieldScalar::one(4));
    }

    #[test]
    fn invert_zero_fails() {
        assert_eq!(FieldScalar::zero(4).invert(), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn embed_folds_sqrt2() {
        let h = e(&[1, 0, 0, 0], 1);
        assert_eq!(h.mul(&h), e(&[1, 0, 0, 0], 2));
        let (re, im) = h.to_f64_pair();
        assert!((re - 0.5f64.sqrt()).abs() < 1e-12 && im.abs() < 1e-12);
        assert!(FieldScalar::embed(&Algebraic::from_i64s(&[1, 0], 1).unwrap()).is_err());
    }
}
