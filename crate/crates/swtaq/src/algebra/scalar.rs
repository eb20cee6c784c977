// SPDX-License-Identifier: Apache-2.0
//! Exact amplitudes of the form (a0 + a1 w + ... + a{m-1} w^{m-1}) / sqrt(2)^k
//! where w = e^{i pi / m}.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::AlgebraError;

/// Canonical element of Z[w][1/sqrt 2].
///
/// Equality is structural: the canonical form keeps `k` minimal, so two values
/// denote the same complex number iff their fields agree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Algebraic {
    coeffs: Vec<BigInt>,
    k: u32,
}

pub(crate) fn check_modulus(m: usize) -> Result<(), AlgebraError> {
    if m == 0 || !m.is_power_of_two() {
        return Err(AlgebraError::InvalidScalar(format!(
            "modulus {m} is not a power of two"
        )));
    }
    Ok(())
}

/// Multiply by the ring element sqrt(2) = w^{m/4} - w^{3m/4}. Requires m >= 4.
fn mul_sqrt2(c: &[BigInt]) -> Vec<BigInt> {
    let m = c.len();
    let mut out = vec![BigInt::zero(); m];
    let (s1, s3) = (m / 4, 3 * m / 4);
    for (i, a) in c.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let j = i + s1;
        if j < m {
            out[j] += a;
        } else {
            out[j - m] -= a;
        }
        let j = i + s3;
        if j < m {
            out[j] -= a;
        } else {
            out[j - m] += a;
        }
    }
    out
}

/// Scale a coefficient vector by sqrt(2)^d.
fn scale_sqrt2_pow(c: &[BigInt], d: u32) -> Result<Vec<BigInt>, AlgebraError> {
    let m = c.len();
    if d % 2 == 1 && m < 4 {
        return Err(AlgebraError::InvalidScalar(format!(
            "m={m} cannot express an odd power of sqrt(2)"
        )));
    }
    let two_pow = BigInt::one() << (d / 2);
    let mut out: Vec<BigInt> = c.iter().map(|a| a * &two_pow).collect();
    if d % 2 == 1 {
        out = mul_sqrt2(&out);
    }
    Ok(out)
}

fn all_even(c: &[BigInt]) -> bool {
    c.iter().all(|a| a.is_even())
}

impl Algebraic {
    /// Build and canonicalize `(sum coeffs[i] w^i) / sqrt(2)^k`.
    pub fn new(coeffs: Vec<BigInt>, k: u32) -> Result<Self, AlgebraError> {
        check_modulus(coeffs.len())?;
        Ok(Self::canonical(coeffs, k))
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64s(coeffs: &[i64], k: u32) -> Result<Self, AlgebraError> {
        Self::new(coeffs.iter().map(|&a| BigInt::from(a)).collect(), k)
    }

    /// `make_number` with an explicit modulus check.
    pub fn make(m: usize, coeffs: &[i64], k: u32) -> Result<Self, AlgebraError> {
        if coeffs.len() != m {
            return Err(AlgebraError::InvalidScalar(format!(
                "expected {m} coefficients, got {}",
                coeffs.len()
            )));
        }
        Self::from_i64s(coeffs, k)
    }

    fn canonical(mut c: Vec<BigInt>, mut k: u32) -> Self {
        if c.iter().all(Zero::is_zero) {
            return Algebraic { coeffs: c, k: 0 };
        }
        if c.len() >= 4 {
            while k > 0 {
                let y = mul_sqrt2(&c);
                if !all_even(&y) {
                    break;
                }
                c = y.into_iter().map(|a| a >> 1usize).collect();
                k -= 1;
            }
        } else {
            while k >= 2 && all_even(&c) {
                c = c.into_iter().map(|a| a >> 1usize).collect();
                k -= 2;
            }
        }
        Algebraic { coeffs: c, k }
    }

    pub fn zero(m: usize) -> Self {
        Algebraic {
            coeffs: vec![BigInt::zero(); m],
            k: 0,
        }
    }

    pub fn one(m: usize) -> Self {
        Self::from_int(m, 1)
    }

    pub fn from_int(m: usize, n: i64) -> Self {
        let mut coeffs = vec![BigInt::zero(); m];
        coeffs[0] = BigInt::from(n);
        Algebraic { coeffs, k: 0 }
    }

    /// w^j for any integer j (w has order 2m).
    pub fn omega_pow(m: usize, j: i64) -> Self {
        let r = j.rem_euclid(2 * m as i64) as usize;
        let mut coeffs = vec![BigInt::zero(); m];
        if r < m {
            coeffs[r] = BigInt::one();
        } else {
            coeffs[r - m] = -BigInt::one();
        }
        Algebraic { coeffs, k: 0 }
    }

    /// The imaginary unit, w^{m/2}. Needs m >= 2.
    pub fn imag(m: usize) -> Result<Self, AlgebraError> {
        if m < 2 {
            return Err(AlgebraError::InvalidScalar("m=1 has no imaginary unit".into()));
        }
        Ok(Self::omega_pow(m, (m / 2) as i64))
    }

    /// 1 / sqrt(2)^k.
    pub fn inv_sqrt2_pow(m: usize, k: u32) -> Self {
        let mut coeffs = vec![BigInt::zero(); m];
        coeffs[0] = BigInt::one();
        Self::canonical(coeffs, k)
    }

    pub fn m(&self) -> usize {
        self.coeffs.len()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.k == 0 && self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn same_m(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.m() != other.m() {
            return Err(AlgebraError::InvalidScalar(format!(
                "modulus mismatch: {} vs {}",
                self.m(),
                other.m()
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_m(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let k = self.k.max(other.k);
        let a = scale_sqrt2_pow(&self.coeffs, k - self.k)?;
        let b = scale_sqrt2_pow(&other.coeffs, k - other.k)?;
        let c = a.into_iter().zip(b).map(|(x, y)| x + y).collect();
        Ok(Self::canonical(c, k))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_m(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.m()));
        }
        let m = self.m();
        let mut c = vec![BigInt::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
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
        Ok(Self::canonical(c, self.k + other.k))
    }

    pub fn scale_int(&self, n: i64) -> Self {
        let n = BigInt::from(n);
        Self::canonical(self.coeffs.iter().map(|a| a * &n).collect(), self.k)
    }

    /// Complex conjugate: conj(w) = w^{2m-1} = -w^{m-1}.
    pub fn conj(&self) -> Self {
        let m = self.m();
        let mut c = Vec::with_capacity(m);
        c.push(self.coeffs[0].clone());
        for i in 1..m {
            c.push(-&self.coeffs[m - i]);
        }
        Algebraic { coeffs: c, k: self.k }
    }

    /// |x|^2, computed exactly.
    pub fn norm_sqr(&self) -> Self {
        self * &self.conj()
    }

    /// Floating-point evaluation, for diagnostics and test cross-checks.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        let m = self.m() as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for (i, a) in self.coeffs.iter().enumerate() {
            let a = a.to_f64().unwrap_or(f64::NAN);
            let th = std::f64::consts::PI * i as f64 / m;
            re += a * th.cos();
            im += a * th.sin();
        }
        let s = 2f64.powf(self.k as f64 / 2.0);
        (re / s, im / s)
    }

    /// Largest coefficient bit length; reported in verification stats.
    pub fn max_bits(&self) -> u64 {
        self.coeffs.iter().map(|a| a.bits()).max().unwrap_or(0)
    }

    /// Parse the scalar literal grammar: `n`, `n/s2^k`, `(a0,...,a{m-1})`,
    /// `(a0,...,a{m-1})/s2^k`.
    pub fn parse(text: &str, m: usize) -> Result<Self, AlgebraError> {
        let s = text.trim();
        let bad = || AlgebraError::InvalidScalar(format!("malformed scalar `{text}`"));
        let (body, k) = match s.rfind("/s2^") {
            Some(pos) => {
                let k: u32 = s[pos + 4..].trim().parse().map_err(|_| bad())?;
                (s[..pos].trim(), k)
            }
            None => (s, 0),
        };
        if let Some(inner) = body.strip_prefix('(') {
            let inner = inner.strip_suffix(')').ok_or_else(bad)?;
            let coeffs = inner
                .split(',')
                .map(|p| p.trim().parse::<BigInt>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?;
            if coeffs.len() != m {
                return Err(AlgebraError::InvalidScalar(format!(
                    "`{text}` has {} coefficients, expected m={m}",
                    coeffs.len()
                )));
            }
            return Self::new(coeffs, k);
        }
        let n: BigInt = body.parse().map_err(|_| bad())?;
        check_modulus(m)?;
        let mut coeffs = vec![BigInt::zero(); m];
        coeffs[0] = n;
        Self::new(coeffs, k)
    }
}

impl fmt::Display for Algebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            write!(f, "{}", self.coeffs[0])?;
        } else {
            write!(f, "(")?;
            for (i, a) in self.coeffs.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        if self.k > 0 {
            write!(f, "/s2^{}", self.k)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Algebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// Operator impls panic on modulus mismatch. Automata enforce a single m at
// construction, so internal arithmetic never mixes moduli.

impl Add for &Algebraic {
    type Output = Algebraic;
    fn add(self, rhs: &Algebraic) -> Algebraic {
        self.checked_add(rhs).expect("scalar addition")
    }
}

impl Sub for &Algebraic {
    type Output = Algebraic;
    fn sub(self, rhs: &Algebraic) -> Algebraic {
        self.checked_add(&-rhs).expect("scalar subtraction")
    }
}

impl Mul for &Algebraic {
    type Output = Algebraic;
    fn mul(self, rhs: &Algebraic) -> Algebraic {
        self.checked_mul(rhs).expect("scalar multiplication")
    }
}

impl Neg for &Algebraic {
    type Output = Algebraic;
    fn neg(self) -> Algebraic {
        Algebraic {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
            k: self.k,
        }
    }
}

impl Neg for Algebraic {
    type Output = Algebraic;
    fn neg(self) -> Algebraic {
        -&self
    }
}

impl Add for Algebraic {
    type Output = Algebraic;
    fn add(self, rhs: Algebraic) -> Algebraic {
        &self + &rhs
    }
}

impl Mul for Algebraic {
    type Output = Algebraic;
    fn mul(self, rhs: Algebraic) -> Algebraic {
        &self * &rhs
    }
}

impl Sub for Algebraic {
    type Output = Algebraic;
    fn sub(self, rhs: Algebraic) -> Algebraic {
        &self - &rhs
    }
}
