use std::fmt;

use crate::algebra::{Elem, Ring};
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// The zero polynomial has no coefficients; otherwise the last coefficient is
/// nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly<'r> {
    ring: &'r Ring,
    coeffs: Vec<Elem>,
}

impl<'r> UniPoly<'r> {
    pub fn new(ring: &'r Ring, mut coeffs: Vec<Elem>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| ring.contains(c)));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { ring, coeffs }
    }

    pub fn zero(ring: &'r Ring) -> Self {
        UniPoly { ring, coeffs: Vec::new() }
    }

    pub fn constant(ring: &'r Ring, c: Elem) -> Self {
        UniPoly::new(ring, vec![c])
    }

    pub fn one(ring: &'r Ring) -> Self {
        UniPoly::constant(ring, 1)
    }

    /// `x - a`
    pub fn linear_root(ring: &'r Ring, a: Elem) -> Self {
        UniPoly::new(ring, vec![ring.neg(a), 1])
    }

    /// Monic polynomial `x^d + lower[d-1] x^(d-1) + ... + lower[0]`.
    pub fn monic_from_lower(ring: &'r Ring, lower: &[Elem]) -> Self {
        let mut coeffs = lower.to_vec();
        coeffs.push(1);
        UniPoly::new(ring, coeffs)
    }

    pub fn ring(&self) -> &'r Ring {
        self.ring
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn add(&self, other: &Self) -> Self {
        let r = self.ring;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                r.add(a, b)
            })
            .collect();
        UniPoly::new(r, coeffs)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| self.ring.neg(c)).collect();
        UniPoly::new(self.ring, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.ring);
        }
        let r = self.ring;
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = r.add(out[i + j], r.mul(a, b));
            }
        }
        UniPoly::new(r, out)
    }

    pub fn scale(&self, c: Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|&a| self.ring.mul(a, c)).collect();
        UniPoly::new(self.ring, coeffs)
    }

    /// Division with remainder. The divisor must be monic, or the ring a
    /// field and the divisor nonzero.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        let r = self.ring;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = match divisor.leading() {
            1 => 1,
            lc if r.is_field() => r.inv(lc)?,
            _ => return Err(Error::NonMonicDivisor),
        };
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((UniPoly::zero(r), self.clone()));
        }
        let mut quot = vec![0; rem.len() - dd];
        for shift in (0..quot.len()).rev() {
            let c = r.mul(rem[shift + dd], lc_inv);
            quot[shift] = c;
            if c == 0 {
                continue;
            }
            for (i, &dc) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = r.sub(rem[shift + i], r.mul(c, dc));
            }
        }
        rem.truncate(dd);
        Ok((UniPoly::new(r, quot), UniPoly::new(r, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Elem) -> Elem {
        let r = self.ring;
        self.coeffs.iter().rev().fold(0, |acc, &c| r.add(r.mul(acc, x), c))
    }

    /// Scales to leading coefficient 1. Requires an invertible leading
    /// coefficient.
    pub fn monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let inv = self.ring.inv(self.leading())?;
        Ok(self.scale(inv))
    }

    /// Monic GCD by the Euclidean algorithm; `gcd(f, 0) = monic(f)`.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if !self.ring.is_field() {
            return Err(Error::NotAField);
        }
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Number of distinct `a` in the ring with `f(a) = 0`, by evaluating at
    /// every element. Over Z_n the population of interest is monic
    /// polynomials of positive degree.
    pub fn count_distinct_roots(&self) -> Result<usize> {
        if !self.is_monic() {
            return Err(Error::NonMonic);
        }
        if self.degree() == Some(0) {
            return Err(Error::ZeroDegree);
        }
        Ok(self.ring.elements().filter(|&a| self.eval(a) == 0).count())
    }
}

impl fmt::Debug for UniPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({:?})", self.coeffs)
    }
}

impl fmt::Display for UniPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}*x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}
