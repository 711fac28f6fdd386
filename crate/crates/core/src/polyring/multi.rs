use std::collections::BTreeMap;
use std::fmt;

use super::uni::UniPoly;
use crate::algebra::{Elem, Ring};
use crate::error::{Error, Result};

/// Variables are `x0 .. x9`; `x0` is the main variable.
pub const MAX_VARS: usize = 10;

/// Exponent vector. The derived ordering is lexicographic with `x0` most
/// significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub [u16; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(i: usize, e: u16) -> Self {
        let mut m = Monomial::default();
        m.0[i] = e;
        m
    }

    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        out
    }

    fn without_main(&self) -> Self {
        let mut m = *self;
        m.0[0] = 0;
        m
    }
}

/// Sparse multivariate polynomial in `nvars` variables over a ring.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly<'r> {
    ring: &'r Ring,
    nvars: usize,
    terms: BTreeMap<Monomial, Elem>,
}

impl<'r> MultiPoly<'r> {
    pub fn zero(ring: &'r Ring, nvars: usize) -> Self {
        assert!((1..=MAX_VARS).contains(&nvars), "nvars must be in 1..={MAX_VARS}");
        MultiPoly { ring, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(ring: &'r Ring, nvars: usize, c: Elem) -> Self {
        MultiPoly::from_terms(ring, nvars, [(Monomial::one(), c)])
    }

    pub fn one(ring: &'r Ring, nvars: usize) -> Self {
        MultiPoly::constant(ring, nvars, 1)
    }

    /// `x_i`
    pub fn var(ring: &'r Ring, nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        MultiPoly::from_terms(ring, nvars, [(Monomial::var(i, 1), 1)])
    }

    /// Sums like terms; zero coefficients are dropped.
    pub fn from_terms(
        ring: &'r Ring,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Elem)>,
    ) -> Self {
        let mut p = MultiPoly::zero(ring, nvars);
        for (m, c) in terms {
            debug_assert!(m.0[nvars..].iter().all(|&e| e == 0));
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Elem) {
        if c == 0 {
            return;
        }
        let r = self.ring;
        let slot = self.terms.entry(m).or_insert(0);
        *slot = r.add(*slot, c);
        if *slot == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn ring(&self) -> &'r Ring {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Elem {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Degree in variable `i`; `None` for zero.
    pub fn degree_in(&self, i: usize) -> Option<usize> {
        self.terms.keys().map(|m| m.0[i] as usize).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let r = self.ring;
        MultiPoly {
            ring: r,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, &c)| (*m, r.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let r = self.ring;
        let mut out = MultiPoly::zero(r, self.nvars);
        for (ma, &a) in &self.terms {
            for (mb, &b) in &other.terms {
                out.add_term(ma.mul(mb), r.mul(a, b));
            }
        }
        out
    }

    pub fn scale(&self, c: Elem) -> Self {
        let r = self.ring;
        MultiPoly::from_terms(r, self.nvars, self.terms.iter().map(|(m, &a)| (*m, r.mul(a, c))))
    }

    /// Evaluates every variable; `point.len()` must equal `nvars`.
    pub fn eval(&self, point: &[Elem]) -> Result<Elem> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, got: point.len() });
        }
        let r = self.ring;
        let mut acc = 0;
        for (m, &c) in &self.terms {
            let mut t = c;
            for (i, &e) in m.0[..self.nvars].iter().enumerate() {
                if e > 0 {
                    t = r.mul(t, r.pow(point[i], e as u64));
                }
            }
            acc = r.add(acc, t);
        }
        Ok(acc)
    }

    /// Evaluates the non-main variables `x1 ..` at `point`.
    pub fn eval_rest(&self, point: &[Elem]) -> Result<UniPoly<'r>> {
        if point.len() + 1 != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars - 1, got: point.len() });
        }
        let r = self.ring;
        let deg = self.degree_in(0).unwrap_or(0);
        let mut coeffs = vec![0; deg + 1];
        for (m, &c) in &self.terms {
            let mut t = c;
            for (i, &e) in m.0[1..self.nvars].iter().enumerate() {
                if e > 0 {
                    t = r.mul(t, r.pow(point[i], e as u64));
                }
            }
            let d = m.0[0] as usize;
            coeffs[d] = r.add(coeffs[d], t);
        }
        Ok(UniPoly::new(r, coeffs))
    }

    /// Coefficients in the main variable `x0`, ascending; each is a
    /// polynomial in the remaining variables (with `x0` exponent zero).
    pub fn main_coefficients(&self) -> Vec<MultiPoly<'r>> {
        let deg = self.degree_in(0).unwrap_or(0);
        let mut out = vec![MultiPoly::zero(self.ring, self.nvars); deg + 1];
        for (m, &c) in &self.terms {
            out[m.0[0] as usize].add_term(m.without_main(), c);
        }
        out
    }

    /// Leading coefficient in `x0` equals the constant 1.
    pub fn is_monic_in_main(&self) -> bool {
        match self.main_coefficients().last() {
            Some(lc) => *lc == MultiPoly::one(self.ring, self.nvars),
            None => false,
        }
    }
}

impl fmt::Debug for MultiPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self)
    }
}

impl fmt::Display for MultiPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::notation::format_poly(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_eval() {
        let f7 = Ring::prime_field(7).unwrap();
        let x = MultiPoly::var(&f7, 3, 0);
        let y = MultiPoly::var(&f7, 3, 1);
        let z = MultiPoly::var(&f7, 3, 2);
        let a = x.mul(&x).add(&y);
        let b = a.add(&z).sub(&MultiPoly::one(&f7, 3));
        assert_eq!(a.total_degree(), Some(2));
        assert_eq!(b.eval(&[2, 3, 4]).unwrap(), (4 + 3 + 4 + 6) % 7);
        let prod = a.mul(&b);
        for pt in [[0, 0, 0], [1, 2, 3], [6, 5, 4]] {
            let lhs = prod.eval(&pt).unwrap();
            assert_eq!(lhs, f7.mul(a.eval(&pt).unwrap(), b.eval(&pt).unwrap()));
        }
        assert!(a.sub(&a).is_zero());
        assert!(a.is_monic_in_main());
        assert!(!y.is_monic_in_main());
        assert_eq!(a.eval(&[1, 2]), Err(Error::ArityMismatch { expected: 3, got: 2 }));
    }

    #[test]
    fn main_coefficients_and_specialization() {
        let f5 = Ring::prime_field(5).unwrap();
        let x = MultiPoly::var(&f5, 2, 0);
        let y = MultiPoly::var(&f5, 2, 1);
        // x^2 + y x + y^2
        let f = x.mul(&x).add(&y.mul(&x)).add(&y.mul(&y));
        let cs = f.main_coefficients();
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[1], y);
        assert_eq!(cs[0], y.mul(&y));
        assert_eq!(f.eval_rest(&[0]).unwrap(), UniPoly::new(&f5, vec![0, 0, 1]));
        assert_eq!(f.eval_rest(&[2]).unwrap(), UniPoly::new(&f5, vec![4, 2, 1]));
    }
}
