//! Sylvester matrices and resultants.
//!
//! Sign convention: `res(A, B) = det(Syl(A, B))` with the `deg B` shifted
//! rows of `A` on top, leading coefficients first, so `res(x - a, x - b) =
//! a - b`. The Euclidean path reproduces this sign exactly.

use std::collections::HashMap;

use super::multi::MultiPoly;
use super::shaped::ShapedMultiPoly;
use super::uni::UniPoly;
use crate::algebra::{Elem, Ring};
use crate::error::{Error, Result};

/// Commutative ring in which Sylvester matrix entries live.
pub trait CoeffRing {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
}

impl CoeffRing for Ring {
    type E = Elem;
    fn zero(&self) -> Elem {
        0
    }
    fn one(&self) -> Elem {
        1
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Ring::add(self, *a, *b)
    }
    fn neg(&self, a: &Elem) -> Elem {
        Ring::neg(self, *a)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        Ring::mul(self, *a, *b)
    }
    fn is_zero(&self, a: &Elem) -> bool {
        *a == 0
    }
}

/// Polynomials in `nvars` variables over a ring, as matrix entries.
#[derive(Debug, Clone, Copy)]
pub struct PolyCoeffs<'r> {
    pub ring: &'r Ring,
    pub nvars: usize,
}

impl<'r> CoeffRing for PolyCoeffs<'r> {
    type E = MultiPoly<'r>;
    fn zero(&self) -> MultiPoly<'r> {
        MultiPoly::zero(self.ring, self.nvars)
    }
    fn one(&self) -> MultiPoly<'r> {
        MultiPoly::one(self.ring, self.nvars)
    }
    fn add(&self, a: &MultiPoly<'r>, b: &MultiPoly<'r>) -> MultiPoly<'r> {
        a.add(b)
    }
    fn neg(&self, a: &MultiPoly<'r>) -> MultiPoly<'r> {
        a.neg()
    }
    fn mul(&self, a: &MultiPoly<'r>, b: &MultiPoly<'r>) -> MultiPoly<'r> {
        a.mul(b)
    }
    fn is_zero(&self, a: &MultiPoly<'r>) -> bool {
        a.is_zero()
    }
}

/// `(n + m) x (n + m)` Sylvester matrix of polynomials of degrees `n`, `m`
/// in the main variable.
#[derive(Debug, Clone, PartialEq)]
pub struct SylvesterMatrix<E> {
    pub n: usize,
    pub m: usize,
    pub entries: Vec<Vec<E>>,
}

/// Builds the Sylvester matrix from ascending coefficient sequences. Both
/// inputs need positive degree and a nonzero leading coefficient.
pub fn sylvester_matrix<R: CoeffRing>(
    ring: &R,
    a: &[R::E],
    b: &[R::E],
) -> Result<SylvesterMatrix<R::E>> {
    let degree = |c: &[R::E]| -> Result<usize> {
        match c.last() {
            Some(lc) if c.len() >= 2 && !ring.is_zero(lc) => Ok(c.len() - 1),
            _ => Err(Error::ZeroDegree),
        }
    };
    let n = degree(a)?;
    let m = degree(b)?;
    let size = n + m;
    let mut entries = vec![vec![ring.zero(); size]; size];
    for row in 0..m {
        for (j, c) in a.iter().rev().enumerate() {
            entries[row][row + j] = c.clone();
        }
    }
    for row in 0..n {
        for (j, c) in b.iter().rev().enumerate() {
            entries[m + row][row + j] = c.clone();
        }
    }
    Ok(SylvesterMatrix { n, m, entries })
}

impl<E: Clone> SylvesterMatrix<E> {
    /// Determinant by Laplace expansion along rows, memoized on the set of
    /// columns still available. Division-free.
    pub fn determinant<R: CoeffRing<E = E>>(&self, ring: &R) -> E {
        let size = self.entries.len();
        assert!(size <= 24, "matrix too large for minor expansion");
        let mut memo = HashMap::new();
        minor(ring, &self.entries, 0, (1u32 << size) - 1, &mut memo)
    }
}

fn minor<R: CoeffRing>(
    ring: &R,
    rows: &[Vec<R::E>],
    row: usize,
    cols: u32,
    memo: &mut HashMap<u32, R::E>,
) -> R::E {
    if row == rows.len() {
        return ring.one();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = ring.zero();
    let mut negate = false;
    for col in 0..rows.len() {
        if cols & (1 << col) == 0 {
            continue;
        }
        let entry = &rows[row][col];
        if !ring.is_zero(entry) {
            let sub = minor(ring, rows, row + 1, cols & !(1 << col), memo);
            if !ring.is_zero(&sub) {
                let term = ring.mul(entry, &sub);
                acc = ring.add(&acc, &if negate { ring.neg(&term) } else { term });
            }
        }
        negate = !negate;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// `det(Syl(A, B))` over any coefficient ring, from ascending coefficients.
pub fn resultant_det<R: CoeffRing>(ring: &R, a: &[R::E], b: &[R::E]) -> Result<R::E> {
    Ok(sylvester_matrix(ring, a, b)?.determinant(ring))
}

/// Resultant of two univariate polynomials over a field via the Euclidean
/// remainder sequence.
pub fn resultant_uni(f: &UniPoly<'_>, g: &UniPoly<'_>) -> Result<Elem> {
    let ring = f.ring();
    if !ring.is_field() {
        return Err(Error::NotAField);
    }
    match (f.degree(), g.degree()) {
        (Some(n), Some(m)) if n >= 1 && m >= 1 => {}
        _ => return Err(Error::ZeroDegree),
    }
    let mut a = f.clone();
    let mut b = g.clone();
    let mut acc: Elem = 1;
    loop {
        let n = a.degree().expect("a is nonzero");
        let m = match b.degree() {
            None => return Ok(0),
            Some(m) => m,
        };
        if m == 0 {
            // res(A, c) = c^deg A
            return Ok(ring.mul(acc, ring.pow(b.leading(), n as u64)));
        }
        if n == 0 {
            return Ok(ring.mul(acc, ring.pow(a.leading(), m as u64)));
        }
        let r = a.rem(&b)?;
        let dr = match r.degree() {
            None => return Ok(0),
            Some(d) => d,
        };
        // res(A, B) = (-1)^(nm) res(B, A) = (-1)^(nm) lc(B)^(n - deg R) res(B, R)
        if n * m % 2 == 1 {
            acc = ring.neg(acc);
        }
        acc = ring.mul(acc, ring.pow(b.leading(), (n - dr) as u64));
        a = b;
        b = r;
    }
}

/// `res_{x0}(A, B)` as a polynomial in the remaining variables, by minor
/// expansion over the polynomial coefficient ring. Inputs must be monic in
/// `x0` of positive degree. The Bezout bound `deg R <= deg A * deg B` is
/// checked on the result.
pub fn resultant_in_main<'r>(a: &MultiPoly<'r>, b: &MultiPoly<'r>) -> Result<MultiPoly<'r>> {
    if !a.is_monic_in_main() || !b.is_monic_in_main() {
        return Err(Error::NonMonic);
    }
    let ctx = PolyCoeffs { ring: a.ring(), nvars: a.nvars() };
    let r = resultant_det(&ctx, &a.main_coefficients(), &b.main_coefficients())?;
    let bound = a.total_degree().unwrap_or(0) * b.total_degree().unwrap_or(0);
    if let Some(degree) = r.total_degree() {
        if degree > bound {
            return Err(Error::BezoutViolation { degree, bound });
        }
    }
    Ok(r)
}

/// `R = res_{x0}(A, B)` for shaped polynomials.
pub fn resultant_poly<'r>(a: &ShapedMultiPoly<'r>, b: &ShapedMultiPoly<'r>) -> Result<MultiPoly<'r>> {
    check_same_space(a, b)?;
    resultant_in_main(&a.to_multi(), &b.to_multi())
}

/// Bivariate case: `R(y)` as a univariate polynomial in `x1`.
pub fn resultant_poly_bivariate<'r>(
    a: &ShapedMultiPoly<'r>,
    b: &ShapedMultiPoly<'r>,
) -> Result<UniPoly<'r>> {
    if a.nvars() != 2 {
        return Err(Error::ShapeMismatch("expected bivariate polynomials".into()));
    }
    let r = resultant_poly(a, b)?;
    let deg = r.degree_in(1).unwrap_or(0);
    let mut coeffs = vec![0; deg + 1];
    for (m, &c) in r.terms() {
        coeffs[m.0[1] as usize] = c;
    }
    Ok(UniPoly::new(a.ring(), coeffs))
}

/// `R(point)` via the resultant polynomial.
pub fn resultant_specialized_det(
    a: &ShapedMultiPoly<'_>,
    b: &ShapedMultiPoly<'_>,
    point: &[Elem],
) -> Result<Elem> {
    let r = resultant_poly(a, b)?;
    let mut full = Vec::with_capacity(point.len() + 1);
    full.push(0);
    full.extend_from_slice(point);
    r.eval(&full)
}

/// `res(A(x0, point), B(x0, point))` via the univariate Euclidean path.
pub fn resultant_specialized_uni(
    a: &ShapedMultiPoly<'_>,
    b: &ShapedMultiPoly<'_>,
    point: &[Elem],
) -> Result<Elem> {
    check_same_space(a, b)?;
    resultant_uni(&a.eval(point)?, &b.eval(point)?)
}

fn check_same_space(a: &ShapedMultiPoly<'_>, b: &ShapedMultiPoly<'_>) -> Result<()> {
    if a.nvars() != b.nvars() || a.ring() != b.ring() {
        return Err(Error::ShapeMismatch("operands live in different polynomial rings".into()));
    }
    if a.main_deg() == 0 || b.main_deg() == 0 {
        return Err(Error::ZeroDegree);
    }
    Ok(())
}
