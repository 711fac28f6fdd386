use std::sync::Arc;

use rand::Rng;

use super::multi::{Monomial, MultiPoly, MAX_VARS};
use super::uni::UniPoly;
use crate::algebra::{Elem, Ring};
use crate::error::{Error, Result};

/// Coefficient layout of polynomials
/// `x0^d + sum_{i<d} c_i(x1, .., x_{v-1}) x0^i` with `deg c_i <= d - i`.
///
/// Each `c_i` is stored dense over the total-degree simplex of the non-main
/// variables, monomials in ascending lexicographic order. The flattened
/// coefficient vector lists `c_0` first, then `c_1`, and so on; reading it as
/// base-`q` digits (first entry least significant) gives the enumeration
/// index of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    nvars: usize,
    main_deg: usize,
    monomials: Vec<Monomial>,
    offsets: Vec<usize>,
}

impl Shape {
    pub fn new(nvars: usize, main_deg: usize) -> Result<Shape> {
        if !(1..=MAX_VARS).contains(&nvars) {
            return Err(Error::InvalidConfig(format!("nvars must be in 1..={MAX_VARS}")));
        }
        let mut monomials = Vec::new();
        let mut offsets = vec![0];
        for i in 0..main_deg {
            monomials.extend(simplex(nvars - 1, main_deg - i));
            offsets.push(monomials.len());
        }
        Ok(Shape { nvars, main_deg, monomials, offsets })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn main_deg(&self) -> usize {
        self.main_deg
    }

    /// Number of free coefficients.
    pub fn coeff_count(&self) -> usize {
        self.monomials.len()
    }

    /// Monomials (without `x0`) of the coefficient of `x0^i`.
    pub fn level(&self, i: usize) -> &[Monomial] {
        &self.monomials[self.offsets[i]..self.offsets[i + 1]]
    }

    /// `q^coeff_count`, if it fits.
    pub fn population(&self, q: u64) -> Option<u128> {
        (q as u128).checked_pow(self.coeff_count() as u32)
    }

    /// Values of every stored monomial at `point` (the non-main variables),
    /// aligned with the flattened coefficient vector.
    pub fn monomial_values(&self, ring: &Ring, point: &[Elem]) -> Result<Vec<Elem>> {
        if point.len() + 1 != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars - 1, got: point.len() });
        }
        Ok(self
            .monomials
            .iter()
            .map(|m| {
                point.iter().enumerate().fold(1, |acc, (j, &v)| {
                    let e = m.0[j + 1];
                    if e == 0 {
                        acc
                    } else {
                        ring.mul(acc, ring.pow(v, e as u64))
                    }
                })
            })
            .collect())
    }

    /// Lower coefficients `c_0(point) .. c_{d-1}(point)` of the specialization,
    /// given the coefficient vector and precomputed monomial values.
    #[inline]
    pub fn specialize_into(&self, ring: &Ring, coeffs: &[Elem], values: &[Elem], out: &mut [Elem]) {
        for i in 0..self.main_deg {
            let (lo, hi) = (self.offsets[i], self.offsets[i + 1]);
            out[i] = coeffs[lo..hi]
                .iter()
                .zip(&values[lo..hi])
                .fold(0, |acc, (&c, &v)| if c == 0 { acc } else { ring.add(acc, ring.mul(c, v)) });
        }
    }
}

/// Exponent vectors in `k` variables (placed at positions 1..=k) with total
/// degree at most `bound`, ascending lexicographic order.
fn simplex(k: usize, bound: usize) -> Vec<Monomial> {
    fn rec(pos: usize, k: usize, left: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if pos > k {
            out.push(*cur);
            return;
        }
        for e in 0..=left {
            cur.0[pos] = e as u16;
            rec(pos + 1, k, left - e, cur, out);
        }
        cur.0[pos] = 0;
    }
    let mut out = Vec::new();
    rec(1, k, bound, &mut Monomial::default(), &mut out);
    out
}

/// Polynomial monic in `x0` with the total-degree coefficient shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapedMultiPoly<'r> {
    ring: &'r Ring,
    shape: Arc<Shape>,
    coeffs: Vec<Elem>,
}

impl<'r> ShapedMultiPoly<'r> {
    pub fn from_coeffs(ring: &'r Ring, shape: Arc<Shape>, coeffs: Vec<Elem>) -> Result<Self> {
        if coeffs.len() != shape.coeff_count() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} coefficients, got {}",
                shape.coeff_count(),
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|&c| !ring.contains(c)) {
            return Err(Error::ShapeMismatch("coefficient outside the ring".into()));
        }
        Ok(ShapedMultiPoly { ring, shape, coeffs })
    }

    /// Inverse of [`ShapedMultiPoly::index`].
    pub fn from_index(ring: &'r Ring, shape: Arc<Shape>, mut index: u128) -> Self {
        let q = ring.cardinality() as u128;
        let coeffs = (0..shape.coeff_count())
            .map(|_| {
                let d = index % q;
                index /= q;
                d as Elem
            })
            .collect();
        ShapedMultiPoly { ring, shape, coeffs }
    }

    pub fn random<R: Rng + ?Sized>(ring: &'r Ring, shape: Arc<Shape>, rng: &mut R) -> Self {
        let q = ring.cardinality();
        let coeffs = (0..shape.coeff_count()).map(|_| rng.gen_range(0..q)).collect();
        ShapedMultiPoly { ring, shape, coeffs }
    }

    /// Reads a general polynomial into the shape: it must be monic in `x0`
    /// of degree `main_deg` with `deg c_i <= main_deg - i`.
    pub fn try_from_multi(p: &MultiPoly<'r>, main_deg: usize) -> Result<Self> {
        let shape = Arc::new(Shape::new(p.nvars(), main_deg)?);
        if p.degree_in(0) != Some(main_deg) || !p.is_monic_in_main() {
            return Err(Error::NonMonic);
        }
        let mut coeffs = vec![0; shape.coeff_count()];
        let mut pos = std::collections::HashMap::new();
        for i in 0..main_deg {
            for (j, m) in shape.level(i).iter().enumerate() {
                pos.insert(m.mul(&Monomial::var(0, i as u16)), shape.offsets[i] + j);
            }
        }
        for (m, &c) in p.terms() {
            if m.0[0] as usize == main_deg {
                continue;
            }
            match pos.get(m) {
                Some(&k) => coeffs[k] = c,
                None => {
                    return Err(Error::ShapeMismatch(format!(
                        "term of x0^{} has total degree {} > {}",
                        m.0[0],
                        m.total_degree() - m.0[0] as usize,
                        main_deg - m.0[0] as usize
                    )))
                }
            }
        }
        Ok(ShapedMultiPoly { ring: p.ring(), shape, coeffs })
    }

    pub fn ring(&self) -> &'r Ring {
        self.ring
    }

    pub fn shape(&self) -> &Arc<Shape> {
        &self.shape
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.shape.nvars
    }

    pub fn main_deg(&self) -> usize {
        self.shape.main_deg
    }

    pub fn index(&self) -> u128 {
        let q = self.ring.cardinality() as u128;
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * q + c as u128)
    }

    pub fn to_multi(&self) -> MultiPoly<'r> {
        let shape = &self.shape;
        let lead = std::iter::once((Monomial::var(0, shape.main_deg as u16), 1));
        let rest = (0..shape.main_deg).flat_map(|i| {
            let xi = Monomial::var(0, i as u16);
            shape
                .level(i)
                .iter()
                .zip(&self.coeffs[shape.offsets[i]..shape.offsets[i + 1]])
                .map(move |(m, &c)| (m.mul(&xi), c))
        });
        MultiPoly::from_terms(self.ring, shape.nvars, lead.chain(rest))
    }

    /// Specializes the non-main variables; the result is monic of degree
    /// `main_deg`.
    pub fn eval(&self, point: &[Elem]) -> Result<UniPoly<'r>> {
        let values = self.shape.monomial_values(self.ring, point)?;
        let mut lower = vec![0; self.shape.main_deg];
        self.shape.specialize_into(self.ring, &self.coeffs, &values, &mut lower);
        Ok(UniPoly::monic_from_lower(self.ring, &lower))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    #[test]
    fn shape_sizes() {
        // bivariate total degree d: d(d+3)/2 free coefficients
        for d in 1..6 {
            assert_eq!(Shape::new(2, d).unwrap().coeff_count(), d * (d + 3) / 2);
        }
        // x1 + (a x2 + b x3 + c)
        assert_eq!(Shape::new(3, 1).unwrap().coeff_count(), 3);
        assert_eq!(Shape::new(1, 3).unwrap().coeff_count(), 3);
        assert!(Shape::new(0, 1).is_err());
        assert_eq!(Shape::new(2, 2).unwrap().population(7), Some(16807));
    }

    #[test]
    fn specialization_examples() {
        let f5 = Ring::prime_field(5).unwrap();
        let f = ShapedMultiPoly::try_from_multi(&parse_poly(&f5, 2, "x0^2 + x1*x0 + x1^2").unwrap(), 2)
            .unwrap();
        assert_eq!(f.eval(&[0]).unwrap(), UniPoly::new(&f5, vec![0, 0, 1]));
        let (a, c, g) = (3, 4, 2);
        let lin = ShapedMultiPoly::try_from_multi(&parse_poly(&f5, 2, "x0 + 3*x1 + 4").unwrap(), 1).unwrap();
        assert_eq!(lin.eval(&[g]).unwrap(), UniPoly::new(&f5, vec![(a * g + c) % 5, 1]));
        assert_eq!(lin.eval(&[]), Err(Error::ArityMismatch { expected: 1, got: 0 }));
    }

    #[test]
    fn rejects_off_shape() {
        let f5 = Ring::prime_field(5).unwrap();
        let p = parse_poly(&f5, 2, "x0^2 + x0*x1^2").unwrap();
        assert!(matches!(ShapedMultiPoly::try_from_multi(&p, 2), Err(Error::ShapeMismatch(_))));
        let p = parse_poly(&f5, 2, "2*x0^2 + x1").unwrap();
        assert_eq!(ShapedMultiPoly::try_from_multi(&p, 2), Err(Error::NonMonic));
    }

    #[test]
    fn index_roundtrip_and_multi_agree() {
        let f3 = Ring::prime_field(3).unwrap();
        let shape = Arc::new(Shape::new(3, 2).unwrap());
        for idx in (0..shape.population(3).unwrap()).step_by(97) {
            let f = ShapedMultiPoly::from_index(&f3, shape.clone(), idx);
            assert_eq!(f.index(), idx);
            let m = f.to_multi();
            assert_eq!(m.total_degree(), Some(2));
            assert_eq!(ShapedMultiPoly::try_from_multi(&m, 2).unwrap(), f);
            for pt in [[0, 0], [1, 2], [2, 2]] {
                assert_eq!(f.eval(&pt).unwrap(), m.eval_rest(&pt).unwrap());
            }
        }
    }

    #[test]
    fn random_specializations_keep_degree() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let f11 = Ring::prime_field(11).unwrap();
        for i in 0..1000 {
            let nvars = 2 + i % 3;
            let deg = 1 + i % 4;
            let shape = Arc::new(Shape::new(nvars, deg).unwrap());
            let f = ShapedMultiPoly::random(&f11, shape, &mut rng);
            let pt: Vec<Elem> = (0..nvars - 1).map(|_| rng.gen_range(0..11)).collect();
            let u = f.eval(&pt).unwrap();
            assert_eq!(u.degree(), Some(deg));
            assert!(u.is_monic());
        }
    }
}
