//! Plain-text polynomial notation: integer coefficients, variables `x0..x9`,
//! e.g. `x0^2 + 3*x0*x1 + 2`.
//!
//! The printer emits terms in descending lexicographic order (x0 most
//! significant) with canonical ring elements as coefficients, omitting unit
//! coefficients and exponents of 1. Parsing the printed text gives back the
//! same polynomial.

use super::multi::{Monomial, MultiPoly, MAX_VARS};
use crate::algebra::Ring;
use crate::error::{Error, Result};

pub fn format_poly(p: &MultiPoly<'_>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (m, &c) in p.terms().rev() {
        if !out.is_empty() {
            out.push_str(" + ");
        }
        let vars: Vec<String> = m.0[..p.nvars()]
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
            .collect();
        if vars.is_empty() {
            out.push_str(&c.to_string());
        } else {
            if c != 1 {
                out.push_str(&format!("{c}*"));
            }
            out.push_str(&vars.join("*"));
        }
    }
    out
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().or_else(|_| self.err("number too large"))
    }
}

/// Parses a polynomial in `nvars` variables over `ring`.
pub fn parse_poly<'r>(ring: &'r Ring, nvars: usize, text: &str) -> Result<MultiPoly<'r>> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    let mut negate = false;
    match p.peek() {
        Some(b'-') => {
            negate = true;
            p.pos += 1;
        }
        Some(b'+') => p.pos += 1,
        None => return p.err("empty polynomial"),
        _ => {}
    }
    loop {
        let (m, c) = term(&mut p, ring, nvars)?;
        terms.push((m, if negate { ring.neg(c) } else { c }));
        match p.peek() {
            None => break,
            Some(b'+') => negate = false,
            Some(b'-') => negate = true,
            Some(ch) => return p.err(format!("unexpected '{}'", ch as char)),
        }
        p.pos += 1;
    }
    Ok(MultiPoly::from_terms(ring, nvars, terms))
}

fn term(p: &mut Parser<'_>, ring: &Ring, nvars: usize) -> Result<(Monomial, u64)> {
    let mut coeff = 1;
    let mut mono = Monomial::one();
    loop {
        match p.peek() {
            Some(b'x') => {
                p.pos += 1;
                let idx = p.number()? as usize;
                if idx >= nvars.min(MAX_VARS) {
                    return p.err(format!("variable x{idx} out of range for {nvars} variables"));
                }
                let mut e = 1u64;
                if p.peek() == Some(b'^') {
                    p.pos += 1;
                    e = p.number()?;
                }
                let e = u16::try_from(e).or_else(|_| p.err("exponent too large"))?;
                mono = mono.mul(&Monomial::var(idx, e));
            }
            Some(c) if c.is_ascii_digit() => {
                let lit = ring.elem_from_literal(p.number()?)?;
                coeff = ring.mul(coeff, lit);
            }
            _ => return p.err("expected a coefficient or variable"),
        }
        if p.peek() == Some(b'*') {
            p.pos += 1;
        } else {
            return Ok((mono, coeff));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_print() {
        let f7 = Ring::prime_field(7).unwrap();
        let p = parse_poly(&f7, 2, "x0^2 + 3*x0*x1 + 2").unwrap();
        assert_eq!(format_poly(&p), "x0^2 + 3*x0*x1 + 2");
        let q = parse_poly(&f7, 3, "x0^2 + x2 + x1 - 1").unwrap();
        assert_eq!(format_poly(&q), "x0^2 + x1 + x2 + 6");
        assert_eq!(format_poly(&parse_poly(&f7, 1, "x0 - x0").unwrap()), "0");
        assert_eq!(parse_poly(&f7, 1, "-x0").unwrap(), parse_poly(&f7, 1, "6*x0").unwrap());
        assert_eq!(parse_poly(&f7, 2, "x1*x0*2*x0").unwrap(), parse_poly(&f7, 2, "2*x0^2*x1").unwrap());
    }

    #[test]
    fn parse_errors() {
        let f7 = Ring::prime_field(7).unwrap();
        assert!(matches!(parse_poly(&f7, 2, "x2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(&f7, 2, "x0 +"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(&f7, 2, ""), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(&f7, 2, "x0 ? 1"), Err(Error::Parse { .. })));
        let gf4 = Ring::finite_field(4).unwrap();
        assert!(parse_poly(&gf4, 1, "x0 + 5").is_err());
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(
            q in prop::sample::select(vec![2u64, 4, 5, 9, 11]),
            nvars in 1usize..4,
            raw in prop::collection::vec((prop::array::uniform3(0u16..4), 0u64..11), 0..8),
        ) {
            let ring = Ring::finite_field(q).unwrap();
            let terms = raw.into_iter().map(|(e, c)| {
                let mut m = Monomial::one();
                m.0[..nvars].copy_from_slice(&e[..nvars]);
                (m, c % q)
            });
            let p = MultiPoly::from_terms(&ring, nvars, terms);
            let text = format_poly(&p);
            prop_assert_eq!(parse_poly(&ring, nvars, &text).unwrap(), p);
        }
    }
}
