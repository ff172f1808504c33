//! Element literals such as `D[1]+D[2]`, `0.5*d[0] - (1+2i)*D[1,2]` or `one0 - 2*e3`.
//!
//! A literal is a sum of terms `c*d[g]` (the point mass at `g`), `c*D[g]`
//! (`Δ_g = δ_g − δ_1`) and the named constants `one0` (the identity of the
//! augmentation ideal) and `e3` (the idempotent `γΔ_1 + γ̄Δ_2` of `Z/3Z`).
//! The coefficient `c` is optional and may be `a`, `bi`, `a+bi` or any of
//! these in parentheses. `g` is a residue, or a comma-separated tuple of
//! residues for product groups. Both `-` and `−` are accepted as minus signs.

use std::sync::Arc;

use num_complex::Complex64;

use crate::element::AlgebraElement;
use crate::error::{Error, Result};
use crate::gelfand::z3_idempotent;
use crate::group::FiniteGroup;

/// Parses a literal over `group`.
///
/// ```
/// use lpalg::{parse_group, Complex64};
/// use lpalg::literal::parse_element;
///
/// let g = parse_group("Z3").unwrap();
/// let a = parse_element(&g, "D[1]+D[2]").unwrap();
/// assert_eq!(a.coeffs()[0], Complex64::new(-2.0, 0.0));
/// let b = parse_element(&g, "(1-2i)*d[2]").unwrap();
/// assert_eq!(b.coeffs()[2], Complex64::new(1.0, -2.0));
/// ```
pub fn parse_element(group: &Arc<FiniteGroup>, literal: &str) -> Result<AlgebraElement> {
    let normalized: String = literal
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '−' { '-' } else { c })
        .collect();
    if normalized.is_empty() {
        return Err(Error::parse(literal, "empty element literal"));
    }
    let mut parser = Parser {
        src: normalized.as_bytes(),
        pos: 0,
        group,
        original: literal,
    };
    let mut total = AlgebraElement::zero(group);
    let mut first = true;
    while parser.pos < parser.src.len() {
        let sign = match parser.peek() {
            Some(b'+') => {
                parser.pos += 1;
                1.0
            }
            Some(b'-') => {
                parser.pos += 1;
                -1.0
            }
            _ if first => 1.0,
            _ => return Err(parser.error("expected '+' or '-' between terms")),
        };
        first = false;
        let term = parser.term()?;
        total = &total + &term.scale(sign);
    }
    Ok(total)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    group: &'a Arc<FiniteGroup>,
    original: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn rest(&self) -> &str {
        std::str::from_utf8(&self.src[self.pos..]).unwrap_or("")
    }

    fn error(&self, reason: &str) -> Error {
        let at = self.rest();
        let token = if at.is_empty() { self.original } else { at };
        Error::parse(token, reason)
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn term(&mut self) -> Result<AlgebraElement> {
        let start = self.pos;
        let coefficient = if self.starts_atom() {
            Complex64::new(1.0, 0.0)
        } else {
            let c = self.coefficient()?;
            if !self.eat(b'*') {
                self.pos = start;
                return Err(self.error("expected '*' after a coefficient"));
            }
            c
        };
        Ok(self.atom()?.scale(coefficient))
    }

    fn starts_atom(&self) -> bool {
        let rest = self.rest();
        rest.starts_with("d[") || rest.starts_with("D[") || rest.starts_with("one0") || rest.starts_with("e3")
    }

    fn atom(&mut self) -> Result<AlgebraElement> {
        let rest = self.rest();
        if rest.starts_with("one0") {
            self.pos += 4;
            return AlgebraElement::one_zero(self.group);
        }
        if rest.starts_with("e3") {
            self.pos += 2;
            return z3_idempotent(self.group);
        }
        let capital = match self.peek() {
            Some(b'd') => false,
            Some(b'D') => true,
            _ => return Err(self.error("expected d[g], D[g], one0 or e3")),
        };
        self.pos += 1;
        if !self.eat(b'[') {
            return Err(self.error("expected '['"));
        }
        let close = self.src[self.pos..]
            .iter()
            .position(|&b| b == b']')
            .ok_or_else(|| self.error("missing ']'"))?;
        let inside = std::str::from_utf8(&self.src[self.pos..self.pos + close]).unwrap_or("");
        let index = self.group_index(inside)?;
        self.pos += close + 1;
        if capital {
            AlgebraElement::cap_delta(self.group, index)
        } else {
            AlgebraElement::delta(self.group, index)
        }
    }

    fn group_index(&self, inside: &str) -> Result<usize> {
        let inside = inside.trim_start_matches('(').trim_end_matches(')');
        let residues = inside
            .split(',')
            .map(|s| {
                s.parse::<i64>()
                    .map_err(|_| Error::parse(inside, "group elements are residues or tuples of residues"))
            })
            .collect::<Result<Vec<i64>>>()?;
        match self.group.factors() {
            Some(f) if f.len() == 1 && residues.len() == 1 => {
                Ok(residues[0].rem_euclid(f[0] as i64) as usize)
            }
            Some(_) => self.group.index_of_tuple(&residues),
            None if residues.len() == 1 && residues[0] >= 0 => {
                let g = residues[0] as usize;
                if g < self.group.order() {
                    Ok(g)
                } else {
                    Err(Error::IndexOutOfRange {
                        index: g,
                        order: self.group.order(),
                    })
                }
            }
            None => Err(Error::parse(inside, "expected an element index")),
        }
    }

    fn coefficient(&mut self) -> Result<Complex64> {
        if self.eat(b'(') {
            let c = self.complex()?;
            if !self.eat(b')') {
                return Err(self.error("expected ')'"));
            }
            Ok(c)
        } else {
            self.complex()
        }
    }

    /// `a`, `bi`, `i`, `a+bi`, `a-i`.
    fn complex(&mut self) -> Result<Complex64> {
        let start = self.pos;
        let neg = self.eat(b'-');
        if !neg {
            self.eat(b'+');
        }
        let sign = if neg { -1.0 } else { 1.0 };
        let first = self.number();
        if self.eat(b'i') {
            let im = first.unwrap_or(1.0);
            return Ok(Complex64::new(0.0, sign * im));
        }
        let re = match first {
            Some(v) => sign * v,
            None => {
                self.pos = start;
                return Err(self.error("expected a number"));
            }
        };
        // optional imaginary part; backtrack if it is not one
        let mark = self.pos;
        let im_sign = match self.peek() {
            Some(b'+') => 1.0,
            Some(b'-') => -1.0,
            _ => return Ok(Complex64::new(re, 0.0)),
        };
        self.pos += 1;
        let im = self.number();
        if self.eat(b'i') {
            Ok(Complex64::new(re, im_sign * im.unwrap_or(1.0)))
        } else {
            self.pos = mark;
            Ok(Complex64::new(re, 0.0))
        }
    }

    /// Unsigned decimal with optional fraction and exponent.
    fn number(&mut self) -> Option<f64> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9' | b'.')) {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            let digits = self.pos;
            while matches!(self.peek(), Some(b'0'..=b'9')) {
                self.pos += 1;
            }
            if self.pos == digits {
                self.pos = mark;
            }
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn sums_of_deltas() {
        let g = parse_group("Z3").unwrap();
        let a = parse_element(&g, "D[1] + D[2]").unwrap();
        assert_eq!(a.coeffs(), &[c(-2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]);
        let b = parse_element(&g, "0.5*d[0] − 2*d[4]").unwrap();
        assert_eq!(b.coeffs(), &[c(0.5, 0.0), c(-2.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn complex_coefficients() {
        let g = parse_group("Z3").unwrap();
        for (lit, want) in [
            ("2i*d[1]", c(0.0, 2.0)),
            ("i*d[1]", c(0.0, 1.0)),
            ("-i*d[1]", c(0.0, -1.0)),
            ("1+2i*d[1]", c(1.0, 2.0)),
            ("(1.5-0.5i)*d[1]", c(1.5, -0.5)),
            ("-(1+i)*d[1]", c(-1.0, -1.0)),
            ("1e-1*d[1]", c(0.1, 0.0)),
        ] {
            let a = parse_element(&g, lit).unwrap();
            assert!((a.coeffs()[1] - want).norm() < 1e-15, "{lit}");
        }
    }

    #[test]
    fn named_constants() {
        let g = parse_group("Z3").unwrap();
        let s = parse_element(&g, "one0 - 2*e3").unwrap();
        let e = z3_idempotent(&g).unwrap();
        let expected = &AlgebraElement::one_zero(&g).unwrap() - &e.scale(2.0);
        assert!(s.max_distance(&expected) < 1e-15);
        assert!(parse_element(&parse_group("Z4").unwrap(), "e3").is_err());
    }

    #[test]
    fn tuples_for_products() {
        let g = parse_group("Z2xZ3").unwrap();
        let a = parse_element(&g, "d[1,2]").unwrap();
        assert_eq!(a.coeffs()[5], c(1.0, 0.0));
        assert!(parse_element(&g, "d[1]").is_err());
    }

    #[test]
    fn malformed() {
        let g = parse_group("Z3").unwrap();
        for lit in ["", "D[1", "x[1]", "2 D[1]", "D[1]D[2]", "1+2*D[1]", "d[a]"] {
            assert!(parse_element(&g, lit).is_err(), "{lit}");
        }
    }
}
