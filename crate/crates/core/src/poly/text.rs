//! Text format for polynomials and algebra elements.
//!
//! ```text
//! poly   := term (('+' | '-') term)*
//! term   := ['-'] [coeff ['*']] [blade ['*']] [monomial]
//! coeff  := rational | '(' rational ')'
//! blade  := 'e[' index (',' index)* ']' | 'e[]'
//! monomial := var ['^' int] ('*' var ['^' int])*
//! var    := 'x' int
//! ```

use num_bigint::BigInt;
use num_traits::One;

use super::{Exponent, HPolynomial};
use crate::algebra::{AlgebraElement, AlgebraKind, Blade};
use crate::error::{Error, Result};
use crate::rational::{format_rational, int, Rational};

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { offset: self.pos, message: message.into() })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected '{}'", c as char))
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected digits");
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn small_int(&mut self) -> Result<usize> {
        let start = self.pos;
        let v = self.digits()?;
        usize::try_from(v).map_err(|_| Error::Syntax { offset: start, message: "integer too large".into() })
    }

    fn unsigned_rational(&mut self) -> Result<Rational> {
        let num = self.digits()?;
        if self.eat(b'/') {
            let at = self.pos;
            let den = self.digits()?;
            if den == BigInt::from(0) {
                return Err(Error::Syntax { offset: at, message: "zero denominator".into() });
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn signed_rational(&mut self) -> Result<Rational> {
        let neg = self.eat(b'-');
        if !neg {
            self.eat(b'+');
        }
        let r = self.unsigned_rational()?;
        Ok(if neg { -r } else { r })
    }

    fn at_blade(&mut self) -> bool {
        self.peek() == Some(b'e') && self.text.get(self.pos + 1) == Some(&b'[')
    }
}

struct Term {
    coeff: Rational,
    negated_by_blade: bool,
    blade: Blade,
    exponent: Exponent,
}

fn parse_term(cur: &mut Cursor, kind: AlgebraKind, nvars: usize) -> Result<Term> {
    let start = {
        cur.skip_ws();
        cur.pos
    };
    let mut coeff = Rational::one();
    if cur.eat(b'-') {
        coeff = -coeff;
    }
    let mut seen = false;
    let mut pending_star = false;
    match cur.peek() {
        Some(b'(') => {
            cur.pos += 1;
            coeff *= cur.signed_rational()?;
            cur.expect(b')')?;
            seen = true;
        }
        Some(c) if c.is_ascii_digit() => {
            coeff *= cur.unsigned_rational()?;
            seen = true;
        }
        _ => {}
    }
    if seen && cur.eat(b'*') {
        pending_star = true;
    }
    let mut blade = Blade::SCALAR;
    let mut negated_by_blade = false;
    if cur.at_blade() {
        cur.pos += 2;
        let mut indices = Vec::new();
        if !cur.eat(b']') {
            loop {
                let at = {
                    cur.skip_ws();
                    cur.pos
                };
                let i = cur.small_int()?;
                indices.push((i, at));
                if cur.eat(b']') {
                    break;
                }
                cur.expect(b',')?;
            }
        }
        let idx: Vec<usize> = indices.iter().map(|x| x.0).collect();
        let (neg, b) = kind.blade_from_indices(&idx)?;
        negated_by_blade = neg;
        blade = b;
        seen = true;
        pending_star = cur.eat(b'*');
    }
    let mut exponent = Exponent::zero(nvars);
    if cur.peek() == Some(b'x') {
        loop {
            cur.expect(b'x')?;
            let var = cur.small_int()?;
            if var >= nvars {
                return Err(Error::VariableOutOfRange { index: var, nvars });
            }
            let power = if cur.eat(b'^') { cur.small_int()? } else { 1 };
            let total = exponent.power(var) as usize + power;
            if total > u8::MAX as usize {
                return cur.error("exponent too large");
            }
            exponent.0[var] = total as u8;
            if !cur.eat(b'*') {
                break;
            }
            if cur.peek() != Some(b'x') {
                return cur.error("expected variable");
            }
        }
        seen = true;
        pending_star = false;
    }
    if pending_star {
        return cur.error("expected blade or variable after '*'");
    }
    if !seen {
        cur.pos = cur.pos.max(start);
        return cur.error("expected term");
    }
    Ok(Term { coeff, negated_by_blade, blade, exponent })
}

/// Parses the text format into a polynomial in `nvars` variables. With
/// `nvars = 0` this is the element format.
pub fn parse_poly(text: &str, kind: AlgebraKind, nvars: usize) -> Result<HPolynomial> {
    let mut cur = Cursor { text: text.as_bytes(), pos: 0 };
    let mut out = HPolynomial::zero(kind, nvars);
    let mut sign = Rational::one();
    loop {
        let t = parse_term(&mut cur, kind, nvars)?;
        let mut c = &t.coeff * &sign;
        if t.negated_by_blade {
            c = -c;
        }
        out.add_blade_term(t.exponent, t.blade, c);
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                sign = Rational::one();
            }
            Some(b'-') => {
                cur.pos += 1;
                sign = int(-1);
            }
            Some(_) => return cur.error("expected '+', '-' or end of input"),
        }
    }
    Ok(out)
}

/// Canonical text: terms `(c)*e[..]*x0^2*x1`, higher total degree first, then
/// larger exponent vectors, then blades in numeric order; `0` for zero.
pub fn format_poly(p: &HPolynomial) -> String {
    let mut keys: Vec<&Exponent> = p.terms.keys().collect();
    keys.sort_by(|a, b| a.display_cmp(b));
    let mut parts = Vec::new();
    for e in keys {
        let coeff: &AlgebraElement = &p.terms[e];
        for (b, c) in coeff.iter() {
            let mut s = format!("({})", format_rational(c));
            if !b.is_scalar() {
                s.push('*');
                s.push_str(&p.kind.format_blade(b));
            }
            for (i, &a) in e.powers().iter().enumerate() {
                match a {
                    0 => {}
                    1 => s.push_str(&format!("*x{i}")),
                    _ => s.push_str(&format!("*x{i}^{a}")),
                }
            }
            parts.push(s);
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}
