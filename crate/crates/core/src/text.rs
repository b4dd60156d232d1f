//! Text grammar for polynomials.
//!
//! Terms are joined by `+`/`-`; a term is a `*`-separated product of
//! factors. A factor is a rational literal (`3`, `1/2`), a parenthesised
//! scalar (`(1+2i)`, `(3+w)`), the imaginary unit `i` over ℚ(i), or a
//! variable with an optional exponent (`x0^2`, `y`). The aliases `x,y,z,t`
//! name `x0..x3`. `w` names `x4` in five or more variables or next to `t`,
//! and `x3` otherwise, so both `x*y+z*w` and `x*y+z*t` read as forms in four
//! variables.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, ALIASES};
use crate::scalar::{Field, Scalar};

const W_PLACEHOLDER: usize = usize::MAX;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    field: Field,
}

struct Term {
    coeff: Scalar,
    exps: Vec<(usize, u32)>,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(&self.src[start..self.pos])
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() == Some('^') {
            self.bump();
            self.digits()?.parse().map_err(|_| self.err("bad exponent"))
        } else {
            Ok(1)
        }
    }

    fn factor(&mut self, term: &mut Term) -> Result<()> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits()?.parse().map_err(|_| self.err("bad integer"))?;
                let mut q = BigRational::from_integer(n);
                if self.peek() == Some('/') {
                    self.bump();
                    let d: BigInt = self.digits()?.parse().map_err(|_| self.err("bad integer"))?;
                    if d == BigInt::from(0) {
                        return Err(Error::DivisionByZero);
                    }
                    q /= BigRational::from_integer(d);
                }
                let s = self.field.from_rational(&q)?;
                term.coeff = &term.coeff * &s;
            }
            Some('(') => {
                self.bump();
                let start = self.pos;
                let end = self.src[start..]
                    .find(')')
                    .map(|i| start + i)
                    .ok_or_else(|| self.err("unclosed parenthesis"))?;
                let s = self.field.parse_scalar(&self.src[start..end])?;
                self.pos = end + 1;
                term.coeff = &term.coeff * &s;
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident();
                let e = self.exponent()?;
                if name == "i" {
                    if self.field != Field::GaussianRationals {
                        return Err(self.err("`i` is only available over qi"));
                    }
                    let i = self.field.generator().unwrap();
                    term.coeff = &term.coeff * &i.pow(e as u64);
                    return Ok(());
                }
                let idx = if name == "w" {
                    W_PLACEHOLDER
                } else if let Some(k) = ALIASES.iter().position(|a| *a == name) {
                    k
                } else if let Some(rest) = name.strip_prefix('x') {
                    rest.parse::<usize>().map_err(|_| self.err("unknown variable"))?
                } else {
                    return Err(self.err("unknown variable"));
                };
                term.exps.push((idx, e));
            }
            _ => return Err(self.err("expected a factor")),
        }
        Ok(())
    }

    fn term(&mut self, negative: bool) -> Result<Term> {
        let mut term = Term {
            coeff: if negative { self.field.from_i64(-1) } else { self.field.one() },
            exps: Vec::new(),
        };
        self.factor(&mut term)?;
        while self.peek() == Some('*') {
            self.bump();
            self.factor(&mut term)?;
        }
        Ok(term)
    }

    fn poly(&mut self) -> Result<Vec<Term>> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            terms.push(self.term(negative)?);
            match self.bump() {
                None => break,
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(_) => {
                    self.pos -= 1;
                    return Err(self.err("unexpected character"));
                }
            }
        }
        Ok(terms)
    }
}

/// Parses a polynomial. With `nvars = None` the arity is one more than the
/// largest variable index used (at least 1).
pub fn parse_poly(field: Field, nvars: Option<usize>, src: &str) -> Result<Poly> {
    let mut parser = Parser { src, pos: 0, field };
    if parser.peek().is_none() {
        return Err(Error::Parse(String::from("empty polynomial")));
    }
    let mut terms = parser.poly()?;
    let indices = || terms.iter().flat_map(|t| t.exps.iter().map(|(i, _)| *i));
    let other_max = indices().filter(|&i| i != W_PLACEHOLDER).max();
    if indices().any(|i| i == W_PLACEHOLDER) {
        let w = match nvars {
            Some(n) => if n >= 5 { 4 } else { 3 },
            None if other_max.is_some_and(|m| m >= 3) => 4,
            None => 3,
        };
        for t in &mut terms {
            for (i, _) in &mut t.exps {
                if *i == W_PLACEHOLDER {
                    *i = w;
                }
            }
        }
    }
    let used = terms
        .iter()
        .flat_map(|t| t.exps.iter().map(|(i, _)| i + 1))
        .max()
        .unwrap_or(0);
    let n = match nvars {
        Some(n) if used > n => return Err(Error::Arity { expected: n, found: used }),
        Some(n) => n,
        None => used.max(1),
    };
    Ok(Poly::from_terms(
        field,
        n,
        terms.into_iter().map(|t| {
            let mut e = vec![0u32; n];
            for (i, k) in t.exps {
                e[i] += k;
            }
            (Monomial::new(e), t.coeff)
        }),
    ))
}

/// Parses a list of polynomials, one per line, skipping blank lines and `#` comments.
pub fn parse_poly_lines(field: Field, nvars: Option<usize>, text: &str) -> Result<Vec<Poly>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| parse_poly(field, nvars, l))
        .collect()
}
