//! Recursive-descent parser for the element grammar used by the CLI:
//! rationals `p/q`, the coefficient variable `z` with integer powers,
//! grouplike factors `e^(2*a1 - a2)`, primitive generators by name
//! (`x1` or `x(i,m)`), and the operators `+ - * ^` with parentheses.

use crate::coeff::{rat, LaurentPoly, Rational};
use crate::error::Error;
use crate::hopf::{AlgebraSignature, HopfElement, Monomial, SigRef};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Ident(String),
    Punct(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
        } else if b.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let text = &src[start..i];
            let value: i64 = text.parse().map_err(|_| Error::ParseError {
                offset: start,
                expected: "integer literal within machine range".into(),
            })?;
            out.push((start, Tok::Int(value)));
        } else if b.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if matches!(b, b'+' | b'-' | b'*' | b'^' | b'(' | b')' | b'/' | b',') {
            out.push((i, Tok::Punct(b as char)));
            i += 1;
        } else {
            return Err(Error::ParseError {
                offset: i,
                expected: "one of + - * ^ ( ) / , or an identifier".into(),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    sig: &'a SigRef,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|&(o, _)| o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T> {
        Err(Error::ParseError {
            offset: self.offset(),
            expected: expected.into(),
        })
    }

    fn expect_punct(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(Tok::Punct(p)) if *p == c => {
                self.pos += 1;
                Ok(())
            }
            _ => self.error(&format!("`{c}`")),
        }
    }

    fn expect_int(&mut self) -> Result<i64> {
        match self.peek() {
            Some(&Tok::Int(v)) => {
                self.pos += 1;
                Ok(v)
            }
            _ => self.error("an integer"),
        }
    }

    /// `expr := term (('+'|'-') term)*`
    fn expr(&mut self) -> Result<HopfElement> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Punct('+')) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(Tok::Punct('-')) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    /// `term := factor ('*' factor)*`
    fn term(&mut self) -> Result<HopfElement> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Punct('*')) {
            self.pos += 1;
            acc = acc.product(&self.factor()?)?;
        }
        Ok(acc)
    }

    /// `factor := '-' factor | atom ['^' ['-'] int]`
    fn factor(&mut self) -> Result<HopfElement> {
        if self.peek() == Some(&Tok::Punct('-')) {
            self.pos += 1;
            return Ok(self.factor()?.scale(&LaurentPoly::from_int(-1)));
        }
        let atom = self.atom()?;
        if self.peek() != Some(&Tok::Punct('^')) {
            return Ok(atom.build(self.sig));
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Tok::Punct('-')) {
            self.pos += 1;
            true
        } else {
            false
        };
        let exp_offset = self.offset();
        let k = self.expect_int()?;
        let k = if negative { -k } else { k };
        atom.power(self.sig, k, exp_offset)
    }

    fn atom(&mut self) -> Result<Atom> {
        let offset = self.offset();
        match self.bump() {
            Some(Tok::Int(n)) => {
                // rational literal `p` or `p/q`
                if self.peek() == Some(&Tok::Punct('/')) {
                    self.pos += 1;
                    let d_offset = self.offset();
                    let d = self.expect_int()?;
                    if d == 0 {
                        return Err(Error::ParseError {
                            offset: d_offset,
                            expected: "a nonzero denominator".into(),
                        });
                    }
                    Ok(Atom::Scalar(rat(n, d)))
                } else {
                    Ok(Atom::Scalar(rat(n, 1)))
                }
            }
            Some(Tok::Punct('(')) => {
                let inner = self.expr()?;
                self.expect_punct(')')?;
                Ok(Atom::Element(inner))
            }
            Some(Tok::Ident(name)) => self.ident_atom(name, offset),
            _ => Err(Error::ParseError {
                offset,
                expected: "a number, generator, `(` or `-`".into(),
            }),
        }
    }

    fn ident_atom(&mut self, name: String, offset: usize) -> Result<Atom> {
        if name == "z" {
            return Ok(Atom::Z);
        }
        if name == "e" && self.peek() == Some(&Tok::Punct('^')) {
            self.pos += 1;
            self.expect_punct('(')?;
            let group = self.group_linear()?;
            self.expect_punct(')')?;
            return Ok(Atom::Grouplike(group));
        }
        if let Some(p) = self.sig.primitive_index(&name) {
            return Ok(Atom::Primitive(p));
        }
        // composite primitive name `x(i,m)`
        if name == "x" && self.peek() == Some(&Tok::Punct('(')) {
            self.pos += 1;
            let i = self.expect_int()?;
            self.expect_punct(',')?;
            let m = self.expect_int()?;
            self.expect_punct(')')?;
            let full = format!("x({i},{m})");
            return match self.sig.primitive_index(&full) {
                Some(p) => Ok(Atom::Primitive(p)),
                None => Err(Error::UnknownGenerator(full)),
            };
        }
        let _ = offset;
        Err(Error::UnknownGenerator(name))
    }

    /// Integer combination of the grouplike generators, e.g. `2*a1 - a2`.
    fn group_linear(&mut self) -> Result<Vec<i64>> {
        let mut exps = vec![0i64; self.sig.num_grouplike()];
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(Tok::Punct('-')) => {
                    self.pos += 1;
                    -1
                }
                Some(Tok::Punct('+')) if !first => {
                    self.pos += 1;
                    1
                }
                _ if first => 1,
                _ => return Ok(exps),
            };
            first = false;
            let coeff = match self.peek() {
                Some(&Tok::Int(v)) => {
                    self.pos += 1;
                    self.expect_punct('*')?;
                    v
                }
                _ => 1,
            };
            let offset = self.offset();
            let Some(Tok::Ident(name)) = self.bump() else {
                return Err(Error::ParseError {
                    offset,
                    expected: "a grouplike generator a1..aL".into(),
                });
            };
            let index = name
                .strip_prefix('a')
                .and_then(|rest| rest.parse::<usize>().ok())
                .filter(|&k| k >= 1 && k <= self.sig.num_grouplike());
            let Some(k) = index else {
                return Err(Error::UnknownGenerator(name));
            };
            exps[k - 1] += sign * coeff;
        }
    }
}

/// A parsed factor before exponentiation.
enum Atom {
    Scalar(Rational),
    Z,
    Grouplike(Vec<i64>),
    Primitive(usize),
    Element(HopfElement),
}

impl Atom {
    fn build(self, sig: &SigRef) -> HopfElement {
        match self {
            Atom::Scalar(c) => HopfElement::scalar(sig.clone(), LaurentPoly::constant(c)),
            Atom::Z => HopfElement::scalar(sig.clone(), LaurentPoly::monomial(1, rat(1, 1))),
            Atom::Grouplike(g) => HopfElement::from_monomial(
                sig.clone(),
                Monomial::new(g, Default::default()),
                LaurentPoly::one(),
            ),
            Atom::Primitive(p) => HopfElement::primitive(sig.clone(), p),
            Atom::Element(e) => e,
        }
    }

    fn power(self, sig: &SigRef, k: i64, offset: usize) -> Result<HopfElement> {
        let nonneg = |expected: &str| -> Result<u32> {
            u32::try_from(k).map_err(|_| Error::ParseError {
                offset,
                expected: expected.into(),
            })
        };
        match self {
            Atom::Scalar(c) => {
                if k >= 0 || !num::Zero::is_zero(&c) {
                    Ok(HopfElement::scalar(
                        sig.clone(),
                        LaurentPoly::constant(crate::coeff::rat_pow(&c, k)),
                    ))
                } else {
                    Err(Error::ParseError {
                        offset,
                        expected: "a nonnegative exponent for zero".into(),
                    })
                }
            }
            Atom::Z => {
                let exp = i32::try_from(k).map_err(|_| Error::ExponentOverflow)?;
                Ok(HopfElement::scalar(
                    sig.clone(),
                    LaurentPoly::monomial(exp, rat(1, 1)),
                ))
            }
            Atom::Grouplike(g) => Ok(HopfElement::from_monomial(
                sig.clone(),
                Monomial::new(g.iter().map(|&e| e * k).collect(), Default::default()),
                LaurentPoly::one(),
            )),
            Atom::Primitive(p) => {
                let k = nonneg("a nonnegative exponent on a primitive generator")?;
                Ok(HopfElement::from_monomial(
                    sig.clone(),
                    Monomial::new(
                        vec![0; sig.num_grouplike()],
                        [(p, k)].into_iter().collect(),
                    ),
                    LaurentPoly::one(),
                ))
            }
            Atom::Element(e) => {
                let k = nonneg("a nonnegative exponent on a parenthesized expression")?;
                let mut acc = HopfElement::one(sig.clone());
                for _ in 0..k {
                    acc = acc.product(&e)?;
                }
                Ok(acc)
            }
        }
    }
}

/// Parses an element of the algebra over the given signature.
pub fn parse_element(src: &str, sig: &SigRef) -> Result<HopfElement> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        sig,
        end: src.len(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.error("end of input");
    }
    Ok(e)
}

/// Parses a coefficient in `A` (the Laurent grammar: rationals and `z`).
pub fn parse_coeff(src: &str) -> Result<LaurentPoly> {
    let sig = AlgebraSignature::new(0, Vec::new())?;
    let e = parse_element(src, &sig)?;
    Ok(e.coeff(&Monomial::unit(0)))
}

/// Parses an exact rational constant; `z`-terms are rejected.
pub fn parse_rational(src: &str) -> Result<Rational> {
    let value = parse_coeff(src)?;
    value
        .as_constant()
        .ok_or(Error::NonConstantGrouplikeValue)
}
