//! Canonical text form and a small expression parser for polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::{Monomial, Polynomial, DEFAULT_TERM_CAP};
use crate::error::{Error, Result};
use crate::field::{Coeff, Domain};

pub(super) fn format(p: &Polynomial, prefix: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let d = p.domain();
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let negative = d.is_negative(c);
        let magnitude = if negative { d.neg(c) } else { c.clone() };
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if m.is_one() {
            out.push_str(&d.format(&magnitude));
        } else if d.is_one(&magnitude) {
            out.push_str(&m.to_text(prefix));
        } else {
            out.push_str(&d.format(&magnitude));
            out.push('*');
            out.push_str(&m.to_text(prefix));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexed {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Lexed>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, column, message: String| Error::Syntax {
        line,
        column,
        message,
    };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Lexed {
                tok,
                line: l0,
                column: c0,
            });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Lexed {
                tok: Tok::Num(s.parse().expect("digits")),
                line: l0,
                column: c0,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            let dstart = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - start;
            let digits: String = chars[dstart..i].iter().collect();
            let idx: usize = digits
                .parse()
                .ok()
                .filter(|&n: &usize| n >= 1)
                .ok_or_else(|| err(l0, c0, "variables are written x1, x2, ...".into()))?;
            out.push(Lexed {
                tok: Tok::Var(idx - 1),
                line: l0,
                column: c0,
            });
            continue;
        }
        return Err(err(l0, c0, format!("unexpected character '{c}'")));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Lexed],
    pos: usize,
    domain: Domain,
    nvars: usize,
    end: (usize, usize),
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map_or(self.end, |l| (l.line, l.column))
    }

    fn fail<T>(&self, message: &str) -> Result<T> {
        let (line, column) = self.here();
        Err(Error::Syntax {
            line,
            column,
            message: message.to_string(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            let rhs = self.power()?;
            acc = acc.mul_capped(&rhs, DEFAULT_TERM_CAP)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let Some(Tok::Num(e)) = self.peek().cloned() else {
                return self.fail("expected a non-negative integer exponent");
            };
            self.pos += 1;
            let e: u32 = u32::try_from(e).or_else(|_| self.fail("exponent too large"))?;
            return base.pow(e, DEFAULT_TERM_CAP);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let d = self.domain;
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut value = BigRational::from_integer(n);
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    let Some(Tok::Num(den)) = self.peek().cloned() else {
                        return self.fail("expected a denominator");
                    };
                    if den.is_positive() {
                        value /= BigRational::from_integer(den);
                    } else {
                        return self.fail("zero denominator");
                    }
                    self.pos += 1;
                }
                let c: Coeff = match d.from_rational(&value) {
                    Some(c) => c,
                    None => return self.fail("denominator vanishes in this field"),
                };
                Ok(Polynomial::constant(d, self.nvars, c))
            }
            Some(Tok::Var(v)) => {
                if v >= self.nvars {
                    return self.fail(&format!(
                        "variable x{} out of range for {} variables",
                        v + 1,
                        self.nvars
                    ));
                }
                self.pos += 1;
                Ok(Polynomial::monomial(d, self.nvars, d.one(), Monomial::var(v)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.fail("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => self.fail("expected a number, variable or '('"),
        }
    }
}

pub(super) fn parse(domain: Domain, nvars: Option<usize>, src: &str) -> Result<Polynomial> {
    let toks = lex(src)?;
    let inferred = toks
        .iter()
        .filter_map(|l| match l.tok {
            Tok::Var(v) => Some(v + 1),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let lines: Vec<&str> = src.split('\n').collect();
    let end = (lines.len(), lines.last().map_or(0, |l| l.chars().count()) + 1);
    let mut parser = Parser {
        toks: &toks,
        pos: 0,
        domain,
        nvars: nvars.unwrap_or(inferred),
        end,
    };
    if toks.is_empty() {
        return parser.fail("empty polynomial");
    }
    let p = parser.expr()?;
    if parser.pos != toks.len() {
        return parser.fail("unexpected trailing input");
    }
    Ok(p.with_nvars(parser.nvars))
}
