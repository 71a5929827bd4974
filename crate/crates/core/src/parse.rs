//! Recursive-descent parser for the polynomial expression grammar.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' natural)?
//! base     := rational | 'i' | identifier | '(' expr ')' | '-' base
//! rational := natural ('/' positive-natural)?
//! ```
//!
//! Whitespace may appear between any two tokens. `i` is the imaginary unit
//! and is never a variable. Note that unary minus binds tighter than `^`,
//! so `-x^2` denotes `(-x)^2 = x^2`; the canonical printer therefore spells
//! such terms as `-1*x^2`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::GaussianRational;
use crate::ring::PolyRing;

/// Largest accepted exponent literal; keeps total degrees within `u32`.
const MAX_EXPONENT: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Natural(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Natural(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut pos = 0usize;
    while pos < bytes.len() {
        let b = bytes[pos];
        if (b as char).is_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        let tok = match b {
            b'+' => {
                pos += 1;
                Tok::Plus
            }
            b'-' => {
                pos += 1;
                Tok::Minus
            }
            b'*' => {
                pos += 1;
                Tok::Star
            }
            b'/' => {
                pos += 1;
                Tok::Slash
            }
            b'^' => {
                pos += 1;
                Tok::Caret
            }
            b'(' => {
                pos += 1;
                Tok::LParen
            }
            b')' => {
                pos += 1;
                Tok::RParen
            }
            b'0'..=b'9' => {
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let text = &input[start..pos];
                Tok::Natural(text.parse::<BigInt>().expect("digits parse"))
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while pos < bytes.len()
                    && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_')
                {
                    pos += 1;
                }
                Tok::Ident(input[start..pos].to_string())
            }
            _ => {
                return Err(Error::Syntax {
                    offset: pos,
                    message: format!("unexpected character `{}`", &input[pos..pos + 1]),
                })
            }
        };
        toks.push((start, tok));
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ring: &'a Arc<PolyRing>,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.pos)
    }

    fn advance(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn offset(&self) -> usize {
        self.peek().map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn unexpected(&self, expected: &str) -> Error {
        let message = match self.peek() {
            Some((_, t)) => format!("expected {expected}, found {}", t.describe()),
            None => format!("expected {expected}, found end of input"),
        };
        Error::Syntax {
            offset: self.offset(),
            message,
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some((_, t)) = self.peek() {
            match t {
                Tok::Plus => {
                    self.advance();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.advance();
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some((_, Tok::Star))) {
            self.advance();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.base()?;
        if matches!(self.peek(), Some((_, Tok::Caret))) {
            self.advance();
            let (off, tok) = match self.advance() {
                Some(t) => t,
                None => return Err(self.unexpected("exponent")),
            };
            let e = match tok {
                Tok::Natural(n) => n,
                _ => {
                    return Err(Error::Syntax {
                        offset: off,
                        message: format!("expected exponent, found {}", tok.describe()),
                    })
                }
            };
            let e: u64 = e.try_into().map_err(|_| Error::Syntax {
                offset: off,
                message: "exponent too large".to_string(),
            })?;
            if e > MAX_EXPONENT {
                return Err(Error::Syntax {
                    offset: off,
                    message: "exponent too large".to_string(),
                });
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Poly> {
        let (off, tok) = match self.advance() {
            Some(t) => t,
            None => return Err(self.unexpected("a value")),
        };
        match tok {
            Tok::Minus => Ok(-&self.base()?),
            Tok::LParen => {
                let inner = self.expr()?;
                match self.advance() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    Some((o, t)) => Err(Error::Syntax {
                        offset: o,
                        message: format!("expected `)`, found {}", t.describe()),
                    }),
                    None => Err(Error::Syntax {
                        offset: self.end,
                        message: "expected `)`, found end of input".to_string(),
                    }),
                }
            }
            Tok::Natural(n) => {
                // Optional `/ positive-natural` completes a rational literal.
                if matches!(self.peek(), Some((_, Tok::Slash))) {
                    self.advance();
                    let (doff, dtok) = match self.advance() {
                        Some(t) => t,
                        None => {
                            return Err(Error::Syntax {
                                offset: self.end,
                                message: "expected denominator, found end of input".to_string(),
                            })
                        }
                    };
                    let d = match dtok {
                        Tok::Natural(d) if !d.is_zero() => d,
                        Tok::Natural(_) => {
                            return Err(Error::Syntax {
                                offset: doff,
                                message: "denominator must be positive".to_string(),
                            })
                        }
                        other => {
                            return Err(Error::Syntax {
                                offset: doff,
                                message: format!(
                                    "expected denominator, found {}",
                                    other.describe()
                                ),
                            })
                        }
                    };
                    let q = BigRational::new(n, d);
                    Ok(Poly::constant(
                        self.ring,
                        GaussianRational::new(q, BigRational::zero()),
                    ))
                } else {
                    let q = BigRational::from_integer(n);
                    Ok(Poly::constant(
                        self.ring,
                        GaussianRational::new(q, BigRational::zero()),
                    ))
                }
            }
            Tok::Ident(name) => {
                if name == "i" {
                    return Ok(Poly::constant(self.ring, GaussianRational::i()));
                }
                match self.ring.variable_index(&name) {
                    Some(v) => Ok(Poly::variable(self.ring, v)),
                    None => Err(Error::UnknownIdentifier { name, offset: off }),
                }
            }
            other => Err(Error::Syntax {
                offset: off,
                message: format!("expected a value, found {}", other.describe()),
            }),
        }
    }
}

/// Parses an expression into a canonical polynomial over the given ring.
pub fn parse_poly(input: &str, ring: &Arc<PolyRing>) -> Result<Poly> {
    let toks = lex(input)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        ring,
        end: input.len(),
    };
    let poly = parser.expr()?;
    if let Some((off, t)) = parser.peek() {
        return Err(Error::Syntax {
            offset: *off,
            message: format!("unexpected {} after expression", t.describe()),
        });
    }
    Ok(poly)
}

/// Parses a constant expression (no variables) into a Gaussian rational.
pub fn parse_constant(input: &str) -> Result<GaussianRational> {
    let ring = PolyRing::new(Vec::<String>::new())?;
    let poly = parse_poly(input, &ring)?;
    Ok(poly.constant_value().expect("constant ring"))
}
