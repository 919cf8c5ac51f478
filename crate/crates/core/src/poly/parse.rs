//! Parser for the textual polynomial grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'x' index | '(' expr ')'
//! ```
//!
//! Whitespace is ignored; juxtaposition (implicit `*`) is rejected.

use num_bigint::BigInt;

use super::{ExponentVector, IntPolynomial};
use crate::{Error, Result};

/// Parses `text`, taking the number of variables to be the largest index
/// that occurs (at least one).
pub fn parse_polynomial(text: &str) -> Result<IntPolynomial> {
    let tokens = lex(text)?;
    let max_var = tokens
        .iter()
        .filter_map(|t| match t.kind {
            Tok::Var(j) => Some(j),
            _ => None,
        })
        .max()
        .unwrap_or(1);
    Parser::new(tokens, max_var, text.len()).run()
}

/// Parses `text` as a polynomial in exactly `nvars` variables; indices
/// beyond `nvars` are an error.
pub fn parse_polynomial_in(text: &str, nvars: usize) -> Result<IntPolynomial> {
    if nvars == 0 {
        return Err(Error::InvalidArgument("nvars must be at least 1".into()));
    }
    let tokens = lex(text)?;
    for t in &tokens {
        if let Tok::Var(j) = t.kind {
            if j > nvars {
                return Err(Error::Parse {
                    pos: t.pos,
                    msg: format!("variable x{j} exceeds declared count {nvars}"),
                });
            }
        }
    }
    Parser::new(tokens, nvars, text.len()).run()
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Token {
    kind: Tok,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let pos = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push(Token { kind: Tok::Plus, pos }),
            b'-' => out.push(Token { kind: Tok::Minus, pos }),
            b'*' => out.push(Token { kind: Tok::Star, pos }),
            b'^' => out.push(Token { kind: Tok::Caret, pos }),
            b'(' => out.push(Token { kind: Tok::LParen, pos }),
            b')' => out.push(Token { kind: Tok::RParen, pos }),
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = text[start..i].parse().expect("digits");
                out.push(Token { kind: Tok::Int(v), pos });
                continue;
            }
            b'x' => {
                let start = i + 1;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(Error::Parse {
                        pos,
                        msg: "expected variable index after 'x'".into(),
                    });
                }
                let idx: usize = text[start..i].parse().map_err(|_| Error::Parse {
                    pos,
                    msg: "variable index too large".into(),
                })?;
                if idx == 0 {
                    return Err(Error::Parse {
                        pos,
                        msg: "variable index 0 (variables are x1..xn)".into(),
                    });
                }
                out.push(Token { kind: Tok::Var(idx), pos });
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Parse {
                    pos,
                    msg: format!("unexpected character {ch:?}"),
                });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    nvars: usize,
    end: usize,
}

impl Parser {
    fn new(tokens: Vec<Token>, nvars: usize, end: usize) -> Self {
        Parser {
            tokens,
            at: 0,
            nvars,
            end,
        }
    }

    fn run(mut self) -> Result<IntPolynomial> {
        if self.tokens.is_empty() {
            return Err(Error::Parse {
                pos: 0,
                msg: "empty input".into(),
            });
        }
        let f = self.expr()?;
        if let Some(t) = self.tokens.get(self.at) {
            return Err(Error::Parse {
                pos: t.pos,
                msg: "unexpected token (implicit multiplication is not allowed)".into(),
            });
        }
        Ok(f)
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.at).map(|t| &t.kind)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |t| t.pos)
    }

    fn expr(&mut self) -> Result<IntPolynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<IntPolynomial> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.at += 1;
            let u = self.unary()?;
            acc = &acc * &u;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<IntPolynomial> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.at += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<IntPolynomial> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.at += 1;
            let pos = self.pos();
            match self.peek().cloned() {
                Some(Tok::Int(k)) => {
                    self.at += 1;
                    let k: u32 = k.try_into().map_err(|_| Error::Parse {
                        pos,
                        msg: "exponent too large".into(),
                    })?;
                    if k > 4096 {
                        return Err(Error::Parse {
                            pos,
                            msg: "exponent too large".into(),
                        });
                    }
                    Ok(base.pow(k))
                }
                _ => Err(Error::Parse {
                    pos,
                    msg: "expected non-negative integer exponent after '^'".into(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<IntPolynomial> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.at += 1;
                Ok(IntPolynomial::constant(self.nvars, v))
            }
            Some(Tok::Var(j)) => {
                self.at += 1;
                Ok(IntPolynomial::monomial(
                    ExponentVector::unit(self.nvars, j - 1),
                    1,
                ))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.at += 1;
                        Ok(e)
                    }
                    _ => Err(Error::Parse {
                        pos: self.pos(),
                        msg: "expected ')'".into(),
                    }),
                }
            }
            Some(_) => Err(Error::Parse {
                pos,
                msg: "expected a number, variable or '('".into(),
            }),
            None => Err(Error::Parse {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}
