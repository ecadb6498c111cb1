//! Text form of candidate polynomials.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor ('*' factor)*
//! factor  := base ('^' uint)?
//! base    := var | complex | '(' expr ')'
//! var     := 'u0' … 'u{m}' | 'v0' | 'vn' | 'vl'
//! complex := number | number 'i' | 'i'
//! ```
//!
//! Whitespace, including newlines, is insignificant. `1+2i` is read as the
//! sum of two literals, which is the same value.

use std::fmt;

use thiserror::Error;

use crate::complex::ComplexHP;
use crate::decomp::{LambdaTriple, PolySpec, VarSpec};
use crate::mp::Real;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number { text: String, imaginary: bool },
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Number { text, imaginary } => write!(f, "'{text}{}'", if *imaginary { "i" } else { "" }),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, column);
        let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line: tl, column: tc });
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            push(&mut out, tok);
            i += 1;
            column += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || c == '.' {
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut k = i + 1;
                if k < chars.len() && (chars[k] == '+' || chars[k] == '-') {
                    k += 1;
                }
                if k < chars.len() && chars[k].is_ascii_digit() {
                    i = k;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let imaginary = i < chars.len() && chars[i] == 'i';
            if imaginary {
                i += 1;
            }
            if i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                return Err(ParseError {
                    line,
                    column: column + (i - start),
                    message: format!("unexpected character '{}' after number", chars[i]),
                });
            }
            column += i - start;
            push(&mut out, Tok::Number { text, imaginary });
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            column += i - start;
            push(&mut out, Tok::Ident(text));
            continue;
        }
        return Err(ParseError {
            line,
            column,
            message: format!("unexpected character '{c}'"),
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    spec: &'a VarSpec,
    prec: u32,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, t: &Token, message: impl Into<String>) -> ParseError {
        ParseError {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<PolySpec, ParseError> {
        let negate = match self.peek().tok {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolySpec, ParseError> {
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PolySpec, ParseError> {
        let base = self.base()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        match &t.tok {
            Tok::Number { text, imaginary: false } if text.chars().all(|c| c.is_ascii_digit()) => {
                let e: u32 = text
                    .parse()
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| self.error_at(&t, format!("exponent must be at most {MAX_EXPONENT}")))?;
                Ok(base.pow(e))
            }
            other => Err(self.error_at(&t, format!("expected a non-negative integer exponent, found {other}"))),
        }
    }

    fn base(&mut self) -> Result<PolySpec, ParseError> {
        let t = self.bump();
        let spec = *self.spec;
        match &t.tok {
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(self.error_at(&close, format!("expected ')', found {}", close.tok)));
                }
                Ok(inner)
            }
            Tok::Number { text, imaginary } => {
                let value = Real::parse(text, self.prec)
                    .ok_or_else(|| self.error_at(&t, format!("malformed number '{text}'")))?;
                let c = if *imaginary {
                    ComplexHP::new(Real::new(self.prec), value)
                } else {
                    ComplexHP::from_real(value)
                };
                Ok(PolySpec::constant(spec, c))
            }
            Tok::Ident(name) => self.variable(name, &t),
            other => Err(self.error_at(&t, format!("expected a variable, number or '(', found {other}"))),
        }
    }

    fn variable(&self, name: &str, t: &Token) -> Result<PolySpec, ParseError> {
        let spec = *self.spec;
        let v = |l0, ln, ll| PolySpec::v(spec, LambdaTriple::new(l0, ln, ll), self.prec);
        match name {
            "i" => Ok(PolySpec::constant(spec, ComplexHP::i(self.prec))),
            "v0" => Ok(v(1, 0, 0)),
            "vn" => Ok(v(0, 1, 0)),
            "vl" => Ok(v(0, 0, 1)),
            _ => {
                let k = name
                    .strip_prefix('u')
                    .filter(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()))
                    .and_then(|d| d.parse::<u32>().ok())
                    .ok_or_else(|| self.error_at(t, format!("unknown variable '{name}'")))?;
                if k > spec.m {
                    return Err(self.error_at(t, format!("'{name}' exceeds the highest order m = {}", spec.m)));
                }
                Ok(PolySpec::u(spec, k, self.prec))
            }
        }
    }
}

/// Parses `src` into a polynomial over `spec`, with literals at `prec` bits.
pub fn parse_polyspec(src: &str, spec: &VarSpec, prec: u32) -> Result<PolySpec, ParseError> {
    let tokens = lex(src)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        spec,
        prec,
    };
    if p.peek().tok == Tok::End {
        let t = p.peek().clone();
        return Err(p.error_at(&t, "expected an expression"));
    }
    let poly = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return Err(p.error_at(&t, format!("unexpected {}", t.tok)));
    }
    Ok(poly)
}
