//! Lexer and polynomial expression parser, shared by [`PolyRing::parse`]
//! and the session-file front end.
//!
//! The parser is total: any byte string yields either a value or a
//! [`ParseError`] with a 1-based source location and the tokens that would
//! have been accepted. It never panics and never aborts the process.

use std::fmt;

use num::bigint::BigInt;
use num_traits::Zero;

use crate::poly::{PolyRing, Polynomial};
use crate::scalar::FieldScalar;

/// Hard bound on the total degree of any parsed polynomial. Keeps
/// adversarial inputs like `x^1000000 * x^1000000 * ...` from exhausting
/// memory or overflowing exponent arithmetic.
pub const MAX_PARSED_DEGREE: u64 = 1 << 20;

/// A syntax error with source position and the expected-token set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl ParseError {
    pub(crate) fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
            expected: Vec::new(),
        }
    }

    pub(crate) fn expecting(
        line: usize,
        col: usize,
        message: impl Into<String>,
        expected: &[&str],
    ) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind {
    Ident(String),
    Int(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Eq,
    Eof,
}

impl TokenKind {
    pub(crate) fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) => format!("identifier `{s}`"),
            TokenKind::Int(s) => format!("number `{s}`"),
            TokenKind::Plus => "`+`".into(),
            TokenKind::Minus => "`-`".into(),
            TokenKind::Star => "`*`".into(),
            TokenKind::Caret => "`^`".into(),
            TokenKind::Slash => "`/`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::LBracket => "`[`".into(),
            TokenKind::RBracket => "`]`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Semi => "`;`".into(),
            TokenKind::Eq => "`=`".into(),
            TokenKind::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub col: usize,
}

/// Tokenize `src`. Whitespace is insignificant; `#` starts a comment that
/// runs to the end of the line. The result always ends with an `Eof` token.
pub(crate) fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let mut advance = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            advance(&mut chars);
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                advance(&mut chars);
                if c == '\n' {
                    break;
                }
            }
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    digits.push(d);
                    advance(&mut chars);
                } else {
                    break;
                }
            }
            tokens.push(Token {
                kind: TokenKind::Int(digits),
                line: tl,
                col: tc,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut name = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    name.push(d);
                    advance(&mut chars);
                } else {
                    break;
                }
            }
            tokens.push(Token {
                kind: TokenKind::Ident(name),
                line: tl,
                col: tc,
            });
            continue;
        }
        let kind = match c {
            '+' => TokenKind::Plus,
            '-' => TokenKind::Minus,
            '*' => TokenKind::Star,
            '^' => TokenKind::Caret,
            '/' => TokenKind::Slash,
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            '[' => TokenKind::LBracket,
            ']' => TokenKind::RBracket,
            ',' => TokenKind::Comma,
            ';' => TokenKind::Semi,
            '=' => TokenKind::Eq,
            other => {
                return Err(ParseError::new(
                    tl,
                    tc,
                    format!("unexpected character `{other}`"),
                ));
            }
        };
        advance(&mut chars);
        tokens.push(Token { kind, line: tl, col: tc });
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        line,
        col,
    });
    Ok(tokens)
}

/// Recursive-descent parser for polynomial expressions over a fixed ring.
/// Evaluates as it parses; identifiers must be ring variables.
///
/// Grammar: `expr := sign? term ((+|-) term)*`, `term := factor (* factor)*`,
/// `factor := atom (^ INT)?`, `atom := INT (/ INT)? | IDENT | ( expr )`.
pub(crate) struct PolyParser<'a, F: FieldScalar> {
    tokens: &'a [Token],
    pos: usize,
    ring: &'a PolyRing<F>,
}

impl<'a, F: FieldScalar> PolyParser<'a, F> {
    pub(crate) fn new(tokens: &'a [Token], pos: usize, ring: &'a PolyRing<F>) -> Self {
        PolyParser { tokens, pos, ring }
    }

    pub(crate) fn position(&self) -> usize {
        self.pos
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn bump(&mut self) -> Token {
        let t = self.peek().clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn parse_expr(&mut self) -> Result<Polynomial<F>, ParseError> {
        let mut negate = false;
        match self.peek().kind {
            TokenKind::Plus => {
                self.bump();
            }
            TokenKind::Minus => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.parse_term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek().kind {
                TokenKind::Plus => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = acc.add(&t);
                }
                TokenKind::Minus => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Polynomial<F>, ParseError> {
        let mut acc = self.parse_factor()?;
        while self.peek().kind == TokenKind::Star {
            let star = self.bump();
            let f = self.parse_factor()?;
            self.check_degree(
                acc.total_degree().unwrap_or(0) + f.total_degree().unwrap_or(0),
                star.line,
                star.col,
            )?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Polynomial<F>, ParseError> {
        let base = self.parse_atom()?;
        if self.peek().kind != TokenKind::Caret {
            return Ok(base);
        }
        let caret = self.bump();
        let t = self.bump();
        let digits = match &t.kind {
            TokenKind::Int(d) => d,
            other => {
                return Err(ParseError::expecting(
                    t.line,
                    t.col,
                    format!("expected an exponent after `^`, found {}", other.describe()),
                    &["integer"],
                ));
            }
        };
        let k: u32 = digits.parse().map_err(|_| {
            ParseError::new(t.line, t.col, format!("exponent `{digits}` too large"))
        })?;
        if u64::from(k) > MAX_PARSED_DEGREE {
            return Err(ParseError::new(
                t.line,
                t.col,
                format!("exponent `{digits}` exceeds the supported degree bound"),
            ));
        }
        self.check_degree(
            base.total_degree().unwrap_or(0).saturating_mul(u64::from(k)),
            caret.line,
            caret.col,
        )?;
        Ok(base.pow(k))
    }

    fn parse_atom(&mut self) -> Result<Polynomial<F>, ParseError> {
        let t = self.bump();
        match &t.kind {
            TokenKind::Int(digits) => {
                let num: BigInt = digits.parse().expect("digit run parses as integer");
                let mut den = BigInt::from(1);
                if self.peek().kind == TokenKind::Slash {
                    self.bump();
                    let d = self.bump();
                    match &d.kind {
                        TokenKind::Int(dd) => {
                            den = dd.parse().expect("digit run parses as integer");
                            if den.is_zero() {
                                return Err(ParseError::new(
                                    d.line,
                                    d.col,
                                    "zero denominator in coefficient",
                                ));
                            }
                        }
                        other => {
                            return Err(ParseError::expecting(
                                d.line,
                                d.col,
                                format!(
                                    "expected a denominator after `/`, found {}",
                                    other.describe()
                                ),
                                &["integer"],
                            ));
                        }
                    }
                }
                let c = F::from_ratio(&num, &den, self.ring.field()).map_err(|e| {
                    ParseError::new(t.line, t.col, format!("bad coefficient: {e}"))
                })?;
                Ok(self.ring.constant(c))
            }
            TokenKind::Ident(name) => match self.ring.var_by_name(name) {
                Some(v) => Ok(v),
                None => Err(ParseError::new(
                    t.line,
                    t.col,
                    format!("`{name}` is not a variable of {}", self.ring),
                )),
            },
            TokenKind::LParen => {
                let inner = self.parse_expr()?;
                let close = self.bump();
                if close.kind != TokenKind::RParen {
                    return Err(ParseError::expecting(
                        close.line,
                        close.col,
                        format!("unclosed parenthesis, found {}", close.kind.describe()),
                        &[")"],
                    ));
                }
                Ok(inner)
            }
            other => Err(ParseError::expecting(
                t.line,
                t.col,
                format!("expected a polynomial term, found {}", other.describe()),
                &["integer", "variable", "("],
            )),
        }
    }

    fn check_degree(&self, degree: u64, line: usize, col: usize) -> Result<(), ParseError> {
        if degree > MAX_PARSED_DEGREE {
            Err(ParseError::new(
                line,
                col,
                "polynomial degree exceeds the supported bound",
            ))
        } else {
            Ok(())
        }
    }
}

impl<F: FieldScalar> PolyRing<F> {
    /// Parse a single polynomial in this ring's variables.
    pub fn parse(&self, src: &str) -> Result<Polynomial<F>, ParseError> {
        let tokens = lex(src)?;
        let mut parser = PolyParser::new(&tokens, 0, self);
        let poly = parser.parse_expr()?;
        let end = parser.bump();
        if end.kind != TokenKind::Eof {
            return Err(ParseError::expecting(
                end.line,
                end.col,
                format!("trailing input: {}", end.kind.describe()),
                &["end of input"],
            ));
        }
        Ok(poly)
    }
}
