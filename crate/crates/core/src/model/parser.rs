//! Recursive-descent parser for the equation language.
//!
//! ```text
//! system   := equation (";" equation)* [";"]
//! equation := expr "=" expr
//! expr     := term (("+" | "-") term)*
//! term     := factor ("*" factor)*
//! factor   := rational | var | var "^" nat | int "^" var
//!           | "(" "-" int ")" "^" var | "(" expr ")" | "-" factor
//! ```
//!
//! Rationals are written `p/q` with no spaces. Multiplication is always
//! explicit: `2x` is an error.

use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::ast::{Equation, EquationSystem, Expr};
use crate::{Int, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}{}", fmt_expected(.expected))]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
    pub expected: Vec<String>,
}

fn fmt_expected(e: &[String]) -> String {
    if e.is_empty() {
        String::new()
    } else {
        format!(" (expected one of: {})", e.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(Int),
    Ratio(Int, Int),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Eq,
    Semi,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "integer `{n}`"),
            Tok::Ratio(p, q) => write!(f, "rational `{p}/{q}`"),
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, col, message: String| ParseError {
        line,
        col,
        message,
        expected: vec![],
    };
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
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
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '=' => Some(Tok::Eq),
            ';' => Some(Tok::Semi),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, line: tl, col: tc });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: String = chars[start..i].iter().collect();
            let mut tok = Tok::Int(num.parse().expect("digits"));
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                let s2 = i + 1;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let den: String = chars[s2..i].iter().collect();
                let den: Int = den.parse().expect("digits");
                if den.is_zero() {
                    return Err(err(tl, tc, "zero denominator in rational literal".into()));
                }
                tok = Tok::Ratio(num.parse().expect("digits"), den);
            }
            if i < chars.len() && (chars[i].is_ascii_alphabetic() || chars[i] == '_') {
                return Err(err(
                    line,
                    col + (i - start),
                    "implicit multiplication is not allowed; write `*` between a number and a variable"
                        .into(),
                ));
            }
            col += i - start;
            out.push(Spanned { tok, line: tl, col: tc });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Spanned {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: tl,
                col: tc,
            });
            continue;
        }
        return Err(err(tl, tc, format!("unexpected character `{c}`")));
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>, expected: &[&str]) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError {
            line: s.line,
            col: s.col,
            message: message.into(),
            expected: expected.iter().map(|e| e.to_string()).collect(),
        }
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        self.error(format!("unexpected {}", self.peek()), expected)
    }

    fn expect(&mut self, t: Tok, name: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&[name]))
        }
    }

    fn system(&mut self) -> Result<EquationSystem, ParseError> {
        let mut equations = vec![self.equation()?];
        while *self.peek() == Tok::Semi {
            self.bump();
            if *self.peek() == Tok::Eof {
                break;
            }
            equations.push(self.equation()?);
        }
        if *self.peek() != Tok::Eof {
            return Err(self.unexpected(&["`;`", "`+`", "`-`", "`*`", "end of input"]));
        }
        Ok(EquationSystem { equations })
    }

    fn equation(&mut self) -> Result<Equation, ParseError> {
        let lhs = self.expr()?;
        if *self.peek() != Tok::Eq {
            return Err(self.unexpected(&["`=`", "`+`", "`-`", "`*`"]));
        }
        self.bump();
        let rhs = self.expr()?;
        Ok(Equation { lhs, rhs })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = Expr::Add {
                        lhs: Box::new(acc),
                        rhs: Box::new(rhs),
                    };
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = Expr::Sub {
                        lhs: Box::new(acc),
                        rhs: Box::new(rhs),
                    };
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.factor()?;
            acc = Expr::Mul {
                lhs: Box::new(acc),
                rhs: Box::new(rhs),
            };
        }
        Ok(acc)
    }

    const FACTOR_START: &'static [&'static str] = &["number", "identifier", "`(`", "`-`"];

    fn factor(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Minus => {
                self.bump();
                let arg = self.factor()?;
                Ok(Expr::Neg { arg: Box::new(arg) })
            }
            Tok::Int(n) => {
                self.bump();
                if *self.peek() == Tok::Caret {
                    self.bump();
                    return self.exponential(n);
                }
                Ok(Expr::Num {
                    value: Rat::from_integer(n),
                })
            }
            Tok::Ratio(p, q) => {
                self.bump();
                if *self.peek() == Tok::Caret {
                    return Err(self.error("exponential bases must be integers", &[]));
                }
                Ok(Expr::Num {
                    value: Rat::new(p, q),
                })
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() != Tok::Caret {
                    return Ok(Expr::Var { name });
                }
                self.bump();
                match self.peek().clone() {
                    Tok::Int(k) => {
                        let exp = k
                            .to_u32()
                            .ok_or_else(|| self.error("exponent too large", &[]))?;
                        self.bump();
                        Ok(Expr::Pow { var: name, exp })
                    }
                    Tok::Minus => Err(self.error(
                        "negative polynomial exponents are not allowed",
                        &["natural number"],
                    )),
                    _ => Err(self.unexpected(&["natural number"])),
                }
            }
            Tok::LParen => {
                // (-int)^var
                if *self.peek_at(1) == Tok::Minus
                    && matches!(self.peek_at(2), Tok::Int(_))
                    && *self.peek_at(3) == Tok::RParen
                    && *self.peek_at(4) == Tok::Caret
                {
                    self.bump();
                    self.bump();
                    let Tok::Int(n) = self.bump() else { unreachable!() };
                    self.bump();
                    self.bump();
                    return self.exponential(-n);
                }
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                if *self.peek() == Tok::Caret {
                    return Err(self.error(
                        "only variables and integer bases may be raised to a power",
                        &[],
                    ));
                }
                Ok(inner)
            }
            _ => Err(self.unexpected(Self::FACTOR_START)),
        }
    }

    // after `base ^`
    fn exponential(&mut self, base: Int) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Ident(var) => {
                if base.is_zero() {
                    return Err(self.error("exponential base must be nonzero", &[]));
                }
                self.bump();
                Ok(Expr::Exp { base, var })
            }
            Tok::Int(_) if !base.is_negative() => Err(self.error(
                "constant powers are not supported; write the value directly",
                &["identifier"],
            )),
            _ => Err(self.unexpected(&["identifier"])),
        }
    }
}

/// Parse a `;`-separated system of equations.
pub fn parse_equation_text(src: &str) -> Result<EquationSystem, ParseError> {
    let toks = lex(src)?;
    Parser { toks, pos: 0 }.system()
}
