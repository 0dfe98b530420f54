//! Expression syntax for symbolic elements.
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := unary (("*" | "/") unary)*
//! unary    := "-" unary | power
//! power    := atom ("^" exponent)?
//! exponent := "-"? INT | "(" "-"? INT ("/" INT)? ")"
//! atom     := INT | "t" | "log" "(" expr ")" | "(" expr ")"
//! ```
//!
//! Fractional exponents and `log` apply only to `t - c`. Division and negative
//! exponents need a rational or single radical divisor. Whitespace is ignored.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::symbolic::SymbolicElement;
use crate::{CasError, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    T,
    Log,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(token: &Token) -> String {
    match token {
        Token::Int(n) => format!("number `{n}`"),
        Token::T => "`t`".into(),
        Token::Log => "`log`".into(),
        Token::Plus => "`+`".into(),
        Token::Minus => "`-`".into(),
        Token::Star => "`*`".into(),
        Token::Slash => "`/`".into(),
        Token::Caret => "`^`".into(),
        Token::LParen => "`(`".into(),
        Token::RParen => "`)`".into(),
        Token::End => "end of input".into(),
    }
}

fn error(position: usize, message: impl Into<String>) -> CasError {
    CasError::Parse {
        position,
        message: message.into(),
    }
}

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>, CasError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let token = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Token::Int(input[start..i].parse().expect("ascii digits"))));
                continue;
            }
            b't' => Token::T,
            b'l' if input[i..].starts_with("log") => {
                i += 3;
                out.push((start, Token::Log));
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            _ => {
                let ch = input[i..].chars().next().unwrap();
                return Err(error(start, format!("unexpected character `{ch}`")));
            }
        };
        i += 1;
        out.push((start, token));
    }
    out.push((input.len(), Token::End));
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn next(&mut self) -> (usize, Token) {
        let t = self.tokens[self.pos].clone();
        if t.1 != Token::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Token) -> Result<(), CasError> {
        let (at, got) = self.next();
        if got == want {
            Ok(())
        } else {
            Err(error(
                at,
                format!("expected {}, found {}", describe(&want), describe(&got)),
            ))
        }
    }

    fn expr(&mut self) -> Result<SymbolicElement, CasError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Token::Minus => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SymbolicElement, CasError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Token::Star => {
                    self.next();
                    acc = &acc * &self.unary()?;
                }
                Token::Slash => {
                    self.next();
                    let at = self.offset();
                    let divisor = self.unary()?;
                    if divisor.is_zero() {
                        return Err(error(at, "division by zero"));
                    }
                    let inv = divisor
                        .inverse()
                        .ok_or_else(|| error(at, "divisor must be a rational function or a single radical term"))?;
                    acc = &acc * &inv;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<SymbolicElement, CasError> {
        if *self.peek() == Token::Minus {
            self.next();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<SymbolicElement, CasError> {
        let base_at = self.offset();
        let base = self.atom()?;
        if *self.peek() != Token::Caret {
            return Ok(base);
        }
        self.next();
        let exp_at = self.offset();
        let exponent = self.exponent()?;
        if exponent.is_integer() {
            let k = exponent
                .to_integer()
                .to_i64()
                .filter(|k| k.unsigned_abs() <= 64)
                .ok_or_else(|| error(exp_at, "exponent too large"))?;
            let base = if k < 0 {
                if base.is_zero() {
                    return Err(error(base_at, "zero raised to a negative power"));
                }
                base.inverse()
                    .ok_or_else(|| error(base_at, "negative powers need a rational or single radical base"))?
            } else {
                base
            };
            return Ok(base.pow(k.unsigned_abs() as u32));
        }
        let c =
            linear_center(&base).ok_or_else(|| error(base_at, "fractional powers need a base of the form t - c"))?;
        Ok(SymbolicElement::radical(&c, &exponent))
    }

    fn exponent(&mut self) -> Result<Rational, CasError> {
        let parenthesized = *self.peek() == Token::LParen;
        if parenthesized {
            self.next();
        }
        let negative = *self.peek() == Token::Minus;
        if negative {
            self.next();
        }
        let num = self.integer()?;
        let mut value = Rational::from_integer(num);
        if parenthesized {
            if *self.peek() == Token::Slash {
                self.next();
                let at = self.offset();
                let den = self.integer()?;
                if den.is_zero() {
                    return Err(error(at, "zero denominator in exponent"));
                }
                value /= Rational::from_integer(den);
            }
            self.expect(Token::RParen)?;
        }
        Ok(if negative { -value } else { value })
    }

    fn integer(&mut self) -> Result<BigInt, CasError> {
        match self.next() {
            (_, Token::Int(n)) => Ok(n),
            (at, other) => Err(error(at, format!("expected an integer, found {}", describe(&other)))),
        }
    }

    fn atom(&mut self) -> Result<SymbolicElement, CasError> {
        match self.next() {
            (_, Token::Int(n)) => Ok(SymbolicElement::constant(Rational::from_integer(n))),
            (_, Token::T) => Ok(SymbolicElement::t()),
            (_, Token::Log) => {
                self.expect(Token::LParen)?;
                let at = self.offset();
                let arg = self.expr()?;
                self.expect(Token::RParen)?;
                let c = linear_center(&arg).ok_or_else(|| error(at, "log needs an argument of the form t - c"))?;
                Ok(SymbolicElement::log(&c, 1))
            }
            (_, Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            (at, other) => Err(error(at, format!("unexpected {}", describe(&other)))),
        }
    }
}

/// `c` when `e` is exactly the polynomial `t - c`.
fn linear_center(e: &SymbolicElement) -> Option<Rational> {
    let r = e.as_rational_function()?;
    if !r.is_polynomial() {
        return None;
    }
    r.numerator().as_monic_linear()
}

/// Parses one expression into a canonical element.
pub fn parse(input: &str) -> Result<SymbolicElement, CasError> {
    let mut parser = Parser {
        tokens: tokenize(input)?,
        pos: 0,
    };
    let e = parser.expr()?;
    match parser.next() {
        (_, Token::End) => Ok(e),
        (at, other) => Err(error(at, format!("unexpected {}", describe(&other)))),
    }
}
