//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' INTEGER)?
//! atom   := INTEGER | IDENT | '(' expr ')'
//! ```
//!
//! `^` binds tightest, so `-x^2` is `-(x^2)`.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u128),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

impl Lexer {
    fn new(src: &str, line: usize, col0: usize) -> Result<Self> {
        let chars: Vec<char> = src.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = col0 + i;
            if c.is_whitespace() {
                i += 1;
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
            if let Some(t) = single {
                toks.push((t, col));
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let v = text.parse::<u128>().map_err(|_| Error::Parse {
                    line,
                    column: col,
                    message: format!("integer literal `{text}` is too large"),
                })?;
                toks.push((Tok::Int(v), col));
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            } else {
                return Err(Error::Parse {
                    line,
                    column: col,
                    message: format!("unexpected character `{c}`"),
                });
            }
        }
        toks.push((Tok::End, col0 + chars.len()));
        Ok(Lexer { toks })
    }
}

struct Parser<'a> {
    ring: &'a Ring,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: self.line,
            column: self.col(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let f = self.unary()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            match self.bump() {
                Tok::Int(k) if k <= u32::MAX as u128 => Ok(base.pow(k as u64)),
                Tok::Int(_) => {
                    self.pos -= 1;
                    self.error("exponent too large")
                }
                _ => {
                    self.pos -= 1;
                    self.error("expected a non-negative integer exponent after `^`")
                }
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let col = self.col();
        match self.bump() {
            Tok::Int(v) => {
                let c = (v % self.ring.p() as u128) as i64;
                Ok(Polynomial::constant(self.ring, c))
            }
            Tok::Ident(name) => match self.ring.var_index(&name) {
                Some(i) => Ok(Polynomial::var(self.ring, i)),
                None => Err(Error::UnknownVariable {
                    name,
                    line: self.line,
                    column: col,
                }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.error("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => {
                self.pos = self.toks.len() - 1;
                self.error("unexpected end of expression")
            }
            t => {
                self.pos -= 1;
                self.error(format!("unexpected token {t:?}"))
            }
        }
    }
}

/// Parse an expression in `ring`.
pub fn parse_polynomial(ring: &Ring, src: &str) -> Result<Polynomial> {
    parse_polynomial_at(ring, src, 1, 1)
}

/// Parse with error positions offset to `line`/`column` of an enclosing file.
pub fn parse_polynomial_at(
    ring: &Ring,
    src: &str,
    line: usize,
    column: usize,
) -> Result<Polynomial> {
    let lexer = Lexer::new(src, line, column)?;
    let mut p = Parser {
        ring,
        toks: lexer.toks,
        pos: 0,
        line,
    };
    if *p.peek() == Tok::End {
        return p.error("empty expression");
    }
    let f = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error("trailing input");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{MonomialOrder, RingDescriptor};

    fn ring() -> Ring {
        RingDescriptor::with_vars(3, &["x", "y", "z", "w"], MonomialOrder::GrevLex).unwrap()
    }

    #[test]
    fn precedence() {
        let r = ring();
        let a = parse_polynomial(&r, "-x^2").unwrap();
        assert_eq!(a.to_string(), "-x^2");
        let b = parse_polynomial(&r, "2*x^2 - y*z + 1").unwrap();
        assert_eq!(b.to_string(), "-x^2-y*z+1");
        let c = parse_polynomial(&r, "(x+y)^3").unwrap();
        assert_eq!(c.to_string(), "x^3+y^3");
    }

    #[test]
    fn example_u_expands_as_printed() {
        let r = ring();
        let u = parse_polynomial(&r, "(x^2 - y*z)^2 * w^2 * x * (x+1)").unwrap();
        let printed = parse_polynomial(
            &r,
            "x^6*w^2 + x^4*y*z*w^2 + x^2*y^2*z^2*w^2 + x^5*w^2 + x^3*y*z*w^2 + x*y^2*z^2*w^2",
        )
        .unwrap();
        assert_eq!(u, printed);
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring();
        match parse_polynomial(&r, "x + q") {
            Err(Error::UnknownVariable { name, column, .. }) => {
                assert_eq!(name, "q");
                assert_eq!(column, 5);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_polynomial(&r, "x +"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_polynomial(&r, "x^y"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_polynomial(&r, "(x"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_polynomial(&r, "x $ y"),
            Err(Error::Parse { column: 3, .. })
        ));
        assert!(matches!(parse_polynomial(&r, ""), Err(Error::Parse { .. })));
    }
}
