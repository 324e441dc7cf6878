//! Polynomial expression syntax.
//!
//! ```text
//! expr     := ['+' | '-'] term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' nat)?
//! base     := rational | var | '(' expr ')'
//! rational := int ('/' nat)?
//! ```
//!
//! Multiplication is always explicit: `xy` is a single identifier. The printer
//! emits terms in descending grevlex order with explicit `*` and `^`, and its
//! output parses back to the same polynomial.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::{cmp_grevlex, Monomial, Polynomial, Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    UnexpectedToken { expected: String, found: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("malformed rational `{0}`")]
    MalformedRational(String),
    #[error("exponent `{0}` is too large")]
    ExponentTooLarge(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(s) => write!(f, "number `{s}`"),
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = src.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (l, c) = (line, column);
        let mut advance = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let ch = chars.next().unwrap();
            if ch == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            ch
        };
        let tok = match ch {
            _ if ch.is_whitespace() => {
                advance(&mut chars);
                continue;
            }
            '0'..='9' => {
                let mut s = String::new();
                while chars.peek().is_some_and(char::is_ascii_digit) {
                    s.push(advance(&mut chars));
                }
                Tok::Int(s)
            }
            _ if ch.is_ascii_alphabetic() || ch == '_' => {
                let mut s = String::new();
                while chars
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
                {
                    s.push(advance(&mut chars));
                }
                Tok::Ident(s)
            }
            _ => {
                advance(&mut chars);
                match ch {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    other => {
                        return Err(ParseError {
                            kind: ParseErrorKind::UnexpectedChar(other),
                            line: l,
                            column: c,
                        })
                    }
                }
            }
        };
        out.push(Spanned {
            tok,
            line: l,
            column: c,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> &Spanned {
        let t = &self.toks[self.pos];
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError {
            kind,
            line: t.line,
            column: t.column,
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        self.error_here(ParseErrorKind::UnexpectedToken {
            expected: expected.to_string(),
            found: self.peek().to_string(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let negate = match self.peek() {
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
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let start = self.pos;
            let rhs = self.factor()?;
            acc = acc.checked_mul(&rhs).map_err(|_| {
                let t = &self.toks[start];
                ParseError {
                    kind: ParseErrorKind::ExponentTooLarge("product".into()),
                    line: t.line,
                    column: t.column,
                }
            })?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let Tok::Int(digits) = self.peek().clone() else {
            return Err(self.unexpected("a natural-number exponent"));
        };
        let too_large = self.error_here(ParseErrorKind::ExponentTooLarge(digits.clone()));
        self.bump();
        let e: u32 = digits.parse().map_err(|_| too_large.clone())?;
        base.checked_pow(e).map_err(|_| too_large)
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().clone() {
            Tok::Int(num) => {
                let at = self.error_here(ParseErrorKind::MalformedRational(num.clone()));
                self.bump();
                let n: BigInt = num.parse().expect("lexer yields digits");
                let value = if *self.peek() == Tok::Slash {
                    self.bump();
                    let Tok::Int(den) = self.peek().clone() else {
                        return Err(self.unexpected("a denominator"));
                    };
                    self.bump();
                    let d: BigInt = den.parse().expect("lexer yields digits");
                    if d.is_zero() {
                        return Err(ParseError {
                            kind: ParseErrorKind::MalformedRational(format!("{num}/{den}")),
                            ..at
                        });
                    }
                    Rational::new(n, d)
                } else {
                    Rational::from_integer(n)
                };
                Ok(Polynomial::constant(self.ring, value))
            }
            Tok::Ident(name) => match self.ring.index_of(&name) {
                Some(i) => {
                    self.bump();
                    Ok(self.ring.var(i))
                }
                None => Err(self.error_here(ParseErrorKind::UnknownVariable(name))),
            },
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, variable or `(`")),
        }
    }
}

/// Parses `src` as a polynomial over `ring`.
pub fn parse_polynomial(src: &str, ring: &Ring) -> Result<Polynomial, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, ring };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(out)
}

/// Parses `[+|-] int ['/' nat]`, the literal form used for points and grid
/// bounds.
pub fn parse_rational(src: &str) -> Result<Rational, ParseError> {
    let malformed = |column| ParseError {
        kind: ParseErrorKind::MalformedRational(src.to_string()),
        line: 1,
        column,
    };
    let trimmed = src.trim();
    let (neg, body) = match trimmed.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, trimmed.strip_prefix('+').unwrap_or(trimmed)),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (body.trim(), None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || den.is_some_and(|d| !digits(d)) {
        return Err(malformed(1));
    }
    let n: BigInt = num.parse().expect("digits");
    let d: BigInt = den.map_or_else(BigInt::one, |d| d.parse().expect("digits"));
    if d.is_zero() {
        return Err(malformed(1));
    }
    let r = Rational::new(n, d);
    Ok(if neg { -r } else { r })
}

pub fn format_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn format_monomial(ring: &Ring, m: &Monomial, front: Option<usize>) -> String {
    let e = m.exponents();
    front
        .into_iter()
        .chain((0..e.len()).filter(|&i| Some(i) != front))
        .map(|i| (i, e[i]))
        .filter(|(_, e)| *e > 0)
        .map(|(i, e)| {
            if e == 1 {
                ring.name(i).to_string()
            } else {
                format!("{}^{e}", ring.name(i))
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn format_terms<'a>(
    ring: &Ring,
    terms: impl Iterator<Item = (&'a Monomial, &'a Rational)>,
    front: Option<usize>,
) -> String {
    let mut out = String::new();
    for (k, (m, c)) in terms.enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        if m.is_one() {
            out.push_str(&format_rational(&abs));
        } else if abs.is_one() {
            out.push_str(&format_monomial(ring, m, front));
        } else {
            out.push_str(&format_rational(&abs));
            out.push('*');
            out.push_str(&format_monomial(ring, m, front));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Canonical text form: terms in descending grevlex order.
pub fn format_polynomial(p: &Polynomial) -> String {
    format_terms(p.ring(), p.terms().rev(), None)
}

/// Text form grouped by ascending powers of the variable `param`, each group
/// in descending grevlex order, with `param` written first inside each
/// monomial. Used for action components, where it shows
/// the expansion `x + t*D(x) + t^2*D^2(x)/2 + ..`.
pub fn format_in_parameter(p: &Polynomial, param: usize) -> String {
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|(a, _), (b, _)| {
        let (ea, eb) = (a.exponents()[param], b.exponents()[param]);
        match ea.cmp(&eb) {
            Ordering::Equal => cmp_grevlex(b.exponents(), a.exponents()),
            o => o,
        }
    });
    format_terms(p.ring(), terms.into_iter(), Some(param))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{ratio, rational};

    fn ring(names: &[&str]) -> Ring {
        Ring::new(names.iter().copied()).unwrap()
    }

    #[test]
    fn parses_example_components() {
        let r = ring(&["x", "y", "z"]);
        let f1 = parse_polynomial("1 + x*z", &r).unwrap();
        assert_eq!(f1, &Polynomial::one(&r) + &(&r.var(0) * &r.var(2)));
        let r4 = ring(&["x", "y", "u", "v"]);
        let inv = parse_polynomial("x*u + y*v", &r4).unwrap();
        assert_eq!(inv, &(&r4.var(0) * &r4.var(2)) + &(&r4.var(1) * &r4.var(3)));
    }

    #[test]
    fn parses_rational_coefficients() {
        let r = ring(&["x", "y"]);
        let p = parse_polynomial("-3/2*x^2*y + x - 7", &r).unwrap();
        assert_eq!(p.num_terms(), 3);
        let x2y = Monomial::from_exponents(vec![2, 1]);
        assert_eq!(p.coefficient(&x2y), ratio(-3, 2));
        assert_eq!(p.coefficient(&Monomial::one(2)), rational(-7));
        assert_eq!(format_polynomial(&p), "-3/2*x^2*y + x - 7");
    }

    #[test]
    fn formats_canonically() {
        let r = ring(&["x", "y"]);
        assert_eq!(format_polynomial(&Polynomial::zero(&r)), "0");
        let p = parse_polynomial("(x+y)*(x-y)", &r).unwrap();
        assert_eq!(format_polynomial(&p), "x^2 - y^2");
        let p = parse_polynomial("4/6 - (y)", &r).unwrap();
        assert_eq!(format_polynomial(&p), "-y + 2/3");
    }

    #[test]
    fn parameter_grouping() {
        let r = ring(&["x", "y", "u", "v", "t"]);
        let p = parse_polynomial("u + t*y", &r).unwrap();
        assert_eq!(format_polynomial(&p), "y*t + u");
        assert_eq!(format_in_parameter(&p, 4), "u + t*y");
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("-3/6").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), rational(7));
        assert_eq!(parse_rational("+0").unwrap(), rational(0));
        for bad in ["", "1/0", "x", "1.5", "--1", "1/-2"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
        assert_eq!(format_rational(&ratio(-4, 6)), "-2/3");
    }

    #[test]
    fn error_positions() {
        let r = ring(&["x", "y"]);
        let e = parse_polynomial("x +\n  xy", &r).unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable("xy".into()));

        let e = parse_polynomial("x ** y", &r).unwrap_err();
        assert_eq!((e.line, e.column), (1, 4));

        let e = parse_polynomial("3/0*x", &r).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::MalformedRational(_)));
        assert_eq!((e.line, e.column), (1, 1));

        let e = parse_polynomial("x $ y", &r).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedChar('$'));

        assert!(parse_polynomial("(x + y", &r).is_err());
        assert!(parse_polynomial("x y", &r).is_err());
        assert!(parse_polynomial("x^-1", &r).is_err());
        assert!(parse_polynomial("", &r).is_err());
        assert!(parse_polynomial("x^99999999999", &r).is_err());
    }
}
