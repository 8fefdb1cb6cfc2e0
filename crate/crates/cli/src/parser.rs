//! Recursive-descent parser for polynomial expressions in x and y with
//! exact rational coefficients.
//!
//! Grammar: `+ - *` with implicit multiplication by juxtaposition ("4xy"),
//! `^` with nonnegative integer exponents binding tightest, unary minus,
//! parentheses, and rational literals `a/b`. Errors carry line and column.

use folinv::algebra::{FieldElement, Poly2, Rat, Var, Vars};
use num_bigint::BigInt;

#[derive(Debug, thiserror::Error)]
#[error("parse error at {line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(Var),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, co) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            chars.next();
            col += 1;
        };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => bump(&mut chars),
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Int(digits.parse().unwrap()),
                    line: l,
                    col: co,
                });
            }
            'x' => {
                bump(&mut chars);
                out.push(Spanned {
                    tok: Tok::Var(Var::X),
                    line: l,
                    col: co,
                });
            }
            'y' => {
                bump(&mut chars);
                out.push(Spanned {
                    tok: Tok::Var(Var::Y),
                    line: l,
                    col: co,
                });
            }
            '+' | '-' | '*' | '^' | '/' | '(' | ')' => {
                bump(&mut chars);
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '/' => Tok::Slash,
                    '(' => Tok::LParen,
                    _ => Tok::RParen,
                };
                out.push(Spanned { tok, line: l, col: co });
            }
            c if c.is_alphabetic() => {
                return Err(ParseError {
                    line: l,
                    col: co,
                    msg: format!("unknown variable '{c}' (only x and y are allowed)"),
                })
            }
            c => {
                return Err(ParseError {
                    line: l,
                    col: co,
                    msg: format!("unexpected character '{c}'"),
                })
            }
        }
    }
    Ok(out)
}

/// Abstract syntax of a polynomial expression.
#[derive(Clone, Debug)]
pub enum Expr {
    Rational(Rat),
    Variable(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn eval(&self, vars: &Vars) -> Poly2 {
        match self {
            Expr::Rational(r) => Poly2::constant(vars.clone(), FieldElement::from_rat(r.clone())),
            Expr::Variable(v) => Poly2::var(vars.clone(), *v),
            Expr::Neg(e) => e.eval(vars).neg(),
            Expr::Add(a, b) => a.eval(vars).add(&b.eval(vars)),
            Expr::Sub(a, b) => a.eval(vars).sub(&b.eval(vars)),
            Expr::Mul(a, b) => a.eval(vars).mul(&b.eval(vars)),
            Expr::Pow(e, k) => e.eval(vars).pow(*k),
        }
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos.min(self.toks.len().saturating_sub(1)))
            .map(|s| (s.line, s.col))
            .unwrap_or((1, 1))
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                // implicit multiplication by juxtaposition
                Some(Tok::Int(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => {
                    return Err(self.err("'/' must sit between integer literals"))
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.primary()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.next();
            match self.next() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| self.err("exponent too large"))?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return Err(self.err("exponent must be a nonnegative integer")),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.next() {
            Some(Tok::Int(n)) => {
                // rational literal a/b
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.next();
                    match self.next() {
                        Some(Tok::Int(d)) => {
                            if d == BigInt::from(0) {
                                return Err(self.err("zero denominator"));
                            }
                            Ok(Expr::Rational(Rat::new(n, d)))
                        }
                        _ => Err(self.err("'/' must sit between integer literals")),
                    }
                } else {
                    Ok(Expr::Rational(Rat::from_integer(n)))
                }
            }
            Some(Tok::Var(v)) => Ok(Expr::Variable(v)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(self.err("expected ')'")),
                }
            }
            Some(Tok::Slash) => Err(self.err("'/' must sit between integer literals")),
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parse an expression into an exact bivariate polynomial over the
/// rationals.
pub fn parse_poly(text: &str) -> Result<Poly2, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ParseError {
            line: 1,
            col: 1,
            msg: "empty expression".into(),
        });
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e.eval(&Vars::xy()))
}

/// Canonical text form of a polynomial (inverse of `parse_poly` on
/// canonical forms).
pub fn render_poly(p: &Poly2) -> String {
    format!("{p}")
}
