//! Constant expressions: a small grammar for exact real constants.
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := factor (("*" | "/") factor)*
//! factor   := atom ("^" signed_rational)?
//! atom     := rational | "pi" | name | func "(" expr ")"
//!           | "root(" intlist "," selector ")" | "(" expr ")"
//! func     := "sqrt" | "sin" | "cos" | "sec"
//! intlist  := "[" int ("," int)* "]"          ascending-degree coefficients
//! selector := nonneg_int | "positive" | "smallest-positive"
//! ```
//!
//! Accepted beyond the core grammar: a leading unary minus on a factor,
//! decimal literals, a parenthesized exponent `x^(-1/3)` and implicit
//! multiplication after a numeric literal (`2pi`). A quotient of two integer
//! literals folds into a single rational literal.

use std::collections::HashMap;
use std::fmt;

use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::IntPolynomial;
use super::roots::real_roots;
use super::{BigReal, PrecisionContext};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Sqrt,
    Sin,
    Cos,
    Sec,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sqrt => "sqrt",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sec => "sec",
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "sqrt" => Func::Sqrt,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sec" => Func::Sec,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Which real root of a polynomial a `root(...)` node denotes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RootSelector {
    /// Index among the distinct real roots in ascending order.
    Index(usize),
    /// The unique positive root; an error if there are several.
    Positive,
    /// Smallest root above `10^(-target_digits)`.
    SmallestPositive,
}

impl fmt::Display for RootSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootSelector::Index(k) => write!(f, "{k}"),
            RootSelector::Positive => f.write_str("positive"),
            RootSelector::SmallestPositive => f.write_str("smallest-positive"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConstExpr {
    Num(Rational),
    Pi,
    Var(String),
    Neg(Box<ConstExpr>),
    Func(Func, Box<ConstExpr>),
    Bin(BinOp, Box<ConstExpr>, Box<ConstExpr>),
    Pow(Box<ConstExpr>, Rational),
    Root(IntPolynomial, RootSelector),
}

/// Values bound to the free names of an expression.
pub type Bindings = HashMap<String, BigReal>;

/// Parses a closed expression (no free names).
pub fn parse_expr(text: &str) -> Result<ConstExpr> {
    ConstExpr::parse_with_vars(text, &[])
}

impl ConstExpr {
    pub fn parse(text: &str) -> Result<ConstExpr> {
        parse_expr(text)
    }

    /// Parses an expression that may mention the listed free names.
    pub fn parse_with_vars(text: &str, vars: &[&str]) -> Result<ConstExpr> {
        let tokens = tokenize(text)?;
        let mut p = Parser {
            tokens,
            pos: 0,
            vars,
            end: text.len(),
        };
        let e = p.expr()?;
        if let Some(t) = p.peek() {
            return Err(Error::Syntax {
                pos: t.pos,
                msg: format!("unexpected {}", t.kind.describe()),
            });
        }
        Ok(e)
    }

    pub fn num(q: impl Into<Rational>) -> ConstExpr {
        ConstExpr::Num(q.into())
    }

    pub fn var(name: &str) -> ConstExpr {
        ConstExpr::Var(name.to_string())
    }

    pub fn root(poly: IntPolynomial, sel: RootSelector) -> ConstExpr {
        ConstExpr::Root(poly, sel)
    }

    fn bin(op: BinOp, a: ConstExpr, b: ConstExpr) -> ConstExpr {
        ConstExpr::Bin(op, Box::new(a), Box::new(b))
    }

    pub fn add(a: ConstExpr, b: ConstExpr) -> ConstExpr {
        Self::bin(BinOp::Add, a, b)
    }

    pub fn sub(a: ConstExpr, b: ConstExpr) -> ConstExpr {
        Self::bin(BinOp::Sub, a, b)
    }

    pub fn mul(a: ConstExpr, b: ConstExpr) -> ConstExpr {
        Self::bin(BinOp::Mul, a, b)
    }

    pub fn div(a: ConstExpr, b: ConstExpr) -> ConstExpr {
        Self::bin(BinOp::Div, a, b)
    }

    pub fn pow(a: ConstExpr, e: impl Into<Rational>) -> ConstExpr {
        ConstExpr::Pow(Box::new(a), e.into())
    }

    /// Replaces every occurrence of the free name `name` by `value`.
    pub fn substitute(&self, name: &str, value: &ConstExpr) -> ConstExpr {
        match self {
            ConstExpr::Var(v) if v == name => value.clone(),
            ConstExpr::Num(_) | ConstExpr::Pi | ConstExpr::Var(_) | ConstExpr::Root(..) => self.clone(),
            ConstExpr::Neg(e) => ConstExpr::Neg(Box::new(e.substitute(name, value))),
            ConstExpr::Func(f, e) => ConstExpr::Func(*f, Box::new(e.substitute(name, value))),
            ConstExpr::Bin(op, a, b) => ConstExpr::Bin(
                *op,
                Box::new(a.substitute(name, value)),
                Box::new(b.substitute(name, value)),
            ),
            ConstExpr::Pow(b, e) => ConstExpr::Pow(Box::new(b.substitute(name, value)), e.clone()),
        }
    }

    /// Free names, sorted and deduplicated.
    pub fn free_vars(&self) -> Vec<String> {
        fn walk(e: &ConstExpr, out: &mut Vec<String>) {
            match e {
                ConstExpr::Var(v) => out.push(v.clone()),
                ConstExpr::Neg(a) | ConstExpr::Func(_, a) | ConstExpr::Pow(a, _) => walk(a, out),
                ConstExpr::Bin(_, a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                _ => {}
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out.sort();
        out.dedup();
        out
    }

    pub fn eval(&self, ctx: &PrecisionContext) -> Result<BigReal> {
        self.eval_with(ctx, &Bindings::new())
    }

    pub fn eval_with(&self, ctx: &PrecisionContext, env: &Bindings) -> Result<BigReal> {
        let bits = ctx.working_bits();
        Ok(match self {
            ConstExpr::Num(q) => BigReal::with_val(bits, q),
            ConstExpr::Pi => ctx.pi(),
            ConstExpr::Var(v) => match env.get(v) {
                Some(x) => BigReal::with_val(bits, x),
                None => {
                    return Err(Error::UnknownIdentifier {
                        name: v.clone(),
                        pos: 0,
                    })
                }
            },
            ConstExpr::Neg(e) => -e.eval_with(ctx, env)?,
            ConstExpr::Func(f, e) => {
                let x = e.eval_with(ctx, env)?;
                match f {
                    Func::Sqrt => {
                        if x.is_sign_negative() && !x.is_zero() {
                            return Err(Error::Domain(format!(
                                "sqrt of negative value {}",
                                x.to_f64()
                            )));
                        }
                        x.sqrt()
                    }
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Sec => {
                        let c = x.cos();
                        if c.is_zero() {
                            return Err(Error::DivisionByZero);
                        }
                        c.recip()
                    }
                }
            }
            ConstExpr::Bin(op, a, b) => {
                let x = a.eval_with(ctx, env)?;
                let y = b.eval_with(ctx, env)?;
                match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => {
                        if y.is_zero() {
                            return Err(Error::DivisionByZero);
                        }
                        x / y
                    }
                }
            }
            ConstExpr::Pow(b, e) => {
                let x = b.eval_with(ctx, env)?;
                if e.denom() == &1u32 {
                    let k = e.numer().to_i32().ok_or_else(|| {
                        Error::Invalid(format!("exponent {e} too large"))
                    })?;
                    if x.is_zero() && k < 0 {
                        return Err(Error::DivisionByZero);
                    }
                    x.pow(k)
                } else {
                    if x.is_sign_negative() || x.is_zero() {
                        return Err(Error::NegativeBase);
                    }
                    // x^(p/q) = exp((p/q) ln x)
                    (x.ln() * BigReal::with_val(bits, e)).exp()
                }
            }
            ConstExpr::Root(poly, sel) => select_root(poly, sel, ctx)?,
        })
    }
}

fn select_root(poly: &IntPolynomial, sel: &RootSelector, ctx: &PrecisionContext) -> Result<BigReal> {
    let roots = real_roots(poly, ctx)?;
    match sel {
        RootSelector::Index(k) => roots.get(*k).map(|r| r.value.clone()).ok_or_else(|| {
            Error::RootSelector(format!("index {k} but only {} real roots", roots.len()))
        }),
        RootSelector::Positive => {
            let pos: Vec<_> = roots.iter().filter(|r| r.value.is_sign_positive() && !r.value.is_zero()).collect();
            match pos.as_slice() {
                [r] => Ok(r.value.clone()),
                [] => Err(Error::RootSelector("no positive real root".into())),
                _ => Err(Error::RootSelector(format!(
                    "{} positive real roots, selector `positive` is ambiguous",
                    pos.len()
                ))),
            }
        }
        RootSelector::SmallestPositive => {
            let tol = ctx.tolerance();
            roots
                .iter()
                .find(|r| r.value > tol)
                .map(|r| r.value.clone())
                .ok_or_else(|| Error::RootSelector("no positive real root".into()))
        }
    }
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational, bool),
    Ident(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(q, _) => format!("number `{q}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: Tok,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let kind = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '0'..='9' | '.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                let lit = &text[start..i];
                let q = parse_decimal(lit).ok_or_else(|| Error::Syntax {
                    pos: start,
                    msg: format!("malformed number `{lit}`"),
                })?;
                out.push(Token {
                    kind: Tok::Num(q, !lit.contains('.')),
                    pos: start,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token {
                    kind: Tok::Ident(text[start..i].to_string()),
                    pos: start,
                });
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push(Token { kind, pos: start });
        i += 1;
    }
    Ok(out)
}

fn parse_decimal(lit: &str) -> Option<Rational> {
    let (int, frac) = match lit.split_once('.') {
        Some((a, b)) => (a, b),
        None => (lit, ""),
    };
    if (int.is_empty() && frac.is_empty()) || frac.contains('.') {
        return None;
    }
    let digits = format!("{int}{frac}");
    let n: Integer = digits.parse().ok()?;
    let d = Integer::from(10).pow(frac.len() as u32);
    Some(Rational::from((n, d)))
}

// ---------------------------------------------------------------------------
// Parser

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a [&'a str],
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<&Tok> {
        self.peek().map(|t| &t.kind)
    }

    fn here(&self) -> usize {
        self.peek().map(|t| t.pos).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        match self.peek_kind() {
            Some(k) if *k == want => {
                self.pos += 1;
                Ok(())
            }
            Some(k) => Err(Error::Syntax {
                pos: self.here(),
                msg: format!("expected {}, found {}", want.describe(), k.describe()),
            }),
            None => Err(Error::Syntax {
                pos: self.end,
                msg: format!("expected {}, found end of input", want.describe()),
            }),
        }
    }

    fn expr(&mut self) -> Result<ConstExpr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek_kind() {
                Some(Tok::Plus) => BinOp::Add,
                Some(Tok::Minus) => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = ConstExpr::bin(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<ConstExpr> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek_kind() {
                Some(Tok::Star) => BinOp::Mul,
                Some(Tok::Slash) => BinOp::Div,
                // implicit product after a numeric literal: 2pi, 3sqrt(2), 2(x+1)
                Some(Tok::Ident(_)) | Some(Tok::LParen)
                    if matches!(lhs, ConstExpr::Num(_)) && self.prev_is_number() =>
                {
                    let rhs = self.factor()?;
                    lhs = ConstExpr::mul(lhs, rhs);
                    continue;
                }
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = match (op, lhs, rhs) {
                (BinOp::Div, ConstExpr::Num(a), ConstExpr::Num(b))
                    if a.denom() == &1u32 && b.denom() == &1u32 && !b.is_zero() =>
                {
                    ConstExpr::Num(a / b)
                }
                (op, a, b) => ConstExpr::bin(op, a, b),
            };
        }
    }

    fn prev_is_number(&self) -> bool {
        self.pos > 0 && matches!(self.tokens[self.pos - 1].kind, Tok::Num(..))
    }

    fn factor(&mut self) -> Result<ConstExpr> {
        if let Some(Tok::Minus) = self.peek_kind() {
            self.pos += 1;
            let inner = self.factor()?;
            return Ok(match inner {
                ConstExpr::Num(q) => ConstExpr::Num(-q),
                other => ConstExpr::Neg(Box::new(other)),
            });
        }
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek_kind() {
            self.pos += 1;
            let e = self.exponent()?;
            return Ok(ConstExpr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<Rational> {
        if let Some(Tok::LParen) = self.peek_kind() {
            self.pos += 1;
            let e = self.signed_rational()?;
            self.expect(Tok::RParen)?;
            return Ok(e);
        }
        self.signed_rational()
    }

    fn signed_rational(&mut self) -> Result<Rational> {
        let neg = if let Some(Tok::Minus) = self.peek_kind() {
            self.pos += 1;
            true
        } else {
            false
        };
        let num = self.integer()?;
        let mut q = Rational::from(num);
        // greedy `/int`
        if let (Some(Tok::Slash), Some(Tok::Num(_, true))) = (
            self.peek_kind(),
            self.tokens.get(self.pos + 1).map(|t| &t.kind),
        ) {
            self.pos += 1;
            let den = self.integer()?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            q /= den;
        }
        Ok(if neg { -q } else { q })
    }

    fn integer(&mut self) -> Result<Integer> {
        let pos = self.here();
        match self.bump().map(|t| t.kind) {
            Some(Tok::Num(q, true)) => Ok(q.into_numer_denom().0),
            Some(k) => Err(Error::Syntax {
                pos,
                msg: format!("expected integer, found {}", k.describe()),
            }),
            None => Err(Error::Syntax {
                pos,
                msg: "expected integer, found end of input".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<ConstExpr> {
        let pos = self.here();
        let tok = self.bump().ok_or(Error::Syntax {
            pos,
            msg: "unexpected end of input".into(),
        })?;
        match tok.kind {
            Tok::Num(q, _) => Ok(ConstExpr::Num(q)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if name == "pi" {
                    return Ok(ConstExpr::Pi);
                }
                if let Some(f) = Func::from_name(&name) {
                    self.expect(Tok::LParen)?;
                    let e = self.expr()?;
                    self.expect(Tok::RParen)?;
                    return Ok(ConstExpr::Func(f, Box::new(e)));
                }
                if name == "root" {
                    return self.root_args();
                }
                if self.vars.contains(&name.as_str()) {
                    return Ok(ConstExpr::Var(name));
                }
                Err(Error::UnknownIdentifier { name, pos: tok.pos })
            }
            other => Err(Error::Syntax {
                pos: tok.pos,
                msg: format!("unexpected {}", other.describe()),
            }),
        }
    }

    fn root_args(&mut self) -> Result<ConstExpr> {
        self.expect(Tok::LParen)?;
        self.expect(Tok::LBracket)?;
        let mut coeffs = Vec::new();
        loop {
            let neg = if let Some(Tok::Minus) = self.peek_kind() {
                self.pos += 1;
                true
            } else {
                false
            };
            let c = self.integer()?;
            coeffs.push(if neg { -c } else { c });
            match self.peek_kind() {
                Some(Tok::Comma) => self.pos += 1,
                _ => break,
            }
        }
        self.expect(Tok::RBracket)?;
        self.expect(Tok::Comma)?;
        let pos = self.here();
        let sel = match self.bump().map(|t| t.kind) {
            Some(Tok::Num(q, true)) => {
                let k = q.numer().to_usize().ok_or_else(|| Error::Syntax {
                    pos,
                    msg: "root index too large".into(),
                })?;
                RootSelector::Index(k)
            }
            Some(Tok::Ident(s)) if s == "positive" => RootSelector::Positive,
            Some(Tok::Ident(s)) if s == "smallest" => {
                self.expect(Tok::Minus)?;
                match self.bump().map(|t| t.kind) {
                    Some(Tok::Ident(p)) if p == "positive" => RootSelector::SmallestPositive,
                    _ => {
                        return Err(Error::Syntax {
                            pos,
                            msg: "expected `smallest-positive`".into(),
                        })
                    }
                }
            }
            _ => {
                return Err(Error::Syntax {
                    pos,
                    msg: "expected root selector (index, `positive` or `smallest-positive`)".into(),
                })
            }
        };
        self.expect(Tok::RParen)?;
        let poly = IntPolynomial::new(coeffs);
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(ConstExpr::Root(poly, sel))
    }
}

// ---------------------------------------------------------------------------
// Printer

const PREC_SUM: u8 = 1;
const PREC_PRODUCT: u8 = 2;
const PREC_UNARY: u8 = 3;
const PREC_ATOM: u8 = 5;

struct Printed {
    text: String,
    prec: u8,
    // text ends in an integer exponent, so a following `/digit` would be
    // swallowed into the exponent when re-parsed
    ends_in_exponent: bool,
}

fn wrap(p: Printed, min: u8) -> Printed {
    if p.prec >= min {
        p
    } else {
        Printed {
            text: format!("({})", p.text),
            prec: PREC_ATOM,
            ends_in_exponent: false,
        }
    }
}

// integer literal quotients are folded by the parser
fn folds(a: &ConstExpr, b: &ConstExpr) -> bool {
    matches!((a, b), (ConstExpr::Num(x), ConstExpr::Num(y))
        if x.denom() == &1u32 && y.denom() == &1u32 && !y.is_zero())
}

fn print(e: &ConstExpr) -> Printed {
    let atom = |text: String| Printed {
        text,
        prec: PREC_ATOM,
        ends_in_exponent: false,
    };
    match e {
        ConstExpr::Num(q) => {
            if q.denom() == &1u32 && !q.is_negative() {
                atom(q.to_string())
            } else {
                atom(format!("({q})"))
            }
        }
        ConstExpr::Pi => atom("pi".into()),
        ConstExpr::Var(v) => atom(v.clone()),
        ConstExpr::Func(f, a) => atom(format!("{}({})", f.name(), print(a).text)),
        ConstExpr::Root(p, sel) => {
            let cs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
            atom(format!("root([{}], {sel})", cs.join(", ")))
        }
        ConstExpr::Neg(a) if matches!(**a, ConstExpr::Num(_)) => {
            let ConstExpr::Num(q) = &**a else { unreachable!() };
            print(&ConstExpr::Num(Rational::from(-q)))
        }
        ConstExpr::Bin(BinOp::Div, a, b) if folds(a, b) => {
            let (ConstExpr::Num(x), ConstExpr::Num(y)) = (&**a, &**b) else { unreachable!() };
            print(&ConstExpr::Num(Rational::from(x / y)))
        }
        ConstExpr::Neg(a) => {
            let inner = wrap(print(a), PREC_UNARY);
            Printed {
                ends_in_exponent: inner.ends_in_exponent,
                text: format!("-{}", inner.text),
                prec: PREC_UNARY,
            }
        }
        ConstExpr::Pow(b, q) => {
            let base = wrap(print(b), PREC_ATOM);
            let (exp, int) = if q.denom() == &1u32 {
                (q.to_string(), true)
            } else {
                (format!("({q})"), false)
            };
            Printed {
                text: format!("{}^{exp}", base.text),
                prec: PREC_UNARY + 1,
                ends_in_exponent: int,
            }
        }
        ConstExpr::Bin(op, a, b) => {
            let (prec, sym) = match op {
                BinOp::Add => (PREC_SUM, "+"),
                BinOp::Sub => (PREC_SUM, "-"),
                BinOp::Mul => (PREC_PRODUCT, "*"),
                BinOp::Div => (PREC_PRODUCT, "/"),
            };
            let mut lhs = wrap(print(a), prec);
            let rhs = wrap(print(b), prec + 1);
            if *op == BinOp::Div
                && lhs.ends_in_exponent
                && rhs.text.starts_with(|c: char| c.is_ascii_digit())
            {
                lhs = Printed {
                    text: format!("({})", lhs.text),
                    prec: PREC_ATOM,
                    ends_in_exponent: false,
                };
            }
            let spaced = matches!(op, BinOp::Add | BinOp::Sub);
            let text = if spaced {
                format!("{} {sym} {}", lhs.text, rhs.text)
            } else {
                format!("{}{sym}{}", lhs.text, rhs.text)
            };
            Printed {
                text,
                prec,
                ends_in_exponent: rhs.ends_in_exponent,
            }
        }
    }
}

impl fmt::Display for ConstExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self).text)
    }
}

impl Serialize for ConstExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ConstExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_expr(&s).map_err(serde::de::Error::custom)
    }
}
