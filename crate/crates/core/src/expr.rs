//! A small expression language over WQSym, its truncated series and QSym.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '@' | '&' | '/') unary)*
//! unary   := '-' unary | atom
//! atom    := number | '(' expr ')' | literal
//! literal := M[..] | S[..] | R[..] | hatS[..] | hatR[..] | Q[..]
//!          | I | Psi(k) | e(i) | sigma(r)
//! ```
//!
//! `*` is the outer product (or the product of QSym), `@` the internal
//! product (or the right action of WQSym on QSym), `&` the bullet product
//! and `/` division by a scalar. Series literals are truncated at the
//! cutoff of the [`Context`].

use std::fmt;

use crate::charseries::{adams, eulerian_idempotent, identity_series, sigma_hat, TruncatedSeries};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::packedword::{Composition, PackedWord};
use crate::qsym::QSymElement;
use crate::rational::{self, Rational};
use crate::wqsym::{embed_sym_hat, embed_sym_standard, ribbon_hat, ribbon_standard, WQSymElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Outer,
    Internal,
    Bullet,
    Div,
}

impl BinOp {
    fn glyph(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Outer => "*",
            BinOp::Internal => "@",
            BinOp::Bullet => "&",
            BinOp::Div => "/",
        }
    }
}

/// Literal constructors; each carries its basis tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Literal {
    Scalar(Rational),
    M(Vec<u32>),
    S(Vec<u32>),
    R(Vec<u32>),
    HatS(Vec<u32>),
    HatR(Vec<u32>),
    Q(Vec<u32>),
    Identity,
    Psi(usize),
    Eulerian(usize),
    Sigma(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expression {
    Lit(Literal),
    Neg(Box<Expression>),
    Bin(BinOp, Box<Expression>, Box<Expression>),
}

fn fmt_list(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("[{}]", parts.join(","))
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expression::Lit(l) => match l {
                Literal::Scalar(r) => write!(f, "{}", rational::display(r)),
                Literal::M(v) => write!(f, "M{}", fmt_list(v)),
                Literal::S(v) => write!(f, "S{}", fmt_list(v)),
                Literal::R(v) => write!(f, "R{}", fmt_list(v)),
                Literal::HatS(v) => write!(f, "hatS{}", fmt_list(v)),
                Literal::HatR(v) => write!(f, "hatR{}", fmt_list(v)),
                Literal::Q(v) => write!(f, "Q{}", fmt_list(v)),
                Literal::Identity => write!(f, "I"),
                Literal::Psi(k) => write!(f, "Psi({k})"),
                Literal::Eulerian(i) => write!(f, "e({i})"),
                Literal::Sigma(t) => write!(f, "sigma({})", rational::display(t)),
            },
            Expression::Neg(e) => write!(f, "-({e})"),
            Expression::Bin(op, a, b) => write!(f, "({a} {} {b})", op.glyph()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Num(String),
    Ident(String),
    List(Vec<u32>),
    Op(char),
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        match ch {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token::Num(chars[start..i].iter().collect()));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            '[' => {
                let close = chars[i..]
                    .iter()
                    .position(|&c| c == ']')
                    .ok_or_else(|| Error::Parse(format!("unclosed '[' at offset {i}")))?;
                let body: String = chars[i + 1..i + close].iter().collect();
                let mut list = Vec::new();
                for part in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                    list.push(part.parse::<u32>().map_err(|_| Error::Parse(format!("bad list entry {part:?}")))?);
                }
                // `[13132]` is accepted as shorthand for single-digit letters
                if list.len() == 1 && !body.contains(',') && body.trim().len() > 1 {
                    list = body.trim().chars().map(|c| c.to_digit(10).unwrap_or(0)).collect();
                }
                out.push(Token::List(list));
                i += close + 1;
            }
            '+' | '-' | '*' | '@' | '&' | '/' => {
                out.push(Token::Op(ch));
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            _ => return Err(Error::Parse(format!("unexpected character {ch:?} at offset {i}"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Token) -> Result<()> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(Error::Parse(format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Expression> {
        let mut lhs = self.term()?;
        while let Some(Token::Op(c @ ('+' | '-'))) = self.peek() {
            let op = if *c == '+' { BinOp::Add } else { BinOp::Sub };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expression::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expression> {
        let mut lhs = self.unary()?;
        while let Some(Token::Op(c @ ('*' | '@' | '&' | '/'))) = self.peek() {
            let op = match c {
                '*' => BinOp::Outer,
                '@' => BinOp::Internal,
                '&' => BinOp::Bullet,
                _ => BinOp::Div,
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expression::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expression> {
        if let Some(Token::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(Expression::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn integer_arg(&mut self) -> Result<usize> {
        self.expect(Token::LParen)?;
        let n = match self.next() {
            Some(Token::Num(s)) => s.parse().map_err(|_| Error::Parse(format!("integer too large: {s}")))?,
            t => return Err(Error::Parse(format!("expected integer argument, found {t:?}"))),
        };
        self.expect(Token::RParen)?;
        Ok(n)
    }

    fn rational_arg(&mut self) -> Result<Rational> {
        self.expect(Token::LParen)?;
        let neg = matches!(self.peek(), Some(Token::Op('-')));
        if neg {
            self.pos += 1;
        }
        let mut text = match self.next() {
            Some(Token::Num(s)) => s,
            t => return Err(Error::Parse(format!("expected rational argument, found {t:?}"))),
        };
        if let Some(Token::Op('/')) = self.peek() {
            self.pos += 1;
            match self.next() {
                Some(Token::Num(s)) => text = format!("{text}/{s}"),
                t => return Err(Error::Parse(format!("expected denominator, found {t:?}"))),
            }
        }
        self.expect(Token::RParen)?;
        let r = rational::parse(&text)?;
        Ok(if neg { -r } else { r })
    }

    fn atom(&mut self) -> Result<Expression> {
        let lit = match self.next() {
            Some(Token::Num(s)) => Literal::Scalar(rational::parse(&s)?),
            Some(Token::LParen) => {
                let e = self.expr()?;
                self.expect(Token::RParen)?;
                return Ok(e);
            }
            Some(Token::Ident(name)) => match name.as_str() {
                "I" => Literal::Identity,
                "Psi" => Literal::Psi(self.integer_arg()?),
                "e" => Literal::Eulerian(self.integer_arg()?),
                "sigma" => Literal::Sigma(self.rational_arg()?),
                "M" | "S" | "R" | "hatS" | "hatR" | "Q" => {
                    let list = match self.next() {
                        Some(Token::List(l)) => l,
                        t => return Err(Error::Parse(format!("expected '[...]' after {name}, found {t:?}"))),
                    };
                    match name.as_str() {
                        "M" => Literal::M(list),
                        "S" => Literal::S(list),
                        "R" => Literal::R(list),
                        "hatS" => Literal::HatS(list),
                        "hatR" => Literal::HatR(list),
                        _ => Literal::Q(list),
                    }
                }
                _ => return Err(Error::Parse(format!("unknown identifier {name:?}"))),
            },
            t => return Err(Error::Parse(format!("unexpected token {t:?}"))),
        };
        Ok(Expression::Lit(lit))
    }
}

/// Parses an expression.
pub fn parse(src: &str) -> Result<Expression> {
    let mut p = Parser { tokens: tokenize(src)?, pos: 0 };
    if p.tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input starting at {:?}", p.tokens[p.pos])));
    }
    Ok(e)
}

/// Evaluation result, tagged by basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Scalar(Rational),
    WQSym(WQSymElement),
    Series(TruncatedSeries),
    QSym(QSymElement),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::WQSym(_) => "WQSym-M",
            Value::Series(_) => "series",
            Value::QSym(_) => "QSym-M",
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        match self {
            Value::Scalar(r) => WQSymElement::scalar(r.clone()).to_json_value(),
            Value::WQSym(f) => f.to_json_value(),
            Value::Series(s) => s.to_json_value(),
            Value::QSym(f) => f.to_json_value(),
        }
    }

    /// Reads any of the element or series schemas.
    pub fn from_json(s: &str) -> Result<Value> {
        let v: serde_json::Value = serde_json::from_str(s)?;
        if v.get("cutoff").is_some() {
            return Ok(Value::Series(TruncatedSeries::from_json_value(&v)?));
        }
        match v.get("basis").and_then(serde_json::Value::as_str) {
            Some("QSym-M") => Ok(Value::QSym(QSymElement::from_json_value(&v)?)),
            _ => Ok(Value::WQSym(WQSymElement::from_json_value(&v)?)),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(r) => write!(f, "{}", rational::display(r)),
            Value::WQSym(e) => write!(f, "{e}"),
            Value::Series(s) => write!(f, "{s}"),
            Value::QSym(e) => write!(f, "{e}"),
        }
    }
}

/// Evaluation settings.
#[derive(Debug, Clone, Copy)]
pub struct Context {
    /// Truncation order of series literals.
    pub cutoff: usize,
    /// Largest degree any intermediate element may reach.
    pub max_degree: usize,
    pub exec: Exec,
}

impl Context {
    pub fn new(cutoff: usize, max_degree: usize) -> Self {
        Context { cutoff, max_degree, exec: Exec::default() }
    }

    fn check_degree(&self, d: usize) -> Result<()> {
        if d > self.max_degree {
            return Err(Error::ResourceLimit { what: "degree", requested: d, cap: self.max_degree });
        }
        Ok(())
    }
}

fn composition(v: &[u32]) -> Result<Composition> {
    Composition::new(v).map_err(|_| Error::Parse(format!("invalid composition {}", fmt_list(v))))
}

fn mismatch(op: BinOp, a: &Value, b: &Value) -> Error {
    Error::BasisMismatch(format!("cannot apply '{}' to {} and {}", op.glyph(), a.kind(), b.kind()))
}

fn as_series(f: &WQSymElement, cutoff: usize) -> Result<TruncatedSeries> {
    TruncatedSeries::from_element(f, cutoff)
}

fn eval_literal(lit: &Literal, ctx: &Context) -> Result<Value> {
    let sym = |v: &Vec<u32>, embed: fn(&Composition) -> WQSymElement| -> Result<Value> {
        let c = composition(v)?;
        ctx.check_degree(c.weight())?;
        Ok(Value::WQSym(embed(&c)))
    };
    let series = |n: usize| -> Result<()> { ctx.check_degree(n) };
    Ok(match lit {
        Literal::Scalar(r) => Value::Scalar(r.clone()),
        Literal::M(v) => {
            ctx.check_degree(v.len())?;
            Value::WQSym(WQSymElement::basis(PackedWord::new(v)?))
        }
        Literal::S(v) => sym(v, embed_sym_standard)?,
        Literal::R(v) => sym(v, ribbon_standard)?,
        Literal::HatS(v) => sym(v, embed_sym_hat)?,
        Literal::HatR(v) => sym(v, ribbon_hat)?,
        Literal::Q(v) => Value::QSym(QSymElement::basis(composition(v)?)),
        Literal::Identity => {
            series(ctx.cutoff)?;
            Value::Series(identity_series(ctx.cutoff))
        }
        Literal::Psi(k) => {
            series(ctx.cutoff)?;
            Value::Series(adams(*k, ctx.cutoff))
        }
        Literal::Eulerian(i) => {
            series(ctx.cutoff)?;
            Value::Series(eulerian_idempotent(*i, ctx.cutoff))
        }
        Literal::Sigma(t) => {
            series(ctx.cutoff)?;
            Value::Series(sigma_hat(t, ctx.cutoff))
        }
    })
}

fn add_values(a: Value, b: Value, sign: i64) -> Result<Value> {
    let s = rational::int(sign);
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x + y * s),
        (Value::Scalar(x), Value::WQSym(f)) => Value::WQSym(&WQSymElement::scalar(x) + &f.scale(&s)),
        (Value::WQSym(f), Value::Scalar(x)) => Value::WQSym(&f + &WQSymElement::scalar(x * s)),
        (Value::WQSym(f), Value::WQSym(g)) => Value::WQSym(&f + &g.scale(&s)),
        (Value::Scalar(x), Value::QSym(f)) => Value::QSym(&QSymElement::unit().scale(&x) + &f.scale(&s)),
        (Value::QSym(f), Value::Scalar(x)) => Value::QSym(&f + &QSymElement::unit().scale(&(x * s))),
        (Value::QSym(f), Value::QSym(g)) => Value::QSym(&f + &g.scale(&s)),
        (Value::Series(p), Value::Series(q)) => Value::Series(p.add(&q.scale(&s))),
        (Value::Series(p), Value::WQSym(g)) => {
            let q = as_series(&g, p.cutoff())?;
            Value::Series(p.add(&q.scale(&s)))
        }
        (Value::WQSym(f), Value::Series(q)) => Value::Series(as_series(&f, q.cutoff())?.add(&q.scale(&s))),
        (Value::Series(p), Value::Scalar(x)) => Value::Series(p.add(&TruncatedSeries::unit(p.cutoff()).scale(&(x * s)))),
        (Value::Scalar(x), Value::Series(q)) => {
            Value::Series(TruncatedSeries::unit(q.cutoff()).scale(&x).add(&q.scale(&s)))
        }
        (a, b) => return Err(mismatch(if sign > 0 { BinOp::Add } else { BinOp::Sub }, &a, &b)),
    })
}

fn scale_value(v: Value, c: &Rational) -> Value {
    match v {
        Value::Scalar(x) => Value::Scalar(x * c),
        Value::WQSym(f) => Value::WQSym(f.scale(c)),
        Value::Series(s) => Value::Series(s.scale(c)),
        Value::QSym(f) => Value::QSym(f.scale(c)),
    }
}

fn apply(op: BinOp, a: Value, b: Value, ctx: &Context) -> Result<Value> {
    use Value::*;
    match op {
        BinOp::Add => return add_values(a, b, 1),
        BinOp::Sub => return add_values(a, b, -1),
        _ => {}
    }
    Ok(match (op, a, b) {
        (BinOp::Div, a, Scalar(c)) => {
            if num_traits::Zero::is_zero(&c) {
                return Err(Error::Precondition("division by zero".into()));
            }
            scale_value(a, &(rational::one() / c))
        }
        (BinOp::Outer, Scalar(c), b) | (BinOp::Outer, b, Scalar(c)) => scale_value(b, &c),
        (BinOp::Outer, WQSym(f), WQSym(g)) => {
            ctx.check_degree(f.max_degree().unwrap_or(0) + g.max_degree().unwrap_or(0))?;
            WQSym(f.outer_with(&g, ctx.exec))
        }
        (BinOp::Outer, Series(p), Series(q)) => Series(p.convolve_with(&q, ctx.exec)),
        (BinOp::Outer, Series(p), WQSym(g)) => Series(p.convolve_with(&as_series(&g, p.cutoff())?, ctx.exec)),
        (BinOp::Outer, WQSym(f), Series(q)) => Series(as_series(&f, q.cutoff())?.convolve_with(&q, ctx.exec)),
        (BinOp::Outer, QSym(f), QSym(g)) => QSym(f.product(&g)),
        (BinOp::Internal, WQSym(f), WQSym(g)) => WQSym(f.internal_with(&g, ctx.exec)),
        (BinOp::Internal, Series(p), Series(q)) => Series(p.internal_with(&q, ctx.exec)),
        (BinOp::Internal, WQSym(f), Series(q)) => Series(as_series(&f, q.cutoff())?.internal_with(&q, ctx.exec)),
        (BinOp::Internal, Series(p), WQSym(g)) => Series(p.internal_with(&as_series(&g, p.cutoff())?, ctx.exec)),
        (BinOp::Internal, QSym(f), WQSym(g)) => QSym(f.act(&g)),
        (BinOp::Internal, QSym(f), Series(s)) => QSym(f.act_series(&s)?),
        (BinOp::Bullet, WQSym(f), WQSym(g)) => {
            ctx.check_degree(f.max_degree().unwrap_or(0) + g.max_degree().unwrap_or(0))?;
            WQSym(f.bullet(&g))
        }
        (op, a, b) => return Err(mismatch(op, &a, &b)),
    })
}

/// Evaluates a parsed expression.
pub fn eval(e: &Expression, ctx: &Context) -> Result<Value> {
    match e {
        Expression::Lit(l) => eval_literal(l, ctx),
        Expression::Neg(x) => Ok(scale_value(eval(x, ctx)?, &rational::int(-1))),
        Expression::Bin(op, a, b) => {
            let (a, b) = (eval(a, ctx)?, eval(b, ctx)?);
            apply(*op, a, b, ctx)
        }
    }
}

/// Parses and evaluates.
pub fn eval_str(src: &str, ctx: &Context) -> Result<Value> {
    eval(&parse(src)?, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::new(4, 7)
    }

    fn w(src: &str) -> WQSymElement {
        match eval_str(src, &ctx()).unwrap() {
            Value::WQSym(f) => f,
            Value::Scalar(c) => WQSymElement::scalar(c),
            v => panic!("expected a WQSym element, got {v:?}"),
        }
    }

    #[test]
    fn products_and_precedence() {
        let f = w("M[1,1] * M[2,1]");
        assert_eq!(f.len(), 5);
        assert!(w("M[1,1] @ M[1,2]").is_zero());
        assert_eq!(w("(M[1,1] & M[2,1]) @ hatS[1,2]"), f);
        assert_eq!(w("M[1] + 2*M[1]"), w("3 * M[1]"));
        assert_eq!(w("M[1] - M[1]"), WQSymElement::zero());
        assert_eq!(w("-M[1] / 2"), w("-1/2*M[1]"));
        assert_eq!(w("M[13132]"), w("M[1,3,1,3,2]"));
    }

    #[test]
    fn text_output_reparses() {
        let f = w("1/3*M[2,1] - M[1,1] * M[1] + 2");
        assert_eq!(w(&f.to_string()), f);
        let zero = w("M[1] - M[1]");
        assert_eq!(w(&zero.to_string()), zero);
    }

    #[test]
    fn errors_are_classified() {
        assert!(matches!(eval_str("M[1,1", &ctx()), Err(Error::Parse(_))));
        assert!(matches!(eval_str("M[1,1] +", &ctx()), Err(Error::Parse(_))));
        assert!(matches!(eval_str("foo", &ctx()), Err(Error::Parse(_))));
        assert!(matches!(eval_str("M[1,1] + Q[2]", &ctx()), Err(Error::BasisMismatch(_))));
        assert!(matches!(eval_str("Q[2] & Q[1]", &ctx()), Err(Error::BasisMismatch(_))));
        assert!(matches!(eval_str("M[1,2,3] + e(1)", &Context::new(2, 7)), Err(Error::CutoffExceeded { .. })));
        assert!(matches!(eval_str("M[1,2,3,4] * M[1,2,3,4]", &ctx()), Err(Error::ResourceLimit { .. })));
        assert!(matches!(eval_str("M[2]", &ctx()), Err(Error::NotPacked(_))));
    }

    #[test]
    fn series_and_qsym() {
        let ctx = ctx();
        let Value::Series(s) = eval_str("e(0) + e(1) + e(2) + e(3) + e(4) - I", &ctx).unwrap() else { panic!() };
        assert!(s.is_zero());
        let Value::QSym(q) = eval_str("Q[2,1,3,2,2] @ M[1,2,1,2,1]", &ctx).unwrap() else { panic!() };
        assert_eq!(q.to_string(), "Q[7,3]");
        let Value::QSym(q) = eval_str("Q[1,2] @ Psi(2)", &ctx).unwrap() else { panic!() };
        assert_eq!(q.to_string(), "Q[3] + 3*Q[1,2] + Q[2,1]");
        let Value::Series(s) = eval_str("sigma(-1/2) * sigma(1/2)", &ctx).unwrap() else { panic!() };
        assert_eq!(s.component(1), &WQSymElement::zero());
    }

    #[test]
    fn json_round_trip() {
        let ctx = ctx();
        for src in ["M[1,1] * M[2,1] / 3", "Q[1,2] * Q[1]", "e(1)", "7"] {
            let v = eval_str(src, &ctx).unwrap();
            let back = Value::from_json(&v.to_json_value().to_string()).unwrap();
            let v = match v {
                Value::Scalar(r) => Value::WQSym(WQSymElement::scalar(r)),
                v => v,
            };
            assert_eq!(back, v, "{src}");
        }
    }

    #[test]
    fn display_reparses_to_same_tree() {
        let e = parse("M[1,1] * (M[2,1] - 1/2) @ hatS[1,2] & R[2]").unwrap();
        assert_eq!(parse(&e.to_string()).unwrap(), e);
    }
}
