//! Text format for polynomial maps.
//!
//! ```text
//! map     := term (('+' | '-') term)*
//! term    := ('+' | '-')? power ('*' power)*
//! power   := atom ('^' integer)?
//! atom    := rational | label | variable | '(' map ')' | '[' map ']'
//! ```
//!
//! * rationals: `3`, `-2/5`, `0.25` (the sign is an operator);
//! * labels: the algebra's basis labels (`1 i j k`, `e0`…`e7`, `E11`…) and
//!   aliases such as `1` for the unit;
//! * variables: `x1 … xn`, with `x` short for `x1`;
//! * `*` is left-associative, so `a*b*c` is `(a*b)*c`. For octonions the
//!   bracketing matters; parenthesize explicitly;
//! * `x^d` is the left-nested power `((x*x)*x)…`;
//! * a rational times anything is scalar multiplication; products of
//!   constants are folded into one constant; a rational standing alone in
//!   a sum with elements means that multiple of the unit;
//! * `[ … ]` forces a constant element (used by the printer);
//! * `#` starts a comment that runs to the end of the line; `;` separates
//!   maps in [`parse_maps`].
//!
//! Nothing is simplified: `x*x - x*x` keeps both terms.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::algebra::Algebra;
use crate::polymap::{PolynomialMap, Word};
use crate::scalar::{format_rational, parse_rational, Rational};

/// Parse failure with byte offset into the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.pos, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(s) => format!("number `{s}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn err(pos: usize, message: impl Into<String>, expected: &[&str]) -> ParseError {
    ParseError { pos, message: message.into(), expected: expected.iter().map(|s| s.to_string()).collect() }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'+' => {
                out.push((Tok::Plus, i));
                i += 1;
            }
            b'-' => {
                out.push((Tok::Minus, i));
                i += 1;
            }
            b'*' => {
                out.push((Tok::Star, i));
                i += 1;
            }
            b'^' => {
                out.push((Tok::Caret, i));
                i += 1;
            }
            b'(' => {
                out.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                out.push((Tok::RParen, i));
                i += 1;
            }
            b'[' => {
                out.push((Tok::LBracket, i));
                i += 1;
            }
            b']' => {
                out.push((Tok::RBracket, i));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'/' || bytes[i] == b'.') {
                    i += 1;
                    let frac = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if frac == i {
                        return Err(err(start, "malformed rational", &["digits"]));
                    }
                }
                let text = &src[start..i];
                if parse_rational(text).is_none() {
                    return Err(err(start, format!("malformed rational `{text}`"), &[]));
                }
                out.push((Tok::Num(text.to_string()), start));
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
            }
            _ => {
                let ch = src[i..].chars().next().expect("in bounds");
                return Err(err(i, format!("unexpected character `{ch}`"), &[]));
            }
        }
    }
    out.push((Tok::Eof, src.len()));
    Ok(out)
}

#[derive(Debug, Clone)]
enum Value {
    Scalar(Rational),
    Elem(Vec<Rational>),
    Poly(Vec<(Rational, Word)>),
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    alg: &'a Algebra,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn elem_of(&self, v: Value, pos: usize) -> Result<Vec<Rational>, ParseError> {
        match v {
            Value::Elem(e) => Ok(e),
            Value::Scalar(q) => match self.alg.unit() {
                Some(u) => Ok(u.iter().map(|x| x * &q).collect()),
                None => Err(err(pos, "a bare scalar needs a unit element in this algebra", &[])),
            },
            Value::Poly(_) => Err(err(pos, "expected a constant element", &[])),
        }
    }

    fn terms_of(&self, v: Value, pos: usize) -> Result<Vec<(Rational, Word)>, ParseError> {
        match v {
            Value::Poly(t) => Ok(t),
            other => Ok(vec![(Rational::one(), Word::Const(self.elem_of(other, pos)?))]),
        }
    }

    fn add(&self, a: Value, b: Value, pos: usize) -> Result<Value, ParseError> {
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x + y),
            (a @ (Value::Scalar(_) | Value::Elem(_)), b @ (Value::Scalar(_) | Value::Elem(_))) => {
                let x = self.elem_of(a, pos)?;
                let y = self.elem_of(b, pos)?;
                Value::Elem(x.iter().zip(&y).map(|(p, q)| p + q).collect())
            }
            (a, b) => {
                let mut t = self.terms_of(a, pos)?;
                t.extend(self.terms_of(b, pos)?);
                Value::Poly(t)
            }
        })
    }

    fn neg(v: Value) -> Value {
        match v {
            Value::Scalar(q) => Value::Scalar(-q),
            Value::Elem(e) => Value::Elem(e.into_iter().map(|x| -x).collect()),
            Value::Poly(t) => Value::Poly(t.into_iter().map(|(c, w)| (-c, w)).collect()),
        }
    }

    fn word_prod(&self, l: Word, r: Word) -> Word {
        match (l, r) {
            (Word::Const(a), Word::Const(b)) => Word::Const(self.alg.mul(&a, &b)),
            (l, r) => Word::prod(l, r),
        }
    }

    fn mul(&self, a: Value, b: Value) -> Value {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x * y),
            (Value::Scalar(q), Value::Elem(e)) | (Value::Elem(e), Value::Scalar(q)) => {
                Value::Elem(e.into_iter().map(|x| x * &q).collect())
            }
            (Value::Scalar(q), Value::Poly(t)) | (Value::Poly(t), Value::Scalar(q)) => {
                Value::Poly(t.into_iter().map(|(c, w)| (c * &q, w)).collect())
            }
            (Value::Elem(x), Value::Elem(y)) => Value::Elem(self.alg.mul(&x, &y)),
            (Value::Elem(e), Value::Poly(t)) => Value::Poly(
                t.into_iter().map(|(c, w)| (c, self.word_prod(Word::Const(e.clone()), w))).collect(),
            ),
            (Value::Poly(t), Value::Elem(e)) => Value::Poly(
                t.into_iter().map(|(c, w)| (c, self.word_prod(w, Word::Const(e.clone())))).collect(),
            ),
            (Value::Poly(s), Value::Poly(t)) => {
                let mut out = Vec::with_capacity(s.len() * t.len());
                for (c1, w1) in &s {
                    for (c2, w2) in &t {
                        out.push((c1 * c2, self.word_prod(w1.clone(), w2.clone())));
                    }
                }
                Value::Poly(out)
            }
        }
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.term()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.add(acc, rhs, pos)?;
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.add(acc, Self::neg(rhs), pos)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Value, ParseError> {
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
        let mut acc = self.power()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.power()?;
            acc = self.mul(acc, rhs);
        }
        Ok(if negate { Self::neg(acc) } else { acc })
    }

    fn power(&mut self) -> Result<Value, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let d: usize = match self.bump() {
            Tok::Num(s) => s.parse().map_err(|_| err(pos, format!("exponent `{s}` is not a small integer"), &[]))?,
            t => return Err(err(pos, format!("unexpected {}", t.describe()), &["integer exponent"])),
        };
        if d == 0 {
            return Ok(Value::Scalar(Rational::one()));
        }
        let mut acc = base.clone();
        for _ in 1..d {
            acc = self.mul(acc, base.clone());
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(s) => Ok(Value::Scalar(parse_rational(&s).expect("checked by lexer"))),
            Tok::Ident(name) => self.ident(&name, pos),
            Tok::LParen => {
                let v = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(v)
            }
            Tok::LBracket => {
                let inner = self.pos();
                let v = self.expr()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(Value::Elem(self.elem_of(v, inner)?))
            }
            t => Err(err(pos, format!("unexpected {}", t.describe()), &["number", "label", "variable", "`(`"])),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        let pos = self.pos();
        let got = self.bump();
        if got == tok {
            Ok(())
        } else {
            Err(err(pos, format!("unexpected {}", got.describe()), &[what]))
        }
    }

    fn ident(&self, name: &str, pos: usize) -> Result<Value, ParseError> {
        if let Some(e) = self.alg.named_element(name) {
            return Ok(Value::Elem(e));
        }
        if let Some(rest) = name.strip_prefix('x') {
            let index = if rest.is_empty() { Some(1) } else { rest.parse::<usize>().ok() };
            if let Some(index) = index {
                if index == 0 || index > self.nvars {
                    return Err(err(
                        pos,
                        format!("variable `{name}` out of range for {} variable(s)", self.nvars),
                        &[],
                    ));
                }
                return Ok(Value::Poly(vec![(Rational::one(), Word::Var(index - 1))]));
            }
        }
        Err(err(pos, format!("unknown symbol `{name}`"), &["basis label", "variable x1..xn"]))
    }
}

fn parse_value(src: &str, alg: &Algebra, nvars: usize) -> Result<Value, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, alg, nvars };
    let v = p.expr()?;
    if *p.peek() != Tok::Eof {
        let pos = p.pos();
        let what = p.peek().describe();
        let expected: &[&str] = if *p.peek() == Tok::RParen { &["operator", "end of input"] } else { &["operator"] };
        return Err(err(pos, format!("unexpected {what}"), expected));
    }
    Ok(v)
}

/// Parses one polynomial map in `nvars` variables.
pub fn parse_map(src: &str, alg: Arc<Algebra>, nvars: usize) -> Result<PolynomialMap, ParseError> {
    let v = parse_value(src, &alg, nvars)?;
    let mut map = PolynomialMap::zero(alg.clone(), nvars.max(1)).map_err(|e| err(0, e.to_string(), &[]))?;
    let p = Parser { toks: vec![(Tok::Eof, 0)], at: 0, alg: &alg, nvars };
    let terms = match v {
        Value::Scalar(q) if q.is_zero() => Vec::new(),
        other => p.terms_of(other, 0)?,
    };
    for (c, w) in terms {
        map.push(c, w).map_err(|e| err(0, e.to_string(), &[]))?;
    }
    Ok(map)
}

/// Parses `;`-separated maps sharing the same variables.
pub fn parse_maps(src: &str, alg: Arc<Algebra>, nvars: usize) -> Result<Vec<PolynomialMap>, ParseError> {
    let stripped: String = src
        .lines()
        .map(|l| l.split_once('#').map_or(l, |(a, _)| a))
        .collect::<Vec<_>>()
        .join("\n");
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in stripped.split(';') {
        if !piece.trim().is_empty() {
            out.push(parse_map(piece, alg.clone(), nvars).map_err(|mut e| {
                e.pos += offset;
                e
            })?);
        }
        offset += piece.len() + 1;
    }
    if out.is_empty() {
        return Err(err(0, "no map given", &["map"]));
    }
    Ok(out)
}

/// Parses a constant element such as `-1 - i + k`.
pub fn parse_element(src: &str, alg: &Algebra) -> Result<Vec<Rational>, ParseError> {
    let v = parse_value(src, alg, 0)?;
    let p = Parser { toks: vec![(Tok::Eof, 0)], at: 0, alg, nvars: 0 };
    p.elem_of(v, 0)
}

fn print_element(alg: &Algebra, c: &[Rational]) -> String {
    let mut out = String::new();
    for (q, label) in c.iter().zip(alg.labels()) {
        if q.is_zero() {
            continue;
        }
        let neg = q.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = q.abs();
        if mag.is_one() {
            out.push_str(label);
        } else {
            out.push_str(&format_rational(&mag));
            out.push('*');
            out.push_str(label);
        }
    }
    if out.is_empty() {
        out = format!("0*{}", alg.labels()[0]);
    }
    format!("[{out}]")
}

fn print_word(alg: &Algebra, w: &Word) -> String {
    match w {
        Word::Const(c) => print_element(alg, c),
        Word::Var(v) => format!("x{}", v + 1),
        Word::Prod(l, r) => format!("({}*{})", print_word(alg, l), print_word(alg, r)),
    }
}

/// Canonical fully parenthesized text; [`parse_map`] reads it back to the
/// same term list.
pub fn print_map(p: &PolynomialMap) -> String {
    if p.terms().is_empty() {
        return "0".into();
    }
    let alg = p.algebra();
    let mut out = String::new();
    for (i, t) in p.terms().iter().enumerate() {
        let neg = t.coeff.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = t.coeff.abs();
        if !mag.is_one() {
            out.push_str(&format_rational(&mag));
            out.push('*');
        }
        out.push_str(&print_word(alg, &t.word));
    }
    out
}
