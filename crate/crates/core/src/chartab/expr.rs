//! Character values written as cyclotomic expressions: integers, `E(n)`,
//! `ER(n)`/`sqrt(n)`, `i`, with `+ - * / ^` and parentheses.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValueExpr {
    Int(i64),
    /// Primitive `n`-th root of unity `exp(2 pi i / n)`.
    RootOfUnity(u32),
    /// Principal square root; `sqrt(-n) = i sqrt(n)`.
    Sqrt(i64),
    Neg(Box<ValueExpr>),
    Add(Box<ValueExpr>, Box<ValueExpr>),
    Sub(Box<ValueExpr>, Box<ValueExpr>),
    Mul(Box<ValueExpr>, Box<ValueExpr>),
    Div(Box<ValueExpr>, Box<ValueExpr>),
    Pow(Box<ValueExpr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("unexpected {found} at offset {offset} in {text:?}")]
    Unexpected { text: String, offset: usize, found: String },
    #[error("integer out of range in {0:?}")]
    Overflow(String),
    #[error("E(0) is undefined")]
    ZeroRoot,
    #[error("division by zero")]
    DivisionByZero,
}

impl ValueExpr {
    pub fn parse(text: &str) -> Result<Self, ExprError> {
        let mut p = Parser { text, bytes: text.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.unexpected());
        }
        Ok(e)
    }

    pub fn int(v: i64) -> Self {
        ValueExpr::Int(v)
    }

    /// Integer value when the expression is a (possibly negated) literal.
    pub fn as_int(&self) -> Option<i64> {
        match self {
            ValueExpr::Int(v) => Some(*v),
            ValueExpr::Neg(e) => e.as_int().and_then(i64::checked_neg),
            _ => None,
        }
    }

    pub fn evaluate<A: Arith>(&self, a: &mut A) -> Result<A::Value, ExprError> {
        Ok(match self {
            ValueExpr::Int(v) => a.int(*v),
            ValueExpr::RootOfUnity(n) => a.root_of_unity(*n),
            ValueExpr::Sqrt(n) => a.sqrt(*n),
            ValueExpr::Neg(e) => {
                let v = e.evaluate(a)?;
                a.neg(&v)
            }
            ValueExpr::Add(x, y) => {
                let (x, y) = (x.evaluate(a)?, y.evaluate(a)?);
                a.add(&x, &y)
            }
            ValueExpr::Sub(x, y) => {
                let (x, y) = (x.evaluate(a)?, y.evaluate(a)?);
                a.sub(&x, &y)
            }
            ValueExpr::Mul(x, y) => {
                let (x, y) = (x.evaluate(a)?, y.evaluate(a)?);
                a.mul(&x, &y)
            }
            ValueExpr::Div(x, y) => {
                let (x, y) = (x.evaluate(a)?, y.evaluate(a)?);
                a.div(&x, &y).ok_or(ExprError::DivisionByZero)?
            }
            ValueExpr::Pow(x, k) => {
                let base = x.evaluate(a)?;
                let mut acc = a.int(1);
                for _ in 0..*k {
                    acc = a.mul(&acc, &base);
                }
                acc
            }
        })
    }
}

impl fmt::Display for ValueExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueExpr::Int(v) => write!(f, "{v}"),
            ValueExpr::RootOfUnity(n) => write!(f, "E({n})"),
            ValueExpr::Sqrt(n) => write!(f, "ER({n})"),
            ValueExpr::Neg(e) => write!(f, "-({e})"),
            ValueExpr::Add(x, y) => write!(f, "({x})+({y})"),
            ValueExpr::Sub(x, y) => write!(f, "({x})-({y})"),
            ValueExpr::Mul(x, y) => write!(f, "({x})*({y})"),
            ValueExpr::Div(x, y) => write!(f, "({x})/({y})"),
            ValueExpr::Pow(x, k) => write!(f, "({x})^{k}"),
        }
    }
}

/// Complex arithmetic backend for [`ValueExpr::evaluate`].
pub trait Arith {
    type Value: Clone;
    fn int(&mut self, v: i64) -> Self::Value;
    fn root_of_unity(&mut self, n: u32) -> Self::Value;
    fn sqrt(&mut self, n: i64) -> Self::Value;
    fn neg(&mut self, x: &Self::Value) -> Self::Value;
    fn add(&mut self, x: &Self::Value, y: &Self::Value) -> Self::Value;
    fn sub(&mut self, x: &Self::Value, y: &Self::Value) -> Self::Value;
    fn mul(&mut self, x: &Self::Value, y: &Self::Value) -> Self::Value;
    fn div(&mut self, x: &Self::Value, y: &Self::Value) -> Option<Self::Value>;
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn unexpected(&self) -> ExprError {
        let found = match self.text[self.pos..].chars().next() {
            Some(c) => c.to_string(),
            None => "end of input".to_string(),
        };
        ExprError::Unexpected {
            text: self.text.to_string(),
            offset: self.pos,
            found,
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ExprError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn expr(&mut self) -> Result<ValueExpr, ExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = ValueExpr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = ValueExpr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ValueExpr, ExprError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = ValueExpr::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    acc = ValueExpr::Div(Box::new(acc), Box::new(self.unary()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<ValueExpr, ExprError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(ValueExpr::Neg(Box::new(self.unary()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<ValueExpr, ExprError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.unsigned()?;
            let k = u32::try_from(k).map_err(|_| ExprError::Overflow(self.text.to_string()))?;
            return Ok(ValueExpr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn unsigned(&mut self) -> Result<u64, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected());
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| ExprError::Overflow(self.text.to_string()))
    }

    fn signed_argument(&mut self) -> Result<i64, ExprError> {
        self.expect(b'(')?;
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let v = self.unsigned()?;
        self.expect(b')')?;
        let v = i64::try_from(v).map_err(|_| ExprError::Overflow(self.text.to_string()))?;
        Ok(if negative { -v } else { v })
    }

    fn atom(&mut self) -> Result<ValueExpr, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b) if b.is_ascii_digit() => {
                let v = self.unsigned()?;
                i64::try_from(v)
                    .map(ValueExpr::Int)
                    .map_err(|_| ExprError::Overflow(self.text.to_string()))
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                match &self.text[start..self.pos] {
                    "E" => {
                        let n = self.signed_argument()?;
                        match u32::try_from(n) {
                            Ok(0) => Err(ExprError::ZeroRoot),
                            Ok(n) => Ok(ValueExpr::RootOfUnity(n)),
                            Err(_) => Err(ExprError::Overflow(self.text.to_string())),
                        }
                    }
                    "ER" | "sqrt" | "Sqrt" => Ok(ValueExpr::Sqrt(self.signed_argument()?)),
                    "i" | "I" => Ok(ValueExpr::RootOfUnity(4)),
                    _ => {
                        self.pos = start;
                        Err(self.unexpected())
                    }
                }
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Collects the distinct root-of-unity orders mentioned in `e`.
pub fn roots_mentioned(e: &ValueExpr) -> Vec<u32> {
    fn walk(e: &ValueExpr, out: &mut Vec<u32>) {
        match e {
            ValueExpr::RootOfUnity(n) => {
                if !out.contains(n) {
                    out.push(*n);
                }
            }
            ValueExpr::Int(_) | ValueExpr::Sqrt(_) => {}
            ValueExpr::Neg(x) | ValueExpr::Pow(x, _) => walk(x, out),
            ValueExpr::Add(x, y) | ValueExpr::Sub(x, y) | ValueExpr::Mul(x, y) | ValueExpr::Div(x, y) => {
                walk(x, out);
                walk(y, out);
            }
        }
    }
    let mut out = Vec::new();
    walk(e, &mut out);
    out
}
