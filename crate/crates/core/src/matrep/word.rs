//! Words in named generators: products, integer powers, conjugation `x^y`
//! (`y^-1 x y`) and commutators `[x,y]` (`x^-1 y^-1 x y`).
//!
//! Grammar (whitespace ignored, `*` optional between factors):
//!
//! ```text
//! word     := factor*
//! factor   := primary ('^' exponent)*
//! primary  := letter | '(' word ')' | '{' word '}' | '[' word ',' word ']'
//! exponent := ['-'] digits | '{' ['-'] digits '}' | letter | '(' word ')'
//!           | '{' word '}' | '[' word ',' word ']'
//! ```
//!
//! An integer exponent is a power; any other exponent conjugates.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupWord {
    Generator(char),
    Product(Vec<GroupWord>),
    Power(Box<GroupWord>, i64),
    Conjugate(Box<GroupWord>, Box<GroupWord>),
    Commutator(Box<GroupWord>, Box<GroupWord>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("unexpected {found} at offset {offset} in word")]
    Unexpected { offset: usize, found: String },
    #[error("exponent out of range at offset {0}")]
    Exponent(usize),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(char),
    #[error("element is not invertible")]
    NotInvertible,
}

/// Group operations a word can be evaluated in.
pub trait WordTarget: Clone {
    fn product(&self, other: &Self) -> Self;
    fn inverse(&self) -> Option<Self>;
}

impl WordTarget for super::BitMatrix {
    fn product(&self, other: &Self) -> Self {
        self.mul(other)
    }

    fn inverse(&self) -> Option<Self> {
        super::BitMatrix::inverse(self).ok()
    }
}

impl WordTarget for crate::perm::Permutation {
    fn product(&self, other: &Self) -> Self {
        self.compose(other)
    }

    fn inverse(&self) -> Option<Self> {
        Some(crate::perm::Permutation::inverse(self))
    }
}

struct Parser<'s> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'s str,
}

impl<'s> Parser<'s> {
    fn new(src: &'s str) -> Self {
        Self {
            chars: src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            pos: 0,
            src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(usize::MAX, |&(o, _)| o)
    }

    fn unexpected(&self) -> WordError {
        WordError::Unexpected {
            offset: self.chars.get(self.pos).map_or(self.src.len(), |&(o, _)| o),
            found: self.peek().map_or_else(|| "end of input".to_string(), |c| alloc::format!("{c:?}")),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), WordError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn word(&mut self) -> Result<GroupWord, WordError> {
        let mut factors = Vec::new();
        loop {
            match self.peek() {
                Some('*') => self.pos += 1,
                Some(c) if c.is_ascii_alphabetic() || matches!(c, '(' | '{' | '[') => {
                    factors.push(self.factor()?);
                }
                _ => break,
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().expect("one factor")
        } else {
            GroupWord::Product(factors)
        })
    }

    fn primary(&mut self) -> Result<GroupWord, WordError> {
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                Ok(GroupWord::Generator(c))
            }
            Some('(') => self.group('(', ')'),
            Some('{') => self.group('{', '}'),
            Some('[') => {
                self.pos += 1;
                let x = self.word()?;
                self.expect(',')?;
                let y = self.word()?;
                self.expect(']')?;
                Ok(GroupWord::Commutator(Box::new(x), Box::new(y)))
            }
            _ => Err(self.unexpected()),
        }
    }

    fn group(&mut self, open: char, close: char) -> Result<GroupWord, WordError> {
        self.expect(open)?;
        let w = self.word()?;
        self.expect(close)?;
        Ok(w)
    }

    fn integer(&mut self) -> Option<Result<i64, WordError>> {
        let start = self.pos;
        let offset = self.offset();
        let negative = self.peek() == Some('-');
        if negative {
            self.pos += 1;
        }
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.pos += 1;
        }
        if digits.is_empty() {
            self.pos = start;
            return None;
        }
        Some(
            digits
                .parse::<i64>()
                .map(|v| if negative { -v } else { v })
                .map_err(|_| WordError::Exponent(offset)),
        )
    }

    fn factor(&mut self) -> Result<GroupWord, WordError> {
        let mut base = self.primary()?;
        while self.peek() == Some('^') {
            self.pos += 1;
            if let Some(n) = self.integer() {
                base = GroupWord::Power(Box::new(base), n?);
                continue;
            }
            if self.peek() == Some('{') {
                let save = self.pos;
                self.pos += 1;
                if let Some(n) = self.integer() {
                    if self.peek() == Some('}') {
                        self.pos += 1;
                        base = GroupWord::Power(Box::new(base), n?);
                        continue;
                    }
                }
                self.pos = save;
            }
            let exponent = self.primary()?;
            base = GroupWord::Conjugate(Box::new(base), Box::new(exponent));
        }
        Ok(base)
    }
}

impl GroupWord {
    pub fn parse(src: &str) -> Result<Self, WordError> {
        let mut p = Parser::new(src);
        let w = p.word()?;
        if p.peek().is_some() {
            return Err(p.unexpected());
        }
        Ok(w)
    }

    pub fn identity() -> Self {
        GroupWord::Product(Vec::new())
    }

    /// Generator letters in first-use order.
    pub fn generators(&self) -> Vec<char> {
        let mut out = Vec::new();
        self.collect_generators(&mut out);
        out
    }

    fn collect_generators(&self, out: &mut Vec<char>) {
        match self {
            GroupWord::Generator(c) => {
                if !out.contains(c) {
                    out.push(*c);
                }
            }
            GroupWord::Product(ws) => ws.iter().for_each(|w| w.collect_generators(out)),
            GroupWord::Power(w, _) => w.collect_generators(out),
            GroupWord::Conjugate(x, y) | GroupWord::Commutator(x, y) => {
                x.collect_generators(out);
                y.collect_generators(out);
            }
        }
    }

    /// Evaluates with `lookup` supplying generator values and `identity` the
    /// neutral element.
    pub fn evaluate<T, F>(&self, lookup: &F, identity: &T) -> Result<T, WordError>
    where
        T: WordTarget,
        F: Fn(char) -> Option<T>,
    {
        let inv = |x: &T| x.inverse().ok_or(WordError::NotInvertible);
        Ok(match self {
            GroupWord::Generator(c) => lookup(*c).ok_or(WordError::UnknownGenerator(*c))?,
            GroupWord::Product(ws) => {
                let mut acc = identity.clone();
                for w in ws {
                    acc = acc.product(&w.evaluate(lookup, identity)?);
                }
                acc
            }
            GroupWord::Power(w, n) => {
                let x = w.evaluate(lookup, identity)?;
                let mut base = if *n < 0 { inv(&x)? } else { x };
                let mut e = n.unsigned_abs();
                let mut acc = identity.clone();
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc.product(&base);
                    }
                    e >>= 1;
                    if e > 0 {
                        base = base.product(&base);
                    }
                }
                acc
            }
            GroupWord::Conjugate(x, y) => {
                let xv = x.evaluate(lookup, identity)?;
                let yv = y.evaluate(lookup, identity)?;
                inv(&yv)?.product(&xv).product(&yv)
            }
            GroupWord::Commutator(x, y) => {
                let xv = x.evaluate(lookup, identity)?;
                let yv = y.evaluate(lookup, identity)?;
                inv(&xv)?.product(&inv(&yv)?).product(&xv).product(&yv)
            }
        })
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupWord::Generator(c) => write!(f, "{c}"),
            GroupWord::Product(ws) if ws.is_empty() => write!(f, "()"),
            GroupWord::Product(ws) => {
                for w in ws {
                    match w {
                        GroupWord::Product(_) => write!(f, "({w})")?,
                        _ => write!(f, "{w}")?,
                    }
                }
                Ok(())
            }
            GroupWord::Power(w, n) => match **w {
                GroupWord::Generator(_) | GroupWord::Commutator(..) => write!(f, "{w}^{n}"),
                _ => write!(f, "({w})^{n}"),
            },
            GroupWord::Conjugate(x, y) => {
                match **x {
                    GroupWord::Generator(_) | GroupWord::Commutator(..) => write!(f, "{x}")?,
                    _ => write!(f, "({x})")?,
                }
                write!(f, "^{{{y}}}")
            }
            GroupWord::Commutator(x, y) => write!(f, "[{x},{y}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn s5_lookup(c: char) -> Option<Permutation> {
        match c {
            'a' => Some(Permutation::parse("(0 1)", Some(5)).unwrap()),
            'b' => Some(Permutation::parse("(0 1 2 3 4)", Some(5)).unwrap()),
            _ => None,
        }
    }

    fn eval(src: &str) -> Permutation {
        GroupWord::parse(src)
            .unwrap()
            .evaluate(&s5_lookup, &Permutation::identity(5))
            .unwrap()
    }

    #[test]
    fn parses_printed_forms() {
        for src in [
            "(ab^2)^4",
            "ab",
            "[a,b]^5(ab^2)^6",
            "bab^2ab[a,bab^2ab]^5ababab[a,ababab]^5",
            "t^{c^3d^3c^{21}d^{12}}",
            "t^{c^{12}d^{8}}",
            "t^c",
            "a^-1 b",
            "",
        ] {
            assert!(GroupWord::parse(src).is_ok(), "{src}");
        }
        assert!(GroupWord::parse("a^").is_err());
        assert!(GroupWord::parse("[a b]").is_err());
        assert!(GroupWord::parse("a)").is_err());
    }

    #[test]
    fn precedence_and_meaning() {
        let a = s5_lookup('a').unwrap();
        let b = s5_lookup('b').unwrap();
        assert!(eval("").is_identity());
        assert_eq!(eval("ab^2"), a.compose(&b.compose(&b)));
        assert_eq!(eval("b^{2}"), b.pow(2));
        assert_eq!(eval("b^-1"), b.inverse());
        assert_eq!(eval("a^b"), b.inverse().compose(&a).compose(&b));
        assert_eq!(eval("[a,b]"), a.inverse().compose(&b.inverse()).compose(&a).compose(&b));
        assert_eq!(eval("a^{b^2}"), a.conjugate_by(&b.pow(2)));
        assert_eq!(eval("(ab)^5"), a.compose(&b).pow(5));
        assert_eq!(eval("a*b"), eval("ab"));
    }

    #[test]
    fn unknown_generator_is_reported() {
        let w = GroupWord::parse("ax").unwrap();
        assert_eq!(
            w.evaluate(&s5_lookup, &Permutation::identity(5)),
            Err(WordError::UnknownGenerator('x'))
        );
        assert_eq!(w.generators(), vec!['a', 'x']);
    }

    #[test]
    fn display_round_trips() {
        for src in ["(ab^2)^4", "[a,b]^5(ab^2)^6", "t^{c^3d^3}", "ba^-2"] {
            let w = GroupWord::parse(src).unwrap();
            assert_eq!(GroupWord::parse(&w.to_string()).unwrap(), w, "{src}");
        }
    }
}
