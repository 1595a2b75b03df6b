//! Generator words.
//!
//! ```text
//! word   := { factor }
//! factor := atom [ "^" integer ]
//! atom   := gen | "[" factor "," factor "]" [ "'" ] | "(" word ")"
//! gen    := ("x" | "xs" | "cx") "_" digit digit
//! ```
//!
//! A word `A B C` denotes the composite `A ∘ B ∘ C`: the rightmost factor acts
//! first. `[A,B]` is `A B A^-1 B^-1`; a trailing `'` selects the tabulated
//! modified commutator instead.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::model::{Family, GeneratorId};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Gen(GeneratorId),
    Bracket {
        a: Box<Factor>,
        b: Box<Factor>,
        modified: bool,
    },
    Group(Word),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub term: Term,
    pub exp: BigInt,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    pub factors: Vec<Factor>,
}

impl Term {
    pub fn bracket(a: Term, b: Term) -> Term {
        Term::Bracket {
            a: Box::new(Factor::new(a, 1)),
            b: Box::new(Factor::new(b, 1)),
            modified: false,
        }
    }

    pub fn modified(a: Term, b: Term) -> Term {
        Term::Bracket {
            a: Box::new(Factor::new(a, 1)),
            b: Box::new(Factor::new(b, 1)),
            modified: true,
        }
    }

    /// Parses a single atom (no exponent), e.g. a table section label.
    pub fn parse(text: &str, n: usize) -> Result<Term, Error> {
        let mut p = Parser::new(text, n);
        p.skip_ws();
        let t = p.atom()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(t)
    }

    /// Bracket nesting depth: 0 for generators.
    pub fn depth(&self) -> usize {
        match self {
            Term::Gen(_) => 0,
            Term::Bracket { a, b, .. } => 1 + a.term.depth().max(b.term.depth()),
            Term::Group(w) => w.factors.iter().map(|f| f.term.depth()).max().unwrap_or(0),
        }
    }

    /// Every generator mentioned, in order of appearance.
    pub fn generators(&self) -> Vec<GeneratorId> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<GeneratorId>) {
        match self {
            Term::Gen(g) => out.push(*g),
            Term::Bracket { a, b, .. } => {
                a.term.collect(out);
                b.term.collect(out);
            }
            Term::Group(w) => w.factors.iter().for_each(|f| f.term.collect(out)),
        }
    }
}

impl Factor {
    pub fn new(term: Term, exp: impl Into<BigInt>) -> Self {
        Factor {
            term,
            exp: exp.into(),
        }
    }
}

impl Word {
    pub fn new() -> Self {
        Word::default()
    }

    pub fn single(term: Term, exp: impl Into<BigInt>) -> Self {
        Word {
            factors: vec![Factor::new(term, exp)],
        }
    }

    pub fn parse(text: &str, n: usize) -> Result<Word, Error> {
        let mut p = Parser::new(text, n);
        let w = p.word()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.err("unexpected input"));
        }
        Ok(w)
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    /// Appends a factor, skipping zero exponents.
    pub fn push(&mut self, term: Term, exp: BigInt) {
        if !exp.is_zero() {
            self.factors.push(Factor { term, exp });
        }
    }

    /// `self ∘ other`: `other` acts first.
    pub fn then_after(mut self, other: Word) -> Word {
        self.factors.extend(other.factors);
        self
    }

    pub fn inverse(&self) -> Word {
        Word {
            factors: self
                .factors
                .iter()
                .rev()
                .map(|f| Factor {
                    term: f.term.clone(),
                    exp: -f.exp.clone(),
                })
                .collect(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Gen(g) => write!(f, "{g}"),
            Term::Bracket { a, b, modified } => {
                write!(f, "[{a},{b}]")?;
                if *modified {
                    f.write_str("'")?;
                }
                Ok(())
            }
            Term::Group(w) => write!(f, "({w})"),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.term)?;
        if !self.exp.is_one() {
            write!(f, "^{}", self.exp)?;
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, x) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

struct Parser<'s> {
    src: &'s [u8],
    pos: usize,
    n: usize,
}

impl<'s> Parser<'s> {
    fn new(text: &'s str, n: usize) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            n,
        }
    }

    fn token_here(&self) -> String {
        let rest = &self.src[self.pos.min(self.src.len())..];
        let end = rest
            .iter()
            .position(|b| b.is_ascii_whitespace())
            .unwrap_or(rest.len())
            .min(16);
        String::from_utf8_lossy(&rest[..end]).into_owned()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Word {
            pos: self.pos,
            token: self.token_here(),
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Result<Word, Error> {
        let mut w = Word::new();
        while let Some(c) = self.peek() {
            if c == b')' {
                break;
            }
            w.factors.push(self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Factor, Error> {
        let term = self.atom()?;
        let mut exp = BigInt::one();
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            if matches!(self.src.get(self.pos), Some(b'-' | b'+')) {
                self.pos += 1;
            }
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            exp = text.parse().map_err(|_| Error::Word {
                pos: start,
                token: text.to_string(),
                msg: "expected an integer exponent".into(),
            })?;
        }
        Ok(Factor { term, exp })
    }

    fn atom(&mut self) -> Result<Term, Error> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let a = self.factor()?;
                if !self.eat(b',') {
                    return Err(self.err("expected `,` in commutator"));
                }
                let b = self.factor()?;
                if !self.eat(b']') {
                    return Err(self.err("expected `]`"));
                }
                let modified = self.src.get(self.pos) == Some(&b'\'');
                if modified {
                    self.pos += 1;
                }
                Ok(Term::Bracket {
                    a: Box::new(a),
                    b: Box::new(b),
                    modified,
                })
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(Term::Group(w))
            }
            Some(_) => self.generator().map(Term::Gen),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn generator(&mut self) -> Result<GeneratorId, Error> {
        let start = self.pos;
        let rest = &self.src[self.pos..];
        let (family, len) = if rest.starts_with(b"xs_") {
            (Family::Simplified, 3)
        } else if rest.starts_with(b"cx_") {
            (Family::Conj, 3)
        } else if rest.starts_with(b"x_") {
            (Family::Raw, 2)
        } else {
            return Err(self.err("expected a generator `x_ij`, `xs_ij` or `cx_ij`"));
        };
        let digits = &rest[len..];
        if digits.len() < 2 || !digits[0].is_ascii_digit() || !digits[1].is_ascii_digit() {
            return Err(self.err("expected two strand digits"));
        }
        let (i, j) = (digits[0] - b'0', digits[1] - b'0');
        self.pos += len + 2;
        GeneratorId::new(family, i, j, self.n).map_err(|e| Error::Word {
            pos: start,
            token: String::from_utf8_lossy(&self.src[start..self.pos]).into_owned(),
            msg: e.to_string(),
        })
    }
}
