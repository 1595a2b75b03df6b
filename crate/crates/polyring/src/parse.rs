use thiserror::Error;

use crate::monomial::Var;
use crate::poly::{Coeff, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{name}` at byte {pos}")]
    UnknownSymbol { pos: usize, name: String },
}

impl ParseError {
    pub fn pos(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. } | ParseError::UnknownSymbol { pos, .. } => *pos,
        }
    }
}

struct Parser<'s, R> {
    src: &'s [u8],
    pos: usize,
    resolve: R,
}

impl<C: Coeff> Polynomial<C> {
    /// Parses `expr := term {(+|-) term}`, `term := factor {* factor}`,
    /// `factor := integer | symbol | - factor | ( expr )`.
    ///
    /// Symbols are identifiers resolved to variables by `resolve`.
    pub fn parse<R>(text: &str, resolve: R) -> Result<Self, ParseError>
    where
        R: Fn(&str) -> Option<Var>,
    {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
            resolve,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(e)
    }
}

impl<R: Fn(&str) -> Option<Var>> Parser<'_, R> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
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

    fn expr<C: Coeff>(&mut self) -> Result<Polynomial<C>, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc.add_assign(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<C: Coeff>(&mut self) -> Result<Polynomial<C>, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor<C: Coeff>(&mut self) -> Result<Polynomial<C>, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let c = C::from_str_radix(digits, 10).map_err(|_| ParseError::Syntax {
                    pos: start,
                    msg: "integer out of range".into(),
                })?;
                Ok(Polynomial::constant(c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match (self.resolve)(name) {
                    Some(v) => Ok(Polynomial::var(v)),
                    None => Err(ParseError::UnknownSymbol {
                        pos: start,
                        name: name.to_string(),
                    }),
                }
            }
            Some(_) => Err(self.err("expected integer, symbol, `-` or `(`")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
