use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;
use thiserror::Error;

use crate::monomial::{Monomial, Var};

/// Coefficient ring: exact signed integers.
pub trait Coeff: Signed + Clone + Ord + fmt::Debug + fmt::Display {}

impl<T: Signed + Clone + Ord + fmt::Debug + fmt::Display> Coeff for T {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("no image for variable {0}")]
    MissingImage(Var),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("no value for variable {0}")]
    MissingValue(Var),
}

/// A polynomial in canonical form: no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> Default for Polynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        Self::term(C::one(), Monomial::var(v))
    }

    pub fn term(c: C, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Distinct variables, ascending.
    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.vars().iter().copied())
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// In-place addition.
    pub fn add_assign(&mut self, rhs: &Self) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces every variable by its image. Variables without an image are an error.
    pub fn substitute<'a, F>(&self, mut image: F) -> Result<Self, SubstError>
    where
        F: FnMut(Var) -> Option<&'a Polynomial<C>>,
        C: 'a,
    {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            for (v, e) in m.powers() {
                let p = image(v).ok_or(SubstError::MissingImage(v))?;
                acc = &acc * &p.pow(e);
            }
            out.add_assign(&acc);
        }
        Ok(out)
    }

    pub fn evaluate<'a, F>(&self, mut value: F) -> Result<C, EvalError>
    where
        F: FnMut(Var) -> Option<&'a C>,
        C: 'a,
    {
        let mut total = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &v in m.vars() {
                t = t * value(v).ok_or(EvalError::MissingValue(v))?.clone();
            }
            total = total + t;
        }
        Ok(total)
    }

    /// Evaluates at a dense point indexed by variable.
    pub fn eval_dense(&self, point: &[C]) -> Result<C, EvalError> {
        self.evaluate(|v| point.get(v as usize))
    }

    /// Renders with caller-supplied variable names, highest monomial first.
    pub fn display_with<'a, N>(&'a self, name: N) -> Display<'a, C, N>
    where
        N: Fn(Var) -> String,
    {
        Display { p: self, name }
    }
}

pub struct Display<'a, C, N> {
    p: &'a Polynomial<C>,
    name: N,
}

impl<C: Coeff, N: Fn(Var) -> String> fmt::Display for Display<'_, C, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.p.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let mut first = true;
            if !a.is_one() || m.is_one() {
                write!(f, "{a}")?;
                first = false;
            }
            for &v in m.vars() {
                if !first {
                    f.write_str("*")?;
                }
                f.write_str(&(self.name)(v))?;
                first = false;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(|v| format!("v{v}")))
    }
}

impl<C: Coeff> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl<C: Coeff> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coeff> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<C: Coeff> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl<C: Coeff> $tr for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $f(self, rhs: Self) -> Polynomial<C> {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coeff> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Polynomial<i64>;

    #[test]
    fn zero_is_canonical() {
        let x = P::var(0);
        assert!((&x - &x).is_zero());
        assert_eq!(P::term(0, Monomial::var(3)), P::zero());
    }

    #[test]
    fn difference_of_squares() {
        let (a, b) = (P::var(0), P::var(1));
        let lhs = &(&a + &b) * &(&a - &b);
        let rhs = &a.pow(2) - &b.pow(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let p = &P::var(2) + &P::constant(-3);
        assert_eq!(p.pow(3), &(&p * &p) * &p);
        assert_eq!(p.pow(0), P::one());
    }

    #[test]
    fn display() {
        let name = |v: Var| ["a", "b", "c"][v as usize].to_string();
        let p = &(&P::var(2) - &(&P::var(0) * &P::var(1))) + &P::constant(2);
        assert_eq!(p.display_with(name).to_string(), "-a*b + c + 2");
        assert_eq!(P::zero().display_with(name).to_string(), "0");
        assert_eq!(P::var(1).scale(&-1).display_with(name).to_string(), "-b");
    }

    #[test]
    fn substitute_and_evaluate() {
        // y0*y1 with y1 -> y1 + 1
        let p = &P::var(0) * &P::var(1);
        let y0 = P::var(0);
        let y1p = &P::var(1) + &P::one();
        let q = p
            .substitute(|v| if v == 0 { Some(&y0) } else { Some(&y1p) })
            .unwrap();
        assert_eq!(q, &p + &y0);
        assert_eq!(q.eval_dense(&[2, 5]).unwrap(), 12);
        assert_eq!(
            p.substitute(|_| None),
            Err(SubstError::MissingImage(0))
        );
        assert_eq!(p.eval_dense(&[1]), Err(EvalError::MissingValue(1)));
    }
}
