//! Resolution of words to maps, and their numeric action.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::action::{power_by_interpolation, ActionMap};
use crate::model::{load_scheme, CoordinateScheme, InvariantVector};
use crate::table::{ActionTable, BracketConvention, BUNDLED};
use crate::word::{Factor, Term, Word};
use crate::Error;

/// A resolved term with its inverse.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub map: ActionMap,
    pub inverse: ActionMap,
}

impl Resolved {
    fn new(map: ActionMap) -> Arc<Self> {
        let inverse = map.invert();
        Arc::new(Resolved { map, inverse })
    }
}

/// The tables for one strand count, with a cache of resolved terms.
pub struct Algebra {
    scheme: &'static CoordinateScheme,
    tables: Vec<ActionTable>,
    cache: Mutex<HashMap<String, Arc<Resolved>>>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Algebra")
            .field("n", &self.scheme.n())
            .field("tables", &self.tables.iter().map(|t| t.name()).collect::<Vec<_>>())
            .finish()
    }
}

impl Algebra {
    pub fn from_tables(n: usize, tables: Vec<ActionTable>) -> Result<Self, Error> {
        let scheme = load_scheme(n)?;
        if let Some(t) = tables.iter().find(|t| t.scheme() != scheme) {
            return Err(Error::SchemeMismatch(n, t.scheme().n()));
        }
        Ok(Algebra {
            scheme,
            tables,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// The bundled tables for `n`, digest-checked. Shared per process.
    pub fn get(n: usize) -> Result<&'static Algebra, Error> {
        static FOUR: OnceLock<Result<Algebra, Error>> = OnceLock::new();
        static FIVE: OnceLock<Result<Algebra, Error>> = OnceLock::new();
        let cell = match n {
            4 => &FOUR,
            5 => &FIVE,
            _ => return Err(Error::UnsupportedN(n)),
        };
        cell.get_or_init(|| {
            let tables = BUNDLED
                .iter()
                .filter(|b| b.n == n)
                .map(|b| b.load())
                .collect::<Result<Vec<_>, _>>()?;
            Algebra::from_tables(n, tables)
        })
        .as_ref()
        .map_err(Clone::clone)
    }

    pub fn n(&self) -> usize {
        self.scheme.n()
    }

    pub fn scheme(&self) -> &'static CoordinateScheme {
        self.scheme
    }

    pub fn tables(&self) -> &[ActionTable] {
        &self.tables
    }

    pub fn table(&self, name: &str) -> Option<&ActionTable> {
        self.tables.iter().find(|t| t.name() == name)
    }

    /// The literal table column for a label, as a map, with the table's
    /// bracket convention.
    pub fn tabulated(&self, label: &Term) -> Option<(ActionMap, BracketConvention)> {
        self.tables.iter().find_map(|t| {
            t.get(label).map(|e| {
                let m = ActionMap::from_deltas(self.scheme, &e.deltas)
                    .expect("tables are validated on load");
                (m, t.bracket())
            })
        })
    }

    /// Generators and modified brackets come from the tables; plain brackets
    /// are computed as `a∘b∘a⁻¹∘b⁻¹`; groups are composed.
    pub fn resolve(&self, term: &Term) -> Result<Arc<Resolved>, Error> {
        let key = term.to_string();
        if let Some(r) = self.cache.lock().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let map = match term {
            Term::Gen(_) | Term::Bracket { modified: true, .. } => {
                self.tabulated(term)
                    .ok_or_else(|| Error::UnknownAction(key.clone()))?
                    .0
            }
            Term::Bracket { a, b, .. } => {
                ActionMap::commutator(&self.factor_map(a)?, &self.factor_map(b)?)?
            }
            Term::Group(w) => self.word_map(w)?,
        };
        let r = Resolved::new(map);
        self.cache.lock().unwrap().insert(key, r.clone());
        Ok(r)
    }

    fn factor_map(&self, f: &Factor) -> Result<ActionMap, Error> {
        let k = f
            .exp
            .to_i64()
            .filter(|k| k.unsigned_abs() <= 1 << 20)
            .ok_or_else(|| Error::ExponentTooLarge(f.exp.to_string()))?;
        let r = self.resolve(&f.term)?;
        Ok(if k < 0 {
            r.inverse.power(-k)
        } else {
            r.map.power(k)
        })
    }

    /// The composite map of a word, symbolically.
    pub fn word_map(&self, w: &Word) -> Result<ActionMap, Error> {
        let mut acc = ActionMap::identity(self.scheme);
        for f in &w.factors {
            acc = acc.compose(&self.factor_map(f)?)?;
        }
        Ok(acc)
    }

    /// Applies a word numerically; the rightmost factor acts first.
    pub fn apply_word_values(&self, w: &Word, vals: &[BigInt]) -> Result<Vec<BigInt>, Error> {
        let mut cur = vals.to_vec();
        for f in w.factors.iter().rev() {
            cur = self.apply_factor_values(f, &cur)?;
        }
        Ok(cur)
    }

    pub fn apply_factor_values(&self, f: &Factor, vals: &[BigInt]) -> Result<Vec<BigInt>, Error> {
        match &f.term {
            Term::Group(w) => {
                let (w, k) = if f.exp.is_negative() {
                    (w.inverse(), -&f.exp)
                } else {
                    (w.clone(), f.exp.clone())
                };
                let mut failure = None;
                let out = power_by_interpolation(
                    |x| match self.apply_word_values(&w, x) {
                        Ok(v) => v,
                        Err(e) => {
                            failure.get_or_insert(e);
                            x.to_vec()
                        }
                    },
                    &k,
                    vals,
                    self.scheme,
                );
                match failure {
                    Some(e) => Err(e),
                    None => Ok(out),
                }
            }
            term => {
                let r = self.resolve(term)?;
                Ok(r.map.apply_power(&r.inverse, vals, &f.exp))
            }
        }
    }

    pub fn apply_word(&self, w: &Word, v: &InvariantVector) -> Result<InvariantVector, Error> {
        if v.scheme() != self.scheme {
            return Err(Error::SchemeMismatch(self.n(), v.scheme().n()));
        }
        InvariantVector::from_values(self.scheme, self.apply_word_values(w, v.values())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Family, GeneratorId};

    #[test]
    fn bundled_algebras_load() {
        for n in [4, 5] {
            let a = Algebra::get(n).unwrap();
            for fam in [Family::Raw, Family::Simplified, Family::Conj] {
                for g in GeneratorId::all(fam, n) {
                    assert!(a.resolve(&Term::Gen(g)).is_ok(), "{g}");
                }
            }
        }
        assert!(Algebra::get(6).is_err());
    }

    #[test]
    fn numeric_matches_symbolic() {
        let a = Algebra::get(4).unwrap();
        let w = Word::parse("xs_12^3 (x_13 [x_21,x_31]^-2)^-5 cx_14^2", 4).unwrap();
        let m = a.word_map(&w).unwrap();
        let vals: Vec<BigInt> = (0..12).map(|i| BigInt::from(i * 3 % 7 - 3)).collect();
        assert_eq!(a.apply_word_values(&w, &vals).unwrap(), m.apply_values(&vals));
        let back = a.apply_word_values(&w.inverse(), &m.apply_values(&vals)).unwrap();
        assert_eq!(back, vals);
    }

    #[test]
    fn unknown_modified_bracket() {
        let a = Algebra::get(4).unwrap();
        let t = Term::parse("[x_21,x_31]'", 4).unwrap();
        assert!(matches!(a.resolve(&t), Err(Error::UnknownAction(_))));
    }
}
