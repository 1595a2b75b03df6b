//! Coordinate schemes, invariant vectors and generator identifiers.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use polyring::{ParseError, Var};

use crate::Error;
use crate::Poly;

const SCHEME4: [&str; 12] = [
    "12", "13", "14", "23", "24", "34", //
    "123", "124", "134", "234", //
    "1234", "1324",
];

const SCHEME5: [&str; 36] = [
    "12", "13", "14", "15", "23", "24", "25", "34", "35", "45", //
    "123", "124", "134", "125", "135", "145", "234", "235", "245", "345", //
    "1234", "1324", "1235", "1245", "1325", "1345", "1425", "1435", "2345", "2435", //
    "12345", "12435", "13245", "13425", "14235", "14325",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    Linking,
    Triple,
    Quadruple,
    Quintuple,
}

/// A coordinate `y_J`; `J` is an ordered tuple of distinct strand labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symbol {
    index: Vec<u8>,
}

impl Symbol {
    pub fn index(&self) -> &[u8] {
        &self.index
    }

    /// 1 for linking numbers, up to 4 for length-five indices.
    pub fn degree(&self) -> usize {
        self.index.len() - 1
    }

    pub fn kind(&self) -> SymbolKind {
        match self.index.len() {
            2 => SymbolKind::Linking,
            3 => SymbolKind::Triple,
            4 => SymbolKind::Quadruple,
            _ => SymbolKind::Quintuple,
        }
    }

    pub fn name(&self) -> String {
        let digits: String = self.index.iter().map(|d| char::from(b'0' + d)).collect();
        format!("y_{digits}")
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// The ordered, degree-graded coordinate list for `n` strands.
#[derive(Debug)]
pub struct CoordinateScheme {
    n: usize,
    symbols: Vec<Symbol>,
    by_name: HashMap<String, Var>,
    ranges: Vec<Range<usize>>,
}

impl PartialEq for CoordinateScheme {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

impl Eq for CoordinateScheme {}

impl CoordinateScheme {
    fn build(n: usize, list: &[&str]) -> Self {
        let symbols: Vec<Symbol> = list
            .iter()
            .map(|s| Symbol {
                index: s.bytes().map(|b| b - b'0').collect(),
            })
            .collect();
        let by_name = symbols
            .iter()
            .enumerate()
            .map(|(i, s)| (s.name(), i as Var))
            .collect();
        let mut ranges = Vec::with_capacity(n);
        ranges.push(0..0);
        for d in 1..n {
            let start = symbols.iter().position(|s| s.degree() == d).unwrap();
            let end = start + symbols.iter().filter(|s| s.degree() == d).count();
            ranges.push(start..end);
        }
        CoordinateScheme {
            n,
            symbols,
            by_name,
            ranges,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn symbol(&self, v: Var) -> &Symbol {
        &self.symbols[v as usize]
    }

    pub fn name(&self, v: Var) -> String {
        self.symbols[v as usize].name()
    }

    /// Looks up `y_<digits>`.
    pub fn var(&self, name: &str) -> Option<Var> {
        self.by_name.get(name).copied()
    }

    pub fn degree(&self, v: Var) -> usize {
        self.symbols[v as usize].degree()
    }

    /// Highest coordinate degree, `n - 1`.
    pub fn max_degree(&self) -> usize {
        self.n - 1
    }

    /// Positions of the coordinates of degree `d` (contiguous in the listing order).
    pub fn degree_range(&self, d: usize) -> Range<usize> {
        self.ranges.get(d).cloned().unwrap_or(0..0)
    }

    /// Number of coordinates of degree at least 2.
    pub fn higher_len(&self) -> usize {
        self.len() - self.degree_range(1).len()
    }

    pub fn parse_poly(&self, text: &str) -> Result<Poly, ParseError> {
        Poly::parse(text, |s| self.var(s))
    }

    pub fn show(&self, p: &Poly) -> String {
        p.display_with(|v| self.name(v)).to_string()
    }
}

/// The fixed scheme for `n` strands, `n ∈ {4, 5}`.
pub fn load_scheme(n: usize) -> Result<&'static CoordinateScheme, Error> {
    static FOUR: OnceLock<CoordinateScheme> = OnceLock::new();
    static FIVE: OnceLock<CoordinateScheme> = OnceLock::new();
    match n {
        4 => Ok(FOUR.get_or_init(|| CoordinateScheme::build(4, &SCHEME4))),
        5 => Ok(FIVE.get_or_init(|| CoordinateScheme::build(5, &SCHEME5))),
        _ => Err(Error::UnsupportedN(n)),
    }
}

/// An integer value for every coordinate of a scheme.
#[derive(Clone, PartialEq, Eq)]
pub struct InvariantVector {
    scheme: &'static CoordinateScheme,
    values: Vec<BigInt>,
}

impl std::hash::Hash for InvariantVector {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.scheme.n.hash(state);
        self.values.hash(state);
    }
}

impl PartialOrd for InvariantVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for InvariantVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.scheme
            .n
            .cmp(&other.scheme.n)
            .then_with(|| self.values.cmp(&other.values))
    }
}

impl InvariantVector {
    pub fn zero(scheme: &'static CoordinateScheme) -> Self {
        InvariantVector {
            scheme,
            values: vec![BigInt::zero(); scheme.len()],
        }
    }

    pub fn from_values(
        scheme: &'static CoordinateScheme,
        values: Vec<BigInt>,
    ) -> Result<Self, Error> {
        if values.len() != scheme.len() {
            return Err(Error::Length {
                expected: scheme.len(),
                found: values.len(),
            });
        }
        Ok(InvariantVector { scheme, values })
    }

    pub fn from_i64(scheme: &'static CoordinateScheme, values: &[i64]) -> Result<Self, Error> {
        Self::from_values(scheme, values.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Builds from `(name, value)` pairs, zero elsewhere.
    pub fn from_pairs(
        scheme: &'static CoordinateScheme,
        pairs: &[(&str, i64)],
    ) -> Result<Self, Error> {
        let mut v = Self::zero(scheme);
        for &(name, x) in pairs {
            let var = scheme
                .var(name)
                .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
            v.values[var as usize] = BigInt::from(x);
        }
        Ok(v)
    }

    pub fn scheme(&self) -> &'static CoordinateScheme {
        self.scheme
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn into_values(self) -> Vec<BigInt> {
        self.values
    }

    pub fn get(&self, name: &str) -> Option<&BigInt> {
        self.scheme.var(name).map(|v| &self.values[v as usize])
    }

    pub fn at(&self, v: Var) -> &BigInt {
        &self.values[v as usize]
    }

    pub fn set(&mut self, v: Var, x: BigInt) {
        self.values[v as usize] = x;
    }

    /// `Y_d`: the values of degree `d`.
    pub fn degree_view(&self, d: usize) -> &[BigInt] {
        &self.values[self.scheme.degree_range(d)]
    }

    /// Parses the vector file format: a first line `n=4` or `n=5`, then
    /// `y_<digits>=<integer>` lines; `#` starts a comment; omitted coordinates are 0.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let err = |line: usize, msg: String| Error::Vector { line, msg };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, strip_comment(l).trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| err(1, "missing `n=4` or `n=5` header".into()))?;
        let n = match header.split_once('=') {
            Some((k, v)) if k.trim() == "n" => v
                .trim()
                .parse::<usize>()
                .map_err(|_| err(hline, format!("bad component count `{}`", v.trim())))?,
            _ => return Err(err(hline, format!("expected `n=4` or `n=5`, found `{header}`"))),
        };
        let scheme = load_scheme(n).map_err(|e| err(hline, e.to_string()))?;
        let mut v = Self::zero(scheme);
        let mut seen = vec![false; scheme.len()];
        for (ln, line) in lines {
            let (k, x) = line
                .split_once('=')
                .ok_or_else(|| err(ln, format!("expected `y_<digits>=<integer>`, found `{line}`")))?;
            let (k, x) = (k.trim(), x.trim());
            let var = scheme
                .var(k)
                .ok_or_else(|| err(ln, format!("unknown coordinate `{k}` for n={n}")))?;
            if std::mem::replace(&mut seen[var as usize], true) {
                return Err(err(ln, format!("duplicate coordinate `{k}`")));
            }
            let val: BigInt = x
                .parse()
                .map_err(|_| err(ln, format!("`{x}` is not an integer")))?;
            v.values[var as usize] = val;
        }
        Ok(v)
    }

    /// The vector file format; zero coordinates are omitted.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("n={}\n", self.scheme.n);
        for (s, x) in self.scheme.symbols.iter().zip(&self.values) {
            if !x.is_zero() {
                out.push_str(&format!("{}={}\n", s.name(), x));
            }
        }
        out
    }
}

impl fmt::Debug for InvariantVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .scheme
            .symbols
            .iter()
            .zip(&self.values)
            .filter(|(_, x)| !x.is_zero())
            .map(|(s, x)| format!("{}={}", s.name(), x))
            .collect();
        write!(f, "n={} {{{}}}", self.scheme.n, parts.join(", "))
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a)
}

/// Generator families: partial conjugations `x_ij`, their simplified forms
/// `xs_ij`, and conjugations `cx_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Raw,
    Simplified,
    Conj,
}

impl Family {
    pub fn prefix(self) -> &'static str {
        match self {
            Family::Raw => "x",
            Family::Simplified => "xs",
            Family::Conj => "cx",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId {
    pub family: Family,
    pub i: u8,
    pub j: u8,
}

impl GeneratorId {
    /// Validates the pair; conjugations are normalized to `i < j`.
    pub fn new(family: Family, i: u8, j: u8, n: usize) -> Result<Self, Error> {
        if i == j || i == 0 || j == 0 || i as usize > n || j as usize > n {
            return Err(Error::BadGenerator(format!(
                "{}_{}{} for n={}",
                family.prefix(),
                i,
                j,
                n
            )));
        }
        let (i, j) = if family == Family::Conj && i > j { (j, i) } else { (i, j) };
        Ok(GeneratorId { family, i, j })
    }

    pub fn raw(i: u8, j: u8) -> Self {
        GeneratorId { family: Family::Raw, i, j }
    }

    pub fn simplified(i: u8, j: u8) -> Self {
        GeneratorId { family: Family::Simplified, i, j }
    }

    pub fn conj(i: u8, j: u8) -> Self {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        GeneratorId { family: Family::Conj, i, j }
    }

    /// All generators of a family for `n` strands, in lexicographic `(i, j)` order.
    pub fn all(family: Family, n: usize) -> Vec<Self> {
        let n = n as u8;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if i != j && (family != Family::Conj || i < j) {
                    out.push(GeneratorId { family, i, j });
                }
            }
        }
        out
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}{}", self.family.prefix(), self.i, self.j)
    }
}
